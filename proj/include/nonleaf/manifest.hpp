#pragma once

#include "nonleaf/jsonio.hpp"
#include "nonleaf/oracle.hpp"
#include "nonleaf/schemas.hpp"
#include "nonleaf/sha256.hpp"

#include <cstdlib>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace nonleaf {

struct Options {
    std::uint64_t sample_depth = 64;
    bool validate_duality = false;
    std::uint64_t seed = 1;
    std::uint64_t truncation_cap = 100000;
    OracleCaps oracle;
};

struct Manifest {
    Catalog catalog;
    std::optional<SumManifold> manifold;  // present when the manifest has a pattern
    Options options;
    std::string digest;  // sha256 of the raw manifest bytes
    std::string origin;
};

namespace manifest_detail {

inline std::uint64_t u64_from_json(const json& j, const std::string& path) {
    Int v = int_from_json(j, path);
    if (v < 0 || v > Int(std::numeric_limits<std::int64_t>::max()))
        throw ManifestError(path, "value out of range");
    return static_cast<std::uint64_t>(v);
}

inline FgAbelianGroup parse_abelian(const json& j, const std::string& path) {
    FgAbelianGroup g;
    if (j.contains("rank")) g.add_rank(u64_from_json(j["rank"], path + ".rank"));
    if (j.contains("torsion")) {
        std::size_t i = 0;
        for (const auto& entry : j["torsion"]) {
            const std::string p = path + ".torsion[" + std::to_string(i++) + "]";
            try {
                g.add_torsion(PrimePower(int_from_json(entry[0], p),
                                         static_cast<unsigned>(u64_from_json(entry[1], p))),
                              u64_from_json(entry[2], p));
            } catch (const std::invalid_argument& e) {
                throw ManifestError(p, e.what());
            }
        }
    }
    return g;
}

inline FreeProductClass parse_pi1(const json& j, const std::string& path) {
    FreeProductClass pi;
    std::size_t i = 0;
    for (const auto& f : j) {
        const std::string p = path + "[" + std::to_string(i++) + "]";
        const std::string kind = f.at("kind").get<std::string>();
        ExtCount count(1);
        if (f.contains("count")) count = ExtCount(Int(u64_from_json(f["count"], p + ".count")));
        try {
            if (kind == "infinite_cyclic")
                pi.add(FactorLabel::infinite_cyclic(), count);
            else if (kind == "finite_cyclic")
                pi.add(FactorLabel::finite_cyclic(int_from_json(f.at("n"), p + ".n")), count);
            else
                pi.add(FactorLabel::opaque(f.at("name").get<std::string>(),
                                           f.at("odd_torsion_generated").get<bool>()),
                       count);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(p, e.what());
        }
    }
    return pi;
}

inline Block parse_block(const json& j, const std::string& path) {
    try {
        if (j.contains("preset")) {
            const std::string preset = j["preset"].get<std::string>();
            std::string name = j.contains("name") ? j["name"].get<std::string>() : "";
            if (preset == "lens") {
                Int p = int_from_json(j.at("p"), path + ".p");
                Int q = j.contains("q") ? int_from_json(j["q"], path + ".q") : Int(1);
                return lens_block(p, q, name);
            }
            if (preset == "smale") {
                const json& gj = j.at("group");
                FgAbelianGroup g;
                if (gj.contains("cyclic")) {
                    const Int n = int_from_json(gj["cyclic"], path + ".group.cyclic");
                    if (n > Int(1000000000000LL))
                        throw ManifestError(path + ".group.cyclic",
                                            "order too large to factor; list the torsion prime "
                                            "powers instead");
                    g = FgAbelianGroup::cyclic(n);
                } else {
                    g = parse_abelian(gj, path + ".group");
                }
                return smale_block(g, name);
            }
            if (preset == "suspension") {
                const json& pp = j.at("prime_power");
                PrimePower q(int_from_json(pp[0], path + ".prime_power"),
                             static_cast<unsigned>(u64_from_json(pp[1], path + ".prime_power")));
                int k = j.contains("k") ? j["k"].get<int>() : 2;
                return suspension_block(j.at("d").get<int>(), q, k, name);
            }
            if (preset == "sphere") return sphere_block(j.at("d").get<int>(), name);
            throw ManifestError(path, "unknown preset '" + preset + "'");
        }
        const std::string name = j.at("name").get<std::string>();
        const int dim = j.at("dim").get<int>();
        FreeProductClass pi1;
        if (j.contains("pi1")) pi1 = parse_pi1(j["pi1"], path + ".pi1");
        std::vector<FgAbelianGroup> h(static_cast<std::size_t>(dim - 2));
        if (j.contains("homology"))
            for (const auto& [key, sub] : j["homology"].items()) {
                int r = 0;
                try {
                    r = std::stoi(key);
                } catch (...) {
                    throw ManifestError(path + ".homology", "degree key '" + key +
                                                                "' is not an integer");
                }
                if (r < 2 || r > dim - 1)
                    throw ManifestError(path + ".homology",
                                        "degree " + key + " outside [2, " +
                                            std::to_string(dim - 1) + "]");
                h[static_cast<std::size_t>(r - 2)] =
                    parse_abelian(sub, path + ".homology." + key);
            }
        std::optional<bool> orientable, prime;
        if (j.contains("orientable")) orientable = j["orientable"].get<bool>();
        if (j.contains("prime")) prime = j["prime"].get<bool>();
        return Block(name, dim, std::move(pi1), std::move(h), orientable, prime);
    } catch (const std::invalid_argument& e) {
        throw ManifestError(path, e.what());
    } catch (const json::exception& e) {
        throw ManifestError(path, e.what());
    }
}

inline BlockFamily parse_family(const json& j, const std::string& path) {
    try {
        const std::string name = j.at("name").get<std::string>();
        const std::string preset_name = j.at("preset").get<std::string>();
        BlockFamily::Preset preset;
        int d = 0, k = 2;
        if (preset_name == "lens") {
            preset = BlockFamily::Preset::lens;
            d = 3;
        } else if (preset_name == "smale") {
            preset = BlockFamily::Preset::smale;
            d = 5;
        } else {
            preset = BlockFamily::Preset::suspension;
            d = j.at("d").get<int>();
            if (j.contains("k")) k = j["k"].get<int>();
        }
        if (preset != BlockFamily::Preset::suspension && (j.contains("d") || j.contains("k")))
            throw ManifestError(path, "d/k apply only to suspension families");
        unsigned exponent = 1;
        if (j.contains("exponent")) exponent = static_cast<unsigned>(j["exponent"].get<int>());
        const json& pj = j.at("primes");
        PrimeSequence primes =
            pj.is_string() ? PrimeSequence::odd_ascending() : [&] {
                std::vector<Int> list;
                std::size_t i = 0;
                for (const auto& e : pj)
                    list.push_back(int_from_json(e, path + ".primes[" + std::to_string(i++) + "]"));
                return PrimeSequence::from_list(std::move(list));
            }();
        BlockFamily::Guarantees g;
        if (j.contains("guarantees")) {
            const json& gj = j["guarantees"];
            if (gj.contains("distinct")) g.distinct = gj["distinct"].get<bool>();
            if (gj.contains("all_odd")) g.all_odd = gj["all_odd"].get<bool>();
            if (gj.contains("finite_nonzero_usage"))
                g.finite_nonzero_usage = gj["finite_nonzero_usage"].get<bool>();
        }
        return BlockFamily(name, preset, d, k, exponent, std::move(primes), g);
    } catch (const std::invalid_argument& e) {
        throw ManifestError(path, e.what());
    } catch (const json::exception& e) {
        throw ManifestError(path, e.what());
    }
}

inline AssignmentPlan parse_assignment(const json& j, const Catalog& catalog,
                                       const std::string& path) {
    const std::string rule = j.at("rule").get<std::string>();
    std::vector<std::string> prefix;
    if (j.contains("prefix"))
        for (const auto& p : j["prefix"]) prefix.push_back(p.get<std::string>());
    for (const auto& p : prefix)
        if (!catalog.find(p))
            throw ManifestError(path + ".prefix", "unknown block '" + p + "'");
    if (rule == "cycle") {
        std::vector<std::string> names;
        for (const auto& n : j.at("blocks")) names.push_back(n.get<std::string>());
        for (const auto& n : names)
            if (!catalog.find(n))
                throw ManifestError(path + ".blocks", "unknown block '" + n + "'");
        return AssignmentPlan::cycle(std::move(names), std::move(prefix));
    }
    const std::string fam = j.at("family").get<std::string>();
    if (!catalog.family() || catalog.family()->name() != fam)
        throw ManifestError(path + ".family", "catalog has no family named '" + fam + "'");
    const json& cj = j.at("counts");
    CountsRule counts = CountsRule::index_rule();
    if (cj.is_string()) {
        if (cj.get<std::string>() != "index")
            throw ManifestError(path + ".counts", "expected \"index\" or a list");
    } else {
        std::vector<ExtCount> list;
        std::size_t i = 0;
        for (const auto& e : cj.at("list"))
            list.push_back(ext_from_json(e, path + ".counts.list[" + std::to_string(i++) + "]"));
        CountsRule::Then then = CountsRule::Then::end;
        if (cj.contains("then"))
            then = cj["then"].get<std::string>() == "index" ? CountsRule::Then::index
                                                            : CountsRule::Then::end;
        try {
            counts = CountsRule::list_rule(std::move(list), then);
        } catch (const std::invalid_argument& e) {
            throw ManifestError(path + ".counts", e.what());
        }
    }
    return AssignmentPlan::family_counts(fam, std::move(counts), std::move(prefix));
}

inline SumManifold parse_pattern(const json& j, const Catalog& catalog, const Options& opts,
                                 const std::string& path) {
    const std::string kind = j.at("kind").get<std::string>();
    try {
        if (kind == "finite") {
            FiniteGraph g;
            for (const auto& v : j.at("vertices")) g.assignment.push_back(v.get<std::string>());
            g.num_vertices = g.assignment.size();
            for (const auto& e : j.at("edges"))
                g.edges.emplace_back(e[0].get<std::uint64_t>(), e[1].get<std::uint64_t>());
            return SumManifold(std::move(g), catalog, opts.sample_depth);
        }
        if (kind == "path_counts") {
            const std::string fam = j.at("family").get<std::string>();
            if (!catalog.family() || catalog.family()->name() != fam)
                throw ManifestError(path + ".family", "catalog has no family named '" + fam + "'");
            FiniteGraph g;
            std::uint64_t i = 1;
            for (const auto& c : j.at("counts")) {
                const std::uint64_t n = c.get<std::uint64_t>();
                for (std::uint64_t t = 0; t < n; ++t)
                    g.assignment.push_back(catalog.family()->member_name(i));
                ++i;
            }
            g.num_vertices = g.assignment.size();
            if (g.num_vertices == 0)
                throw ManifestError(path + ".counts", "counts produce an empty pattern");
            for (std::uint64_t v = 1; v < g.num_vertices; ++v) g.edges.emplace_back(v - 1, v);
            return SumManifold(std::move(g), catalog, opts.sample_depth);
        }

        TreeGen tree;
        if (kind == "ray")
            tree = ray_tree();
        else if (kind == "binary_tree")
            tree = binary_tree();
        else if (kind == "comb")
            tree = comb_tree();
        else if (kind == "parent_table") {
            std::vector<std::uint64_t> offsets;
            for (const auto& o : j.at("offsets")) offsets.push_back(o.get<std::uint64_t>());
            tree = parent_table_tree(std::move(offsets));
        } else {
            throw ManifestError(path, "unknown pattern kind '" + kind + "'");
        }

        AssignmentPlan plan = parse_assignment(j.at("assignment"), catalog, path + ".assignment");
        if (plan.family_based()) {
            const CountsRule& counts = plan.counts();
            if (auto cut = counts.cutoff(); cut && !counts.usage(*cut).is_omega())
                throw ManifestError(path + ".assignment.counts",
                                    "counts cover only finitely many vertices of an infinite tree");
        }
        SumManifold w(std::move(tree), std::move(plan), catalog, opts.sample_depth,
                      opts.truncation_cap);

        if (j.contains("usage")) {
            const BlockFamily* fam = catalog.family() ? &*catalog.family() : nullptr;
            for (const auto& [name, cj] : j["usage"].items()) {
                if (!catalog.find(name))
                    throw ManifestError(path + ".usage", "unknown block '" + name + "'");
                ExtCount declared = ext_from_json(cj, path + ".usage." + name);
                auto derived = w.plan().declared_usage(name, fam);
                if (!derived || !(*derived == declared))
                    throw ManifestError(path + ".usage",
                                        "declared usage of '" + name + "' (" + declared.str() +
                                            ") does not match the assignment rule (" +
                                            (derived ? derived->str() : std::string("undeclared")) +
                                            ")");
            }
        }
        return w;
    } catch (const std::invalid_argument& e) {
        throw ManifestError(path, e.what());
    } catch (const json::exception& e) {
        throw ManifestError(path, e.what());
    }
}

inline Options parse_options(const json* j, const std::string& path) {
    Options o;
    if (const char* env = std::getenv("NONLEAF_SAMPLE_DEPTH")) {
        try {
            o.sample_depth = std::stoull(env);
        } catch (...) {
            throw ManifestError("NONLEAF_SAMPLE_DEPTH", "malformed value '" + std::string(env) +
                                                            "'");
        }
    }
    if (!j) return o;
    try {
        if (j->contains("sample_depth")) o.sample_depth = (*j)["sample_depth"].get<std::uint64_t>();
        if (j->contains("validate_duality"))
            o.validate_duality = (*j)["validate_duality"].get<bool>();
        if (j->contains("seed")) o.seed = (*j)["seed"].get<std::uint64_t>();
        if (j->contains("truncation_cap"))
            o.truncation_cap = (*j)["truncation_cap"].get<std::uint64_t>();
        if (j->contains("oracle")) {
            const json& c = (*j)["oracle"];
            if (c.contains("enumeration_cap"))
                o.oracle.enumeration_cap = int_from_json(c["enumeration_cap"],
                                                         path + ".oracle.enumeration_cap");
            if (c.contains("max_tree_vertices"))
                o.oracle.max_tree_vertices = c["max_tree_vertices"].get<std::uint64_t>();
            if (c.contains("max_matrix_dim"))
                o.oracle.max_matrix_dim = c["max_matrix_dim"].get<std::uint64_t>();
            if (c.contains("max_entry")) o.oracle.max_entry = c["max_entry"].get<std::int64_t>();
        }
    } catch (const json::exception& e) {
        throw ManifestError(path, e.what());
    }
    if (o.sample_depth < 1) throw ManifestError(path, "sample_depth must be >= 1");
    return o;
}

}  // namespace manifest_detail

inline Manifest parse_manifest(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw ManifestError(origin, e.what());
    }
    static const json schema = json::parse(schemas::kManifestSchema);
    validate_against_schema(doc, schema, origin);

    Manifest m;
    m.origin = origin;
    m.digest = sha256_hex(text);
    m.options = manifest_detail::parse_options(
        doc.contains("options") ? &doc["options"] : nullptr, "options");

    const json& cat = doc.at("catalog");
    if (cat.contains("family"))
        m.catalog.set_family(manifest_detail::parse_family(cat["family"], "catalog.family"));
    if (cat.contains("blocks")) {
        std::size_t i = 0;
        for (const auto& bj : cat["blocks"]) {
            const std::string path = "catalog.blocks[" + std::to_string(i++) + "]";
            try {
                m.catalog.add_block(manifest_detail::parse_block(bj, path));
            } catch (const std::invalid_argument& e) {
                throw ManifestError(path, e.what());
            }
        }
    }
    if (m.catalog.empty()) throw ManifestError("catalog", "catalog declares no blocks");

    if (doc.contains("pattern"))
        m.manifold =
            manifest_detail::parse_pattern(doc["pattern"], m.catalog, m.options, "pattern");
    return m;
}

inline Manifest load_manifest(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ManifestError(path, "cannot open manifest");
    std::ostringstream os;
    os << in.rdbuf();
    return parse_manifest(os.str(), path);
}

}  // namespace nonleaf

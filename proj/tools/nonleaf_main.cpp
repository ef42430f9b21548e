// Command line front end: manifest ingestion, invariant tables, hypothesis
// checks, certificate emission and oracle runs.
//
// Exit codes: 0 certified/pass, 1 refuted/fail, 2 undecidable-at-depth,
// 3 input error.

#include "nonleaf/emit.hpp"
#include "nonleaf/manifest.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace nonleaf;

int status_exit(Status s) {
    switch (s) {
        case Status::certified: return 0;
        case Status::refuted: return 1;
        case Status::undecidable_at_depth: return 2;
    }
    return 3;
}

void write_document(const ojson& doc, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ManifestError(path, "cannot open output file");
    out << doc.dump(2) << "\n";
}

std::string symbolic_group_line(const SymbolicAbelianGroup& g) {
    std::ostringstream os;
    os << "rank " << g.rank.str();
    if (g.head.empty())
        os << "; no torsion head";
    else {
        os << "; torsion:";
        for (const auto& [q, m] : g.head) os << " " << q.str() << " x" << m.str();
    }
    if (g.tail) os << "; tail: " << g.tail->description();
    return os.str();
}

int run_invariants(const std::string& manifest_path, std::optional<int> degree,
                   std::optional<std::uint64_t> depth) {
    Manifest m = load_manifest(manifest_path);
    if (!m.manifold) throw ManifestError(manifest_path, "manifest declares no pattern");
    SumManifold w = *m.manifold;
    if (depth) w = w.truncate(*depth);
    if (degree && (*degree < 2 || *degree > w.dimension() - 1))
        throw ManifestError("--r", "degree must lie in [2, " +
                                       std::to_string(w.dimension() - 1) + "]");

    std::cout << "manifold: " << w.description() << "\n";
    std::cout << "dimension: " << w.dimension() << "\n";
    if (w.finite()) std::cout << "vertices: " << w.num_vertices() << "\n";
    std::cout << "pi1: " << w.fundamental_group().str() << "\n";
    const int d = w.dimension();
    for (int r = 2; r <= d - 1; ++r) {
        if (degree && *degree != r) continue;
        std::cout << "H_" << r << ": " << symbolic_group_line(w.homology(r)) << "\n";
    }
    if (w.finite()) {
        // the whole manifold's invariant record, rendered as one block signature
        std::vector<FgAbelianGroup> hs;
        for (int r = 2; r <= d - 1; ++r) hs.push_back(w.homology(r).to_finite());
        Block whole("W", d, w.fundamental_group().as_class(), std::move(hs));
        std::cout << "signature: " << whole.signature() << "\n";
    }
    std::cout << "note: " << kLimitationSignatures << "\n";
    return 0;
}

int run_catalog_validate(const std::string& manifest_path) {
    Manifest m = load_manifest(manifest_path);
    std::cout << "catalog: " << m.catalog.str() << "\n";
    bool ok = true;

    auto dim = m.catalog.uniform_dimension();
    if (dim)
        std::cout << "dimension: " << *dim << " (uniform)\n";
    else {
        std::cout << "dimension: MIXED\n";
        ok = false;
    }

    if (m.options.validate_duality) {
        std::uint64_t checked = 0, defects = 0;
        auto check = [&](const Block& b) {
            ++checked;
            if (auto defect = b.duality_defect()) {
                std::cout << "duality defect in '" << b.name() << "': " << *defect << "\n";
                ++defects;
            }
        };
        for (const auto& [name, b] : m.catalog.blocks()) check(b);
        if (m.catalog.family()) {
            std::uint64_t n = m.catalog.family()->infinite()
                                  ? std::min<std::uint64_t>(m.options.sample_depth, 16)
                                  : m.catalog.family()->primes().list_size();
            for (std::uint64_t i = 1; i <= n; ++i) check(m.catalog.family()->member(i));
        }
        if (defects) ok = false;
        std::cout << "duality: " << (defects ? "FAILED" : "validated") << " on " << checked
                  << " blocks\n";
    }

    if (m.manifold) {
        std::cout << "pattern: " << m.manifold->description() << "\n";
        if (m.manifold->infinite_tree()) {
            // exercise the generator and the usage spot checks on the sampled prefix
            try {
                m.manifold->truncate(std::min<std::uint64_t>(m.options.sample_depth,
                                                             m.options.truncation_cap));
                for (const auto& [name, b] : m.catalog.blocks()) m.manifold->usage_count(name);
                std::cout << "usage declarations: consistent on " << m.options.sample_depth
                          << " sampled vertices\n";
            } catch (const UsageViolation& e) {
                std::cout << "usage declarations: VIOLATED (" << e.what() << ")\n";
                ok = false;
            }
        }
    }
    std::cout << "catalog: " << (ok ? "OK" : "FAILED") << "\n";
    return ok ? 0 : 1;
}

int run_check_non_repeating(const std::string& manifest_path) {
    Manifest m = load_manifest(manifest_path);
    Verdict v = check_non_repeating(m.catalog, m.options.sample_depth);
    std::cout << render_verdict(v);
    return status_exit(v.status);
}

int run_check_non_periodic(const std::string& manifest_path, int k, const std::string& mode) {
    Manifest m = load_manifest(manifest_path);
    if (!m.manifold) throw ManifestError(manifest_path, "manifest declares no pattern");
    PeriodicityMode pm =
        mode == "homology" ? PeriodicityMode::homology : PeriodicityMode::homotopy;
    Verdict v = check_non_periodic(*m.manifold, k, pm);
    std::cout << render_verdict(v);
    return status_exit(v.status);
}

int run_certify(const std::string& which, const std::string& manifest_path,
                const std::string& out_path, int k, const std::string& mode) {
    Manifest m = load_manifest(manifest_path);
    if (!m.manifold) throw ManifestError(manifest_path, "manifest declares no pattern");
    Certificate cert;
    if (which == "theorem-a")
        cert = check_theorem_A(*m.manifold);
    else if (which == "theorem-c")
        cert = check_theorem_C(*m.manifold, m.catalog);
    else
        cert = check_theorem_B(*m.manifold, k,
                               mode == "homology" ? PeriodicityMode::homology
                                                  : PeriodicityMode::homotopy);
    std::cout << render_certificate(cert);
    if (!out_path.empty()) {
        write_document(certificate_document(cert, m.digest, m.options.seed), out_path);
        std::cout << "certificate written: " << out_path << "\n";
    }
    return status_exit(cert.status);
}

int run_oracle(const std::string& manifest_path, std::optional<std::uint64_t> seed_flag,
               const std::string& out_path) {
    std::optional<Manifest> m;
    if (!manifest_path.empty()) m = load_manifest(manifest_path);
    const std::uint64_t seed = seed_flag ? *seed_flag : (m ? m->options.seed : 1);
    const OracleCaps caps = m ? m->options.oracle : OracleCaps{};
    std::vector<OracleReport> reports;

    {
        Rng rng(seed);
        std::uint64_t instances = 200, det_checked = 0, enumerated = 0;
        OracleReport rep;
        rep.check = "snf-battery";
        rep.seed = seed;
        rep.pass = true;
        for (std::uint64_t i = 0; i < instances && rep.pass; ++i) {
            IntegerPresentation p = random_presentation(rng, caps);
            auto res = check_snf_instance(p, caps);
            det_checked += res.det_checked;
            enumerated += res.enumerated;
            if (!res.pass) {
                rep.pass = false;
                rep.computed = "instance " + std::to_string(i) + ": " + res.failure;
            }
        }
        rep.instance = std::to_string(instances) + " random presentations, " +
                       std::to_string(det_checked) + " determinant checks, " +
                       std::to_string(enumerated) + " cokernel enumerations";
        rep.expected = "divisibility chain, |det| product, enumeration agreement";
        if (rep.pass) rep.computed = "all instances agree";
        reports.push_back(std::move(rep));
    }

    if (m && m->manifold) {
        const SumManifold& w = *m->manifold;
        SumManifold finite_w = w.finite()
                                   ? w
                                   : w.truncate(std::min<std::uint64_t>(32, w.truncation_cap()));
        for (int r = 2; r <= finite_w.dimension() - 1; ++r)
            reports.push_back(stacked_presentation_check(finite_w, r, seed));

        std::vector<Block> blocks;
        for (const auto& [name, b] : m->catalog.blocks())
            if (!b.is_trivial_sphere()) blocks.push_back(b);
        if (m->catalog.family())
            for (std::uint64_t i = 1;
                 i <= std::min<std::uint64_t>(8, m->catalog.family()->infinite()
                                                     ? 8
                                                     : m->catalog.family()->primes().list_size());
                 ++i)
                blocks.push_back(m->catalog.family()->member(i));
        for (const auto& b : blocks) {
            if (!finite_w.catalog().find(b.name())) continue;
            reports.push_back(counting_consistency(finite_w, b, seed));
        }

        if (!w.finite()) {
            std::vector<std::uint64_t> depths;
            for (std::uint64_t d : {std::uint64_t(10), std::uint64_t(100), std::uint64_t(1000)})
                if (d <= w.truncation_cap()) depths.push_back(d);
            reports.push_back(truncation_convergence(w, depths, seed));
        }
    }

    bool all = true;
    for (const auto& r : reports) {
        std::cout << render_report_line(r) << "\n";
        all = all && r.pass;
    }
    std::cout << "oracle: " << (all ? "all checks passed" : "FAILURES") << " (" << reports.size()
              << " checks, seed " << seed << ")\n";
    if (!out_path.empty()) {
        write_document(report_document(reports,
                                       m ? std::optional<std::string>(m->digest) : std::nullopt,
                                       seed),
                       out_path);
        std::cout << "report written: " << out_path << "\n";
    }
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonleaf: invariant calculus for connected-sum manifolds and certified "
                 "non-leaf hypothesis checks"};
    app.require_subcommand(1);
    std::function<int()> action;

    // catalog validate
    auto* cat = app.add_subcommand("catalog", "catalog operations");
    cat->require_subcommand(1);
    auto* catval = cat->add_subcommand("validate", "validate a manifest catalog");
    static std::string catval_manifest;
    catval->add_option("manifest", catval_manifest, "manifest path")->required();
    catval->callback([&] { action = [&] { return run_catalog_validate(catval_manifest); }; });

    // invariants
    auto* inv = app.add_subcommand("invariants", "print invariant tables");
    static std::string inv_manifest;
    static int inv_r = -1;
    static std::int64_t inv_depth = -1;
    inv->add_option("manifest", inv_manifest, "manifest path")->required();
    inv->add_option("--r", inv_r, "homology degree (default: all)");
    inv->add_option("--depth", inv_depth, "truncate infinite patterns to this depth");
    inv->callback([&] {
        action = [&] {
            return run_invariants(inv_manifest,
                                  inv_r >= 0 ? std::optional<int>(inv_r) : std::nullopt,
                                  inv_depth >= 0
                                      ? std::optional<std::uint64_t>(
                                            static_cast<std::uint64_t>(inv_depth))
                                      : std::nullopt);
        };
    });

    // check ...
    auto* check = app.add_subcommand("check", "hypothesis checks");
    check->require_subcommand(1);
    auto* nonrep = check->add_subcommand("non-repeating", "check the catalog is non-repeating");
    static std::string nonrep_manifest;
    nonrep->add_option("manifest", nonrep_manifest, "manifest path")->required();
    nonrep->callback([&] { action = [&] { return run_check_non_repeating(nonrep_manifest); }; });

    auto* nonper = check->add_subcommand("non-periodic", "check non-periodicity in dimension k");
    static std::string nonper_manifest;
    static int nonper_k = 2;
    static std::string nonper_mode = "homotopy";
    nonper->add_option("manifest", nonper_manifest, "manifest path")->required();
    nonper->add_option("--k", nonper_k, "dimension (default 2)");
    nonper->add_option("--mode", nonper_mode, "homotopy|homology")
        ->check(CLI::IsMember({"homotopy", "homology"}));
    nonper->callback([&] {
        action = [&] { return run_check_non_periodic(nonper_manifest, nonper_k, nonper_mode); };
    });

    // certify ...
    auto* certify = app.add_subcommand("certify", "run a theorem checker and emit a certificate");
    static std::string cert_which, cert_manifest, cert_out;
    static int cert_k = 2;
    static std::string cert_mode = "homotopy";
    certify->add_option("theorem", cert_which, "theorem-a|theorem-b|theorem-c")
        ->required()
        ->check(CLI::IsMember({"theorem-a", "theorem-b", "theorem-c"}));
    certify->add_option("manifest", cert_manifest, "manifest path")->required();
    certify->add_option("--out", cert_out, "write the certificate document here");
    certify->add_option("--k", cert_k, "dimension for theorem-b (default 2)");
    certify->add_option("--mode", cert_mode, "homotopy|homology for theorem-b")
        ->check(CLI::IsMember({"homotopy", "homology"}));
    certify->callback([&] {
        action = [&] {
            return run_certify(cert_which, cert_manifest, cert_out, cert_k, cert_mode);
        };
    });

    // oracle run
    auto* oracle = app.add_subcommand("oracle", "independent brute-force verification");
    oracle->require_subcommand(1);
    auto* orun = oracle->add_subcommand("run", "run the oracle battery");
    static std::string oracle_manifest, oracle_out;
    static std::int64_t oracle_seed = -1;
    orun->add_option("manifest", oracle_manifest, "manifest path (optional)");
    orun->add_option("--seed", oracle_seed, "random seed (default: manifest seed)");
    orun->add_option("--out", oracle_out, "write the report document here");
    orun->callback([&] {
        action = [&] {
            return run_oracle(oracle_manifest,
                              oracle_seed >= 0 ? std::optional<std::uint64_t>(
                                                     static_cast<std::uint64_t>(oracle_seed))
                                               : std::nullopt,
                              oracle_out);
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 3;
    }

    try {
        return action();
    } catch (const ManifestError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const UsageViolation& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const NotSymbolicallyComputable& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 3;
    }
}

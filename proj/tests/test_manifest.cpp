#include "nonleaf/emit.hpp"
#include "nonleaf/manifest.hpp"

#include <catch_amalgamated.hpp>

#include <fstream>

using namespace nonleaf;

namespace {

const std::string kRoot = NONLEAF_ROOT;

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("bundled manifests parse and build") {
    for (const char* name : {"prop11_d6_ray.json", "prop11_d5_smale_ray.json",
                             "ghys_lens_tree.json", "example23_ppp.json", "example23_qp.json",
                             "constant_smale_ray.json"}) {
        INFO(name);
        const Manifest m = load_manifest(kRoot + "/manifests/" + name);
        CHECK(!m.catalog.empty());
        REQUIRE(m.manifold.has_value());
        CHECK(m.digest.size() == 64);
    }
}

TEST_CASE("digest is the sha256 of the raw bytes") {
    CHECK(sha256_hex("") ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    const std::string text = slurp(kRoot + "/manifests/prop11_d6_ray.json");
    CHECK(parse_manifest(text, "x").digest == sha256_hex(text));
}

TEST_CASE("unknown keys are rejected with a path") {
    const std::string bogus_top = R"({"catalog": {"blocks": []}, "bogus": 1})";
    CHECK_THROWS_WITH(parse_manifest(bogus_top, "m"),
                      Catch::Matchers::ContainsSubstring("bogus"));

    const std::string bogus_block =
        R"({"catalog": {"blocks": [{"preset": "lens", "p": 3, "color": "red"}]}})";
    CHECK_THROWS_AS(parse_manifest(bogus_block, "m"), ManifestError);

    const std::string bogus_opts = R"({"catalog": {"blocks": [{"preset": "lens", "p": 3}]},
                                       "options": {"depth": 3}})";
    CHECK_THROWS_AS(parse_manifest(bogus_opts, "m"), ManifestError);
}

TEST_CASE("malformed JSON reports the parse position") {
    CHECK_THROWS_AS(parse_manifest("{", "m"), ManifestError);
    CHECK_THROWS_AS(parse_manifest("", "m"), ManifestError);
}

TEST_CASE("semantic validation failures") {
    // non-prime base in a suspension prime power
    CHECK_THROWS_AS(
        parse_manifest(
            R"({"catalog": {"blocks": [{"preset": "suspension", "d": 6, "prime_power": [4, 1]}]}})",
            "m"),
        ManifestError);
    // lens spaces allow composite p (the factor label is Z_p for any p >= 2)
    CHECK(parse_manifest(R"({"catalog": {"blocks": [{"preset": "lens", "p": 4, "q": 1}]}})", "m")
              .catalog.blocks()
              .count("lens(4,1)") == 1);
    // gcd failure
    CHECK_THROWS_AS(parse_manifest(
                        R"({"catalog": {"blocks": [{"preset": "lens", "p": 3, "q": 6}]}})", "m"),
                    ManifestError);
    // empty catalog
    CHECK_THROWS_AS(parse_manifest(R"({"catalog": {}})", "m"), ManifestError);
    // homology degree out of range
    CHECK_THROWS_AS(
        parse_manifest(
            R"({"catalog": {"blocks": [{"name": "X", "dim": 4,
                                        "homology": {"5": {"rank": 1}}}]}})",
            "m"),
        ManifestError);
    // pattern references a missing block
    CHECK_THROWS_AS(
        parse_manifest(
            R"({"catalog": {"blocks": [{"preset": "lens", "p": 3}]},
                "pattern": {"kind": "finite", "vertices": ["nope"], "edges": []}})",
            "m"),
        ManifestError);
    // mixed dimensions in an assembled pattern
    CHECK_THROWS_AS(
        parse_manifest(
            R"({"catalog": {"blocks": [{"preset": "lens", "p": 3, "name": "L"},
                                       {"preset": "sphere", "d": 6, "name": "S"}]},
                "pattern": {"kind": "finite", "vertices": ["L"], "edges": []}})",
            "m"),
        ManifestError);
}

TEST_CASE("usage declarations must match the assignment rule") {
    const std::string good = R"({
        "catalog": {"blocks": [{"preset": "smale", "name": "SM3", "group": {"cyclic": 3}}]},
        "pattern": {"kind": "ray", "assignment": {"rule": "cycle", "blocks": ["SM3"]},
                    "usage": {"SM3": "omega"}}})";
    CHECK(parse_manifest(good, "m").manifold.has_value());

    const std::string bad = R"({
        "catalog": {"blocks": [{"preset": "smale", "name": "SM3", "group": {"cyclic": 3}}]},
        "pattern": {"kind": "ray", "assignment": {"rule": "cycle", "blocks": ["SM3"]},
                    "usage": {"SM3": 5}}})";
    CHECK_THROWS_WITH(parse_manifest(bad, "m"),
                      Catch::Matchers::ContainsSubstring("does not match"));
}

TEST_CASE("counts that exhaust on an infinite tree are rejected") {
    const std::string bad = R"({
        "catalog": {"family": {"name": "susp", "preset": "suspension", "d": 6,
                               "primes": "odd_ascending"}},
        "pattern": {"kind": "ray",
                    "assignment": {"rule": "family_counts", "family": "susp",
                                   "counts": {"list": [3, 2], "then": "end"}}}})";
    CHECK_THROWS_WITH(parse_manifest(bad, "m"),
                      Catch::Matchers::ContainsSubstring("finitely many vertices"));
}

TEST_CASE("path_counts builds the finite user-list pattern") {
    const std::string text = R"({
        "catalog": {"family": {"name": "susp", "preset": "suspension", "d": 6,
                               "primes": [3, 7, 11]}},
        "pattern": {"kind": "path_counts", "family": "susp", "counts": [2, 1, 3]}})";
    const Manifest m = parse_manifest(text, "m");
    REQUIRE(m.manifold.has_value());
    CHECK(m.manifold->finite());
    CHECK(m.manifold->num_vertices() == 6);
    CHECK(m.manifold->usage_count("susp_1") == ExtCount(2));
    CHECK(m.manifold->usage_count("susp_3") == ExtCount(3));
    CHECK(m.manifold->homology(2).to_finite().count_summands(PrimePower(11, 1)) == 3);
}

TEST_CASE("comb patterns parse and truncate") {
    const std::string text = R"({
        "catalog": {"family": {"name": "L", "preset": "lens", "primes": "odd_ascending",
                               "guarantees": {"distinct": true, "all_odd": true,
                                              "finite_nonzero_usage": true}}},
        "pattern": {"kind": "comb",
                    "assignment": {"rule": "family_counts", "family": "L", "counts": "index"}}})";
    const Manifest m = parse_manifest(text, "m");
    REQUIRE(m.manifold.has_value());
    const SumManifold t = m.manifold->truncate(9);
    CHECK(t.is_tree());
    CHECK(t.num_vertices() == 9);
}

TEST_CASE("parent_table patterns parse") {
    const std::string text = R"({
        "catalog": {"blocks": [{"preset": "smale", "name": "SM3", "group": {"cyclic": 3}}]},
        "pattern": {"kind": "parent_table", "offsets": [1, 2],
                    "assignment": {"rule": "cycle", "blocks": ["SM3"]}}})";
    const Manifest m = parse_manifest(text, "m");
    REQUIRE(m.manifold.has_value());
    CHECK(m.manifold->infinite_tree());
    CHECK(m.manifold->truncate(7).num_vertices() == 7);
}

TEST_CASE("family exponent and prime lists flow into members") {
    const std::string text = R"({
        "catalog": {"family": {"name": "F", "preset": "smale", "exponent": 2,
                               "primes": [3, 5],
                               "guarantees": {"distinct": true, "all_odd": true,
                                              "finite_nonzero_usage": true}}},
        "pattern": {"kind": "path_counts", "family": "F", "counts": [1, 1]}})";
    const Manifest m = parse_manifest(text, "m");
    const Block b1 = m.catalog.find("F_1").value();
    CHECK(b1.homology(2).count_summands(PrimePower(3, 2)) == 2);
}

TEST_CASE("options parse with defaults") {
    const std::string text = R"({
        "catalog": {"blocks": [{"preset": "lens", "p": 3}]},
        "options": {"sample_depth": 16, "validate_duality": true, "seed": 9,
                    "truncation_cap": 2000,
                    "oracle": {"enumeration_cap": 500, "max_tree_vertices": 6,
                               "max_matrix_dim": 4, "max_entry": 5}}})";
    const Manifest m = parse_manifest(text, "m");
    CHECK(m.options.sample_depth == 16);
    CHECK(m.options.validate_duality);
    CHECK(m.options.seed == 9);
    CHECK(m.options.truncation_cap == 2000);
    CHECK(m.options.oracle.enumeration_cap == 500);
    CHECK(m.options.oracle.max_matrix_dim == 4);

    const Manifest defaults = parse_manifest(R"({"catalog": {"blocks": [{"preset": "lens", "p": 3}]}})", "m");
    CHECK(defaults.options.sample_depth == 64);
    CHECK(defaults.options.seed == 1);
}

TEST_CASE("shipped schema files match the embedded schemas") {
    CHECK(json::parse(slurp(kRoot + "/schemas/manifest.schema.json")) ==
          json::parse(schemas::kManifestSchema));
    CHECK(json::parse(slurp(kRoot + "/schemas/certificate.schema.json")) ==
          json::parse(schemas::kCertificateSchema));
    CHECK(json::parse(slurp(kRoot + "/schemas/report.schema.json")) ==
          json::parse(schemas::kReportSchema));
}

TEST_CASE("certificate documents validate against the shipped schema") {
    const Manifest m = load_manifest(kRoot + "/manifests/prop11_d6_ray.json");
    const Certificate cert = check_theorem_C(*m.manifold, m.catalog);
    const ojson doc = certificate_document(cert, m.digest, m.options.seed);
    CHECK(doc["format"] == "nonleaf-certificate/1");
    CHECK(doc["certificate"]["status"] == "certified");

    // a structurally broken document is rejected by the validator
    json broken = json::parse(doc.dump());
    broken.erase("seed");
    CHECK_THROWS_AS(
        validate_against_schema(broken, json::parse(schemas::kCertificateSchema), "doc"),
        ManifestError);
    json wrong_status = json::parse(doc.dump());
    wrong_status["certificate"]["status"] = "maybe";
    CHECK_THROWS_AS(
        validate_against_schema(wrong_status, json::parse(schemas::kCertificateSchema), "doc"),
        ManifestError);
}

TEST_CASE("report documents validate against the shipped schema") {
    std::vector<OracleReport> reports{{"snf-battery", "x", "y", "z", true, 3}};
    const ojson doc = report_document(reports, std::nullopt, 3);
    CHECK(doc["reports"].size() == 1);
}

TEST_CASE("big integers round-trip as strings beyond 2^53") {
    const Int big("123456789012345678901234567890");
    const ojson j = int_to_json(big);
    CHECK(j.is_string());
    CHECK(int_from_json(json::parse(j.dump()), "x") == big);
    const ojson small = int_to_json(Int(42));
    CHECK(small.is_number_integer());
    CHECK(ext_to_json(ExtCount::omega()) == ojson("omega"));
    CHECK(ext_from_json(json::parse("\"omega\""), "x").is_omega());

    // a lens block over a large prime parses from a decimal string
    const std::string text = R"({
        "catalog": {"blocks": [{"preset": "lens", "p": "1000000000000000000000007"}]}})";
    const Manifest m = parse_manifest(text, "m");
    CHECK(m.catalog.blocks().begin()->second.pi1().grushko_factor_count() == ExtCount(1));
}

TEST_CASE("example 2.3 manifests produce identical whole-manifold records") {
    const Manifest ppp = load_manifest(kRoot + "/manifests/example23_ppp.json");
    const Manifest qp = load_manifest(kRoot + "/manifests/example23_qp.json");
    const SumManifold& a = *ppp.manifold;
    const SumManifold& b = *qp.manifold;
    for (int r = 2; r <= 3; ++r) CHECK(a.homology(r).to_finite() == b.homology(r).to_finite());
    CHECK(a.fundamental_group().as_class() == b.fundamental_group().as_class());
}

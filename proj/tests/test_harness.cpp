#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "loday/harness.hpp"

using namespace loday;

namespace {

std::filesystem::path fresh_dir(const std::string& tag) {
  auto p = std::filesystem::temp_directory_path() / ("loday_test_" + tag);
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

RunOptions opts(const std::string& tag, int jobs = 1, bool cache = true) {
  RunOptions o;
  auto base = fresh_dir(tag);
  o.out_dir = (base / "out").string();
  o.cache_dir = (base / "cache").string();
  o.use_cache = cache;
  o.jobs = jobs;
  return o;
}

}  // namespace

TEST_CASE("sha256 matches the reference vectors") {
  CHECK(Sha256::hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(Sha256::hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  CHECK(Sha256::hex("abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq") ==
        "248d6a61d20638b8e5c026930c3e6039a33ce45964ff2167f6ecedd419db06c1");
}

TEST_CASE("expected tables from the monomial enumerator") {
  auto hh1 = expected_table("HH1_Fp_poly", 3, 3);
  CHECK(hh1.degree_vector(3) == std::vector<long>{1, 1, 0, 0});
  auto hh2 = expected_table("HH2_Fp_poly", 6, 3);
  CHECK(hh2.degree_vector(6) == std::vector<long>{1, 0, 1, 0, 1, 0, 1});
  for (int w = 0; w <= 3; ++w) CHECK(hh2.dim(2 * w, w) == 1);  // weight is half the degree
  auto trunc1 = expected_table("HHn_Q_trunc:1", 4, 6);
  CHECK(trunc1.degree_vector(4) == std::vector<long>{1, 1, 1, 1, 1});
  auto polyk = expected_table("HHk_Q_poly:2", 4, 2);
  CHECK(polyk.degree_vector(4) == std::vector<long>{1, 0, 1, 0, 1});
  auto bq = expected_table("bouquet_Q_trunc:2", 2, 6);
  CHECK(bq.degree_total(2) == 4);
  auto bq3 = expected_table("bouquet_Q_trunc:3", 2, 6);
  CHECK(bq3.degree_total(2) == 9);
  CHECK_THROWS_AS(expected_table("no_such_table", 2, 2), ScenarioError);
}

TEST_CASE("bundled scenarios parse and include the named ones") {
  auto names = bundled_scenario_names();
  CHECK(std::find(names.begin(), names.end(), "klein_f3") != names.end());
  CHECK(std::find(names.begin(), names.end(), "smalltrunc") != names.end());
  for (const auto& n : names) {
    Json sc = bundled_scenario(n);
    CHECK(sc.at("name") == n);
    CHECK(sc.contains("task"));
  }
  CHECK_THROWS_AS(bundled_scenario("nope"), ScenarioError);
}

TEST_CASE("bundled scenario files on disk match the embedded ones") {
  // the scenarios directory mirrors the built-in set
  auto dir = std::filesystem::path(__FILE__).parent_path().parent_path() / "scenarios";
  for (const auto& [name, text] : bundled_scenario_texts()) {
    auto file = dir / (name + ".json");
    REQUIRE(std::filesystem::exists(file));
    std::ifstream is(file);
    Json on_disk;
    is >> on_disk;
    CHECK(on_disk == Json::parse(text));
  }
}

TEST_CASE("scenario run produces a deterministic passing report") {
  auto sc = bundled_scenario("s1_q_trunc2");
  auto o = opts("det1");
  auto r1 = run_scenario(sc, o);
  CHECK(r1.pass);
  CHECK_FALSE(r1.cache_hit);
  // re-running hits the cache and reproduces the bytes
  auto r2 = run_scenario(sc, o);
  CHECK(r2.cache_hit);
  CHECK(r1.files == r2.files);
  // recomputing without the cache also reproduces the bytes
  auto o2 = opts("det2", 1, false);
  auto r3 = run_scenario(sc, o2);
  CHECK_FALSE(r3.cache_hit);
  CHECK(r1.files == r3.files);
}

TEST_CASE("parallel execution is byte-identical to sequential") {
  auto sc = bundled_scenario("s1_q_poly");
  auto a = run_scenario(sc, opts("par1", 1, false));
  auto b = run_scenario(sc, opts("par4", 4, false));
  CHECK(a.files == b.files);
  CHECK(a.pass);
}

TEST_CASE("corrupt cache entries are recomputed") {
  auto sc = bundled_scenario("quotient_t2_plus_t");
  auto o = opts("corrupt");
  auto r1 = run_scenario(sc, o);
  CHECK(r1.pass);
  // damage the cache: drop a file named by the manifest
  for (const auto& entry : std::filesystem::recursive_directory_iterator(o.cache_dir))
    if (entry.path().filename() == "report.json") std::filesystem::remove(entry.path());
  auto r2 = run_scenario(sc, o);
  CHECK_FALSE(r2.cache_hit);
  CHECK(r1.files == r2.files);
}

TEST_CASE("failed expectations are reported as failures") {
  auto sc = bundled_scenario("s1_q_trunc2");
  sc["expect"]["degree_totals"] = {1, 2, 3};
  sc["name"] = "deliberately_wrong";
  auto r = run_scenario(sc, opts("fail1", 1, false));
  CHECK_FALSE(r.pass);
  CHECK(r.report.at("status") == "fail");
}

TEST_CASE("scenario validation errors throw") {
  Json sc = {{"name", "broken"},
             {"task", "homology"},
             {"field", "Q"},
             {"budgets", {{"degree", 1}, {"weight", 1}, {"truncation", 2}}},
             {"space", {{"type", "klein_bottle_misspelt"}}},
             {"algebra", {{"family", "poly"}}}};
  CHECK_THROWS_AS(run_scenario(sc, opts("err1", 1, false)), ScenarioError);
}

TEST_CASE("simplicial serialization round-trips through the scenario format") {
  auto s = sphere(2, 3);
  auto j = simplicial_to_json(s);
  auto back = simplicial_from_json(j);
  CHECK(back.validate().empty());
  CHECK(back.level_size(2) == s.level_size(2));
  CHECK(back.faces == s.faces);
  CHECK(back.degens == s.degens);
  CHECK(back.basepoint == s.basepoint);
  // deserialized presentations are usable as custom scenario spaces
  Json sc = {{"name", "custom_space"},
             {"task", "validate"},
             {"field", "Q"},
             {"budgets", {{"degree", 1}, {"weight", 1}, {"truncation", 3}}},
             {"space", {{"type", "custom"}, {"presentation", j}}},
             {"expect", {{"no_violations", true}}}};
  auto r = run_scenario(sc, opts("custom1", 1, false));
  CHECK(r.pass);
}

TEST_CASE("matrix triple export round-trips") {
  FieldDesc q = FieldDesc::rationals();
  SparseMatrix<Rational> m(3, 2);
  m.set_column(0, {{0, Rational(1, 2)}, {2, Rational(-3)}});
  m.set_column(1, {{1, Rational(5)}});
  auto text = matrix_to_triples(m);
  auto back = matrix_from_triples<Rational>(q, text);
  CHECK(back.rows == m.rows);
  CHECK(back.cols == m.cols);
  CHECK(back.triples() == m.triples());
}

TEST_CASE("environment variable override for the cache directory") {
  auto base = fresh_dir("envcache");
  setenv("LODAY_CACHE_DIR", (base / "envcache").c_str(), 1);
  RunOptions o;
  o.out_dir.clear();
  o.cache_dir.clear();
  o.jobs = 1;
  auto r = run_scenario(bundled_scenario("quotient_t2_plus_t"), o);
  CHECK(r.pass);
  CHECK(std::filesystem::exists(base / "envcache"));
  unsetenv("LODAY_CACHE_DIR");
}

TEST_CASE("one-torus stability is literal equality") {
  Json alg = {{"family", "truncated_poly"}, {"m", 3}};
  auto rep = stability_compare<Rational>(alg, FieldDesc::rationals(), 1, 2, 3, 3, 1);
  CHECK(rep.verdicts.equal);
  CHECK_FALSE(rep.first_degree_divergence.has_value());
}

TEST_CASE("every bundled scenario passes its expectations") {
  auto o = opts("all_bundled", 2, false);
  for (const auto& name : bundled_scenario_names()) {
    auto r = run_scenario(bundled_scenario(name), o);
    INFO("scenario " << name);
    CHECK(r.pass);
  }
}

TEST_CASE("differential blocks export as triples") {
  auto sc = bundled_scenario("s1_q_trunc2");
  sc["export_blocks"] = Json::array({Json::array({1, 0, 1}), Json::array({2, 0, 2})});
  sc["name"] = "export_blocks_run";
  auto r = run_scenario(sc, opts("export", 1, false));
  REQUIRE(r.files.count("block_q1_s0_w1") + r.files.count("block_q1_s0_w1.txt") >= 1);
  auto text = r.files.at("block_q1_s0_w1.txt");
  auto m = matrix_from_triples<Rational>(FieldDesc::rationals(), text);
  CHECK(m.cols == 1);  // one weight-1 chain on the circle's edge
}

TEST_CASE("stability report carries both sides and the verdict grid") {
  auto sc = bundled_scenario("stability_q_n2");
  auto r = run_scenario(sc, opts("stab", 2, false));
  CHECK(r.pass);
  const auto& res = r.report.at("results");
  CHECK(res.at("torus").at("degree_totals").get<std::vector<long>>() == std::vector<long>{1, 2, 3});
  CHECK(res.at("bouquet").at("degree_totals").get<std::vector<long>>() == std::vector<long>{1, 2, 4});
  CHECK(res.at("first_degree_divergence").get<int>() == 2);
  CHECK(r.files.count("table_torus.csv") == 1);
  CHECK(r.files.count("table_bouquet.csv") == 1);
}

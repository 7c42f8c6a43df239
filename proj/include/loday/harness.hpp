#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <future>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loday/io.hpp"
#include "loday/loday_complex.hpp"
#include "loday/sha256.hpp"
#include "loday/spectral.hpp"
#include "loday/torusdiag.hpp"

namespace loday {

inline const char* engine_version() { return "loday 0.1.0"; }

struct RunOptions {
  std::string out_dir = "out";
  std::string cache_dir;  // empty: $LODAY_CACHE_DIR or .loday-cache
  bool use_cache = true;
  int jobs = 1;
};

struct RunResult {
  std::string name;
  bool pass = true;
  bool cache_hit = false;
  Json report;
  std::map<std::string, std::string> files;
};

struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// ---- builders from scenario descriptors ----

inline SimplicialSet build_space(const Json& sp, int truncation) {
  std::string type = sp.at("type").get<std::string>();
  if (type == "point") return point_space(truncation);
  if (type == "sphere") return sphere(sp.at("n").get<int>(), truncation);
  if (type == "circle_two_cells") return circle_two_cells(truncation, sp.value("parallel", false));
  if (type == "torus") return torus(sp.at("n").get<int>(), truncation);
  if (type == "torus_cell_bouquet") return torus_cell_bouquet(sp.at("n").get<int>(), truncation);
  if (type == "cover") return circle_cover(sp.at("n").get<int>(), truncation);
  if (type == "klein") return klein_bottle(truncation);
  if (type == "product") {
    const Json& factors = sp.at("factors");
    SimplicialSet s = build_space(factors.at(0), truncation);
    for (std::size_t i = 1; i < factors.size(); ++i) s = product(s, build_space(factors.at(i), truncation));
    return s;
  }
  if (type == "wedge") {
    const Json& parts = sp.at("parts");
    SimplicialSet s = build_space(parts.at(0), truncation);
    for (std::size_t i = 1; i < parts.size(); ++i) s = wedge(s, build_space(parts.at(i), truncation));
    return s;
  }
  if (type == "custom") return simplicial_from_json(sp.at("presentation"));
  throw ScenarioError("unknown space type: " + type);
}

template <class K>
struct BuiltAlgebra {
  StructureConstantAlgebra<K> algebra;
  std::optional<GroupActionOnAlgebra<K>> rotation;  // tensor powers come with one
  std::vector<std::vector<int>> exponents;          // free graded families
};

template <class K>
BuiltAlgebra<K> build_algebra(const Json& al, const FieldDesc& f, int weight_budget) {
  BuiltAlgebra<K> out;
  std::string family = al.at("family").get<std::string>();
  if (family == "truncated_poly") {
    out.algebra = truncated_poly<K>(f, al.at("m").get<int>());
  } else if (family == "poly") {
    out.algebra = poly_weight_capped<K>(f, al.value("cap", weight_budget));
  } else if (family == "quotient_poly") {
    std::vector<K> coeffs;
    for (const Json& c : al.at("coefficients")) coeffs.push_back(scalar_parse<K>(f, c.get<std::string>()));
    out.algebra = quotient_by_poly<K>(f, coeffs);
  } else if (family == "free_graded") {
    std::vector<GradedGenerator> gens;
    for (const Json& g : al.at("generators"))
      gens.push_back({g.at("name").get<std::string>(), g.at("degree").get<int>(), g.at("weight").get<int>()});
    out.algebra = free_graded_commutative<K>(f, gens, al.value("degree_cap", weight_budget + 1),
                                             al.value("weight_cap", weight_budget), &out.exponents);
  } else if (family == "tensor_power") {
    auto base = build_algebra<K>(al.at("base"), f, weight_budget);
    auto [alg, rot] = cyclic_tensor_power(base.algebra, al.at("n").get<int>());
    out.algebra = std::move(alg);
    out.rotation = std::move(rot);
  } else if (family == "custom") {
    out.algebra = algebra_from_json<K>(al.at("presentation"));
  } else {
    throw ScenarioError("unknown algebra family: " + family);
  }
  return out;
}

// twist on a space: the cyclic group sits on the nondegenerate edges, the
// algebra action is either the tensor rotation or a diagonal generator scaling
template <class K>
std::pair<TwistingFunction, GroupActionOnAlgebra<K>> build_twist(const Json& tw, const SimplicialSet& space,
                                                                 const BuiltAlgebra<K>& built, const FieldDesc& f) {
  std::string type = tw.at("type").get<std::string>();
  if (type == "rotation") {
    if (!built.rotation) throw ScenarioError("rotation twist needs a tensor_power algebra");
    TwistingFunction tau = TwistingFunction::on_edges(space, built.rotation->group, 1);
    return {std::move(tau), *built.rotation};
  }
  if (type == "diagonal") {
    int order = tw.at("order").get<int>();
    if (built.exponents.empty()) throw ScenarioError("diagonal twist needs a free_graded algebra");
    std::vector<K> scalars;
    for (const Json& s : tw.at("scalars")) scalars.push_back(scalar_parse<K>(f, s.get<std::string>()));
    const auto& a = built.algebra;
    std::vector<typename StructureConstantAlgebra<K>::LinComb> gen;
    for (int i = 0; i < a.dim(); ++i) {
      K c = scalar_from_long<K>(f, 1);
      for (std::size_t g = 0; g < scalars.size(); ++g)
        for (int e = 0; e < built.exponents[i][g]; ++e) c *= scalars[g];
      gen.push_back({{i, c}});
    }
    auto act = GroupActionOnAlgebra<K>::cyclic_from_generator(a, order, std::move(gen));
    TwistingFunction tau = TwistingFunction::on_edges(space, FiniteGroup::cyclic(order), order > 1 ? 1 : 0);
    return {std::move(tau), std::move(act)};
  }
  throw ScenarioError("unknown twist type: " + type);
}

// ---- parallel homology driver (weights are independent) ----

template <class K>
HomologyTable homology_parallel(const std::function<LodaySpec<K>()>& mkspec, int dmax, int wmax, int jobs) {
  if (jobs <= 1) {
    LodayComplex<K> c(mkspec());
    return c.homology(dmax, wmax);
  }
  int workers = std::min(jobs, wmax + 1);
  std::vector<std::future<HomologyTable>> futs;
  futs.reserve(workers);
  for (int j = 0; j < workers; ++j)
    futs.push_back(std::async(std::launch::async, [&mkspec, dmax, wmax, j, workers] {
      LodayComplex<K> c(mkspec());
      HomologyTable t;
      for (int w = j; w <= wmax; w += workers) c.homology_one_weight(dmax, w, t);
      return t;
    }));
  HomologyTable merged;
  for (auto& f : futs) {
    HomologyTable t = f.get();
    for (const auto& [k, v] : t.dims) merged.dims[k] = v;
  }
  return merged;
}

// ---- golden tables from monomial enumerators ----

// Dimensions per (degree, weight) of a free graded-commutative algebra on the
// given generators (odd degrees exterior), by direct monomial counting.
inline HomologyTable enumerate_free_graded_dims(const std::vector<GradedGenerator>& gens, int dmax, int wmax) {
  std::vector<std::vector<long>> count(dmax + 1, std::vector<long>(wmax + 1, 0));
  count[0][0] = 1;
  for (const auto& g : gens) {
    if (g.degree <= 0 && g.weight <= 0) throw std::invalid_argument("enumerator generators need positive degree or weight");
    std::vector<std::vector<long>> next(dmax + 1, std::vector<long>(wmax + 1, 0));
    int emax = (g.degree % 2 != 0) ? 1 : dmax + wmax;
    for (int d = 0; d <= dmax; ++d)
      for (int w = 0; w <= wmax; ++w) {
        if (count[d][w] == 0) continue;
        for (int e = 0; e <= emax; ++e) {
          int dd = d + e * g.degree, ww = w + e * g.weight;
          if (dd > dmax || ww > wmax) break;
          next[dd][ww] += count[d][w];
          if (g.degree == 0 && g.weight == 0) break;
        }
      }
    count = std::move(next);
  }
  HomologyTable t;
  for (int d = 0; d <= dmax; ++d)
    for (int w = 0; w <= wmax; ++w) t.set(d, w, count[d][w]);
  return t;
}

// Bundled expected tables. Names:
//   HH1_Fp_poly            exterior class in degree 1
//   HH2_Fp_poly            one class in each even degree (divided-power dims)
//   HHn_Q_trunc:<n>[:m]    free graded-commutative on x_n, y_{n+1}
//   HHk_Q_poly:<k>         free graded-commutative on x_k
//   bouquet_Q_trunc:<n>[:m] tensor over the torus cells of HHk tables
inline HomologyTable expected_table(const std::string& name, int dmax, int wmax) {
  auto split = [](const std::string& s) {
    std::vector<std::string> parts;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ':')) parts.push_back(tok);
    return parts;
  };
  auto parts = split(name);
  if (parts[0] == "HH1_Fp_poly") return enumerate_free_graded_dims({{"et", 1, 1}}, dmax, wmax);
  if (parts[0] == "HH2_Fp_poly") return enumerate_free_graded_dims({{"ret", 2, 1}}, dmax, wmax);
  if (parts[0] == "HHn_Q_trunc") {
    int n = std::stoi(parts.at(1));
    int m = parts.size() > 2 ? std::stoi(parts[2]) : 2;
    return enumerate_free_graded_dims({{"x", n, 1}, {"y", n + 1, m}}, dmax, wmax);
  }
  if (parts[0] == "HHk_Q_poly") {
    int k = std::stoi(parts.at(1));
    return enumerate_free_graded_dims({{"x", k, 1}}, dmax, wmax);
  }
  if (parts[0] == "bouquet_Q_trunc") {
    int n = std::stoi(parts.at(1));
    int m = parts.size() > 2 ? std::stoi(parts[2]) : 2;
    std::vector<GradedGenerator> gens;
    std::vector<std::vector<long>> choose(n + 1, std::vector<long>(n + 1, 0));
    for (int i = 0; i <= n; ++i) {
      choose[i][0] = 1;
      for (int j = 1; j <= i; ++j) choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
    }
    for (int k = 1; k <= n; ++k)
      for (long c = 0; c < choose[n][k]; ++c) {
        std::string suff = std::to_string(k) + "_" + std::to_string(c);
        gens.push_back({"x" + suff, k, 1});
        gens.push_back({"y" + suff, k + 1, m});
      }
    return enumerate_free_graded_dims(gens, dmax, wmax);
  }
  throw ScenarioError("unknown expected table: " + name);
}

// ---- stability comparison ----

struct StabilityReport {
  HomologyTable torus_side;
  HomologyTable bouquet_side;
  TableCompareReport verdicts;
  std::vector<long> torus_degree_totals;
  std::vector<long> bouquet_degree_totals;
  std::optional<int> first_degree_divergence;
};

template <class K>
StabilityReport stability_compare(const Json& algebra_desc, const FieldDesc& f, int n, int dmax, int wmax,
                                  int truncation, int jobs) {
  StabilityReport rep;
  auto mk = [&](bool torus_side) {
    return [=]() {
      auto built = build_algebra<K>(algebra_desc, f, wmax);
      auto space = std::make_shared<SimplicialSet>(torus_side ? torus(n, truncation)
                                                              : torus_cell_bouquet(n, truncation));
      return LodaySpec<K>::reduced(space, built.algebra, dmax, wmax);
    };
  };
  rep.torus_side = homology_parallel<K>(mk(true), dmax, wmax, jobs);
  rep.bouquet_side = homology_parallel<K>(mk(false), dmax, wmax, jobs);
  rep.verdicts = compare_tables(rep.torus_side, rep.bouquet_side, dmax, wmax);
  rep.torus_degree_totals = rep.torus_side.degree_vector(dmax);
  rep.bouquet_degree_totals = rep.bouquet_side.degree_vector(dmax);
  for (int d = 0; d <= dmax; ++d)
    if (rep.torus_degree_totals[d] != rep.bouquet_degree_totals[d]) {
      rep.first_degree_divergence = d;
      break;
    }
  return rep;
}

// ---- scenario runner ----

namespace detail {

inline Json table_report(const HomologyTable& t, int dmax) {
  Json j;
  j["table"] = table_to_json(t);
  j["degree_totals"] = t.degree_vector(dmax);
  return j;
}

inline bool check_expectations(const Json& expect, const Json& results, std::vector<std::string>& notes) {
  bool ok = true;
  auto note = [&](bool good, const std::string& what) {
    notes.push_back((good ? "pass: " : "FAIL: ") + what);
    ok = ok && good;
  };
  if (expect.contains("degree_totals")) {
    auto want = expect.at("degree_totals").get<std::vector<long>>();
    auto got = results.at("degree_totals").get<std::vector<long>>();
    bool good = want.size() <= got.size();
    if (good)
      for (std::size_t i = 0; i < want.size(); ++i) good = good && want[i] == got[i];
    note(good, "degree totals match");
  }
  if (expect.contains("table")) {
    HomologyTable want = table_from_json(expect.at("table"));
    HomologyTable got = table_from_json(results.at("table"));
    bool good = true;
    for (const auto& [k, v] : want.dims) good = good && got.dim(k.first, k.second) == v;
    note(good, "table entries match");
  }
  if (expect.contains("divergence_at_degree")) {
    int d = expect.at("divergence_at_degree").get<int>();
    bool good = !results.at("first_degree_divergence").is_null() &&
                results.at("first_degree_divergence").get<int>() == d;
    if (good && expect.value("torus_strictly_smaller", true)) {
      auto t = results.at("torus").at("degree_totals").get<std::vector<long>>();
      auto b = results.at("bouquet").at("degree_totals").get<std::vector<long>>();
      good = t.at(d) < b.at(d);
    }
    note(good, "divergence at degree " + std::to_string(d));
  }
  if (expect.contains("equal_through_degree")) {
    int d = expect.at("equal_through_degree").get<int>();
    auto t = results.at("torus").at("degree_totals").get<std::vector<long>>();
    auto b = results.at("bouquet").at("degree_totals").get<std::vector<long>>();
    bool good = static_cast<int>(t.size()) > d && static_cast<int>(b.size()) > d;
    for (int i = 0; good && i <= d; ++i) good = t[i] == b[i];
    note(good, "agreement through degree " + std::to_string(d));
  }
  if (expect.contains("collapse")) {
    bool good = results.at("collapse_equal").get<bool>() == expect.at("collapse").get<bool>();
    note(good, "collapse check");
  }
  if (expect.contains("concentrated_in_row_zero")) {
    bool good = results.at("rows_above_zero_total").get<long>() == 0;
    note(good, "page concentrated in row zero");
  }
  if (expect.contains("holds")) {
    bool good = results.at("holds").get<bool>() == expect.at("holds").get<bool>();
    note(good, "relation verdict");
  }
  if (expect.contains("no_violations")) {
    bool good = results.at("violations").empty();
    note(good, "validation is clean");
  }
  return ok;
}

}  // namespace detail

template <class K>
void run_task(const Json& sc, const RunOptions& opt, Json& results, std::map<std::string, std::string>& files) {
  FieldDesc f = FieldDesc::parse(sc.at("field").get<std::string>());
  std::string task = sc.at("task").get<std::string>();
  const Json& budgets = sc.at("budgets");
  int dmax = budgets.at("degree").get<int>();
  int wmax = budgets.at("weight").get<int>();
  int truncation = budgets.value("truncation", dmax + 1);
  if (dmax < 0 || dmax > 8 || wmax < 0 || wmax > 64 || truncation > 9)
    throw ScenarioError("budgets exceed the global limits (degree <= 8, weight <= 64, truncation <= 9)");

  if (task == "homology") {
    auto mkspec = [&]() {
      auto built = build_algebra<K>(sc.at("algebra"), f, wmax);
      auto space = std::make_shared<SimplicialSet>(build_space(sc.at("space"), truncation));
      std::string coeff = sc.value("coefficients", std::string("field"));
      LodaySpec<K> spec = coeff == "self" ? LodaySpec<K>::unreduced(space, built.algebra, dmax, wmax)
                                          : LodaySpec<K>::reduced(space, built.algebra, dmax, wmax);
      if (sc.contains("twist")) {
        auto [tau, act] = build_twist<K>(sc.at("twist"), *space, built, f);
        spec.with_twist(std::move(tau), std::move(act));
      }
      return spec;
    };
    HomologyTable t = homology_parallel<K>(mkspec, dmax, wmax, opt.jobs);
    results = detail::table_report(t, dmax);
    files["table.csv"] = table_to_csv(t);
    if (sc.contains("export_blocks")) {
      LodayComplex<K> c(mkspec());
      for (const Json& b : sc.at("export_blocks")) {
        int q = b.at(0).get<int>(), s = b.at(1).get<int>(), w = b.at(2).get<int>();
        std::string fn = "block_q" + std::to_string(q) + "_s" + std::to_string(s) + "_w" + std::to_string(w) + ".txt";
        files[fn] = matrix_to_triples(c.differential(q, s, w));
      }
    }
    return;
  }

  if (task == "stability") {
    int n = sc.at("n").get<int>();
    auto rep = stability_compare<K>(sc.at("algebra"), f, n, dmax, wmax, truncation, opt.jobs);
    results["torus"] = detail::table_report(rep.torus_side, dmax);
    results["bouquet"] = detail::table_report(rep.bouquet_side, dmax);
    results["blockwise_equal"] = rep.verdicts.equal;
    if (rep.verdicts.first) {
      results["first_block_divergence"] = {{"degree", rep.verdicts.first->degree},
                                           {"weight", rep.verdicts.first->weight},
                                           {"torus", rep.verdicts.first->lhs},
                                           {"bouquet", rep.verdicts.first->rhs}};
    }
    results["first_degree_divergence"] = nullptr;
    if (rep.first_degree_divergence) results["first_degree_divergence"] = *rep.first_degree_divergence;
    files["table_torus.csv"] = table_to_csv(rep.torus_side);
    files["table_bouquet.csv"] = table_to_csv(rep.bouquet_side);
    return;
  }

  if (task == "e2") {
    const Json& e2 = sc.at("e2");
    auto fiber = build_algebra<K>(e2.at("fiber"), f, wmax);
    auto base = std::make_shared<SimplicialSet>(build_space(e2.at("base"), truncation));
    auto [tau, act] = build_twist<K>(e2.at("twist"), *base, fiber, f);
    int qmax = e2.value("max_internal_degree", dmax);
    E2Page page = e2_page<K>(base, fiber.algebra, act, tau, dmax, qmax, wmax);
    results["page"] = e2_to_json(page);
    long above = 0;
    for (const auto& [k, v] : page.dims)
      if (std::get<1>(k) > 0) above += v;
    results["rows_above_zero_total"] = above;
    files["e2.csv"] = e2_to_csv(page);
    if (e2.contains("direct_space")) {
      auto direct_space = std::make_shared<SimplicialSet>(build_space(e2.at("direct_space"), truncation));
      auto direct_alg = build_algebra<K>(e2.at("direct_algebra"), f, wmax);
      LodaySpec<K> dspec = LodaySpec<K>::unreduced(direct_space, direct_alg.algebra, dmax, wmax);
      LodayComplex<K> dc(dspec);
      HomologyTable direct = dc.homology(dmax, wmax);
      auto rep = collapse_check(page, direct, dmax, wmax);
      results["collapse_equal"] = rep.equal;
      results["collapse_mismatches"] = rep.mismatches;
      results["direct"] = detail::table_report(direct, dmax);
      files["direct.csv"] = table_to_csv(direct);
    }
    return;
  }

  if (task == "diagonal") {
    const Json& dg = sc.at("diagonal");
    int n = sc.at("n").get<int>();
    int cap = dg.value("cap", wmax);
    bool reduced = !dg.value("unreduced", false);
    TorusGridComplex<K> c(n, poly_weight_capped<K>(f, cap), reduced);
    bool holds = true, rewrite = true;
    Json verdicts = Json::array();
    if (dg.contains("power")) {
      for (const Json& kj : dg.at("power")) {
        int k = kj.get<int>();
        auto r = relation_power(c, k);
        verdicts.push_back({{"relation", "power"},
                            {"k", k},
                            {"holds", r.holds},
                            {"rewrite_agrees", r.rewrite_agrees},
                            {"witness", r.witness ? grid_chain_to_json(c, *r.witness) : Json(nullptr)}});
        holds = holds && r.holds;
        rewrite = rewrite && r.rewrite_agrees;
      }
    }
    if (dg.contains("null_coordinate")) {
      auto coord = dg.at("null_coordinate").get<std::vector<int>>();
      auto r = relation_null(c, dg.value("null_power", 1), coord);
      verdicts.push_back({{"relation", "null"}, {"holds", r.holds}});
      holds = holds && r.holds;
    }
    if (dg.contains("quotient")) {
      std::vector<K> coeffs;
      for (const Json& q : dg.at("quotient")) coeffs.push_back(scalar_parse<K>(f, q.get<std::string>()));
      auto r = quotient_poly_image(c, coeffs);
      verdicts.push_back({{"relation", "quotient_image"}, {"holds", r.holds}, {"per_weight", r.per_weight}});
      holds = holds && r.holds;
    }
    results["verdicts"] = std::move(verdicts);
    results["holds"] = holds;
    results["rewrite_agrees"] = rewrite;
    return;
  }

  if (task == "validate") {
    auto space = build_space(sc.at("space"), truncation);
    results["violations"] = space.validate();
    results["euler_characteristic"] = space.euler_characteristic();
    Json sizes = Json::array();
    for (int q = 0; q <= space.truncation; ++q) sizes.push_back(space.level_size(q));
    results["level_sizes"] = std::move(sizes);
    files["space.json"] = simplicial_to_json(space).dump(2) + "\n";
    return;
  }

  throw ScenarioError("unknown task: " + task);
}

inline std::string resolve_cache_dir(const RunOptions& opt) {
  if (!opt.cache_dir.empty()) return opt.cache_dir;
  if (const char* env = std::getenv("LODAY_CACHE_DIR")) return env;
  return ".loday-cache";
}

inline void write_file(const std::filesystem::path& p, const std::string& content) {
  std::filesystem::create_directories(p.parent_path());
  std::ofstream os(p, std::ios::binary);
  os << content;
}

inline std::optional<std::string> read_file(const std::filesystem::path& p) {
  std::ifstream is(p, std::ios::binary);
  if (!is) return std::nullopt;
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

inline RunResult run_scenario(const Json& scenario, const RunOptions& opt) {
  RunResult rr;
  rr.name = scenario.at("name").get<std::string>();
  std::string canonical = scenario.dump();
  std::string key = Sha256::hex(canonical + "\n" + engine_version());
  std::filesystem::path cache = std::filesystem::path(resolve_cache_dir(opt)) / key;

  bool computed = false;
  if (opt.use_cache) {
    auto manifest = read_file(cache / "manifest.json");
    if (manifest) {
      bool complete = true;
      std::map<std::string, std::string> files;
      try {
        Json m = Json::parse(*manifest);
        for (const Json& fn : m.at("files")) {
          auto content = read_file(cache / fn.get<std::string>());
          if (!content) {
            complete = false;  // corrupt cache entry: recompute
            break;
          }
          files[fn.get<std::string>()] = std::move(*content);
        }
      } catch (const std::exception&) {
        complete = false;
      }
      if (complete && files.count("report.json")) {
        rr.files = std::move(files);
        rr.report = Json::parse(rr.files.at("report.json"));
        rr.pass = rr.report.at("status").get<std::string>() == "pass";
        rr.cache_hit = true;
        computed = true;
      }
    }
  }

  if (!computed) {
    Json results;
    FieldDesc f = FieldDesc::parse(scenario.at("field").get<std::string>());
    if (f.is_rational())
      run_task<Rational>(scenario, opt, results, rr.files);
    else
      run_task<Fp>(scenario, opt, results, rr.files);
    std::vector<std::string> notes;
    rr.pass = true;
    if (scenario.contains("expect")) rr.pass = detail::check_expectations(scenario.at("expect"), results, notes);
    rr.report["engine"] = engine_version();
    rr.report["scenario"] = scenario;
    rr.report["results"] = std::move(results);
    rr.report["checks"] = notes;
    rr.report["status"] = rr.pass ? "pass" : "fail";
    rr.files["report.json"] = rr.report.dump(2) + "\n";
    if (opt.use_cache) {
      Json manifest;
      manifest["files"] = Json::array();
      for (const auto& [fn, content] : rr.files) manifest["files"].push_back(fn);
      for (const auto& [fn, content] : rr.files) write_file(cache / fn, content);
      write_file(cache / "manifest.json", manifest.dump(2) + "\n");
    }
  }

  if (!opt.out_dir.empty())
    for (const auto& [fn, content] : rr.files) write_file(std::filesystem::path(opt.out_dir) / rr.name / fn, content);
  return rr;
}

// ---- bundled scenarios ----

inline const std::vector<std::pair<std::string, std::string>>& bundled_scenario_texts() {
  static const std::vector<std::pair<std::string, std::string>> list = {
      {"s1_q_poly", R"({
  "name": "s1_q_poly",
  "task": "homology",
  "field": "Q",
  "budgets": {"degree": 3, "weight": 3, "truncation": 4},
  "space": {"type": "sphere", "n": 1},
  "algebra": {"family": "poly"},
  "coefficients": "field",
  "expect": {"degree_totals": [1, 1, 0, 0]}
})"},
      {"s2_q_poly", R"({
  "name": "s2_q_poly",
  "task": "homology",
  "field": "Q",
  "budgets": {"degree": 4, "weight": 3, "truncation": 5},
  "space": {"type": "sphere", "n": 2},
  "algebra": {"family": "poly"},
  "coefficients": "field",
  "expect": {"degree_totals": [1, 0, 1, 0, 1]}
})"},
      {"s1_q_trunc2", R"({
  "name": "s1_q_trunc2",
  "task": "homology",
  "field": "Q",
  "budgets": {"degree": 4, "weight": 4, "truncation": 5},
  "space": {"type": "sphere", "n": 1},
  "algebra": {"family": "truncated_poly", "m": 2},
  "coefficients": "field",
  "expect": {"degree_totals": [1, 1, 1, 1, 1]}
})"},
      {"stability_q_n2", R"({
  "name": "stability_q_n2",
  "task": "stability",
  "field": "Q",
  "n": 2,
  "budgets": {"degree": 2, "weight": 3, "truncation": 3},
  "algebra": {"family": "truncated_poly", "m": 2},
  "expect": {"divergence_at_degree": 2}
})"},
      {"stability_f2_n2", R"({
  "name": "stability_f2_n2",
  "task": "stability",
  "field": "F2",
  "n": 2,
  "budgets": {"degree": 3, "weight": 4, "truncation": 4},
  "algebra": {"family": "truncated_poly", "m": 2},
  "expect": {"equal_through_degree": 3}
})"},
      {"stability_f3_n2", R"({
  "name": "stability_f3_n2",
  "task": "stability",
  "field": "F3",
  "n": 2,
  "budgets": {"degree": 2, "weight": 3, "truncation": 3},
  "algebra": {"family": "truncated_poly", "m": 2},
  "expect": {"divergence_at_degree": 2}
})"},
      {"smalltrunc", R"({
  "name": "smalltrunc",
  "task": "stability",
  "field": "Q",
  "n": 3,
  "budgets": {"degree": 2, "weight": 3, "truncation": 3},
  "algebra": {"family": "truncated_poly", "m": 2},
  "expect": {"divergence_at_degree": 2}
})"},
      {"klein_f3", R"({
  "name": "klein_f3",
  "task": "homology",
  "field": "F3",
  "budgets": {"degree": 2, "weight": 2, "truncation": 3},
  "space": {"type": "klein"},
  "algebra": {"family": "poly"},
  "coefficients": "self",
  "expect": {"table": {"0,0": 1, "0,1": 1, "1,1": 1, "2,1": 0, "0,2": 1, "1,2": 1, "2,2": 0}}
})"},
      {"klein_f3_e2", R"({
  "name": "klein_f3_e2",
  "task": "e2",
  "field": "F3",
  "budgets": {"degree": 2, "weight": 2, "truncation": 3},
  "e2": {
    "base": {"type": "sphere", "n": 1},
    "fiber": {"family": "free_graded",
              "generators": [{"name": "x", "degree": 0, "weight": 1}, {"name": "ex", "degree": 1, "weight": 1}],
              "degree_cap": 1, "weight_cap": 2},
    "twist": {"type": "diagonal", "order": 2, "scalars": ["1", "-1"]},
    "max_internal_degree": 1,
    "direct_space": {"type": "klein"},
    "direct_algebra": {"family": "poly"}
  },
  "expect": {"collapse": true, "concentrated_in_row_zero": true}
})"},
      {"cover_f3_e2", R"({
  "name": "cover_f3_e2",
  "task": "e2",
  "field": "F3",
  "budgets": {"degree": 3, "weight": 8, "truncation": 4},
  "e2": {
    "base": {"type": "sphere", "n": 1},
    "fiber": {"family": "tensor_power", "n": 2, "base": {"family": "truncated_poly", "m": 2}},
    "twist": {"type": "rotation"},
    "max_internal_degree": 1,
    "direct_space": {"type": "cover", "n": 2},
    "direct_algebra": {"family": "truncated_poly", "m": 2}
  },
  "expect": {"collapse": true, "concentrated_in_row_zero": true}
})"},
      {"cover_f3_n2", R"({
  "name": "cover_f3_n2",
  "task": "homology",
  "field": "F3",
  "budgets": {"degree": 3, "weight": 10, "truncation": 4},
  "space": {"type": "sphere", "n": 1},
  "algebra": {"family": "tensor_power", "n": 2, "base": {"family": "truncated_poly", "m": 2}},
  "coefficients": "self",
  "twist": {"type": "rotation"},
  "expect": {"degree_totals": [2, 1, 1, 1]}
})"},
      {"cover_f3_n3", R"({
  "name": "cover_f3_n3",
  "task": "homology",
  "field": "F3",
  "budgets": {"degree": 3, "weight": 15, "truncation": 4},
  "space": {"type": "sphere", "n": 1},
  "algebra": {"family": "tensor_power", "n": 3, "base": {"family": "truncated_poly", "m": 2}},
  "coefficients": "self",
  "twist": {"type": "rotation"},
  "expect": {"degree_totals": [2, 1, 1, 1]}
})"},
      {"twisted_exterior_q", R"({
  "name": "twisted_exterior_q",
  "task": "homology",
  "field": "Q",
  "budgets": {"degree": 3, "weight": 4, "truncation": 4},
  "space": {"type": "sphere", "n": 1},
  "algebra": {"family": "free_graded",
              "generators": [{"name": "ex", "degree": 1, "weight": 1}],
              "degree_cap": 1, "weight_cap": 1},
  "coefficients": "self",
  "twist": {"type": "diagonal", "order": 2, "scalars": ["-1"]},
  "expect": {"degree_totals": [1, 0, 0, 0]}
})"},
      {"diagonal_n2", R"({
  "name": "diagonal_n2",
  "task": "diagonal",
  "field": "Q",
  "n": 2,
  "budgets": {"degree": 3, "weight": 4},
  "diagonal": {"power": [2, 3], "null_coordinate": [1, 0], "cap": 4},
  "expect": {"holds": true}
})"},
      {"diagonal_n3", R"({
  "name": "diagonal_n3",
  "task": "diagonal",
  "field": "Q",
  "n": 3,
  "budgets": {"degree": 4, "weight": 4},
  "diagonal": {"power": [3], "cap": 4},
  "expect": {"holds": true}
})"},
      {"quotient_t2_plus_t", R"({
  "name": "quotient_t2_plus_t",
  "task": "diagonal",
  "field": "Q",
  "n": 1,
  "budgets": {"degree": 2, "weight": 3},
  "diagonal": {"quotient": ["1", "1"], "cap": 4},
  "expect": {"holds": true}
})"},
      {"validate_spaces", R"({
  "name": "validate_spaces",
  "task": "validate",
  "field": "Q",
  "budgets": {"degree": 2, "weight": 1, "truncation": 4},
  "space": {"type": "sphere", "n": 2},
  "expect": {"no_violations": true}
})"}};
  return list;
}

inline Json bundled_scenario(const std::string& name) {
  for (const auto& [n, text] : bundled_scenario_texts())
    if (n == name) return Json::parse(text);
  throw ScenarioError("unknown bundled scenario: " + name);
}

inline std::vector<std::string> bundled_scenario_names() {
  std::vector<std::string> names;
  for (const auto& [n, text] : bundled_scenario_texts()) names.push_back(n);
  return names;
}

}  // namespace loday

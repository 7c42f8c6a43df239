#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "loday/harness.hpp"

namespace {

using loday::Json;

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, sep)) parts.push_back(tok);
  return parts;
}

Json space_desc(const std::string& s) {
  auto p = split(s, ':');
  const std::string& t = p[0];
  if (t == "point") return {{"type", "point"}};
  if (t == "sphere") return {{"type", "sphere"}, {"n", std::stoi(p.at(1))}};
  if (t == "torus") return {{"type", "torus"}, {"n", std::stoi(p.at(1))}};
  if (t == "bouquet") return {{"type", "torus_cell_bouquet"}, {"n", std::stoi(p.at(1))}};
  if (t == "cover") return {{"type", "cover"}, {"n", std::stoi(p.at(1))}};
  if (t == "klein") return {{"type", "klein"}};
  if (t == "circle2") return {{"type", "circle_two_cells"}};
  if (t == "circle2p") return {{"type", "circle_two_cells"}, {"parallel", true}};
  throw CLI::ValidationError("space", "unknown space descriptor: " + s);
}

Json algebra_desc(const std::string& s) {
  auto p = split(s, ':');
  const std::string& t = p[0];
  if (t == "poly") {
    Json j = {{"family", "poly"}};
    if (p.size() > 1) j["cap"] = std::stoi(p[1]);
    return j;
  }
  if (t == "trunc") return {{"family", "truncated_poly"}, {"m", std::stoi(p.at(1))}};
  if (t == "quot") {
    Json coeffs = Json::array();
    for (const auto& c : split(p.at(1), ',')) coeffs.push_back(c);
    return {{"family", "quotient_poly"}, {"coefficients", coeffs}};
  }
  if (t == "ext")
    return {{"family", "free_graded"},
            {"generators", Json::array({{{"name", "ex"}, {"degree", 1}, {"weight", 1}}})},
            {"degree_cap", 1},
            {"weight_cap", 1}};
  if (t == "polyext") {
    int cap = p.size() > 1 ? std::stoi(p[1]) : 2;
    return {{"family", "free_graded"},
            {"generators", Json::array({{{"name", "x"}, {"degree", 0}, {"weight", 1}},
                                        {{"name", "ex"}, {"degree", 1}, {"weight", 1}}})},
            {"degree_cap", 1},
            {"weight_cap", cap}};
  }
  if (t == "tpow") return {{"family", "tensor_power"}, {"n", std::stoi(p.at(1))},
                           {"base", algebra_desc(s.substr(t.size() + p.at(1).size() + 2))}};
  throw CLI::ValidationError("algebra", "unknown algebra descriptor: " + s);
}

Json twist_desc(const std::string& s) {
  auto p = split(s, ':');
  if (p[0] == "rotation") return {{"type", "rotation"}};
  if (p[0] == "diag") {
    Json scalars = Json::array();
    for (const auto& c : split(p.at(1), ',')) scalars.push_back(c);
    int order = p.size() > 2 ? std::stoi(p[2]) : 2;
    return {{"type", "diagonal"}, {"order", order}, {"scalars", scalars}};
  }
  throw CLI::ValidationError("twist", "unknown twist descriptor: " + s);
}

int execute(const Json& scenario, const loday::RunOptions& opt) {
  auto t0 = std::chrono::steady_clock::now();
  loday::RunResult rr;
  try {
    rr = loday::run_scenario(scenario, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::cerr << rr.name << (rr.cache_hit ? " (cached)" : "") << " in " << secs << "s\n";
  std::cout << rr.name << ": " << (rr.pass ? "pass" : "FAIL") << "\n";
  if (rr.report.contains("checks"))
    for (const auto& c : rr.report.at("checks")) std::cout << "  " << c.get<std::string>() << "\n";
  if (!opt.out_dir.empty()) std::cout << "  report: " << opt.out_dir << "/" << rr.name << "/report.json\n";
  return rr.pass ? 0 : 1;
}

Json load_config(const std::string& config, const std::string& bundled) {
  if (!bundled.empty()) return loday::bundled_scenario(bundled);
  std::ifstream is(config);
  if (!is) throw std::runtime_error("cannot open scenario config: " + config);
  Json j;
  try {
    is >> j;
  } catch (const Json::parse_error& e) {
    throw std::runtime_error("scenario parse error in " + config + ": " + e.what());
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Loday-complex homology over finite simplicial sets"};
  app.require_subcommand(1);

  loday::RunOptions opt;
  bool no_cache = false;
  app.add_option("--out", opt.out_dir, "output directory for reports")->capture_default_str();
  app.add_option("--cache-dir", opt.cache_dir, "report cache directory (default $LODAY_CACHE_DIR or .loday-cache)");
  app.add_flag("--no-cache", no_cache, "disable the report cache");
  app.add_option("--jobs", opt.jobs, "parallel workers for independent weight blocks")->capture_default_str();

  std::string config, bundled, field = "Q", space, algebra, twist, coeff = "field";
  int degree = 2, weight = 2, truncation = -1, n = 2;

  auto add_common = [&](CLI::App* sub, bool with_budgets) {
    sub->fallthrough();  // global options may follow the subcommand
    sub->add_option("--config,-c", config, "scenario config file (JSON)");
    sub->add_option("--bundled,-b", bundled, "bundled scenario name");
    if (with_budgets) {
      sub->add_option("--field", field, "ground field: Q or Fp (e.g. F3)");
      sub->add_option("--degree", degree, "homology degree budget");
      sub->add_option("--weight", weight, "weight budget");
      sub->add_option("--truncation", truncation, "simplicial truncation level (default degree+1)");
    }
  };

  CLI::App* hom = app.add_subcommand("homology", "homology table of one construction");
  add_common(hom, true);
  hom->add_option("--space", space, "space descriptor, e.g. sphere:1, torus:2, klein, cover:2");
  hom->add_option("--algebra", algebra, "algebra descriptor, e.g. poly, trunc:2, ext, tpow:2:trunc:2");
  hom->add_option("--coeff", coeff, "coefficients: field (reduced) or self");
  hom->add_option("--twist", twist, "twist descriptor: rotation or diag:<scalars>[:order]");

  CLI::App* stab = app.add_subcommand("stability", "torus vs cell-bouquet comparison");
  add_common(stab, true);
  stab->add_option("--algebra", algebra, "algebra descriptor");
  stab->add_option("--n", n, "torus dimension");

  CLI::App* e2 = app.add_subcommand("e2", "twisted-product page from a declared fiber algebra");
  add_common(e2, false);

  CLI::App* diag = app.add_subcommand("diagonal", "diagonal/volume relations on the torus grid");
  add_common(diag, true);
  std::string powers, nullcoord, quotient;
  int cap = -1;
  bool unreduced = false;
  diag->add_option("--n", n, "torus dimension");
  diag->add_option("--power", powers, "comma-separated powers k for the diagonal relation");
  diag->add_option("--null", nullcoord, "coordinate (comma-separated 0/1) for the null relation");
  diag->add_option("--quotient", quotient, "comma-separated coefficients a1,...,am of q(t)");
  diag->add_option("--cap", cap, "weight cap of the polynomial entries");
  diag->add_flag("--unreduced", unreduced, "keep the algebra at the zero coordinate");

  CLI::App* val = app.add_subcommand("validate", "simplicial-identity report for a space");
  add_common(val, true);
  val->add_option("--space", space, "space descriptor");

  CLI::App* list = app.add_subcommand("scenarios", "list bundled scenarios");
  list->fallthrough();

  CLI11_PARSE(app, argc, argv);
  opt.use_cache = !no_cache;

  try {
    if (list->parsed()) {
      for (const auto& name : loday::bundled_scenario_names()) std::cout << name << "\n";
      return 0;
    }
    Json sc;
    if (!config.empty() || !bundled.empty()) {
      sc = load_config(config, bundled);
    } else {
      if (truncation < 0) truncation = degree + 1;
      sc["field"] = field;
      sc["budgets"] = {{"degree", degree}, {"weight", weight}, {"truncation", truncation}};
      if (hom->parsed()) {
        if (space.empty() || algebra.empty()) throw std::runtime_error("homology needs --space and --algebra (or --config)");
        sc["name"] = "homology_cli";
        sc["task"] = "homology";
        sc["space"] = space_desc(space);
        sc["algebra"] = algebra_desc(algebra);
        sc["coefficients"] = coeff;
        if (!twist.empty()) sc["twist"] = twist_desc(twist);
      } else if (stab->parsed()) {
        if (algebra.empty()) throw std::runtime_error("stability needs --algebra (or --config)");
        sc["name"] = "stability_cli";
        sc["task"] = "stability";
        sc["n"] = n;
        sc["algebra"] = algebra_desc(algebra);
      } else if (diag->parsed()) {
        sc["name"] = "diagonal_cli";
        sc["task"] = "diagonal";
        sc["n"] = n;
        Json d;
        if (!powers.empty()) {
          Json arr = Json::array();
          for (const auto& k : split(powers, ',')) arr.push_back(std::stoi(k));
          d["power"] = arr;
        }
        if (!nullcoord.empty()) {
          Json arr = Json::array();
          for (const auto& k : split(nullcoord, ',')) arr.push_back(std::stoi(k));
          d["null_coordinate"] = arr;
        }
        if (!quotient.empty()) {
          Json arr = Json::array();
          for (const auto& k : split(quotient, ',')) arr.push_back(k);
          d["quotient"] = arr;
        }
        if (cap > 0) d["cap"] = cap;
        if (unreduced) d["unreduced"] = true;
        sc["diagonal"] = std::move(d);
      } else if (val->parsed()) {
        if (space.empty()) throw std::runtime_error("validate needs --space (or --config)");
        sc["name"] = "validate_cli";
        sc["task"] = "validate";
        sc["space"] = space_desc(space);
      } else if (e2->parsed()) {
        throw std::runtime_error("e2 needs --config or --bundled (e.g. -b klein_f3_e2)");
      }
    }
    return execute(sc, opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}

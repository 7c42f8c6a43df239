#pragma once

#include <json.hpp>

#include <sstream>
#include <string>

#include "loday/algebra.hpp"
#include "loday/homology.hpp"
#include "loday/simplicial.hpp"
#include "loday/sparse.hpp"
#include "loday/spectral.hpp"
#include "loday/torusdiag.hpp"

namespace loday {

using Json = nlohmann::json;

// ---- simplicial sets: levels, face/degeneracy tables, basepoints ----

inline Json simplicial_to_json(const SimplicialSet& s) {
  Json j;
  j["truncation"] = s.truncation;
  j["basepoint"] = s.basepoint;
  Json levels = Json::array();
  for (int q = 0; q <= s.truncation; ++q) {
    Json lvl;
    lvl["simplices"] = s.names[q];
    lvl["degenerate"] = Json::array();
    for (bool b : s.degenerate_flag[q]) lvl["degenerate"].push_back(b ? 1 : 0);
    if (q >= 1) lvl["faces"] = s.faces[q];
    if (q < s.truncation) lvl["degeneracies"] = s.degens[q];
    levels.push_back(std::move(lvl));
  }
  j["levels"] = std::move(levels);
  return j;
}

inline SimplicialSet simplicial_from_json(const Json& j) {
  SimplicialSet s;
  s.truncation = j.at("truncation").get<int>();
  s.basepoint = j.at("basepoint").get<std::vector<int>>();
  int n = s.truncation;
  s.names.resize(n + 1);
  s.faces.resize(n + 1);
  s.degens.resize(n + 1);
  s.degenerate_flag.resize(n + 1);
  s.in_degen_image.resize(n + 1);
  s.normal_form.resize(n + 1);
  const Json& levels = j.at("levels");
  for (int q = 0; q <= n; ++q) {
    const Json& lvl = levels.at(q);
    s.names[q] = lvl.at("simplices").get<std::vector<std::string>>();
    for (int v : lvl.at("degenerate").get<std::vector<int>>()) s.degenerate_flag[q].push_back(v != 0);
    if (q >= 1) s.faces[q] = lvl.at("faces").get<std::vector<std::vector<int>>>();
    if (q < n) s.degens[q] = lvl.at("degeneracies").get<std::vector<std::vector<int>>>();
  }
  // reconstruct degeneracy-image tables from the maps
  for (int q = 1; q <= n; ++q) {
    s.in_degen_image[q].assign(q, std::vector<bool>(s.level_size(q), false));
    for (int i = 0; i < q; ++i)
      for (int y = 0; y < s.level_size(q - 1); ++y) s.in_degen_image[q][i][s.degens[q - 1][i][y]] = true;
  }
  return s;
}

// ---- algebras: field, basis, structure constants, augmentation ----

template <class K>
Json algebra_to_json(const StructureConstantAlgebra<K>& a) {
  Json j;
  j["field"] = a.field.name();
  j["unit"] = a.unit;
  j["weight_graded"] = a.weight_graded;
  Json basis = Json::array();
  for (const auto& b : a.basis) basis.push_back({{"name", b.name}, {"degree", b.degree}, {"weight", b.weight}});
  j["basis"] = std::move(basis);
  Json aug = Json::array();
  for (const auto& c : a.aug) aug.push_back(c.str());
  j["augmentation"] = std::move(aug);
  Json prods = Json::array();
  for (int i = 0; i < a.dim(); ++i)
    for (int k = 0; k < a.dim(); ++k) {
      const auto& p = a.product(i, k);
      if (!p) {
        prods.push_back({{"left", i}, {"right", k}, {"overflow", true}});
        continue;
      }
      if (p->empty()) continue;  // zero products are implicit
      Json terms = Json::array();
      for (const auto& [b, c] : *p) terms.push_back({{"basis", b}, {"coeff", c.str()}});
      prods.push_back({{"left", i}, {"right", k}, {"terms", std::move(terms)}});
    }
  j["products"] = std::move(prods);
  return j;
}

template <class K>
StructureConstantAlgebra<K> algebra_from_json(const Json& j) {
  StructureConstantAlgebra<K> a;
  a.field = FieldDesc::parse(j.at("field").get<std::string>());
  a.unit = j.at("unit").get<int>();
  a.weight_graded = j.at("weight_graded").get<bool>();
  for (const Json& b : j.at("basis"))
    a.basis.push_back({b.at("name").get<std::string>(), b.at("degree").get<int>(), b.at("weight").get<int>()});
  for (const Json& c : j.at("augmentation")) a.aug.push_back(scalar_parse<K>(a.field, c.get<std::string>()));
  int d = a.dim();
  a.products.assign(static_cast<std::size_t>(d) * d, typename StructureConstantAlgebra<K>::LinComb{});
  for (const Json& p : j.at("products")) {
    int i = p.at("left").get<int>(), k = p.at("right").get<int>();
    if (p.contains("overflow") && p.at("overflow").get<bool>()) {
      a.products[i * d + k] = std::nullopt;
      continue;
    }
    typename StructureConstantAlgebra<K>::LinComb lc;
    for (const Json& t : p.at("terms"))
      lc.emplace_back(t.at("basis").get<int>(), scalar_parse<K>(a.field, t.at("coeff").get<std::string>()));
    a.products[i * d + k] = std::move(lc);
  }
  detail::finish_flags(a);
  return a;
}

// ---- homology tables ----

inline Json table_to_json(const HomologyTable& t) {
  Json j = Json::object();
  for (const auto& [k, v] : t.dims) j[std::to_string(k.first) + "," + std::to_string(k.second)] = v;
  return j;
}

inline HomologyTable table_from_json(const Json& j) {
  HomologyTable t;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& key = it.key();
    auto comma = key.find(',');
    t.set(std::stoi(key.substr(0, comma)), std::stoi(key.substr(comma + 1)), it.value().get<long>());
  }
  return t;
}

inline std::string table_to_csv(const HomologyTable& t) {
  std::ostringstream os;
  os << "degree,weight,dim\n";
  for (const auto& [k, v] : t.dims) os << k.first << "," << k.second << "," << v << "\n";
  return os.str();
}

// ---- spectral pages ----

inline Json e2_to_json(const E2Page& p) {
  Json j = Json::object();
  for (const auto& [k, v] : p.dims) {
    auto [pp, qq, ww] = k;
    j[std::to_string(pp) + "," + std::to_string(qq) + "," + std::to_string(ww)] = v;
  }
  return j;
}

inline std::string e2_to_csv(const E2Page& p) {
  std::ostringstream os;
  os << "p,q,weight,dim\n";
  for (const auto& [k, v] : p.dims) {
    auto [pp, qq, ww] = k;
    os << pp << "," << qq << "," << ww << "," << v << "\n";
  }
  return os.str();
}

// ---- sparse matrices as (row, col, value) triples ----

template <class K>
std::string matrix_to_triples(const SparseMatrix<K>& m) {
  std::ostringstream os;
  os << "# rows cols nnz\n" << m.rows << " " << m.cols << " " << m.nnz() << "\n";
  for (int j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.col[j]) os << i << " " << j << " " << v.str() << "\n";
  return os.str();
}

template <class K>
SparseMatrix<K> matrix_from_triples(const FieldDesc& f, const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header comment
  int rows, cols;
  long long nnz;
  is >> rows >> cols >> nnz;
  std::vector<std::map<int, K>> cols_acc(cols);
  for (long long t = 0; t < nnz; ++t) {
    int i, j;
    std::string val;
    is >> i >> j >> val;
    cols_acc[j][i] = scalar_parse<K>(f, val);
  }
  SparseMatrix<K> m(rows, cols);
  for (int j = 0; j < cols; ++j) m.set_column(j, sparse_from_map(cols_acc[j]));
  return m;
}

// ---- multi-matrix chains: (multi-degree, coordinate -> label, scalar) records ----

template <class K>
Json grid_chain_to_json(const TorusGridComplex<K>& c, const GridChain<K>& z) {
  Json terms = Json::array();
  for (const auto& [m, coef] : z) {
    Json entries = Json::array();
    for (int cell = 0; cell < static_cast<int>(m.labels.size()); ++cell)
      if (m.labels[cell] != c.algebra().unit)
        entries.push_back({{"coordinate", c.coord_of(m.degree, cell)}, {"label", c.algebra().name(m.labels[cell])}});
    terms.push_back({{"degree", m.degree}, {"entries", std::move(entries)}, {"scalar", coef.str()}});
  }
  return terms;
}

}  // namespace loday

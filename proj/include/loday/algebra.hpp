#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "loday/field.hpp"
#include "loday/simplicial.hpp"

namespace loday {

// A product escaped the declared degree/weight caps of a capped algebra.
struct AlgebraOverflow : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// (Weight-)graded (graded-)commutative algebra over an exact field, given by
// basis, structure constants and augmentation. Capped families (polynomial
// rings behind a weight cap) mark out-of-cap products as overflow; consuming
// one is a hard error, never a silent truncation.
template <class K>
struct StructureConstantAlgebra {
  using Term = std::pair<int, K>;
  using LinComb = std::vector<Term>;  // sorted by basis index, nonzero coefficients

  struct BasisElem {
    std::string name;
    int degree = 0;
    int weight = 0;
  };

  FieldDesc field;
  std::vector<BasisElem> basis;
  int unit = 0;
  bool graded = false;        // some basis element has nonzero homological degree
  bool weight_graded = true;  // weights are meaningful and additive under products
  std::vector<std::optional<LinComb>> products;  // [i*dim + j]
  std::vector<K> aug;

  int dim() const { return static_cast<int>(basis.size()); }
  int degree(int i) const { return basis[i].degree; }
  int weight(int i) const { return basis[i].weight; }
  const std::string& name(int i) const { return basis[i].name; }

  int basis_index(const std::string& nm) const {
    for (int i = 0; i < dim(); ++i)
      if (basis[i].name == nm) return i;
    throw std::invalid_argument("no basis element named " + nm);
  }
  const std::optional<LinComb>& product(int i, int j) const { return products[i * dim() + j]; }

  K scalar(long n) const { return scalar_from_long<K>(field, n); }
  K zero() const { return K(); }
  K one() const { return scalar(1); }

  static LinComb normalize(std::map<int, K>& acc) {
    LinComb out;
    for (auto& [i, c] : acc)
      if (!c.is_zero()) out.emplace_back(i, std::move(c));
    return out;
  }

  LinComb term(int i) const { return LinComb{{i, one()}}; }

  LinComb mul(const LinComb& a, const LinComb& b) const {
    std::map<int, K> acc;
    for (const auto& [i, ci] : a)
      for (const auto& [j, cj] : b) {
        const auto& p = product(i, j);
        if (!p)
          throw AlgebraOverflow("product " + name(i) + " * " + name(j) + " exceeds the declared caps");
        K c = ci * cj;
        for (const auto& [k, ck] : *p) {
          auto [it, fresh] = acc.try_emplace(k, zero());
          it->second += c * ck;
        }
      }
    return normalize(acc);
  }

  K augment(const LinComb& a) const {
    K r = zero();
    for (const auto& [i, c] : a) r += c * aug[i];
    return r;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& m) {
      if (bad.size() < 100) bad.push_back(m);
    };
    if (!scalar_matches_field<K>(field)) flag("scalar type does not match field " + field.name());
    int d = dim();
    for (int i = 0; i < d; ++i) {
      const auto& u1 = product(unit, i);
      const auto& u2 = product(i, unit);
      if (!u1 || !u2 || *u1 != term(i) || *u2 != term(i)) flag("unit law fails at " + name(i));
    }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const auto& p = product(i, j);
        const auto& q = product(j, i);
        if (static_cast<bool>(p) != static_cast<bool>(q)) flag("overflow not symmetric at " + name(i) + "," + name(j));
        if (!p) continue;
        for (const auto& [k, c] : *p) {
          if (c.is_zero()) flag("stored zero coefficient at " + name(i) + "*" + name(j));
          if (degree(k) != degree(i) + degree(j)) flag("degree not additive at " + name(i) + "*" + name(j));
          if (weight_graded && weight(k) != weight(i) + weight(j))
            flag("weight not additive at " + name(i) + "*" + name(j));
        }
        if (q) {
          bool odd = (degree(i) % 2 != 0) && (degree(j) % 2 != 0);
          LinComb flipped = *q;
          if (odd)
            for (auto& [k, c] : flipped) c = -c;
          if (*p != flipped) flag("graded commutativity fails at " + name(i) + "," + name(j));
        }
      }
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
          try {
            LinComb l = mul(mul(term(i), term(j)), term(k));
            LinComb r = mul(term(i), mul(term(j), term(k)));
            if (l != r) flag("associativity fails at (" + name(i) + "," + name(j) + "," + name(k) + ")");
          } catch (const AlgebraOverflow&) {
            // beyond the caps; nothing to compare
          }
        }
    if (aug.size() != static_cast<std::size_t>(d)) {
      flag("augmentation size mismatch");
      return bad;
    }
    if (aug[unit] != one()) flag("augmentation of the unit is not 1");
    for (int i = 0; i < d; ++i)
      if ((degree(i) > 0 || (weight_graded && weight(i) > 0)) && !aug[i].is_zero())
        flag("augmentation does not kill " + name(i));
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        const auto& p = product(i, j);
        K want = aug[i] * aug[j];
        if (!p) {
          if (!want.is_zero()) flag("augmentation inconsistent with overflow at " + name(i) + "," + name(j));
          continue;
        }
        if (augment(*p) != want) flag("augmentation not multiplicative at " + name(i) + "," + name(j));
      }
    return bad;
  }
};

namespace detail {

template <class K>
void finish_flags(StructureConstantAlgebra<K>& a) {
  a.graded = false;
  for (const auto& b : a.basis)
    if (b.degree != 0) a.graded = true;
}

}  // namespace detail

// k[t]/t^m with weight(t^i) = i.
template <class K>
StructureConstantAlgebra<K> truncated_poly(const FieldDesc& f, int m) {
  if (m < 1) throw std::invalid_argument("truncated_poly needs m >= 1");
  StructureConstantAlgebra<K> a;
  a.field = f;
  for (int i = 0; i < m; ++i)
    a.basis.push_back({i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)), 0, i});
  a.unit = 0;
  a.weight_graded = true;
  a.products.assign(m * m, typename StructureConstantAlgebra<K>::LinComb{});
  a.aug.assign(m, a.zero());
  a.aug[0] = a.one();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i + j < m) a.products[i * m + j] = a.term(i + j);
  detail::finish_flags(a);
  return a;
}

// k[t] presented per weight up to the cap; products past the cap are overflow.
template <class K>
StructureConstantAlgebra<K> poly_weight_capped(const FieldDesc& f, int cap) {
  if (cap < 0) throw std::invalid_argument("poly_weight_capped needs cap >= 0");
  int m = cap + 1;
  StructureConstantAlgebra<K> a;
  a.field = f;
  for (int i = 0; i < m; ++i)
    a.basis.push_back({i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)), 0, i});
  a.unit = 0;
  a.weight_graded = true;
  a.products.assign(m * m, std::nullopt);
  a.aug.assign(m, a.zero());
  a.aug[0] = a.one();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (i + j <= cap) a.products[i * m + j] = a.term(i + j);
  detail::finish_flags(a);
  return a;
}

// k[t]/q(t) for q(t) = a_m t^m + ... + a_1 t (no constant term), basis 1..t^{m-1}.
// Weight-graded only when q is a pure power.
template <class K>
StructureConstantAlgebra<K> quotient_by_poly(const FieldDesc& f, const std::vector<K>& coeffs) {
  int m = static_cast<int>(coeffs.size());
  if (m < 1 || coeffs.back().is_zero()) throw std::invalid_argument("leading coefficient must be nonzero");
  bool pure = true;
  for (int j = 0; j + 1 < m; ++j)
    if (!coeffs[j].is_zero()) pure = false;
  if (pure) return truncated_poly<K>(f, m);

  StructureConstantAlgebra<K> a;
  a.field = f;
  for (int i = 0; i < m; ++i) a.basis.push_back({i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i)), 0, 0});
  a.unit = 0;
  a.weight_graded = false;
  a.aug.assign(m, a.zero());
  a.aug[0] = a.one();
  // t^m = -(a_{m-1} t^{m-1} + ... + a_1 t)/a_m, extended upward by multiplying by t
  using LinComb = typename StructureConstantAlgebra<K>::LinComb;
  std::vector<LinComb> rep(2 * m - 1);
  for (int k = 0; k < m; ++k) rep[k] = a.term(k);
  for (int k = m; k <= 2 * (m - 1); ++k) {
    std::map<int, K> acc;
    // t^k = t^{k-m} * t^m
    for (int j = 1; j < m; ++j) {
      if (coeffs[j - 1].is_zero()) continue;
      K c = -(coeffs[j - 1] / coeffs[m - 1]);
      for (const auto& [b, cb] : rep[k - m + j]) {
        auto [it, fresh] = acc.try_emplace(b, a.zero());
        it->second += c * cb;
      }
    }
    rep[k] = StructureConstantAlgebra<K>::normalize(acc);
  }
  a.products.assign(m * m, std::nullopt);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a.products[i * m + j] = rep[i + j];
  detail::finish_flags(a);
  return a;
}

struct GradedGenerator {
  std::string name;
  int degree = 0;
  int weight = 0;
};

// Free graded-commutative algebra on the given generators (odd degrees square
// to zero), with monomials truncated by total degree and weight caps.
// exponents_out receives the exponent vector of each basis monomial.
template <class K>
StructureConstantAlgebra<K> free_graded_commutative(const FieldDesc& f, const std::vector<GradedGenerator>& gens,
                                                    int degree_cap, int weight_cap,
                                                    std::vector<std::vector<int>>* exponents_out = nullptr) {
  if (degree_cap < 0 || weight_cap < 0) throw std::invalid_argument("caps must be nonnegative");
  int r = static_cast<int>(gens.size());
  for (const auto& g : gens)
    if (g.degree % 2 == 0 && g.degree == 0 && g.weight == 0)
      throw std::invalid_argument("even generator with degree 0 and weight 0 cannot be capped");
  std::vector<std::vector<int>> monos;
  std::vector<int> cur(r, 0);
  // enumerate exponent vectors within the caps
  auto total_deg = [&](const std::vector<int>& e) {
    int s = 0;
    for (int i = 0; i < r; ++i) s += e[i] * gens[i].degree;
    return s;
  };
  auto total_wt = [&](const std::vector<int>& e) {
    int s = 0;
    for (int i = 0; i < r; ++i) s += e[i] * gens[i].weight;
    return s;
  };
  std::function<void(int)> rec = [&](int pos) {
    if (total_deg(cur) > degree_cap || total_wt(cur) > weight_cap) return;
    if (pos == r) {
      monos.push_back(cur);
      return;
    }
    int maxe = (gens[pos].degree % 2 != 0) ? 1 : std::max(degree_cap, weight_cap) + 1;
    for (int e = 0; e <= maxe; ++e) {
      cur[pos] = e;
      if (total_deg(cur) > degree_cap || total_wt(cur) > weight_cap) break;
      rec(pos + 1);
    }
    cur[pos] = 0;
  };
  rec(0);
  std::sort(monos.begin(), monos.end(), [&](const std::vector<int>& x, const std::vector<int>& y) {
    int dx = total_deg(x), dy = total_deg(y);
    if (dx != dy) return dx < dy;
    int wx = total_wt(x), wy = total_wt(y);
    if (wx != wy) return wx < wy;
    return x < y;
  });

  StructureConstantAlgebra<K> a;
  a.field = f;
  std::map<std::vector<int>, int> index;
  for (const auto& e : monos) {
    std::string nm;
    for (int i = 0; i < r; ++i) {
      if (e[i] == 0) continue;
      if (!nm.empty()) nm += "*";
      nm += gens[i].name;
      if (e[i] > 1) nm += "^" + std::to_string(e[i]);
    }
    if (nm.empty()) nm = "1";
    index[e] = a.dim();
    a.basis.push_back({nm, total_deg(e), total_wt(e)});
  }
  a.unit = index.at(std::vector<int>(r, 0));
  a.weight_graded = true;
  a.aug.assign(a.dim(), a.zero());
  a.aug[a.unit] = a.one();
  int d = a.dim();
  a.products.assign(static_cast<std::size_t>(d) * d, std::nullopt);
  std::vector<std::vector<int>> expo(d);
  for (const auto& e : monos) expo[index.at(e)] = e;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) {
      std::vector<int> sum(r);
      bool kill = false;
      for (int t = 0; t < r; ++t) {
        sum[t] = expo[i][t] + expo[j][t];
        if (gens[t].degree % 2 != 0 && sum[t] > 1) kill = true;  // odd generator squares to zero
      }
      if (kill) {
        a.products[i * d + j] = typename StructureConstantAlgebra<K>::LinComb{};
        continue;
      }
      auto it = index.find(sum);
      if (it == index.end()) continue;  // exceeds the caps: overflow
      // Koszul sign: each generator power of j moves left past the higher
      // generators of i
      long swaps = 0;
      for (int tj = 0; tj < r; ++tj) {
        if (expo[j][tj] == 0 || gens[tj].degree % 2 == 0) continue;
        for (int ti = tj + 1; ti < r; ++ti)
          if (gens[ti].degree % 2 != 0) swaps += static_cast<long>(expo[j][tj]) * expo[i][ti];
      }
      K c = a.scalar(swaps % 2 == 0 ? 1 : -1);
      a.products[i * d + j] = typename StructureConstantAlgebra<K>::LinComb{{it->second, c}};
    }
  detail::finish_flags(a);
  if (exponents_out) *exponents_out = expo;
  return a;
}

// Tensor product with Koszul-signed multiplication; basis index is
// left-major: (i, j) -> i * dim(b) + j.
template <class K>
StructureConstantAlgebra<K> tensor(const StructureConstantAlgebra<K>& x, const StructureConstantAlgebra<K>& y) {
  if (!(x.field == y.field)) throw std::invalid_argument("tensor factors over different fields");
  StructureConstantAlgebra<K> a;
  a.field = x.field;
  int dx = x.dim(), dy = y.dim();
  a.weight_graded = x.weight_graded && y.weight_graded;
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dy; ++j)
      a.basis.push_back({x.name(i) + "." + y.name(j), x.degree(i) + y.degree(j), x.weight(i) + y.weight(j)});
  a.unit = x.unit * dy + y.unit;
  a.aug.assign(dx * dy, a.zero());
  for (int i = 0; i < dx; ++i)
    for (int j = 0; j < dy; ++j) a.aug[i * dy + j] = x.aug[i] * y.aug[j];
  int d = dx * dy;
  a.products.assign(static_cast<std::size_t>(d) * d, std::nullopt);
  for (int i1 = 0; i1 < dx; ++i1)
    for (int j1 = 0; j1 < dy; ++j1)
      for (int i2 = 0; i2 < dx; ++i2)
        for (int j2 = 0; j2 < dy; ++j2) {
          const auto& px = x.product(i1, i2);
          const auto& py = y.product(j1, j2);
          if (!px || !py) continue;
          bool odd = (y.degree(j1) % 2 != 0) && (x.degree(i2) % 2 != 0);
          std::map<int, K> acc;
          for (const auto& [bi, ci] : *px)
            for (const auto& [bj, cj] : *py) {
              K c = ci * cj;
              if (odd) c = -c;
              auto [it, fresh] = acc.try_emplace(bi * dy + bj, a.zero());
              it->second += c;
            }
          a.products[(i1 * dy + j1) * d + (i2 * dy + j2)] = StructureConstantAlgebra<K>::normalize(acc);
        }
  detail::finish_flags(a);
  return a;
}

// Invertible degree/weight-preserving algebra maps indexed by a finite group.
template <class K>
struct GroupActionOnAlgebra {
  using LinComb = typename StructureConstantAlgebra<K>::LinComb;

  FiniteGroup group;
  std::vector<std::vector<LinComb>> images;  // [g][basis index]

  const LinComb& image(int g, int i) const { return images[g][i]; }

  LinComb apply(int g, const LinComb& v, const StructureConstantAlgebra<K>& a) const {
    std::map<int, K> acc;
    for (const auto& [i, c] : v)
      for (const auto& [k, ck] : images[g][i]) {
        auto [it, fresh] = acc.try_emplace(k, a.zero());
        it->second += c * ck;
      }
    return StructureConstantAlgebra<K>::normalize(acc);
  }

  static GroupActionOnAlgebra trivial(const StructureConstantAlgebra<K>& a, FiniteGroup g) {
    GroupActionOnAlgebra act;
    act.images.assign(g.order, {});
    for (int e = 0; e < g.order; ++e)
      for (int i = 0; i < a.dim(); ++i) act.images[e].push_back(a.term(i));
    act.group = std::move(g);
    return act;
  }

  // Cyclic group generated by one algebra map (images of all basis elements).
  static GroupActionOnAlgebra cyclic_from_generator(const StructureConstantAlgebra<K>& a, int order,
                                                    std::vector<LinComb> gen_images) {
    GroupActionOnAlgebra act;
    act.group = FiniteGroup::cyclic(order);
    act.images.resize(order);
    act.images[0].clear();
    for (int i = 0; i < a.dim(); ++i) act.images[0].push_back(a.term(i));
    if (order > 1) act.images[1] = std::move(gen_images);
    for (int e = 2; e < order; ++e) {
      act.images[e].resize(a.dim());
      for (int i = 0; i < a.dim(); ++i) act.images[e][i] = act.apply(1, act.images[e - 1][i], a);
    }
    return act;
  }

  std::vector<std::string> validate(const StructureConstantAlgebra<K>& a) const {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& m) {
      if (bad.size() < 100) bad.push_back(m);
    };
    for (auto& m : group.validate()) flag("group: " + m);
    if (static_cast<int>(images.size()) != group.order) {
      flag("action has wrong number of maps");
      return bad;
    }
    for (int i = 0; i < a.dim(); ++i)
      if (image(group.identity, i) != a.term(i)) flag("identity element acts nontrivially at " + a.name(i));
    for (int g = 0; g < group.order; ++g) {
      if (image(g, a.unit) != a.term(a.unit)) flag("unit not fixed by " + group.names[g]);
      for (int i = 0; i < a.dim(); ++i)
        for (const auto& [k, c] : image(g, i)) {
          if (a.degree(k) != a.degree(i)) flag("degree not preserved by " + group.names[g] + " at " + a.name(i));
          if (a.weight_graded && a.weight(k) != a.weight(i))
            flag("weight not preserved by " + group.names[g] + " at " + a.name(i));
        }
      for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) {
          try {
            LinComb lhs = a.mul(image(g, i), image(g, j));
            LinComb rhs = apply(g, a.mul(a.term(i), a.term(j)), a);
            if (lhs != rhs) flag(group.names[g] + " is not multiplicative at " + a.name(i) + "," + a.name(j));
          } catch (const AlgebraOverflow&) {
          }
        }
      for (int h = 0; h < group.order; ++h)
        for (int i = 0; i < a.dim(); ++i)
          if (apply(g, image(h, i), a) != image(group.mul(g, h), i)) {
            flag("group law fails at " + group.names[g] + "," + group.names[h]);
            break;
          }
    }
    return bad;
  }
};

// n-fold tensor power with the cyclic rotation action
// (last factor moves to the front, with the Koszul sign).
template <class K>
std::pair<StructureConstantAlgebra<K>, GroupActionOnAlgebra<K>> cyclic_tensor_power(
    const StructureConstantAlgebra<K>& a, int n) {
  if (n < 1) throw std::invalid_argument("tensor power needs n >= 1");
  StructureConstantAlgebra<K> t = a;
  for (int k = 1; k < n; ++k) t = tensor(t, a);
  int d = a.dim();
  // index of (i_1, ..., i_n) is big-endian mixed radix
  auto tuple_of = [&](int idx) {
    std::vector<int> tup(n);
    for (int k = n - 1; k >= 0; --k) {
      tup[k] = idx % d;
      idx /= d;
    }
    return tup;
  };
  auto index_of = [&](const std::vector<int>& tup) {
    int idx = 0;
    for (int k = 0; k < n; ++k) idx = idx * d + tup[k];
    return idx;
  };
  std::vector<typename StructureConstantAlgebra<K>::LinComb> gen;
  gen.resize(t.dim());
  for (int idx = 0; idx < t.dim(); ++idx) {
    std::vector<int> tup = tuple_of(idx);
    int rest = 0;
    for (int k = 0; k + 1 < n; ++k) rest += a.degree(tup[k]);
    bool odd = (a.degree(tup[n - 1]) % 2 != 0) && (rest % 2 != 0);
    std::vector<int> rot(n);
    rot[0] = tup[n - 1];
    for (int k = 0; k + 1 < n; ++k) rot[k + 1] = tup[k];
    gen[idx] = typename StructureConstantAlgebra<K>::LinComb{{index_of(rot), odd ? -t.one() : t.one()}};
  }
  auto act = GroupActionOnAlgebra<K>::cyclic_from_generator(t, n, std::move(gen));
  return {std::move(t), std::move(act)};
}

// The ground field as an algebra (used for reduced coefficients).
template <class K>
StructureConstantAlgebra<K> scalar_algebra(const FieldDesc& f) {
  return truncated_poly<K>(f, 1);
}

}  // namespace loday

#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "loday/loday_complex.hpp"

namespace loday {

// Bigraded dimensions of the twisted-product page: p is the base direction,
// q the internal degree of the declared fiber-homology algebra, kept per weight.
struct E2Page {
  int max_p = 0, max_q = 0, max_w = 0;
  std::map<std::tuple<int, int, int>, long> dims;  // (p, q, w)

  void set(int p, int q, int w, long v) { dims[{p, q, w}] = v; }
  long dim(int p, int q, int w) const {
    auto it = dims.find({p, q, w});
    return it == dims.end() ? 0 : it->second;
  }
  long dim_pq(int p, int q) const {
    long s = 0;
    for (const auto& [k, v] : dims)
      if (std::get<0>(k) == p && std::get<1>(k) == q) s += v;
    return s;
  }
  // total dimension on the antidiagonal p + q = n at one weight
  long antidiagonal(int n, int w) const {
    long s = 0;
    for (int p = 0; p <= n; ++p) s += dim(p, n - p, w);
    return s;
  }
};

// Twisted construction of the fiber-homology algebra over the base, homology
// taken strand by strand in the internal degree.
template <class K>
E2Page e2_page(std::shared_ptr<const SimplicialSet> base, StructureConstantAlgebra<K> fiber,
               GroupActionOnAlgebra<K> action, TwistingFunction tau, int pmax, int qmax, int wmax) {
  LodaySpec<K> spec = LodaySpec<K>::unreduced(std::move(base), std::move(fiber), pmax, wmax);
  spec.with_twist(std::move(tau), std::move(action));
  LodayComplex<K> c(spec);
  E2Page page;
  page.max_p = pmax;
  page.max_q = qmax;
  page.max_w = wmax;
  for (int q = 0; q <= qmax; ++q)
    for (int p = 0; p <= pmax; ++p)
      for (int w = 0; w <= wmax; ++w) page.set(p, q, w, c.block_homology(p, q, w));
  return page;
}

struct CollapseReport {
  bool equal = true;
  std::vector<std::string> mismatches;
};

// Necessary condition for degeneration at the second page: antidiagonal sums
// match the direct homology of the total space, per degree and weight.
inline CollapseReport collapse_check(const E2Page& page, const HomologyTable& direct, int nmax, int wmax) {
  CollapseReport r;
  for (int n = 0; n <= nmax; ++n)
    for (int w = 0; w <= wmax; ++w) {
      long lhs = page.antidiagonal(n, w);
      long rhs = direct.dim(n, w);
      if (lhs != rhs) {
        r.equal = false;
        r.mismatches.push_back("n=" + std::to_string(n) + " w=" + std::to_string(w) + ": page " +
                               std::to_string(lhs) + " vs direct " + std::to_string(rhs));
      }
    }
  return r;
}

// Homology of the twisted Hochschild complex of an exterior algebra on one
// degree-1 generator, the generator scaled by +1 or -1. Table is indexed by
// total degree (simplicial + internal) and weight.
template <class K>
HomologyTable twisted_exterior_homology(const FieldDesc& f, int sign, int dmax) {
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  auto ext = free_graded_commutative<K>(f, {{"ex", 1, 1}}, 1, 1);
  auto base = std::make_shared<SimplicialSet>(sphere(1, dmax + 1));
  typename StructureConstantAlgebra<K>::LinComb ex_image{{ext.basis_index("ex"), scalar_from_long<K>(f, sign)}};
  auto action = GroupActionOnAlgebra<K>::cyclic_from_generator(ext, 2, {ext.term(ext.unit), ex_image});
  auto tau = TwistingFunction::on_edges(*base, FiniteGroup::cyclic(2), 1);
  LodaySpec<K> spec = LodaySpec<K>::unreduced(base, ext, dmax, dmax);
  spec.with_twist(std::move(tau), std::move(action));
  LodayComplex<K> c(spec);
  HomologyTable t;
  for (int d = 0; d <= dmax; ++d)
    for (int w = 0; w <= dmax; ++w) {
      long total = 0;
      for (int q = 0; q <= d; ++q) total += c.block_homology(q, d - q, w);
      t.set(d, w, total);
    }
  return t;
}

}  // namespace loday

#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "loday/algebra.hpp"
#include "loday/homology.hpp"
#include "loday/simplicial.hpp"
#include "loday/sparse.hpp"

namespace loday {

template <class K>
struct LodayTwist {
  TwistingFunction tau;
  GroupActionOnAlgebra<K> action;
};

// One algebra tensor factor per non-basepoint simplex, a coefficient factor at
// the basepoint, face maps multiplying factors. degree_budget is the top total
// degree whose homology is certified; chains run one level above it.
template <class K>
struct LodaySpec {
  std::shared_ptr<const SimplicialSet> space;
  StructureConstantAlgebra<K> algebra;
  StructureConstantAlgebra<K> coeff;
  std::vector<typename StructureConstantAlgebra<K>::LinComb> into_coeff;  // algebra basis -> coeff
  std::optional<LodayTwist<K>> twist;
  int degree_budget = 0;
  int weight_budget = 0;
  bool normalized = true;

  // coefficients = ground field through the augmentation
  static LodaySpec reduced(std::shared_ptr<const SimplicialSet> x, StructureConstantAlgebra<K> a, int d, int w) {
    LodaySpec s;
    s.space = std::move(x);
    s.coeff = scalar_algebra<K>(a.field);
    s.into_coeff.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i)
      if (!a.aug[i].is_zero()) s.into_coeff[i] = {{0, a.aug[i]}};
    s.algebra = std::move(a);
    s.degree_budget = d;
    s.weight_budget = w;
    return s;
  }

  // coefficients = the algebra itself (unpointed surrogate)
  static LodaySpec unreduced(std::shared_ptr<const SimplicialSet> x, StructureConstantAlgebra<K> a, int d, int w) {
    LodaySpec s;
    s.space = std::move(x);
    s.coeff = a;
    s.into_coeff.resize(a.dim());
    for (int i = 0; i < a.dim(); ++i) s.into_coeff[i] = {{i, a.one()}};
    s.algebra = std::move(a);
    s.degree_budget = d;
    s.weight_budget = w;
    return s;
  }

  LodaySpec& with_twist(TwistingFunction tau, GroupActionOnAlgebra<K> action) {
    twist = LodayTwist<K>{std::move(tau), std::move(action)};
    return *this;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& m) {
      if (bad.size() < 50) bad.push_back(m);
    };
    if (!space) return {"no space"};
    if (degree_budget < 0 || weight_budget < 0) flag("negative budget");
    if (degree_budget + 1 > space->truncation) flag("degree budget needs chains above it: raise the truncation");
    if (!(algebra.field == coeff.field)) flag("algebra and coefficients over different fields");
    for (auto& m : algebra.validate()) flag("algebra: " + m);
    for (auto& m : coeff.validate()) flag("coefficients: " + m);
    if (static_cast<int>(into_coeff.size()) != algebra.dim()) {
      flag("structure map size mismatch");
      return bad;
    }
    // structure map must be an algebra map preserving degree and weight
    if (into_coeff[algebra.unit] != coeff.term(coeff.unit)) flag("structure map does not send 1 to 1");
    for (int i = 0; i < algebra.dim(); ++i)
      for (const auto& [k, c] : into_coeff[i]) {
        if (coeff.degree(k) != algebra.degree(i)) flag("structure map shifts degree at " + algebra.name(i));
        if (algebra.weight_graded && coeff.weight_graded && coeff.weight(k) != algebra.weight(i))
          flag("structure map shifts weight at " + algebra.name(i));
      }
    for (int i = 0; i < algebra.dim(); ++i)
      for (int j = 0; j < algebra.dim(); ++j) {
        try {
          auto lhs = coeff.mul(into_coeff[i], into_coeff[j]);
          std::map<int, K> acc;
          const auto& p = algebra.product(i, j);
          if (!p) continue;
          for (const auto& [k, c] : *p)
            for (const auto& [b, cb] : into_coeff[k]) {
              auto [it, fresh] = acc.try_emplace(b, K());
              it->second += c * cb;
            }
          if (lhs != StructureConstantAlgebra<K>::normalize(acc))
            flag("structure map not multiplicative at " + algebra.name(i) + "," + algebra.name(j));
        } catch (const AlgebraOverflow&) {
        }
      }
    if (twist) {
      for (auto& m : twist->tau.validate(*space)) flag("twist: " + m);
      for (auto& m : twist->action.validate(algebra)) flag("action: " + m);
      if (twist->tau.group.table != twist->action.group.table) flag("twist and action group mismatch");
    }
    return bad;
  }
};

// Blocks of the normalized (or full Moore) chain complex, keyed by
// (simplicial level q, internal degree s, weight w). All block construction is
// deterministic: bases are lexicographically sorted label vectors.
template <class K>
class LodayComplex {
 public:
  using LinComb = typename StructureConstantAlgebra<K>::LinComb;
  using Monomial = std::vector<int>;

  explicit LodayComplex(LodaySpec<K> spec) : spec_(std::move(spec)) {
    auto bad = spec_.validate();
    if (!bad.empty()) throw std::invalid_argument("invalid loday spec: " + bad.front());
    const SimplicialSet& x = *spec_.space;
    graded_ = spec_.algebra.graded || spec_.coeff.graded;
    weighted_ = spec_.algebra.weight_graded && spec_.coeff.weight_graded;
    has_free_label_ = false;
    for (int i = 0; i < spec_.algebra.dim(); ++i)
      if (i != spec_.algebra.unit && spec_.algebra.degree(i) == 0 && spec_.algebra.weight(i) == 0)
        has_free_label_ = true;
    for (int i = 0; i < spec_.coeff.dim(); ++i)
      if (i != spec_.coeff.unit && spec_.coeff.degree(i) == 0 && spec_.coeff.weight(i) == 0)
        has_free_label_ = true;
    if (!weighted_ || has_free_label_)
      for (int q = 0; q <= x.truncation; ++q)
        if (x.level_size(q) > 14)
          throw std::invalid_argument("weightless labels on a large space: enumeration would not be bounded");
    outside_mask_.resize(x.truncation + 1);
    for (int q = 1; q <= x.truncation; ++q) {
      if (q > 60) throw std::invalid_argument("level too deep for normalization masks");
      outside_mask_[q].assign(x.level_size(q), 0);
      for (int i = 0; i < q; ++i)
        for (int c = 0; c < x.level_size(q); ++c)
          if (!x.in_degen_image[q][i][c]) outside_mask_[q][c] |= (std::uint64_t{1} << i);
    }
  }

  const LodaySpec<K>& spec() const { return spec_; }

  int label_degree(int q, int pos, int label) const {
    return pos == spec_.space->basepoint[q] ? spec_.coeff.degree(label) : spec_.algebra.degree(label);
  }
  int label_weight(int q, int pos, int label) const {
    return pos == spec_.space->basepoint[q] ? spec_.coeff.weight(label) : spec_.algebra.weight(label);
  }

  bool is_normalized_monomial(int q, const Monomial& m) const {
    if (!spec_.normalized || q == 0) return true;
    const SimplicialSet& x = *spec_.space;
    std::uint64_t covered = 0;
    std::uint64_t full = (std::uint64_t{1} << q) - 1;
    int bp = x.basepoint[q];
    for (int c = 0; c < x.level_size(q); ++c)
      if (c != bp && m[c] != spec_.algebra.unit) covered |= outside_mask_[q][c];
    return covered == full;
  }

  // Normalized monomial basis of the (q, s, w) block, lexicographically sorted.
  const std::vector<Monomial>& basis(int q, int s, int w) {
    return block(q, s, w).monomials;
  }

  long basis_dim(int q, int s, int w) { return static_cast<long>(basis(q, s, w).size()); }

  // Single face map, Koszul-signed, re-expanded with degenerate images dropped.
  // The simplicial sign (-1)^i is not included here.
  std::vector<std::pair<Monomial, K>> face_image(int q, const Monomial& m, int i) const {
    auto raw = face_image_raw(q, m, i);
    std::vector<std::pair<Monomial, K>> out;
    for (auto& [mono, c] : raw) {
      if (spec_.normalized && !is_normalized_monomial(q - 1, mono)) continue;
      out.emplace_back(std::move(mono), std::move(c));
    }
    return out;
  }

  // Alternating sum of the face maps on one monomial.
  std::vector<std::pair<Monomial, K>> boundary_of(int q, const Monomial& m) const {
    std::map<Monomial, K> acc;
    for (int i = 0; i <= q; ++i) {
      K sgn = spec_.algebra.scalar(i % 2 == 0 ? 1 : -1);
      for (auto& [mono, c] : face_image(q, m, i)) {
        auto [it, fresh] = acc.try_emplace(mono, K());
        it->second += sgn * c;
      }
    }
    std::vector<std::pair<Monomial, K>> out;
    for (auto& [mono, c] : acc)
      if (!c.is_zero()) out.emplace_back(mono, c);
    return out;
  }

  // d: (q, s, w) -> (q-1, s, w)
  const SparseMatrix<K>& differential(int q, int s, int w) {
    auto key = std::make_tuple(q, s, w);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = diffs_.find(key);
      if (it != diffs_.end()) return it->second;
    }
    const Block& src = block(q, s, w);
    long rows = q == 0 ? 0 : basis_dim(q - 1, s, w);
    SparseMatrix<K> mat(static_cast<int>(rows), static_cast<int>(src.monomials.size()));
    if (q > 0) {
      const Block& tgt = block(q - 1, s, w);
      for (int j = 0; j < static_cast<int>(src.monomials.size()); ++j) {
        std::map<int, K> col;
        for (int i = 0; i <= q; ++i) {
          K sgn = spec_.algebra.scalar(i % 2 == 0 ? 1 : -1);
          for (auto& [mono, c] : face_image_raw(q, src.monomials[j], i)) {
            int r = tgt.find(mono);
            if (r < 0) {
              if (!spec_.normalized || is_normalized_monomial(q - 1, mono))
                throw std::logic_error("face image escaped the target block at level " + std::to_string(q));
              continue;  // degenerate image: zero in the normalized quotient
            }
            auto [it, fresh] = col.try_emplace(r, K());
            it->second += sgn * c;
          }
        }
        mat.set_column(j, sparse_from_map(col));
      }
    }
    std::lock_guard<std::mutex> lock(mu_);
    return diffs_.emplace(key, std::move(mat)).first->second;
  }

  // dim H_(q,s,w) = dim ker d_q - rank d_{q+1}; verifies d.d = 0 on the way.
  long block_homology(int q, int s, int w) {
    if (q + 1 > spec_.space->truncation)
      throw std::invalid_argument("homology at level " + std::to_string(q) + " needs chains one level higher");
    const SparseMatrix<K>& dq = differential(q, s, w);
    const SparseMatrix<K>& dq1 = differential(q + 1, s, w);
    check_d2(q + 1, s, w, dq, dq1);
    long kernel = dq.cols - rank_of(q, s, w, dq);
    return kernel - rank_of(q + 1, s, w, dq1);
  }

  // Homology by total degree (simplicial level + internal degree) and weight.
  HomologyTable homology(int dmax, int wmax) {
    if (wmax > spec_.weight_budget) throw std::invalid_argument("weight above certified budget");
    HomologyTable t;
    for (int w = 0; w <= wmax; ++w) homology_one_weight(dmax, w, t);
    return t;
  }

  void homology_one_weight(int dmax, int w, HomologyTable& t) {
    if (dmax > spec_.degree_budget) throw std::invalid_argument("degree above certified budget");
    for (int d = 0; d <= dmax; ++d) {
      long total = 0;
      for (int q = 0; q <= d; ++q) {
        int s = d - q;
        if (s > 0 && !graded_) continue;
        total += block_homology(q, s, w);
      }
      t.set(d, w, total);
    }
  }

  // Witness z with dz = target, or nullopt with target certified non-bounding.
  // target must be a cycle in block (q, s, w).
  std::optional<SparseVec<K>> solve_boundary(int q, int s, int w, const SparseVec<K>& target) {
    const SparseMatrix<K>& dq = differential(q, s, w);
    if (!dq.apply(target).empty()) throw std::invalid_argument("solve_boundary target is not a cycle");
    const SparseMatrix<K>& dq1 = differential(q + 1, s, w);
    return sparse_solve(dq1, target);
  }

  // Chain over the block basis from explicit (monomial, coefficient) pairs.
  SparseVec<K> chain(int q, int s, int w, const std::vector<std::pair<Monomial, K>>& terms) {
    const Block& b = block(q, s, w);
    std::map<int, K> acc;
    for (const auto& [mono, c] : terms) {
      int r = b.find(mono);
      if (r < 0) throw std::invalid_argument("monomial not in block basis");
      auto [it, fresh] = acc.try_emplace(r, K());
      it->second += c;
    }
    return sparse_from_map(acc);
  }

 private:
  struct Block {
    std::vector<Monomial> monomials;  // lex sorted
    int find(const Monomial& m) const {
      auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
      if (it == monomials.end() || *it != m) return -1;
      return static_cast<int>(it - monomials.begin());
    }
  };

  const Block& block(int q, int s, int w) {
    auto key = std::make_tuple(q, s, w);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = blocks_.find(key);
      if (it != blocks_.end()) return it->second;
    }
    Block b;
    if (q <= spec_.space->truncation && q >= 0 && !(s > 0 && !graded_) && !(w > 0 && !weighted_)) enumerate(q, s, w, b.monomials);
    std::lock_guard<std::mutex> lock(mu_);
    return blocks_.emplace(key, std::move(b)).first->second;
  }

  void enumerate(int q, int s, int w, std::vector<Monomial>& out) {
    const SimplicialSet& x = *spec_.space;
    int n = x.level_size(q);
    int bp = x.basepoint[q];
    Monomial cur(n, spec_.algebra.unit);
    cur[bp] = spec_.coeff.unit;
    auto emit = [&]() {
      if (is_normalized_monomial(q, cur)) out.push_back(cur);
    };
    // DFS in position order with ascending labels: output is lex sorted
    std::function<void(int, int, int)> rec = [&](int pos, int srem, int wrem) {
      if (srem < 0 || wrem < 0) return;
      if (pos == n) {
        if (srem == 0 && wrem == 0) emit();
        return;
      }
      if (srem == 0 && wrem == 0 && !has_free_label_) {
        // unit tail; cur[pos..] is already all units between sibling branches
        emit();
        return;
      }
      const StructureConstantAlgebra<K>& alg = pos == bp ? spec_.coeff : spec_.algebra;
      for (int lab = 0; lab < alg.dim(); ++lab) {
        cur[pos] = lab;
        rec(pos + 1, srem - alg.degree(lab), wrem - alg.weight(lab));
      }
      cur[pos] = pos == bp ? spec_.coeff.unit : spec_.algebra.unit;
    };
    rec(0, s, w);
    std::sort(out.begin(), out.end());
  }

  // Only cells carrying a non-unit label can change anything downstream of a
  // face map, so all the work here is proportional to the support size.
  std::vector<std::pair<Monomial, K>> face_image_raw(int q, const Monomial& m, int i) const {
    const SimplicialSet& x = *spec_.space;
    const StructureConstantAlgebra<K>& alg = spec_.algebra;
    const StructureConstantAlgebra<K>& cf = spec_.coeff;
    int nsrc = x.level_size(q), ntgt = x.level_size(q - 1);
    int bps = x.basepoint[q], bpt = x.basepoint[q - 1];
    const std::vector<int>& fmap = x.faces[q][i];
    const bool twisted = spec_.twist && i == 0;

    // support cells (non-unit label) with their face targets, in source order
    std::vector<std::pair<int, int>> supp;  // (source cell, target)
    for (int c = 0; c < nsrc; ++c) {
      int unit = c == bps ? cf.unit : alg.unit;
      if (m[c] != unit) supp.emplace_back(c, fmap[c]);
    }
    long swaps = 0;
    if (graded_) {
      // Koszul sign of the permutation grouping factors by their face target;
      // only odd-degree labels contribute, and those sit in the support
      std::vector<int> odd_targets;
      for (const auto& [c, y] : supp)
        if (label_degree(q, c, m[c]) % 2 != 0) odd_targets.push_back(y);
      for (std::size_t a = 0; a < odd_targets.size(); ++a)
        for (std::size_t b = a + 1; b < odd_targets.size(); ++b)
          if (odd_targets[a] > odd_targets[b]) ++swaps;
    }

    Monomial base(ntgt, alg.unit);
    base[bpt] = cf.unit;
    K sign = alg.scalar(swaps % 2 == 0 ? 1 : -1);
    std::vector<std::pair<Monomial, K>> parts;
    parts.emplace_back(std::move(base), std::move(sign));

    // fold the support labels target by target (support is sorted by cell,
    // which is the canonical product order)
    std::size_t a = 0;
    std::vector<std::pair<int, int>> by_target(supp);
    std::stable_sort(by_target.begin(), by_target.end(),
                     [](const auto& l, const auto& r) { return l.second < r.second; });
    while (a < by_target.size()) {
      std::size_t b = a;
      int y = by_target[a].second;
      while (b < by_target.size() && by_target[b].second == y) ++b;
      const StructureConstantAlgebra<K>& tgt_alg = y == bpt ? cf : alg;
      LinComb acc;
      for (std::size_t t = a; t < b; ++t) {
        int c = by_target[t].first;
        LinComb lab;
        if (c == bps) {
          lab = cf.term(m[c]);
        } else {
          lab = alg.term(m[c]);
          if (twisted) lab = spec_.twist->action.apply(spec_.twist->tau.at(q, c), lab, alg);
          if (y == bpt) {
            std::map<int, K> im;
            for (const auto& [bi, cb] : lab)
              for (const auto& [k, ck] : spec_.into_coeff[bi]) {
                auto [it, fresh] = im.try_emplace(k, K());
                it->second += cb * ck;
              }
            lab = StructureConstantAlgebra<K>::normalize(im);
          }
        }
        acc = t == a ? std::move(lab) : tgt_alg.mul(acc, lab);
        if (acc.empty()) return {};
      }
      if (acc.size() == 1) {
        bool is_unit = acc.front().first == tgt_alg.unit;
        for (auto& [mono, coef] : parts) {
          if (!is_unit) mono[y] = acc.front().first;
          coef *= acc.front().second;
        }
      } else {
        std::vector<std::pair<Monomial, K>> next;
        next.reserve(parts.size() * acc.size());
        for (const auto& [mono, coef] : parts)
          for (const auto& [lab2, c2] : acc) {
            Monomial mm = mono;
            if (lab2 != tgt_alg.unit) mm[y] = lab2;
            next.emplace_back(std::move(mm), coef * c2);
          }
        parts = std::move(next);
      }
      a = b;
    }
    return parts;
  }

  void check_d2(int q, int s, int w, const SparseMatrix<K>& dq, const SparseMatrix<K>& dq1) {
    auto key = std::make_tuple(q, s, w);
    {
      std::lock_guard<std::mutex> lock(mu_);
      if (d2_checked_.count(key)) return;
    }
    if (!sparse_mul(dq, dq1).is_zero())
      throw std::logic_error("d.d != 0 at block (q=" + std::to_string(q) + ", s=" + std::to_string(s) +
                             ", w=" + std::to_string(w) + ")");
    std::lock_guard<std::mutex> lock(mu_);
    d2_checked_[key] = true;
  }

  long rank_of(int q, int s, int w, const SparseMatrix<K>& m) {
    auto key = std::make_tuple(q, s, w);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = ranks_.find(key);
      if (it != ranks_.end()) return it->second;
    }
    long r = sparse_rank(m);
    std::lock_guard<std::mutex> lock(mu_);
    return ranks_.emplace(key, r).first->second;
  }

  LodaySpec<K> spec_;
  bool graded_ = false;
  bool weighted_ = true;
  bool has_free_label_ = false;
  std::vector<std::vector<std::uint64_t>> outside_mask_;  // [q][cell]
  std::mutex mu_;
  std::map<std::tuple<int, int, int>, Block> blocks_;
  std::map<std::tuple<int, int, int>, SparseMatrix<K>> diffs_;
  std::map<std::tuple<int, int, int>, long> ranks_;
  std::map<std::tuple<int, int, int>, bool> d2_checked_;
};

// Homology of the full Moore complex equals homology of the normalized
// quotient, blockwise; intended for small specs.
template <class K>
bool full_vs_normalized_agree(const LodaySpec<K>& spec, int dmax, int wmax) {
  LodaySpec<K> a = spec;
  a.normalized = true;
  LodaySpec<K> b = spec;
  b.normalized = false;
  LodayComplex<K> ca(a), cb(b);
  return compare_tables(ca.homology(dmax, wmax), cb.homology(dmax, wmax), dmax, wmax).equal;
}

}  // namespace loday

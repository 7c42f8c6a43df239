#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "loday/field.hpp"

namespace loday {

// Sparse vector: (index, nonzero value) pairs sorted by index.
template <class K>
using SparseVec = std::vector<std::pair<int, K>>;

template <class K>
SparseVec<K> sparse_from_map(const std::map<int, K>& m) {
  SparseVec<K> v;
  v.reserve(m.size());
  for (const auto& [i, x] : m)
    if (!x.is_zero()) v.emplace_back(i, x);
  return v;
}

// dst += c * src, both sorted by index.
template <class K>
void sparse_axpy(SparseVec<K>& dst, const K& c, const SparseVec<K>& src) {
  if (c.is_zero() || src.empty()) return;
  SparseVec<K> out;
  out.reserve(dst.size() + src.size());
  std::size_t i = 0, j = 0;
  while (i < dst.size() || j < src.size()) {
    if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
      out.push_back(dst[i++]);
    } else if (i == dst.size() || src[j].first < dst[i].first) {
      out.emplace_back(src[j].first, c * src[j].second);
      ++j;
    } else {
      K v = dst[i].second + c * src[j].second;
      if (!v.is_zero()) out.emplace_back(dst[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  dst = std::move(out);
}

template <class K>
SparseVec<K> sparse_scale(const SparseVec<K>& v, const K& c) {
  SparseVec<K> out;
  if (c.is_zero()) return out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) out.emplace_back(i, c * x);
  return out;
}

template <class K>
bool sparse_equal(const SparseVec<K>& a, const SparseVec<K>& b) {
  return a == b;
}

// Column-major exact sparse matrix.
template <class K>
struct SparseMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<SparseVec<K>> col;

  SparseMatrix() = default;
  SparseMatrix(int r, int c) : rows(r), cols(c), col(c) {}

  void set_column(int j, SparseVec<K> v) {
    assert(v.empty() || (v.front().first >= 0 && v.back().first < rows));
    col[j] = std::move(v);
  }

  long long nnz() const {
    long long n = 0;
    for (const auto& c : col) n += static_cast<long long>(c.size());
    return n;
  }

  bool is_zero() const {
    for (const auto& c : col)
      if (!c.empty()) return false;
    return true;
  }

  // y = M x, x given over column indices.
  SparseVec<K> apply(const SparseVec<K>& x) const {
    SparseVec<K> y;
    for (const auto& [j, c] : x) sparse_axpy(y, c, col[j]);
    return y;
  }

  // (row, col, value) triples in column-major order.
  std::vector<std::tuple<int, int, K>> triples() const {
    std::vector<std::tuple<int, int, K>> t;
    for (int j = 0; j < cols; ++j)
      for (const auto& [i, v] : col[j]) t.emplace_back(i, j, v);
    return t;
  }
};

// Exact elimination by column reduction. Pivot of a stored column is its
// maximal nonzero row; columns are processed sparsest-first with lowest-index
// tie break, so results are schedule-independent. When `track` is set the
// reducer keeps, for every stored column, its expression in the original
// columns, which is what boundary-witness solving needs.
template <class K>
class ColumnReducer {
 public:
  explicit ColumnReducer(const SparseMatrix<K>& m, bool track = false) : track_(track) {
    std::vector<int> order(m.cols);
    for (int j = 0; j < m.cols; ++j) order[j] = j;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      if (m.col[a].size() != m.col[b].size()) return m.col[a].size() < m.col[b].size();
      return a < b;
    });
    for (int j : order) {
      SparseVec<K> cur = m.col[j];
      SparseVec<K> curv;
      if (track_) curv.emplace_back(j, detach_one(m.col[j]));
      reduce(cur, curv);
      if (!cur.empty()) {
        pivot_slot_[cur.back().first] = static_cast<int>(reduced_.size());
        reduced_.push_back(std::move(cur));
        if (track_) combo_.push_back(std::move(curv));
      }
    }
  }

  int rank() const { return static_cast<int>(reduced_.size()); }

  // Solve M x = b; std::nullopt certifies that no solution exists
  // (b does not reduce to zero against a full column basis of M).
  std::optional<SparseVec<K>> solve(const SparseVec<K>& b) const {
    assert(track_);
    SparseVec<K> cur = b;
    SparseVec<K> x;
    while (!cur.empty()) {
      int r = cur.back().first;
      auto it = pivot_slot_.find(r);
      if (it == pivot_slot_.end()) return std::nullopt;
      int slot = it->second;
      K c = cur.back().second / reduced_[slot].back().second;
      sparse_axpy(cur, -c, reduced_[slot]);
      sparse_axpy(x, c, combo_[slot]);
    }
    return x;
  }

 private:
  // unit scalar of the same field as entries of v (v nonempty when tracking a nonzero column)
  static K detach_one(const SparseVec<K>& v) {
    if (v.empty()) return K();
    return v.front().second / v.front().second;
  }

  void reduce(SparseVec<K>& cur, SparseVec<K>& curv) const {
    while (!cur.empty()) {
      auto it = pivot_slot_.find(cur.back().first);
      if (it == pivot_slot_.end()) return;
      int slot = it->second;
      K c = cur.back().second / reduced_[slot].back().second;
      sparse_axpy(cur, -c, reduced_[slot]);
      if (track_) sparse_axpy(curv, -c, combo_[slot]);
    }
  }

  bool track_;
  std::map<int, int> pivot_slot_;
  std::vector<SparseVec<K>> reduced_;
  std::vector<SparseVec<K>> combo_;
};

template <class K>
SparseMatrix<K> sparse_transpose(const SparseMatrix<K>& m) {
  SparseMatrix<K> out(m.cols, m.rows);
  std::vector<SparseVec<K>> rows(m.rows);
  for (int j = 0; j < m.cols; ++j)
    for (const auto& [i, v] : m.col[j]) rows[i].emplace_back(j, v);
  for (int i = 0; i < m.rows; ++i) out.set_column(i, std::move(rows[i]));
  return out;
}

template <class K>
int sparse_rank(const SparseMatrix<K>& m) {
  // rank is side-symmetric; reduce whichever orientation has fewer columns
  if (m.cols > m.rows) return ColumnReducer<K>(sparse_transpose(m)).rank();
  return ColumnReducer<K>(m).rank();
}

template <class K>
long kernel_dim(const SparseMatrix<K>& m) {
  return m.cols - sparse_rank(m);
}

// z with M z = b, or nullopt if b is not in the column space.
template <class K>
std::optional<SparseVec<K>> sparse_solve(const SparseMatrix<K>& m, const SparseVec<K>& b) {
  return ColumnReducer<K>(m, true).solve(b);
}

// M * N, for d-squared checks; cheap when columns are short.
template <class K>
SparseMatrix<K> sparse_mul(const SparseMatrix<K>& m, const SparseMatrix<K>& n) {
  assert(m.cols == n.rows);
  SparseMatrix<K> out(m.rows, n.cols);
  for (int j = 0; j < n.cols; ++j) out.set_column(j, m.apply(n.col[j]));
  return out;
}

}  // namespace loday

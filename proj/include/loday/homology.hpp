#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace loday {

// Homology dimensions per (total degree, weight). Entries are explicit for
// the certified range, including zeros; anything outside defaults to 0.
struct HomologyTable {
  std::map<std::pair<int, int>, long> dims;

  void set(int d, int w, long v) { dims[{d, w}] = v; }
  void add(int d, int w, long v) { dims[{d, w}] += v; }

  long dim(int d, int w) const {
    auto it = dims.find({d, w});
    return it == dims.end() ? 0 : it->second;
  }

  // dim of the full degree-d piece across the computed weights
  long degree_total(int d) const {
    long s = 0;
    for (const auto& [k, v] : dims)
      if (k.first == d) s += v;
    return s;
  }

  std::vector<long> degree_vector(int dmax) const {
    std::vector<long> v(dmax + 1, 0);
    for (const auto& [k, val] : dims)
      if (k.first <= dmax) v[k.first] += val;
    return v;
  }

  friend bool operator==(const HomologyTable&, const HomologyTable&) = default;
};

struct TableDivergence {
  int degree = 0;
  int weight = 0;
  long lhs = 0;
  long rhs = 0;
};

struct TableCompareReport {
  bool equal = true;
  std::optional<TableDivergence> first;  // smallest (degree, weight) disagreement
  std::vector<TableDivergence> all;
};

// Per-(degree, weight) equality verdict over the overlap of the given ranges.
inline TableCompareReport compare_tables(const HomologyTable& a, const HomologyTable& b, int dmax, int wmax) {
  TableCompareReport r;
  for (int d = 0; d <= dmax; ++d)
    for (int w = 0; w <= wmax; ++w) {
      long x = a.dim(d, w), y = b.dim(d, w);
      if (x != y) {
        r.equal = false;
        if (!r.first) r.first = TableDivergence{d, w, x, y};
        if (r.all.size() < 100) r.all.push_back({d, w, x, y});
      }
    }
  return r;
}

}  // namespace loday

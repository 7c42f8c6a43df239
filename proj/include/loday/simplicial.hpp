#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace loday {

struct FiniteGroup {
  int order = 1;
  int identity = 0;
  std::vector<std::string> names = {"e"};
  std::vector<int> table = {0};  // table[a*order + b] = a*b
  std::vector<int> inverse = {0};

  int mul(int a, int b) const { return table[a * order + b]; }
  int inv(int a) const { return inverse[a]; }

  static FiniteGroup trivial() { return FiniteGroup{}; }

  static FiniteGroup cyclic(int n) {
    if (n < 1) throw std::invalid_argument("cyclic group order must be positive");
    FiniteGroup g;
    g.order = n;
    g.identity = 0;
    g.names.resize(n);
    g.table.resize(n * n);
    g.inverse.resize(n);
    for (int a = 0; a < n; ++a) {
      g.names[a] = a == 0 ? "e" : "g^" + std::to_string(a);
      g.inverse[a] = (n - a) % n;
      for (int b = 0; b < n; ++b) g.table[a * n + b] = (a + b) % n;
    }
    return g;
  }

  std::vector<std::string> validate() const {
    std::vector<std::string> bad;
    for (int a = 0; a < order; ++a) {
      if (mul(identity, a) != a || mul(a, identity) != a) bad.push_back("identity law fails at " + names[a]);
      if (mul(inv(a), a) != identity || mul(a, inv(a)) != identity) bad.push_back("inverse law fails at " + names[a]);
      for (int b = 0; b < order; ++b)
        for (int c = 0; c < order; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c))) {
            bad.push_back("associativity fails at (" + names[a] + "," + names[b] + "," + names[c] + ")");
            if (bad.size() > 20) return bad;
          }
    }
    return bad;
  }
};

// A finite pointed simplicial set presented up to a truncation level:
// explicit simplex lists per level and total face/degeneracy tables.
struct SimplicialSet {
  int truncation = 0;  // N
  std::vector<std::vector<std::string>> names;                 // [q][x]
  std::vector<std::vector<std::vector<int>>> faces;            // [q][i][x], q>=1, 0<=i<=q
  std::vector<std::vector<std::vector<int>>> degens;           // [q][i][x], q<N, 0<=i<=q
  std::vector<std::vector<bool>> degenerate_flag;              // [q][x]
  std::vector<std::vector<std::vector<bool>>> in_degen_image;  // [q][i][x]: x in im(s_i: q-1 -> q), q>=1, 0<=i<q
  std::vector<int> basepoint;                                  // [q]
  // (generator id, ascending degeneracy word) per simplex; empty for derived spaces
  std::vector<std::vector<std::pair<int, std::vector<int>>>> normal_form;

  int level_size(int q) const { return static_cast<int>(names[q].size()); }
  int face(int q, int i, int x) const { return faces[q][i][x]; }
  int degen(int q, int i, int x) const { return degens[q][i][x]; }
  bool is_degenerate(int q, int x) const { return degenerate_flag[q][x]; }
  const std::string& name(int q, int x) const { return names[q][x]; }

  long nondegenerate_count(int q) const {
    long n = 0;
    for (int x = 0; x < level_size(q); ++x)
      if (!degenerate_flag[q][x]) ++n;
    return n;
  }

  // Alternating level-size sum; for a truncation that closes up (all simplices
  // above the top nondegenerate cell forced) this is the Euler characteristic.
  long euler_characteristic() const {
    long e = 0;
    for (int q = 0; q <= truncation; ++q) e += (q % 2 == 0 ? 1 : -1) * nondegenerate_count(q);
    return e;
  }

  std::vector<std::string> validate() const;
};

namespace detail {

inline std::string word_name(const std::string& base, const std::vector<int>& word) {
  if (word.empty()) return base;
  std::string s = base;
  for (auto it = word.rbegin(); it != word.rend(); ++it) s += ".s" + std::to_string(*it);
  return s;
}

// ascending degeneracy word of s_i applied to a simplex with ascending word w
inline std::vector<int> word_after_degeneracy(const std::vector<int>& w, int i) {
  std::vector<int> out;
  out.reserve(w.size() + 1);
  for (int j : w)
    if (j < i) out.push_back(j);
  out.push_back(i);
  for (int j : w)
    if (j >= i) out.push_back(j + 1);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

// Level-by-level constructor: nondegenerate generators plus forced
// degeneracies, deduplicated through admissible degeneracy words.
class SimplicialSetBuilder {
 public:
  explicit SimplicialSetBuilder(int truncation) : n_(truncation) {
    if (truncation < 0) throw std::invalid_argument("negative truncation");
    levels_.resize(n_ + 1);
    keys_.resize(n_ + 1);
  }

  int add_vertex(const std::string& name) {
    if (saturated_to_ >= 0) throw std::logic_error("vertices must be added before saturation");
    return insert(0, Rec{name, next_gen_++, {}, {}});
  }

  void set_basepoint(int vertex) { basepoint0_ = vertex; }

  // Nondegenerate generator of dimension dim; faces are simplex ids at dim-1.
  // Cells must be added in nondecreasing dimension order.
  int add_cell(int dim, const std::string& name, const std::vector<int>& face_ids) {
    if (dim < 1 || dim > n_) throw std::invalid_argument("cell dimension outside truncation");
    if (static_cast<int>(face_ids.size()) != dim + 1) throw std::invalid_argument("cell needs dim+1 faces");
    saturate_to(dim);
    for (int f : face_ids)
      if (f < 0 || f >= static_cast<int>(levels_[dim - 1].size())) throw std::invalid_argument("cell face out of range");
    return insert(dim, Rec{name, next_gen_++, {}, face_ids});
  }

  void saturate_to(int q) {
    for (int lvl = saturated_to_ + 1; lvl <= q; ++lvl) emit_degeneracies(lvl);
    saturated_to_ = std::max(saturated_to_, q);
  }

  int basepoint_at(int q) {
    saturate_to(q);
    int b = basepoint0_ < 0 ? 0 : basepoint0_;
    for (int lvl = 0; lvl < q; ++lvl) b = degen_of_.at({lvl, 0, b});
    return b;
  }

  int degeneracy(int q, int i, int x) {
    saturate_to(q + 1);
    return degen_of_.at({q, i, x});
  }

  SimplicialSet build() {
    if (levels_[0].empty()) throw std::logic_error("simplicial set needs at least one vertex");
    saturate_to(n_);
    SimplicialSet s;
    s.truncation = n_;
    s.names.resize(n_ + 1);
    s.faces.resize(n_ + 1);
    s.degens.resize(n_ + 1);
    s.degenerate_flag.resize(n_ + 1);
    s.in_degen_image.resize(n_ + 1);
    s.normal_form.resize(n_ + 1);
    s.basepoint.resize(n_ + 1);
    for (int q = 0; q <= n_; ++q) {
      int sz = static_cast<int>(levels_[q].size());
      for (const Rec& r : levels_[q]) {
        s.names[q].push_back(detail::word_name(r.name, r.word));
        s.degenerate_flag[q].push_back(!r.word.empty());
        s.normal_form[q].emplace_back(r.gen, r.word);
      }
      if (q >= 1) {
        s.faces[q].assign(q + 1, std::vector<int>(sz));
        for (int x = 0; x < sz; ++x)
          for (int i = 0; i <= q; ++i) s.faces[q][i][x] = levels_[q][x].face[i];
        s.in_degen_image[q].assign(q, std::vector<bool>(sz, false));
        for (int i = 0; i < q; ++i)
          for (int y = 0; y < static_cast<int>(levels_[q - 1].size()); ++y)
            s.in_degen_image[q][i][degen_of_.at({q - 1, i, y})] = true;
      }
      if (q < n_) {
        s.degens[q].assign(q + 1, std::vector<int>(static_cast<int>(levels_[q].size())));
        for (int x = 0; x < static_cast<int>(levels_[q].size()); ++x)
          for (int i = 0; i <= q; ++i) s.degens[q][i][x] = degen_of_.at({q, i, x});
      }
    }
    s.basepoint[0] = basepoint0_ < 0 ? 0 : basepoint0_;
    for (int q = 0; q < n_; ++q) s.basepoint[q + 1] = s.degens[q][0][s.basepoint[q]];
    return s;
  }

 private:
  struct Rec {
    std::string name;        // generator base name
    int gen;                 // generator id
    std::vector<int> word;   // ascending admissible degeneracy word
    std::vector<int> face;   // faces at dim-1 (filled for all levels >= 1)
  };

  int insert(int q, Rec r) {
    auto key = std::make_pair(r.gen, r.word);
    auto [it, fresh] = keys_[q].try_emplace(key, static_cast<int>(levels_[q].size()));
    if (fresh) levels_[q].push_back(std::move(r));
    return it->second;
  }

  // generate level lvl's degenerate simplices from level lvl-1 (i descending,
  // source ascending; this puts the degenerate basepoint first)
  void emit_degeneracies(int lvl) {
    if (lvl == 0) return;
    int q = lvl - 1;
    for (int i = q; i >= 0; --i) {
      for (int x = 0; x < static_cast<int>(levels_[q].size()); ++x) {
        const Rec src = levels_[q][x];
        Rec r;
        r.gen = src.gen;
        r.name = src.name;
        r.word = detail::word_after_degeneracy(src.word, i);
        auto key = std::make_pair(r.gen, r.word);
        auto it = keys_[lvl].find(key);
        if (it == keys_[lvl].end()) {
          r.face.resize(lvl + 1);
          for (int j = 0; j <= lvl; ++j) {
            if (j == i || j == i + 1) {
              r.face[j] = x;
            } else if (j < i) {
              r.face[j] = degen_of_.at({q - 1, i - 1, src.face[j]});
            } else {
              r.face[j] = degen_of_.at({q - 1, i, src.face[j - 1]});
            }
          }
          int id = static_cast<int>(levels_[lvl].size());
          keys_[lvl].emplace(key, id);
          levels_[lvl].push_back(std::move(r));
          degen_of_[{q, i, x}] = id;
        } else {
          degen_of_[{q, i, x}] = it->second;
        }
      }
    }
  }

  int n_;
  int next_gen_ = 0;
  int basepoint0_ = -1;
  int saturated_to_ = -1;
  std::vector<std::vector<Rec>> levels_;
  std::vector<std::map<std::pair<int, std::vector<int>>, int>> keys_;
  std::map<std::tuple<int, int, int>, int> degen_of_;  // (q, i, x) -> id of s_i x
};

inline std::vector<std::string> SimplicialSet::validate() const {
  std::vector<std::string> bad;
  auto flag = [&](const std::string& msg) {
    if (bad.size() < 200) bad.push_back(msg);
  };
  int n = truncation;
  // table shape and range
  for (int q = 1; q <= n; ++q) {
    if (static_cast<int>(faces[q].size()) != q + 1) flag("level " + std::to_string(q) + ": wrong face arity");
    for (int i = 0; i <= q; ++i)
      for (int x = 0; x < level_size(q); ++x)
        if (face(q, i, x) < 0 || face(q, i, x) >= level_size(q - 1))
          flag("face d" + std::to_string(i) + " out of range at " + name(q, x));
  }
  for (int q = 0; q < n; ++q)
    for (int i = 0; i <= q; ++i)
      for (int x = 0; x < level_size(q); ++x)
        if (degen(q, i, x) < 0 || degen(q, i, x) >= level_size(q + 1))
          flag("degeneracy s" + std::to_string(i) + " out of range at " + name(q, x));
  if (!bad.empty()) return bad;  // structural damage; identity checks would index badly

  // d_i d_j = d_{j-1} d_i for i < j
  for (int q = 2; q <= n; ++q)
    for (int x = 0; x < level_size(q); ++x)
      for (int j = 1; j <= q; ++j)
        for (int i = 0; i < j; ++i)
          if (face(q - 1, i, face(q, j, x)) != face(q - 1, j - 1, face(q, i, x)))
            flag("d" + std::to_string(i) + " d" + std::to_string(j) + " identity fails at " + name(q, x));
  // s_i s_j = s_{j+1} s_i for i <= j
  for (int q = 0; q + 2 <= n; ++q)
    for (int x = 0; x < level_size(q); ++x)
      for (int j = 0; j <= q; ++j)
        for (int i = 0; i <= j; ++i)
          if (degen(q + 1, i, degen(q, j, x)) != degen(q + 1, j + 1, degen(q, i, x)))
            flag("s" + std::to_string(i) + " s" + std::to_string(j) + " identity fails at " + name(q, x));
  // d_i s_j mixed identities
  for (int q = 0; q + 1 <= n; ++q)
    for (int x = 0; x < level_size(q); ++x)
      for (int j = 0; j <= q; ++j) {
        int sx = degen(q, j, x);
        for (int i = 0; i <= q + 1; ++i) {
          int got = face(q + 1, i, sx);
          int want;
          if (i == j || i == j + 1) {
            want = x;
          } else if (i < j) {
            want = degen(q - 1, j - 1, face(q, i, x));
          } else {
            want = degen(q - 1, j, face(q, i - 1, x));
          }
          if (got != want)
            flag("d" + std::to_string(i) + " s" + std::to_string(j) + " identity fails at " + name(q, x));
        }
      }
  // degeneracies injective; degenerate flag matches membership in some image
  for (int q = 1; q <= n; ++q) {
    std::vector<bool> hit(level_size(q), false);
    for (int i = 0; i < q; ++i) {
      std::vector<int> pre(level_size(q), -1);
      for (int y = 0; y < level_size(q - 1); ++y) {
        int z = degen(q - 1, i, y);
        if (pre[z] != -1) flag("s" + std::to_string(i) + " not injective into level " + std::to_string(q));
        pre[z] = y;
        hit[z] = true;
        if (!in_degen_image[q][i][z]) flag("in_degen_image understates s" + std::to_string(i) + " at " + name(q, z));
      }
      for (int z = 0; z < level_size(q); ++z)
        if (in_degen_image[q][i][z] && pre[z] == -1)
          flag("in_degen_image overstates s" + std::to_string(i) + " at " + name(q, z));
    }
    for (int z = 0; z < level_size(q); ++z)
      if (degenerate_flag[q][z] != hit[z]) flag("degenerate flag wrong at " + name(q, z));
  }
  // basepoint family closed under structure maps
  for (int q = 1; q <= n; ++q)
    for (int i = 0; i <= q; ++i)
      if (face(q, i, basepoint[q]) != basepoint[q - 1]) flag("basepoint not closed under d" + std::to_string(i));
  for (int q = 0; q < n; ++q)
    for (int i = 0; i <= q; ++i)
      if (degen(q, i, basepoint[q]) != basepoint[q + 1]) flag("basepoint not closed under s" + std::to_string(i));
  return bad;
}

// ---- standard spaces ----

inline SimplicialSet point_space(int truncation) {
  SimplicialSetBuilder b(truncation);
  b.set_basepoint(b.add_vertex("pt"));
  return b.build();
}

// Minimal pointed n-sphere: one vertex, one nondegenerate n-cell.
inline SimplicialSet sphere(int n, int truncation) {
  if (n < 1) throw std::invalid_argument("sphere dimension must be positive");
  if (truncation < n) throw std::invalid_argument("sphere truncation below cell dimension");
  SimplicialSetBuilder b(truncation);
  int v = b.add_vertex("v");
  b.set_basepoint(v);
  b.saturate_to(n - 1);
  b.add_cell(n, "c", std::vector<int>(n + 1, b.basepoint_at(n - 1)));
  return b.build();
}

// Circle with two vertices and two edges. The default orientation chains the
// edges head-to-tail (a0: v0 -> v1, a1: v1 -> v0); with parallel=true both
// edges run v1 -> v0, which makes the edge swap a simplicial automorphism.
inline SimplicialSet circle_two_cells(int truncation, bool parallel = false) {
  if (truncation < 1) throw std::invalid_argument("two-cell circle needs truncation >= 1");
  SimplicialSetBuilder b(truncation);
  int v0 = b.add_vertex("v0");
  int v1 = b.add_vertex("v1");
  b.set_basepoint(v0);
  if (parallel) {
    b.add_cell(1, "a0", {v0, v1});
    b.add_cell(1, "a1", {v0, v1});
  } else {
    b.add_cell(1, "a0", {v1, v0});
    b.add_cell(1, "a1", {v0, v1});
  }
  return b.build();
}

// Constant simplicial set on m points (all structure maps identity).
inline SimplicialSet constant_set(int m, const std::vector<std::string>& names, int basepoint, int truncation) {
  if (m < 1) throw std::invalid_argument("constant set needs at least one point");
  SimplicialSet s;
  s.truncation = truncation;
  s.names.resize(truncation + 1);
  s.faces.resize(truncation + 1);
  s.degens.resize(truncation + 1);
  s.degenerate_flag.resize(truncation + 1);
  s.in_degen_image.resize(truncation + 1);
  s.normal_form.resize(truncation + 1);
  s.basepoint.assign(truncation + 1, basepoint);
  std::vector<int> ident(m);
  for (int x = 0; x < m; ++x) ident[x] = x;
  for (int q = 0; q <= truncation; ++q) {
    for (int x = 0; x < m; ++x) s.names[q].push_back(names.empty() ? "p" + std::to_string(x) : names[x]);
    s.degenerate_flag[q].assign(m, q > 0);
    if (q >= 1) {
      s.faces[q].assign(q + 1, ident);
      s.in_degen_image[q].assign(q, std::vector<bool>(m, true));
    }
    if (q < truncation) s.degens[q].assign(q + 1, ident);
  }
  return s;
}

inline SimplicialSet product(const SimplicialSet& a, const SimplicialSet& b) {
  if (a.truncation != b.truncation) throw std::invalid_argument("product factors need equal truncation");
  int n = a.truncation;
  SimplicialSet s;
  s.truncation = n;
  s.names.resize(n + 1);
  s.faces.resize(n + 1);
  s.degens.resize(n + 1);
  s.degenerate_flag.resize(n + 1);
  s.in_degen_image.resize(n + 1);
  s.normal_form.resize(n + 1);
  s.basepoint.resize(n + 1);
  auto id = [&](int q, int x, int y) { return x * b.level_size(q) + y; };
  for (int q = 0; q <= n; ++q) {
    int sz = a.level_size(q) * b.level_size(q);
    s.names[q].resize(sz);
    s.degenerate_flag[q].assign(sz, false);
    for (int x = 0; x < a.level_size(q); ++x)
      for (int y = 0; y < b.level_size(q); ++y) s.names[q][id(q, x, y)] = "(" + a.name(q, x) + "," + b.name(q, y) + ")";
    if (q >= 1) {
      s.faces[q].assign(q + 1, std::vector<int>(sz));
      s.in_degen_image[q].assign(q, std::vector<bool>(sz, false));
      for (int x = 0; x < a.level_size(q); ++x)
        for (int y = 0; y < b.level_size(q); ++y) {
          int z = id(q, x, y);
          for (int i = 0; i <= q; ++i) s.faces[q][i][z] = id(q - 1, a.face(q, i, x), b.face(q, i, y));
          for (int i = 0; i < q; ++i) {
            bool im = a.in_degen_image[q][i][x] && b.in_degen_image[q][i][y];
            s.in_degen_image[q][i][z] = im;
            if (im) s.degenerate_flag[q][z] = true;
          }
        }
    }
    if (q < n) {
      s.degens[q].assign(q + 1, std::vector<int>(sz));
      for (int x = 0; x < a.level_size(q); ++x)
        for (int y = 0; y < b.level_size(q); ++y)
          for (int i = 0; i <= q; ++i) s.degens[q][i][id(q, x, y)] = id(q + 1, a.degen(q, i, x), b.degen(q, i, y));
    }
    s.basepoint[q] = id(q, a.basepoint[q], b.basepoint[q]);
  }
  return s;
}

inline SimplicialSet wedge(const SimplicialSet& a, const SimplicialSet& b) {
  if (a.truncation != b.truncation) throw std::invalid_argument("wedge parts need equal truncation");
  int n = a.truncation;
  SimplicialSet s;
  s.truncation = n;
  s.names.resize(n + 1);
  s.faces.resize(n + 1);
  s.degens.resize(n + 1);
  s.degenerate_flag.resize(n + 1);
  s.in_degen_image.resize(n + 1);
  s.normal_form.resize(n + 1);
  s.basepoint.assign(n + 1, 0);
  // index 0 is the shared basepoint, then a's non-basepoint simplices, then b's
  std::vector<std::vector<int>> ma(n + 1), mb(n + 1);
  for (int q = 0; q <= n; ++q) {
    ma[q].assign(a.level_size(q), 0);
    mb[q].assign(b.level_size(q), 0);
    s.names[q].push_back("*" + std::to_string(q));
    s.degenerate_flag[q].push_back(q > 0);
    for (int x = 0; x < a.level_size(q); ++x)
      if (x != a.basepoint[q]) {
        ma[q][x] = static_cast<int>(s.names[q].size());
        s.names[q].push_back("L:" + a.name(q, x));
        s.degenerate_flag[q].push_back(a.degenerate_flag[q][x]);
      }
    for (int y = 0; y < b.level_size(q); ++y)
      if (y != b.basepoint[q]) {
        mb[q][y] = static_cast<int>(s.names[q].size());
        s.names[q].push_back("R:" + b.name(q, y));
        s.degenerate_flag[q].push_back(b.degenerate_flag[q][y]);
      }
  }
  for (int q = 0; q <= n; ++q) {
    int sz = static_cast<int>(s.names[q].size());
    if (q >= 1) {
      s.faces[q].assign(q + 1, std::vector<int>(sz, 0));
      s.in_degen_image[q].assign(q, std::vector<bool>(sz, false));
      for (int i = 0; i < q; ++i) s.in_degen_image[q][i][0] = true;
      for (int x = 0; x < a.level_size(q); ++x)
        if (x != a.basepoint[q]) {
          for (int i = 0; i <= q; ++i) s.faces[q][i][ma[q][x]] = ma[q - 1][a.face(q, i, x)];
          for (int i = 0; i < q; ++i) s.in_degen_image[q][i][ma[q][x]] = a.in_degen_image[q][i][x];
        }
      for (int y = 0; y < b.level_size(q); ++y)
        if (y != b.basepoint[q]) {
          for (int i = 0; i <= q; ++i) s.faces[q][i][mb[q][y]] = mb[q - 1][b.face(q, i, y)];
          for (int i = 0; i < q; ++i) s.in_degen_image[q][i][mb[q][y]] = b.in_degen_image[q][i][y];
        }
    }
    if (q < n) {
      s.degens[q].assign(q + 1, std::vector<int>(sz, 0));
      for (int i = 0; i <= q; ++i) s.degens[q][i][0] = 0;
      for (int x = 0; x < a.level_size(q); ++x)
        if (x != a.basepoint[q])
          for (int i = 0; i <= q; ++i) s.degens[q][i][ma[q][x]] = ma[q + 1][a.degen(q, i, x)];
      for (int y = 0; y < b.level_size(q); ++y)
        if (y != b.basepoint[q])
          for (int i = 0; i <= q; ++i) s.degens[q][i][mb[q][y]] = mb[q + 1][b.degen(q, i, y)];
    }
  }
  return s;
}

inline SimplicialSet torus(int n, int truncation) {
  SimplicialSet t = sphere(1, truncation);
  for (int k = 1; k < n; ++k) t = product(t, sphere(1, truncation));
  return t;
}

// One sphere of each dimension k = 1..n with binomial(n, k) copies: the
// wedge of the cells of the n-torus.
inline SimplicialSet torus_cell_bouquet(int n, int truncation) {
  std::vector<std::vector<long>> choose(n + 1, std::vector<long>(n + 1, 0));
  for (int i = 0; i <= n; ++i) {
    choose[i][0] = 1;
    for (int j = 1; j <= i; ++j) choose[i][j] = choose[i - 1][j - 1] + (j <= i - 1 ? choose[i - 1][j] : 0);
  }
  SimplicialSet w = point_space(truncation);
  bool first = true;
  for (int k = 1; k <= n; ++k)
    for (long c = 0; c < choose[n][k]; ++c) {
      if (first) {
        w = sphere(k, truncation);
        first = false;
      } else {
        w = wedge(w, sphere(k, truncation));
      }
    }
  return w;
}

// ---- group actions and twisted cartesian products ----

struct SimplicialAction {
  FiniteGroup group;
  std::vector<std::vector<std::vector<int>>> perm;  // [g][q][x]

  int apply(int g, int q, int x) const { return perm[g][q][x]; }

  static SimplicialAction trivial(const SimplicialSet& f, FiniteGroup g) {
    SimplicialAction a;
    a.group = std::move(g);
    a.perm.resize(a.group.order);
    for (int e = 0; e < a.group.order; ++e) {
      a.perm[e].resize(f.truncation + 1);
      for (int q = 0; q <= f.truncation; ++q) {
        a.perm[e][q].resize(f.level_size(q));
        for (int x = 0; x < f.level_size(q); ++x) a.perm[e][q][x] = x;
      }
    }
    return a;
  }

  // Left translation of a group on itself viewed as a constant simplicial set.
  static SimplicialAction left_translation(const SimplicialSet& f, const FiniteGroup& g) {
    SimplicialAction a = trivial(f, g);
    for (int e = 0; e < g.order; ++e)
      for (int q = 0; q <= f.truncation; ++q)
        for (int x = 0; x < g.order; ++x) a.perm[e][q][x] = g.mul(e, x);
    return a;
  }

  // Extend a permutation of the nondegenerate generators to all levels via
  // normal forms (available on directly built spaces only).
  static SimplicialAction from_generator_permutation(const SimplicialSet& f, FiniteGroup g,
                                                     const std::vector<std::vector<int>>& gen_perm) {
    SimplicialAction a;
    a.group = std::move(g);
    a.perm.resize(a.group.order);
    std::vector<std::map<std::pair<int, std::vector<int>>, int>> lookup(f.truncation + 1);
    for (int q = 0; q <= f.truncation; ++q) {
      if (static_cast<int>(f.normal_form[q].size()) != f.level_size(q))
        throw std::invalid_argument("space lacks normal forms; build it directly");
      for (int x = 0; x < f.level_size(q); ++x) lookup[q][f.normal_form[q][x]] = x;
    }
    for (int e = 0; e < a.group.order; ++e) {
      a.perm[e].resize(f.truncation + 1);
      for (int q = 0; q <= f.truncation; ++q) {
        a.perm[e][q].resize(f.level_size(q));
        for (int x = 0; x < f.level_size(q); ++x) {
          auto nf = f.normal_form[q][x];
          nf.first = gen_perm[e][nf.first];
          a.perm[e][q][x] = lookup[q].at(nf);
        }
      }
    }
    return a;
  }

  std::vector<std::string> validate(const SimplicialSet& f) const {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& m) {
      if (bad.size() < 100) bad.push_back(m);
    };
    for (auto& m : group.validate()) flag("group: " + m);
    for (int q = 0; q <= f.truncation; ++q) {
      for (int x = 0; x < f.level_size(q); ++x)
        if (apply(group.identity, q, x) != x) flag("identity does not act trivially at " + f.name(q, x));
      for (int g = 0; g < group.order; ++g)
        for (int h = 0; h < group.order; ++h)
          for (int x = 0; x < f.level_size(q); ++x)
            if (apply(g, q, apply(h, q, x)) != apply(group.mul(g, h), q, x)) {
              flag("group law fails on level " + std::to_string(q));
              break;
            }
    }
    for (int g = 0; g < group.order; ++g) {
      for (int q = 1; q <= f.truncation; ++q)
        for (int i = 0; i <= q; ++i)
          for (int x = 0; x < f.level_size(q); ++x)
            if (apply(g, q - 1, f.face(q, i, x)) != f.face(q, i, apply(g, q, x)))
              flag("action does not commute with d" + std::to_string(i) + " at " + f.name(q, x));
      for (int q = 0; q < f.truncation; ++q)
        for (int i = 0; i <= q; ++i)
          for (int x = 0; x < f.level_size(q); ++x)
            if (apply(g, q + 1, f.degen(q, i, x)) != f.degen(q, i, apply(g, q, x)))
              flag("action does not commute with s" + std::to_string(i) + " at " + f.name(q, x));
    }
    return bad;
  }
};

// Group elements attached to positive-dimensional simplices of a base,
// compatible with the simplicial structure in the twisted-product sense.
struct TwistingFunction {
  FiniteGroup group;
  std::vector<std::vector<int>> tau;  // [q][b], q >= 1

  int at(int q, int b) const { return tau[q][b]; }

  static TwistingFunction trivial(const SimplicialSet& base, FiniteGroup g) {
    TwistingFunction t;
    t.tau.resize(base.truncation + 1);
    for (int q = 1; q <= base.truncation; ++q) t.tau[q].assign(base.level_size(q), g.identity);
    t.group = std::move(g);
    return t;
  }

  // Assign on level 1 and push up through the face recursion.
  static TwistingFunction derive(const SimplicialSet& base, FiniteGroup g, const std::vector<int>& level1) {
    if (static_cast<int>(level1.size()) != base.level_size(1)) throw std::invalid_argument("level-1 assignment size mismatch");
    TwistingFunction t;
    t.tau.resize(base.truncation + 1);
    t.tau[1] = level1;
    for (int q = 2; q <= base.truncation; ++q) {
      t.tau[q].resize(base.level_size(q));
      for (int b = 0; b < base.level_size(q); ++b)
        t.tau[q][b] = g.mul(g.inv(t.tau[q - 1][base.face(q, 0, b)]), t.tau[q - 1][base.face(q, 1, b)]);
    }
    t.group = std::move(g);
    return t;
  }

  // g on every nondegenerate edge, identity on degenerate ones.
  static TwistingFunction on_edges(const SimplicialSet& base, FiniteGroup grp, int g) {
    std::vector<int> level1(base.level_size(1));
    for (int b = 0; b < base.level_size(1); ++b) level1[b] = base.is_degenerate(1, b) ? grp.identity : g;
    return derive(base, std::move(grp), level1);
  }

  std::vector<std::string> validate(const SimplicialSet& base) const {
    std::vector<std::string> bad;
    auto flag = [&](const std::string& m) {
      if (bad.size() < 100) bad.push_back(m);
    };
    const FiniteGroup& g = group;
    for (int q = 2; q <= base.truncation; ++q)
      for (int b = 0; b < base.level_size(q); ++b) {
        if (at(q, b) != g.mul(g.inv(at(q - 1, base.face(q, 0, b))), at(q - 1, base.face(q, 1, b))))
          flag("twist composition rule fails at " + base.name(q, b));
        for (int i = 2; i <= q; ++i)
          if (at(q - 1, base.face(q, i, b)) != at(q, b))
            flag("twist face rule (i>=2) fails at " + base.name(q, b) + " d" + std::to_string(i));
      }
    for (int q = 1; q < base.truncation; ++q)
      for (int b = 0; b < base.level_size(q); ++b) {
        if (at(q + 1, base.degen(q, 0, b)) != g.identity) flag("twist s0 rule fails at " + base.name(q, b));
        for (int i = 1; i <= q; ++i)
          if (at(q + 1, base.degen(q, i, b)) != at(q, b))
            flag("twist degeneracy rule fails at " + base.name(q, b) + " s" + std::to_string(i));
      }
    return bad;
  }
};

// Twisted cartesian product E = F x_tau B: componentwise structure maps
// except d_0, which routes the fiber face through the twisting group element.
inline SimplicialSet twisted_cartesian_product(const SimplicialSet& fiber, const SimplicialSet& base,
                                               const TwistingFunction& tw, const SimplicialAction& act) {
  if (fiber.truncation != base.truncation) throw std::invalid_argument("tcp factors need equal truncation");
  {
    auto bad = tw.validate(base);
    if (!bad.empty()) throw std::invalid_argument("invalid twisting function: " + bad.front());
    bad = act.validate(fiber);
    if (!bad.empty()) throw std::invalid_argument("action not simplicial: " + bad.front());
  }
  int n = base.truncation;
  SimplicialSet s;
  s.truncation = n;
  s.names.resize(n + 1);
  s.faces.resize(n + 1);
  s.degens.resize(n + 1);
  s.degenerate_flag.resize(n + 1);
  s.in_degen_image.resize(n + 1);
  s.normal_form.resize(n + 1);
  s.basepoint.resize(n + 1);
  auto id = [&](int q, int f, int b) { return b * fiber.level_size(q) + f; };
  for (int q = 0; q <= n; ++q) {
    int sz = fiber.level_size(q) * base.level_size(q);
    s.names[q].resize(sz);
    s.degenerate_flag[q].assign(sz, false);
    for (int b = 0; b < base.level_size(q); ++b)
      for (int f = 0; f < fiber.level_size(q); ++f)
        s.names[q][id(q, f, b)] = "(" + fiber.name(q, f) + ";" + base.name(q, b) + ")";
    if (q >= 1) {
      s.faces[q].assign(q + 1, std::vector<int>(sz));
      s.in_degen_image[q].assign(q, std::vector<bool>(sz, false));
      for (int b = 0; b < base.level_size(q); ++b)
        for (int f = 0; f < fiber.level_size(q); ++f) {
          int z = id(q, f, b);
          int tf = act.apply(tw.at(q, b), q - 1, fiber.face(q, 0, f));
          s.faces[q][0][z] = id(q - 1, tf, base.face(q, 0, b));
          for (int i = 1; i <= q; ++i) s.faces[q][i][z] = id(q - 1, fiber.face(q, i, f), base.face(q, i, b));
          for (int i = 0; i < q; ++i) {
            bool im = fiber.in_degen_image[q][i][f] && base.in_degen_image[q][i][b];
            s.in_degen_image[q][i][z] = im;
            if (im) s.degenerate_flag[q][z] = true;
          }
        }
    }
    if (q < n) {
      s.degens[q].assign(q + 1, std::vector<int>(sz));
      for (int b = 0; b < base.level_size(q); ++b)
        for (int f = 0; f < fiber.level_size(q); ++f)
          for (int i = 0; i <= q; ++i) s.degens[q][i][id(q, f, b)] = id(q + 1, fiber.degen(q, i, f), base.degen(q, i, b));
    }
    s.basepoint[q] = id(q, fiber.basepoint[q], base.basepoint[q]);
  }
  return s;
}

// Connected n-fold cover of the circle as a twisted product: constant fiber
// on the cyclic group, twist sending the nondegenerate edge to the generator.
inline SimplicialSet circle_cover(int n, int truncation) {
  FiniteGroup g = FiniteGroup::cyclic(n);
  SimplicialSet fiber = constant_set(n, g.names, g.identity, truncation);
  SimplicialSet base = sphere(1, truncation);
  TwistingFunction tw = TwistingFunction::on_edges(base, g, n > 1 ? 1 : 0);
  SimplicialAction act = SimplicialAction::left_translation(fiber, g);
  return twisted_cartesian_product(fiber, base, tw, act);
}

// Klein bottle as a twisted product: two-edge circle fiber (parallel
// orientation), minimal circle base, flip exchanging the two edges.
inline SimplicialSet klein_bottle(int truncation) {
  FiniteGroup g = FiniteGroup::cyclic(2);
  SimplicialSet fiber = circle_two_cells(truncation, /*parallel=*/true);
  SimplicialSet base = sphere(1, truncation);
  TwistingFunction tw = TwistingFunction::on_edges(base, g, 1);
  // generators: v0, v1, a0, a1 -> flip keeps the vertices, swaps the edges
  std::vector<std::vector<int>> gen_perm = {{0, 1, 2, 3}, {0, 1, 3, 2}};
  SimplicialAction act = SimplicialAction::from_generator_permutation(fiber, g, gen_perm);
  return twisted_cartesian_product(fiber, base, tw, act);
}

}  // namespace loday

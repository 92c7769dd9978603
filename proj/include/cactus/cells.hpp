#pragma once

#include "cactus/enumerate.hpp"
#include "cactus/groups.hpp"

#include <unordered_map>

namespace cactus {

enum class Cover { base, double_cover };

inline Variant cover_variant(Cover c) { return c == Cover::base ? Variant::stable : Variant::double_cover; }

struct Cell {
  Tree tree;
  int dim = 0;
  Composition composition;
  int internal_edges = 0;
  std::string key;  // canonical serialization
};

inline Cell make_cell(Tree t) {
  Cell c;
  c.composition = cactus::composition(t);
  c.internal_edges = internal_edge_count(t);
  c.dim = dual_dimension(t);
  c.key = serialize(t);
  c.tree = std::move(t);
  return c;
}

struct CellComplex {
  int n = 0, a = 0;
  Cover cover = Cover::base;
  int max_dim = -1;                         // truncation; -1 = complete
  std::vector<Cell> cells;                  // sorted by (dim, key)
  std::vector<std::vector<int>> faces;      // faces[i] = covered cells (dimension one less)
  std::unordered_map<std::string, int> index;

  std::vector<long long> f_vector() const {
    std::vector<long long> f;
    for (const Cell& c : cells) {
      if (static_cast<int>(f.size()) <= c.dim) f.resize(c.dim + 1, 0);
      ++f[c.dim];
    }
    return f;
  }

  int find(const Tree& t) const {
    auto it = index.find(serialize(canonicalize(t)));
    return it == index.end() ? -1 : it->second;
  }
};

inline CellComplex build_complex(int n, int a, Cover cover, int max_dim = -1) {
  check_parameters(n, a);
  CellComplex cx;
  cx.n = n;
  cx.a = a;
  cx.cover = cover;
  cx.max_dim = max_dim;
  for (Tree& t : enumerate_a_stable(n, a, cover_variant(cover), max_dim)) cx.cells.push_back(make_cell(std::move(t)));
  for (std::size_t i = 0; i < cx.cells.size(); ++i) cx.index.emplace(cx.cells[i].key, static_cast<int>(i));
  cx.faces.resize(cx.cells.size());
  for (std::size_t i = 0; i < cx.cells.size(); ++i)
    for (const Tree& f : covers(cx.cells[i].tree)) {
      auto it = cx.index.find(serialize(f));
      if (it == cx.index.end()) throw std::logic_error("build_complex: face missing from enumeration: " + serialize(f));
      cx.faces[i].push_back(it->second);
    }
  return cx;
}

inline long long euler_characteristic(const CellComplex& cx) {
  if (cx.max_dim >= 0 && cx.max_dim < cx.n - 2) throw DomainError("euler_characteristic: complex is truncated");
  long long chi = 0;
  for (const Cell& c : cx.cells) chi += c.dim % 2 ? -1 : 1;
  return chi;
}

inline long long euler_characteristic_standard(int n, int a, Cover cover = Cover::base) {
  long long chi = 0;
  for (const Tree& t : enumerate_a_stable(n, a, cover_variant(cover))) chi += standard_dimension(t.root) % 2 ? -1 : 1;
  return chi;
}

// Number of ordered set partitions of [m] into t parts: t! S(m,t).
inline long long osp_count(int m, int t) {
  std::vector<std::vector<long long>> S(m + 1, std::vector<long long>(m + 1, 0));
  S[0][0] = 1;
  for (int i = 1; i <= m; ++i)
    for (int k = 1; k <= i; ++k) S[i][k] = k * S[i - 1][k] + S[i - 1][k - 1];
  return t < 0 || t > m ? 0 : factorial(t) * S[m][t];
}

// Face counts by dimension of [-1,1]^d x Pi_{m_1} x ... x Pi_{m_r}.
inline std::vector<long long> expected_face_counts(const Tree& tau) {
  int d = internal_edge_count(tau);
  std::vector<long long> f(d + 1);
  for (int j = 0; j <= d; ++j) f[j] = binomial(d, j) * (1LL << (d - j));
  for (const LeafLabel& part : composition(tau)) {
    int m = static_cast<int>(part.size());
    std::vector<long long> g(m);  // faces of Pi_m by dimension m - t
    for (int t = 1; t <= m; ++t) g[m - t] = osp_count(m, t);
    std::vector<long long> h(f.size() + g.size() - 1, 0);
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t k = 0; k < g.size(); ++k) h[i + k] += f[i] * g[k];
    f = std::move(h);
  }
  return f;
}

struct FaceReport {
  std::vector<long long> expected;
  std::vector<long long> actual;
  bool match() const { return expected == actual; }
};

inline FaceReport verify_closure_faces(const Tree& tau, int n, int a) {
  FaceReport rep;
  rep.expected = expected_face_counts(tau);
  for (const auto& level : closure_poset(tau, n, a)) rep.actual.push_back(static_cast<long long>(level.size()));
  return rep;
}

inline Tree sn_act(const Perm& g, const Tree& tau) { return canonicalize(relabel(tau, g)); }

// The 0-cell whose leaves read g(1), ..., g(n) from left to right, so that relabelling by h
// sends the cell of g to the cell of h*g.
inline Tree zero_cell(const Perm& g, Cover cover) {
  std::vector<Node> leaves;
  for (int x : g) leaves.push_back(make_leaf({x}));
  Tree t{make_internal(std::move(leaves)), cover_variant(cover)};
  apply_variant_flags(t.root, t.variant);
  return canonicalize(t);
}

// Permutation of a double-cover 0-cell (inverse of zero_cell).
inline Perm zero_cell_perm(const Tree& t) {
  Perm g;
  for (const LeafLabel& part : composition(t)) {
    if (part.size() != 1) throw DomainError("not a 0-cell: " + serialize(t));
    g.push_back(part[0]);
  }
  return g;
}

struct OrbitReport {
  long long zero_cells = 0;
  long long orbit_size = 0;
  long long stabilizer_order = 0;
  bool stabilizer_ok = false;  // {id} on the double cover, {id, w_{1,n}} on the base
  bool cosets_ok = false;      // every 0-cell is hit by exactly |stabilizer| permutations
  bool pass() const { return orbit_size == zero_cells && stabilizer_ok && cosets_ok; }
};

inline OrbitReport zero_cell_orbit_check(const CellComplex& cx) {
  OrbitReport rep;
  int n = cx.n;
  for (const Cell& c : cx.cells) rep.zero_cells += c.dim == 0;
  Tree base = zero_cell(perm_identity(n), cx.cover);
  Perm w = interval_reversal(n, 1, n);
  std::unordered_map<std::string, int> hits;
  std::vector<Perm> stab;
  Perm g = perm_identity(n);
  do {
    Tree img = sn_act(g, base);
    std::string key = serialize(img);
    if (!cx.index.count(key)) return rep;
    ++hits[key];
    if (img == base) stab.push_back(g);
  } while (std::next_permutation(g.begin(), g.end()));
  rep.orbit_size = static_cast<long long>(hits.size());
  rep.stabilizer_order = static_cast<long long>(stab.size());
  if (cx.cover == Cover::double_cover)
    rep.stabilizer_ok = stab.size() == 1 && stab[0] == perm_identity(n);
  else
    rep.stabilizer_ok = stab.size() == 2 && stab[0] == perm_identity(n) && stab[1] == w;
  rep.cosets_ok = std::all_of(hits.begin(), hits.end(), [&](const auto& h) { return h.second == static_cast<int>(stab.size()); });
  return rep;
}

struct OneCell {
  int cell = -1;
  int type = 0;  // 1: one part {i,i+1}; 2: one internal edge over [p,q]
  GenSym label;
  std::array<int, 2> ends{-1, -1};
};

struct TwoCell {
  int cell = -1;
  int kind = 0;  // 1: Pi_3, 2: Pi_2 x Pi_2, 3: [-1,1] x Pi_2, 4: [-1,1]^2
  std::vector<int> vertices;  // boundary cycle of 0-cells starting at the basepoint
  std::vector<int> edges;     // edges[k] joins vertices[k] and vertices[k+1 mod size]
  Word word;
};

struct Skeleton {
  int basepoint = -1;
  std::vector<OneCell> one_cells;
  std::vector<TwoCell> two_cells;
};

// Label of the 1-cell joining the 0-cells of g and h: g^{-1} h = w_{p,q}.
inline GenSym edge_label(const CellComplex& cx, int edge) {
  const auto& ends = cx.faces[edge];
  if (ends.size() != 2) throw StructuralError("1-cell without two distinct endpoints: " + cx.cells[edge].key);
  Perm g = zero_cell_perm(cx.cells[ends[0]].tree), h = zero_cell_perm(cx.cells[ends[1]].tree);
  auto [p, q] = as_interval_reversal(perm_compose(perm_inverse(g), h));
  if (!p) throw StructuralError("1-cell endpoints do not differ by an interval reversal: " + cx.cells[edge].key);
  return {p, q};
}

inline Skeleton two_skeleton(const CellComplex& cx, int basepoint) {
  if (cx.cover != Cover::double_cover) throw DomainError("two_skeleton: needs the double cover");
  if (basepoint < 0 || basepoint >= static_cast<int>(cx.cells.size()) || cx.cells[basepoint].dim != 0)
    throw DomainError("two_skeleton: basepoint is not a 0-cell");
  Skeleton sk;
  sk.basepoint = basepoint;
  int n = cx.n;
  auto interval_of = [](const Node& v) {
    LeafLabel s = leaf_set(v);
    return GenSym{s.front(), s.back()};
  };
  for (std::size_t i = 0; i < cx.cells.size(); ++i) {
    const Cell& c = cx.cells[i];
    if (c.dim == 1) {
      const auto& ends = cx.faces[i];
      if (std::find(ends.begin(), ends.end(), basepoint) == ends.end()) continue;
      OneCell e;
      e.cell = static_cast<int>(i);
      e.ends = {ends[0], ends[1]};
      e.label = edge_label(cx, e.cell);
      e.type = c.internal_edges == 0 ? 1 : 2;
      if (e.type == 2) {
        const Node* inner = nullptr;
        for (const Node& ch : c.tree.root.children)
          if (!ch.is_leaf()) inner = &ch;
        GenSym iv = interval_of(*inner);
        if (iv != e.label) throw StructuralError("1-cell label disagrees with its interval: " + c.key);
      }
      sk.one_cells.push_back(e);
    } else if (c.dim == 2) {
      std::set<int> verts;
      std::vector<int> edges = cx.faces[i];
      for (int e : edges)
        for (int v : cx.faces[e]) verts.insert(v);
      if (!verts.count(basepoint)) continue;
      TwoCell f;
      f.cell = static_cast<int>(i);
      int big = 0, pairs = 0;
      for (const LeafLabel& part : c.composition) {
        if (part.size() == 3) ++big;
        if (part.size() == 2) ++pairs;
      }
      if (big == 1) f.kind = 1;
      else if (pairs == 2) f.kind = 2;
      else if (pairs == 1 && c.internal_edges == 1) f.kind = 3;
      else if (c.internal_edges == 2) f.kind = 4;
      else throw StructuralError("unclassifiable 2-cell: " + c.key);
      // Walk the boundary cycle from the basepoint, leaving along the smaller edge label.
      std::map<int, std::vector<int>> incident;
      for (int e : edges)
        for (int v : cx.faces[e]) incident[v].push_back(e);
      for (auto& [v, es] : incident)
        if (es.size() != 2) throw StructuralError("2-cell boundary is not a cycle: " + c.key);
      std::size_t expected = f.kind == 1 ? 6 : 4;
      if (edges.size() != expected || verts.size() != expected)
        throw StructuralError("2-cell boundary has unexpected length: " + c.key);
      const auto& start = incident[basepoint];
      int e = edge_label(cx, start[0]) <= edge_label(cx, start[1]) ? start[0] : start[1];
      int v = basepoint;
      for (std::size_t k = 0; k < expected; ++k) {
        f.vertices.push_back(v);
        f.edges.push_back(e);
        f.word.push_back({edge_label(cx, e), 1});
        int next = cx.faces[e][0] == v ? cx.faces[e][1] : cx.faces[e][0];
        const auto& es = incident[next];
        e = es[0] == e ? es[1] : es[0];
        v = next;
      }
      if (v != basepoint) throw StructuralError("2-cell boundary walk did not close: " + c.key);
      if (to_sym(f.word, n) != perm_identity(n))
        throw StructuralError("2-cell boundary word is not trivial in S_n: " + c.key);
      sk.two_cells.push_back(std::move(f));
    }
  }
  return sk;
}

inline int identity_zero_cell(const CellComplex& cx) {
  int i = cx.find(zero_cell(perm_identity(cx.n), cx.cover));
  if (i < 0) throw std::logic_error("identity 0-cell missing");
  return i;
}

}  // namespace cactus

#pragma once

#include "cactus/base.hpp"

#include <array>
#include <cctype>
#include <functional>
#include <string>
#include <vector>

namespace cactus {

// Ascending, nonempty set of marked-point labels.
using LeafLabel = std::vector<int>;
// Ordered set partition of [n]; read left to right from a tree's leaves.
using Composition = std::vector<LeafLabel>;

enum class Variant { plain, refined, stable, double_cover };

struct Node {
  LeafLabel label;             // nonempty exactly for leaves
  std::vector<Node> children;  // empty exactly for leaves
  bool flippable = false;

  bool is_leaf() const { return children.empty(); }
  bool operator==(const Node&) const = default;
};

struct Tree {
  Node root;
  Variant variant = Variant::plain;

  bool operator==(const Tree&) const = default;
};

inline Node make_leaf(LeafLabel label) {
  Node v;
  v.label = std::move(label);
  return v;
}

inline Node make_internal(std::vector<Node> children, bool flippable = false) {
  Node v;
  v.children = std::move(children);
  v.flippable = flippable;
  return v;
}

inline std::string serialize_label(const LeafLabel& l) {
  std::string s = "{";
  for (std::size_t i = 0; i < l.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(l[i]);
  }
  return s + "}";
}

inline void serialize_into(const Node& v, bool marks, std::string& out) {
  if (v.is_leaf()) {
    out += serialize_label(v.label);
    return;
  }
  if (marks && v.flippable) out += '*';
  out += '(';
  for (std::size_t i = 0; i < v.children.size(); ++i) {
    if (i) out += ' ';
    serialize_into(v.children[i], marks, out);
  }
  out += ')';
}

inline std::string serialize(const Node& v, bool marks = false) {
  std::string s;
  serialize_into(v, marks, s);
  return s;
}

inline std::string serialize(const Tree& t) { return serialize(t.root, t.variant == Variant::refined); }

inline std::string serialize_composition(const Composition& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += '|';
    s += serialize_label(c[i]);
  }
  return s;
}

namespace detail {

struct TreeParser {
  std::string_view s;
  std::size_t i = 0;
  bool saw_mark = false;

  [[noreturn]] void fail(const std::string& what) const {
    throw StructuralError("tree parse error at offset " + std::to_string(i) + ": " + what);
  }
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  int number() {
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (start == i) fail("expected a label");
    if (i - start > 6) fail("label out of range");
    return std::stoi(std::string(s.substr(start, i - start)));
  }
  LeafLabel label() {
    LeafLabel l;
    ++i;  // '{'
    skip();
    if (i < s.size() && s[i] == '}') fail("empty leaf label");
    while (true) {
      skip();
      l.push_back(number());
      skip();
      if (i < s.size() && s[i] == ',') {
        ++i;
        continue;
      }
      if (i < s.size() && s[i] == '}') {
        ++i;
        break;
      }
      fail("expected ',' or '}'");
    }
    std::sort(l.begin(), l.end());
    return l;
  }
  Node node() {
    skip();
    if (i >= s.size()) fail("unexpected end of input");
    bool mark = false;
    if (s[i] == '*') {
      mark = saw_mark = true;
      ++i;
      skip();
      if (i >= s.size() || s[i] != '(') fail("'*' must precede an internal vertex");
    }
    if (s[i] == '{') return make_leaf(label());
    if (std::isdigit(static_cast<unsigned char>(s[i]))) return make_leaf({number()});
    if (s[i] != '(') fail(std::string("unexpected character '") + s[i] + "'");
    ++i;
    std::vector<Node> children;
    while (true) {
      skip();
      if (i >= s.size()) fail("unbalanced parenthesis");
      if (s[i] == ')') {
        ++i;
        break;
      }
      children.push_back(node());
    }
    if (children.size() < 2) fail("internal vertex with fewer than 2 children");
    return make_internal(std::move(children), mark);
  }
};

inline void collect_labels(const Node& v, std::vector<int>& out) {
  if (v.is_leaf()) {
    out.insert(out.end(), v.label.begin(), v.label.end());
    return;
  }
  for (const Node& c : v.children) collect_labels(c, out);
}

}  // namespace detail

inline int ground_size(const Node& v) {
  std::vector<int> all;
  detail::collect_labels(v, all);
  return static_cast<int>(all.size());
}

// Checks structural well-formedness: internal vertices have >= 2 children, leaf labels are
// nonempty, ascending, pairwise disjoint and cover [n].  Returns n.
inline int check_structure(const Node& root, int n = -1) {
  std::vector<int> all;
  std::function<void(const Node&)> walk = [&](const Node& v) {
    if (v.is_leaf()) {
      if (v.label.empty()) throw StructuralError("leaf with empty label");
      for (std::size_t k = 1; k < v.label.size(); ++k)
        if (v.label[k - 1] >= v.label[k]) throw StructuralError("leaf label not strictly ascending");
      all.insert(all.end(), v.label.begin(), v.label.end());
      return;
    }
    if (v.children.size() < 2) throw StructuralError("internal vertex with fewer than 2 children");
    for (const Node& c : v.children) walk(c);
  };
  walk(root);
  if (root.is_leaf()) throw StructuralError("tree consists of a single leaf");
  if (n < 0) n = static_cast<int>(all.size());
  std::vector<char> seen(n + 1, 0);
  for (int x : all) {
    if (x < 1 || x > n) throw StructuralError("label " + std::to_string(x) + " outside [" + std::to_string(n) + "]");
    if (seen[x]) throw StructuralError("label " + std::to_string(x) + " appears twice");
    seen[x] = 1;
  }
  if (static_cast<int>(all.size()) != n) throw StructuralError("leaf labels do not cover [n]");
  return n;
}

// Sets flippable flags as dictated by the variant (refined keeps its own flags).
inline void apply_variant_flags(Node& v, Variant variant, bool is_root = true) {
  if (v.is_leaf()) {
    v.flippable = false;
    return;
  }
  switch (variant) {
    case Variant::plain: v.flippable = false; break;
    case Variant::stable: v.flippable = true; break;
    case Variant::double_cover: v.flippable = !is_root; break;
    case Variant::refined: break;
  }
  for (Node& c : v.children) apply_variant_flags(c, variant, false);
}

inline Tree with_variant(Tree t, Variant variant) {
  t.variant = variant;
  apply_variant_flags(t.root, variant);
  return t;
}

// Parses the bit-exact serialization (whitespace-tolerant).  A tree with '*' marks parses as
// refined; otherwise it gets `fallback`.
inline Tree parse_tree(std::string_view s, Variant fallback = Variant::plain) {
  detail::TreeParser p{s};
  Node root = p.node();
  p.skip();
  if (p.i != s.size()) p.fail("trailing characters");
  check_structure(root);
  Tree t{std::move(root), p.saw_mark ? Variant::refined : fallback};
  if (t.variant != Variant::refined) apply_variant_flags(t.root, t.variant);
  return t;
}

inline Composition parse_composition(std::string_view s) {
  Composition c;
  std::size_t start = 0;
  while (true) {
    std::size_t bar = s.find('|', start);
    std::string_view part = s.substr(start, bar == std::string_view::npos ? std::string_view::npos : bar - start);
    detail::TreeParser p{part};
    p.skip();
    if (p.i >= part.size() || part[p.i] != '{') p.fail("expected '{'");
    c.push_back(p.label());
    p.skip();
    if (p.i != part.size()) p.fail("trailing characters in part");
    if (bar == std::string_view::npos) break;
    start = bar + 1;
  }
  return c;
}

inline int leaf_mass(const Node& v) {
  if (v.is_leaf()) return static_cast<int>(v.label.size());
  int m = 0;
  for (const Node& c : v.children) m += leaf_mass(c);
  return m;
}

inline LeafLabel leaf_set(const Node& v) {
  LeafLabel all;
  detail::collect_labels(v, all);
  std::sort(all.begin(), all.end());
  return all;
}

inline void composition_into(const Node& v, Composition& out) {
  if (v.is_leaf()) {
    out.push_back(v.label);
    return;
  }
  for (const Node& c : v.children) composition_into(c, out);
}

inline Composition composition(const Tree& t) {
  Composition c;
  composition_into(t.root, c);
  return c;
}

inline int internal_vertex_count(const Node& v) {
  if (v.is_leaf()) return 0;
  int k = 1;
  for (const Node& c : v.children) k += internal_vertex_count(c);
  return k;
}

inline int internal_edge_count(const Tree& t) { return internal_vertex_count(t.root) - 1; }

// Dual-cell dimension: #internal edges + n - #parts.
inline int dual_dimension(const Tree& t) {
  int n = ground_size(t.root);
  return internal_edge_count(t) + n - static_cast<int>(composition(t).size());
}

// Standard-cell dimension: sum over internal vertices of c(v) - 2.
inline int standard_dimension(const Node& v) {
  if (v.is_leaf()) return 0;
  int d = static_cast<int>(v.children.size()) - 2;
  for (const Node& c : v.children) d += standard_dimension(c);
  return d;
}

inline int vertex_count(const Node& v) {
  int k = 1;
  for (const Node& c : v.children) k += vertex_count(c);
  return k;
}

namespace detail {

inline const Node* node_at(const Node& v, int& idx) {
  if (idx == 0) return &v;
  --idx;
  for (const Node& c : v.children)
    if (const Node* r = node_at(c, idx)) return r;
  return nullptr;
}

inline void reverse_subtree(Node& v) {
  std::reverse(v.children.begin(), v.children.end());
  for (Node& c : v.children) reverse_subtree(c);
}

}  // namespace detail

// Vertex identity is the preorder index (root = 0, leaves included).
inline const Node& vertex(const Tree& t, int v) {
  int idx = v;
  const Node* p = v >= 0 ? detail::node_at(t.root, idx) : nullptr;
  if (!p) throw DomainError("vertex index " + std::to_string(v) + " out of range");
  return *p;
}

inline Tree flip_at(Tree t, int v) {
  int idx = v;
  Node* p = v >= 0 ? const_cast<Node*>(detail::node_at(t.root, idx)) : nullptr;
  if (!p || p->is_leaf()) throw DomainError("flip_at: vertex " + std::to_string(v) + " is not internal");
  detail::reverse_subtree(*p);
  return t;
}

// Least serialization over the orbit generated by flips at flippable vertices.  An orientation
// at a vertex is reversed iff an odd number of its weak ancestors were flipped, so each
// subtree needs its best form for both incoming parities; flippable vertices may toggle it.
namespace detail {

struct CanonInfo {
  std::array<std::string, 2> assembled;  // serialization with effective parity q
  std::vector<CanonInfo> kids;

  const std::string& best(bool flippable, int p) const {
    if (!flippable) return assembled[p];
    return assembled[0] <= assembled[1] ? assembled[0] : assembled[1];
  }
};

inline CanonInfo canon_info(const Node& v, bool marks) {
  CanonInfo info;
  if (v.is_leaf()) {
    info.assembled[0] = info.assembled[1] = serialize_label(v.label);
    return info;
  }
  info.kids.reserve(v.children.size());
  for (const Node& c : v.children) info.kids.push_back(canon_info(c, marks));
  for (int q = 0; q < 2; ++q) {
    std::string& s = info.assembled[q];
    if (marks && v.flippable) s += '*';
    s += '(';
    std::size_t k = v.children.size();
    for (std::size_t j = 0; j < k; ++j) {
      std::size_t c = q ? k - 1 - j : j;
      if (j) s += ' ';
      s += info.kids[c].best(v.children[c].flippable, q);
    }
    s += ')';
  }
  return info;
}

inline Node canon_rebuild(const Node& v, const CanonInfo& info, int p) {
  if (v.is_leaf()) return v;
  int q = p;
  if (v.flippable) q = info.assembled[0] <= info.assembled[1] ? 0 : 1;
  Node out;
  out.flippable = v.flippable;
  std::size_t k = v.children.size();
  out.children.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    std::size_t c = q ? k - 1 - j : j;
    out.children.push_back(canon_rebuild(v.children[c], info.kids[c], q));
  }
  return out;
}

}  // namespace detail

inline Tree canonicalize(const Tree& t) {
  if (t.variant == Variant::plain) return t;
  detail::CanonInfo info = detail::canon_info(t.root, t.variant == Variant::refined);
  return Tree{detail::canon_rebuild(t.root, info, 0), t.variant};
}

inline std::string canonical_key(const Tree& t) {
  if (t.variant == Variant::plain) return serialize(t);
  detail::CanonInfo info = detail::canon_info(t.root, t.variant == Variant::refined);
  return info.best(t.root.flippable, 0);
}

struct StabilityReport {
  bool leaf_sizes_ok = true;
  bool subtree_mass_ok = true;
  std::vector<std::string> failures;

  bool pass() const { return leaf_sizes_ok && subtree_mass_ok; }
};

// Throws StructuralError for malformed trees; stability failures are reported, not thrown.
inline StabilityReport validate_a_stable(const Tree& t, int n, int a) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (a < 1 || a > n - 1) throw DomainError("a must lie in 1..n-1");
  check_structure(t.root, n);
  StabilityReport rep;
  std::function<int(const Node&)> walk = [&](const Node& v) -> int {
    if (v.is_leaf()) {
      int m = static_cast<int>(v.label.size());
      if (m > a) {
        rep.leaf_sizes_ok = false;
        rep.failures.push_back("leaf " + serialize_label(v.label) + " has size " + std::to_string(m) + " > " +
                               std::to_string(a));
      }
      return m;
    }
    int m = 0;
    for (const Node& c : v.children) m += walk(c);
    if (m < a + 1) {
      rep.subtree_mass_ok = false;
      rep.failures.push_back("subtree " + serialize(v) + " has mass " + std::to_string(m) + " < " +
                             std::to_string(a + 1));
    }
    return m;
  };
  walk(t.root);
  return rep;
}

namespace detail {

inline Node compress_node(const Node& v, int a) {
  if (v.is_leaf()) return v;
  if (leaf_mass(v) <= a) return make_leaf(leaf_set(v));
  Node out;
  out.flippable = v.flippable;
  for (const Node& c : v.children) out.children.push_back(compress_node(c, a));
  return out;
}

}  // namespace detail

// Contracts every maximal subtree of leaf mass <= a into one leaf.
inline Tree compress(const Tree& t, int a) {
  int n = ground_size(t.root);
  if (a < 1 || a > n - 1) throw DomainError("compress: a must lie in 1..n-1");
  return Tree{detail::compress_node(t.root, a), t.variant};
}

// Maps a-stable trees to b-stable trees by contracting subtrees of mass <= b.
inline Tree compress_between(const Tree& t, int a, int b) {
  if (a > b) throw DomainError("compress_between: a > b");
  int n = ground_size(t.root);
  if (a < 1 || b > n - 1) throw DomainError("compress_between: need 1 <= a <= b <= n-1");
  return Tree{detail::compress_node(t.root, b), t.variant};
}

// Relabels every leaf element i as g(i).
inline Tree relabel(const Tree& t, const Perm& g) {
  std::function<Node(const Node&)> walk = [&](const Node& v) {
    Node out = v;
    if (v.is_leaf()) {
      for (int& x : out.label) x = g[x - 1];
      std::sort(out.label.begin(), out.label.end());
      return out;
    }
    for (Node& c : out.children) c = walk(c);
    return out;
  };
  return Tree{walk(t.root), t.variant};
}

}  // namespace cactus

#pragma once

#include "cactus/tree.hpp"

#include <map>
#include <optional>

namespace cactus {

struct Component;

// A special point of a component: either marked points (labels) or a node to a child component.
struct SpecialPoint {
  Rational pos;
  LeafLabel labels;
  std::vector<Component> child;  // size 0 or 1

  bool is_node() const { return !child.empty(); }
};

// Special points in rooted coordinates; the point towards the root sits at infinity.
struct Component {
  std::vector<SpecialPoint> points;
};

struct MarkedCurve {
  Component root;
  bool oriented = false;  // orientation at the point at infinity (double cover)
};

inline SpecialPoint marked(Rational pos, LeafLabel labels) {
  SpecialPoint p;
  p.pos = std::move(pos);
  p.labels = std::move(labels);
  return p;
}

inline SpecialPoint node_to(Rational pos, Component child) {
  SpecialPoint p;
  p.pos = std::move(pos);
  p.child.push_back(std::move(child));
  return p;
}

// Smooth curve with marked point i at positions[i-1].
inline MarkedCurve smooth_curve(const std::vector<Rational>& positions, bool oriented = false) {
  std::vector<std::pair<Rational, int>> pts;
  for (std::size_t i = 0; i < positions.size(); ++i) pts.emplace_back(positions[i], static_cast<int>(i) + 1);
  std::stable_sort(pts.begin(), pts.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  MarkedCurve c;
  c.oriented = oriented;
  for (auto& [pos, label] : pts) {
    if (!c.root.points.empty() && c.root.points.back().pos == pos)
      c.root.points.back().labels.push_back(label);
    else
      c.root.points.push_back(marked(pos, {label}));
  }
  return c;
}

namespace detail {

inline void sort_component(Component& comp) {
  for (SpecialPoint& p : comp.points) {
    std::sort(p.labels.begin(), p.labels.end());
    if (p.is_node()) sort_component(p.child[0]);
  }
  std::stable_sort(comp.points.begin(), comp.points.end(),
                   [](const SpecialPoint& x, const SpecialPoint& y) { return x.pos < y.pos; });
  // Coincident marked points form one special point.
  std::vector<SpecialPoint> merged;
  for (SpecialPoint& p : comp.points) {
    if (!merged.empty() && merged.back().pos == p.pos) {
      if (merged.back().is_node() || p.is_node())
        throw StructuralError("a node coincides with another special point");
      merged.back().labels.insert(merged.back().labels.end(), p.labels.begin(), p.labels.end());
      std::sort(merged.back().labels.begin(), merged.back().labels.end());
      continue;
    }
    merged.push_back(std::move(p));
  }
  comp.points = std::move(merged);
}

inline void curve_labels(const Component& comp, std::vector<int>& out) {
  for (const SpecialPoint& p : comp.points) {
    out.insert(out.end(), p.labels.begin(), p.labels.end());
    if (p.is_node()) curve_labels(p.child[0], out);
  }
}

inline int component_mass(const Component& comp) {
  int m = 0;
  for (const SpecialPoint& p : comp.points) m += p.is_node() ? component_mass(p.child[0]) : static_cast<int>(p.labels.size());
  return m;
}

}  // namespace detail

// Sorts points by position and merges coincident marked points.
inline MarkedCurve normalize_order(MarkedCurve c) {
  detail::sort_component(c.root);
  return c;
}

inline int curve_size(const MarkedCurve& c) {
  std::vector<int> all;
  detail::curve_labels(c.root, all);
  return static_cast<int>(all.size());
}

// Validates structure and a-stability (weights 1/a on [n], weight 1 at infinity); returns n.
inline int check_curve(const MarkedCurve& c, int a) {
  std::vector<int> all;
  detail::curve_labels(c.root, all);
  int n = static_cast<int>(all.size());
  std::vector<char> seen(n + 1, 0);
  for (int x : all) {
    if (x < 1 || x > n) throw StructuralError("curve label " + std::to_string(x) + " outside [n]");
    if (seen[x]) throw StructuralError("curve label " + std::to_string(x) + " appears twice");
    seen[x] = 1;
  }
  if (n < 2) throw DomainError("curve needs at least 2 marked points");
  if (a < 1 || a > n - 1) throw DomainError("a must lie in 1..n-1");
  std::function<void(const Component&)> walk = [&](const Component& comp) {
    if (comp.points.empty()) throw StructuralError("component without special points");
    int nodes = 1;  // the point at infinity: parent node, or x_{n+1} of weight 1
    int mass = 0;
    for (std::size_t i = 0; i < comp.points.size(); ++i) {
      const SpecialPoint& p = comp.points[i];
      if (i && !(comp.points[i - 1].pos < p.pos))
        throw StructuralError("special points not strictly increasing (coincident labels must be merged)");
      if (p.is_node()) {
        if (!p.labels.empty()) throw StructuralError("special point is both a node and marked");
        ++nodes;
        walk(p.child[0]);
      } else {
        if (p.labels.empty()) throw StructuralError("special point without labels");
        if (static_cast<int>(p.labels.size()) > a)
          throw DomainError("more than a = " + std::to_string(a) + " marked points coincide");
        mass += static_cast<int>(p.labels.size());
      }
    }
    // nodes + mass/a > 2
    if (nodes * a + mass <= 2 * a) throw DomainError("unstable component");
  };
  walk(c.root);
  return n;
}

// Canonical text for equality up to coordinate changes fixing infinity: per component
// translate the leftmost point to 0, scale the largest gap to 1, and take the lesser of the
// two orientations unless the component is the root of an oriented curve.
inline std::string curve_key(const MarkedCurve& c) {
  std::function<std::string(const Component&, bool)> key = [&](const Component& comp, bool fixed) {
    std::size_t k = comp.points.size();
    Rational lo = comp.points.front().pos, hi = comp.points.back().pos;
    Rational gap = 0;
    for (std::size_t i = 1; i < k; ++i) gap = std::max<Rational>(gap, comp.points[i].pos - comp.points[i - 1].pos);
    if (gap == 0) gap = 1;
    std::vector<std::string> inner(k);
    for (std::size_t i = 0; i < k; ++i) {
      const SpecialPoint& p = comp.points[i];
      inner[i] = p.is_node() ? "[" + key(p.child[0], false) + "]" : serialize_label(p.labels);
    }
    auto build = [&](bool reversed) {
      std::string s;
      for (std::size_t j = 0; j < k; ++j) {
        std::size_t i = reversed ? k - 1 - j : j;
        Rational x = reversed ? (hi - comp.points[i].pos) / gap : (comp.points[i].pos - lo) / gap;
        if (j) s += ' ';
        s += x.str() + ":" + inner[i];
      }
      return s;
    };
    std::string fwd = build(false);
    if (fixed) return fwd;
    return std::min(fwd, build(true));
  };
  MarkedCurve sorted = normalize_order(c);
  return (c.oriented ? "+" : "") + key(sorted.root, c.oriented);
}

inline bool curves_equal(const MarkedCurve& x, const MarkedCurve& y) { return curve_key(x) == curve_key(y); }

// ---------------------------------------------------------------------------------------------
// Distance algorithms

struct MergeResult {
  Node root;
  std::map<LeafLabel, Rational> gap;  // common consecutive gap at each created internal vertex
};

// Repeatedly merges maximal runs of the current minimum gap.  Merged subtrees of mass <= a are
// replaced by a single leaf (a = 1 never compresses).
inline MergeResult distance_merge(std::vector<Node> items, std::vector<Rational> gaps, int a) {
  if (items.empty()) throw DomainError("distance_merge: no items");
  if (gaps.size() + 1 != items.size()) throw DomainError("distance_merge: need one gap between each pair");
  for (const Rational& d : gaps)
    if (d <= 0) throw DomainError("distance_merge: gaps must be positive");
  MergeResult res;
  while (items.size() > 1) {
    Rational m = *std::min_element(gaps.begin(), gaps.end());
    std::vector<Node> next_items;
    std::vector<Rational> next_gaps;
    std::size_t i = 0;
    while (i < items.size()) {
      std::size_t j = i;
      while (j < gaps.size() && gaps[j] == m) ++j;
      if (j == i) {
        next_items.push_back(std::move(items[i]));
      } else {
        std::vector<Node> run;
        for (std::size_t k = i; k <= j; ++k) run.push_back(std::move(items[k]));
        Node merged = make_internal(std::move(run));
        if (leaf_mass(merged) <= a) {
          merged = make_leaf(leaf_set(merged));
        } else {
          res.gap[leaf_set(merged)] = m;
        }
        next_items.push_back(std::move(merged));
      }
      if (j < gaps.size()) next_gaps.push_back(gaps[j]);
      i = j + 1;
    }
    items = std::move(next_items);
    gaps = std::move(next_gaps);
  }
  res.root = std::move(items[0]);
  return res;
}

namespace detail {

inline void check_sequence(const std::vector<int>& sigma, const std::vector<Rational>& d) {
  int n = static_cast<int>(sigma.size());
  if (n < 2) throw DomainError("need at least 2 marked points");
  if (!is_permutation_of(sigma, n)) throw StructuralError("sigma is not a permutation of [n]");
  if (static_cast<int>(d.size()) != n - 1) throw StructuralError("difference vector must have n-1 entries");
  for (const Rational& x : d)
    if (x < 0) throw DomainError("negative difference");
}

}  // namespace detail

// sigma lists the labels from left to right; d holds the n-1 consecutive gaps.
inline Tree distance_tree(const std::vector<int>& sigma, const std::vector<Rational>& d) {
  detail::check_sequence(sigma, d);
  for (const Rational& x : d)
    if (x == 0) throw DomainError("distance_tree: zero difference (use the weighted algorithm)");
  std::vector<Node> items;
  for (int s : sigma) items.push_back(make_leaf({s}));
  return Tree{distance_merge(std::move(items), d, 1).root, Variant::plain};
}

inline Tree distance_tree_weighted(const std::vector<int>& sigma, const std::vector<Rational>& d, int a) {
  detail::check_sequence(sigma, d);
  int n = static_cast<int>(sigma.size());
  if (a < 1 || a > n - 1) throw DomainError("a must lie in 1..n-1");
  std::vector<Node> items;
  std::vector<Rational> gaps;
  LeafLabel block{sigma[0]};
  for (int i = 1; i < n; ++i) {
    if (d[i - 1] == 0) {
      block.push_back(sigma[i]);
      continue;
    }
    std::sort(block.begin(), block.end());
    items.push_back(make_leaf(block));
    gaps.push_back(d[i - 1]);
    block = {sigma[i]};
  }
  std::sort(block.begin(), block.end());
  items.push_back(make_leaf(block));
  for (const Node& b : items)
    if (static_cast<int>(b.label.size()) > a)
      throw DomainError("zero block " + serialize_label(b.label) + " spans more than a points");
  if (items.size() == 1) throw DomainError("all marked points coincide");
  return Tree{distance_merge(std::move(items), gaps, a).root, Variant::plain};
}

namespace detail {

struct LittleResult {
  Node root;
  std::map<LeafLabel, Rational> gap;
};

// Per-component distance trees grafted at nodes; component roots flagged flippable.
inline LittleResult little_tree(const Component& comp, int a) {
  LittleResult res;
  std::vector<Node> items;
  std::vector<Rational> gaps;
  for (std::size_t i = 0; i < comp.points.size(); ++i) {
    const SpecialPoint& p = comp.points[i];
    if (i) gaps.push_back(p.pos - comp.points[i - 1].pos);
    if (p.is_node()) {
      LittleResult sub = little_tree(p.child[0], a);
      res.gap.insert(sub.gap.begin(), sub.gap.end());
      items.push_back(std::move(sub.root));
    } else {
      items.push_back(make_leaf(p.labels));
    }
  }
  MergeResult m = distance_merge(std::move(items), std::move(gaps), a);
  res.gap.insert(m.gap.begin(), m.gap.end());
  res.root = std::move(m.root);
  res.root.flippable = true;
  return res;
}

}  // namespace detail

// Refined tree; flippable set = root (unless oriented) and every component root.
inline Tree tau_little(const MarkedCurve& c) {
  check_curve(c, 1);
  Tree t{detail::little_tree(c.root, 1).root, Variant::refined};
  t.root.flippable = !c.oriented;
  return t;
}

inline Tree tau_big(const MarkedCurve& c) {
  check_curve(c, 1);
  Tree t{detail::little_tree(c.root, 1).root, c.oriented ? Variant::double_cover : Variant::stable};
  apply_variant_flags(t.root, t.variant);
  return canonicalize(t);
}

// Direct weighted computation: per component, the weighted distance algorithm with
// coincident points as multi-label leaves and child components as heavy leaves.
inline Tree tau_big_a(const MarkedCurve& c, int a) {
  check_curve(c, a);
  Tree t{detail::little_tree(c.root, a).root, c.oriented ? Variant::double_cover : Variant::stable};
  apply_variant_flags(t.root, t.variant);
  return canonicalize(t);
}

inline Tree tau_std(const MarkedCurve& c, int a) {
  check_curve(c, a);
  std::function<Node(const Component&)> walk = [&](const Component& comp) {
    std::vector<Node> kids;
    for (const SpecialPoint& p : comp.points) kids.push_back(p.is_node() ? walk(p.child[0]) : make_leaf(p.labels));
    return make_internal(std::move(kids));
  };
  Tree t{walk(c.root), c.oriented ? Variant::double_cover : Variant::stable};
  apply_variant_flags(t.root, t.variant);
  return canonicalize(t);
}

struct EdgeValue {
  LeafLabel child;   // leaf set below the child endpoint of the edge
  LeafLabel parent;  // leaf set below the parent endpoint
  Rational value;
};

// Internal edges (u,v) of a refined tree whose child v is not flippable, in preorder of v.
inline std::vector<std::pair<LeafLabel, LeafLabel>> coordinate_edges(const Tree& tau) {
  std::vector<std::pair<LeafLabel, LeafLabel>> out;
  std::function<void(const Node&)> walk = [&](const Node& u) {
    for (const Node& v : u.children) {
      if (v.is_leaf()) continue;
      if (!v.flippable) out.emplace_back(leaf_set(v), leaf_set(u));
      walk(v);
    }
  };
  walk(tau.root);
  return out;
}

inline std::vector<EdgeValue> theta_tau(const MarkedCurve& c, const Tree& tau) {
  if (tau.variant != Variant::refined) throw DomainError("theta_tau: tree must be refined");
  check_curve(c, 1);
  detail::LittleResult little = detail::little_tree(c.root, 1);
  Tree lt{little.root, Variant::refined};
  lt.root.flippable = !c.oriented;
  if (canonical_key(lt) != canonical_key(tau))
    throw DomainError("theta_tau: curve does not lie in the refined cell of the tree");
  std::vector<EdgeValue> out;
  for (auto& [child, parent] : coordinate_edges(tau)) {
    auto cv = little.gap.find(child), pv = little.gap.find(parent);
    if (cv == little.gap.end() || pv == little.gap.end()) throw std::logic_error("theta_tau: missing vertex gap");
    out.push_back({child, parent, cv->second / pv->second});
  }
  return out;
}

// Inverse of theta_tau: r is aligned with coordinate_edges(tau).  With allow_boundary, values
// equal to 1 are accepted (the edge is then contracted in the resulting curve's tree).
inline MarkedCurve phi_tau(const Tree& tau, const std::vector<Rational>& r, bool allow_boundary = false) {
  if (tau.variant != Variant::refined) throw DomainError("phi_tau: tree must be refined");
  check_structure(tau.root);
  auto edges = coordinate_edges(tau);
  if (r.size() != edges.size())
    throw DomainError("phi_tau: expected " + std::to_string(edges.size()) + " edge values");
  std::map<LeafLabel, Rational> value;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (r[i] <= 0 || r[i] > 1 || (r[i] == 1 && !allow_boundary))
      throw DomainError("phi_tau: edge value " + r[i].str() + " outside (0,1)");
    value[edges[i].first] = r[i];
  }
  std::function<Component(const Node&)> build = [&](const Node& f) {
    Component comp;
    Rational cursor = 0;
    std::function<void(const Node&, const Rational&)> emit = [&](const Node& v, const Rational& scale) {
      for (std::size_t k = 0; k < v.children.size(); ++k) {
        if (k) cursor += scale;
        const Node& ch = v.children[k];
        if (ch.is_leaf())
          comp.points.push_back(marked(cursor, ch.label));
        else if (ch.flippable)
          comp.points.push_back(node_to(cursor, build(ch)));
        else
          emit(ch, scale * value.at(leaf_set(ch)));
      }
    };
    emit(f, Rational(1));
    return comp;
  };
  MarkedCurve c;
  c.root = build(tau.root);
  c.oriented = !tau.root.flippable;
  return c;
}

}  // namespace cactus

#pragma once

#include "cactus/tree.hpp"

#include <bit>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <unordered_set>

namespace cactus {

namespace detail {

// Plane trees with k unlabeled leaves whose internal vertices have >= 2 children.
inline const std::vector<Node>& plane_shapes(int k) {
  static std::map<int, std::vector<Node>> cache;
  static std::recursive_mutex mu;
  std::lock_guard lock(mu);
  auto it = cache.find(k);
  if (it != cache.end()) return it->second;
  std::vector<Node> out;
  if (k == 1) {
    out.push_back(make_leaf({0}));
  } else {
    // Children sequences: ordered compositions of k into >= 2 parts, each filled by a shape.
    std::vector<Node> current;
    std::function<void(int)> extend = [&](int remaining) {
      if (remaining == 0) {
        if (current.size() >= 2) out.push_back(make_internal(current));
        return;
      }
      for (int part = 1; part <= remaining; ++part) {
        if (part == k) continue;
        for (const Node& s : plane_shapes(part)) {
          current.push_back(s);
          extend(remaining - part);
          current.pop_back();
        }
      }
    };
    extend(k);
  }
  return cache.emplace(k, std::move(out)).first->second;
}

inline void ordered_set_partitions(int n, int max_part, const std::function<void(const Composition&)>& visit) {
  Composition current;
  std::vector<int> remaining(n);
  std::iota(remaining.begin(), remaining.end(), 1);
  std::function<void(const std::vector<int>&)> rec = [&](const std::vector<int>& rest) {
    if (rest.empty()) {
      visit(current);
      return;
    }
    int m = static_cast<int>(rest.size());
    for (unsigned mask = 1; mask < (1u << m); ++mask) {
      if (std::popcount(mask) > max_part) continue;
      LeafLabel part;
      std::vector<int> next;
      for (int i = 0; i < m; ++i) (mask >> i & 1u ? part : next).push_back(rest[i]);
      current.push_back(part);
      rec(next);
      current.pop_back();
    }
  };
  rec(remaining);
}

// Fills shape leaves left to right with parts; false if some internal vertex has mass < a+1.
inline bool fill_shape(const Node& shape, const Composition& parts, std::size_t& next, int a, Node& out, int& mass) {
  if (shape.is_leaf()) {
    out = make_leaf(parts[next++]);
    mass = static_cast<int>(out.label.size());
    return true;
  }
  out.children.resize(shape.children.size());
  mass = 0;
  for (std::size_t i = 0; i < shape.children.size(); ++i) {
    int m = 0;
    if (!fill_shape(shape.children[i], parts, next, a, out.children[i], m)) return false;
    mass += m;
  }
  return mass >= a + 1;
}

}  // namespace detail

inline void check_parameters(int n, int a) {
  if (n < 2) throw DomainError("n must be at least 2");
  if (a < 1 || a > n - 1) throw DomainError("a must lie in 1..n-1");
}

// All ordered set partitions of [n] with parts of size <= max_part, in generation order.
inline std::vector<Composition> ordered_set_partitions(int n, int max_part) {
  std::vector<Composition> out;
  detail::ordered_set_partitions(n, max_part, [&](const Composition& c) { out.push_back(c); });
  return out;
}

// Canonical a-stable trees on [n], sorted by (dual dimension, serialization).  max_dim < 0
// means no truncation.
inline std::vector<Tree> enumerate_a_stable(int n, int a, Variant variant, int max_dim = -1) {
  check_parameters(n, a);
  if (variant != Variant::stable && variant != Variant::double_cover)
    throw DomainError("enumerate_a_stable: variant must be stable or double_cover");
  std::set<std::pair<int, std::string>> seen;
  std::vector<std::pair<std::pair<int, std::string>, Tree>> found;
  detail::ordered_set_partitions(n, a, [&](const Composition& parts) {
    int r = static_cast<int>(parts.size());
    if (r < 2) return;
    for (const Node& shape : detail::plane_shapes(r)) {
      int internal = internal_vertex_count(shape);
      int dim = internal - 1 + n - r;
      if (max_dim >= 0 && dim > max_dim) continue;
      Node filled;
      std::size_t next = 0;
      int mass = 0;
      if (!detail::fill_shape(shape, parts, next, a, filled, mass)) continue;
      Tree t{std::move(filled), variant};
      apply_variant_flags(t.root, variant);
      Tree c = canonicalize(t);
      std::pair<int, std::string> key{dim, serialize(c)};
      if (seen.insert(key).second) found.emplace_back(key, std::move(c));
    }
  });
  std::sort(found.begin(), found.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  std::vector<Tree> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(std::move(f.second));
  return out;
}

namespace detail {

// Visits every child slot as (path of child positions to the parent, position).
inline void for_each_child_slot(const Node& root, const std::function<void(const std::vector<int>&, std::size_t)>& visit) {
  std::vector<int> path;
  std::function<void(const Node&)> walk = [&](const Node& v) {
    for (std::size_t i = 0; i < v.children.size(); ++i) {
      visit(path, i);
      path.push_back(static_cast<int>(i));
      walk(v.children[i]);
      path.pop_back();
    }
  };
  walk(root);
}

inline Node& node_by_path(Node& root, const std::vector<int>& path) {
  Node* v = &root;
  for (int i : path) v = &v->children[i];
  return *v;
}

}  // namespace detail

// All tau' with tau >= tau' and dim(tau') = dim(tau) - 1, canonical and sorted.
inline std::vector<Tree> covers(const Tree& tau) {
  std::set<std::string> seen;
  std::vector<Tree> out;
  auto emit = [&](Tree t) {
    Tree c = canonicalize(t);
    std::string key = serialize(c);
    if (seen.insert(key).second) out.push_back(std::move(c));
  };
  detail::for_each_child_slot(tau.root, [&](const std::vector<int>& path, std::size_t pos) {
    const Node& parent = [&]() -> const Node& {
      const Node* v = &tau.root;
      for (int i : path) v = &v->children[i];
      return *v;
    }();
    const Node& child = parent.children[pos];
    if (!child.is_leaf()) {
      for (int pre_flip = 0; pre_flip < 2; ++pre_flip) {
        Tree t = tau;
        Node& p = detail::node_by_path(t.root, path);
        Node c = p.children[pos];
        if (pre_flip) detail::reverse_subtree(c);
        p.children.erase(p.children.begin() + static_cast<long>(pos));
        p.children.insert(p.children.begin() + static_cast<long>(pos), c.children.begin(), c.children.end());
        emit(std::move(t));
      }
      return;
    }
    const LeafLabel& A = child.label;
    int m = static_cast<int>(A.size());
    for (unsigned mask = 1; mask + 1 < (1u << m); ++mask) {
      LeafLabel first, second;
      for (int i = 0; i < m; ++i) (mask >> i & 1u ? first : second).push_back(A[i]);
      Tree t = tau;
      Node& p = detail::node_by_path(t.root, path);
      p.children[pos] = make_leaf(second);
      p.children.insert(p.children.begin() + static_cast<long>(pos), make_leaf(first));
      emit(std::move(t));
    }
  });
  std::sort(out.begin(), out.end(), [](const Tree& x, const Tree& y) { return serialize(x) < serialize(y); });
  return out;
}

inline std::vector<Tree> covers(const Tree& tau, int n, int a) {
  StabilityReport rep = validate_a_stable(tau, n, a);
  if (!rep.pass()) throw DomainError("covers: tree is not " + std::to_string(a) + "-stable");
  return covers(tau);
}

// All tau' <= tau, grouped by dual dimension (index = dimension).
inline std::vector<std::vector<Tree>> closure_poset(const Tree& tau) {
  Tree start = canonicalize(tau);
  int top = dual_dimension(start);
  std::vector<std::vector<Tree>> by_dim(top + 1);
  std::set<std::string> seen{serialize(start)};
  by_dim[top].push_back(start);
  for (int d = top; d > 0; --d)
    for (const Tree& t : by_dim[d])
      for (Tree& f : covers(t))
        if (seen.insert(serialize(f)).second) by_dim[d - 1].push_back(std::move(f));
  for (auto& level : by_dim)
    std::sort(level.begin(), level.end(), [](const Tree& x, const Tree& y) { return serialize(x) < serialize(y); });
  return by_dim;
}

inline std::vector<std::vector<Tree>> closure_poset(const Tree& tau, int n, int a) {
  StabilityReport rep = validate_a_stable(tau, n, a);
  if (!rep.pass()) throw DomainError("closure_poset: tree is not " + std::to_string(a) + "-stable");
  return closure_poset(tau);
}

}  // namespace cactus

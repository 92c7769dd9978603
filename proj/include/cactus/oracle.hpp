#pragma once

// Brute-force reference computations. Nothing here calls the library's enumeration,
// canonicalization or presentation code; only the permutation helpers are shared.

#include "cactus/base.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace cactus::oracle {

struct PTree {
  std::vector<int> label;  // nonempty iff leaf
  std::vector<PTree> kids;
};

inline std::string text(const PTree& t) {
  if (t.kids.empty()) {
    std::string s = "{";
    for (std::size_t i = 0; i < t.label.size(); ++i) s += (i ? "," : "") + std::to_string(t.label[i]);
    return s + "}";
  }
  std::string s = "(";
  for (const PTree& k : t.kids) s += text(k) + " ";
  s.back() = ')';
  return s;
}

// Ordered partitions of S into exactly k nonempty blocks, by surjections S -> {0..k-1}.
inline std::vector<std::vector<std::vector<int>>> ordered_blocks(const std::vector<int>& S, int k) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> f(S.size(), 0);
  while (true) {
    std::vector<std::vector<int>> blocks(k);
    for (std::size_t i = 0; i < S.size(); ++i) blocks[f[i]].push_back(S[i]);
    bool onto = true;
    for (const auto& b : blocks) onto = onto && !b.empty();
    if (onto) out.push_back(blocks);
    std::size_t i = 0;
    while (i < f.size() && ++f[i] == k) f[i++] = 0;
    if (i == f.size()) break;
  }
  return out;
}

// All plane trees on S: leaves carry blocks of size <= a, internal subtrees have mass > a.
inline std::vector<PTree> plane_trees(const std::vector<int>& S, int a, bool root) {
  std::vector<PTree> out;
  int s = static_cast<int>(S.size());
  if (s <= a && !root) out.push_back({S, {}});
  if (s <= a) return out;
  for (int k = 2; k <= s; ++k)
    for (const auto& blocks : ordered_blocks(S, k)) {
      std::vector<std::vector<PTree>> options;
      for (const auto& b : blocks) options.push_back(plane_trees(b, a, false));
      std::vector<std::size_t> pick(k, 0);
      bool empty = false;
      for (const auto& o : options) empty = empty || o.empty();
      if (empty) continue;
      while (true) {
        PTree t;
        for (int j = 0; j < k; ++j) t.kids.push_back(options[j][pick[j]]);
        out.push_back(std::move(t));
        int j = 0;
        while (j < k && ++pick[j] == options[j].size()) pick[j++] = 0;
        if (j == k) break;
      }
    }
  return out;
}

// Every plane tree on [n] with singleton leaves, serialized.
inline std::vector<std::string> plain_tree_texts(int n) {
  std::vector<int> S(n);
  for (int i = 0; i < n; ++i) S[i] = i + 1;
  std::vector<std::string> out;
  for (const PTree& t : plane_trees(S, 1, true)) out.push_back(text(t));
  return out;
}

inline void mirror(PTree& t) {
  std::reverse(t.kids.begin(), t.kids.end());
  for (PTree& k : t.kids) mirror(k);
}

// Every tree obtained by one flip at an internal vertex (the root only if allowed).
inline std::vector<PTree> single_flips(const PTree& t, bool root_flippable) {
  std::vector<PTree> out;
  if (t.kids.empty()) return out;
  if (root_flippable) {
    PTree m = t;
    mirror(m);
    out.push_back(std::move(m));
  }
  for (std::size_t i = 0; i < t.kids.size(); ++i)
    for (PTree& sub : single_flips(t.kids[i], true)) {
      PTree m = t;
      m.kids[i] = std::move(sub);
      out.push_back(std::move(m));
    }
  return out;
}

inline int internal_count(const PTree& t) {
  if (t.kids.empty()) return 0;
  int c = 1;
  for (const PTree& k : t.kids) c += internal_count(k);
  return c;
}

inline int leaf_count(const PTree& t) {
  if (t.kids.empty()) return 1;
  int c = 0;
  for (const PTree& k : t.kids) c += leaf_count(k);
  return c;
}

// One representative (least text) per flip orbit, found by breadth-first search.
inline std::vector<PTree> orbit_representatives(int n, int a, bool root_flippable) {
  std::vector<int> S(n);
  for (int i = 0; i < n; ++i) S[i] = i + 1;
  std::set<std::string> seen;
  std::vector<PTree> reps;
  for (const PTree& t : plane_trees(S, a, true)) {
    if (seen.count(text(t))) continue;
    std::vector<PTree> queue{t};
    seen.insert(text(t));
    PTree best = t;
    for (std::size_t i = 0; i < queue.size(); ++i) {
      if (text(queue[i]) < text(best)) best = queue[i];
      for (PTree& m : single_flips(queue[i], root_flippable))
        if (seen.insert(text(m)).second) queue.push_back(std::move(m));
    }
    reps.push_back(best);
  }
  return reps;
}

inline int dual_dim(const PTree& t, int n) { return internal_count(t) - 1 + n - leaf_count(t); }

inline std::vector<long long> f_vector(int n, int a, bool root_flippable) {
  std::vector<long long> f;
  for (const PTree& t : orbit_representatives(n, a, root_flippable)) {
    int d = dual_dim(t, n);
    if (static_cast<int>(f.size()) <= d) f.resize(d + 1, 0);
    ++f[d];
  }
  return f;
}

// Ordered set partitions of [m] into k blocks by inclusion-exclusion over surjections.
inline long long osp(int m, int k) {
  long long s = 0;
  for (int j = 0; j <= k; ++j) {
    long long p = 1;
    for (int i = 0; i < m; ++i) p *= (k - j);
    s += (j % 2 ? -1 : 1) * binomial(k, j) * p;
  }
  return s;
}

// a = n-1: every cell is a root with r >= 2 leaves; reversal never fixes a composition.
inline std::vector<long long> height_one_f_vector(int n, bool root_flippable) {
  std::vector<long long> f;
  for (int r = n; r >= 2; --r) f.push_back(root_flippable ? osp(n, r) / 2 : osp(n, r));
  return f;
}

// Order of the subgroup of S_n x Z/2 generated by the given elements (closure by BFS).
inline long long generated_order(int n, const std::vector<std::pair<Perm, int>>& gens) {
  std::set<std::pair<Perm, int>> seen{{perm_identity(n), 0}};
  std::vector<std::pair<Perm, int>> queue(seen.begin(), seen.end());
  for (std::size_t i = 0; i < queue.size(); ++i)
    for (const auto& [g, e] : gens) {
      std::pair<Perm, int> next{perm_compose(queue[i].first, g), queue[i].second ^ e};
      if (seen.insert(next).second) queue.push_back(next);
    }
  return static_cast<long long>(queue.size());
}

}  // namespace cactus::oracle

#pragma once

#include "cactus/groups.hpp"

#include <cstdlib>

namespace cactus {

enum class CosetStatus { complete, limit_exceeded };

struct CosetTable {
  CosetStatus status = CosetStatus::limit_exceeded;
  long long index = 0;                  // number of cosets when complete
  long long cosets_defined = 0;         // total cosets ever allocated
  std::vector<GenSym> generators;       // column order
  std::vector<std::vector<int>> rows;   // standardized; rows[c][x] = c.x (0-based)
};

// Thrown for presentations the enumerator cannot interpret (unknown generator, generator not
// declared an involution).
struct PresentationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

constexpr long long default_max_cosets = 1000000;

// CACTUS_CELLS_MAX_COSETS overrides the default limit when set to a positive integer.
inline long long max_cosets_from_env(long long fallback = default_max_cosets) {
  const char* v = std::getenv("CACTUS_CELLS_MAX_COSETS");
  if (!v || !*v) return fallback;
  char* end = nullptr;
  long long x = std::strtoll(v, &end, 10);
  if (*end || x < 1) throw DomainError("CACTUS_CELLS_MAX_COSETS must be a positive integer");
  return x;
}

namespace detail {

// Felsch-style enumeration for presentations whose generators are all involutions: each column
// is its own inverse, so c.x = d implies d.x = c.
class Enumerator {
 public:
  Enumerator(int gens, std::vector<std::vector<int>> rels, long long max_cosets)
      : ng_(gens), rels_(std::move(rels)), max_(max_cosets) {
    starting_.resize(ng_);
    for (const auto& r : rels_)
      for (std::size_t k = 0; k < r.size(); ++k) {
        std::vector<int> rot(r.begin() + static_cast<long>(k), r.end());
        rot.insert(rot.end(), r.begin(), r.begin() + static_cast<long>(k));
        starting_[rot[0]].push_back(std::move(rot));
      }
    new_coset();
  }

  bool run(const std::vector<std::vector<int>>& subgroup) {
    for (const auto& h : subgroup) {
      if (!scan_and_fill(0, h)) return false;
      process();
    }
    for (int c = 0; c < static_cast<int>(parent_.size()); ++c) {
      for (int x = 0; x < ng_; ++x) {
        if (!live(c)) break;
        if (at(c, x) >= 0) continue;
        if (!define(c, x)) return false;
        process();
      }
    }
    return true;
  }

  int live_count() const {
    int k = 0;
    for (std::size_t c = 0; c < parent_.size(); ++c) k += parent_[c] == static_cast<int>(c);
    return k;
  }

  long long allocated() const { return static_cast<long long>(parent_.size()); }

  // Renumbers live cosets by first appearance in a breadth-first scan from coset 0.
  std::vector<std::vector<int>> standardized() const {
    std::vector<int> order{0}, number(parent_.size(), -1);
    number[0] = 0;
    for (std::size_t k = 0; k < order.size(); ++k)
      for (int x = 0; x < ng_; ++x) {
        int d = at(order[k], x);
        if (number[d] < 0) {
          number[d] = static_cast<int>(order.size());
          order.push_back(d);
        }
      }
    std::vector<std::vector<int>> rows(order.size(), std::vector<int>(ng_));
    for (std::size_t k = 0; k < order.size(); ++k)
      for (int x = 0; x < ng_; ++x) rows[k][x] = number[at(order[k], x)];
    return rows;
  }

  bool consistent(const std::vector<std::vector<int>>& subgroup) const {
    auto trace = [&](int c, const std::vector<int>& w) {
      for (int x : w) {
        c = at(c, x);
        if (c < 0 || !live(c)) return -1;
      }
      return c;
    };
    for (std::size_t c = 0; c < parent_.size(); ++c) {
      if (!live(static_cast<int>(c))) continue;
      for (int x = 0; x < ng_; ++x) {
        int d = at(static_cast<int>(c), x);
        if (d < 0 || !live(d) || at(d, x) != static_cast<int>(c)) return false;
      }
      for (const auto& r : rels_)
        if (trace(static_cast<int>(c), r) != static_cast<int>(c)) return false;
    }
    for (const auto& h : subgroup)
      if (trace(0, h) != 0) return false;
    return true;
  }

 private:
  int ng_;
  std::vector<std::vector<int>> rels_;
  std::vector<std::vector<std::vector<int>>> starting_;  // cyclic conjugates by first letter
  long long max_;
  std::vector<int> table_;
  std::vector<int> parent_;
  std::vector<std::pair<int, int>> deductions_;

  int& at(int c, int x) { return table_[static_cast<std::size_t>(c) * ng_ + x]; }
  int at(int c, int x) const { return table_[static_cast<std::size_t>(c) * ng_ + x]; }
  bool live(int c) const { return parent_[c] == c; }

  int new_coset() {
    int c = static_cast<int>(parent_.size());
    parent_.push_back(c);
    table_.resize(table_.size() + ng_, -1);
    return c;
  }

  bool define(int c, int x) {
    if (allocated() >= max_) return false;
    int d = new_coset();
    at(c, x) = d;
    at(d, x) = c;
    deductions_.emplace_back(c, x);
    return true;
  }

  int rep(int c) {
    int r = c;
    while (parent_[r] != r) r = parent_[r];
    while (parent_[c] != r) {
      int next = parent_[c];
      parent_[c] = r;
      c = next;
    }
    return r;
  }

  void merge(int k, int l, std::vector<int>& queue) {
    int a = rep(k), b = rep(l);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent_[b] = a;
    queue.push_back(b);
  }

  void coincidence(int k, int l) {
    std::vector<int> queue;
    merge(k, l, queue);
    for (std::size_t i = 0; i < queue.size(); ++i) {
      int g = queue[i];
      for (int x = 0; x < ng_; ++x) {
        int d = at(g, x);
        if (d < 0) continue;
        if (at(d, x) == g) at(d, x) = -1;
        int mu = rep(g), nu = rep(d);
        if (at(mu, x) >= 0) {
          merge(nu, at(mu, x), queue);
        } else if (at(nu, x) >= 0) {
          merge(mu, at(nu, x), queue);
        } else {
          at(mu, x) = nu;
          at(nu, x) = mu;
          deductions_.emplace_back(mu, x);
        }
      }
    }
  }

  // Scans w at c; fills a single gap as a deduction or records a coincidence.
  void scan(int c, const std::vector<int>& w) {
    int f = c, i = 0, j = static_cast<int>(w.size()) - 1;
    while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
    if (i > j) {
      if (f != c) coincidence(f, c);
      return;
    }
    int b = c;
    while (j >= i && at(b, w[j]) >= 0) b = at(b, w[j--]);
    if (j < i) {
      coincidence(f, b);
    } else if (i == j) {
      at(f, w[i]) = b;
      at(b, w[i]) = f;
      deductions_.emplace_back(f, w[i]);
    }
  }

  bool scan_and_fill(int c, const std::vector<int>& w) {
    while (true) {
      int f = c, i = 0, j = static_cast<int>(w.size()) - 1;
      while (i <= j && at(f, w[i]) >= 0) f = at(f, w[i++]);
      if (i > j) {
        if (f != c) coincidence(f, c);
        return true;
      }
      int b = c;
      while (j >= i && at(b, w[j]) >= 0) b = at(b, w[j--]);
      if (j < i) {
        coincidence(f, b);
        return true;
      }
      if (i == j) {
        at(f, w[i]) = b;
        at(b, w[i]) = f;
        deductions_.emplace_back(f, w[i]);
        return true;
      }
      if (!define(f, w[i])) return false;
    }
  }

  void process() {
    while (!deductions_.empty()) {
      auto [c, x] = deductions_.back();
      deductions_.pop_back();
      if (!live(c)) continue;
      for (const auto& w : starting_[x]) {
        if (!live(c)) break;
        scan(c, w);
      }
      int d = at(c, x);
      if (d < 0 || !live(d)) continue;
      for (const auto& w : starting_[x]) {
        if (!live(d)) break;
        scan(d, w);
      }
    }
  }
};

inline std::vector<int> letters(const Word& w, const std::map<GenSym, int>& index) {
  std::vector<int> out;
  for (const Letter& l : w) {
    auto it = index.find(l.g);
    if (it == index.end()) throw PresentationError("word uses generator " + gen_name(l.g) + " outside the presentation");
    if (l.exp % 2 == 0) continue;
    if (!out.empty() && out.back() == it->second)
      out.pop_back();
    else
      out.push_back(it->second);
  }
  while (out.size() >= 2 && out.front() == out.back()) {
    out.erase(out.begin());
    out.pop_back();
  }
  return out;
}

}  // namespace detail

// Enumerates cosets of the subgroup generated by `subgroup` in the group presented by P.
inline CosetTable todd_coxeter(const Presentation& P, const std::vector<Word>& subgroup,
                               long long max_cosets = default_max_cosets) {
  if (max_cosets < 1) throw DomainError("todd_coxeter: maxCosets must be positive");
  std::map<GenSym, int> index;
  for (std::size_t i = 0; i < P.generators.size(); ++i)
    if (!index.emplace(P.generators[i], static_cast<int>(i)).second)
      throw PresentationError("duplicate generator " + gen_name(P.generators[i]));
  std::set<GenSym> involutions;
  std::vector<std::vector<int>> rels;
  for (const Word& w : P.relators) {
    if (w.size() == 2 && w[0].g == w[1].g && w[0].exp == w[1].exp) involutions.insert(w[0].g);
    std::vector<int> r = detail::letters(w, index);
    if (!r.empty()) rels.push_back(std::move(r));
  }
  for (GenSym g : P.generators)
    if (!involutions.count(g)) throw PresentationError("generator " + gen_name(g) + " is not declared an involution");
  std::vector<std::vector<int>> sub;
  for (const Word& w : subgroup) {
    std::vector<int> h = detail::letters(w, index);
    if (!h.empty()) sub.push_back(std::move(h));
  }
  detail::Enumerator e(static_cast<int>(P.generators.size()), rels, max_cosets);
  CosetTable t;
  t.generators = P.generators;
  bool done = e.run(sub);
  t.cosets_defined = e.allocated();
  if (!done) {
    t.status = CosetStatus::limit_exceeded;
    return t;
  }
  if (!e.consistent(sub)) throw std::logic_error("todd_coxeter: completed table is inconsistent");
  t.status = CosetStatus::complete;
  t.index = e.live_count();
  t.rows = e.standardized();
  return t;
}

}  // namespace cactus

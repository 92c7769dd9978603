#pragma once

#include "cactus/base.hpp"

#include <compare>
#include <map>
#include <set>
#include <sstream>

namespace cactus {

struct GenSym {
  int p = 0, q = 0;
  auto operator<=>(const GenSym&) const = default;
};

struct Letter {
  GenSym g;
  int exp = 1;
  auto operator<=>(const Letter&) const = default;
};

using Word = std::vector<Letter>;

enum class PresVariant { full, oriented };

struct Presentation {
  int n = 0, a = 0;
  PresVariant variant = PresVariant::full;
  bool classical = false;  // a in {1,2}: all s_{p,q}, no braid relators
  std::vector<GenSym> generators;
  std::vector<Word> relators;
};

inline std::string gen_name(GenSym g) { return "s_" + std::to_string(g.p) + "_" + std::to_string(g.q); }

inline std::string word_text(const Word& w) {
  if (w.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) s += ' ';
    s += gen_name(w[i].g);
    if (w[i].exp != 1) s += "^" + std::to_string(w[i].exp);
  }
  return s;
}

inline Word word(std::initializer_list<GenSym> gens) {
  Word w;
  for (GenSym g : gens) w.push_back({g, 1});
  return w;
}

inline GenSym sigma(int i) { return {i, i + 1}; }

// Whether s_{p,q} belongs to the alphabet of the stated presentation.
inline bool in_alphabet(GenSym g, int n, int a, PresVariant variant) {
  if (g.p < 1 || g.q > n || g.p >= g.q) return false;
  if (variant == PresVariant::oriented && g.p == 1 && g.q == n) return false;
  if (a <= 2) return true;
  return g.q - g.p == 1 || g.q - g.p >= a;
}

inline Presentation stated_presentation(int n, int a, PresVariant variant) {
  if (n < 3) throw DomainError("stated_presentation: n must be at least 3");
  if (a < 1 || a > n - 1) throw DomainError("stated_presentation: a must lie in 1..n-1");
  Presentation P;
  P.n = n;
  P.a = a;
  P.variant = variant;
  P.classical = a <= 2;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 1; q <= n; ++q)
      if (in_alphabet({p, q}, n, a, variant)) P.generators.push_back({p, q});
  auto present = [&](GenSym g) { return in_alphabet(g, n, a, variant); };
  for (GenSym g : P.generators) P.relators.push_back(word({g, g}));
  for (GenSym x : P.generators)
    for (GenSym y : P.generators)
      if (x.q < y.p) P.relators.push_back(word({x, y, x, y}));
  for (GenSym x : P.generators)
    for (GenSym y : P.generators) {
      if (!(x.p <= y.p && y.q <= x.q) || x == y) continue;
      GenSym mirror{x.p + x.q - y.q, x.p + x.q - y.p};
      if (present(mirror)) P.relators.push_back(word({x, y, x, mirror}));
    }
  if (a >= 3)
    for (int i = 1; i + 2 <= n; ++i) {
      Word w;
      for (int k = 0; k < 3; ++k) {
        w.push_back({sigma(i), 1});
        w.push_back({sigma(i + 1), 1});
      }
      P.relators.push_back(w);
    }
  return P;
}

// Evaluates under s_{p,q} -> w_{p,q}, composing left to right as functions: (gh)(x) = g(h(x)).
inline Perm to_sym(const Word& w, int n) {
  Perm r = perm_identity(n);
  for (const Letter& l : w) {
    if (l.g.q > n) throw DomainError("to_sym: generator outside [n]");
    r = perm_compose(r, interval_reversal(n, l.g.p, l.g.q));  // involution: exponent irrelevant
  }
  return r;
}

// Bubble-sort reduced word (s_p)(s_{p+1} s_p)(s_{p+2} s_{p+1} s_p)... for w_{p,q}.
inline Word reversal_word(int p, int q) {
  Word w;
  for (int top = p; top < q; ++top)
    for (int i = top; i >= p; --i) w.push_back({sigma(i), 1});
  return w;
}

inline Word quotient_image(const Word& w, int a) {
  if (a < 3) throw DomainError("quotient_image: a must be at least 3");
  Word out;
  for (const Letter& l : w) {
    if (l.g.q - l.g.p + 1 > a) {
      out.push_back(l);
      continue;
    }
    Word r = reversal_word(l.g.p, l.g.q);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

struct BraidRelator {
  int p = 0, q = 0;
  int family = 0;  // 1: s_pq s_p,q-1 s_{q-1}..s_p ; 2: s_pq s_{q-1}..s_p s_p+1,q
  Word relator;
  Word image;
};

namespace detail {

inline Word descending_sigmas(int p, int q) {
  Word w;
  for (int i = q - 1; i >= p; --i) w.push_back({sigma(i), 1});
  return w;
}

// s_{i,i} is the identity and contributes no letter.
inline void push_gen(Word& w, int p, int q) {
  if (p < q) w.push_back({{p, q}, 1});
}

}  // namespace detail

inline std::vector<BraidRelator> generalized_braid_relators(int n, int a) {
  if (a < 3) throw DomainError("generalized_braid_relators: a must be at least 3");
  std::vector<BraidRelator> out;
  for (int p = 1; p <= n; ++p)
    for (int q = p + 2; q <= n && q - p <= a - 1; ++q) {
      Word down = detail::descending_sigmas(p, q);
      Word alpha;
      detail::push_gen(alpha, p, q);
      detail::push_gen(alpha, p, q - 1);
      alpha.insert(alpha.end(), down.begin(), down.end());
      Word beta;
      detail::push_gen(beta, p, q);
      beta.insert(beta.end(), down.begin(), down.end());
      detail::push_gen(beta, p + 1, q);
      out.push_back({p, q, 1, alpha, quotient_image(alpha, a)});
      out.push_back({p, q, 2, beta, quotient_image(beta, a)});
    }
  return out;
}

// Exponents normalized to +1 (all generators are involutions), adjacent equal letters
// cancelled, cyclically reduced, then the least rotation of the word or its reverse.
inline Word canonical_relator(const Word& w) {
  std::vector<GenSym> s;
  for (const Letter& l : w) {
    if (l.exp % 2 == 0) continue;
    if (!s.empty() && s.back() == l.g)
      s.pop_back();
    else
      s.push_back(l.g);
  }
  std::size_t lo = 0, hi = s.size();
  while (hi - lo >= 2 && s[lo] == s[hi - 1]) {
    ++lo;
    --hi;
  }
  std::vector<GenSym> core(s.begin() + static_cast<long>(lo), s.begin() + static_cast<long>(hi));
  std::vector<GenSym> best = core;
  for (int dir = 0; dir < 2; ++dir) {
    std::vector<GenSym> base = core;
    if (dir) std::reverse(base.begin(), base.end());
    for (std::size_t r = 0; r < base.size(); ++r) {
      std::vector<GenSym> rot(base.begin() + static_cast<long>(r), base.end());
      rot.insert(rot.end(), base.begin(), base.begin() + static_cast<long>(r));
      if (rot < best) best = rot;
    }
  }
  Word out;
  for (GenSym g : best) out.push_back({g, 1});
  return out;
}

// Nontrivial canonical relators as a sorted multiset.
inline std::vector<Word> canonical_relators(const Presentation& P) {
  std::vector<Word> out;
  for (const Word& w : P.relators) {
    Word c = canonical_relator(w);
    if (!c.empty()) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline bool presentations_equal(const Presentation& x, const Presentation& y) {
  std::set<GenSym> gx(x.generators.begin(), x.generators.end()), gy(y.generators.begin(), y.generators.end());
  return gx == gy && canonical_relators(x) == canonical_relators(y);
}

inline GenSym flip_generator(GenSym g, int n) { return {n + 1 - g.q, n + 1 - g.p}; }

inline Presentation extend_by_flip(const Presentation& P) {
  if (P.variant != PresVariant::oriented) throw DomainError("extend_by_flip: presentation must be oriented");
  std::set<GenSym> alphabet(P.generators.begin(), P.generators.end());
  GenSym alpha{1, P.n};
  if (alphabet.count(alpha)) throw DomainError("extend_by_flip: s_{1,n} already present");
  for (GenSym g : P.generators)
    if (!alphabet.count(flip_generator(g, P.n))) throw DomainError("extend_by_flip: alphabet not closed under the flip");
  Presentation F = P;
  F.variant = PresVariant::full;
  F.generators.push_back(alpha);
  F.relators.push_back(word({alpha, alpha}));
  for (GenSym g : P.generators) F.relators.push_back(Word{{alpha, 1}, {g, 1}, {alpha, 1}, {flip_generator(g, P.n), -1}});
  return F;
}

inline std::string format_text(const Presentation& P) {
  std::ostringstream os;
  os << "generators:";
  for (GenSym g : P.generators) os << ' ' << gen_name(g);
  os << '\n';
  for (const Word& w : P.relators) os << word_text(w) << '\n';
  return os.str();
}

inline std::string format_gap(const Presentation& P) {
  std::ostringstream os;
  os << "F := FreeGroup(";
  for (std::size_t i = 0; i < P.generators.size(); ++i) os << (i ? ", " : "") << '"' << gen_name(P.generators[i]) << '"';
  os << ");;\n";
  std::map<GenSym, std::size_t> index;
  for (std::size_t i = 0; i < P.generators.size(); ++i) index[P.generators[i]] = i + 1;
  os << "rels := [";
  for (std::size_t r = 0; r < P.relators.size(); ++r) {
    os << (r ? ",\n  " : "\n  ");
    const Word& w = P.relators[r];
    for (std::size_t i = 0; i < w.size(); ++i) {
      os << (i ? "*" : "") << "F." << index.at(w[i].g);
      if (w[i].exp != 1) os << "^" << w[i].exp;
    }
  }
  os << "\n];;\nG := F / rels;;\n";
  return os.str();
}

}  // namespace cactus

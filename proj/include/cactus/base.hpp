#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cactus {

using Rational = boost::multiprecision::cpp_rational;

// Input that does not describe a well-formed object (bad syntax, overlapping labels, ...).
struct StructuralError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Well-formed input outside an operation's domain.
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Rational parse_rational(std::string_view s) {
  std::string t(s);
  t.erase(std::remove_if(t.begin(), t.end(), [](unsigned char c) { return std::isspace(c); }), t.end());
  if (t.empty()) throw StructuralError("empty rational");
  std::size_t slash = t.find('/');
  auto valid_int = [](std::string_view v) {
    std::size_t i = (!v.empty() && v[0] == '-') ? 1 : 0;
    if (i == v.size()) return false;
    for (; i < v.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(v[i]))) return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!valid_int(t)) throw StructuralError("invalid rational '" + t + "'");
    return Rational(boost::multiprecision::cpp_int(t));
  }
  std::string num = t.substr(0, slash), den = t.substr(slash + 1);
  if (!valid_int(num) || !valid_int(den)) throw StructuralError("invalid rational '" + t + "'");
  boost::multiprecision::cpp_int d(den);
  if (d == 0) throw StructuralError("zero denominator in '" + t + "'");
  return Rational(boost::multiprecision::cpp_int(num)) / Rational(d);
}

inline std::string to_string(const Rational& r) { return r.str(); }

// Permutations of [n] in one-line form: p[i-1] is the image of i.
using Perm = std::vector<int>;

inline Perm perm_identity(int n) {
  Perm p(n);
  std::iota(p.begin(), p.end(), 1);
  return p;
}

// (g*h)(x) = g(h(x))
inline Perm perm_compose(const Perm& g, const Perm& h) {
  Perm r(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) r[i] = g[h[i] - 1];
  return r;
}

inline Perm perm_inverse(const Perm& g) {
  Perm r(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) r[g[i] - 1] = static_cast<int>(i) + 1;
  return r;
}

// w_{p,q}: reverses the interval p..q.
inline Perm interval_reversal(int n, int p, int q) {
  Perm r = perm_identity(n);
  for (int i = p; i <= q; ++i) r[i - 1] = p + q - i;
  return r;
}

// Returns {p,q} if g = w_{p,q} for some p < q, else {0,0}.
inline std::pair<int, int> as_interval_reversal(const Perm& g) {
  int n = static_cast<int>(g.size());
  int p = 0, q = 0;
  for (int i = 1; i <= n; ++i)
    if (g[i - 1] != i) {
      if (!p) p = i;
      q = i;
    }
  if (!p || p == q) return {0, 0};
  for (int i = p; i <= q; ++i)
    if (g[i - 1] != p + q - i) return {0, 0};
  return {p, q};
}

inline bool is_permutation_of(const std::vector<int>& v, int n) {
  if (static_cast<int>(v.size()) != n) return false;
  std::vector<char> seen(n + 1, 0);
  for (int x : v) {
    if (x < 1 || x > n || seen[x]) return false;
    seen[x] = 1;
  }
  return true;
}

inline long long factorial(int n) {
  long long f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

inline long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace cactus

#pragma once

// Acceptance suite shared by the acceptance test binary and `cactus verify-all`.

#include "cactus/cactus.hpp"
#include "cactus/oracle.hpp"

#include <chrono>
#include <random>
#include <sstream>

namespace cactus::verify {

enum class Status { pass, fail, inconclusive };

inline const char* status_name(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "inconclusive";
  }
}

struct Check {
  int id = 0;
  std::string name;
  Status status = Status::fail;
  std::string details;
  double seconds = 0;
  double limit_seconds = 0;
};

struct Options {
  int n_max = 6;
  std::uint64_t seed = 20240611;
  bool inject_fault = false;  // corrupts one derived relator; exactly one check must fail
  long long max_cosets = default_max_cosets;
};

// Criteria stated up to n = 7 run one size past n_max.
inline int cap(const Options& o, int stated) { return std::min(stated, stated > 6 ? o.n_max + 1 : o.n_max); }

namespace detail {

struct Outcome {
  Status status = Status::pass;
  std::ostringstream log;

  void fail(const std::string& what) {
    if (status != Status::fail) log << "FAILED: ";
    else log << "; ";
    status = Status::fail;
    log << what;
  }
  void expect(bool ok, const std::string& what) {
    if (!ok) fail(what);
  }
};

inline std::string join(const std::vector<long long>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string join(const std::vector<Rational>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
  return s + ")";
}

inline Rational random_gap(std::mt19937_64& rng, bool allow_zero) {
  int k = std::uniform_int_distribution<int>(allow_zero ? 0 : 1, 6)(rng);
  return Rational(k, 7);
}

// Random point of Pi_m: convex combination of a few vertices of a random face.
inline PermPoint random_point(int m, std::mt19937_64& rng) {
  Perm order = perm_identity(m);
  std::shuffle(order.begin(), order.end(), rng);
  Composition parts{{}};
  for (int k = 0; k < m; ++k) {
    if (k && std::bernoulli_distribution(0.4)(rng)) parts.emplace_back();
    parts.back().push_back(order[k]);
  }
  int count = std::uniform_int_distribution<int>(1, 4)(rng);
  PermPoint x(m, Rational(0));
  Rational total = 0;
  for (int c = 0; c < count; ++c) {
    int w = std::uniform_int_distribution<int>(1, 9)(rng);
    int before = 0;
    for (LeafLabel part : parts) {
      std::shuffle(part.begin(), part.end(), rng);
      for (std::size_t i = 0; i < part.size(); ++i) x[part[i] - 1] += w * (before + static_cast<int>(i) + 1);
      before += static_cast<int>(part.size());
    }
    total += w;
  }
  for (Rational& v : x) v /= total;
  return x;
}

// A curve in the cell of a height-one tree whose last part is {n}: parts separated by unit
// gaps, points inside a part at random gaps in [0,1), shuffled.
inline MarkedCurve sample_height_one(const Composition& parts, std::mt19937_64& rng) {
  int n = 0;
  for (const LeafLabel& p : parts) n += static_cast<int>(p.size());
  std::vector<Rational> pos(n);
  Rational cursor = 0;
  for (std::size_t j = 0; j < parts.size(); ++j) {
    LeafLabel part = parts[j];
    std::shuffle(part.begin(), part.end(), rng);
    for (std::size_t i = 0; i < part.size(); ++i) {
      if (j || i) cursor += i ? random_gap(rng, true) : Rational(1);
      pos[part[i] - 1] = cursor;
    }
  }
  return smooth_curve(pos);
}

inline void c1_distance(const Options&, Outcome& out) {
  std::vector<Rational> positions{0, 1, 2, 4, 5, Rational(13, 2)};
  std::vector<Rational> d;
  for (std::size_t i = 1; i < positions.size(); ++i) d.push_back(positions[i] - positions[i - 1]);
  std::string drawn = serialize(distance_tree({1, 2, 3, 4, 5, 6}, d));
  out.expect(drawn == "(({1} {2} {3}) (({4} {5}) {6}))", "distance tree " + drawn);
  MarkedCurve c = smooth_curve(positions);
  Tree little = tau_little(c);
  out.expect(serialize(little) == "*(({1} {2} {3}) (({4} {5}) {6}))", "refined tree " + serialize(little));
  out.expect(canonical_key(tau_big(c)) == canonical_key(with_variant(parse_tree("((1 2 3)((4 5) 6))"), Variant::stable)),
             "stable tree " + serialize(tau_big(c)));
  std::vector<Rational> r;
  for (const EdgeValue& e : theta_tau(c, little)) r.push_back(e.value);
  std::vector<Rational> want{Rational(1, 2), Rational(3, 4), Rational(2, 3)};
  out.expect(r == want, "theta values " + join(r));
  out.expect(curves_equal(phi_tau(little, want), c), "phi_tau does not invert theta_tau");
  out.log << "tree " << drawn << ", theta " << join(r);
}

inline void c2_compression(const Options& o, Outcome& out) {
  Tree big = parse_tree("((1 2 3)((4 5)(6 7 8 9)))");
  std::string mid = serialize(compress(big, 3));
  std::string right = serialize(compress_between(compress(big, 3), 3, 7));
  out.expect(mid == "({1,2,3} ({4,5} ({6} {7} {8} {9})))", "compress_3 gave " + mid);
  out.expect(right == "({1,2,3} {4,5,6,7,8,9})", "compress_{7,3} gave " + right);
  out.expect(serialize(compress(big, 7)) == right, "compress_7 differs from compress_{7,3} o compress_3");
  long long checked = 0;
  for (int n = 2; n <= cap(o, 6); ++n)
    for (const std::string& text : oracle::plain_tree_texts(n)) {
      Tree t = parse_tree(text);
      for (int a = 1; a <= n - 1; ++a) {
        Tree ta = compress(t, a);
        for (int b = a; b <= n - 1; ++b) {
          ++checked;
          if (serialize(compress(t, b)) != serialize(compress_between(ta, a, b)))
            out.fail("composition law at " + serialize(t) + " a=" + std::to_string(a) + " b=" + std::to_string(b));
        }
      }
    }
  out.log << "nine-point example exact; composition law on " << checked << " (tree, a, b) triples";
}

inline void c3_fvectors(const Options& o, Outcome& out) {
  struct Case {
    int n, a;
    std::vector<long long> f;
    long long chi;
  };
  std::vector<Case> cases{{4, 3, {12, 18, 7}, 1}, {5, 4, {60, 120, 75, 15}, 0}, {4, 1, {12, 30, 15}, -3}};
  for (const Case& k : cases) {
    if (k.n > o.n_max) continue;
    // oracles before the main build
    std::vector<long long> oracle_f = k.a == k.n - 1 ? oracle::height_one_f_vector(k.n, true) : oracle::f_vector(k.n, k.a, true);
    out.expect(oracle_f == k.f, "oracle f-vector " + join(oracle_f) + " for n=" + std::to_string(k.n));
    CellComplex cx = build_complex(k.n, k.a, Cover::base);
    std::vector<long long> f = cx.f_vector();
    long long chi = euler_characteristic(cx);
    out.expect(f == k.f, "f-vector " + join(f) + " for n=" + std::to_string(k.n) + " a=" + std::to_string(k.a));
    out.expect(chi == k.chi, "chi " + std::to_string(chi) + " for n=" + std::to_string(k.n) + " a=" + std::to_string(k.a));
    out.log << "(n=" << k.n << ",a=" << k.a << ") " << join(f) << " chi=" << chi << "; ";
  }
}

inline void c4_dual_standard(const Options& o, Outcome& out) {
  for (int n = 2; n <= cap(o, 6); ++n)
    for (int a = 1; a <= n - 1; ++a) {
      long long dual = euler_characteristic(build_complex(n, a, Cover::base));
      long long standard = euler_characteristic_standard(n, a);
      out.expect(dual == standard, "n=" + std::to_string(n) + " a=" + std::to_string(a) + ": " + std::to_string(dual) +
                                       " vs " + std::to_string(standard));
      if (n == cap(o, 6)) out.log << "chi(n=" << n << ",a=" << a << ")=" << dual << " ";
    }
}

inline void c5_closure(const Options& o, Outcome& out) {
  long long trees = 0;
  for (int n = 2; n <= cap(o, 5); ++n)
    for (int a = 1; a <= n - 1; ++a)
      for (const Tree& t : enumerate_a_stable(n, a, Variant::stable)) {
        ++trees;
        FaceReport r = verify_closure_faces(t, n, a);
        if (!r.match()) out.fail(serialize(t) + " closure " + join(r.actual) + " expected " + join(r.expected));
      }
  FaceReport hex = verify_closure_faces(parse_tree("({1,2,3} {4})", Variant::stable), 4, 3);
  out.expect(hex.actual == std::vector<long long>{6, 6, 1}, "hexagon closure " + join(hex.actual));
  out.log << trees << " trees; hexagon " << join(hex.actual);
}

inline void c6_orders(const Options& o, Outcome& out) {
  for (int n = 4; n <= cap(o, 6); ++n) {
    Presentation P = stated_presentation(n, n - 1, PresVariant::full);
    CosetTable whole = todd_coxeter(P, {}, o.max_cosets);
    std::vector<Word> sigmas;
    for (int i = 1; i < n; ++i) sigmas.push_back(word({sigma(i)}));
    CosetTable sub = todd_coxeter(P, sigmas, o.max_cosets);
    bool ok = whole.status == CosetStatus::complete && whole.index == 2 * factorial(n);
    out.expect(ok, "order of J_" + std::to_string(n) + " is not " + std::to_string(2 * factorial(n)));
    out.expect(sub.status == CosetStatus::complete && sub.index == 2, "index of the sigma subgroup for n=" + std::to_string(n));
    out.log << "n=" << n << ": order " << whole.index << ", index " << sub.index << "; ";
  }
}

inline void c7_round_trip(const Options& o, Outcome& out) {
  bool injected = false;
  for (int n = 3; n <= cap(o, 6); ++n)
    for (int a = 1; a <= n - 1; ++a) {
      CellComplex cx = build_complex(n, a, Cover::double_cover, 2);
      Presentation D = derive_presentation(cx);
      if (o.inject_fault && !injected && D.relators.size() > D.generators.size()) {
        D.relators.back().back().g = D.relators.back().front().g;
        injected = true;
      }
      Presentation S = stated_presentation(n, a, PresVariant::oriented);
      std::string at = " (n=" + std::to_string(n) + ", a=" + std::to_string(a) + ")";
      out.expect(presentations_equal(D, S), "derived presentation differs from the stated one" + at);
      out.expect(presentations_equal(extend_by_flip(S), stated_presentation(n, a, PresVariant::full)),
                 "extend_by_flip differs from the full presentation" + at);
    }
  out.log << "derived == stated and flip extension == full for 3 <= n <= " << cap(o, 6);
}

inline void c8_soundness(const Options& o, Outcome& out) {
  long long words = 0;
  auto check = [&](const Word& w, int n, const std::string& what) {
    ++words;
    if (to_sym(w, n) != perm_identity(n)) out.fail(what + ": " + word_text(w));
  };
  for (int n = 3; n <= cap(o, 7); ++n) {
    Presentation classical = stated_presentation(n, 1, PresVariant::full);
    for (int a = 1; a <= n - 1; ++a) {
      for (PresVariant v : {PresVariant::full, PresVariant::oriented})
        for (const Word& w : stated_presentation(n, a, v).relators) check(w, n, "relator");
      if (a < 3) continue;
      for (const Word& w : classical.relators) check(quotient_image(w, a), n, "quotient image");
      for (const BraidRelator& b : generalized_braid_relators(n, a)) {
        check(b.relator, n, "generalized braid relator");
        for (const Letter& l : b.image)
          if (l.g.q - l.g.p != 1) out.fail("braid image uses a non-adjacent generator: " + word_text(b.image));
      }
    }
  }
  out.log << words << " words evaluate to the identity, n <= " << cap(o, 7);
}

inline void c9_homeomorphism(const Options& o, Outcome& out) {
  std::mt19937_64 rng(o.seed);
  long long points = 0, curves = 0;
  for (int n = 3; n <= cap(o, 6); ++n) {
    for (int k = 0; k < 200; ++k) {
      PermPoint x = random_point(n - 1, rng);
      if (!in_permutahedron(x)) {
        out.fail("sampler produced a point outside the permutahedron " + join(x));
        continue;
      }
      ++points;
      PermPoint back = theta(phi(x, n));
      if (back != x) out.fail("theta(phi(x)) = " + join(back) + " for x = " + join(x));
    }
    for (const Cell& cell : build_complex(n, n - 1, Cover::base).cells) {
      Composition parts = cell.composition;
      if (parts.back() != LeafLabel{n}) std::reverse(parts.begin(), parts.end());
      if (parts.back() != LeafLabel{n}) continue;  // not in the closed cell of ({1..n-1},{n})
      for (int k = 0; k < 3; ++k) {
        MarkedCurve c = sample_height_one(parts, rng);
        ++curves;
        if (canonical_key(tau_big_a(c, n - 1)) != cell.key) out.fail("sampled curve left its cell " + cell.key);
        if (!curves_equal(phi(theta(c), n), c)) out.fail("phi(theta(c)) != c in cell " + cell.key);
      }
    }
  }
  Composition A{{1, 3}, {2, 5, 6}, {4}, {7, 8}};
  std::vector<Rational> pos(9);
  for (const SpecialPoint& p : phi(centroid(A, 8), 9).root.points)
    for (int i : p.labels) pos[i - 1] = p.pos;
  std::vector<Rational> want{0, 1, 0, 2, 1, 1, 3, 3, 4};
  out.expect(pos == want, "phi of the face centroid gave " + join(pos));
  out.log << points << " points, " << curves << " curves; centroid example " << join(pos);
}

inline void c10_zero_cells(const Options& o, Outcome& out) {
  for (int n = 2; n <= cap(o, 7); ++n) {
    long long base = static_cast<long long>(enumerate_a_stable(n, n - 1, Variant::stable, 0).size());
    long long dbl = static_cast<long long>(enumerate_a_stable(n, n - 1, Variant::double_cover, 0).size());
    std::string at = " for n=" + std::to_string(n);
    out.expect(base == factorial(n) / 2, "base 0-cells " + std::to_string(base) + at);
    out.expect(dbl == factorial(n), "double-cover 0-cells " + std::to_string(dbl) + at);
    if (n < 3) continue;
    for (Cover cover : {Cover::base, Cover::double_cover}) {
      OrbitReport r = zero_cell_orbit_check(build_complex(n, n - 1, cover, 0));
      out.expect(r.pass(), std::string(cover == Cover::base ? "base" : "double cover") + " action" + at);
    }
    out.log << "n=" << n << ": " << base << "/" << dbl << " ";
  }
}

inline void c11_infinite(const Options& o, Outcome& out) {
  CosetTable t = todd_coxeter(stated_presentation(4, 1, PresVariant::full), {}, o.max_cosets);
  out.expect(t.status == CosetStatus::limit_exceeded, "classical J_4 reported finite order " + std::to_string(t.index));
  out.log << "limitExceeded after " << t.cosets_defined << " cosets (inconclusive, as required)";
}

}  // namespace detail

struct Criterion {
  int id;
  const char* name;
  double limit_seconds;
  void (*run)(const Options&, detail::Outcome&);
};

inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all{
      {1, "distance algorithm fidelity", 1, detail::c1_distance},
      {2, "compression fidelity", 60, detail::c2_compression},
      {3, "f-vectors and Euler characteristics", 60, detail::c3_fvectors},
      {4, "dual/standard Euler characteristic", 300, detail::c4_dual_standard},
      {5, "closure equals polytope faces", 300, detail::c5_closure},
      {6, "group orders by coset enumeration", 60, detail::c6_orders},
      {7, "presentation round trip", 300, detail::c7_round_trip},
      {8, "relator soundness in S_n", 60, detail::c8_soundness},
      {9, "permutahedron homeomorphism", 60, detail::c9_homeomorphism},
      {10, "0-cell counts and S_n action", 60, detail::c10_zero_cells},
      {11, "infinite classical case", 60, detail::c11_infinite},
  };
  return all;
}

inline Check run_criterion(const Criterion& c, const Options& o) {
  Check out;
  out.id = c.id;
  out.name = c.name;
  out.limit_seconds = c.limit_seconds;
  detail::Outcome oc;
  auto start = std::chrono::steady_clock::now();
  try {
    c.run(o, oc);
  } catch (const std::exception& e) {
    oc.fail(std::string("exception: ") + e.what());
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  out.status = oc.status;
  out.details = oc.log.str();
  if (out.status != Status::fail && out.seconds >= out.limit_seconds) {
    out.status = Status::fail;
    out.details += "; exceeded the time limit";
  }
  return out;
}

inline std::vector<Check> run_all(const Options& o) {
  std::vector<Check> out;
  for (const Criterion& c : criteria()) out.push_back(run_criterion(c, o));
  return out;
}

inline std::string summary_line(const Check& c) {
  std::ostringstream os;
  os << (c.status == Status::fail ? "FAIL" : "PASS") << " criterion " << c.id << ": " << c.name << " ("
     << std::fixed;
  os.precision(3);
  os << c.seconds << "s, limit " << static_cast<int>(c.limit_seconds) << "s) " << c.details;
  return os.str();
}

}  // namespace cactus::verify

#pragma once

#include "cactus/curve.hpp"
#include "cactus/enumerate.hpp"

namespace cactus {

using PermPoint = std::vector<Rational>;

struct Face {
  Composition parts;
  int dim = 0;
  PermPoint centroid;
};

// Part j gets the average of its rank block: (s_{j-1} + 1 + s_j) / 2.
inline PermPoint centroid(const Composition& parts, int m) {
  PermPoint o(m);
  int before = 0;
  for (const LeafLabel& part : parts) {
    int size = static_cast<int>(part.size());
    Rational v = Rational(2 * before + 1 + size) / 2;
    for (int i : part) o[i - 1] = v;
    before += size;
  }
  return o;
}

// B refines A: every part of A is a union of consecutive parts of B, in order.
inline bool refines(const Composition& B, const Composition& A) {
  std::size_t j = 0;
  for (const LeafLabel& part : A) {
    LeafLabel acc;
    while (acc.size() < part.size() && j < B.size()) {
      acc.insert(acc.end(), B[j].begin(), B[j].end());
      ++j;
    }
    std::sort(acc.begin(), acc.end());
    if (acc != part) return false;
  }
  return j == B.size();
}

inline std::vector<Face> face_lattice(int m) {
  if (m < 1) throw DomainError("face_lattice: m must be positive");
  std::vector<Face> faces;
  for (Composition& c : ordered_set_partitions(m, m)) {
    int dim = m - static_cast<int>(c.size());
    PermPoint o = centroid(c, m);
    faces.push_back({std::move(c), dim, std::move(o)});
  }
  std::stable_sort(faces.begin(), faces.end(), [](const Face& x, const Face& y) { return x.dim < y.dim; });
  return faces;
}

inline bool in_permutahedron(const PermPoint& x) {
  int m = static_cast<int>(x.size());
  if (m < 1) return false;
  PermPoint s = x;
  std::sort(s.begin(), s.end());
  Rational prefix = 0;
  for (int k = 1; k <= m; ++k) {
    prefix += s[k - 1];
    if (prefix < Rational(k * (k + 1) / 2)) return false;
  }
  return prefix == Rational(m * (m + 1) / 2);
}

// Tight sets are prefixes of the ascending order; they cut x into its minimal face.
inline Composition minimal_face(const PermPoint& x) {
  if (!in_permutahedron(x)) throw DomainError("point does not lie in the permutahedron");
  int m = static_cast<int>(x.size());
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return x[i - 1] < x[j - 1]; });
  Composition parts;
  LeafLabel part;
  Rational prefix = 0;
  for (int k = 1; k <= m; ++k) {
    prefix += x[order[k - 1] - 1];
    part.push_back(order[k - 1]);
    if (prefix == Rational(k * (k + 1) / 2)) {
      std::sort(part.begin(), part.end());
      parts.push_back(std::move(part));
      part.clear();
    }
  }
  return parts;
}

struct StarForm {
  Composition face;
  bool vertex = false;
  Rational t;      // radial parameter; 0 at the centroid
  PermPoint boundary;  // y with x = t*y + (1-t)*centroid, on the relative boundary of the face
};

inline StarForm star_decompose(const PermPoint& x) {
  StarForm sf;
  sf.face = minimal_face(x);
  int m = static_cast<int>(x.size());
  if (static_cast<int>(sf.face.size()) == m) {
    sf.vertex = true;
    sf.t = 1;
    sf.boundary = x;
    return sf;
  }
  PermPoint o = centroid(sf.face, m);
  // Within a part A_j, a proper subset S stays feasible iff sum_S u / t >= -|S|(|A_j|-|S|)/2,
  // u = x - o; the worst S of each size is the prefix of ascending u.
  Rational t = 0;
  for (const LeafLabel& part : sf.face) {
    std::vector<Rational> u;
    for (int i : part) u.push_back(x[i - 1] - o[i - 1]);
    std::sort(u.begin(), u.end());
    int size = static_cast<int>(part.size());
    Rational prefix = 0;
    for (int k = 1; k < size; ++k) {
      prefix += u[k - 1];
      Rational bound = -prefix / (Rational(k * (size - k)) / 2);
      if (bound > t) t = bound;
    }
  }
  sf.t = t;
  if (t == 0) return sf;
  sf.boundary.resize(m);
  for (int i = 0; i < m; ++i) sf.boundary[i] = o[i] + (x[i] - o[i]) / t;
  return sf;
}

namespace detail {

// Positions of marked points 1..n (n = m+1), leftmost at 0, x_n rightmost at unit gap.
inline std::vector<Rational> phi_positions(const PermPoint& x) {
  int m = static_cast<int>(x.size());
  StarForm sf = star_decompose(x);
  std::vector<Rational> pos(m + 1);
  if (sf.vertex) {
    for (int i = 0; i < m; ++i) pos[i] = x[i] - 1;
    pos[m] = m;
    return pos;
  }
  std::vector<int> part_of(m + 1);
  for (std::size_t j = 0; j < sf.face.size(); ++j)
    for (int i : sf.face[j]) part_of[i] = static_cast<int>(j);
  if (sf.t == 0) {
    for (int i = 1; i <= m; ++i) pos[i - 1] = part_of[i];
    pos[m] = static_cast<int>(sf.face.size());
    return pos;
  }
  std::vector<Rational> inner = phi_positions(sf.boundary);
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return inner[i - 1] < inner[j - 1]; });
  Rational cursor = 0;
  pos[order[0] - 1] = 0;
  for (int k = 1; k < m; ++k) {
    int prev = order[k - 1], cur = order[k];
    Rational gap = inner[cur - 1] - inner[prev - 1];
    if (part_of[prev] == part_of[cur]) {
      gap *= sf.t;
    } else if (gap != 1 || part_of[prev] > part_of[cur]) {
      throw std::logic_error("phi: boundary curve violates the face condition");
    }
    cursor += gap;
    pos[cur - 1] = cursor;
  }
  pos[m] = cursor + 1;
  return pos;
}

inline PermPoint theta_point(const std::vector<Rational>& pos) {
  int m = static_cast<int>(pos.size()) - 1;
  std::vector<int> order(m);
  std::iota(order.begin(), order.end(), 1);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return pos[i - 1] < pos[j - 1]; });
  Composition parts;
  LeafLabel part{order[0]};
  Rational t = 0;
  bool any_below = false;
  for (int k = 1; k < m; ++k) {
    Rational d = pos[order[k] - 1] - pos[order[k - 1] - 1];
    if (d == 1) {
      std::sort(part.begin(), part.end());
      parts.push_back(std::move(part));
      part.clear();
    } else {
      any_below = true;
      if (d > t) t = d;
    }
    part.push_back(order[k]);
  }
  std::sort(part.begin(), part.end());
  parts.push_back(std::move(part));
  if (!any_below) {
    PermPoint v(m);
    for (int k = 1; k <= m; ++k) v[order[k - 1] - 1] = k;
    return v;
  }
  PermPoint o = centroid(parts, m);
  if (t == 0) return o;
  std::vector<Rational> scaled(m + 1);
  Rational cursor = 0;
  scaled[order[0] - 1] = 0;
  for (int k = 1; k < m; ++k) {
    Rational d = pos[order[k] - 1] - pos[order[k - 1] - 1];
    cursor += std::min<Rational>(Rational(1), d / t);
    scaled[order[k] - 1] = cursor;
  }
  scaled[m] = cursor + 1;
  PermPoint y = theta_point(scaled);
  PermPoint x(m);
  for (int i = 0; i < m; ++i) x[i] = t * y[i] + (1 - t) * o[i];
  return x;
}

}  // namespace detail

inline MarkedCurve phi(const PermPoint& x, int n) {
  if (static_cast<int>(x.size()) != n - 1) throw DomainError("phi: point must have n-1 coordinates");
  if (n < 2) throw DomainError("phi: n must be at least 2");
  return smooth_curve(detail::phi_positions(x));
}

// Inverse of phi on the closed cell of the two-leaf tree ({1..n-1},{n}).
inline PermPoint theta(const MarkedCurve& c) {
  int n = check_curve(c, std::max(1, curve_size(c) - 1));
  if (c.root.points.size() < 2) throw DomainError("theta: degenerate curve");
  for (const SpecialPoint& p : c.root.points)
    if (p.is_node()) throw DomainError("theta: curve must be smooth");
  std::vector<Rational> pos(n);
  for (const SpecialPoint& p : c.root.points)
    for (int i : p.labels) pos[i - 1] = p.pos;
  // Orientation is not part of an unoriented curve: put x_n on the right.
  const SpecialPoint& first = c.root.points.front();
  const SpecialPoint& last = c.root.points.back();
  bool n_first = first.labels.size() == 1 && first.labels[0] == n;
  bool n_last = last.labels.size() == 1 && last.labels[0] == n;
  if (!n_last && n_first && !c.oriented)
    for (Rational& p : pos) p = -p;
  else if (!n_last)
    throw DomainError("theta: x_n is not an isolated extreme point");
  Rational lo = *std::min_element(pos.begin(), pos.end() - 1);
  Rational top = *std::max_element(pos.begin(), pos.end() - 1);
  Rational last_gap = pos[n - 1] - top;
  std::vector<Rational> sorted(pos.begin(), pos.end() - 1);
  std::sort(sorted.begin(), sorted.end());
  for (std::size_t k = 1; k < sorted.size(); ++k)
    if (sorted[k] - sorted[k - 1] > last_gap) throw DomainError("theta: x_n is not at the maximal gap");
  for (Rational& p : pos) p = (p - lo) / last_gap;
  return detail::theta_point(pos);
}

}  // namespace cactus

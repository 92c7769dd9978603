#include "cactus/verify.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cactus;

namespace {

std::vector<Rational> marked_positions(const MarkedCurve& c, int n) {
  std::vector<Rational> pos(n);
  for (const SpecialPoint& p : c.root.points)
    for (int i : p.labels) pos[i - 1] = p.pos;
  return pos;
}

}  // namespace

TEST(FaceLattice, Counts) {
  auto count = [](int m) {
    std::vector<long long> c(m, 0);
    for (const Face& f : face_lattice(m)) ++c[f.dim];
    return c;
  };
  EXPECT_EQ(count(1), (std::vector<long long>{1}));
  EXPECT_EQ(count(3), (std::vector<long long>{6, 6, 1}));
  EXPECT_EQ(count(4), (std::vector<long long>{24, 36, 14, 1}));
  for (int m = 1; m <= 6; ++m) {
    auto c = count(m);
    for (int d = 0; d < m; ++d) EXPECT_EQ(c[d], oracle::osp(m, m - d));
  }
}

TEST(FaceLattice, CentroidsSitInTheirFaces) {
  for (const Face& f : face_lattice(5)) {
    EXPECT_TRUE(in_permutahedron(f.centroid));
    EXPECT_EQ(minimal_face(f.centroid), f.parts);
  }
}

TEST(FaceLattice, RefinementIsContainment) {
  std::vector<Face> fs = face_lattice(4);
  for (const Face& A : fs)
    for (const Face& B : fs) {
      // containment read off vertex sets
      bool contained = true;
      for (const Face& v : fs)
        if (v.dim == 0 && refines(v.parts, B.parts) && !refines(v.parts, A.parts)) contained = false;
      EXPECT_EQ(refines(B.parts, A.parts), contained);
    }
}

TEST(MinimalFace, Examples) {
  EXPECT_EQ(minimal_face({2, 1, 3}), (Composition{{2}, {1}, {3}}));
  EXPECT_EQ(minimal_face({2, 2, 2}), (Composition{{1, 2, 3}}));
  EXPECT_EQ(minimal_face({Rational(3, 2), Rational(3, 2), 3}), (Composition{{1, 2}, {3}}));
  EXPECT_THROW(minimal_face({1, 1, 4}), DomainError);
  EXPECT_THROW(minimal_face({2, 2, 3}), DomainError);
}

TEST(StarForm, Decomposition) {
  StarForm v = star_decompose({3, 1, 2});
  EXPECT_TRUE(v.vertex);
  StarForm o = star_decompose({2, 2, 2});
  EXPECT_EQ(o.t, 0);
  // midpoint of an edge's centroid and a hexagon vertex
  PermPoint x{Rational(3, 2), Rational(5, 2), 2};
  StarForm s = star_decompose(x);
  EXPECT_EQ(s.face, (Composition{{1, 2, 3}}));
  EXPECT_GT(s.t, 0);
  EXPECT_LE(s.t, 1);
  EXPECT_NE(minimal_face(s.boundary), s.face);
  PermPoint o3 = centroid(s.face, 3);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(s.t * s.boundary[i] + (1 - s.t) * o3[i], x[i]);
}

TEST(Phi, VertexGivesPermutationPoint) {
  MarkedCurve c = phi({3, 1, 2}, 4);
  EXPECT_EQ(marked_positions(c, 4), (std::vector<Rational>{2, 0, 1, 3}));
}

TEST(Phi, FaceCentroid) {
  Composition A{{1, 3}, {2, 5, 6}, {4}, {7, 8}};
  EXPECT_EQ(marked_positions(phi(centroid(A, 8), 9), 9), (std::vector<Rational>{0, 1, 0, 2, 1, 1, 3, 3, 4}));
}

TEST(Phi, BoundaryPointRecursesToItsFace) {
  // x on the boundary of Pi_3 lies in a proper face: phi(x) equals the face-level construction
  PermPoint x{Rational(3, 2), Rational(3, 2), 3};
  EXPECT_EQ(marked_positions(phi(x, 4), 4), (std::vector<Rational>{0, 0, 1, 2}));
}

TEST(Phi, FaceConditionHolds) {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 200; ++k) {
    PermPoint x = verify::detail::random_point(4, rng);
    Composition A = minimal_face(x);
    std::vector<Rational> pos = marked_positions(phi(x, 5), 5);
    std::vector<int> order{1, 2, 3, 4};
    std::stable_sort(order.begin(), order.end(), [&](int i, int j) { return pos[i - 1] < pos[j - 1]; });
    std::map<int, int> part;
    for (std::size_t j = 0; j < A.size(); ++j)
      for (int i : A[j]) part[i] = static_cast<int>(j);
    EXPECT_EQ(pos[4] - pos[order[3] - 1], 1);
    for (int i = 1; i < 4; ++i) {
      Rational d = pos[order[i] - 1] - pos[order[i - 1] - 1];
      EXPECT_EQ(d == 1, part[order[i]] != part[order[i - 1]]) << verify::detail::join(x);
    }
  }
}

TEST(Theta, PermutationPointGivesVertex) {
  EXPECT_EQ(theta(smooth_curve({2, 0, 1, 3})), (PermPoint{3, 1, 2}));
  // reflected presentation of the same unoriented curve
  EXPECT_EQ(theta(smooth_curve({1, 3, 2, 0})), (PermPoint{3, 1, 2}));
}

TEST(Theta, RejectsCurvesOutsideTheCell) {
  EXPECT_THROW(theta(smooth_curve({0, 3, 1, 2})), DomainError);
  EXPECT_THROW(theta(smooth_curve({0, 1, 3, 4})), DomainError);
}

TEST(Theta, InvertsPhiOnRandomPoints) {
  std::mt19937_64 rng(21);
  for (int n = 3; n <= 6; ++n)
    for (int k = 0; k < 200; ++k) {
      PermPoint x = verify::detail::random_point(n - 1, rng);
      ASSERT_TRUE(in_permutahedron(x));
      EXPECT_EQ(theta(phi(x, n)), x) << verify::detail::join(x);
    }
}

TEST(Theta, PhiInvertsThetaOnSampledCurves) {
  std::mt19937_64 rng(23);
  for (int n = 3; n <= 6; ++n)
    for (const Composition& A : ordered_set_partitions(n - 1, n - 1)) {
      Composition parts = A;
      parts.push_back({n});
      MarkedCurve c = verify::detail::sample_height_one(parts, rng);
      EXPECT_TRUE(curves_equal(phi(theta(c), n), c));
      EXPECT_EQ(minimal_face(theta(c)), A);
    }
}

#include "cactus/cactus.hpp"
#include "cactus/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cactus;

namespace {

Tree stable(const std::string& s) { return parse_tree(s, Variant::stable); }

std::vector<std::string> leaf_order(const Tree& t) {
  std::vector<std::string> out;
  for (const LeafLabel& l : composition(t)) out.push_back(serialize_label(l));
  return out;
}

std::vector<Tree> plain_trees(int n) {
  std::vector<Tree> out;
  for (const std::string& s : oracle::plain_tree_texts(n)) out.push_back(parse_tree(s));
  return out;
}

}  // namespace

TEST(TreeIO, SerializationIsBitExact) {
  Tree t = parse_tree("*( {3,1,2} ( {4,5}   {6}) )");
  EXPECT_EQ(t.variant, Variant::refined);
  EXPECT_EQ(serialize(t), "*({1,2,3} ({4,5} {6}))");
  EXPECT_EQ(serialize(parse_tree("((1 2 3)((4 5) 6))")), "(({1} {2} {3}) (({4} {5}) {6}))");
  EXPECT_EQ(serialize_composition(parse_composition("{1,3}|{2,5,6}|{4}|{7,8}")), "{1,3}|{2,5,6}|{4}|{7,8}");
}

TEST(TreeIO, RejectsMalformedInput) {
  EXPECT_THROW(parse_tree("{1,2,3,4}|{5}"), StructuralError);
  EXPECT_THROW(parse_tree("(1 2"), StructuralError);
  EXPECT_THROW(parse_tree("((1) 2)"), StructuralError);
  EXPECT_THROW(parse_tree("(1 1)"), StructuralError);
  EXPECT_THROW(parse_tree("(1 3)"), StructuralError);
  EXPECT_THROW(parse_tree("({} 1)"), StructuralError);
  EXPECT_THROW(parse_tree("{1}"), StructuralError);
  EXPECT_THROW(parse_tree("*{1}"), StructuralError);
  EXPECT_THROW(parse_composition("{1}|"), StructuralError);
}

TEST(TreeIO, RoundTripOnEnumeratedTrees) {
  for (int n = 2; n <= 5; ++n)
    for (int a = 1; a < n; ++a)
      for (const Tree& t : enumerate_a_stable(n, a, Variant::stable))
        EXPECT_EQ(serialize(parse_tree(serialize(t), Variant::stable)), serialize(t));
}

TEST(Stability, CompressedNinePointTreePasses) {
  Tree mid = parse_tree("({1,2,3} ({4,5} ({6} {7} {8} {9})))");
  EXPECT_TRUE(validate_a_stable(mid, 9, 3).pass());
}

TEST(Stability, SingleRootAlwaysPasses) {
  for (int a = 1; a <= 5; ++a) EXPECT_TRUE(validate_a_stable(parse_tree("(1 2 3 4 5 6)"), 6, a).pass());
}

TEST(Stability, LightInternalSubtreeFails) {
  StabilityReport r = validate_a_stable(parse_tree("((1 2) 3 4)"), 4, 3);
  EXPECT_FALSE(r.pass());
  EXPECT_TRUE(r.leaf_sizes_ok);
  EXPECT_FALSE(r.subtree_mass_ok);
  ASSERT_EQ(r.failures.size(), 1u);
}

TEST(Stability, OversizedLeafFails) {
  StabilityReport r = validate_a_stable(parse_tree("({1,2,3} 4)"), 4, 2);
  EXPECT_FALSE(r.leaf_sizes_ok);
}

TEST(Stability, StructuralErrorsThrow) {
  EXPECT_THROW(validate_a_stable(parse_tree("(1 2 3)"), 4, 2), StructuralError);
  EXPECT_THROW(validate_a_stable(parse_tree("(1 2 3)"), 3, 3), DomainError);
}

TEST(Flip, RootFlipReversesLeaves) {
  Tree t = parse_tree("(1 2 3 4)");
  EXPECT_EQ(serialize(flip_at(t, 0)), "({4} {3} {2} {1})");
}

TEST(Flip, FlipPropagatesThroughSubtree) {
  EXPECT_EQ(serialize(flip_at(parse_tree("((1 2) 3)"), 0)), "({3} ({2} {1}))");
}

TEST(Flip, IsAnInvolution) {
  for (const Tree& t : plain_trees(5))
    for (int v = 0; v < vertex_count(t.root); ++v) {
      if (vertex(t, v).is_leaf()) continue;
      EXPECT_EQ(serialize(flip_at(flip_at(t, v), v)), serialize(t));
    }
}

TEST(Canonical, RootReversalIdentifiedInStableVariant) {
  EXPECT_EQ(canonical_key(stable("(1 2 3)")), canonical_key(stable("(3 2 1)")));
  EXPECT_NE(canonical_key(parse_tree("(1 2 3)", Variant::double_cover)),
            canonical_key(parse_tree("(3 2 1)", Variant::double_cover)));
}

TEST(Canonical, InnerPermutationsAreDistinct) {
  std::set<std::string> keys{canonical_key(stable("((1 2 3) 4)")), canonical_key(stable("((1 3 2) 4)")),
                             canonical_key(stable("((2 1 3) 4)"))};
  EXPECT_EQ(keys.size(), 3u);
}

TEST(Canonical, IdempotentAndFlipInvariant) {
  std::mt19937 rng(7);
  for (Variant variant : {Variant::stable, Variant::double_cover})
    for (int a = 1; a <= 3; ++a)
      for (const Tree& t : enumerate_a_stable(5, a, variant)) {
        EXPECT_EQ(serialize(canonicalize(canonicalize(t))), serialize(canonicalize(t)));
        int v = std::uniform_int_distribution<int>(0, vertex_count(t.root) - 1)(rng);
        if (vertex(t, v).is_leaf() || !vertex(t, v).flippable) continue;
        EXPECT_EQ(canonical_key(flip_at(t, v)), canonical_key(t));
      }
}

TEST(Canonical, RefinedTreesRespectFlippableSet) {
  Tree marked = parse_tree("*((1 2) *(3 4))");
  Tree flipped_inner = parse_tree("*((1 2) *(4 3))");
  Tree flipped_plain = parse_tree("*((2 1) *(3 4))");
  EXPECT_EQ(canonical_key(marked), canonical_key(flipped_inner));
  EXPECT_NE(canonical_key(marked), canonical_key(flipped_plain));
  // the root flip reverses the unmarked child too
  EXPECT_EQ(canonical_key(marked), canonical_key(parse_tree("*(*(4 3) (2 1))")));
}

// Orbit counts from the brute-force flip-orbit oracle.
TEST(Canonical, OrbitCountsMatchBruteForce) {
  for (int n = 2; n <= 5; ++n)
    for (int a = 1; a < n; ++a) {
      std::vector<int> S(n);
      std::iota(S.begin(), S.end(), 1);
      for (bool root_flippable : {true, false}) {
        std::set<std::string> keys;
        Variant v = root_flippable ? Variant::stable : Variant::double_cover;
        for (const oracle::PTree& p : oracle::plane_trees(S, a, true))
          keys.insert(canonical_key(parse_tree(oracle::text(p), v)));
        EXPECT_EQ(keys.size(), oracle::orbit_representatives(n, a, root_flippable).size())
            << "n=" << n << " a=" << a;
      }
    }
}

TEST(Compress, NinePointExample) {
  Tree big = parse_tree("((1 2 3)((4 5)(6 7 8 9)))");
  Tree mid = compress(big, 3);
  EXPECT_EQ(serialize(mid), "({1,2,3} ({4,5} ({6} {7} {8} {9})))");
  EXPECT_EQ(serialize(compress_between(mid, 3, 7)), "({1,2,3} {4,5,6,7,8,9})");
  EXPECT_EQ(serialize(compress(big, 7)), serialize(compress_between(mid, 3, 7)));
}

TEST(Compress, IdentityCases) {
  for (const Tree& t : plain_trees(5)) {
    EXPECT_EQ(serialize(compress(t, 1)), serialize(t));
    Tree t3 = compress(t, 3);
    EXPECT_EQ(serialize(compress_between(t3, 3, 3)), serialize(t3));
  }
}

TEST(Compress, TopWeightGivesHeightOneTrees) {
  for (int n = 3; n <= 5; ++n)
    for (const Tree& t : plain_trees(n)) {
      Tree c = compress(t, n - 1);
      EXPECT_EQ(internal_vertex_count(c.root), 1);
      EXPECT_GE(c.root.children.size(), 2u);
      EXPECT_TRUE(validate_a_stable(c, n, n - 1).pass());
    }
}

TEST(Compress, OutputIsStable) {
  for (int n = 3; n <= 5; ++n)
    for (const Tree& t : plain_trees(n))
      for (int a = 1; a < n; ++a) EXPECT_TRUE(validate_a_stable(compress(t, a), n, a).pass()) << serialize(t);
}

TEST(Compress, ParameterErrors) {
  Tree t = parse_tree("(1 2 3)");
  EXPECT_THROW(compress_between(t, 2, 1), DomainError);
  EXPECT_THROW(compress(t, 3), DomainError);
}

TEST(Dimensions, DualAndStandard) {
  Tree t = parse_tree("({1,2,3} ({4,5} {6,7}))");
  EXPECT_EQ(internal_edge_count(t), 1);
  EXPECT_EQ(dual_dimension(t), 1 + 7 - 3);
  EXPECT_EQ(standard_dimension(parse_tree("((1 2 3) 4 (5 (6 7 8) 9) 10)").root), 5);
  // binary trees are exactly the top-dimensional a=1 cells
  for (const Tree& x : enumerate_a_stable(5, 1, Variant::stable)) {
    bool binary = true;
    for (int v = 0; v < vertex_count(x.root); ++v)
      if (!vertex(x, v).is_leaf() && vertex(x, v).children.size() != 2) binary = false;
    EXPECT_EQ(dual_dimension(x) == 3, binary);
  }
}

TEST(Relabel, LeftAction) {
  Tree t = parse_tree("((1 2) 3 4)");
  Perm g{2, 3, 4, 1}, h{4, 3, 2, 1};
  EXPECT_EQ(leaf_order(relabel(t, g)), (std::vector<std::string>{"{2}", "{3}", "{4}", "{1}"}));
  EXPECT_EQ(serialize(relabel(relabel(t, h), g)), serialize(relabel(t, perm_compose(g, h))));
}

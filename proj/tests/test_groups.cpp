#include "cactus/cactus.hpp"
#include "cactus/oracle.hpp"

#include <gtest/gtest.h>

#include <cstdlib>

using namespace cactus;

namespace {

std::vector<Word> canon(std::vector<Word> ws) {
  std::vector<Word> out;
  for (const Word& w : ws) {
    Word c = canonical_relator(w);
    if (!c.empty()) out.push_back(c);
  }
  std::sort(out.begin(), out.end());
  return out;
}

const GenSym s12{1, 2}, s23{2, 3}, s34{3, 4}, s14{1, 4}, s13{1, 3};

}  // namespace

TEST(Alphabet, WeightedConstraint) {
  Presentation P = stated_presentation(5, 3, PresVariant::full);
  EXPECT_EQ(P.generators, (std::vector<GenSym>{{1, 2}, {1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}, {4, 5}}));
  EXPECT_EQ(stated_presentation(5, 3, PresVariant::oriented).generators.size(), 6u);
  for (int n = 3; n <= 7; ++n) {
    EXPECT_EQ(stated_presentation(n, 1, PresVariant::full).generators.size(), static_cast<std::size_t>(binomial(n, 2)));
    for (GenSym g : stated_presentation(n, n - 1, PresVariant::oriented).generators) EXPECT_EQ(g.q - g.p, 1);
  }
}

TEST(Presentation, TopWeightFourPoints) {
  Presentation P = stated_presentation(4, 3, PresVariant::full);
  EXPECT_EQ(P.generators, (std::vector<GenSym>{s12, s14, s23, s34}));
  std::vector<Word> want{word({s12, s12}), word({s23, s23}), word({s34, s34}), word({s14, s14}),
                         word({s12, s34, s12, s34}),
                         word({s12, s23, s12, s23, s12, s23}), word({s23, s34, s23, s34, s23, s34}),
                         word({s14, s12, s14, s34}), word({s14, s23, s14, s23}), word({s14, s34, s14, s12})};
  EXPECT_EQ(canonical_relators(P), canon(want));
}

TEST(Presentation, ParameterErrors) {
  EXPECT_THROW(stated_presentation(2, 1, PresVariant::full), DomainError);
  EXPECT_THROW(stated_presentation(4, 4, PresVariant::full), DomainError);
}

TEST(ToSym, Conventions) {
  EXPECT_EQ(to_sym(word({s12}), 4), (Perm{2, 1, 3, 4}));
  EXPECT_EQ(to_sym(word({s13, s12, s23, s12}), 4), perm_identity(4));
  // (gh)(x) = g(h(x))
  Perm gh = to_sym(word({s12, s23}), 3);
  EXPECT_EQ(gh, perm_compose(interval_reversal(3, 1, 2), interval_reversal(3, 2, 3)));
  EXPECT_EQ(gh, (Perm{2, 3, 1}));
  EXPECT_THROW(to_sym(word({s14}), 3), DomainError);
}

TEST(ToSym, EveryStatedRelatorIsTrivial) {
  for (int n = 3; n <= 7; ++n)
    for (int a = 1; a < n; ++a)
      for (PresVariant v : {PresVariant::full, PresVariant::oriented})
        for (const Word& w : stated_presentation(n, a, v).relators) EXPECT_EQ(to_sym(w, n), perm_identity(n)) << word_text(w);
}

TEST(Quotient, Images) {
  EXPECT_EQ(quotient_image(word({s12}), 3), word({s12}));
  EXPECT_EQ(quotient_image(word({s13}), 3), word({s12, s23, s12}));
  EXPECT_EQ(quotient_image(word({s14}), 3), word({s14}));
  EXPECT_EQ(to_sym(reversal_word(2, 6), 7), interval_reversal(7, 2, 6));
  EXPECT_THROW(quotient_image(word({s12}), 2), DomainError);
}

TEST(Quotient, ClassicalRelatorsMapToTrivialWords) {
  for (int n = 4; n <= 7; ++n)
    for (int a = 3; a < n; ++a)
      for (const Word& w : stated_presentation(n, 1, PresVariant::full).relators) {
        Word img = quotient_image(w, a);
        EXPECT_EQ(to_sym(img, n), perm_identity(n));
        for (const Letter& l : img) EXPECT_TRUE(in_alphabet(l.g, n, a, PresVariant::full)) << gen_name(l.g);
      }
}

TEST(Braid, ShortestCase) {
  auto rs = generalized_braid_relators(4, 3);
  ASSERT_FALSE(rs.empty());
  EXPECT_EQ(rs[0].relator, word({s13, s12, s23, s12}));
  EXPECT_EQ(to_sym(rs[0].relator, 4), perm_identity(4));
  // the second family reduces to the classical braid relation
  for (const BraidRelator& b : rs)
    if (b.q - b.p == 2 && b.family == 2) {
      GenSym x = sigma(b.p), y = sigma(b.p + 1);
      EXPECT_EQ(canonical_relator(b.image), canonical_relator(word({x, y, x, y, x, y})));
    }
}

TEST(Braid, ImagesAreSigmaWordsTrivialInSn) {
  for (int n = 4; n <= 7; ++n)
    for (int a = 3; a < n; ++a)
      for (const BraidRelator& b : generalized_braid_relators(n, a)) {
        EXPECT_LE(b.q - b.p, a - 1);
        EXPECT_EQ(to_sym(b.relator, n), perm_identity(n));
        EXPECT_EQ(to_sym(b.image, n), perm_identity(n));
        for (const Letter& l : b.image) EXPECT_EQ(l.g.q - l.g.p, 1);
      }
}

TEST(Canonical, RotationsAndInverses) {
  Word w = word({s12, s23, s12, s23, s12, s23});
  Word r = word({s23, s12, s23, s12, s23, s12});
  EXPECT_EQ(canonical_relator(w), canonical_relator(r));
  EXPECT_TRUE(canonical_relator(word({s12, s12})).empty());
  EXPECT_EQ(canonical_relator(Word{{s12, 1}, {s23, -1}, {s12, 1}, {s23, 1}}), canonical_relator(word({s12, s23, s12, s23})));
  Presentation P = stated_presentation(5, 3, PresVariant::full);
  EXPECT_TRUE(presentations_equal(P, P));
  Presentation Q = P;
  std::reverse(Q.relators.begin(), Q.relators.end());
  EXPECT_TRUE(presentations_equal(P, Q));
  Q.relators.pop_back();
  Q.relators.push_back(word({s12, s34, s12, s34, s12, s34}));
  EXPECT_FALSE(presentations_equal(P, Q));
}

TEST(Flip, Generator) {
  EXPECT_EQ(flip_generator(s12, 4), s34);
  EXPECT_EQ(flip_generator(s23, 4), s23);
}

TEST(Flip, ExtensionReproducesFullPresentation) {
  for (int n = 3; n <= 7; ++n)
    for (int a = 1; a < n; ++a) {
      Presentation F = extend_by_flip(stated_presentation(n, a, PresVariant::oriented));
      EXPECT_TRUE(presentations_equal(F, stated_presentation(n, a, PresVariant::full))) << n << "," << a;
      for (const Word& w : F.relators) EXPECT_EQ(to_sym(w, n), perm_identity(n));
    }
  EXPECT_THROW(extend_by_flip(stated_presentation(4, 3, PresVariant::full)), DomainError);
  Presentation lopsided = stated_presentation(4, 3, PresVariant::oriented);
  lopsided.generators.erase(lopsided.generators.begin());
  EXPECT_THROW(extend_by_flip(lopsided), DomainError);
}

TEST(Export, Formats) {
  Presentation P = stated_presentation(4, 3, PresVariant::full);
  std::string text = format_text(P);
  EXPECT_NE(text.find("generators: s_1_2 s_1_4 s_2_3 s_3_4"), std::string::npos);
  EXPECT_NE(text.find("s_1_4 s_2_3 s_1_4 s_2_3"), std::string::npos);
  std::string gap = format_gap(P);
  EXPECT_NE(gap.find("FreeGroup(\"s_1_2\""), std::string::npos);
}

// Brute-force closure in S_n x Z/2 (with s_{1,n} carrying the Z/2 part) is a second route to
// the orders certified by coset enumeration.
TEST(ToddCoxeter, TopWeightOrders) {
  for (int n = 4; n <= 6; ++n) {
    Presentation P = stated_presentation(n, n - 1, PresVariant::full);
    std::vector<std::pair<Perm, int>> images;
    for (GenSym g : P.generators) images.push_back({interval_reversal(n, g.p, g.q), g == GenSym{1, n} ? 1 : 0});
    for (const Word& w : P.relators) {
      int parity = 0;
      for (const Letter& l : w) parity ^= (l.g == GenSym{1, n});
      EXPECT_EQ(parity, 0);
    }
    long long closure = oracle::generated_order(n, images);
    EXPECT_EQ(closure, 2 * factorial(n));
    CosetTable t = todd_coxeter(P, {});
    ASSERT_EQ(t.status, CosetStatus::complete);
    EXPECT_EQ(t.index, closure);
  }
}

TEST(ToddCoxeter, SigmaSubgroupIndex) {
  for (int n = 4; n <= 5; ++n) {
    std::vector<Word> sub;
    for (int i = 1; i < n; ++i) sub.push_back(word({sigma(i)}));
    CosetTable t = todd_coxeter(stated_presentation(n, n - 1, PresVariant::full), sub);
    ASSERT_EQ(t.status, CosetStatus::complete);
    EXPECT_EQ(t.index, 2);
  }
}

TEST(ToddCoxeter, OrientedTopWeightIsSymmetricGroup) {
  for (int n = 3; n <= 5; ++n) {
    if (n == 3) continue;  // J~_3^2 is classical and infinite
    CosetTable t = todd_coxeter(stated_presentation(n, n - 1, PresVariant::oriented), {});
    ASSERT_EQ(t.status, CosetStatus::complete);
    EXPECT_EQ(t.index, factorial(n));
  }
}

TEST(ToddCoxeter, TableIsAPermutationAction) {
  CosetTable t = todd_coxeter(stated_presentation(4, 3, PresVariant::full), {});
  ASSERT_EQ(t.rows.size(), 48u);
  for (std::size_t x = 0; x < t.generators.size(); ++x) {
    std::vector<int> col;
    for (const auto& row : t.rows) col.push_back(row[x]);
    for (std::size_t c = 0; c < t.rows.size(); ++c) EXPECT_EQ(t.rows[col[c]][x], static_cast<int>(c));
  }
}

TEST(ToddCoxeter, Deterministic) {
  Presentation P = stated_presentation(5, 4, PresVariant::full);
  CosetTable a = todd_coxeter(P, {}), b = todd_coxeter(P, {});
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(a.cosets_defined, b.cosets_defined);
}

TEST(ToddCoxeter, InfiniteClassicalGroup) {
  CosetTable t = todd_coxeter(stated_presentation(4, 1, PresVariant::full), {}, 50000);
  EXPECT_EQ(t.status, CosetStatus::limit_exceeded);
  EXPECT_EQ(t.cosets_defined, 50000);
  EXPECT_TRUE(t.rows.empty());
}

TEST(ToddCoxeter, Errors) {
  Presentation P = stated_presentation(4, 3, PresVariant::full);
  EXPECT_THROW(todd_coxeter(P, {}, 0), DomainError);
  EXPECT_THROW(todd_coxeter(P, {word({s13})}), PresentationError);
  Presentation missing = P;
  missing.relators.erase(missing.relators.begin());
  EXPECT_THROW(todd_coxeter(missing, {}), PresentationError);
}

TEST(ToddCoxeter, EnvironmentLimit) {
  ::setenv("CACTUS_CELLS_MAX_COSETS", "1234", 1);
  EXPECT_EQ(max_cosets_from_env(), 1234);
  ::setenv("CACTUS_CELLS_MAX_COSETS", "zero", 1);
  EXPECT_THROW(max_cosets_from_env(), DomainError);
  ::unsetenv("CACTUS_CELLS_MAX_COSETS");
  EXPECT_EQ(max_cosets_from_env(), default_max_cosets);
}

TEST(Derive, HexagonsAndSquare) {
  CellComplex cx = build_complex(4, 3, Cover::double_cover, 2);
  Presentation D = derive_presentation(cx);
  std::vector<Word> rels = canonical_relators(D);
  auto has = [&](const Word& w) { return std::count(rels.begin(), rels.end(), canonical_relator(w)) > 0; };
  EXPECT_TRUE(has(word({s12, s23, s12, s23, s12, s23})));
  EXPECT_TRUE(has(word({s23, s34, s23, s34, s23, s34})));
  EXPECT_TRUE(has(word({s12, s34, s12, s34})));
}

TEST(Derive, MatchesStatedPresentations) {
  for (int n = 3; n <= 6; ++n)
    for (int a = 1; a < n; ++a) {
      Presentation D = derive_presentation(build_complex(n, a, Cover::double_cover, 2));
      EXPECT_TRUE(presentations_equal(D, stated_presentation(n, a, PresVariant::oriented))) << n << "," << a;
    }
}

TEST(Derive, NeedsTheTwoSkeleton) {
  EXPECT_THROW(derive_presentation(build_complex(4, 3, Cover::base, 2)), DomainError);
  EXPECT_THROW(derive_presentation(build_complex(4, 3, Cover::double_cover, 1)), DomainError);
}

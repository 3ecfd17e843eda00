#include <gtest/gtest.h>

#include <set>

#include "oracles.hpp"
#include "rdlab/errors.hpp"
#include "rdlab/groups.hpp"
#include "rdlab/rng.hpp"

using namespace rdlab;

namespace {

GroupElement random_word(const Group& g, Rng& rng, int letters) {
  GroupElement out = g.identity();
  for (int i = 0; i < letters; ++i) {
    const int gen = static_cast<int>(rng.below(static_cast<std::uint64_t>(g.rank())));
    out = g.multiply(out, g.generator(gen, rng.below(2) ? 1 : -1));
  }
  return out;
}

oracle::Syllables syllables(const GroupElement& g) {
  oracle::Syllables s;
  for (std::size_t i = 0; i + 1 < g.word().size(); i += 2) s.emplace_back(g.word()[i], g.word()[i + 1]);
  return s;
}

}  // namespace

TEST(Groups, FreeCancellation) {
  const Group f2 = Group::free(2);
  EXPECT_EQ(f2.multiply(f2.parse_element("x"), f2.parse_element("x^-1 y")), f2.parse_element("y"));
}

TEST(Groups, ZdAddition) {
  const Group z2 = Group::free_abelian(2);
  EXPECT_EQ(z2.multiply(z2.parse_element("(2,-1)"), z2.parse_element("(-2,3)")).word(), (std::vector<int>{0, 2}));
}

TEST(Groups, FreeProductSyllableReduction) {
  const Group g = Group::free_product_cyclic({2, 3});
  const GroupElement s = g.generator(0);
  const GroupElement t = g.generator(1);
  const GroupElement st = g.multiply(s, t);
  const GroupElement t2s = g.multiply(g.generator(1, 2), s);
  EXPECT_TRUE(g.multiply(st, t2s).is_identity());
  const auto expect = oracle::fpc_reduce({{0, 1}, {1, 1}, {1, 2}, {0, 1}}, {2, 3});
  EXPECT_TRUE(expect.empty());
}

TEST(Groups, Lengths) {
  const Group f2 = Group::free(2);
  const Group z2 = Group::free_abelian(2);
  EXPECT_EQ(f2.length(f2.identity()), 0);
  EXPECT_EQ(f2.length(f2.parse_element("x y x^-1")), 3);
  EXPECT_EQ(z2.length(z2.parse_element("(3,-2)")), 5);
}

TEST(Groups, CancellationNumberExamples) {
  const Group z = Group::free(1);
  EXPECT_EQ(cancellation_number(z, z.generator(0), z.generator(0, -1)), 1);
  const Group f2 = Group::free(2);
  const auto xy = f2.parse_element("x y");
  EXPECT_EQ(cancellation_number(f2, xy, f2.parse_element("x")), 0);
  EXPECT_EQ(cancellation_number(f2, xy, f2.parse_element("y^-1 x")), 1);
}

TEST(Groups, SphereCountExamples) {
  const auto f2 = SphereIndex::enumerate(Group::free(2), 2).sphere_sizes();
  EXPECT_EQ(f2, (std::vector<std::size_t>{1, 4, 12}));
  const auto z2 = SphereIndex::enumerate(Group::free_abelian(2), 3).sphere_sizes();
  EXPECT_EQ(z2, (std::vector<std::size_t>{1, 4, 8, 12}));
  const auto z = SphereIndex::enumerate(Group::free_abelian(1), 5).sphere_sizes();
  EXPECT_EQ(z, (std::vector<std::size_t>{1, 2, 2, 2, 2, 2}));
}

TEST(Groups, SphereCountsMatchOracles) {
  for (int d = 1; d <= 3; ++d) {
    const auto sizes = SphereIndex::enumerate(Group::free(d), 5).sphere_sizes();
    for (int k = 0; k <= 5; ++k) EXPECT_EQ(sizes[k], oracle::free_sphere_size(d, k)) << d << " " << k;
  }
  for (int d = 1; d <= 3; ++d) {
    const auto sizes = SphereIndex::enumerate(Group::free_abelian(d), 6).sphere_sizes();
    for (int k = 0; k <= 6; ++k) EXPECT_EQ(sizes[k], oracle::zd_sphere_size(d, k)) << d << " " << k;
  }
  for (const std::vector<int>& orders : {std::vector<int>{2, 3}, std::vector<int>{3, 4}, std::vector<int>{2, 2, 5}}) {
    const auto sizes = SphereIndex::enumerate(Group::free_product_cyclic(orders), 7).sphere_sizes();
    EXPECT_EQ(sizes, oracle::fpc_sphere_sizes(orders, 7));
  }
}

TEST(Groups, BallIsPrefixAndShortlexWithinSpheres) {
  const auto index = SphereIndex::enumerate(Group::free_product_cyclic({2, 3}), 6);
  for (int r = 0; r <= 6; ++r) {
    const auto ball = index.ball(r);
    for (std::size_t i = 0; i < ball.size(); ++i) {
      EXPECT_LE(ball[i].length(), r);
      EXPECT_EQ(index.index_of(ball[i]), i);
      if (i > 0) EXPECT_TRUE(ball[i - 1] < ball[i]);
    }
  }
}

TEST(Groups, GrowthFitExamples) {
  const auto z2 = growth_fit(SphereIndex::enumerate(Group::free_abelian(2), 10));
  EXPECT_TRUE(z2.polynomial);
  EXPECT_EQ(z2.s, 1);
  EXPECT_DOUBLE_EQ(z2.C, 4.0);
  const auto z = growth_fit(SphereIndex::enumerate(Group::free_abelian(1), 10));
  EXPECT_TRUE(z.polynomial);
  EXPECT_EQ(z.s, 0);
  EXPECT_DOUBLE_EQ(z.C, 2.0);
  const auto f2 = growth_fit(SphereIndex::enumerate(Group::free(2), 8));
  EXPECT_FALSE(f2.polynomial);
}

TEST(Groups, GrowthFitBoundsEnumeratedSpheres) {
  for (int d = 1; d <= 3; ++d) {
    const auto index = SphereIndex::enumerate(Group::free_abelian(d), 10);
    const auto fit = growth_fit(index);
    for (int k = 0; k <= 10; ++k) {
      EXPECT_LE(static_cast<double>(index.sphere_size(k)), fit.C * std::pow(1.0 + k, fit.s) + 1e-9);
    }
  }
}

TEST(Groups, ParseErrors) {
  EXPECT_THROW(Group::parse("free:0"), Error);
  EXPECT_THROW(Group::parse("nope:2"), Error);
  EXPECT_THROW(Group::parse("fpc:1,3"), Error);
  EXPECT_THROW(Group::free(2).parse_element("q"), Error);
}

TEST(Groups, BudgetExceeded) {
  EXPECT_THROW(SphereIndex::enumerate(Group::free(3), 12, 1000), BudgetExceeded);
}

// Group axioms and length axioms against the oracles on random words.
class GroupProperties : public ::testing::TestWithParam<std::string> {};

TEST_P(GroupProperties, AxiomsOnRandomWords) {
  const Group g = Group::parse(GetParam());
  Rng rng = Rng::stream(7, GetParam());
  for (int trial = 0; trial < 200; ++trial) {
    const auto a = random_word(g, rng, static_cast<int>(rng.below(7)));
    const auto b = random_word(g, rng, static_cast<int>(rng.below(7)));
    const auto c = random_word(g, rng, static_cast<int>(rng.below(7)));
    EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c)));
    EXPECT_TRUE(g.multiply(a, g.inverse(a)).is_identity());
    EXPECT_EQ(g.multiply(a, g.identity()), a);
    EXPECT_EQ(g.length(a), g.length(g.inverse(a)));
    const auto ab = g.multiply(a, b);
    EXPECT_LE(g.length(ab), g.length(a) + g.length(b));
    EXPECT_EQ(ab.length(), g.length(ab));

    const int p = cancellation_number(g, a, b);
    const int twice = g.length(a) + g.length(b) - g.length(ab);
    EXPECT_LE(2 * p, twice);
    EXPECT_LT(twice, 2 * p + 2);
    EXPECT_GE(p, 0);
    EXPECT_LE(p, std::min(g.length(a), g.length(b)));

    const auto letters = g.geodesic_letters(a);
    EXPECT_EQ(static_cast<int>(letters.size()), g.length(a));
    for (int j = 0; j <= g.length(a); ++j) EXPECT_EQ(g.length(g.geodesic_prefix(a, j)), j);

    switch (g.kind()) {
      case GroupKind::kFree:
        EXPECT_EQ(ab.word(), oracle::free_multiply(a.word(), b.word()));
        EXPECT_EQ(g.length(a), static_cast<int>(a.word().size()));
        break;
      case GroupKind::kFreeProductCyclic: {
        auto joined = syllables(a);
        const auto sb = syllables(b);
        joined.insert(joined.end(), sb.begin(), sb.end());
        EXPECT_EQ(syllables(ab), oracle::fpc_reduce(joined, g.orders()));
        EXPECT_EQ(g.length(ab), oracle::fpc_length(syllables(ab), g.orders()));
        break;
      }
      case GroupKind::kFreeAbelian:
        for (std::size_t i = 0; i < ab.word().size(); ++i) EXPECT_EQ(ab.word()[i], a.word()[i] + b.word()[i]);
        break;
    }
    EXPECT_EQ(g.parse_element(g.format(a)), a);
  }
}

INSTANTIATE_TEST_SUITE_P(Kinds, GroupProperties,
                         ::testing::Values("free:1", "free:2", "free:3", "zd:1", "zd:2", "zd:3", "fpc:2,3", "fpc:3,4",
                                           "fpc:2,2,2"),
                         [](const auto& info) {
                           std::string name = info.param;
                           for (char& ch : name)
                             if (ch == ':' || ch == ',') ch = '_';
                           return name;
                         });

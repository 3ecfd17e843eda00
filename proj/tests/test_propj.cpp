#include <gtest/gtest.h>

#include "oracles.hpp"
#include "rdlab/errors.hpp"
#include "rdlab/propj.hpp"

using namespace rdlab;

namespace {

// The last floor(s) letters instead of the first ones.
GroupElement suffix_rule(const Group& group, const GroupElement& g, double s) {
  const int j = static_cast<int>(std::floor(s));
  const auto letters = group.geodesic_letters(g);
  GroupElement u = group.identity();
  for (int i = static_cast<int>(letters.size()) - j; i < static_cast<int>(letters.size()); ++i) {
    u = group.multiply(u, letters[static_cast<std::size_t>(i)]);
  }
  return u;
}

}  // namespace

TEST(PropJ, PrefixExamples) {
  const Group f2 = Group::free(2);
  const auto g = f2.parse_element("a b a^-1");
  EXPECT_EQ(prefix_u(f2, g, 2.0), f2.parse_element("a b"));
  EXPECT_EQ(prefix_u(f2, g, 2.7), f2.parse_element("a b"));
  EXPECT_TRUE(prefix_u(f2, g, 0.0).is_identity());
  EXPECT_TRUE(prefix_u(f2, g, 0.99).is_identity());
  const auto u = prefix_u(f2, g, 3.0);
  EXPECT_EQ(u, g);
  EXPECT_TRUE(f2.multiply(f2.inverse(u), g).is_identity());
  EXPECT_THROW(prefix_u(f2, g, 4.0), InvalidArgument);
  EXPECT_THROW(prefix_u(f2, g, -0.5), InvalidArgument);
}

TEST(PropJ, ThickenedSphere) {
  EXPECT_TRUE(in_thickened_sphere(3, 3.0, 0.0));
  EXPECT_FALSE(in_thickened_sphere(4, 3.0, 0.0));
  EXPECT_TRUE(in_thickened_sphere(4, 3.0, 1.0));
  EXPECT_TRUE(in_thickened_sphere(2, 3.0, 1.0));
  EXPECT_FALSE(in_thickened_sphere(1, 3.0, 1.5));
}

TEST(PropJ, FreeGroupPassesWithZeroConstants) {
  const auto report = check_j_on_ball(Group::free(2), 5, JParameters{});
  EXPECT_TRUE(report.pass);
  EXPECT_EQ(report.violation_count, 0u);
  EXPECT_EQ(report.elements_checked, 485u);
  EXPECT_DOUBLE_EQ(report.alpha_needed, 0.0);
  EXPECT_DOUBLE_EQ(report.beta_needed, 0.0);
  EXPECT_DOUBLE_EQ(report.gamma_needed, 0.0);
}

TEST(PropJ, IntegersPassWithZeroConstants) {
  EXPECT_TRUE(check_j_on_ball(Group::free_abelian(1), 5, JParameters{}).pass);
  EXPECT_TRUE(check_j_on_ball(Group::free(1), 5, JParameters{}).pass);
}

TEST(PropJ, SuffixRuleIsCaught) {
  const auto report = check_j_on_ball(Group::free(2), 4, JParameters{}, suffix_rule);
  EXPECT_FALSE(report.pass);
  EXPECT_GT(report.violation_count, 0u);
  ASSERT_FALSE(report.violations.empty());
  EXPECT_GT(report.alpha_needed + report.beta_needed + report.gamma_needed, 0.0);
}

TEST(PropJ, ZSquaredPassesWithMeasuredSlack) {
  // Coordinatewise spelling: prefixes of ab need not be prefixes of a.
  const auto probe = check_j_on_ball(Group::free_abelian(2), 4, JParameters{});
  JParameters slack;
  slack.alpha = probe.alpha_needed;
  slack.beta = probe.beta_needed;
  slack.gamma = probe.gamma_needed;
  EXPECT_TRUE(check_j_on_ball(Group::free_abelian(2), 4, slack).pass);
}

TEST(PropJ, CountSolutionExamples) {
  const Group f2 = Group::free(2);
  const auto f2_index = SphereIndex::enumerate(f2, 3);
  EXPECT_EQ(count_solutions(f2_index, f2.parse_element("x y"), 1, 0.0, 0.0), 1u);
  for (const auto& b : f2_index.ball(2)) EXPECT_EQ(count_solutions(f2_index, b, 0, 0.0, 0.0), 1u);

  const Group z = Group::free(1);
  const auto z_index = SphereIndex::enumerate(z, 4);
  EXPECT_EQ(count_solutions(z_index, z.generator(0, 3), 1, 0.0, 0.0), 1u);
}

TEST(PropJ, MaxNExamples) {
  EXPECT_EQ(max_n_on_ball(Group::free(2), 5, 0.0, 0.0), 1u);
  for (const char* spec : {"free:2", "zd:2", "fpc:2,3"}) {
    EXPECT_EQ(max_n_on_ball(Group::parse(spec), 0, 0.0, 0.0), 1u) << spec;
  }
}

TEST(PropJ, IntegerMaxNMatchesBruteForce) {
  const std::size_t value = max_n_on_ball(Group::free_abelian(1), 6, 1.0, 1.0);
  EXPECT_EQ(value, static_cast<std::size_t>(oracle::z_max_solutions(6, 1, 1)));
  // Frozen regression value.
  EXPECT_EQ(value, 3u);
  for (int mu = 0; mu <= 2; ++mu) {
    for (int nu = 0; nu <= 2; ++nu) {
      EXPECT_EQ(max_n_on_ball(Group::free(1), 6, mu, nu), static_cast<std::size_t>(oracle::z_max_solutions(6, mu, nu)))
          << mu << " " << nu;
    }
  }
}

TEST(PropJ, InvalidParameters) {
  JParameters bad;
  bad.alpha = -1.0;
  EXPECT_THROW(bad.validate(), InvalidArgument);
  JParameters zero_n;
  zero_n.N = 0;
  EXPECT_THROW(zero_n.validate(), InvalidArgument);
  EXPECT_THROW(check_j_on_ball(SphereIndex::enumerate(Group::free(2), 2), 3, JParameters{}), InvalidArgument);
}

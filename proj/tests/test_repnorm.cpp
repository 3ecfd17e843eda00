#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdlab/errors.hpp"
#include "rdlab/repnorm.hpp"
#include "rdlab/rng.hpp"

using namespace rdlab;

namespace {

const double kPi = std::acos(-1.0);

CoeffOp random_matrix(Rng& rng, int n) {
  CoeffOp a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = Complex(rng.normal(), rng.normal());
  return a;
}

CPElement random_on_sphere(Rng& rng, const ActionPtr& action, const SphereIndex& index, int k) {
  CPElement x(action);
  for (const auto& g : index.sphere(k)) x.set(g, random_matrix(rng, action->dim()));
  return x;
}

CPElement random_in_ball(Rng& rng, const ActionPtr& action, const SphereIndex& index, int r, int terms) {
  CPElement x(action);
  const auto ball = index.ball(r);
  for (int t = 0; t < terms; ++t) x.add(ball[rng.below(ball.size())], random_matrix(rng, action->dim()));
  return x;
}

// Convolution with the action on the wrong factor: X_g alpha_g(Y_h).
CPElement flipped_product(const CPElement& x, const CPElement& y) {
  CPElement out(x.action_ptr());
  const Group& group = x.group();
  for (const auto& [g, a] : x.coeffs()) {
    for (const auto& [h, b] : y.coeffs()) out.add(group.multiply(g, h), a * x.action().apply(g, b));
  }
  return out;
}

CPElement shift_sum(const ActionPtr& action) {
  const Group& z = action->group();
  CPElement x(action);
  x.set(z.generator(0), CoeffOp::Identity(1, 1));
  x.set(z.generator(0, -1), CoeffOp::Identity(1, 1));
  return x;
}

}  // namespace

TEST(RepNorm, CompressUnitIsIdentity) {
  const auto action = oracle::make_action("free:2", "trivial:2");
  const auto op = compress(CPElement::unit(action), 3);
  const auto size = static_cast<Eigen::Index>(1 + 4 + 12 + 36) * 2;
  ASSERT_EQ(op.size(), size);
  EXPECT_EQ(op.dense(), Eigen::MatrixXcd::Identity(size, size));
}

TEST(RepNorm, CompressShiftOnIntegers) {
  const auto action = oracle::make_action("zd:1", "trivial:1");
  const Group& z = action->group();
  const auto index = SphereIndex::enumerate(z, 2);
  const auto op = compress(CPElement::monomial(action, z.generator(0), CoeffOp::Identity(1, 1)), index, 2);
  const Eigen::MatrixXcd m = op.dense();
  ASSERT_EQ(m.rows(), 5);
  // L_1 delta_h = delta_{h+1}; basis positions by the index.
  Eigen::MatrixXcd expect = Eigen::MatrixXcd::Zero(5, 5);
  for (int h = -2; h <= 1; ++h) {
    const auto from = *index.index_of(z.parse_element("(" + std::to_string(h) + ")"));
    const auto to = *index.index_of(z.parse_element("(" + std::to_string(h + 1) + ")"));
    expect(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(from)) = 1.0;
  }
  EXPECT_EQ(m, expect);
  EXPECT_TRUE((m * m * m * m * m).isZero());
}

TEST(RepNorm, CompressMatchesDenseOracle) {
  Rng rng = Rng::stream(17, "compress");
  for (const auto& [g, a] : std::vector<std::pair<std::string, std::string>>{
           {"free:2", "perm:2:g1=(0 1)"}, {"zd:2", "perm:2:g1=(0 1)"}, {"fpc:2,3", "perm:3:g2=(0 1 2)"}}) {
    const auto action = oracle::make_action(g, a);
    const auto index = SphereIndex::enumerate(action->group(), 4);
    for (int t = 0; t < 3; ++t) {
      const CPElement x = random_in_ball(rng, action, index, 2, 5);
      const Eigen::MatrixXcd ours = compress(x, index, 4).dense();
      EXPECT_LT((ours - oracle::dense_representation(x, index, 4)).cwiseAbs().maxCoeff(), 1e-14) << g;
    }
  }
}

TEST(RepNorm, CompressBudget) {
  const auto action = oracle::make_action("free:2", "trivial:1");
  EXPECT_THROW(compress(CPElement::unit(action), 6, 100), BudgetExceeded);
}

TEST(RepNorm, SingleTermEqualsCoefficientNorm) {
  const auto action = oracle::make_action("free:2", "perm:2:g1=(0 1)");
  Rng rng = Rng::stream(17, "single");
  const CoeffOp a = random_matrix(rng, 2);
  const auto x = CPElement::monomial(action, action->group().identity(), a);
  EXPECT_NEAR(norm_lower(x, 3).value, op_norm(a), 1e-6 * op_norm(a));
  CoeffOp d = CoeffOp::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 1.0;
  EXPECT_NEAR(norm_exact_small(CPElement::monomial(action, action->group().identity(), d), 2).value, 2.0, 1e-12);
  EXPECT_EQ(norm_exact_small(CPElement::zero(action), 2).value, 0.0);
  EXPECT_EQ(norm_lower(CPElement::zero(action), 2).value, 0.0);
}

TEST(RepNorm, IntegerShiftSum) {
  const auto action = oracle::make_action("zd:1", "trivial:1");
  const CPElement x = shift_sum(action);
  const double closed = 2.0 * std::cos(kPi / 42.0);
  const auto est = norm_lower(x, 20);
  EXPECT_GE(est.value, closed - 1e-6);
  EXPECT_LE(est.value, 2.0);
  EXPECT_NEAR(norm_exact_small(x, 20).value, closed, 1e-12);
  // A grid sup of the symbol 2cos(theta) is an independent check of ||x|| = 2.
  EXPECT_NEAR(oracle::trig_sup(x, 360), 2.0, 1e-12);
}

TEST(RepNorm, FreeGeneratorSum) {
  const auto action = oracle::make_action("free:2", "trivial:1");
  const auto index = SphereIndex::enumerate(action->group(), 10);
  CPElement x(action);
  for (const auto& g : index.sphere(1)) x.set(g, CoeffOp::Identity(1, 1));
  const auto est = norm_lower(x, index, 10);
  EXPECT_LE(est.value, 4.0);
  // ||sum over C_1|| = 2 sqrt(3); compressions approach it from below.
  EXPECT_LE(est.value, 2.0 * std::sqrt(3.0) + 1e-9);
  EXPECT_GE(est.value, 0.95 * 2.0 * std::sqrt(3.0));
  EXPECT_GE(est.value, column_norm(x));
}

TEST(RepNorm, PowerMatchesDense) {
  Rng rng = Rng::stream(17, "power");
  int checked = 0;
  for (const auto& [g, a] : std::vector<std::pair<std::string, std::string>>{
           {"free:2", "trivial:1"}, {"free:2", "perm:2:g1=(0 1)"}, {"zd:2", "trivial:1"}, {"fpc:2,3", "trivial:2"}}) {
    const auto action = oracle::make_action(g, a);
    const int R = action->group().kind() == GroupKind::kFree ? 4 : 6;
    const auto index = SphereIndex::enumerate(action->group(), R);
    for (int t = 0; t < 3; ++t) {
      const CPElement x = random_in_ball(rng, action, index, 2, 4);
      const double dense = norm_exact_small(x, index, R).value;
      const double oracle_dense = oracle::dense_norm(oracle::dense_representation(x, index, R));
      EXPECT_NEAR(dense, oracle_dense, 1e-9 * dense);
      PowerOptions options;
      options.tol = 1e-10;
      const auto est = norm_lower(x, index, R, options);
      EXPECT_LE(est.value, dense * (1.0 + 1e-12));
      EXPECT_NEAR(est.value, dense, 1e-6 * dense) << g << " " << a << " trial " << t;
      for (std::size_t i = 1; i < est.history.size(); ++i) EXPECT_GE(est.history[i].second, est.history[i - 1].second);
      ++checked;
    }
  }
  EXPECT_EQ(checked, 12);
}

TEST(RepNorm, EstimatesNeverExceedTriangleBound) {
  Rng rng = Rng::stream(17, "triangle");
  const auto action = oracle::make_action("fpc:2,3", "perm:3:g1=(0 1),g2=(0 1 2)");
  const auto index = SphereIndex::enumerate(action->group(), 6);
  for (int t = 0; t < 10; ++t) {
    const CPElement x = random_in_ball(rng, action, index, 3, 6);
    EXPECT_LE(norm_lower(x, index, 6).value, triangle_bound(x) * (1.0 + 1e-12));
  }
}

TEST(RepNorm, DenseLimit) {
  const auto action = oracle::make_action("free:2", "trivial:1");
  EXPECT_THROW(norm_exact_small(CPElement::unit(action), 7), BudgetExceeded);
}

TEST(RepNorm, PiBound) {
  Rng rng = Rng::stream(17, "pi");
  const auto action = oracle::make_action("free:2", "perm:2:g1=(0 1)");
  const auto index = SphereIndex::enumerate(action->group(), 6);
  const CPElement x = random_in_ball(rng, action, index, 2, 5);
  EXPECT_NEAR(norm_lower_pi(x, {CPElement::unit(action)}), column_norm(x), 1e-12);

  const CoeffOp a = random_matrix(rng, 2);
  const auto single = CPElement::monomial(action, action->group().identity(), a);
  double best = 0.0;
  for (int t = 0; t < 200; ++t) {
    const CoeffOp b = random_matrix(rng, 2);
    best = std::max(best, norm_lower_pi(single, {CPElement::monomial(action, action->group().identity(), b)}));
  }
  EXPECT_LE(best, op_norm(a) * (1.0 + 1e-12));
  EXPECT_GE(best, 0.9 * op_norm(a));

  const double pi = norm_lower_pi(x, {CPElement::unit(action), adjoint(x)});
  PowerOptions options;
  options.tol = 1e-10;
  EXPECT_LE(pi, norm_lower(x, index, 6, options).value * (1.0 + 1e-6) + 1e-9);
  EXPECT_THROW(norm_lower_pi(x, {CPElement::zero(action)}), InvalidArgument);
}

TEST(RepNorm, InteriorProductCheck) {
  Rng rng = Rng::stream(17, "interior");
  const auto action = oracle::make_action("free:2", "trivial:1");
  const auto index = SphereIndex::enumerate(action->group(), 2);
  for (int t = 0; t < 100; ++t) {
    const CPElement x = random_on_sphere(rng, action, index, 2);
    const CPElement y = random_on_sphere(rng, action, index, 2);
    const auto report = interior_product_check(x, y, 6);
    EXPECT_LT(report.max_deviation, 1e-10);
    EXPECT_EQ(report.interior_radius, 2);
    EXPECT_EQ(report.columns_checked, 17u);
  }
  EXPECT_THROW(interior_product_check(random_on_sphere(rng, action, index, 2), random_on_sphere(rng, action, index, 2), 4),
               InvalidArgument);
}

TEST(RepNorm, InteriorProductCheckWithUnit) {
  Rng rng = Rng::stream(17, "interior-unit");
  const auto action = oracle::make_action("fpc:2,3", "perm:3:g2=(0 1 2)");
  const auto index = SphereIndex::enumerate(action->group(), 3);
  const CPElement x = random_in_ball(rng, action, index, 3, 6);
  EXPECT_EQ(interior_product_check(CPElement::unit(action), x, 5).max_deviation, 0.0);
  EXPECT_EQ(interior_product_check(x, CPElement::unit(action), 5).max_deviation, 0.0);
}

TEST(RepNorm, InteriorProductCheckCatchesWrongConvention) {
  Rng rng = Rng::stream(17, "interior-flip");
  const auto action = oracle::make_action("free:2", "perm:3:g1=(0 1 2),g2=(0 1)");
  const auto index = SphereIndex::enumerate(action->group(), 2);
  const CPElement x = random_in_ball(rng, action, index, 2, 4);
  const CPElement y = random_in_ball(rng, action, index, 2, 4);
  const auto report = interior_product_check(x, y, 5, flipped_product(x, y));
  EXPECT_GT(report.max_deviation, 1e-3);
}

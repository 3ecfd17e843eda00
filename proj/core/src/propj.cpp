#include "rdlab/propj.hpp"

#include <algorithm>
#include <cmath>

#include "rdlab/errors.hpp"

namespace rdlab {

namespace {

constexpr double kEps = 1e-12;

void require_radius(const SphereIndex& index, int R) {
  if (R < 0) throw InvalidArgument("radius must be >= 0");
  if (index.radius() < R) {
    throw InvalidArgument("sphere index covers radius " + std::to_string(index.radius()) +
                          ", need " + std::to_string(R));
  }
}

}  // namespace

void JParameters::validate() const {
  for (double x : {alpha, beta, gamma, mu, nu}) {
    if (!std::isfinite(x) || x < 0.0) throw InvalidArgument("(J) constants must be finite and >= 0");
  }
  if (N < 1) throw InvalidArgument("N must be >= 1");
}

bool in_thickened_sphere(int length, double k, double alpha) {
  return k - alpha <= length + kEps && length <= k + alpha + kEps;
}

GroupElement prefix_u(const Group& group, const GroupElement& g, double s) {
  group.check_member(g);
  if (!(s >= 0.0) || !(s < g.length() + 1.0)) {
    throw InvalidArgument("prefix parameter s out of range [0, |g|+1)");
  }
  if (s < 1.0) return group.identity();
  return group.geodesic_prefix(g, static_cast<int>(std::floor(s)));
}

JCheckReport check_j_on_ball(const SphereIndex& index, int R, const JParameters& params,
                             const PrefixRule& rule, const JCheckOptions& options) {
  params.validate();
  require_radius(index, R);
  const Group& group = index.group();
  JCheckReport report;

  auto record = [&](JViolation v) {
    report.pass = false;
    ++report.violation_count;
    if (report.violations.size() < options.max_recorded) report.violations.push_back(std::move(v));
  };

  // Items (i) and (ii): every g in B_R, integer s in [0, |g|].
  for (const auto& g : index.ball(R)) {
    ++report.elements_checked;
    for (int s = 0; s <= g.length(); ++s) {
      const GroupElement u = rule(group, g, s);
      const GroupElement v = group.multiply(group.inverse(u), g);
      const double du = std::abs(u.length() - static_cast<double>(s));
      const double dv = std::abs(v.length() - static_cast<double>(g.length() - s));
      const double dv_literal = std::abs(v.length() - static_cast<double>(g.length() + 1 - s));
      report.alpha_needed = std::max(report.alpha_needed, du);
      report.beta_needed = std::max(report.beta_needed, dv);
      report.beta_literal_needed = std::max(report.beta_literal_needed, dv_literal);
      if (!in_thickened_sphere(u.length(), s, params.alpha)) {
        record({"u", g, static_cast<double>(s), std::nullopt, std::nullopt, u, v, std::nullopt});
      }
      if (!in_thickened_sphere(v.length(), g.length() - s, params.beta)) {
        record({"v", g, static_cast<double>(s), std::nullopt, std::nullopt, u, v, std::nullopt});
      }
    }
  }

  // Item (iii): pairs with |a| + |b| <= R.
  for (int la = 0; la <= R; ++la) {
    for (const auto& a : index.sphere(la)) {
      for (int lb = 0; la + lb <= R; ++lb) {
        for (const auto& b : index.sphere(lb)) {
          ++report.pairs_checked;
          const GroupElement g = group.multiply(a, b);
          const int p = (la + lb - g.length()) / 2;
          const double s = la - p;
          const GroupElement u = rule(group, g, s);
          const GroupElement u_inv = group.inverse(u);
          const GroupElement c = group.multiply(u_inv, a);
          const GroupElement v = group.multiply(u_inv, g);
          report.gamma_needed = std::max(report.gamma_needed, std::abs(c.length() - static_cast<double>(p)));
          const bool factor_ok = group.multiply(u, c) == a &&
                                 group.multiply(group.inverse(c), v) == b;
          if (!factor_ok) record({"factor", g, s, a, b, u, v, c});
          if (!in_thickened_sphere(c.length(), p, params.gamma)) record({"c", g, s, a, b, u, v, c});
        }
      }
    }
  }
  return report;
}

JCheckReport check_j_on_ball(const Group& group, int R, const JParameters& params,
                             const PrefixRule& rule, const JCheckOptions& options) {
  return check_j_on_ball(SphereIndex::enumerate(group, R), R, params, rule, options);
}

std::size_t count_solutions(const SphereIndex& index, const GroupElement& b, int p, double mu,
                            double nu) {
  const Group& group = index.group();
  group.check_member(b);
  if (p < 0 || p > b.length()) throw InvalidArgument("p must satisfy 0 <= p <= |b|");
  if (!(mu >= 0.0) || !(nu >= 0.0)) throw InvalidArgument("mu and nu must be >= 0");
  const int reach = static_cast<int>(std::floor(p + mu + kEps));
  require_radius(index, reach);
  const double target = b.length() - p;
  std::size_t count = 0;
  for (const auto& c : index.thickened_sphere(p, mu)) {
    const GroupElement v = group.multiply(c, b);
    if (in_thickened_sphere(v.length(), target, nu)) ++count;
  }
  return count;
}

std::size_t max_n_on_ball(const SphereIndex& index, int R, double mu, double nu) {
  require_radius(index, R);
  std::size_t best = 0;
  for (const auto& b : index.ball(R)) {
    for (int p = 0; p <= b.length(); ++p) best = std::max(best, count_solutions(index, b, p, mu, nu));
  }
  return best;
}

std::size_t max_n_on_ball(const Group& group, int R, double mu, double nu) {
  const int reach = R + static_cast<int>(std::floor(mu + kEps));
  return max_n_on_ball(SphereIndex::enumerate(group, reach), R, mu, nu);
}

}  // namespace rdlab

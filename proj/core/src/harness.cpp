#include "rdlab/harness.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

#include <Eigen/QR>
#include <json.hpp>

#include "rdlab/errors.hpp"
#include "rdlab/propj.hpp"

namespace rdlab {

namespace {

using ordered_json = nlohmann::ordered_json;

const double kPi = std::acos(-1.0);

struct IdName {
  InequalityId id;
  const char* name;
};

constexpr std::array<IdName, 12> kIdNames{{
    {InequalityId::kProp61, "prop61"},
    {InequalityId::kCor62Free, "cor62_free"},
    {InequalityId::kCor63HagpropA, "cor63_hagprop_a"},
    {InequalityId::kCor63HagpropB, "cor63_hagprop_b"},
    {InequalityId::kThm64, "thm64"},
    {InequalityId::kCor65Free, "cor65_free"},
    {InequalityId::kThm5PolygrowthOp, "thm5_polygrowth_op"},
    {InequalityId::kThm5PolygrowthRow, "thm5_polygrowth_row"},
    {InequalityId::kZpropSection4, "zprop_section4"},
    {InequalityId::kProp7Multiplier, "prop7_multiplier"},
    {InequalityId::kProbeDesired, "probe_desired"},
    {InequalityId::kProbeMixed, "probe_mixed"},
}};

void require_sphere_support(const CPElement& x, int k, const char* what) {
  for (const auto& [g, a] : x.coeffs()) {
    if (g.length() != k) {
      throw InvalidArgument(std::string(what) + ": support element of length " + std::to_string(g.length()) +
                            " outside C_" + std::to_string(k));
    }
  }
}

std::vector<GroupElement> choose(Rng& rng, std::span<const GroupElement> pool, int size) {
  std::vector<GroupElement> out(pool.begin(), pool.end());
  if (size <= 0 || static_cast<std::size_t>(size) >= out.size()) return out;
  // Partial Fisher-Yates.
  for (std::size_t i = 0; i < static_cast<std::size_t>(size); ++i) {
    const std::size_t j = i + rng.below(out.size() - i);
    std::swap(out[i], out[j]);
  }
  out.resize(static_cast<std::size_t>(size));
  std::sort(out.begin(), out.end());
  return out;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string to_string(InequalityId id) {
  for (const auto& entry : kIdNames) {
    if (entry.id == id) return entry.name;
  }
  throw InvalidArgument("unknown inequality id");
}

InequalityId parse_inequality_id(std::string_view name) {
  for (const auto& entry : kIdNames) {
    if (name == entry.name) return entry.id;
  }
  throw InvalidArgument("unknown inequality id '" + std::string(name) + "'");
}

const std::vector<InequalityId>& all_inequality_ids() {
  static const std::vector<InequalityId> ids = [] {
    std::vector<InequalityId> out;
    for (const auto& entry : kIdNames) out.push_back(entry.id);
    return out;
  }();
  return ids;
}

bool is_probe(InequalityId id) { return id == InequalityId::kProbeDesired || id == InequalityId::kProbeMixed; }

std::string to_string(Verdict v) { return v == Verdict::kConsistent ? "consistent" : "VIOLATION"; }

std::string to_string(CoeffSampler s) {
  switch (s) {
    case CoeffSampler::kGaussian:
      return "gaussian";
    case CoeffSampler::kUnitary:
      return "unitary";
    case CoeffSampler::kRankOne:
      return "rank-one";
  }
  return "?";
}

std::string to_string(SupportSampler s) {
  switch (s) {
    case SupportSampler::kFullSphere:
      return "sphere";
    case SupportSampler::kSphereSubset:
      return "sphere-subset";
    case SupportSampler::kBallSubset:
      return "ball-subset";
  }
  return "?";
}

CoeffSampler parse_coeff_sampler(std::string_view name) {
  for (auto s : {CoeffSampler::kGaussian, CoeffSampler::kUnitary, CoeffSampler::kRankOne}) {
    if (name == to_string(s)) return s;
  }
  throw InvalidArgument("unknown coefficient sampler '" + std::string(name) + "'");
}

SupportSampler parse_support_sampler(std::string_view name) {
  for (auto s : {SupportSampler::kFullSphere, SupportSampler::kSphereSubset, SupportSampler::kBallSubset}) {
    if (name == to_string(s)) return s;
  }
  throw InvalidArgument("unknown support sampler '" + std::string(name) + "'");
}

Verdict judge(double lhs, double rhs) {
  return lhs > rhs + 1e-6 * std::max(1.0, rhs) ? Verdict::kViolation : Verdict::kConsistent;
}

void finalize(InequalityReport& report) {
  report.margin = report.rhs - report.lhs;
  report.verdict = judge(report.lhs, report.rhs);
}

CoeffOp sample_coefficient(Rng& rng, CoeffSampler sampler, int n, double scale) {
  auto gaussian = [&](int rows, int cols) {
    CoeffOp m(rows, cols);
    const double w = 1.0 / std::sqrt(2.0);
    for (int j = 0; j < cols; ++j) {
      for (int i = 0; i < rows; ++i) m(i, j) = Complex(w * rng.normal(), w * rng.normal());
    }
    return m;
  };
  switch (sampler) {
    case CoeffSampler::kGaussian:
      return scale * gaussian(n, n);
    case CoeffSampler::kUnitary: {
      // Haar unitary: Q from QR of a gaussian matrix with the phases of
      // diag(R) divided out.
      const CoeffOp g = gaussian(n, n);
      Eigen::HouseholderQR<CoeffOp> qr(g);
      CoeffOp q = qr.householderQ();
      const CoeffOp r = qr.matrixQR();
      for (int j = 0; j < n; ++j) {
        const double mod = std::abs(r(j, j));
        if (mod > 0.0) q.col(j) *= r(j, j) / mod;
      }
      return scale * q;
    }
    case CoeffSampler::kRankOne: {
      const CoeffOp u = gaussian(n, 1);
      const CoeffOp v = gaussian(n, 1);
      return scale * (u * v.adjoint());
    }
  }
  throw InvalidArgument("unknown coefficient sampler");
}

std::vector<GroupElement> sample_support(Rng& rng, const SphereIndex& index, SupportSampler sampler, int radius,
                                         int size) {
  if (radius < 0) throw InvalidArgument("support radius must be >= 0");
  if (radius > index.radius()) {
    throw InvalidArgument("support radius " + std::to_string(radius) + " exceeds the enumerated radius " +
                          std::to_string(index.radius()));
  }
  switch (sampler) {
    case SupportSampler::kFullSphere:
      return choose(rng, index.sphere(radius), 0);
    case SupportSampler::kSphereSubset:
      return choose(rng, index.sphere(radius), size);
    case SupportSampler::kBallSubset:
      return choose(rng, index.ball(radius), size);
  }
  throw InvalidArgument("unknown support sampler");
}

CPElement sample_element(Rng& rng, const ActionPtr& action, const SphereIndex& index, const TrialSpec& spec) {
  CPElement x(action);
  for (const auto& g : sample_support(rng, index, spec.support, spec.radius, spec.support_size)) {
    x.set(g, sample_coefficient(rng, spec.coeff, action->dim(), spec.scale));
  }
  return x;
}

Experiment::Experiment(const TrialSpec& spec, int support_radius)
    : spec_(spec),
      action_(std::make_shared<const GroupAction>(GroupAction::parse(Group::parse(spec.group), spec.action))),
      index_(SphereIndex::enumerate(action_->group(), 0)) {
  if (spec.trials < 0) throw InvalidArgument("trial count must be >= 0");
  if (support_radius < 0) throw InvalidArgument("support radius must be >= 0");
  const std::size_t n = static_cast<std::size_t>(action_->dim());
  const std::size_t budget = std::max<std::size_t>(1, spec.norm.ball_budget / n);
  // Largest radius up to support + extra whose ball fits the budget.
  for (int r = support_radius + std::max(0, spec.norm.extra_radius);; --r) {
    try {
      // The support radius itself is only bounded by the element budget.
      index_ = SphereIndex::enumerate(action_->group(), r, r > support_radius ? budget : default_element_budget());
      break;
    } catch (const BudgetExceeded&) {
      if (r <= support_radius) throw;
    }
  }
}

Rng Experiment::trial_rng(InequalityId id, int trial) const {
  return Rng::stream(spec_.seed, to_string(id), static_cast<std::uint64_t>(trial));
}

CPElement Experiment::sample(Rng& rng, SupportSampler support, int radius, int size) const {
  TrialSpec local = spec_;
  local.support = support;
  local.radius = radius;
  local.support_size = size;
  return sample_element(rng, action_, index_, local);
}

int Experiment::compression_radius(const CPElement& x) const {
  const std::size_t n = static_cast<std::size_t>(dim());
  const std::size_t supp = std::max<std::size_t>(1, x.support_size());
  int R = std::min(index_.radius(), x.max_length() + std::max(0, spec_.norm.extra_radius));
  while (R > 0) {
    const std::size_t rows = index_.ball_size(R) * n;
    if (rows <= spec_.norm.ball_budget && rows * n * supp <= spec_.norm.nonzero_budget) break;
    --R;
  }
  return R;
}

LowerBound Experiment::lower_bound(const CPElement& x) const {
  LowerBound out;
  if (x.is_zero()) {
    out.estimate.history.emplace_back(0, 0.0);
    return out;
  }
  const int R = compression_radius(x);
  out.estimate = norm_lower(x, index_, R, spec_.norm.power);
  out.pi_bound = norm_lower_pi(x, {CPElement::unit(action_), adjoint(x)});
  out.value = std::max(out.estimate.value, out.pi_bound);
  return out;
}

InequalityReport Experiment::blank(InequalityId id, int trial) const {
  InequalityReport r;
  r.id = id;
  r.probe = is_probe(id);
  r.group = group().spec();
  r.action = action_->spec();
  r.n = dim();
  r.seed = spec_.seed;
  r.trial = trial;
  r.params["coeff"] = to_string(spec_.coeff);
  r.params["scale"] = format_double(spec_.scale);
  r.params["support"] = to_string(spec_.support);
  r.params["support_size"] = std::to_string(spec_.support_size);
  return r;
}

JConstants measure_j_constants(const Group& group, int R) {
  const SphereIndex index = SphereIndex::enumerate(group, R);
  const JCheckReport report = check_j_on_ball(index, R, JParameters{});
  JConstants out;
  out.radius = R;
  out.alpha = report.alpha_needed;
  out.beta = report.beta_needed;
  out.gamma = report.gamma_needed;
  out.N = max_n_on_ball(group, R, out.gamma, out.beta + 1.0);
  out.M = static_cast<double>(out.N) * kPi / std::sqrt(6.0) * std::sqrt(2.0);
  return out;
}

PolyGrowthConstants polygrowth_constants(const Group& group, int fit_radius) {
  const GrowthFit fit = growth_fit(SphereIndex::enumerate(group, fit_radius));
  if (!fit.polynomial) {
    throw InvalidArgument("group " + group.spec() + " shows no polynomial growth up to radius " +
                          std::to_string(fit_radius));
  }
  PolyGrowthConstants out;
  out.C = fit.C;
  out.s = fit.s;
  out.M = kPi * std::sqrt(2.0 * fit.C) / std::sqrt(6.0);
  out.rd_C = out.M;
  out.rd_s = (fit.s + 2.0) / 2.0;
  return out;
}

double zprop_constant() { return std::sqrt(kPi * kPi / 3.0 - 1.0); }

InequalityReport evaluate_prop61(const Experiment& ex, const CPElement& x, int k, double N, int trial,
                                 InequalityId id) {
  require_sphere_support(x, k, "prop61");
  InequalityReport r = ex.blank(id, trial);
  r.params["k"] = std::to_string(k);
  r.constants["N"] = N;
  r.lower = ex.lower_bound(x);
  r.lhs = r.lower.value;
  r.rhs = N * (1.0 + k) * l2_norm(x);
  finalize(r);
  return r;
}

InequalityReport evaluate_thm64(const Experiment& ex, const CPElement& x, double M, int trial, InequalityId id) {
  InequalityReport r = ex.blank(id, trial);
  r.params["radius"] = std::to_string(x.max_length());
  r.constants["M"] = M;
  r.lower = ex.lower_bound(x);
  r.lhs = r.lower.value;
  r.rhs = M * rd_rhs_scalar(x, 2.0);
  finalize(r);
  return r;
}

std::vector<InequalityReport> evaluate_polygrowth(const Experiment& ex, const CPElement& x,
                                                  const PolyGrowthConstants& constants, int trial) {
  const double e = constants.s + 2.0;
  auto weight = [e](int len) { return std::pow(1.0 + len, e); };
  const LowerBound lower = ex.lower_bound(x);
  std::vector<InequalityReport> out;
  for (auto id : {InequalityId::kThm5PolygrowthOp, InequalityId::kThm5PolygrowthRow}) {
    InequalityReport r = ex.blank(id, trial);
    r.params["radius"] = std::to_string(x.max_length());
    r.constants["C"] = constants.C;
    r.constants["s"] = constants.s;
    r.constants["M"] = constants.M;
    r.lower = lower;
    r.lhs = lower.value;
    r.rhs = constants.M *
            (id == InequalityId::kThm5PolygrowthOp ? weighted_column_norm(x, weight) : weighted_row_norm(x, weight));
    finalize(r);
    out.push_back(std::move(r));
  }
  return out;
}

namespace {

CPElement annulus_product(const CPElement& x, const CPElement& y, int m) {
  return multiply_symbol(MultiplierSymbol(IndicatorAnnulus{m}), product(x, y));
}

void fill_klm(InequalityReport& r, int k, int l, int m) {
  r.params["k"] = std::to_string(k);
  r.params["l"] = std::to_string(l);
  r.params["m"] = std::to_string(m);
  const int d = k + l - m;
  r.params["p"] = d >= 0 ? std::to_string(d / 2) : "none";
}

}  // namespace

std::vector<InequalityReport> evaluate_hagprop(const Experiment& ex, const CPElement& x, const CPElement& y, int k,
                                               int l, int m, double N, int trial) {
  require_sphere_support(x, k, "hagprop X");
  require_sphere_support(y, l, "hagprop Y");
  const CPElement z = annulus_product(x, y, m);
  const LowerBound lower = ex.lower_bound(z);
  std::vector<InequalityReport> out;
  for (auto id : {InequalityId::kCor63HagpropA, InequalityId::kCor63HagpropB}) {
    InequalityReport r = ex.blank(id, trial);
    fill_klm(r, k, l, m);
    r.constants["N"] = N;
    r.lower = lower;
    r.lhs = lower.value;
    r.rhs = id == InequalityId::kCor63HagpropA ? N * l2_norm(x) * column_norm(y) : N * row_norm(x) * l2_norm(y);
    // l2 norm of the truncated product in place of its operator norm.
    r.diagnostics["lhs_l2"] = l2_norm(z);
    finalize(r);
    out.push_back(std::move(r));
  }
  return out;
}

InequalityReport evaluate_multiplier(const Experiment& ex, const CPElement& x, const MultiplierSymbol& phi, double C,
                                     double s, int trial) {
  const auto m = phi.decay_sup(s);
  if (!m) throw InvalidArgument("multiplier symbol " + phi.describe() + " has unbounded decay supremum");
  InequalityReport r = ex.blank(InequalityId::kProp7Multiplier, trial);
  r.params["radius"] = std::to_string(x.max_length());
  r.params["symbol"] = phi.describe();
  r.constants["C"] = C;
  r.constants["s"] = s;
  r.constants["m"] = *m;
  if (const auto* decay = std::get_if<ExponentialDecay>(&phi.rule())) r.constants["lambda"] = decay->lambda;
  r.lower = ex.lower_bound(multiply_symbol(phi, x));
  r.lhs = r.lower.value;
  const double upper = triangle_bound(x);
  r.rhs = 2.0 * C * *m * upper;
  r.diagnostics["upper_x"] = upper;
  const double lower_x = ex.lower_bound(x).value;
  r.diagnostics["lower_x"] = lower_x;
  if (lower_x > 0.0) r.diagnostics["ratio"] = r.lhs / lower_x;
  finalize(r);
  return r;
}

InequalityReport evaluate_zprop(const Experiment& ex, const CPElement& x, int trial) {
  const Group& g = ex.group();
  if (g.kind() != GroupKind::kFreeAbelian || g.rank() != 1 || ex.dim() != 1) {
    throw InvalidArgument("zprop_section4 needs the group zd:1 with scalar coefficients");
  }
  InequalityReport r = ex.blank(InequalityId::kZpropSection4, trial);
  r.params["radius"] = std::to_string(x.max_length());
  r.constants["K"] = zprop_constant();
  r.lower = ex.lower_bound(x);
  r.lhs = r.lower.value;
  r.rhs = zprop_constant() * rd_rhs_scalar(x, 1.0);
  finalize(r);
  return r;
}

InequalityReport evaluate_desired(const Experiment& ex, const CPElement& x, const CPElement& y, int k, int l, int m,
                                  double N, int trial) {
  require_sphere_support(x, k, "probe_desired X");
  require_sphere_support(y, l, "probe_desired Y");
  InequalityReport r = ex.blank(InequalityId::kProbeDesired, trial);
  fill_klm(r, k, l, m);
  r.constants["N"] = N;
  const CPElement z = annulus_product(x, y, m);
  r.lower = ex.lower_bound(z);
  r.lhs = r.lower.value;
  r.rhs = N * row_norm(x) * column_norm(y);
  r.diagnostics["lhs_l2"] = l2_norm(z);
  r.diagnostics["rhs_cor63_a"] = N * l2_norm(x) * column_norm(y);
  r.diagnostics["rhs_cor63_b"] = N * row_norm(x) * l2_norm(y);
  finalize(r);
  return r;
}

InequalityReport evaluate_mixed(const Experiment& ex, const CPElement& x, double C, double s, int trial) {
  if (ex.group().kind() != GroupKind::kFree) throw InvalidArgument("probe_mixed needs a free group");
  InequalityReport r = ex.blank(InequalityId::kProbeMixed, trial);
  r.params["radius"] = std::to_string(x.max_length());
  r.constants["C"] = C;
  r.constants["s"] = s;
  r.lower = ex.lower_bound(x);
  r.lhs = r.lower.value;
  r.rhs = C * rd_rhs_mixed(x, s);
  r.diagnostics["rhs_operator"] = C * rd_rhs_operator(x, s);
  r.diagnostics["rhs_scalar"] = C * rd_rhs_scalar(x, s);
  finalize(r);
  return r;
}

std::vector<InequalityReport> verify_prop61(const TrialSpec& spec, int k, double N, InequalityId id) {
  if (spec.support == SupportSampler::kBallSubset) throw InvalidArgument("prop61 needs a sphere support sampler");
  const Experiment ex(spec, k);
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(id, t);
    out.push_back(evaluate_prop61(ex, ex.sample(rng, spec.support, k, spec.support_size), k, N, t, id));
  }
  return out;
}

std::vector<InequalityReport> verify_thm64(const TrialSpec& spec, double M, InequalityId id) {
  const Experiment ex(spec, spec.radius);
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(id, t);
    out.push_back(evaluate_thm64(ex, ex.sample(rng), M, t, id));
  }
  return out;
}

std::vector<InequalityReport> verify_polygrowth(const TrialSpec& spec) {
  const Experiment ex(spec, spec.radius);
  const PolyGrowthConstants constants = polygrowth_constants(ex.group());
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kThm5PolygrowthOp, t);
    for (auto& r : evaluate_polygrowth(ex, ex.sample(rng), constants, t)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<InequalityReport> verify_hagprop(const TrialSpec& spec, int k, int l, int m, double N) {
  if (spec.support == SupportSampler::kBallSubset) throw InvalidArgument("hagprop needs a sphere support sampler");
  const Experiment ex(spec, std::max(k + l, std::max(k, l)));
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kCor63HagpropA, t);
    const CPElement x = ex.sample(rng, spec.support, k, spec.support_size);
    const CPElement y = ex.sample(rng, spec.support, l, spec.support_size);
    for (auto& r : evaluate_hagprop(ex, x, y, k, l, m, N, t)) out.push_back(std::move(r));
  }
  return out;
}

std::vector<InequalityReport> verify_multiplier(const TrialSpec& spec, const MultiplierSymbol& phi, double C,
                                                double s) {
  if (!phi.decay_sup(s)) throw InvalidArgument("multiplier symbol " + phi.describe() + " has unbounded m");
  const Experiment ex(spec, spec.radius);
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kProp7Multiplier, t);
    out.push_back(evaluate_multiplier(ex, ex.sample(rng), phi, C, s, t));
  }
  return out;
}

std::vector<InequalityReport> verify_zprop(const TrialSpec& spec) {
  const Experiment ex(spec, spec.radius);
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kZpropSection4, t);
    out.push_back(evaluate_zprop(ex, ex.sample(rng), t));
  }
  return out;
}

std::vector<InequalityReport> probe_desired(const TrialSpec& spec, int k, int l, int m, double N) {
  if (spec.support == SupportSampler::kBallSubset) {
    throw InvalidArgument("probe_desired needs a sphere support sampler");
  }
  const Experiment ex(spec, std::max(k + l, std::max(k, l)));
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kProbeDesired, t);
    const CPElement x = ex.sample(rng, spec.support, k, spec.support_size);
    const CPElement y = ex.sample(rng, spec.support, l, spec.support_size);
    out.push_back(evaluate_desired(ex, x, y, k, l, m, N, t));
  }
  return out;
}

std::vector<InequalityReport> probe_mixed(const TrialSpec& spec, double C, double s) {
  const Experiment ex(spec, spec.radius);
  const int n = ex.dim();
  std::vector<InequalityReport> out;
  for (int t = 0; t < spec.trials; ++t) {
    Rng rng = ex.trial_rng(InequalityId::kProbeMixed, t);
    CPElement x(ex.action());
    if (t % 2 == 0) {
      x = ex.sample(rng);
    } else {
      // Structured trial: every element of B_radius carries a matrix unit
      // damped by (1+|g|)^{-s}, so each sphere sum stays spread out.
      std::size_t slot = rng.below(static_cast<std::uint64_t>(n * n));
      for (const auto& g : ex.index().ball(spec.radius)) {
        CoeffOp a = CoeffOp::Zero(n, n);
        a(static_cast<int>(slot % n), static_cast<int>((slot / n) % n)) = spec.scale * std::pow(1.0 + g.length(), -s);
        x.set(g, a);
        ++slot;
      }
    }
    InequalityReport r = evaluate_mixed(ex, x, C, s, t);
    r.params["structured"] = t % 2 == 0 ? "false" : "true";
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<double> multiplier_defects(const Experiment& experiment, const CPElement& x,
                                       const std::vector<double>& lambdas) {
  std::vector<double> out;
  for (double lambda : lambdas) {
    const CPElement cut = multiply_symbol(MultiplierSymbol(ExponentialDecay{lambda}), x);
    out.push_back(experiment.lower_bound(cut - x).value);
  }
  return out;
}

RunSummary summarize(const std::vector<InequalityReport>& reports) {
  RunSummary s;
  s.records = reports.size();
  bool first = true;
  for (const auto& r : reports) {
    if (r.verdict == Verdict::kViolation) ++s.violations;
    s.min_margin = first ? r.margin : std::min(s.min_margin, r.margin);
    first = false;
    if (r.rhs > 0.0) s.max_ratio = std::max(s.max_ratio, r.lhs / r.rhs);
  }
  return s;
}

std::string summary_table(const std::vector<InequalityReport>& reports) {
  std::vector<InequalityId> ids;
  for (const auto& r : reports) {
    if (std::find(ids.begin(), ids.end(), r.id) == ids.end()) ids.push_back(r.id);
  }
  std::ostringstream out;
  char line[200];
  std::snprintf(line, sizeof line, "%-22s %8s %10s %14s %12s\n", "inequality", "records", "violations", "min_margin",
                "max_lhs/rhs");
  out << line;
  for (auto id : ids) {
    std::vector<InequalityReport> subset;
    for (const auto& r : reports) {
      if (r.id == id) subset.push_back(r);
    }
    const RunSummary s = summarize(subset);
    std::snprintf(line, sizeof line, "%-22s %8zu %10zu %14.6g %12.6f\n", to_string(id).c_str(), s.records,
                  s.violations, s.min_margin, s.max_ratio);
    out << line;
  }
  return out.str();
}

std::string report_to_json(const InequalityReport& report) {
  ordered_json j;
  j["type"] = "trial";
  j["inequality_id"] = to_string(report.id);
  j["probe"] = report.probe;
  j["group"] = report.group;
  j["action"] = report.action;
  j["n"] = report.n;
  j["seed"] = report.seed;
  j["trial"] = report.trial;
  j["params"] = ordered_json::object();
  for (const auto& [k, v] : report.params) j["params"][k] = v;
  j["lhs"] = report.lhs;
  j["rhs"] = report.rhs;
  j["margin"] = report.margin;
  j["verdict"] = to_string(report.verdict);
  j["constants"] = ordered_json::object();
  for (const auto& [k, v] : report.constants) j["constants"][k] = v;
  j["diagnostics"] = ordered_json::object();
  for (const auto& [k, v] : report.diagnostics) j["diagnostics"][k] = v;
  const NormEstimate& e = report.lower.estimate;
  ordered_json norm;
  norm["value"] = e.value;
  norm["pi_bound"] = report.lower.pi_bound;
  norm["kind"] = to_string(e.kind);
  norm["method"] = to_string(e.method);
  norm["radius"] = e.radius;
  norm["iterations"] = e.iterations;
  norm["residual"] = e.residual;
  norm["converged"] = e.converged;
  norm["history"] = ordered_json::array();
  for (const auto& [r, v] : e.history) norm["history"].push_back({r, v});
  j["norm"] = std::move(norm);
  return j.dump();
}

std::string csv_header() { return "inequality_id,seed,trial,lhs,rhs,margin,verdict,R,residual"; }

std::string report_to_csv(const InequalityReport& report) {
  std::ostringstream out;
  out << to_string(report.id) << ',' << report.seed << ',' << report.trial << ',' << format_double(report.lhs) << ','
      << format_double(report.rhs) << ',' << format_double(report.margin) << ',' << to_string(report.verdict) << ','
      << report.lower.estimate.radius << ',' << format_double(report.lower.estimate.residual);
  return out.str();
}

}  // namespace rdlab

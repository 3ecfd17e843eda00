#pragma once

// Randomized trial runners for the rapid-decay inequalities. Each trial
// compares a certified lower bound on ||X|| (lhs) with the inequality's
// right side (rhs); lhs > rhs beyond tolerance is a VIOLATION.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rdlab/crossed.hpp"
#include "rdlab/repnorm.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

enum class InequalityId {
  kProp61,
  kCor62Free,
  kCor63HagpropA,
  kCor63HagpropB,
  kThm64,
  kCor65Free,
  kThm5PolygrowthOp,
  kThm5PolygrowthRow,
  kZpropSection4,
  kProp7Multiplier,
  kProbeDesired,
  kProbeMixed,
};

std::string to_string(InequalityId id);
// Accepts the names produced by to_string; throws InvalidArgument otherwise.
InequalityId parse_inequality_id(std::string_view name);
const std::vector<InequalityId>& all_inequality_ids();
bool is_probe(InequalityId id);

enum class Verdict { kConsistent, kViolation };
std::string to_string(Verdict v);

enum class CoeffSampler { kGaussian, kUnitary, kRankOne };
enum class SupportSampler { kFullSphere, kSphereSubset, kBallSubset };

std::string to_string(CoeffSampler s);
std::string to_string(SupportSampler s);
CoeffSampler parse_coeff_sampler(std::string_view name);
SupportSampler parse_support_sampler(std::string_view name);

struct NormPolicy {
  // Compression radius is max|g| over the support plus this, clipped by
  // the budgets below.
  int extra_radius = 6;
  std::size_t ball_budget = 200'000;      // |B_R| * n
  std::size_t nonzero_budget = 1'500'000;  // |B_R| * n^2 * |supp X|
  PowerOptions power{1e-6, 2000, 0x5eed, 3};
};

struct TrialSpec {
  std::string group = "free:2";
  std::string action = "trivial:1";
  CoeffSampler coeff = CoeffSampler::kGaussian;
  double scale = 1.0;
  SupportSampler support = SupportSampler::kFullSphere;
  // Number of support elements for the subset samplers; 0 takes them all.
  int support_size = 0;
  // Sphere index k (sphere samplers) or ball radius (ball sampler).
  int radius = 1;
  int trials = 50;
  std::uint64_t seed = 1;
  NormPolicy norm;
};

// lhs of one trial with its provenance.
struct LowerBound {
  double value = 0.0;
  NormEstimate estimate;
  double pi_bound = 0.0;
};

struct InequalityReport {
  InequalityId id = InequalityId::kProp61;
  bool probe = false;
  std::string group;
  std::string action;
  int n = 1;
  std::uint64_t seed = 0;
  int trial = 0;
  // k, l, m, support sizes, sampler names.
  std::map<std::string, std::string> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  Verdict verdict = Verdict::kConsistent;
  LowerBound lower;
  // N, M, C, s, m, lambda as used on the right side.
  std::map<std::string, double> constants;
  // Uncertified side quantities (ratios, alternative right sides).
  std::map<std::string, double> diagnostics;
};

// VIOLATION iff lhs > rhs + 1e-6 * max(1, rhs).
Verdict judge(double lhs, double rhs);
void finalize(InequalityReport& report);

// Samplers; every draw comes from the Rng passed in.
CoeffOp sample_coefficient(Rng& rng, CoeffSampler sampler, int n, double scale);
std::vector<GroupElement> sample_support(Rng& rng, const SphereIndex& index, SupportSampler sampler, int radius,
                                         int size);
CPElement sample_element(Rng& rng, const ActionPtr& action, const SphereIndex& index, const TrialSpec& spec);

// Shared state of one run: group, action, and a sphere index big enough
// for sampling and for the compressions allowed by the policy.
class Experiment {
 public:
  Experiment(const TrialSpec& spec, int support_radius);

  const TrialSpec& spec() const { return spec_; }
  const Group& group() const { return action_->group(); }
  const ActionPtr& action() const { return action_; }
  const SphereIndex& index() const { return index_; }
  int dim() const { return action_->dim(); }

  Rng trial_rng(InequalityId id, int trial) const;
  CPElement sample(Rng& rng) const { return sample_element(rng, action_, index_, spec_); }
  CPElement sample(Rng& rng, SupportSampler support, int radius, int size) const;

  // max(norm_lower on the clipped compression, norm_lower_pi with
  // candidates {1, X^*}).
  LowerBound lower_bound(const CPElement& x) const;
  int compression_radius(const CPElement& x) const;

  InequalityReport blank(InequalityId id, int trial) const;

 private:
  TrialSpec spec_;
  ActionPtr action_;
  SphereIndex index_;
};

// Constants measured from the group itself.
struct JConstants {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  std::size_t N = 0;
  double M = 0.0;  // N * pi/sqrt(6) * sqrt(2)
  int radius = 0;
};
// alpha/beta/gamma needed by the geodesic-prefix rule on B_R, then
// N = max_n_on_ball(R, mu = gamma, nu = beta + 1).
JConstants measure_j_constants(const Group& group, int R);

struct PolyGrowthConstants {
  double C = 0.0;
  int s = 0;
  double M = 0.0;     // pi sqrt(2C) / sqrt(6)
  double rd_C = 0.0;  // operator rapid decay constant implied: M
  double rd_s = 0.0;  // ... with exponent (s + 2) / 2
};
// Throws InvalidArgument when growth_fit does not detect polynomial growth.
PolyGrowthConstants polygrowth_constants(const Group& group, int fit_radius = 12);

double zprop_constant();

// `id` lets the free-group corollaries (N = 1, M = 2) be tagged as such.
std::vector<InequalityReport> verify_prop61(const TrialSpec& spec, int k, double N,
                                            InequalityId id = InequalityId::kProp61);
std::vector<InequalityReport> verify_thm64(const TrialSpec& spec, double M, InequalityId id = InequalityId::kThm64);
std::vector<InequalityReport> verify_polygrowth(const TrialSpec& spec);
std::vector<InequalityReport> verify_hagprop(const TrialSpec& spec, int k, int l, int m, double N);
std::vector<InequalityReport> verify_multiplier(const TrialSpec& spec, const MultiplierSymbol& phi, double C,
                                                double s);
std::vector<InequalityReport> verify_zprop(const TrialSpec& spec);
std::vector<InequalityReport> probe_desired(const TrialSpec& spec, int k, int l, int m, double N);
std::vector<InequalityReport> probe_mixed(const TrialSpec& spec, double C, double s);

// Single-instance evaluators used by the runners above; they also accept
// hand-built elements (CLI element files, fixtures). Support hypotheses
// (supp X in C_k, ...) are checked and raise InvalidArgument.
InequalityReport evaluate_prop61(const Experiment& ex, const CPElement& x, int k, double N, int trial,
                                 InequalityId id = InequalityId::kProp61);
InequalityReport evaluate_thm64(const Experiment& ex, const CPElement& x, double M, int trial,
                                InequalityId id = InequalityId::kThm64);
// Column form then row form.
std::vector<InequalityReport> evaluate_polygrowth(const Experiment& ex, const CPElement& x,
                                                  const PolyGrowthConstants& constants, int trial);
// First inequality (l2 of X, column norm of Y) then the second.
std::vector<InequalityReport> evaluate_hagprop(const Experiment& ex, const CPElement& x, const CPElement& y, int k,
                                               int l, int m, double N, int trial);
InequalityReport evaluate_multiplier(const Experiment& ex, const CPElement& x, const MultiplierSymbol& phi, double C,
                                     double s, int trial);
InequalityReport evaluate_zprop(const Experiment& ex, const CPElement& x, int trial);
InequalityReport evaluate_desired(const Experiment& ex, const CPElement& x, const CPElement& y, int k, int l, int m,
                                  double N, int trial);
InequalityReport evaluate_mixed(const Experiment& ex, const CPElement& x, double C, double s, int trial);

// Lower bounds on ||M_{phi_lambda} X - X|| for phi_lambda(g) = exp(-lambda |g|).
std::vector<double> multiplier_defects(const Experiment& experiment, const CPElement& x,
                                       const std::vector<double>& lambdas);

struct RunSummary {
  std::size_t records = 0;
  std::size_t violations = 0;
  double min_margin = 0.0;
  double max_ratio = 0.0;  // max lhs / rhs over records with rhs > 0
};
RunSummary summarize(const std::vector<InequalityReport>& reports);
// One row per inequality id present in the reports.
std::string summary_table(const std::vector<InequalityReport>& reports);

std::string report_to_json(const InequalityReport& report);
std::string csv_header();
std::string report_to_csv(const InequalityReport& report);

}  // namespace rdlab

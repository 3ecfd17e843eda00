#include "rdlab_cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "rdlab/crossed.hpp"
#include "rdlab/groups.hpp"
#include "rdlab/harness.hpp"
#include "rdlab/propj.hpp"
#include "rdlab/repnorm.hpp"

namespace rdlab::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

const std::vector<std::string> kCommands = {"sphere-count", "propj",  "nsolutions", "action-check",
                                            "norm",         "verify", "probe"};

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <typename T>
std::optional<T> parse_auto(const std::string& text, const std::string& flag) {
  if (text == "auto") return std::nullopt;
  T value{};
  const char* first = text.data();
  const char* last = text.data() + text.size();
  const auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw UsageError(flag + ": expected a number or 'auto', got '" + text + "'");
  }
  return value;
}

template <typename T>
std::string render_auto(const std::optional<T>& v) {
  if (!v) return "auto";
  if constexpr (std::is_floating_point_v<T>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

std::string canonical_target(const std::string& command, const std::string& target) {
  if (command == "verify") {
    if (target.empty()) throw UsageError("verify: missing inequality id");
    InequalityId id;
    try {
      id = parse_inequality_id(target);
    } catch (const InvalidArgument& e) {
      throw UsageError(std::string("verify: ") + e.what());
    }
    if (is_probe(id)) throw UsageError("verify: '" + target + "' is a probe; use `rdlab probe`");
    return target;
  }
  if (command == "probe") {
    if (target == "desired" || target == "probe_desired") return "probe_desired";
    if (target == "mixed" || target == "probe_mixed") return "probe_mixed";
    throw UsageError("probe: unknown probe id '" + target + "' (expected probe_desired or probe_mixed)");
  }
  if (!target.empty()) throw UsageError(command + ": unexpected argument '" + target + "'");
  return target;
}

void validate(RunConfig& c) {
  if (c.command == "propj-check") c.command = "propj";
  if (std::find(kCommands.begin(), kCommands.end(), c.command) == kCommands.end()) {
    throw UsageError("unknown subcommand '" + c.command + "'");
  }
  c.target = canonical_target(c.command, c.target);
  if (c.radius && *c.radius < 0) throw UsageError("--radius must be >= 0");
  if (c.k < 0 || c.l < 0) throw UsageError("--k and --l must be >= 0");
  if (c.trials < 0) throw UsageError("--trials must be >= 0");
  if (c.support_size < 0) throw UsageError("--support-size must be >= 0");
  if (c.max_iter <= 0) throw UsageError("--max-iter must be positive");
  if (!(c.tol > 0.0)) throw UsageError("--tol must be positive");
  if (c.extra_radius < 0) throw UsageError("--extra-radius must be >= 0");
  if (c.budget == 0) throw UsageError("--budget must be positive");
  try {
    parse_coeff_sampler(c.sampler);
    if (c.support != "auto") parse_support_sampler(c.support);
  } catch (const InvalidArgument& e) {
    throw UsageError(std::string("--sampler/--support: ") + e.what());
  }
}

}  // namespace

RunConfig parse_args(const std::vector<std::string>& args) {
  RunConfig c;
  CLI::App app{"rdlab: numerical checks of rapid-decay inequalities for crossed products", "rdlab"};
  app.set_help_flag("-h,--help", "Print this help and exit");
  std::string radius = "auto", m = "auto", s = "auto", C = "auto", M = "auto", N = "auto";

  app.add_option("command", c.command,
                 "sphere-count | propj (propj-check) | nsolutions | action-check | norm | verify | probe")
      ->required();
  app.add_option("target", c.target, "Inequality id for verify, probe id for probe");
  app.add_option("--group", c.group, "Group spec: free:d, zd:d or fpc:n1,n2,...")->capture_default_str();
  app.add_option("--action", c.action, "Action spec: trivial:n, perm:n:..., unitary:file=path")
      ->capture_default_str();
  app.add_option("--element-file", c.element_files, "Crossed-product element file (repeatable)");
  app.add_option("--radius", radius, "Ball radius (auto: per command)")->capture_default_str();
  app.add_option("--k", c.k, "Sphere index of X")->capture_default_str();
  app.add_option("--l", c.l, "Sphere index of Y")->capture_default_str();
  app.add_option("--m", m, "Target sphere of XY (auto: k + l)")->capture_default_str();
  app.add_option("--alpha", c.alpha, "(J) thickening of u")->capture_default_str();
  app.add_option("--beta", c.beta, "(J) thickening of v")->capture_default_str();
  app.add_option("--gamma", c.gamma, "(J) thickening of c")->capture_default_str();
  app.add_option("--mu", c.mu, "Solution count thickening of c")->capture_default_str();
  app.add_option("--nu", c.nu, "Solution count thickening of v")->capture_default_str();
  app.add_option("--s", s, "Exponent s (auto: per inequality)")->capture_default_str();
  app.add_option("--C", C, "Constant C (auto: per inequality)")->capture_default_str();
  app.add_option("--M", M, "Constant M (auto: measured, 2 for cor65_free)")->capture_default_str();
  app.add_option("--N", N, "Constant N (auto: measured, 1 for free groups)")->capture_default_str();
  app.add_option("--lambda", c.lambda, "Decay rate of the multiplier symbol exp(-lambda |g|)")
      ->capture_default_str();
  app.add_option("--tol", c.tol, "Norm iteration relative residual tolerance")->capture_default_str();
  app.add_option("--max-iter", c.max_iter, "Norm iteration cap (products with A^*A) per radius")->capture_default_str();
  app.add_flag("--dense", c.dense, "norm: exact SVD of the compression (|B_R| n <= 2000)");
  app.add_option("--extra-radius", c.extra_radius, "Compression radius beyond the support")
      ->capture_default_str();
  app.add_option("--budget", c.budget, "Largest compression dimension |B_R| n")->capture_default_str();
  app.add_option("--trials", c.trials, "Trials per run")->capture_default_str();
  app.add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app.add_option("--sampler", c.sampler, "Coefficient sampler: gaussian | unitary | rank-one")
      ->capture_default_str();
  app.add_option("--support", c.support, "Support sampler: sphere | sphere-subset | ball-subset | auto")
      ->capture_default_str();
  app.add_option("--support-size", c.support_size, "Subset size for subset samplers (0: all)")
      ->capture_default_str();
  app.add_option("--scale", c.scale, "Coefficient scale")->capture_default_str();
  app.add_option("--out", c.out, "JSON-lines report path");
  app.add_option("--csv", c.csv, "CSV report path");
  app.add_flag("--quiet", c.quiet, "Suppress the summary on stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    throw HelpRequested(app.help());
  } catch (const CLI::ParseError& e) {
    throw UsageError(e.what());
  }
  c.radius = parse_auto<int>(radius, "--radius");
  c.m = parse_auto<int>(m, "--m");
  c.s = parse_auto<double>(s, "--s");
  c.C = parse_auto<double>(C, "--C");
  c.M = parse_auto<double>(M, "--M");
  c.N = parse_auto<double>(N, "--N");
  validate(c);
  return c;
}

RunConfig parse_args(int argc, const char* const* argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return parse_args(args);
}

std::vector<std::string> render(const RunConfig& c) {
  std::vector<std::string> a{c.command};
  if (!c.target.empty()) a.push_back(c.target);
  auto add = [&a](const char* flag, std::string value) {
    a.emplace_back(flag);
    a.push_back(std::move(value));
  };
  add("--group", c.group);
  add("--action", c.action);
  for (const auto& f : c.element_files) add("--element-file", f);
  add("--radius", render_auto(c.radius));
  add("--k", std::to_string(c.k));
  add("--l", std::to_string(c.l));
  add("--m", render_auto(c.m));
  add("--alpha", fmt(c.alpha));
  add("--beta", fmt(c.beta));
  add("--gamma", fmt(c.gamma));
  add("--mu", fmt(c.mu));
  add("--nu", fmt(c.nu));
  add("--s", render_auto(c.s));
  add("--C", render_auto(c.C));
  add("--M", render_auto(c.M));
  add("--N", render_auto(c.N));
  add("--lambda", fmt(c.lambda));
  add("--tol", fmt(c.tol));
  add("--max-iter", std::to_string(c.max_iter));
  if (c.dense) a.emplace_back("--dense");
  add("--extra-radius", std::to_string(c.extra_radius));
  add("--budget", std::to_string(c.budget));
  add("--trials", std::to_string(c.trials));
  add("--seed", std::to_string(c.seed));
  add("--sampler", c.sampler);
  add("--support", c.support);
  add("--support-size", std::to_string(c.support_size));
  add("--scale", fmt(c.scale));
  if (!c.out.empty()) add("--out", c.out);
  if (!c.csv.empty()) add("--csv", c.csv);
  if (c.quiet) a.emplace_back("--quiet");
  return a;
}

namespace {

// Collects JSON-lines output and writes it once at the end.
class Report {
 public:
  Report(const RunConfig& config) : config_(config) {
    ordered_json header;
    header["type"] = "header";
    header["tool"] = "rdlab";
    header["version"] = kVersion;
    header["argv"] = render(config);
    lines_.push_back(header.dump());
  }

  void constants(const std::map<std::string, double>& values) {
    ordered_json j;
    j["type"] = "constants";
    for (const auto& [k, v] : values) j[k] = v;
    lines_.push_back(j.dump());
  }
  void line(const std::string& json) { lines_.push_back(json); }
  void record(const ordered_json& j) { lines_.push_back(j.dump()); }

  void write() const {
    if (config_.out.empty()) return;
    std::ofstream f(config_.out, std::ios::binary);
    if (!f) throw Error("cannot open --out file '" + config_.out + "'");
    for (const auto& l : lines_) f << l << '\n';
    if (!f) throw Error("failed writing '" + config_.out + "'");
  }

 private:
  const RunConfig& config_;
  std::vector<std::string> lines_;
};

ActionPtr make_action(const RunConfig& c) {
  return std::make_shared<const GroupAction>(GroupAction::parse(Group::parse(c.group), c.action));
}

int cmd_sphere_count(const RunConfig& c, std::ostream& out) {
  const int R = c.radius.value_or(4);
  const SphereIndex index = SphereIndex::enumerate(Group::parse(c.group), R);
  Report report(c);
  const auto sizes = index.sphere_sizes();
  ordered_json j;
  j["type"] = "sphere_count";
  j["group"] = c.group;
  j["sizes"] = sizes;
  if (!c.quiet) {
    for (std::size_t k = 0; k < sizes.size(); ++k) out << k << ' ' << sizes[k] << '\n';
  }
  if (R >= 3) {
    const GrowthFit fit = growth_fit(index);
    j["growth_fit"] = {{"C", fit.C}, {"s", fit.s}, {"polynomial", fit.polynomial}};
    if (!c.quiet) {
      out << "growth_fit C=" << fmt(fit.C) << " s=" << fit.s << (fit.polynomial ? " polynomial" : " non-polynomial")
          << '\n';
    }
  }
  report.record(j);
  report.write();
  return kExitOk;
}

int cmd_propj(const RunConfig& c, std::ostream& out) {
  const int R = c.radius.value_or(5);
  const Group group = Group::parse(c.group);
  const SphereIndex index = SphereIndex::enumerate(group, R);
  JParameters params{c.alpha, c.beta, c.gamma, c.mu, c.nu, static_cast<int>(c.N.value_or(1.0))};
  params.validate();
  const JCheckReport rep = check_j_on_ball(index, R, params);
  std::optional<std::size_t> n_found;
  bool pass = rep.pass;
  if (c.N) {
    n_found = max_n_on_ball(index, R, c.mu, c.nu);
    pass = pass && static_cast<double>(*n_found) <= *c.N;
  }
  Report report(c);
  ordered_json j;
  j["type"] = "propj";
  j["group"] = c.group;
  j["radius"] = R;
  j["pass"] = pass;
  j["violations"] = rep.violation_count;
  j["elements_checked"] = rep.elements_checked;
  j["pairs_checked"] = rep.pairs_checked;
  j["alpha_needed"] = rep.alpha_needed;
  j["beta_needed"] = rep.beta_needed;
  j["beta_literal_needed"] = rep.beta_literal_needed;
  j["gamma_needed"] = rep.gamma_needed;
  if (n_found) j["N_found"] = *n_found;
  j["first_violations"] = ordered_json::array();
  for (std::size_t i = 0; i < std::min<std::size_t>(rep.violations.size(), 20); ++i) {
    const auto& v = rep.violations[i];
    ordered_json jv;
    jv["item"] = v.item;
    jv["g"] = group.format(v.g);
    jv["s"] = v.s;
    if (v.a) jv["a"] = group.format(*v.a);
    if (v.b) jv["b"] = group.format(*v.b);
    jv["u"] = group.format(v.u);
    jv["v"] = group.format(v.v);
    if (v.c) jv["c"] = group.format(*v.c);
    j["first_violations"].push_back(jv);
  }
  report.record(j);
  report.write();
  if (!c.quiet) {
    out << (pass ? "pass" : "FAIL") << ": " << rep.violation_count << " violations, " << rep.elements_checked
        << " elements, " << rep.pairs_checked << " pairs on B_" << R << '\n';
    out << "needed alpha=" << fmt(rep.alpha_needed) << " beta=" << fmt(rep.beta_needed)
        << " gamma=" << fmt(rep.gamma_needed) << " (beta with literal +1: " << fmt(rep.beta_literal_needed) << ")\n";
    if (n_found) out << "N found=" << *n_found << " allowed=" << fmt(*c.N) << '\n';
  }
  return pass ? kExitOk : kExitViolation;
}

int cmd_nsolutions(const RunConfig& c, std::ostream& out) {
  const int R = c.radius.value_or(5);
  const std::size_t n = max_n_on_ball(Group::parse(c.group), R, c.mu, c.nu);
  Report report(c);
  report.record({{"type", "nsolutions"}, {"group", c.group}, {"radius", R}, {"mu", c.mu}, {"nu", c.nu}, {"N", n}});
  report.write();
  if (!c.quiet) out << "N = " << n << '\n';
  return kExitOk;
}

int cmd_action_check(const RunConfig& c, std::ostream& out) {
  const ActionPtr action = make_action(c);
  for (const auto& f : c.element_files) read_element_file(action, f);
  Report report(c);
  report.record({{"type", "action_check"}, {"action", action->spec()}, {"n", action->dim()}, {"ok", true}});
  report.write();
  if (!c.quiet) out << "ok: " << action->spec() << " on " << c.group << " (n=" << action->dim() << ")\n";
  return kExitOk;
}

int cmd_norm(const RunConfig& c, std::ostream& out) {
  if (c.element_files.empty()) throw UsageError("norm: --element-file is required");
  const ActionPtr action = make_action(c);
  Report report(c);
  for (const auto& file : c.element_files) {
    const CPElement x = read_element_file(action, file);
    const int R = c.radius.value_or(x.max_length() + c.extra_radius);
    const SphereIndex index = SphereIndex::enumerate(action->group(), R);
    const NormEstimate est = c.dense ? norm_exact_small(x, index, R)
                                     : norm_lower(x, index, R, PowerOptions{c.tol, c.max_iter, c.seed, 3});
    ordered_json j;
    j["type"] = "norm";
    j["file"] = file;
    j["value"] = est.value;
    j["kind"] = to_string(est.kind);
    j["method"] = to_string(est.method);
    j["radius"] = est.radius;
    j["iterations"] = est.iterations;
    j["residual"] = est.residual;
    j["converged"] = est.converged;
    j["history"] = ordered_json::array();
    for (const auto& [r, v] : est.history) j["history"].push_back({r, v});
    j["column_norm"] = column_norm(x);
    j["row_norm"] = row_norm(x);
    j["triangle_bound"] = triangle_bound(x);
    report.record(j);
    if (!c.quiet) {
      out << file << ": norm " << to_string(est.kind) << " " << fmt(est.value) << " at R=" << est.radius
          << " (residual " << fmt(est.residual) << ", " << est.iterations << " iterations)"
          << "; column " << fmt(column_norm(x)) << ", row " << fmt(row_norm(x)) << ", triangle "
          << fmt(triangle_bound(x)) << '\n';
    }
  }
  report.write();
  return kExitOk;
}

TrialSpec make_spec(const RunConfig& c, SupportSampler auto_support, int auto_radius) {
  TrialSpec spec;
  spec.group = c.group;
  spec.action = c.action;
  spec.coeff = parse_coeff_sampler(c.sampler);
  spec.scale = c.scale;
  spec.support = c.support == "auto" ? auto_support : parse_support_sampler(c.support);
  spec.support_size = c.support_size;
  spec.radius = c.radius.value_or(auto_radius);
  spec.trials = c.trials;
  spec.seed = c.seed;
  spec.norm.extra_radius = c.extra_radius;
  spec.norm.ball_budget = c.budget;
  spec.norm.power = PowerOptions{c.tol, c.max_iter, splitmix64(c.seed), 3};
  return spec;
}

void require_free(const RunConfig& c, const std::string& id) {
  if (Group::parse(c.group).kind() != GroupKind::kFree) throw UsageError(id + " needs a free group (--group free:d)");
}

// (J) constants measured on this ball radius when N or M is left on auto.
constexpr int kJRadius = 6;

int cmd_verify_or_probe(const RunConfig& c, std::ostream& out) {
  const InequalityId id = parse_inequality_id(c.target);
  const int m = c.m.value_or(c.k + c.l);
  std::map<std::string, double> constants;
  auto measured_j = [&]() {
    const JConstants j = measure_j_constants(Group::parse(c.group), kJRadius);
    constants["J_radius"] = j.radius;
    constants["J_alpha"] = j.alpha;
    constants["J_beta"] = j.beta;
    constants["J_gamma"] = j.gamma;
    constants["J_N"] = static_cast<double>(j.N);
    return j;
  };
  auto resolve_n = [&](bool free_default) {
    if (c.N) return *c.N;
    if (free_default) return 1.0;
    return static_cast<double>(measured_j().N);
  };

  std::vector<InequalityReport> reports;
  switch (id) {
    case InequalityId::kProp61:
    case InequalityId::kCor62Free: {
      if (id == InequalityId::kCor62Free) require_free(c, c.target);
      const double N = resolve_n(id == InequalityId::kCor62Free);
      constants["N"] = N;
      reports = verify_prop61(make_spec(c, SupportSampler::kFullSphere, c.k), c.k, N, id);
      break;
    }
    case InequalityId::kCor63HagpropA:
    case InequalityId::kCor63HagpropB: {
      const bool free = Group::parse(c.group).kind() == GroupKind::kFree;
      const double N = resolve_n(free);
      constants["N"] = N;
      reports = verify_hagprop(make_spec(c, SupportSampler::kFullSphere, c.k), c.k, c.l, m, N);
      break;
    }
    case InequalityId::kThm64:
    case InequalityId::kCor65Free: {
      double M;
      if (id == InequalityId::kCor65Free) {
        require_free(c, c.target);
        M = c.M.value_or(2.0);
      } else {
        M = c.M ? *c.M : measured_j().M;
      }
      constants["M"] = M;
      reports = verify_thm64(make_spec(c, SupportSampler::kBallSubset, 3), M, id);
      break;
    }
    case InequalityId::kThm5PolygrowthOp:
    case InequalityId::kThm5PolygrowthRow: {
      const PolyGrowthConstants pg = polygrowth_constants(Group::parse(c.group));
      constants["C"] = pg.C;
      constants["s"] = pg.s;
      constants["M"] = pg.M;
      reports = verify_polygrowth(make_spec(c, SupportSampler::kBallSubset, 4));
      break;
    }
    case InequalityId::kZpropSection4:
      constants["K"] = zprop_constant();
      reports = verify_zprop(make_spec(c, SupportSampler::kBallSubset, 10));
      break;
    case InequalityId::kProp7Multiplier: {
      double C = 0.0, s = 0.0;
      if (c.C && c.s) {
        C = *c.C;
        s = *c.s;
      } else {
        const PolyGrowthConstants pg = polygrowth_constants(Group::parse(c.group));
        C = c.C.value_or(pg.rd_C);
        s = c.s.value_or(pg.rd_s);
      }
      constants["C"] = C;
      constants["s"] = s;
      constants["lambda"] = c.lambda;
      reports = verify_multiplier(make_spec(c, SupportSampler::kBallSubset, 4),
                                  MultiplierSymbol(ExponentialDecay{c.lambda}), C, s);
      break;
    }
    case InequalityId::kProbeDesired: {
      const double N = c.N.value_or(1.0);
      constants["N"] = N;
      reports = probe_desired(make_spec(c, SupportSampler::kFullSphere, c.k), c.k, c.l, m, N);
      break;
    }
    case InequalityId::kProbeMixed: {
      const double C = c.C.value_or(std::sqrt(2.0));
      const double s = c.s.value_or(2.0);
      constants["C"] = C;
      constants["s"] = s;
      reports = probe_mixed(make_spec(c, SupportSampler::kBallSubset, 3), C, s);
      break;
    }
  }

  Report report(c);
  report.constants(constants);
  for (const auto& r : reports) report.line(report_to_json(r));
  const RunSummary summary = summarize(reports);
  ordered_json js;
  js["type"] = "summary";
  js["records"] = summary.records;
  js["violations"] = summary.violations;
  js["min_margin"] = summary.min_margin;
  js["max_ratio"] = summary.max_ratio;
  report.record(js);
  report.write();

  if (!c.csv.empty()) {
    std::ofstream f(c.csv, std::ios::binary);
    if (!f) throw Error("cannot open --csv file '" + c.csv + "'");
    f << csv_header() << '\n';
    for (const auto& r : reports) f << report_to_csv(r) << '\n';
  }
  if (!c.quiet) {
    out << summary_table(reports);
    for (const auto& r : reports) {
      if (r.verdict == Verdict::kViolation) {
        out << (r.probe ? "finding: " : "VIOLATION: ") << to_string(r.id) << " trial " << r.trial
            << " lhs=" << fmt(r.lhs) << " rhs=" << fmt(r.rhs) << '\n';
      }
    }
  }
  if (is_probe(id)) return kExitOk;
  return summary.violations > 0 ? kExitViolation : kExitOk;
}

}  // namespace

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  (void)err;
  if (c.command == "sphere-count") return cmd_sphere_count(c, out);
  if (c.command == "propj") return cmd_propj(c, out);
  if (c.command == "nsolutions") return cmd_nsolutions(c, out);
  if (c.command == "action-check") return cmd_action_check(c, out);
  if (c.command == "norm") return cmd_norm(c, out);
  if (c.command == "verify" || c.command == "probe") return cmd_verify_or_probe(c, out);
  throw UsageError("unknown subcommand '" + c.command + "'");
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  try {
    const RunConfig config = parse_args(argc, argv);
    return run(config, out, err);
  } catch (const HelpRequested& h) {
    out << h.what();
    return kExitOk;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\nrun `rdlab --help` for the flag list\n";
    return kExitError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitError;
  }
}

}  // namespace rdlab::cli

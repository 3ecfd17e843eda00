#pragma once

// Ball-truncated certification of the (J) decomposition property:
// geodesic-prefix factorizations g = u v, a = u c, b = c^-1 v with length
// control, and the count of (c, v) solutions of c^-1 v = b.

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rdlab/groups.hpp"

namespace rdlab {

struct JParameters {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double mu = 0.0;
  double nu = 0.0;
  int N = 1;

  // Throws InvalidArgument unless all constants are finite, non-negative
  // and N >= 1.
  void validate() const;
};

// g in C_{k,alpha}, i.e. k - alpha <= |g| <= k + alpha.
bool in_thickened_sphere(int length, double k, double alpha);

// u_(g,s): e for 0 <= s < 1, otherwise the first floor(s) letters of the
// geodesic spelling of g. Requires 0 <= s < |g| + 1.
GroupElement prefix_u(const Group& group, const GroupElement& g, double s);

using PrefixRule = std::function<GroupElement(const Group&, const GroupElement&, double)>;

struct JViolation {
  // "u", "v" or "c" for the length conditions, "factor" for a broken identity.
  std::string item;
  GroupElement g;
  double s = 0.0;
  std::optional<GroupElement> a;
  std::optional<GroupElement> b;
  GroupElement u;
  GroupElement v;
  std::optional<GroupElement> c;
};

struct JCheckReport {
  bool pass = true;
  std::size_t violation_count = 0;
  // The first `max_recorded` violations, in scan order.
  std::vector<JViolation> violations;
  std::size_t elements_checked = 0;
  std::size_t pairs_checked = 0;
  // Smallest constants that would have made every checked tuple pass.
  double alpha_needed = 0.0;
  double beta_needed = 0.0;
  // beta needed when v is compared against |g| + 1 - s instead of |g| - s.
  double beta_literal_needed = 0.0;
  double gamma_needed = 0.0;
};

struct JCheckOptions {
  std::size_t max_recorded = 10000;
};

// Checks, for every g in B_R and integer 0 <= s <= |g|, that
// u = rule(g, s) lies in C_{s,alpha} and v = u^-1 g lies in C_{|g|-s,beta};
// and for every pair (a, b) with |a| + |b| <= R, with p = p(a, b),
// g = ab, u = rule(g, |a| - p), c = u^-1 a, v = u^-1 g, that
// c in C_{p,gamma}, a = u c and b = c^-1 v. The index must cover radius R.
JCheckReport check_j_on_ball(const SphereIndex& index, int R, const JParameters& params,
                             const PrefixRule& rule = prefix_u, const JCheckOptions& options = {});
JCheckReport check_j_on_ball(const Group& group, int R, const JParameters& params,
                             const PrefixRule& rule = prefix_u, const JCheckOptions& options = {});

// |{ (c, v) : c in C_{p,mu}, v = c b, |b| - p - nu <= |v| <= |b| - p + nu }|.
// The index must cover radius floor(p + mu).
std::size_t count_solutions(const SphereIndex& index, const GroupElement& b, int p, double mu,
                            double nu);

// Max of count_solutions over b in B_R and 0 <= p <= |b|.
std::size_t max_n_on_ball(const SphereIndex& index, int R, double mu, double nu);
std::size_t max_n_on_ball(const Group& group, int R, double mu, double nu);

}  // namespace rdlab

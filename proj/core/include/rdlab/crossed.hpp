#pragma once

// Finitely supported elements X = sum_g L_g X_g of the reduced crossed
// product of M_n(C) by a word group, with the covariance convention
// L_g a L_g^* = alpha_g(a).

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rdlab/coeffalg.hpp"
#include "rdlab/groups.hpp"

namespace rdlab {

using ActionPtr = std::shared_ptr<const GroupAction>;

class CPElement {
 public:
  // Coefficients in shortlex order of the group element; zero matrices are
  // never stored.
  using CoeffMap = std::map<GroupElement, CoeffOp>;

  explicit CPElement(ActionPtr action);

  static CPElement zero(ActionPtr action) { return CPElement(std::move(action)); }
  static CPElement unit(ActionPtr action);
  // L_g a.
  static CPElement monomial(ActionPtr action, const GroupElement& g, const CoeffOp& a);

  const ActionPtr& action_ptr() const { return action_; }
  const GroupAction& action() const { return *action_; }
  const Group& group() const { return action_->group(); }
  int dim() const { return action_->dim(); }

  const CoeffMap& coeffs() const { return coeffs_; }
  std::vector<GroupElement> support() const;
  bool is_zero() const { return coeffs_.empty(); }
  std::size_t support_size() const { return coeffs_.size(); }
  // Largest |g| over the support, 0 for the zero element.
  int max_length() const;

  // X_g, the zero matrix when g is outside the support.
  CoeffOp coeff(const GroupElement& g) const;
  // Replaces X_g (erasing it when a is exactly zero).
  void set(const GroupElement& g, const CoeffOp& a);
  // X_g += a.
  void add(const GroupElement& g, const CoeffOp& a);

  bool same_context(const CPElement& other) const;

  friend CPElement operator+(const CPElement& x, const CPElement& y);
  friend CPElement operator-(const CPElement& x, const CPElement& y);
  friend CPElement operator*(Complex s, const CPElement& x);
  // Exact coefficientwise equality.
  friend bool operator==(const CPElement& x, const CPElement& y);

 private:
  void check_coeff(const CoeffOp& a) const;

  ActionPtr action_;
  CoeffMap coeffs_;
};

// Throws ContextMismatch unless x and y share group and action.
void require_same_context(const CPElement& x, const CPElement& y);

// (XY)_f = sum_{gh=f} alpha_{h^-1}(X_g) Y_h.
CPElement product(const CPElement& x, const CPElement& y);
// (X^*)_g = alpha_{g^-1}(X_{g^-1}^*).
CPElement adjoint(const CPElement& x);
// (X * Y)_f = X_f Y_f.
CPElement hadamard(const CPElement& x, const CPElement& y);
// The part of XY coming from pairs (a, b) with cancellation number p.
CPElement product_block(const CPElement& x, const CPElement& y, int p);
// Coefficients on B_n only.
CPElement truncate_ball(const CPElement& x, int n);

// ||sum_g X_g^* X_g||^{1/2} = ||(X^*X)_e||^{1/2}.
double column_norm(const CPElement& x);
// ||sum_g alpha_g(X_g X_g^*)||^{1/2} = ||(XX^*)_e||^{1/2}.
double row_norm(const CPElement& x);
// (sum_g ||X_g||^2)^{1/2}.
double l2_norm(const CPElement& x);
// sum_g ||X_g||, the certified upper bound on ||X||.
double triangle_bound(const CPElement& x);

// Right-hand sides of the rapid-decay inequalities with exponent s:
//   scalar:   (sum_g (1+|g|)^{2s} ||X_g||^2)^{1/2}
//   operator: ||sum_g (1+|g|)^{2s} (alpha_g(X_g X_g^*) + X_g^* X_g)||^{1/2}
//   mixed:    (sum_k (1+k)^{2s} ||sum_{g in C_k} (alpha_g(X_g X_g^*) + X_g^* X_g)||)^{1/2}
double rd_rhs_scalar(const CPElement& x, double s);
double rd_rhs_operator(const CPElement& x, double s);
double rd_rhs_mixed(const CPElement& x, double s);

// Weighted column/row sums ||sum_g w(|g|) X_g^* X_g||^{1/2} and
// ||sum_g w(|g|) alpha_g(X_g X_g^*)||^{1/2}.
double weighted_column_norm(const CPElement& x, const std::function<double(int)>& weight);
double weighted_row_norm(const CPElement& x, const std::function<double(int)>& weight);

struct ExponentialDecay {
  double lambda = 0.0;
};
struct PolynomialWeight {
  double s = 0.0;
};
struct IndicatorAnnulus {
  int m = 0;
};
struct IndicatorBall {
  int n = 0;
};
struct SymbolTable {
  std::map<GroupElement, Complex> values;
};

// A complex function phi on the group.
class MultiplierSymbol {
 public:
  using Rule = std::variant<ExponentialDecay, PolynomialWeight, IndicatorAnnulus, IndicatorBall, SymbolTable>;

  MultiplierSymbol(Rule rule) : rule_(std::move(rule)) {}

  static MultiplierSymbol constant_one() { return MultiplierSymbol(ExponentialDecay{0.0}); }

  Complex operator()(const GroupElement& g) const;
  const Rule& rule() const { return rule_; }
  std::string describe() const;

  // m = sup_g |phi(g)| (2+|g|)^{s+1}; nullopt when unbounded.
  std::optional<double> decay_sup(double s) const;

 private:
  Rule rule_;
};

// g -> phi(g) X_g.
CPElement multiply_symbol(const MultiplierSymbol& phi, const CPElement& x);

// Line-oriented text: one `g=<word>; row0; row1; ...` record per nonzero
// coefficient, rows made of whitespace-separated complex literals.
std::string serialize_element(const CPElement& x);
CPElement parse_element(ActionPtr action, std::string_view text);
CPElement read_element_file(ActionPtr action, const std::string& path);

}  // namespace rdlab

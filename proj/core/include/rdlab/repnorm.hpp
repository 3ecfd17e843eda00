#pragma once

// Operator-norm lower bounds through the regular representation on
// l^2(B_R) (x) C^n:
//   pi(a)(delta_h (x) v)    = delta_h (x) alpha_{h^-1}(a) v
//   lambda_g(delta_h (x) v) = delta_{gh} (x) v
// The compression P_R X P_R never has larger norm than X, and its norm
// increases to ||X|| as R grows.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "rdlab/crossed.hpp"

namespace rdlab {

using SparseOp = Eigen::SparseMatrix<Complex, Eigen::RowMajor>;

struct CompressedOperator {
  int radius = 0;
  int dim = 1;  // n
  std::size_t ball_size = 0;
  // (ball_size * n) square; block (i, j) sits at rows i*n.., cols j*n..
  // where i, j are SphereIndex positions.
  SparseOp matrix;

  Eigen::Index size() const { return matrix.rows(); }
  Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(matrix); }
};

// Largest total dimension |B_R| * n accepted by compress.
std::size_t default_operator_budget();

CompressedOperator compress(const CPElement& x, const SphereIndex& index, int R,
                            std::size_t budget = default_operator_budget());
CompressedOperator compress(const CPElement& x, int R, std::size_t budget = default_operator_budget());

enum class EstimateKind { kLowerBound, kExactSmall };
enum class EstimateMethod { kPower, kDense };

std::string to_string(EstimateKind kind);
std::string to_string(EstimateMethod method);

struct NormEstimate {
  double value = 0.0;
  EstimateKind kind = EstimateKind::kLowerBound;
  int radius = 0;
  EstimateMethod method = EstimateMethod::kPower;
  int iterations = 0;
  // Relative residual ||A^*A v - theta v|| / (theta ||v||) at exit.
  double residual = 0.0;
  bool converged = true;
  // (radius, value) for the radii swept on the way to `radius`.
  std::vector<std::pair<int, double>> history;
};

struct PowerOptions {
  double tol = 1e-6;
  // Cap on products with A^*A per radius.
  int max_iter = 20000;
  std::uint64_t seed = 0x5eed;
  // Radii radius - history_depth .. radius are swept with warm starts.
  int history_depth = 3;
};

// Certified lower bound on ||X|| from restarted Lanczos on the Gram matrix
// of the compression: every reported value is ||P X P v|| / ||v|| for a
// Ritz vector v.
NormEstimate norm_lower(const CPElement& x, const SphereIndex& index, int R, const PowerOptions& options = {});
NormEstimate norm_lower(const CPElement& x, int R, const PowerOptions& options = {});

// Exact norm of the compression by dense SVD; |B_R| * n must be <= 2000.
NormEstimate norm_exact_small(const CPElement& x, const SphereIndex& index, int R);
NormEstimate norm_exact_small(const CPElement& x, int R);

// max over candidates Y of column_norm(XY) / column_norm(Y): a
// representation-free lower bound on ||X||.
double norm_lower_pi(const CPElement& x, const std::vector<CPElement>& candidates);

struct InteriorReport {
  double max_deviation = 0.0;
  std::size_t columns_checked = 0;
  int radius = 0;
  int interior_radius = 0;
};

// Compares compress(Z, R) with compress(X, R) compress(Y, R) on the
// columns of basis vectors delta_h (x) e_i with |h| <= R - k - l, where
// supp X in B_k, supp Y in B_l. Z defaults to product(X, Y).
InteriorReport interior_product_check(const CPElement& x, const CPElement& y, int R,
                                      const std::optional<CPElement>& z = std::nullopt);

}  // namespace rdlab

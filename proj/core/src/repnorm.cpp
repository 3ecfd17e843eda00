#include "rdlab/repnorm.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <Eigen/SparseCore>

#include "rdlab/errors.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

namespace {

constexpr std::size_t kDenseLimit = 2000;
// Krylov basis size per restart of the norm iteration.
constexpr Eigen::Index kKrylovDim = 20;

using Vec = Eigen::VectorXcd;

void check_radius(const SphereIndex& index, int R) {
  if (R < 0) throw InvalidArgument("radius must be >= 0");
  if (index.radius() < R) throw InvalidArgument("sphere index does not reach radius " + std::to_string(R));
}

SparseOp corner(const SparseOp& m, Eigen::Index k) {
  if (k == m.rows()) return m;
  return SparseOp(m.topLeftCorner(k, k));
}

// Triangle-inequality sanity check that every lower bound must pass.
void assert_below_triangle(const CPElement& x, double value) {
  const double upper = triangle_bound(x);
  if (value > upper * (1.0 + 1e-9) + 1e-12) {
    throw std::logic_error("norm lower bound " + std::to_string(value) + " exceeds triangle bound " +
                           std::to_string(upper));
  }
}

}  // namespace

std::string to_string(EstimateKind kind) {
  return kind == EstimateKind::kLowerBound ? "lower_bound" : "exact_small";
}

std::string to_string(EstimateMethod method) { return method == EstimateMethod::kPower ? "power" : "dense"; }

std::size_t default_operator_budget() { return 4'000'000; }

CompressedOperator compress(const CPElement& x, const SphereIndex& index, int R, std::size_t budget) {
  check_radius(index, R);
  const Group& group = index.group();
  if (!(group == x.group())) throw ContextMismatch("sphere index and element use different groups");
  const int n = x.dim();
  const std::size_t balls = index.ball_size(R);
  const std::size_t total = balls * static_cast<std::size_t>(n);
  if (total > budget) {
    throw BudgetExceeded("compression to B_" + std::to_string(R), budget, total);
  }

  std::vector<Eigen::Triplet<Complex>> triplets;
  triplets.reserve(x.support_size() * balls * static_cast<std::size_t>(n * n));
  const auto ball = index.ball(R);
  for (std::size_t j = 0; j < balls; ++j) {
    const GroupElement& h = ball[j];
    const Automorphism twist = x.action().automorphism(group.inverse(h));
    for (const auto& [g, a] : x.coeffs()) {
      const GroupElement f = group.multiply(g, h);
      if (f.length() > R) continue;
      const auto i = index.index_of(f);
      if (!i) continue;
      const CoeffOp block = twist.apply(a);
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) {
          if (block(r, c) == Complex(0.0, 0.0)) continue;
          triplets.emplace_back(static_cast<Eigen::Index>(*i) * n + r, static_cast<Eigen::Index>(j) * n + c,
                                block(r, c));
        }
      }
    }
  }
  CompressedOperator op;
  op.radius = R;
  op.dim = n;
  op.ball_size = balls;
  op.matrix.resize(static_cast<Eigen::Index>(total), static_cast<Eigen::Index>(total));
  op.matrix.setFromTriplets(triplets.begin(), triplets.end());
  op.matrix.makeCompressed();
  return op;
}

CompressedOperator compress(const CPElement& x, int R, std::size_t budget) {
  return compress(x, SphereIndex::enumerate(x.group(), R), R, budget);
}

NormEstimate norm_lower(const CPElement& x, const SphereIndex& index, int R, const PowerOptions& options) {
  check_radius(index, R);
  NormEstimate est;
  est.kind = EstimateKind::kLowerBound;
  est.method = EstimateMethod::kPower;
  est.radius = R;
  const int first = std::max(0, R - std::max(0, options.history_depth));
  if (x.is_zero()) {
    for (int r = first; r <= R; ++r) est.history.emplace_back(r, 0.0);
    return est;
  }

  const CompressedOperator full = compress(x, index, R);
  const int n = x.dim();
  Rng rng = Rng::stream(options.seed, "norm_lower");
  Vec v;
  double best = 0.0;

  for (int r = first; r <= R; ++r) {
    const Eigen::Index size = static_cast<Eigen::Index>(index.ball_size(r)) * n;
    const SparseOp a = corner(full.matrix, size);
    const SparseOp a_adj = a.adjoint();

    // Warm start: the previous iterate padded with zeros, blended with a
    // fresh random vector. The compression can have invariant subspaces
    // (word-length parity, for one), and the padded iterate alone may sit
    // in one that does not carry the top singular value at this radius.
    const Eigen::Index old = v.size();
    v.conservativeResize(size);
    for (Eigen::Index i = old; i < size; ++i) v(i) = Complex(0.0, 0.0);
    Vec fresh(size);
    for (Eigen::Index i = 0; i < size; ++i) fresh(i) = Complex(rng.normal(), rng.normal());
    v = old == 0 ? fresh : Vec(v / v.norm() + fresh / fresh.norm());
    v.normalize();

    int it = 0;
    double residual = 1.0;
    bool converged = false;
    bool restarted = false;
    while (it < options.max_iter) {
      // One restart cycle: Krylov basis of A^*A from v, full
      // reorthogonalization, top Ritz vector becomes the next v.
      const Eigen::Index dim = std::min<Eigen::Index>({kKrylovDim, size, options.max_iter - it});
      Eigen::MatrixXcd q(size, dim);
      Eigen::MatrixXcd bq(size, dim);
      Eigen::Index used = 0;
      Vec next = v;
      for (Eigen::Index j = 0; j < dim; ++j) {
        const double scale = next.norm();
        for (int pass = 0; pass < 2; ++pass) next -= q.leftCols(used) * (q.leftCols(used).adjoint() * next);
        const double len = next.norm();
        // Invariant subspace reached.
        if (j > 0 && len <= 1e-12 * scale) break;
        q.col(j) = next / len;
        bq.col(j) = a_adj * (a * q.col(j));
        ++used;
        ++it;
        next = bq.col(j);
      }
      const Eigen::MatrixXcd t = q.leftCols(used).adjoint() * bq.leftCols(used);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(0.5 * (t + t.adjoint()));
      const Eigen::Index top = used - 1;
      v = q.leftCols(used) * eig.eigenvectors().col(top);
      v.normalize();

      // Certified value: ||A v|| for the unit Ritz vector.
      const Vec w = a * v;
      const double value = w.norm();
      best = std::max(best, value);
      const double theta = value * value;
      if (theta == 0.0) {
        if (restarted) break;
        // v fell into the kernel; restart from a fresh random vector.
        for (Eigen::Index i = 0; i < size; ++i) v(i) = Complex(rng.normal(), rng.normal());
        v.normalize();
        restarted = true;
        continue;
      }
      residual = (a_adj * w - theta * v).norm() / theta;
      if (residual <= options.tol) {
        converged = true;
        break;
      }
    }
    est.history.emplace_back(r, best);
    est.iterations = it;
    est.residual = residual;
    est.converged = converged;
  }
  est.value = best;
  assert_below_triangle(x, est.value);
  return est;
}

NormEstimate norm_lower(const CPElement& x, int R, const PowerOptions& options) {
  return norm_lower(x, SphereIndex::enumerate(x.group(), R), R, options);
}

NormEstimate norm_exact_small(const CPElement& x, const SphereIndex& index, int R) {
  check_radius(index, R);
  const std::size_t total = index.ball_size(R) * static_cast<std::size_t>(x.dim());
  if (total > kDenseLimit) {
    throw BudgetExceeded("dense norm of compression to B_" + std::to_string(R), kDenseLimit, total);
  }
  NormEstimate est;
  est.kind = EstimateKind::kExactSmall;
  est.method = EstimateMethod::kDense;
  est.radius = R;
  est.iterations = 0;
  est.residual = 0.0;
  if (!x.is_zero()) {
    const Eigen::MatrixXcd dense = compress(x, index, R).dense();
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(dense);
    est.value = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  }
  est.history.emplace_back(R, est.value);
  assert_below_triangle(x, est.value);
  return est;
}

NormEstimate norm_exact_small(const CPElement& x, int R) {
  return norm_exact_small(x, SphereIndex::enumerate(x.group(), R), R);
}

double norm_lower_pi(const CPElement& x, const std::vector<CPElement>& candidates) {
  double best = 0.0;
  for (const auto& y : candidates) {
    require_same_context(x, y);
    const double denom = column_norm(y);
    if (denom == 0.0) throw InvalidArgument("norm_lower_pi: candidate has zero column norm");
    best = std::max(best, column_norm(product(x, y)) / denom);
  }
  return best;
}

InteriorReport interior_product_check(const CPElement& x, const CPElement& y, int R,
                                      const std::optional<CPElement>& z) {
  require_same_context(x, y);
  const int k = x.max_length();
  const int l = y.max_length();
  if (R < k + l + 1) {
    throw InvalidArgument("interior_product_check needs R >= k + l + 1 = " + std::to_string(k + l + 1));
  }
  const CPElement xy = z ? *z : product(x, y);
  const SphereIndex index = SphereIndex::enumerate(x.group(), R);
  const auto cx = compress(x, index, R);
  const auto cy = compress(y, index, R);
  const auto cz = compress(xy, index, R);

  InteriorReport report;
  report.radius = R;
  report.interior_radius = R - k - l;
  const Eigen::Index cols = static_cast<Eigen::Index>(index.ball_size(report.interior_radius)) * x.dim();
  const Eigen::SparseMatrix<Complex> y_cols = Eigen::SparseMatrix<Complex>(cy.matrix).leftCols(cols);
  const Eigen::SparseMatrix<Complex> z_cols = Eigen::SparseMatrix<Complex>(cz.matrix).leftCols(cols);
  const Eigen::MatrixXcd lhs = Eigen::MatrixXcd(z_cols);
  const Eigen::MatrixXcd rhs = cx.matrix * Eigen::MatrixXcd(y_cols);
  report.columns_checked = static_cast<std::size_t>(cols);
  report.max_deviation = cols == 0 ? 0.0 : (lhs - rhs).cwiseAbs().maxCoeff();
  return report;
}

}  // namespace rdlab

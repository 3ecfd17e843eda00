#pragma once

// The coefficient algebra A = M_n(C) and group actions on it by inner
// *-automorphisms alpha_g(a) = U_g a U_g^*.

#include <complex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "rdlab/groups.hpp"

namespace rdlab {

using Complex = std::complex<double>;
using CoeffOp = Eigen::MatrixXcd;

// Largest singular value.
double op_norm(const CoeffOp& a);
// sqrt of the top eigenvalue of a^* a; an independent route to op_norm.
double op_norm_via_gram(const CoeffOp& a);

// ||sum_i a_i|| for Hermitian positive semidefinite summands. Throws
// InvalidArgument if the sum is not Hermitian, or has an eigenvalue below
// -1e-8 * scale, beyond tolerance.
double positive_part_norm(std::span<const CoeffOp> summands);
double positive_part_norm(const CoeffOp& sum);

bool is_exact_zero(const CoeffOp& a);

// Permutation on {0..n-1}, image[i] = sigma(i).
using Permutation = std::vector<int>;

// alpha_g for one fixed g; either a permutation (applied exactly) or a
// general unitary.
class Automorphism {
 public:
  static Automorphism identity(int n);
  static Automorphism from_permutation(Permutation p);
  static Automorphism from_unitary(CoeffOp u);

  CoeffOp apply(const CoeffOp& a) const;
  Automorphism compose(const Automorphism& other) const;  // this o other
  Automorphism inverse() const;
  // The implementing unitary U with alpha(a) = U a U^*.
  CoeffOp unitary() const;

  bool is_identity() const { return kind_ == Kind::kIdentity; }

 private:
  enum class Kind { kIdentity, kPermutation, kUnitary };
  Kind kind_ = Kind::kIdentity;
  int n_ = 0;
  Permutation perm_;
  CoeffOp u_;
};

enum class ActionKind { kTrivial, kPermutation, kUnitary };

class GroupAction {
 public:
  static GroupAction trivial(const Group& group, int n);
  // images[i] is the permutation for generator i (factor i for fpc).
  static GroupAction permutation(const Group& group, int n, std::vector<Permutation> images);
  static GroupAction unitary(const Group& group, std::vector<CoeffOp> images);
  // `trivial:n`, `perm:n:g1=(0 1)(2 3),g2=(0 2)` or `unitary:file=<path>`.
  static GroupAction parse(const Group& group, std::string_view spec);

  const Group& group() const { return group_; }
  int dim() const { return dim_; }
  ActionKind kind() const { return kind_; }
  const std::string& spec() const { return spec_; }

  Automorphism automorphism(const GroupElement& g) const;
  CoeffOp apply(const GroupElement& g, const CoeffOp& a) const;

  friend bool operator==(const GroupAction& a, const GroupAction& b);

 private:
  GroupAction(Group group, int n, ActionKind kind) : group_(std::move(group)), dim_(n), kind_(kind) {}
  void validate_relations() const;
  void build_spec();

  Group group_;
  int dim_ = 1;
  ActionKind kind_ = ActionKind::kTrivial;
  std::vector<Permutation> perms_;
  std::vector<CoeffOp> unitaries_;
  std::string spec_;
  std::string source_;  // file name for unitary actions
};

// Complex literals of the form `re+imi`, `re`, `imi`, with the imaginary
// part optional.
Complex parse_complex(std::string_view text);
// Round-trippable rendering (17 significant digits).
std::string format_complex(Complex z);

// Whitespace-separated complex literals per row; blank lines separate
// matrices. Every matrix must be square of the same size.
std::vector<CoeffOp> parse_matrix_list(std::string_view text);

}  // namespace rdlab

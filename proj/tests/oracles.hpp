#pragma once

// Independent reference implementations used only by the tests. None of
// them calls the library code they are compared against.

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rdlab/crossed.hpp"
#include "rdlab/groups.hpp"

namespace oracle {

// Free group words over letters +-(i+1), reduced with a stack.
std::vector<int> free_reduce(const std::vector<int>& word);
std::vector<int> free_multiply(const std::vector<int>& a, const std::vector<int>& b);

// Free product of cyclic groups: syllables (factor, exponent), reduced by
// rewriting to a fixpoint.
using Syllables = std::vector<std::pair<int, int>>;
Syllables fpc_reduce(Syllables word, const std::vector<int>& orders);
int fpc_length(const Syllables& word, const std::vector<int>& orders);

// |C_k| in F_d: 2d(2d-1)^{k-1}.
std::size_t free_sphere_size(int d, int k);
// |{v in Z^d : |v|_1 = k}| by recursion over coordinates.
std::size_t zd_sphere_size(int d, int k);
// Sphere sizes of a free product of cyclics by BFS over oracle normal forms.
std::vector<std::size_t> fpc_sphere_sizes(const std::vector<int>& orders, int R);

// Max over b in [-R, R], 0 <= p <= |b| of #{(c, v) : |c| in [p-mu, p+mu],
// v = c + b, ||v| - (|b| - p)| <= nu} in Z, integers only.
int z_max_solutions(int R, int mu, int nu);

// Dense matrix of X on l^2(B_R) (x) C^n assembled as sum_g L_g pi(X_g)
// from separately built translation and coefficient operators.
Eigen::MatrixXcd dense_representation(const rdlab::CPElement& x, const rdlab::SphereIndex& index, int R);

// Largest singular value by dense SVD.
double dense_norm(const Eigen::MatrixXcd& m);

// max over a uniform grid of |sum_n x_n e^{i n theta}| for scalar X over Z;
// a lower bound on ||x|| that converges as the grid refines.
double trig_sup(const rdlab::CPElement& x, int grid);

// Shared context helper for tests.
std::shared_ptr<const rdlab::GroupAction> make_action(const std::string& group, const std::string& action);

}  // namespace oracle

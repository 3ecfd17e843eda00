#include "oracles.hpp"

#include <cmath>
#include <complex>
#include <map>
#include <set>

#include <Eigen/SparseCore>

namespace oracle {

std::vector<int> free_reduce(const std::vector<int>& word) {
  std::vector<int> stack;
  for (int letter : word) {
    if (!stack.empty() && stack.back() == -letter) {
      stack.pop_back();
    } else {
      stack.push_back(letter);
    }
  }
  return stack;
}

std::vector<int> free_multiply(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> w = a;
  w.insert(w.end(), b.begin(), b.end());
  return free_reduce(w);
}

Syllables fpc_reduce(Syllables word, const std::vector<int>& orders) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& [f, e] : word) {
      const int n = orders[static_cast<std::size_t>(f)];
      const int r = ((e % n) + n) % n;
      if (r != e) {
        e = r;
        changed = true;
      }
    }
    for (std::size_t i = 0; i < word.size(); ++i) {
      if (word[i].second == 0) {
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
      if (i + 1 < word.size() && word[i].first == word[i + 1].first) {
        word[i].second += word[i + 1].second;
        word.erase(word.begin() + static_cast<std::ptrdiff_t>(i) + 1);
        changed = true;
        break;
      }
    }
  }
  return word;
}

int fpc_length(const Syllables& word, const std::vector<int>& orders) {
  int len = 0;
  for (const auto& [f, e] : word) {
    const int n = orders[static_cast<std::size_t>(f)];
    len += std::min(e, n - e);
  }
  return len;
}

std::size_t free_sphere_size(int d, int k) {
  if (k == 0) return 1;
  std::size_t out = 2 * static_cast<std::size_t>(d);
  for (int i = 1; i < k; ++i) out *= static_cast<std::size_t>(2 * d - 1);
  return out;
}

std::size_t zd_sphere_size(int d, int k) {
  if (d == 0) return k == 0 ? 1 : 0;
  std::size_t total = zd_sphere_size(d - 1, k);
  for (int v = 1; v <= k; ++v) total += 2 * zd_sphere_size(d - 1, k - v);
  return total;
}

std::vector<std::size_t> fpc_sphere_sizes(const std::vector<int>& orders, int R) {
  std::set<Syllables> seen{Syllables{}};
  std::vector<Syllables> frontier{Syllables{}};
  std::vector<std::size_t> sizes{1};
  for (int k = 1; k <= R; ++k) {
    std::vector<Syllables> next;
    for (const auto& w : frontier) {
      for (int f = 0; f < static_cast<int>(orders.size()); ++f) {
        for (int step : {1, -1}) {
          Syllables v = w;
          v.emplace_back(f, step);
          v = fpc_reduce(v, orders);
          if (seen.insert(v).second) next.push_back(v);
        }
      }
    }
    sizes.push_back(next.size());
    frontier = std::move(next);
  }
  return sizes;
}

int z_max_solutions(int R, int mu, int nu) {
  int best = 0;
  for (int b = -R; b <= R; ++b) {
    const int lb = std::abs(b);
    for (int p = 0; p <= lb; ++p) {
      int count = 0;
      for (int c = -(p + mu); c <= p + mu; ++c) {
        if (std::abs(c) < p - mu || std::abs(c) > p + mu) continue;
        const int v = c + b;
        if (std::abs(std::abs(v) - (lb - p)) <= nu) ++count;
      }
      best = std::max(best, count);
    }
  }
  return best;
}

Eigen::MatrixXcd dense_representation(const rdlab::CPElement& x, const rdlab::SphereIndex& index, int R) {
  const int n = x.dim();
  const auto ball = index.ball(R);
  const Eigen::Index size = static_cast<Eigen::Index>(ball.size()) * n;
  std::map<std::vector<int>, Eigen::Index> position;
  for (std::size_t i = 0; i < ball.size(); ++i) position[ball[i].word()] = static_cast<Eigen::Index>(i);
  const rdlab::Group& group = x.group();

  using Sparse = Eigen::SparseMatrix<std::complex<double>>;
  using Triplet = Eigen::Triplet<std::complex<double>>;
  Sparse total(size, size);
  for (const auto& [g, a] : x.coeffs()) {
    std::vector<Triplet> translate;
    std::vector<Triplet> coefficient;
    for (std::size_t j = 0; j < ball.size(); ++j) {
      const auto& h = ball[j];
      const auto col = static_cast<Eigen::Index>(j) * n;
      const Eigen::MatrixXcd block = x.action().apply(group.inverse(h), a);
      for (int r = 0; r < n; ++r)
        for (int c = 0; c < n; ++c) coefficient.emplace_back(col + r, col + c, block(r, c));
      const auto it = position.find(group.multiply(g, h).word());
      if (it != position.end()) {
        for (int r = 0; r < n; ++r) translate.emplace_back(it->second * n + r, col + r, 1.0);
      }
    }
    Sparse t(size, size), c(size, size);
    t.setFromTriplets(translate.begin(), translate.end());
    c.setFromTriplets(coefficient.begin(), coefficient.end());
    total += Sparse(t * c);
  }
  return Eigen::MatrixXcd(total);
}

double dense_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

double trig_sup(const rdlab::CPElement& x, int grid) {
  const double two_pi = 2.0 * std::acos(-1.0);
  double best = 0.0;
  for (int t = 0; t < grid; ++t) {
    const double theta = two_pi * t / grid;
    std::complex<double> sum = 0.0;
    for (const auto& [g, a] : x.coeffs()) {
      const int exponent = g.word().at(0);
      sum += a(0, 0) * std::polar(1.0, exponent * theta);
    }
    best = std::max(best, std::abs(sum));
  }
  return best;
}

std::shared_ptr<const rdlab::GroupAction> make_action(const std::string& group, const std::string& action) {
  return std::make_shared<const rdlab::GroupAction>(rdlab::GroupAction::parse(rdlab::Group::parse(group), action));
}

}  // namespace oracle

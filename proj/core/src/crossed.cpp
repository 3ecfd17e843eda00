#include "rdlab/crossed.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rdlab/errors.hpp"

namespace rdlab {

CPElement::CPElement(ActionPtr action) : action_(std::move(action)) {
  if (!action_) throw InvalidArgument("CPElement needs an action");
}

CPElement CPElement::unit(ActionPtr action) {
  const int n = action->dim();
  const GroupElement e = action->group().identity();
  return monomial(std::move(action), e, CoeffOp::Identity(n, n));
}

CPElement CPElement::monomial(ActionPtr action, const GroupElement& g, const CoeffOp& a) {
  CPElement x(std::move(action));
  x.set(g, a);
  return x;
}

std::vector<GroupElement> CPElement::support() const {
  std::vector<GroupElement> s;
  s.reserve(coeffs_.size());
  for (const auto& [g, a] : coeffs_) s.push_back(g);
  return s;
}

int CPElement::max_length() const {
  return coeffs_.empty() ? 0 : coeffs_.rbegin()->first.length();
}

CoeffOp CPElement::coeff(const GroupElement& g) const {
  const auto it = coeffs_.find(g);
  if (it == coeffs_.end()) return CoeffOp::Zero(dim(), dim());
  return it->second;
}

void CPElement::check_coeff(const CoeffOp& a) const {
  if (a.rows() != dim() || a.cols() != dim()) {
    throw DimensionMismatch("coefficient must be " + std::to_string(dim()) + "x" + std::to_string(dim()));
  }
}

void CPElement::set(const GroupElement& g, const CoeffOp& a) {
  group().check_member(g);
  check_coeff(a);
  if (is_exact_zero(a)) {
    coeffs_.erase(g);
  } else {
    coeffs_.insert_or_assign(g, a);
  }
}

void CPElement::add(const GroupElement& g, const CoeffOp& a) {
  group().check_member(g);
  check_coeff(a);
  auto it = coeffs_.find(g);
  if (it == coeffs_.end()) {
    if (!is_exact_zero(a)) coeffs_.emplace(g, a);
    return;
  }
  it->second += a;
  if (is_exact_zero(it->second)) coeffs_.erase(it);
}

bool CPElement::same_context(const CPElement& other) const {
  return action_ == other.action_ || *action_ == *other.action_;
}

void require_same_context(const CPElement& x, const CPElement& y) {
  if (!x.same_context(y)) {
    throw ContextMismatch("crossed-product elements use different contexts (" + x.action().spec() + " over " +
                          x.group().spec() + " vs " + y.action().spec() + " over " + y.group().spec() + ")");
  }
}

CPElement operator+(const CPElement& x, const CPElement& y) {
  require_same_context(x, y);
  CPElement r = x;
  for (const auto& [g, a] : y.coeffs_) r.add(g, a);
  return r;
}

CPElement operator-(const CPElement& x, const CPElement& y) {
  require_same_context(x, y);
  CPElement r = x;
  for (const auto& [g, a] : y.coeffs_) r.add(g, -a);
  return r;
}

CPElement operator*(Complex s, const CPElement& x) {
  CPElement r(x.action_);
  for (const auto& [g, a] : x.coeffs_) r.set(g, s * a);
  return r;
}

bool operator==(const CPElement& x, const CPElement& y) {
  if (!x.same_context(y) || x.coeffs_.size() != y.coeffs_.size()) return false;
  auto it = y.coeffs_.begin();
  for (const auto& [g, a] : x.coeffs_) {
    if (!(it->first == g) || it->second != a) return false;
    ++it;
  }
  return true;
}

namespace {

// Shared kernel of product and product_block; `keep` filters on the
// cancellation number of the pair.
template <typename Keep>
CPElement convolve(const CPElement& x, const CPElement& y, Keep keep) {
  require_same_context(x, y);
  const Group& group = x.group();
  const GroupAction& action = x.action();
  std::map<GroupElement, CoeffOp> acc;
  std::vector<Automorphism> twist;
  twist.reserve(y.support_size());
  for (const auto& [h, b] : y.coeffs()) twist.push_back(action.automorphism(group.inverse(h)));
  for (const auto& [g, a] : x.coeffs()) {
    std::size_t j = 0;
    for (const auto& [h, b] : y.coeffs()) {
      const Automorphism& alpha = twist[j++];
      const GroupElement f = group.multiply(g, h);
      const int p = (g.length() + h.length() - f.length()) / 2;
      if (!keep(p)) continue;
      CoeffOp term = alpha.apply(a) * b;
      auto it = acc.find(f);
      if (it == acc.end()) {
        acc.emplace(f, std::move(term));
      } else {
        it->second += term;
      }
    }
  }
  CPElement r(x.action_ptr());
  for (auto& [f, c] : acc) r.set(f, c);
  return r;
}

}  // namespace

CPElement product(const CPElement& x, const CPElement& y) {
  return convolve(x, y, [](int) { return true; });
}

CPElement product_block(const CPElement& x, const CPElement& y, int p) {
  if (p < 0) throw InvalidArgument("block index p must be >= 0");
  return convolve(x, y, [p](int q) { return q == p; });
}

CPElement adjoint(const CPElement& x) {
  const Group& group = x.group();
  CPElement r(x.action_ptr());
  for (const auto& [k, a] : x.coeffs()) {
    // (L_k a)^* = L_{k^-1} alpha_k(a^*)
    r.set(group.inverse(k), x.action().apply(k, a.adjoint()));
  }
  return r;
}

CPElement hadamard(const CPElement& x, const CPElement& y) {
  require_same_context(x, y);
  CPElement r(x.action_ptr());
  for (const auto& [f, a] : x.coeffs()) {
    const auto it = y.coeffs().find(f);
    if (it != y.coeffs().end()) r.set(f, a * it->second);
  }
  return r;
}

CPElement truncate_ball(const CPElement& x, int n) {
  CPElement r(x.action_ptr());
  for (const auto& [g, a] : x.coeffs()) {
    if (g.length() <= n) r.set(g, a);
  }
  return r;
}

double weighted_column_norm(const CPElement& x, const std::function<double(int)>& weight) {
  CoeffOp sum = CoeffOp::Zero(x.dim(), x.dim());
  for (const auto& [g, a] : x.coeffs()) sum += weight(g.length()) * (a.adjoint() * a);
  return std::sqrt(positive_part_norm(sum));
}

double weighted_row_norm(const CPElement& x, const std::function<double(int)>& weight) {
  CoeffOp sum = CoeffOp::Zero(x.dim(), x.dim());
  for (const auto& [g, a] : x.coeffs()) {
    sum += weight(g.length()) * x.action().apply(g, a * a.adjoint());
  }
  return std::sqrt(positive_part_norm(sum));
}

double column_norm(const CPElement& x) {
  return weighted_column_norm(x, [](int) { return 1.0; });
}

double row_norm(const CPElement& x) {
  return weighted_row_norm(x, [](int) { return 1.0; });
}

double l2_norm(const CPElement& x) {
  double total = 0.0;
  for (const auto& [g, a] : x.coeffs()) {
    const double n = op_norm(a);
    total += n * n;
  }
  return std::sqrt(total);
}

double triangle_bound(const CPElement& x) {
  double total = 0.0;
  for (const auto& [g, a] : x.coeffs()) total += op_norm(a);
  return total;
}

double rd_rhs_scalar(const CPElement& x, double s) {
  double total = 0.0;
  for (const auto& [g, a] : x.coeffs()) {
    const double n = op_norm(a);
    total += std::pow(1.0 + g.length(), 2.0 * s) * n * n;
  }
  return std::sqrt(total);
}

double rd_rhs_operator(const CPElement& x, double s) {
  CoeffOp sum = CoeffOp::Zero(x.dim(), x.dim());
  for (const auto& [g, a] : x.coeffs()) {
    sum += std::pow(1.0 + g.length(), 2.0 * s) * (x.action().apply(g, a * a.adjoint()) + a.adjoint() * a);
  }
  return std::sqrt(positive_part_norm(sum));
}

double rd_rhs_mixed(const CPElement& x, double s) {
  std::map<int, CoeffOp> spheres;
  for (const auto& [g, a] : x.coeffs()) {
    auto [it, inserted] = spheres.try_emplace(g.length(), CoeffOp::Zero(x.dim(), x.dim()));
    it->second += x.action().apply(g, a * a.adjoint()) + a.adjoint() * a;
  }
  double total = 0.0;
  for (const auto& [k, sum] : spheres) total += std::pow(1.0 + k, 2.0 * s) * positive_part_norm(sum);
  return std::sqrt(total);
}

// ---------------------------------------------------------------------------

Complex MultiplierSymbol::operator()(const GroupElement& g) const {
  const int len = g.length();
  return std::visit(
      [&](const auto& r) -> Complex {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ExponentialDecay>) {
          return r.lambda == 0.0 ? 1.0 : std::exp(-r.lambda * len);
        } else if constexpr (std::is_same_v<T, PolynomialWeight>) {
          return std::pow(1.0 + len, r.s);
        } else if constexpr (std::is_same_v<T, IndicatorAnnulus>) {
          return len == r.m ? 1.0 : 0.0;
        } else if constexpr (std::is_same_v<T, IndicatorBall>) {
          return len <= r.n ? 1.0 : 0.0;
        } else {
          const auto it = r.values.find(g);
          return it == r.values.end() ? Complex(0.0) : it->second;
        }
      },
      rule_);
}

std::string MultiplierSymbol::describe() const {
  return std::visit(
      [](const auto& r) -> std::string {
        using T = std::decay_t<decltype(r)>;
        std::ostringstream out;
        out.precision(17);
        if constexpr (std::is_same_v<T, ExponentialDecay>) {
          out << "exp_decay(" << r.lambda << ")";
        } else if constexpr (std::is_same_v<T, PolynomialWeight>) {
          out << "poly_weight(" << r.s << ")";
        } else if constexpr (std::is_same_v<T, IndicatorAnnulus>) {
          out << "annulus(" << r.m << ")";
        } else if constexpr (std::is_same_v<T, IndicatorBall>) {
          out << "ball(" << r.n << ")";
        } else {
          out << "table(" << r.values.size() << ")";
        }
        return out.str();
      },
      rule_);
}

std::optional<double> MultiplierSymbol::decay_sup(double s) const {
  const double e = s + 1.0;
  auto weight = [e](int len) { return std::pow(2.0 + len, e); };
  return std::visit(
      [&](const auto& r) -> std::optional<double> {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ExponentialDecay>) {
          if (e <= 0.0) return weight(0);
          if (r.lambda <= 0.0) return std::nullopt;
          // e^{-lambda L}(2+L)^e peaks at L = e/lambda - 2.
          const double peak = e / r.lambda - 2.0;
          double best = weight(0);
          for (double c : {std::floor(peak), std::ceil(peak)}) {
            if (c < 0.0) continue;
            const int len = static_cast<int>(c);
            best = std::max(best, std::exp(-r.lambda * len) * weight(len));
          }
          return best;
        } else if constexpr (std::is_same_v<T, PolynomialWeight>) {
          if (r.s + e > 0.0) return std::nullopt;
          double best = 0.0;
          for (int len = 0; len <= 100000; ++len) best = std::max(best, std::pow(1.0 + len, r.s) * weight(len));
          return best;
        } else if constexpr (std::is_same_v<T, IndicatorAnnulus>) {
          return weight(r.m);
        } else if constexpr (std::is_same_v<T, IndicatorBall>) {
          return std::max(weight(0), weight(r.n));
        } else {
          double best = 0.0;
          for (const auto& [g, v] : r.values) best = std::max(best, std::abs(v) * weight(g.length()));
          return best;
        }
      },
      rule_);
}

CPElement multiply_symbol(const MultiplierSymbol& phi, const CPElement& x) {
  CPElement r(x.action_ptr());
  for (const auto& [g, a] : x.coeffs()) {
    const Complex v = phi(g);
    if (v == Complex(1.0, 0.0)) {
      r.set(g, a);
    } else {
      r.set(g, v * a);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

std::string serialize_element(const CPElement& x) {
  std::string out;
  for (const auto& [g, a] : x.coeffs()) {
    out += "g=" + x.group().format(g);
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      out += ";";
      for (Eigen::Index j = 0; j < a.cols(); ++j) out += " " + format_complex(a(i, j));
    }
    out += "\n";
  }
  return out;
}

CPElement parse_element(ActionPtr action, std::string_view text) {
  CPElement x(action);
  const int n = action->dim();
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    const std::size_t line_start = pos;
    pos = nl + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) continue;
    line.remove_prefix(first);
    if (!line.starts_with("g=")) throw ParseError("element record must start with 'g='", line_start + first);
    std::vector<std::string_view> fields;
    std::size_t f = 2;
    while (true) {
      const auto semi = line.find(';', f);
      fields.push_back(line.substr(f, semi == std::string_view::npos ? std::string_view::npos : semi - f));
      if (semi == std::string_view::npos) break;
      f = semi + 1;
    }
    GroupElement g;
    try {
      g = x.group().parse_element(fields[0]);
    } catch (const ParseError& e) {
      throw ParseError(std::string("bad group word: ") + e.what(), line_start + first + 2);
    }
    if (static_cast<int>(fields.size()) - 1 != n) {
      throw ParseError("expected " + std::to_string(n) + " matrix rows", line_start + first);
    }
    CoeffOp a(n, n);
    for (int i = 0; i < n; ++i) {
      std::istringstream row{std::string(fields[static_cast<std::size_t>(i) + 1])};
      std::string token;
      int j = 0;
      while (row >> token) {
        if (j >= n) throw ParseError("too many entries in matrix row", line_start + first);
        a(i, j++) = parse_complex(token);
      }
      if (j != n) throw ParseError("too few entries in matrix row", line_start + first);
    }
    x.add(g, a);
  }
  return x;
}

CPElement read_element_file(ActionPtr action, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open element file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_element(std::move(action), buffer.str());
}

}  // namespace rdlab

#include "rdlab/coeffalg.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "rdlab/errors.hpp"

namespace rdlab {

namespace {

constexpr double kUnitaryTol = 1e-10;

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view text, std::string_view whole) {
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty() || !std::isfinite(value)) {
    throw ParseError("malformed complex literal '" + std::string(whole) + "'", 0);
  }
  return value;
}

Permutation compose_perm(const Permutation& outer, const Permutation& inner) {
  Permutation r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[static_cast<std::size_t>(inner[i])];
  return r;
}

Permutation invert_perm(const Permutation& p) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
  return r;
}

bool is_identity_perm(const Permutation& p) {
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] != static_cast<int>(i)) return false;
  }
  return true;
}

Permutation perm_power(const Permutation& p, int k) {
  Permutation r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = static_cast<int>(i);
  const Permutation base = k >= 0 ? p : invert_perm(p);
  for (int i = 0; i < std::abs(k); ++i) r = compose_perm(base, r);
  return r;
}

CoeffOp unitary_power(const CoeffOp& u, int k) {
  CoeffOp r = CoeffOp::Identity(u.rows(), u.cols());
  const CoeffOp base = k >= 0 ? u : CoeffOp(u.adjoint());
  for (int i = 0; i < std::abs(k); ++i) r = base * r;
  return r;
}

std::string format_cycles(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.size(), false);
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += " ";
      out += std::to_string(j);
      first = false;
      j = static_cast<std::size_t>(p[j]);
    }
    out += ")";
  }
  return out;
}

}  // namespace

double op_norm(const CoeffOp& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() == 1 && a.cols() == 1) return std::abs(a(0, 0));
  Eigen::JacobiSVD<CoeffOp> svd(a);
  return svd.singularValues()(0);
}

double op_norm_via_gram(const CoeffOp& a) {
  if (a.size() == 0) return 0.0;
  const CoeffOp gram = a.adjoint() * a;
  Eigen::SelfAdjointEigenSolver<CoeffOp> eig(gram, Eigen::EigenvaluesOnly);
  return std::sqrt(std::max(0.0, eig.eigenvalues().maxCoeff()));
}

double positive_part_norm(const CoeffOp& sum) {
  if (sum.rows() != sum.cols()) throw DimensionMismatch("positive_part_norm expects square matrices");
  if (sum.size() == 0) return 0.0;
  const double size = sum.norm();
  if (size == 0.0) return 0.0;
  const double skew = (sum - sum.adjoint()).norm();
  if (skew > 1e-8 * size) throw InvalidArgument("positive_part_norm: sum is not Hermitian");
  const CoeffOp herm = 0.5 * (sum + sum.adjoint());
  Eigen::SelfAdjointEigenSolver<CoeffOp> eig(herm, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  const double scale = std::max(std::abs(lo), std::abs(hi));
  if (lo < -1e-8 * scale) throw InvalidArgument("positive_part_norm: sum is not positive semidefinite");
  return std::max(0.0, hi);
}

double positive_part_norm(std::span<const CoeffOp> summands) {
  if (summands.empty()) return 0.0;
  CoeffOp sum = CoeffOp::Zero(summands[0].rows(), summands[0].cols());
  for (const auto& a : summands) {
    if (a.rows() != sum.rows() || a.cols() != sum.cols()) {
      throw DimensionMismatch("positive_part_norm: summands differ in dimension");
    }
    sum += a;
  }
  return positive_part_norm(sum);
}

bool is_exact_zero(const CoeffOp& a) {
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------

Automorphism Automorphism::identity(int n) {
  Automorphism a;
  a.n_ = n;
  return a;
}

Automorphism Automorphism::from_permutation(Permutation p) {
  Automorphism a;
  a.n_ = static_cast<int>(p.size());
  if (!is_identity_perm(p)) {
    a.kind_ = Kind::kPermutation;
    a.perm_ = std::move(p);
  }
  return a;
}

Automorphism Automorphism::from_unitary(CoeffOp u) {
  Automorphism a;
  a.n_ = static_cast<int>(u.rows());
  a.kind_ = Kind::kUnitary;
  a.u_ = std::move(u);
  return a;
}

CoeffOp Automorphism::apply(const CoeffOp& a) const {
  switch (kind_) {
    case Kind::kIdentity:
      return a;
    case Kind::kPermutation: {
      CoeffOp r(a.rows(), a.cols());
      for (Eigen::Index j = 0; j < a.cols(); ++j) {
        for (Eigen::Index i = 0; i < a.rows(); ++i) r(perm_[i], perm_[j]) = a(i, j);
      }
      return r;
    }
    case Kind::kUnitary:
      return u_ * a * u_.adjoint();
  }
  return a;
}

Automorphism Automorphism::compose(const Automorphism& other) const {
  if (is_identity()) return other;
  if (other.is_identity()) return *this;
  if (kind_ == Kind::kPermutation && other.kind_ == Kind::kPermutation) {
    return from_permutation(compose_perm(perm_, other.perm_));
  }
  return from_unitary(unitary() * other.unitary());
}

Automorphism Automorphism::inverse() const {
  switch (kind_) {
    case Kind::kIdentity:
      return *this;
    case Kind::kPermutation:
      return from_permutation(invert_perm(perm_));
    case Kind::kUnitary:
      return from_unitary(u_.adjoint());
  }
  return *this;
}

CoeffOp Automorphism::unitary() const {
  switch (kind_) {
    case Kind::kIdentity:
      return CoeffOp::Identity(n_, n_);
    case Kind::kPermutation: {
      CoeffOp p = CoeffOp::Zero(n_, n_);
      for (int i = 0; i < n_; ++i) p(perm_[i], i) = 1.0;
      return p;
    }
    case Kind::kUnitary:
      return u_;
  }
  return u_;
}

// ---------------------------------------------------------------------------

GroupAction GroupAction::trivial(const Group& group, int n) {
  if (n < 1) throw InvalidArgument("action dimension must be >= 1");
  GroupAction action(group, n, ActionKind::kTrivial);
  action.build_spec();
  return action;
}

GroupAction GroupAction::permutation(const Group& group, int n, std::vector<Permutation> images) {
  if (n < 1) throw InvalidArgument("action dimension must be >= 1");
  if (static_cast<int>(images.size()) != group.rank()) {
    throw InvalidArgument("permutation action needs one image per generator");
  }
  for (const auto& p : images) {
    if (static_cast<int>(p.size()) != n) throw DimensionMismatch("permutation image has wrong size");
    std::vector<bool> hit(p.size(), false);
    for (int x : p) {
      if (x < 0 || x >= n || hit[static_cast<std::size_t>(x)]) {
        throw InvalidArgument("generator image is not a permutation");
      }
      hit[static_cast<std::size_t>(x)] = true;
    }
  }
  GroupAction action(group, n, ActionKind::kPermutation);
  action.perms_ = std::move(images);
  action.validate_relations();
  action.build_spec();
  return action;
}

GroupAction GroupAction::unitary(const Group& group, std::vector<CoeffOp> images) {
  if (static_cast<int>(images.size()) != group.rank()) {
    throw InvalidArgument("unitary action needs one image per generator");
  }
  const Eigen::Index n = images.empty() ? 0 : images[0].rows();
  if (n < 1) throw InvalidArgument("action dimension must be >= 1");
  for (const auto& u : images) {
    if (u.rows() != n || u.cols() != n) throw DimensionMismatch("unitary images differ in size");
    const double defect = (u * u.adjoint() - CoeffOp::Identity(n, n)).cwiseAbs().maxCoeff();
    if (defect > kUnitaryTol) throw InvalidArgument("generator image is not unitary");
  }
  GroupAction action(group, static_cast<int>(n), ActionKind::kUnitary);
  action.unitaries_ = std::move(images);
  action.validate_relations();
  action.build_spec();
  return action;
}

void GroupAction::validate_relations() const {
  const int rank = group_.rank();
  if (group_.kind() == GroupKind::kFreeAbelian) {
    for (int i = 0; i < rank; ++i) {
      for (int j = i + 1; j < rank; ++j) {
        if (kind_ == ActionKind::kPermutation) {
          if (compose_perm(perms_[i], perms_[j]) != compose_perm(perms_[j], perms_[i])) {
            throw InvalidArgument("generator images " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " do not commute");
          }
        } else if (kind_ == ActionKind::kUnitary) {
          const CoeffOp comm = unitaries_[i] * unitaries_[j] - unitaries_[j] * unitaries_[i];
          if (comm.cwiseAbs().maxCoeff() > kUnitaryTol) {
            throw InvalidArgument("generator images " + std::to_string(i + 1) + " and " +
                                  std::to_string(j + 1) + " do not commute");
          }
        }
      }
    }
  }
  if (group_.kind() == GroupKind::kFreeProductCyclic) {
    for (int i = 0; i < rank; ++i) {
      const int order = group_.orders()[i];
      if (kind_ == ActionKind::kPermutation) {
        if (!is_identity_perm(perm_power(perms_[i], order))) {
          throw InvalidArgument("image of generator " + std::to_string(i + 1) + " does not have order dividing " +
                                std::to_string(order));
        }
      } else if (kind_ == ActionKind::kUnitary) {
        const CoeffOp p = unitary_power(unitaries_[i], order);
        if ((p - CoeffOp::Identity(dim_, dim_)).cwiseAbs().maxCoeff() > kUnitaryTol) {
          throw InvalidArgument("image of generator " + std::to_string(i + 1) + " does not have order dividing " +
                                std::to_string(order));
        }
      }
    }
  }
}

void GroupAction::build_spec() {
  switch (kind_) {
    case ActionKind::kTrivial:
      spec_ = "trivial:" + std::to_string(dim_);
      break;
    case ActionKind::kPermutation: {
      spec_ = "perm:" + std::to_string(dim_) + ":";
      bool first = true;
      for (std::size_t i = 0; i < perms_.size(); ++i) {
        if (is_identity_perm(perms_[i])) continue;
        if (!first) spec_ += ",";
        spec_ += "g" + std::to_string(i + 1) + "=" + format_cycles(perms_[i]);
        first = false;
      }
      break;
    }
    case ActionKind::kUnitary:
      spec_ = "unitary:file=" + (source_.empty() ? std::string("<inline>") : source_);
      break;
  }
}

GroupAction GroupAction::parse(const Group& group, std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) throw ParseError("action spec needs a ':'", 0);
  const std::string_view kind = spec.substr(0, colon);
  std::string_view rest = spec.substr(colon + 1);

  auto parse_dim = [&](std::string_view text, std::size_t offset) {
    int n = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
    if (ec != std::errc() || ptr != text.data() + text.size() || n < 1) {
      throw ParseError("expected a positive dimension", offset);
    }
    return n;
  };

  if (kind == "trivial") return trivial(group, parse_dim(rest, colon + 1));

  if (kind == "perm") {
    const auto colon2 = rest.find(':');
    const std::string_view dim_text = rest.substr(0, colon2);
    const int n = parse_dim(dim_text, colon + 1);
    std::vector<Permutation> images(static_cast<std::size_t>(group.rank()));
    for (auto& p : images) {
      p.resize(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
    }
    if (colon2 != std::string_view::npos) {
      std::size_t base = colon + 1 + colon2 + 1;
      std::string_view assigns = rest.substr(colon2 + 1);
      std::size_t pos = 0;
      while (pos < assigns.size()) {
        auto comma = assigns.find(',', pos);
        if (comma == std::string_view::npos) comma = assigns.size();
        const std::string_view item = assigns.substr(pos, comma - pos);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw ParseError("expected g<i>=<cycles>", base + pos);
        std::string_view key = trim(item.substr(0, eq));
        int gen = -1;
        if (key.size() >= 2 && (key[0] == 'g' || key[0] == 'x')) {
          int v = 0;
          const auto [ptr, ec] = std::from_chars(key.data() + 1, key.data() + key.size(), v);
          if (ec == std::errc() && ptr == key.data() + key.size()) gen = v - 1;
        }
        if (gen < 0 || gen >= group.rank()) throw ParseError("unknown generator '" + std::string(key) + "'", base + pos);
        Permutation p(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i;
        std::string_view cycles = item.substr(eq + 1);
        if (cycles.starts_with("cycle")) cycles.remove_prefix(5);
        std::size_t c = 0;
        while (c < cycles.size()) {
          if (is_space(cycles[c])) {
            ++c;
            continue;
          }
          if (cycles[c] != '(') throw ParseError("expected '('", base + pos + eq + 1 + c);
          const auto close = cycles.find(')', c);
          if (close == std::string_view::npos) throw ParseError("unterminated cycle", base + pos + eq + 1 + c);
          std::vector<int> points;
          std::string body(cycles.substr(c + 1, close - c - 1));
          std::replace(body.begin(), body.end(), ';', ' ');
          std::istringstream in(body);
          int x;
          while (in >> x) {
            if (x < 0 || x >= n) throw ParseError("cycle point out of range", base + pos + eq + 1 + c);
            points.push_back(x);
          }
          if (!in.eof()) throw ParseError("malformed cycle", base + pos + eq + 1 + c);
          Permutation cyc(static_cast<std::size_t>(n));
          for (int i = 0; i < n; ++i) cyc[static_cast<std::size_t>(i)] = i;
          for (std::size_t k = 0; k < points.size(); ++k) {
            cyc[static_cast<std::size_t>(points[k])] = points[(k + 1) % points.size()];
          }
          p = compose_perm(p, cyc);
          c = close + 1;
        }
        images[static_cast<std::size_t>(gen)] = p;
        pos = comma + 1;
      }
    }
    return permutation(group, n, std::move(images));
  }

  if (kind == "unitary") {
    if (!rest.starts_with("file=")) throw ParseError("expected unitary:file=<path>", colon + 1);
    const std::string path(rest.substr(5));
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open unitary file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    GroupAction action = unitary(group, parse_matrix_list(buffer.str()));
    action.source_ = path;
    action.build_spec();
    return action;
  }
  throw ParseError("unknown action kind '" + std::string(kind) + "'", 0);
}

Automorphism GroupAction::automorphism(const GroupElement& g) const {
  group_.check_member(g);
  if (kind_ == ActionKind::kTrivial || g.is_identity()) return Automorphism::identity(dim_);
  const auto& w = g.word();
  auto gen_power = [&](int gen, int power) {
    if (kind_ == ActionKind::kPermutation) {
      return Automorphism::from_permutation(perm_power(perms_[static_cast<std::size_t>(gen)], power));
    }
    return Automorphism::from_unitary(unitary_power(unitaries_[static_cast<std::size_t>(gen)], power));
  };
  Automorphism result = Automorphism::identity(dim_);
  switch (group_.kind()) {
    case GroupKind::kFree: {
      std::size_t i = 0;
      while (i < w.size()) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        const int run = static_cast<int>(j - i);
        result = result.compose(gen_power(std::abs(w[i]) - 1, w[i] > 0 ? run : -run));
        i = j;
      }
      break;
    }
    case GroupKind::kFreeAbelian:
      for (int i = 0; i < group_.rank(); ++i) {
        if (w[static_cast<std::size_t>(i)] != 0) result = result.compose(gen_power(i, w[static_cast<std::size_t>(i)]));
      }
      break;
    case GroupKind::kFreeProductCyclic:
      for (std::size_t i = 0; i < w.size(); i += 2) result = result.compose(gen_power(w[i], w[i + 1]));
      break;
  }
  return result;
}

CoeffOp GroupAction::apply(const GroupElement& g, const CoeffOp& a) const {
  if (a.rows() != dim_ || a.cols() != dim_) {
    throw DimensionMismatch("coefficient is " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                            ", action acts on " + std::to_string(dim_) + "x" + std::to_string(dim_));
  }
  return automorphism(g).apply(a);
}

bool operator==(const GroupAction& a, const GroupAction& b) {
  if (!(a.group_ == b.group_) || a.dim_ != b.dim_ || a.kind_ != b.kind_) return false;
  if (a.perms_ != b.perms_) return false;
  if (a.unitaries_.size() != b.unitaries_.size()) return false;
  for (std::size_t i = 0; i < a.unitaries_.size(); ++i) {
    if (a.unitaries_[i] != b.unitaries_[i]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

Complex parse_complex(std::string_view text) {
  const std::string_view whole = text;
  text = trim(text);
  if (text.empty()) throw ParseError("empty complex literal", 0);
  if (text.back() != 'i' && text.back() != 'j') return {parse_real(text, whole), 0.0};
  text.remove_suffix(1);
  std::size_t split = std::string_view::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  double re = 0.0;
  std::string_view im_text = text;
  if (split != std::string_view::npos) {
    re = parse_real(text.substr(0, split), whole);
    im_text = text.substr(split);
  }
  double im;
  if (im_text.empty() || im_text == "+") {
    im = 1.0;
  } else if (im_text == "-") {
    im = -1.0;
  } else {
    im = parse_real(im_text, whole);
  }
  return {re, im};
}

std::string format_complex(Complex z) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g%+.17gi", z.real(), z.imag());
  return buf;
}

std::vector<CoeffOp> parse_matrix_list(std::string_view text) {
  std::vector<CoeffOp> out;
  std::vector<std::vector<Complex>> rows;
  auto flush = [&] {
    if (rows.empty()) return;
    const std::size_t n = rows.size();
    CoeffOp m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i].size() != n) throw ParseError("matrix is not square", 0);
      for (std::size_t j = 0; j < n; ++j) m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
    if (!out.empty() && out.front().rows() != m.rows()) throw ParseError("matrices differ in size", 0);
    out.push_back(std::move(m));
    rows.clear();
  };
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(pos, nl - pos);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) {
      flush();
    } else {
      std::vector<Complex> row;
      std::size_t c = 0;
      while (c < line.size()) {
        while (c < line.size() && is_space(line[c])) ++c;
        std::size_t e = c;
        while (e < line.size() && !is_space(line[e])) ++e;
        if (e > c) {
          try {
            row.push_back(parse_complex(line.substr(c, e - c)));
          } catch (const ParseError&) {
            throw ParseError("malformed complex literal '" + std::string(line.substr(c, e - c)) + "'", pos + c);
          }
        }
        c = e;
      }
      rows.push_back(std::move(row));
    }
    pos = nl + 1;
  }
  flush();
  return out;
}

}  // namespace rdlab

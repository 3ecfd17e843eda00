#include "rdlab/groups.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <limits>

#include "rdlab/errors.hpp"
#include "rdlab/rng.hpp"

namespace rdlab {

namespace {

int mod(int a, int n) {
  const int r = a % n;
  return r < 0 ? r + n : r;
}

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

// Parses a signed integer at text[pos..]; advances pos.
int parse_int(std::string_view text, std::size_t& pos) {
  const std::size_t start = pos;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) ++pos;
  while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
  std::string_view digits = text.substr(start, pos - start);
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  int value = 0;
  const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || digits.empty()) {
    throw ParseError("expected integer", start);
  }
  return value;
}

// Letter aliases: a..d, x..w and s..v all name generators 1..4.
int alias_index(char c) {
  static constexpr std::string_view kSets[] = {"abcd", "xyzw", "stuv"};
  for (auto set : kSets) {
    const auto at = set.find(c);
    if (at != std::string_view::npos) return static_cast<int>(at);
  }
  return -1;
}

}  // namespace

std::size_t ElementHash::operator()(const GroupElement& g) const noexcept {
  std::uint64_t h = splitmix64(g.parent());
  for (int x : g.word()) h = splitmix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(x)));
  return static_cast<std::size_t>(h);
}

Group::Group(GroupKind kind, int rank, std::vector<int> orders)
    : kind_(kind), rank_(rank), orders_(std::move(orders)) {
  switch (kind_) {
    case GroupKind::kFree:
      spec_ = "free:" + std::to_string(rank_);
      break;
    case GroupKind::kFreeAbelian:
      spec_ = "zd:" + std::to_string(rank_);
      break;
    case GroupKind::kFreeProductCyclic: {
      spec_ = "fpc:";
      for (std::size_t i = 0; i < orders_.size(); ++i) {
        if (i) spec_ += ",";
        spec_ += std::to_string(orders_[i]);
      }
      break;
    }
  }
  std::uint64_t h = 0x5eed;
  for (char c : spec_) h = splitmix64(h ^ static_cast<unsigned char>(c));
  id_ = h;

  for (int i = 0; i < rank_; ++i) {
    if (kind_ == GroupKind::kFreeProductCyclic) {
      gens_.push_back(generator(i, 1));
      if (orders_[i] > 2) gens_.push_back(generator(i, -1));
    } else {
      gens_.push_back(generator(i, 1));
      gens_.push_back(generator(i, -1));
    }
  }
}

Group Group::free(int rank) {
  if (rank < 1) throw InvalidArgument("free group rank must be >= 1");
  return Group(GroupKind::kFree, rank, {});
}

Group Group::free_abelian(int rank) {
  if (rank < 1) throw InvalidArgument("free abelian rank must be >= 1");
  return Group(GroupKind::kFreeAbelian, rank, {});
}

Group Group::free_product_cyclic(std::vector<int> orders) {
  if (orders.empty()) throw InvalidArgument("free product needs at least one factor");
  for (int n : orders) {
    if (n < 2) throw InvalidArgument("cyclic factor orders must be >= 2");
  }
  const int rank = static_cast<int>(orders.size());
  return Group(GroupKind::kFreeProductCyclic, rank, std::move(orders));
}

Group Group::parse(std::string_view spec) {
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos) {
    throw ParseError("group spec must look like free:d, zd:d or fpc:n1,n2,...", 0);
  }
  const std::string_view kind = spec.substr(0, colon);
  std::size_t pos = colon + 1;
  if (kind == "free" || kind == "zd") {
    const int d = parse_int(spec, pos);
    if (pos != spec.size()) throw ParseError("trailing characters in group spec", pos);
    if (d < 1) throw ParseError("rank must be >= 1", colon + 1);
    return kind == "free" ? free(d) : free_abelian(d);
  }
  if (kind == "fpc") {
    std::vector<int> orders;
    while (true) {
      const std::size_t at = pos;
      const int n = parse_int(spec, pos);
      if (n < 2) throw ParseError("cyclic order must be >= 2", at);
      orders.push_back(n);
      if (pos == spec.size()) break;
      if (spec[pos] != ',') throw ParseError("expected ','", pos);
      ++pos;
    }
    return free_product_cyclic(std::move(orders));
  }
  throw ParseError("unknown group kind '" + std::string(kind) + "'", 0);
}

int Group::syllable_length(int factor, int exponent) const {
  const int n = orders_[factor];
  return std::min(exponent, n - exponent);
}

int Group::compute_length(const std::vector<int>& word) const {
  switch (kind_) {
    case GroupKind::kFree:
      return static_cast<int>(word.size());
    case GroupKind::kFreeAbelian: {
      int len = 0;
      for (int e : word) len += std::abs(e);
      return len;
    }
    case GroupKind::kFreeProductCyclic: {
      int len = 0;
      for (std::size_t i = 0; i < word.size(); i += 2) len += syllable_length(word[i], word[i + 1]);
      return len;
    }
  }
  return 0;
}

GroupElement Group::make(std::vector<int> word) const {
  const int len = compute_length(word);
  return GroupElement(id_, std::move(word), len);
}

GroupElement Group::identity() const {
  if (kind_ == GroupKind::kFreeAbelian) return make(std::vector<int>(rank_, 0));
  return make({});
}

GroupElement Group::generator(int gen, int power) const {
  if (gen < 0 || gen >= rank_) throw InvalidArgument("generator index out of range");
  switch (kind_) {
    case GroupKind::kFree: {
      const int letter = power >= 0 ? gen + 1 : -(gen + 1);
      return make(std::vector<int>(static_cast<std::size_t>(std::abs(power)), letter));
    }
    case GroupKind::kFreeAbelian: {
      std::vector<int> v(rank_, 0);
      v[gen] = power;
      return make(std::move(v));
    }
    case GroupKind::kFreeProductCyclic: {
      const int e = mod(power, orders_[gen]);
      if (e == 0) return make({});
      return make({gen, e});
    }
  }
  return identity();
}

void Group::check_member(const GroupElement& g) const {
  if (g.parent() != id_) throw ContextMismatch("element does not belong to group " + spec_);
}

GroupElement Group::multiply(const GroupElement& a, const GroupElement& b) const {
  check_member(a);
  check_member(b);
  switch (kind_) {
    case GroupKind::kFree: {
      std::vector<int> w = a.word();
      w.reserve(w.size() + b.word().size());
      for (int x : b.word()) {
        if (!w.empty() && w.back() == -x) {
          w.pop_back();
        } else {
          w.push_back(x);
        }
      }
      return make(std::move(w));
    }
    case GroupKind::kFreeAbelian: {
      std::vector<int> w = a.word();
      for (int i = 0; i < rank_; ++i) w[i] += b.word()[i];
      return make(std::move(w));
    }
    case GroupKind::kFreeProductCyclic: {
      std::vector<int> w = a.word();
      w.reserve(w.size() + b.word().size());
      const auto& bw = b.word();
      for (std::size_t i = 0; i < bw.size(); i += 2) {
        const int f = bw[i];
        const int e = bw[i + 1];
        if (!w.empty() && w[w.size() - 2] == f) {
          const int merged = mod(w.back() + e, orders_[f]);
          if (merged == 0) {
            w.pop_back();
            w.pop_back();
          } else {
            w.back() = merged;
          }
        } else {
          w.push_back(f);
          w.push_back(e);
        }
      }
      return make(std::move(w));
    }
  }
  return identity();
}

GroupElement Group::inverse(const GroupElement& g) const {
  check_member(g);
  const auto& w = g.word();
  switch (kind_) {
    case GroupKind::kFree: {
      std::vector<int> r(w.rbegin(), w.rend());
      for (int& x : r) x = -x;
      return make(std::move(r));
    }
    case GroupKind::kFreeAbelian: {
      std::vector<int> r = w;
      for (int& x : r) x = -x;
      return make(std::move(r));
    }
    case GroupKind::kFreeProductCyclic: {
      std::vector<int> r;
      r.reserve(w.size());
      for (std::size_t i = w.size(); i >= 2; i -= 2) {
        const int f = w[i - 2];
        r.push_back(f);
        r.push_back(orders_[f] - w[i - 1]);
      }
      return make(std::move(r));
    }
  }
  return identity();
}

int Group::length(const GroupElement& g) const {
  check_member(g);
  return g.length();
}

std::vector<GroupElement> Group::geodesic_letters(const GroupElement& g) const {
  check_member(g);
  std::vector<GroupElement> letters;
  letters.reserve(static_cast<std::size_t>(g.length()));
  const auto& w = g.word();
  switch (kind_) {
    case GroupKind::kFree:
      for (int x : w) letters.push_back(generator(std::abs(x) - 1, x > 0 ? 1 : -1));
      break;
    case GroupKind::kFreeAbelian:
      for (int i = 0; i < rank_; ++i) {
        const GroupElement step = generator(i, w[i] > 0 ? 1 : -1);
        for (int r = 0; r < std::abs(w[i]); ++r) letters.push_back(step);
      }
      break;
    case GroupKind::kFreeProductCyclic:
      for (std::size_t i = 0; i < w.size(); i += 2) {
        const int f = w[i];
        const int e = w[i + 1];
        const bool forward = e <= orders_[f] - e;
        const GroupElement step = generator(f, forward ? 1 : -1);
        const int reps = syllable_length(f, e);
        for (int r = 0; r < reps; ++r) letters.push_back(step);
      }
      break;
  }
  return letters;
}

GroupElement Group::geodesic_prefix(const GroupElement& g, int j) const {
  check_member(g);
  if (j < 0 || j > g.length()) throw InvalidArgument("prefix length out of range");
  if (kind_ == GroupKind::kFree) {
    return make(std::vector<int>(g.word().begin(), g.word().begin() + j));
  }
  const auto letters = geodesic_letters(g);
  GroupElement u = identity();
  for (int i = 0; i < j; ++i) u = multiply(u, letters[static_cast<std::size_t>(i)]);
  return u;
}

std::string Group::letter_name(int gen) const {
  if (kind_ == GroupKind::kFreeProductCyclic && rank_ <= 4) {
    return std::string(1, "stuv"[gen]);
  }
  return "x" + std::to_string(gen + 1);
}

GroupElement Group::parse_element(std::string_view text) const {
  std::size_t pos = 0;
  auto skip = [&] {
    while (pos < text.size() && is_space(text[pos])) ++pos;
  };
  skip();
  if (kind_ == GroupKind::kFreeAbelian && pos < text.size() && text[pos] == '(') {
    ++pos;
    std::vector<int> v;
    while (true) {
      skip();
      v.push_back(parse_int(text, pos));
      skip();
      if (pos >= text.size()) throw ParseError("unterminated exponent vector", pos);
      if (text[pos] == ')') {
        ++pos;
        break;
      }
      if (text[pos] != ',') throw ParseError("expected ',' or ')'", pos);
      ++pos;
    }
    skip();
    if (pos != text.size()) throw ParseError("trailing characters after exponent vector", pos);
    if (static_cast<int>(v.size()) != rank_) {
      throw ParseError("exponent vector has " + std::to_string(v.size()) + " entries, expected " +
                           std::to_string(rank_),
                       0);
    }
    return make(std::move(v));
  }

  GroupElement result = identity();
  bool any = false;
  while (true) {
    skip();
    if (pos >= text.size()) break;
    const std::size_t start = pos;
    int gen = -1;
    bool is_identity = false;
    const char c = text[pos];
    if (c == 'e' || c == '1') {
      is_identity = true;
      ++pos;
    } else if (c == 'x' && pos + 1 < text.size() &&
               std::isdigit(static_cast<unsigned char>(text[pos + 1]))) {
      ++pos;
      gen = parse_int(text, pos) - 1;
    } else if (alias_index(c) >= 0) {
      gen = alias_index(c);
      ++pos;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }
    int power = 1;
    if (pos < text.size() && text[pos] == '^') {
      ++pos;
      power = parse_int(text, pos);
    }
    if (pos < text.size() && !is_space(text[pos])) {
      throw ParseError("expected whitespace between letters", pos);
    }
    if (!is_identity) {
      if (gen < 0 || gen >= rank_) {
        throw ParseError("generator out of range for " + spec_, start);
      }
      result = multiply(result, generator(gen, power));
    }
    any = true;
  }
  if (!any) throw ParseError("empty word literal", 0);
  return result;
}

std::string Group::format(const GroupElement& g) const {
  check_member(g);
  const auto& w = g.word();
  if (kind_ == GroupKind::kFreeAbelian) {
    std::string s = "(";
    for (int i = 0; i < rank_; ++i) {
      if (i) s += ",";
      s += std::to_string(w[i]);
    }
    return s + ")";
  }
  if (w.empty()) return "e";
  std::string s;
  auto emit = [&](int gen, int power) {
    if (!s.empty()) s += ' ';
    s += letter_name(gen);
    if (power != 1) s += "^" + std::to_string(power);
  };
  if (kind_ == GroupKind::kFree) {
    std::size_t i = 0;
    while (i < w.size()) {
      std::size_t j = i;
      while (j < w.size() && w[j] == w[i]) ++j;
      const int run = static_cast<int>(j - i);
      emit(std::abs(w[i]) - 1, w[i] > 0 ? run : -run);
      i = j;
    }
  } else {
    for (std::size_t i = 0; i < w.size(); i += 2) emit(w[i], w[i + 1]);
  }
  return s;
}

int cancellation_number(const Group& group, const GroupElement& a, const GroupElement& b) {
  const GroupElement ab = group.multiply(a, b);
  const int defect = a.length() + b.length() - ab.length();
  return defect / 2;
}

std::size_t default_element_budget() {
  constexpr std::size_t kDefault = 5'000'000;
  if (const char* env = std::getenv("RDLAB_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return kDefault;
}

SphereIndex SphereIndex::enumerate(const Group& group, int radius, std::size_t budget) {
  if (radius < 0) throw InvalidArgument("radius must be >= 0");
  if (group.kind() == GroupKind::kFree) {
    // Closed form 1 + sum 2d(2d-1)^{k-1}; refuse before doing any work.
    const double d2 = 2.0 * group.rank();
    double total = 1.0;
    double sphere = d2;
    for (int k = 1; k <= radius; ++k) {
      total += sphere;
      sphere *= d2 - 1.0;
    }
    if (total > static_cast<double>(budget)) {
      throw BudgetExceeded("ball B_" + std::to_string(radius) + " of " + group.spec(), budget,
                           static_cast<std::size_t>(std::min(total, 1e18)));
    }
  }

  SphereIndex index(group);
  index.radius_ = radius;
  index.offsets_.push_back(0);
  index.elements_.push_back(group.identity());
  index.lookup_.emplace(index.elements_.back(), 0);
  index.offsets_.push_back(1);

  for (int k = 1; k <= radius; ++k) {
    const std::size_t prev_begin = index.offsets_[k - 1];
    const std::size_t prev_end = index.offsets_[k];
    std::vector<GroupElement> next;
    for (std::size_t i = prev_begin; i < prev_end; ++i) {
      for (const auto& s : group.generating_set()) {
        GroupElement h = group.multiply(index.elements_[i], s);
        if (h.length() != k) continue;
        if (index.lookup_.contains(h)) continue;
        index.lookup_.emplace(h, 0);
        next.push_back(std::move(h));
      }
      if (index.elements_.size() + next.size() > budget) {
        const double prev = static_cast<double>(prev_end - prev_begin);
        const double prev2 = k >= 2 ? static_cast<double>(index.offsets_[k - 1] - index.offsets_[k - 2]) : 1.0;
        const double ratio = std::max(1.0, prev / std::max(1.0, prev2));
        double estimate = static_cast<double>(index.elements_.size());
        double s = prev * ratio;
        for (int j = k; j <= radius; ++j, s *= ratio) estimate += s;
        throw BudgetExceeded("ball B_" + std::to_string(radius) + " of " + group.spec(), budget,
                             static_cast<std::size_t>(std::min(estimate, 1e18)));
      }
    }
    std::sort(next.begin(), next.end());
    for (auto& h : next) {
      index.lookup_[h] = index.elements_.size();
      index.elements_.push_back(std::move(h));
    }
    index.offsets_.push_back(index.elements_.size());
  }
  return index;
}

std::span<const GroupElement> SphereIndex::sphere(int k) const {
  if (k < 0 || k > radius_) throw InvalidArgument("sphere index outside enumerated radius");
  return std::span<const GroupElement>(elements_).subspan(offsets_[k], offsets_[k + 1] - offsets_[k]);
}

std::span<const GroupElement> SphereIndex::ball(int r) const {
  if (r < 0) return {};
  r = std::min(r, radius_);
  return std::span<const GroupElement>(elements_).subspan(0, offsets_[r + 1]);
}

std::vector<std::size_t> SphereIndex::sphere_sizes() const {
  std::vector<std::size_t> sizes;
  for (int k = 0; k <= radius_; ++k) sizes.push_back(sphere_size(k));
  return sizes;
}

std::optional<std::size_t> SphereIndex::index_of(const GroupElement& g) const {
  const auto it = lookup_.find(g);
  if (it == lookup_.end()) return std::nullopt;
  return it->second;
}

std::vector<GroupElement> SphereIndex::thickened_sphere(double k, double alpha) const {
  constexpr double kEps = 1e-12;
  const int lo = std::max(0, static_cast<int>(std::ceil(k - alpha - kEps)));
  const int hi = std::min(radius_, static_cast<int>(std::floor(k + alpha + kEps)));
  std::vector<GroupElement> out;
  for (int len = lo; len <= hi; ++len) {
    const auto s = sphere(len);
    out.insert(out.end(), s.begin(), s.end());
  }
  return out;
}

GrowthFit growth_fit(const SphereIndex& index, double cap) {
  const int R = index.radius();
  if (R < 3) throw InvalidArgument("growth_fit needs spheres up to radius >= 3");
  const auto sizes = index.sphere_sizes();
  std::vector<double> counts(sizes.begin(), sizes.end());

  // Finite differences of the tail |C_1|, ..., |C_R|.
  std::vector<std::vector<std::int64_t>> diffs;
  diffs.emplace_back(sizes.begin() + 1, sizes.end());
  std::optional<int> degree;
  for (int s = 0; s + 2 <= R; ++s) {
    const auto& prev = diffs.back();
    std::vector<std::int64_t> next;
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) next.push_back(prev[i + 1] - prev[i]);
    diffs.push_back(next);
    if (std::all_of(next.begin(), next.end(), [](std::int64_t v) { return v == 0; })) {
      degree = s;
      break;
    }
  }

  auto max_ratio = [&](int s) {
    double best = 0.0;
    for (int k = 0; k <= R; ++k) best = std::max(best, counts[k] / std::pow(1.0 + k, s));
    return best;
  };

  GrowthFit fit;
  if (degree) {
    const int s = *degree;
    fit.s = s;
    fit.degree = degree;
    fit.polynomial = true;
    double C = max_ratio(s);
    // Newton form P(1+t) = sum_j binom(t, j) D^j c_1 beyond the enumerated range.
    auto poly = [&](double t) {
      double total = 0.0;
      double binom = 1.0;
      for (int j = 0; j <= s; ++j) {
        total += binom * static_cast<double>(diffs[j][0]);
        binom *= (t - j) / (j + 1.0);
      }
      return total;
    };
    for (int k = R + 1; k <= R + 10000; ++k) C = std::max(C, poly(k - 1.0) / std::pow(1.0 + k, s));
    double factorial = 1.0;
    for (int j = 2; j <= s; ++j) factorial *= j;
    C = std::max(C, static_cast<double>(diffs[s][0]) / factorial);
    fit.C = C;
    return fit;
  }

  fit.polynomial = false;
  fit.s = R;
  for (int s = 0; s <= R; ++s) {
    if (max_ratio(s) <= cap) {
      fit.s = s;
      break;
    }
  }
  fit.C = max_ratio(fit.s);
  return fit;
}

}  // namespace rdlab

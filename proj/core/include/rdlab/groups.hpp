#pragma once

// Finitely generated word groups with exact normal forms.
//
// Three families are supported, each with a decidable normal form:
//   free:d      free group F_d on x1..xd
//   zd:d        free abelian group Z^d, elements are exponent vectors
//   fpc:n1,...  free product Z_{n1} * ... * Z_{nk} of finite cyclic groups
//
// Lengths are word lengths with respect to the standard symmetric
// generating set, so spheres C_k are exactly the elements of length k.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace rdlab {

enum class GroupKind { kFree, kFreeAbelian, kFreeProductCyclic };

class Group;

// An element in normal form. The encoding of `word()` depends on the kind:
//   free: signed generator indices (+i is x_i, -i its inverse), reduced;
//   zd:   exponent vector of length d;
//   fpc:  flattened syllables (factor index, exponent in 1..n-1), with
//         neighbouring syllables in different factors.
class GroupElement {
 public:
  GroupElement() = default;

  const std::vector<int>& word() const { return word_; }
  std::uint64_t parent() const { return parent_; }
  // Cached word length.
  int length() const { return length_; }
  bool is_identity() const { return length_ == 0; }

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.parent_ == b.parent_ && a.word_ == b.word_;
  }

  // Shortlex: by length, then by encoded word.
  friend bool operator<(const GroupElement& a, const GroupElement& b) {
    if (a.length_ != b.length_) return a.length_ < b.length_;
    return a.word_ < b.word_;
  }

 private:
  friend class Group;
  GroupElement(std::uint64_t parent, std::vector<int> word, int length)
      : parent_(parent), word_(std::move(word)), length_(length) {}

  std::uint64_t parent_ = 0;
  std::vector<int> word_;
  int length_ = 0;
};

struct ElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept;
};

class Group {
 public:
  static Group free(int rank);
  static Group free_abelian(int rank);
  static Group free_product_cyclic(std::vector<int> orders);
  // Parses `free:d`, `zd:d` or `fpc:n1,n2,...`.
  static Group parse(std::string_view spec);

  GroupKind kind() const { return kind_; }
  // Number of generators (free, zd) or cyclic factors (fpc).
  int rank() const { return rank_; }
  const std::vector<int>& orders() const { return orders_; }
  std::uint64_t id() const { return id_; }
  const std::string& spec() const { return spec_; }

  GroupElement identity() const;
  // gen^power for the 0-based generator index `gen`.
  GroupElement generator(int gen, int power = 1) const;
  // The standard symmetric generating set, in a fixed order.
  const std::vector<GroupElement>& generating_set() const { return gens_; }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const;
  GroupElement inverse(const GroupElement& g) const;
  int length(const GroupElement& g) const;

  // A geodesic spelling of g as generating-set letters. Free and fpc use the
  // reduced word (fpc syllable t^e spelled with t or t^-1, whichever is
  // shorter); zd lists all first-coordinate letters, then the second, etc.
  std::vector<GroupElement> geodesic_letters(const GroupElement& g) const;
  // Product of the first j letters of geodesic_letters(g), 0 <= j <= |g|.
  GroupElement geodesic_prefix(const GroupElement& g, int j) const;

  // Word literals: `e`, `x1 x2^-1`, `a b^2`, `(2,-1)` for zd.
  GroupElement parse_element(std::string_view text) const;
  std::string format(const GroupElement& g) const;

  // Throws ContextMismatch unless g belongs to this group.
  void check_member(const GroupElement& g) const;

  friend bool operator==(const Group& a, const Group& b) { return a.id_ == b.id_; }

 private:
  Group(GroupKind kind, int rank, std::vector<int> orders);

  GroupElement make(std::vector<int> word) const;
  int compute_length(const std::vector<int>& word) const;
  int syllable_length(int factor, int exponent) const;
  std::string letter_name(int gen) const;

  GroupKind kind_ = GroupKind::kFree;
  int rank_ = 0;
  std::vector<int> orders_;
  std::uint64_t id_ = 0;
  std::string spec_;
  std::vector<GroupElement> gens_;
};

// The integer p with 2p <= |a|+|b|-|ab| < 2p+2.
int cancellation_number(const Group& group, const GroupElement& a, const GroupElement& b);

// Default element budget for ball enumerations. Reads RDLAB_BUDGET when set.
std::size_t default_element_budget();

// Exhaustive enumeration of the spheres C_0..C_R. Elements are stored
// sphere by sphere (each sphere in shortlex order), so the ball B_r is a
// prefix of the storage for every r <= R.
class SphereIndex {
 public:
  static SphereIndex enumerate(const Group& group, int radius,
                               std::size_t budget = default_element_budget());

  const Group& group() const { return group_; }
  int radius() const { return radius_; }

  std::span<const GroupElement> sphere(int k) const;
  std::span<const GroupElement> ball(int r) const;
  std::size_t sphere_size(int k) const { return sphere(k).size(); }
  std::size_t ball_size(int r) const { return ball(r).size(); }
  std::vector<std::size_t> sphere_sizes() const;

  std::optional<std::size_t> index_of(const GroupElement& g) const;
  const GroupElement& at(std::size_t i) const { return elements_[i]; }

  // Elements of C_{k,alpha} = { g : k - alpha <= |g| <= k + alpha } that lie
  // inside the enumerated ball.
  std::vector<GroupElement> thickened_sphere(double k, double alpha) const;

 private:
  SphereIndex(Group group) : group_(std::move(group)) {}

  Group group_;
  int radius_ = 0;
  std::vector<GroupElement> elements_;
  std::vector<std::size_t> offsets_;  // offsets_[k] = start of C_k; size R+2
  std::unordered_map<GroupElement, std::size_t, ElementHash> lookup_;
};

// |C_k| <= C (1+k)^s for all k.
struct GrowthFit {
  double C = 0.0;
  int s = 0;
  bool polynomial = false;
  // Degree of the polynomial that reproduces |C_k| for 1 <= k <= R, if any.
  std::optional<int> degree;
};

// Integer-exponent growth fit. When the sphere counts for k >= 1 agree with
// a polynomial of degree s on the enumerated range (vanishing finite
// differences), s is that degree and C is the supremum of |C_k|/(1+k)^s over
// all k under that polynomial. Otherwise the result is flagged
// non-polynomial and (C, s) is the smallest integer s <= R whose enumerated
// ratios stay below `cap`, or s = R.
GrowthFit growth_fit(const SphereIndex& index, double cap = 1e3);

}  // namespace rdlab

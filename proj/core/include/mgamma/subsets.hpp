#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace mgamma {

inline constexpr int kMaxDimension = 16;

/// A subset of {1,...,n} encoded as a bitmask (bit i-1 set iff i is a member).
/// Dimensions are capped at 16 so every subset family fits in machine words.
class SubsetIndex {
 public:
  SubsetIndex() = default;
  SubsetIndex(std::uint32_t bits, int n);

  /// Full set {1,...,n}.
  static SubsetIndex full(int n);
  /// Empty subset of a ground set of size n.
  static SubsetIndex empty(int n);
  /// Singleton {i}, 1-based.
  static SubsetIndex singleton(int i, int n);
  /// Parses a comma-joined 1-based element list, e.g. "1,3"; "" is empty.
  static SubsetIndex parse(const std::string& text, int n);

  std::uint32_t bits() const { return bits_; }
  int dimension() const { return n_; }
  int cardinality() const;
  bool is_empty() const { return bits_ == 0; }
  bool contains(int i) const { return (bits_ >> (i - 1)) & 1u; }
  bool is_subset_of(SubsetIndex other) const;
  SubsetIndex complement() const;
  SubsetIndex set_union(SubsetIndex other) const;
  SubsetIndex set_minus(SubsetIndex other) const;
  SubsetIndex intersect(SubsetIndex other) const;

  /// Members in increasing order, 1-based.
  std::vector<int> elements() const;
  /// Smallest member; requires non-empty.
  int min_element() const;
  /// Comma-joined 1-based list, e.g. "1,3". Empty set serializes to "".
  std::string to_string() const;

  friend auto operator<=>(const SubsetIndex&, const SubsetIndex&) = default;

 private:
  std::uint32_t bits_ = 0;
  std::uint8_t n_ = 0;
};

/// All subsets of {1,...,n} in increasing bitmask order. With
/// nonempty_only the empty set is skipped (2^n - 1 entries).
std::vector<SubsetIndex> subsets(int n, bool nonempty_only = false);

/// A set partition: disjoint nonempty blocks whose union is the partitioned
/// set, kept in canonical order (sorted by smallest element).
struct Partition {
  std::vector<SubsetIndex> blocks;

  /// Union of all blocks.
  SubsetIndex ground() const;
};

/// All partitions of S into exactly k nonempty blocks, canonical and
/// deterministic. Out-of-range k yields an empty sequence; the count for
/// valid k is the Stirling number S(|S|, k).
std::vector<Partition> partitions_into_k(SubsetIndex s, int k);

/// Exponent vector of a monomial in n variables.
struct MultiIndex {
  std::vector<int> exponents;

  int total_degree() const;
  int max_degree() const;

  friend auto operator<=>(const MultiIndex&, const MultiIndex&) = default;
};

/// All alpha with |alpha| <= max_total in lexicographic order, each once.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_total);

}  // namespace mgamma

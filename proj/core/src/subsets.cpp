#include "mgamma/subsets.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stdexcept>

namespace mgamma {

namespace {

void check_dimension(int n) {
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("dimension must be in [1, " +
                                std::to_string(kMaxDimension) + "], got " +
                                std::to_string(n));
  }
}

}  // namespace

SubsetIndex::SubsetIndex(std::uint32_t bits, int n)
    : bits_(bits), n_(static_cast<std::uint8_t>(n)) {
  check_dimension(n);
  if (bits >> n) {
    throw std::invalid_argument("subset mask exceeds 2^n - 1");
  }
}

SubsetIndex SubsetIndex::full(int n) {
  check_dimension(n);
  return SubsetIndex((1u << n) - 1u, n);
}

SubsetIndex SubsetIndex::empty(int n) { return SubsetIndex(0u, n); }

SubsetIndex SubsetIndex::singleton(int i, int n) {
  check_dimension(n);
  if (i < 1 || i > n) throw std::invalid_argument("element out of range");
  return SubsetIndex(1u << (i - 1), n);
}

SubsetIndex SubsetIndex::parse(const std::string& text, int n) {
  check_dimension(n);
  std::uint32_t bits = 0;
  std::stringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    if (token.empty()) continue;
    std::size_t pos = 0;
    int value = std::stoi(token, &pos);
    if (pos != token.size() || value < 1 || value > n) {
      throw std::invalid_argument("bad subset element '" + token + "'");
    }
    bits |= 1u << (value - 1);
  }
  return SubsetIndex(bits, n);
}

int SubsetIndex::cardinality() const { return std::popcount(bits_); }

bool SubsetIndex::is_subset_of(SubsetIndex other) const {
  return (bits_ & ~other.bits_) == 0;
}

SubsetIndex SubsetIndex::complement() const {
  return SubsetIndex(((1u << n_) - 1u) ^ bits_, n_);
}

SubsetIndex SubsetIndex::set_union(SubsetIndex other) const {
  return SubsetIndex(bits_ | other.bits_, n_);
}

SubsetIndex SubsetIndex::set_minus(SubsetIndex other) const {
  return SubsetIndex(bits_ & ~other.bits_, n_);
}

SubsetIndex SubsetIndex::intersect(SubsetIndex other) const {
  return SubsetIndex(bits_ & other.bits_, n_);
}

std::vector<int> SubsetIndex::elements() const {
  std::vector<int> out;
  for (int i = 1; i <= n_; ++i) {
    if (contains(i)) out.push_back(i);
  }
  return out;
}

int SubsetIndex::min_element() const {
  if (bits_ == 0) throw std::logic_error("min_element of empty subset");
  return std::countr_zero(bits_) + 1;
}

std::string SubsetIndex::to_string() const {
  std::string out;
  for (int i : elements()) {
    if (!out.empty()) out += ',';
    out += std::to_string(i);
  }
  return out;
}

std::vector<SubsetIndex> subsets(int n, bool nonempty_only) {
  check_dimension(n);
  std::vector<SubsetIndex> out;
  out.reserve((1u << n) - (nonempty_only ? 1 : 0));
  for (std::uint32_t mask = nonempty_only ? 1 : 0; mask < (1u << n); ++mask) {
    out.emplace_back(mask, n);
  }
  return out;
}

SubsetIndex Partition::ground() const {
  if (blocks.empty()) throw std::logic_error("empty partition has no ground set");
  SubsetIndex acc = blocks.front();
  for (std::size_t i = 1; i < blocks.size(); ++i) acc = acc.set_union(blocks[i]);
  return acc;
}

std::vector<Partition> partitions_into_k(SubsetIndex s, int k) {
  std::vector<Partition> out;
  const std::vector<int> members = s.elements();
  const int m = static_cast<int>(members.size());
  if (k < 1 || k > m) return out;

  // Restricted-growth strings: element j goes to block label[j] where
  // label[j] <= 1 + max(label[0..j-1]). Blocks inherit canonical order
  // because block b is created by the first element assigned to it.
  std::vector<int> label(m, 0);
  std::vector<std::uint32_t> block_bits(m, 0);

  auto emit = [&](int used) {
    if (used != k) return;
    Partition part;
    part.blocks.reserve(k);
    for (int b = 0; b < k; ++b) {
      part.blocks.emplace_back(block_bits[b], s.dimension());
    }
    out.push_back(std::move(part));
  };

  auto recurse = [&](auto&& self, int j, int used) -> void {
    if (j == m) {
      emit(used);
      return;
    }
    // Prune: remaining elements cannot open enough new blocks.
    if (used + (m - j) < k) return;
    const std::uint32_t bit = 1u << (members[j] - 1);
    const int cap = std::min(used + 1, k);
    for (int b = 0; b < cap; ++b) {
      block_bits[b] |= bit;
      label[j] = b;
      self(self, j + 1, std::max(used, b + 1));
      block_bits[b] &= ~bit;
    }
  };
  recurse(recurse, 0, 0);
  return out;
}

int MultiIndex::total_degree() const {
  int t = 0;
  for (int e : exponents) t += e;
  return t;
}

int MultiIndex::max_degree() const {
  int m = 0;
  for (int e : exponents) m = std::max(m, e);
  return m;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_total) {
  check_dimension(n);
  if (max_total < 0) throw std::invalid_argument("max_total must be >= 0");
  std::vector<MultiIndex> out;
  MultiIndex current;
  current.exponents.assign(n, 0);
  auto recurse = [&](auto&& self, int pos, int budget) -> void {
    if (pos == n) {
      out.push_back(current);
      return;
    }
    for (int e = 0; e <= budget; ++e) {
      current.exponents[pos] = e;
      self(self, pos + 1, budget - e);
    }
    current.exponents[pos] = 0;
  };
  recurse(recurse, 0, max_total);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace mgamma

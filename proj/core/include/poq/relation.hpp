#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace poq {

using Edge = std::pair<std::size_t, std::size_t>;

/// Binary relation over the nodes 0..n-1, stored as a dense bit matrix.
class Relation {
 public:
  Relation() = default;
  explicit Relation(std::size_t n);

  static Relation from_pairs(std::size_t n, std::span<const Edge> pairs);

  std::size_t size() const noexcept { return n_; }

  bool contains(std::size_t a, std::size_t b) const noexcept {
    return (bits_[a * words_ + b / 64] >> (b % 64)) & 1U;
  }
  void insert(std::size_t a, std::size_t b) noexcept {
    bits_[a * words_ + b / 64] |= std::uint64_t{1} << (b % 64);
  }
  void erase(std::size_t a, std::size_t b) noexcept {
    bits_[a * words_ + b / 64] &= ~(std::uint64_t{1} << (b % 64));
  }

  /// Pairs in lexicographic order.
  std::vector<Edge> pairs() const;
  std::size_t pair_count() const noexcept;

  std::vector<std::size_t> successors(std::size_t a) const;
  std::vector<std::size_t> predecessors(std::size_t b) const;
  bool has_successor(std::size_t a) const noexcept;
  bool has_predecessor(std::size_t b) const noexcept;

  /// Warshall closure, row-parallel over 64-bit words.
  Relation closure() const;

  bool is_irreflexive() const noexcept;
  bool is_transitive() const;
  /// Irreflexive and transitive (asymmetry follows).
  bool is_strict_partial_order() const;

  friend bool operator==(const Relation&, const Relation&) = default;
  friend Relation transitive_reduction(const Relation& order);

 private:
  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Minimal relation with the same transitive closure as `order`. The input
/// need not be transitively closed; it is closed first. Throws
/// LogError(CyclicOrder) when the closure is not irreflexive.
Relation transitive_reduction(const Relation& order);

}  // namespace poq

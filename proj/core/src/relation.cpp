#include "poq/relation.hpp"

#include <bit>

#include "poq/error.hpp"

namespace poq {

Relation::Relation(std::size_t n)
    : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

Relation Relation::from_pairs(std::size_t n, std::span<const Edge> pairs) {
  Relation r(n);
  for (const auto& [a, b] : pairs) r.insert(a, b);
  return r;
}

std::vector<Edge> Relation::pairs() const {
  std::vector<Edge> out;
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t word = bits_[a * words_ + w];
      while (word != 0) {
        const int bit = std::countr_zero(word);
        out.emplace_back(a, w * 64 + static_cast<std::size_t>(bit));
        word &= word - 1;
      }
    }
  }
  return out;
}

std::size_t Relation::pair_count() const noexcept {
  std::size_t count = 0;
  for (auto w : bits_) count += static_cast<std::size_t>(std::popcount(w));
  return count;
}

std::vector<std::size_t> Relation::successors(std::size_t a) const {
  std::vector<std::size_t> out;
  for (std::size_t b = 0; b < n_; ++b)
    if (contains(a, b)) out.push_back(b);
  return out;
}

std::vector<std::size_t> Relation::predecessors(std::size_t b) const {
  std::vector<std::size_t> out;
  for (std::size_t a = 0; a < n_; ++a)
    if (contains(a, b)) out.push_back(a);
  return out;
}

bool Relation::has_successor(std::size_t a) const noexcept {
  for (std::size_t w = 0; w < words_; ++w)
    if (bits_[a * words_ + w] != 0) return true;
  return false;
}

bool Relation::has_predecessor(std::size_t b) const noexcept {
  for (std::size_t a = 0; a < n_; ++a)
    if (contains(a, b)) return true;
  return false;
}

Relation Relation::closure() const {
  Relation r = *this;
  for (std::size_t k = 0; k < n_; ++k) {
    const std::uint64_t* row_k = &r.bits_[k * words_];
    for (std::size_t i = 0; i < n_; ++i) {
      if (!r.contains(i, k)) continue;
      std::uint64_t* row_i = &r.bits_[i * words_];
      for (std::size_t w = 0; w < words_; ++w) row_i[w] |= row_k[w];
    }
  }
  return r;
}

bool Relation::is_irreflexive() const noexcept {
  for (std::size_t a = 0; a < n_; ++a)
    if (contains(a, a)) return false;
  return true;
}

bool Relation::is_transitive() const { return closure() == *this; }

bool Relation::is_strict_partial_order() const {
  return is_irreflexive() && is_transitive();
}

Relation transitive_reduction(const Relation& order) {
  const Relation closed = order.closure();
  if (!closed.is_irreflexive())
    throw LogError(LogErrc::CyclicOrder, "order relation contains a cycle");

  // (a,b) survives iff no c with a < c < b. For each a, remove the union of
  // successor rows of a's successors.
  const std::size_t n = closed.size();
  const std::size_t words = closed.words_;
  Relation reduced = closed;
  for (std::size_t a = 0; a < n; ++a) {
    std::uint64_t* row_a = &reduced.bits_[a * words];
    for (std::size_t c = 0; c < n; ++c) {
      if (!closed.contains(a, c)) continue;
      const std::uint64_t* row_c = &closed.bits_[c * words];
      for (std::size_t w = 0; w < words; ++w) row_a[w] &= ~row_c[w];
    }
  }
  return reduced;
}

}  // namespace poq

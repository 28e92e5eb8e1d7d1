// Canonical labeling of a trace's labeled transitive reduction.
//
// Colour refinement seeded by label, then individualization-refinement over
// the first non-singleton cell, keeping the lexicographically smallest leaf
// encoding. Candidates inside a cell are pruned by two automorphism sources:
// twins (same label, same predecessors and successors) and automorphisms
// found when two leaves encode identically.

#include <algorithm>
#include <numeric>

#include "poq/log_model.hpp"

namespace poq {
namespace {

using Colors = std::vector<std::uint32_t>;

class Canonicalizer {
 public:
  explicit Canonicalizer(const Trace& trace) : n_(trace.size()) {
    std::vector<std::string_view> distinct;
    for (const auto& inst : trace.instances()) distinct.push_back(inst.label);
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()),
                   distinct.end());
    label_rank_.resize(n_);
    for (std::size_t v = 0; v < n_; ++v) {
      label_rank_[v] = static_cast<std::uint32_t>(
          std::lower_bound(distinct.begin(), distinct.end(),
                           trace.instance(v).label) -
          distinct.begin());
    }
    preds_.resize(n_);
    succs_.resize(n_);
    for (const auto& [a, b] : trace.reduction().pairs()) {
      succs_[a].push_back(b);
      preds_[b].push_back(a);
    }
    compute_twins();
  }

  /// Node order of the canonical leaf: position -> node.
  std::vector<std::size_t> run() {
    Colors colors(label_rank_.begin(), label_rank_.end());
    densify(colors);
    std::vector<std::size_t> prefix;
    search(std::move(colors), prefix);
    return best_order_;
  }

 private:
  void compute_twins() {
    std::vector<std::size_t> idx(n_);
    std::iota(idx.begin(), idx.end(), 0);
    auto key = [&](std::size_t v) {
      return std::tie(label_rank_[v], preds_[v], succs_[v]);
    };
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
    twin_class_.assign(n_, 0);
    std::size_t cls = 0;
    for (std::size_t i = 0; i < n_; ++i) {
      if (i > 0 && key(idx[i]) != key(idx[i - 1])) ++cls;
      twin_class_[idx[i]] = cls;
    }
  }

  static std::size_t densify(Colors& colors) {
    Colors sorted = colors;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (auto& c : colors) {
      c = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    }
    return sorted.size();
  }

  void refine(Colors& colors) const {
    std::size_t cells = densify(colors);
    std::vector<std::vector<std::uint32_t>> sig(n_);
    while (cells < n_) {
      for (std::size_t v = 0; v < n_; ++v) {
        auto& s = sig[v];
        s.clear();
        s.push_back(colors[v]);
        const std::size_t pred_begin = s.size();
        for (auto p : preds_[v]) s.push_back(colors[p]);
        std::sort(s.begin() + static_cast<std::ptrdiff_t>(pred_begin),
                  s.end());
        s.push_back(UINT32_MAX);  // separator
        const std::size_t succ_begin = s.size();
        for (auto c : succs_[v]) s.push_back(colors[c]);
        std::sort(s.begin() + static_cast<std::ptrdiff_t>(succ_begin),
                  s.end());
      }
      std::vector<std::size_t> idx(n_);
      std::iota(idx.begin(), idx.end(), 0);
      std::sort(idx.begin(), idx.end(),
                [&](std::size_t a, std::size_t b) { return sig[a] < sig[b]; });
      Colors next(n_);
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        if (i > 0 && sig[idx[i]] != sig[idx[i - 1]]) ++c;
        next[idx[i]] = c;
      }
      const std::size_t next_cells = c + 1;
      colors = std::move(next);
      if (next_cells == cells) break;
      cells = next_cells;
    }
  }

  std::vector<std::uint32_t> encode(const Colors& colors,
                                    std::vector<std::size_t>& order) const {
    order.assign(n_, 0);
    for (std::size_t v = 0; v < n_; ++v) order[colors[v]] = v;
    std::vector<std::uint32_t> enc;
    enc.reserve(n_ * 3);
    for (std::size_t p = 0; p < n_; ++p) enc.push_back(label_rank_[order[p]]);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (std::size_t a = 0; a < n_; ++a)
      for (auto b : succs_[a]) edges.emplace_back(colors[a], colors[b]);
    std::sort(edges.begin(), edges.end());
    for (const auto& [a, b] : edges) {
      enc.push_back(a);
      enc.push_back(b);
    }
    return enc;
  }

  bool fixes_prefix(const std::vector<std::size_t>& perm,
                    const std::vector<std::size_t>& prefix) const {
    return std::all_of(prefix.begin(), prefix.end(),
                       [&](std::size_t v) { return perm[v] == v; });
  }

  // Orbit representatives under the stored automorphisms that fix `prefix`.
  std::vector<std::size_t> orbits(const std::vector<std::size_t>& prefix) const {
    std::vector<std::size_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& perm : automorphisms_) {
      if (!fixes_prefix(perm, prefix)) continue;
      for (std::size_t v = 0; v < n_; ++v) {
        const auto a = find(v), b = find(perm[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (std::size_t v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(Colors colors, std::vector<std::size_t>& prefix) {
    refine(colors);

    // Cell sizes; pick the first (lowest colour) non-singleton cell.
    std::vector<std::size_t> cell_size(n_, 0);
    for (auto c : colors) ++cell_size[c];
    std::uint32_t target = UINT32_MAX;
    for (std::uint32_t c = 0; c < n_; ++c) {
      if (cell_size[c] > 1) {
        target = c;
        break;
      }
    }

    if (target == UINT32_MAX) {
      std::vector<std::size_t> order;
      auto enc = encode(colors, order);
      if (!have_best_ || enc < best_enc_) {
        best_enc_ = std::move(enc);
        best_order_ = std::move(order);
        have_best_ = true;
      } else if (enc == best_enc_ && automorphisms_.size() < kMaxStored) {
        std::vector<std::size_t> perm(n_);
        for (std::size_t p = 0; p < n_; ++p) perm[best_order_[p]] = order[p];
        automorphisms_.push_back(std::move(perm));
      }
      return;
    }

    std::vector<std::size_t> explored;
    for (std::size_t w = 0; w < n_; ++w) {
      if (colors[w] != target) continue;
      const bool twin_seen =
          std::any_of(explored.begin(), explored.end(), [&](std::size_t e) {
            return twin_class_[e] == twin_class_[w];
          });
      if (twin_seen) continue;
      if (!explored.empty() && !automorphisms_.empty()) {
        const auto rep = orbits(prefix);
        const bool orbit_seen =
            std::any_of(explored.begin(), explored.end(),
                        [&](std::size_t e) { return rep[e] == rep[w]; });
        if (orbit_seen) continue;
      }

      Colors child(n_);
      for (std::size_t v = 0; v < n_; ++v)
        child[v] = 2 * colors[v] + (colors[v] == target && v != w ? 1 : 0);
      prefix.push_back(w);
      search(std::move(child), prefix);
      prefix.pop_back();
      explored.push_back(w);
    }
  }

  static constexpr std::size_t kMaxStored = 256;

  std::size_t n_;
  std::vector<std::uint32_t> label_rank_;
  std::vector<std::vector<std::size_t>> preds_;
  std::vector<std::vector<std::size_t>> succs_;
  std::vector<std::size_t> twin_class_;

  bool have_best_ = false;
  std::vector<std::uint32_t> best_enc_;
  std::vector<std::size_t> best_order_;
  std::vector<std::vector<std::size_t>> automorphisms_;
};

}  // namespace

std::string variant_key(const Trace& trace) {
  const auto order = Canonicalizer(trace).run();
  std::vector<std::size_t> pos(order.size());
  for (std::size_t p = 0; p < order.size(); ++p) pos[order[p]] = p;

  std::string key;
  for (auto v : order) {
    const auto& label = trace.instance(v).label;
    key += std::to_string(label.size());
    key += ':';
    key += label;
  }
  key += '|';
  std::vector<Edge> edges;
  for (const auto& [a, b] : trace.reduction().pairs())
    edges.emplace_back(pos[a], pos[b]);
  std::sort(edges.begin(), edges.end());
  bool first = true;
  for (const auto& [a, b] : edges) {
    if (!first) key += ',';
    first = false;
    key += std::to_string(a);
    key += '>';
    key += std::to_string(b);
  }
  return key;
}

}  // namespace poq

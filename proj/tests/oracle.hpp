#pragma once

// Brute-force reference implementations. Everything here is computed from
// the raw timestamps and the literal quantifier definitions, without using
// the Relation, reduction or satisfying-set code under test. Only meant for
// small traces.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "poq/log_model.hpp"
#include "poq/query.hpp"

namespace poq::oracle {

using Matrix = std::vector<std::vector<bool>>;

/// Pairwise timestamp comparison, straight from the precedence rule.
inline bool precedes(const ActivityInstance& a, const ActivityInstance& b) {
  if (b.start) return a.complete.millis < b.start->millis;
  return a.complete.millis < b.complete.millis;
}

inline Matrix order(std::span<const ActivityInstance> t) {
  Matrix m(t.size(), std::vector<bool>(t.size(), false));
  for (std::size_t a = 0; a < t.size(); ++a)
    for (std::size_t b = 0; b < t.size(); ++b) m[a][b] = precedes(t[a], t[b]);
  return m;
}

inline Matrix closure(Matrix m) {
  // Repeated squaring until nothing changes, deliberately naive.
  const std::size_t n = m.size();
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        for (std::size_t c = 0; c < n; ++c)
          if (m[a][b] && m[b][c] && !m[a][c]) {
            m[a][c] = true;
            changed = true;
          }
  }
  return m;
}

/// (a,b) of the order with no c strictly between them.
inline Matrix reduction(const Matrix& ord) {
  const std::size_t n = ord.size();
  Matrix r(n, std::vector<bool>(n, false));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!ord[a][b]) continue;
      bool between = false;
      for (std::size_t c = 0; c < n && !between; ++c)
        between = ord[a][c] && ord[c][b];
      r[a][b] = !between;
    }
  return r;
}

/// Closure of `r` equals `ord`, and dropping any single edge of `r` breaks
/// that.
inline bool is_minimal_generator(const Matrix& r, const Matrix& ord) {
  if (closure(r) != ord) return false;
  for (std::size_t a = 0; a < r.size(); ++a)
    for (std::size_t b = 0; b < r.size(); ++b) {
      if (!r[a][b]) continue;
      Matrix dropped = r;
      dropped[a][b] = false;
      if (closure(dropped) == ord) return false;
    }
  return true;
}

inline std::set<std::pair<std::size_t, std::size_t>> pairs(const Matrix& m) {
  std::set<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = 0; b < m.size(); ++b)
      if (m[a][b]) out.emplace(a, b);
  return out;
}

// ---------------------------------------------------------------------------
// Counting quantifiers over X = {0, ..., n-1}, enumerated literally.

using Pred = std::function<bool(std::size_t)>;

namespace detail {

// Searches tuples x_1..x_k; `distinct` demands pairwise different entries.
// `exclusive` additionally demands that no element outside the tuple
// satisfies P.
inline bool search(std::size_t n, std::size_t k, const Pred& p, bool distinct,
                   bool exclusive, std::vector<std::size_t>& tuple) {
  if (tuple.size() == k) {
    if (!exclusive) return true;
    for (std::size_t x = 0; x < n; ++x) {
      const bool in_tuple =
          std::find(tuple.begin(), tuple.end(), x) != tuple.end();
      if (!in_tuple && p(x)) return false;
    }
    return true;
  }
  for (std::size_t x = 0; x < n; ++x) {
    if (distinct && std::find(tuple.begin(), tuple.end(), x) != tuple.end())
      continue;
    if (!p(x)) continue;
    tuple.push_back(x);
    const bool found = search(n, k, p, distinct, exclusive, tuple);
    tuple.pop_back();
    if (found) return true;
  }
  return false;
}

}  // namespace detail

inline bool exists_exactly(std::size_t n, std::size_t k, const Pred& p) {
  std::vector<std::size_t> t;
  return detail::search(n, k, p, true, true, t);
}

inline bool exists_at_least(std::size_t n, std::size_t k, const Pred& p) {
  std::vector<std::size_t> t;
  return detail::search(n, k, p, true, false, t);
}

/// The tuple form of "at most k": a k-tuple whose entries satisfy P and
/// need not differ, with nothing outside it satisfying P. For k >= 1 this
/// cannot hold when no element satisfies P at all.
inline bool exists_at_most_tuple(std::size_t n, std::size_t k,
                                      const Pred& p) {
  std::vector<std::size_t> t;
  return detail::search(n, k, p, false, true, t);
}

/// "At most k distinct elements satisfy P". Same enumeration, plus the
/// empty case the tuple form leaves out.
inline bool exists_at_most(std::size_t n, std::size_t k, const Pred& p) {
  bool none = true;
  for (std::size_t x = 0; x < n && none; ++x) none = !p(x);
  return none || exists_at_most_tuple(n, k, p);
}

inline bool quantify(std::size_t n, const Cardinality& card, const Pred& p) {
  switch (card.op) {
    case CardOp::Eq: return exists_exactly(n, card.k, p);
    case CardOp::Geq: return exists_at_least(n, card.k, p);
    case CardOp::Leq: return exists_at_most(n, card.k, p);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Query semantics, clause by clause.

class Evaluator {
 public:
  explicit Evaluator(const Trace& trace)
      : inst_(trace.instances()),
        ord_(order(inst_)),
        red_(reduction(ord_)) {}

  bool eval(const Query& q) const {
    switch (q.kind()) {
      case Query::Kind::Leaf: return leaf(q.as_leaf());
      case Query::Kind::Not: return !eval(q.lhs());
      case Query::Kind::And: return eval(q.lhs()) && eval(q.rhs());
      case Query::Kind::Or: return eval(q.lhs()) || eval(q.rhs());
    }
    return false;
  }

  bool leaf(const Leaf& l) const {
    // Left-side sets are shorthand for AND/OR of single-label leaves that
    // carry the same cardinality.
    if (!l.left.is_single()) {
      const bool all = l.left.mode() == SetMode::All;
      for (const auto& label : l.left.labels()) {
        Leaf single = l;
        single.left = LabelSet::single(label);
        const bool v = leaf(single);
        if (all && !v) return false;
        if (!all && v) return true;
      }
      return all;
    }
    const std::string& l1 = l.left.label();
    const std::size_t n = inst_.size();

    if (is_unary(l.op)) {
      const Cardinality card = l.card.value_or(Cardinality{CardOp::Geq, 1});
      return quantify(n, card, [&](std::size_t a) {
        if (inst_[a].label != l1) return false;
        if (l.op == Operator::Start)
          for (std::size_t b = 0; b < n; ++b)
            if (ord_[b][a]) return false;
        if (l.op == Operator::End)
          for (std::size_t b = 0; b < n; ++b)
            if (ord_[a][b]) return false;
        return true;
      });
    }

    const LabelSet& right = *l.right;
    if (!l.card && right.mode() == SetMode::All) {
      // No clause of its own: the AND of single-label leaves.
      for (const auto& label : right.labels()) {
        Leaf single = l;
        single.right = LabelSet::single(label);
        if (!leaf(single)) return false;
      }
      return true;
    }

    const auto inner = [&](std::size_t a) { return witnessed(l.op, a, right); };
    if (!l.card) {
      for (std::size_t a = 0; a < n; ++a)
        if (inst_[a].label == l1 && !inner(a)) return false;
      return true;
    }
    return quantify(n, *l.card, [&](std::size_t a) {
      return inst_[a].label == l1 && inner(a);
    });
  }

 private:
  bool related(Operator op, std::size_t a, std::size_t w) const {
    switch (op) {
      case Operator::DirectlyFollowed: return red_[a][w];
      case Operator::EventuallyFollowed: return ord_[a][w];
      case Operator::Parallel: return !ord_[a][w] && !ord_[w][a];
      default: return false;
    }
  }

  bool witnessed(Operator op, std::size_t a, const LabelSet& right) const {
    const std::size_t n = inst_.size();
    const auto& labels = right.labels();
    if (right.mode() != SetMode::All) {
      for (std::size_t w = 0; w < n; ++w) {
        const bool label_ok = std::find(labels.begin(), labels.end(),
                                        inst_[w].label) != labels.end();
        if (label_ok && related(op, a, w)) return true;
      }
      return false;
    }
    // Tuple of witnesses, one per right label.
    std::vector<std::size_t> tuple;
    const std::function<bool()> rec = [&]() -> bool {
      if (tuple.size() == labels.size()) return true;
      const std::string& want = labels[tuple.size()];
      for (std::size_t w = 0; w < n; ++w) {
        if (inst_[w].label != want || !related(op, a, w)) continue;
        tuple.push_back(w);
        if (rec()) return true;
        tuple.pop_back();
      }
      return false;
    };
    return rec();
  }

  std::span<const ActivityInstance> inst_;
  Matrix ord_;
  Matrix red_;
};

inline bool eval(const Query& q, const Trace& t) { return Evaluator(t).eval(q); }

// ---------------------------------------------------------------------------
// Labeled-DAG isomorphism by backtracking over label-preserving bijections.

inline bool isomorphic(const Trace& x, const Trace& y) {
  if (x.size() != y.size()) return false;
  const Matrix rx = reduction(order(x.instances()));
  const Matrix ry = reduction(order(y.instances()));
  const std::size_t n = x.size();
  std::vector<std::size_t> map(n);
  std::vector<bool> used(n, false);
  const std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
    if (i == n) return true;
    for (std::size_t j = 0; j < n; ++j) {
      if (used[j] || x.instance(i).label != y.instance(j).label) continue;
      bool ok = true;
      for (std::size_t p = 0; p < i && ok; ++p) {
        ok = rx[p][i] == ry[map[p]][j] && rx[i][p] == ry[j][map[p]];
      }
      if (!ok) continue;
      used[j] = true;
      map[i] = j;
      if (rec(i + 1)) return true;
      used[j] = false;
    }
    return false;
  };
  return rec(0);
}

}  // namespace poq::oracle

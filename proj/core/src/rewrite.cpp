#include "poq/rewrite.hpp"

#include <algorithm>

#include "poq/random.hpp"

namespace poq {
namespace {

Query chain(std::vector<Query> parts, bool conjunctive) {
  Query acc = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) {
    acc = conjunctive ? Query::conjunction(acc, parts[i])
                      : Query::disjunction(acc, parts[i]);
  }
  return acc;
}

Query leaf_of(Operator op, LabelSet left, std::optional<LabelSet> right,
              std::optional<Cardinality> card) {
  return Query::leaf(Leaf{op, std::move(left), std::move(right), card});
}

}  // namespace

Query expand_leaf(const Leaf& leaf) {
  if (is_unary(leaf.op)) {
    const Cardinality card = leaf.card.value_or(Cardinality{CardOp::Geq, 1});
    if (leaf.left.is_single())
      return leaf_of(leaf.op, leaf.left, std::nullopt, card);
    std::vector<Query> parts;
    for (const auto& l : leaf.left.labels())
      parts.push_back(leaf_of(leaf.op, LabelSet::single(l), std::nullopt, card));
    return chain(std::move(parts), leaf.left.mode() == SetMode::All);
  }

  if (!leaf.left.is_single()) {
    std::vector<Query> parts;
    for (const auto& l : leaf.left.labels())
      parts.push_back(
          leaf_of(leaf.op, LabelSet::single(l), leaf.right, leaf.card));
    return chain(std::move(parts), leaf.left.mode() == SetMode::All);
  }

  if (leaf.right->mode() == SetMode::All && !leaf.card) {
    std::vector<Query> parts;
    for (const auto& r : leaf.right->labels())
      parts.push_back(leaf_of(leaf.op, leaf.left, LabelSet::single(r),
                              std::nullopt));
    return chain(std::move(parts), true);
  }
  return Query::leaf(leaf);
}

Query desugar(const Query& query) {
  switch (query.kind()) {
    case Query::Kind::Leaf: return expand_leaf(query.as_leaf());
    case Query::Kind::Not: return Query::negation(desugar(query.lhs()));
    case Query::Kind::And:
      return Query::conjunction(desugar(query.lhs()), desugar(query.rhs()));
    case Query::Kind::Or:
      return Query::disjunction(desugar(query.lhs()), desugar(query.rhs()));
  }
  return query;
}

namespace {

constexpr Operator kUnaryOps[] = {Operator::Contained, Operator::Start,
                                  Operator::End};
constexpr Operator kBinaryOps[] = {Operator::DirectlyFollowed,
                                   Operator::EventuallyFollowed,
                                   Operator::Parallel};

Operator any_unary(std::mt19937_64& rng) { return kUnaryOps[rnd::index(rng, 3)]; }
Operator any_binary(std::mt19937_64& rng) {
  return kBinaryOps[rnd::index(rng, 3)];
}

std::string any_label(std::mt19937_64& rng, const RuleSampleConfig& cfg) {
  return cfg.alphabet[rnd::index(rng, cfg.alphabet.size())];
}

// Distinct labels, between 1 and max_set_size of them.
std::vector<std::string> any_labels(std::mt19937_64& rng,
                                    const RuleSampleConfig& cfg) {
  std::vector<std::string> pool = cfg.alphabet;
  const std::size_t n =
      1 + rnd::index(rng, std::min(cfg.max_set_size, pool.size()));
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = rnd::index(rng, pool.size());
    out.push_back(pool[j]);
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
  }
  return out;
}

Cardinality any_card(std::mt19937_64& rng, const RuleSampleConfig& cfg) {
  static constexpr CardOp kOps[] = {CardOp::Eq, CardOp::Leq, CardOp::Geq};
  return {kOps[rnd::index(rng, 3)],
          static_cast<std::uint32_t>(rnd::index(rng, cfg.max_k + 1))};
}

std::vector<Query> singles(Operator op, const std::vector<std::string>& ls,
                           const std::optional<LabelSet>& right,
                           std::optional<Cardinality> card) {
  std::vector<Query> out;
  for (const auto& l : ls) out.push_back(leaf_of(op, LabelSet::single(l), right, card));
  return out;
}

using Pair = std::pair<Query, Query>;

// 'l'op ≡ 'l'op >= 1
Pair unary_default(std::mt19937_64& rng, const RuleSampleConfig& cfg) {
  const Operator op = any_unary(rng);
  const auto l = LabelSet::single(any_label(rng, cfg));
  return {leaf_of(op, l, std::nullopt, std::nullopt),
          leaf_of(op, l, std::nullopt, Cardinality{CardOp::Geq, 1})};
}

Pair unary_set(std::mt19937_64& rng, const RuleSampleConfig& cfg, SetMode mode,
               bool with_card) {
  const Operator op = any_unary(rng);
  const auto ls = any_labels(rng, cfg);
  std::optional<Cardinality> card;
  if (with_card) card = any_card(rng, cfg);
  return {leaf_of(op, LabelSet::of(mode, ls), std::nullopt, card),
          chain(singles(op, ls, std::nullopt, card), mode == SetMode::All)};
}

Pair binary_left_set(std::mt19937_64& rng, const RuleSampleConfig& cfg,
                     SetMode mode, bool with_card) {
  const Operator op = any_binary(rng);
  const auto ls = any_labels(rng, cfg);
  const auto right = LabelSet::single(any_label(rng, cfg));
  std::optional<Cardinality> card;
  if (with_card) card = any_card(rng, cfg);
  return {leaf_of(op, LabelSet::of(mode, ls), right, card),
          chain(singles(op, ls, right, card), mode == SetMode::All)};
}

Pair binary_right_all(std::mt19937_64& rng, const RuleSampleConfig& cfg) {
  const Operator op = any_binary(rng);
  const auto left = LabelSet::single(any_label(rng, cfg));
  const auto rs = any_labels(rng, cfg);
  std::vector<Query> parts;
  for (const auto& r : rs)
    parts.push_back(leaf_of(op, left, LabelSet::single(r), std::nullopt));
  return {leaf_of(op, left, LabelSet::of(SetMode::All, rs), std::nullopt),
          chain(std::move(parts), true)};
}

Pair singleton_right(std::mt19937_64& rng, const RuleSampleConfig& cfg,
                     SetMode mode, bool with_card) {
  const Operator op = any_binary(rng);
  const auto left = LabelSet::single(any_label(rng, cfg));
  const std::string r = any_label(rng, cfg);
  std::optional<Cardinality> card;
  if (with_card) card = any_card(rng, cfg);
  return {leaf_of(op, left, LabelSet::of(mode, {r}), card),
          leaf_of(op, left, LabelSet::single(r), card)};
}

Pair singleton_left(std::mt19937_64& rng, const RuleSampleConfig& cfg) {
  const bool unary = rnd::chance(rng, 0.5);
  const SetMode mode = rnd::chance(rng, 0.5) ? SetMode::Any : SetMode::All;
  const std::string l = any_label(rng, cfg);
  std::optional<Cardinality> card;
  if (rnd::chance(rng, 0.5)) card = any_card(rng, cfg);
  if (unary) {
    const Operator op = any_unary(rng);
    return {leaf_of(op, LabelSet::of(mode, {l}), std::nullopt, card),
            leaf_of(op, LabelSet::single(l), std::nullopt, card)};
  }
  const Operator op = any_binary(rng);
  const auto right = LabelSet::single(any_label(rng, cfg));
  return {leaf_of(op, LabelSet::of(mode, {l}), right, card),
          leaf_of(op, LabelSet::single(l), right, card)};
}

ActivityInstance at(std::string id, std::string label, std::int64_t start_s,
                    std::int64_t complete_s) {
  constexpr std::int64_t kBase = 1'622'505'600'000;  // 2021-06-01T00:00:00Z
  return {std::move(id), "witness", std::move(label),
          Timestamp{kBase + start_s * 1000},
          Timestamp{kBase + complete_s * 1000}};
}

}  // namespace

const std::vector<RewriteRule>& equivalence_suite() {
  static const std::vector<RewriteRule> rules = [] {
    std::vector<RewriteRule> r;
    auto add = [&](std::string name, std::string pattern, auto fn) {
      r.push_back({std::move(name), std::move(pattern), std::move(fn)});
    };
    add("unary-default-cardinality", "'l' U == 'l' U >= 1", unary_default);
    add("unary-any", "ANY{'l1',...,'ln'} U == ('l1' U) OR ... OR ('ln' U)",
        [](auto& g, const auto& c) { return unary_set(g, c, SetMode::Any, false); });
    add("unary-all", "ALL{'l1',...,'ln'} U == ('l1' U) AND ... AND ('ln' U)",
        [](auto& g, const auto& c) { return unary_set(g, c, SetMode::All, false); });
    add("unary-any-card",
        "ANY{'l1',...,'ln'} U ~k == ('l1' U ~k) OR ... OR ('ln' U ~k)",
        [](auto& g, const auto& c) { return unary_set(g, c, SetMode::Any, true); });
    add("unary-all-card",
        "ALL{'l1',...,'ln'} U ~k == ('l1' U ~k) AND ... AND ('ln' U ~k)",
        [](auto& g, const auto& c) { return unary_set(g, c, SetMode::All, true); });
    add("binary-left-any",
        "ANY{'l1',...,'ln-1'} B 'ln' == ('l1' B 'ln') OR ... OR ('ln-1' B 'ln')",
        [](auto& g, const auto& c) {
          return binary_left_set(g, c, SetMode::Any, false);
        });
    add("binary-left-all",
        "ALL{'l1',...,'ln-1'} B 'ln' == ('l1' B 'ln') AND ... AND ('ln-1' B 'ln')",
        [](auto& g, const auto& c) {
          return binary_left_set(g, c, SetMode::All, false);
        });
    add("binary-left-any-card",
        "ANY{'l1',...,'ln-1'} B 'ln' ~k == ('l1' B 'ln' ~k) OR ... OR "
        "('ln-1' B 'ln' ~k)",
        [](auto& g, const auto& c) {
          return binary_left_set(g, c, SetMode::Any, true);
        });
    add("binary-left-all-card",
        "ALL{'l1',...,'ln-1'} B 'ln' ~k == ('l1' B 'ln' ~k) AND ... AND "
        "('ln-1' B 'ln' ~k)",
        [](auto& g, const auto& c) {
          return binary_left_set(g, c, SetMode::All, true);
        });
    add("binary-right-all",
        "'l1' B ALL{'l2',...,'ln'} == ('l1' B 'l2') AND ... AND ('l1' B 'ln')",
        binary_right_all);
    add("singleton-right-any", "'l' B ANY{'m'} == 'l' B 'm'",
        [](auto& g, const auto& c) {
          return singleton_right(g, c, SetMode::Any, false);
        });
    add("singleton-right-any-card", "'l' B ANY{'m'} ~k == 'l' B 'm' ~k",
        [](auto& g, const auto& c) {
          return singleton_right(g, c, SetMode::Any, true);
        });
    add("singleton-right-all-card", "'l' B ALL{'m'} ~k == 'l' B 'm' ~k",
        [](auto& g, const auto& c) {
          return singleton_right(g, c, SetMode::All, true);
        });
    add("singleton-left-set", "ANY{'l'} X == ALL{'l'} X == 'l' X",
        singleton_left);
    return r;
  }();
  return rules;
}

std::vector<NonEquivalenceWitness> nonequivalence_witnesses() {
  std::vector<NonEquivalenceWitness> out;
  const auto single = [](const char* l) { return LabelSet::single(l); };
  const auto any_bc = LabelSet::of(SetMode::Any, {"B", "C"});
  const auto all_bc = LabelSet::of(SetMode::All, {"B", "C"});

  // One A overlaps only B, the other only C.
  {
    Trace t = Trace::build({at("1", "A", 0, 10), at("2", "B", 5, 15),
                            at("3", "A", 20, 30), at("4", "C", 25, 35)});
    const Operator op = Operator::Parallel;
    out.push_back({"right-any",
                   leaf_of(op, single("A"), any_bc, std::nullopt),
                   Query::disjunction(
                       leaf_of(op, single("A"), single("B"), std::nullopt),
                       leaf_of(op, single("A"), single("C"), std::nullopt)),
                   std::move(t), true, false});
  }
  // Four A: two parallel only to B, two parallel only to C.
  {
    Trace t = Trace::build({at("1", "A", 0, 10), at("2", "A", 0, 10),
                            at("3", "B", 5, 15), at("4", "A", 20, 30),
                            at("5", "A", 20, 30), at("6", "C", 25, 35)});
    const Operator op = Operator::Parallel;
    const Cardinality le2{CardOp::Leq, 2};
    out.push_back({"right-any-card",
                   leaf_of(op, single("A"), any_bc, le2),
                   Query::disjunction(leaf_of(op, single("A"), single("B"), le2),
                                      leaf_of(op, single("A"), single("C"), le2)),
                   std::move(t), false, true});
  }
  // A1 directly followed by B only, A2 directly followed by C only.
  {
    Trace t = Trace::build({at("1", "A", 0, 1), at("2", "B", 2, 3),
                            at("3", "A", 2, 3), at("4", "C", 5, 6)});
    const Operator op = Operator::DirectlyFollowed;
    const Cardinality ge1{CardOp::Geq, 1};
    out.push_back(
        {"right-all-card", leaf_of(op, single("A"), all_bc, ge1),
         Query::conjunction(leaf_of(op, single("A"), single("B"), ge1),
                            leaf_of(op, single("A"), single("C"), ge1)),
         std::move(t), false, true});
  }
  return out;
}

}  // namespace poq

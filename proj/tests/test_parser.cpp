#include <random>

#include <gtest/gtest.h>

#include "poq/bench.hpp"
#include "poq/parser.hpp"
#include "table2.hpp"

using namespace poq;

namespace {

Query leaf(Operator op, LabelSet left, std::optional<LabelSet> right = {},
           std::optional<Cardinality> card = {}) {
  return Query::leaf(Leaf{op, std::move(left), std::move(right), card});
}

LabelSet L(const char* s) { return LabelSet::single(s); }

ParseError parse_error(std::string_view text) {
  try {
    (void)parse(text);
  } catch (const ParseError& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return ParseError(ParseErrc::Empty, 0, 0, 0, "", "");
}

}  // namespace

TEST(Tokenize, LabelAndKeyword) {
  const auto toks = tokenize("'A' isC");
  ASSERT_EQ(toks.size(), 3u);
  EXPECT_EQ(toks[0].kind, TokenKind::Label);
  EXPECT_EQ(toks[0].text, "A");
  EXPECT_EQ(toks[1].kind, TokenKind::Operator);
  EXPECT_EQ(toks[2].kind, TokenKind::End);
}

TEST(Tokenize, EscapedQuote) {
  const auto toks = tokenize("'it''s' isE");
  EXPECT_EQ(toks[0].text, "it's");
  EXPECT_EQ(toks[0].begin, 0u);
  EXPECT_EQ(toks[0].end, 7u);
}

TEST(Tokenize, UnknownCharacter) {
  const auto e = parse_error("'A' @ 'B'");
  EXPECT_EQ(e.code(), ParseErrc::UnknownCharacter);
  EXPECT_EQ(e.offset(), 4u);
  EXPECT_EQ(e.column(), 5u);
}

TEST(Tokenize, UnterminatedLabel) {
  const auto e = parse_error("'A isC");
  EXPECT_EQ(e.code(), ParseErrc::UnterminatedLabel);
  EXPECT_EQ(e.offset(), 0u);
}

TEST(Tokenize, CardinalityBound) {
  EXPECT_NO_THROW(parse("'A' isC <= 1000000000"));
  EXPECT_EQ(parse_error("'A' isC <= 1000000001").code(),
            ParseErrc::CardinalityRange);
}

TEST(Tokenize, SpansIncreaseAndCoverNonWhitespace) {
  const std::string text = " ( 'A' isC>=2 AND\tNOT 'B' isEventuallyFollowed ANY{'C' ,'D'}) OR 'x''y' isP 'z' \xE2\x89\xA4 3 ";
  const auto toks = tokenize(text);
  std::vector<bool> covered(text.size(), false);
  std::size_t last_end = 0;
  for (const auto& t : toks) {
    if (t.kind == TokenKind::End) break;
    EXPECT_GE(t.begin, last_end);
    EXPECT_LT(t.begin, t.end);
    last_end = t.end;
    for (std::size_t i = t.begin; i < t.end; ++i) covered[i] = true;
  }
  for (std::size_t i = 0; i < text.size(); ++i)
    if (!std::isspace(static_cast<unsigned char>(text[i])))
      EXPECT_TRUE(covered[i]) << "byte " << i;
}

TEST(Parse, Fig2Tree) {
  const Query expected = Query::conjunction(
      Query::disjunction(
          leaf(Operator::Contained, L("DC"), {}, Cardinality{CardOp::Eq, 2}),
          Query::conjunction(
              leaf(Operator::Contained, L("DC"), {}, Cardinality{CardOp::Eq, 1}),
              leaf(Operator::DirectlyFollowed, L("CRR"), L("DC")))),
      Query::negation(leaf(Operator::DirectlyFollowed, L("DC"), L("DM"))));
  const Query q = parse(poq::test::kFig2Query);
  EXPECT_EQ(q, expected);
  EXPECT_EQ(q.leaf_count(), 4u);
  EXPECT_EQ(parse(format(q)), q);
}

TEST(Parse, RightAllSet) {
  EXPECT_EQ(parse("'A' isDF ALL{'B','C'}"),
            leaf(Operator::DirectlyFollowed, L("A"),
                 LabelSet::of(SetMode::All, {"B", "C"})));
}

TEST(Parse, SetsOnBothSidesAreAnArityError) {
  const auto e = parse_error("ALL{'A'} isDF ANY{'B'}");
  EXPECT_EQ(e.code(), ParseErrc::Arity);
  EXPECT_EQ(e.offset(), 14u);
}

TEST(Parse, LongAndShortNamesAgree) {
  const std::pair<const char*, const char*> pairs[] = {
      {"'A' isContained", "'A' isC"},
      {"'A' isStart", "'A' isS"},
      {"'A' isEnd", "'A' isE"},
      {"'A' isDirectlyFollowed 'B'", "'A' isDF 'B'"},
      {"'A' isEventuallyFollowed 'B'", "'A' isEF 'B'"},
      {"'A' isParallel 'B'", "'A' isP 'B'"},
  };
  for (auto [lng, shrt] : pairs) EXPECT_EQ(parse(lng), parse(shrt)) << lng;
}

TEST(Parse, CardinalitySpacingAndUnicode) {
  const Query q = parse("'A' isC >= 2");
  EXPECT_EQ(parse("'A' isC>=2"), q);
  EXPECT_EQ(parse("'A' isC \xE2\x89\xA5 2"), q);
  EXPECT_EQ(parse("'A' isC =2"), parse("'A' isC = 2"));
  EXPECT_EQ(parse("'A' isC \xE2\x89\xA4 2"), parse("'A' isC <= 2"));
}

TEST(Parse, PrecedenceNotAndOr) {
  const Query a = parse("'A' isC"), b = parse("'B' isC"), c = parse("'C' isC");
  EXPECT_EQ(parse("'A' isC OR 'B' isC AND 'C' isC"),
            Query::disjunction(a, Query::conjunction(b, c)));
  EXPECT_EQ(parse("NOT 'A' isC AND 'B' isC"),
            Query::conjunction(Query::negation(a), b));
  EXPECT_EQ(parse("'A' isC AND 'B' isC AND 'C' isC"),
            Query::conjunction(Query::conjunction(a, b), c));
  EXPECT_EQ(parse("('A' isC OR 'B' isC) AND 'C' isC"),
            Query::conjunction(Query::disjunction(a, b), c));
}

TEST(Parse, DuplicateSetLabelsCollapse) {
  EXPECT_EQ(parse("ANY{'A','B','A'} isC"), parse("ANY{'A','B'} isC"));
}

TEST(Parse, Errors) {
  const auto empty = parse_error("   ");
  EXPECT_EQ(empty.code(), ParseErrc::Empty);
  EXPECT_EQ(empty.message(), "empty query");

  const auto bad_op = parse_error("'A' isQ 'B'");
  EXPECT_EQ(bad_op.code(), ParseErrc::Syntax);
  EXPECT_EQ(bad_op.offset(), 4u);
  EXPECT_EQ(bad_op.line(), 1u);
  EXPECT_EQ(bad_op.column(), 5u);

  const auto missing_right = parse_error("'A' isDF");
  EXPECT_EQ(missing_right.offset(), 8u);

  const auto trailing = parse_error("'A' isC 'B'");
  EXPECT_EQ(trailing.offset(), 8u);

  const auto multiline = parse_error("'A' isC AND\n  'B' isX");
  EXPECT_EQ(multiline.line(), 2u);
  EXPECT_EQ(multiline.column(), 7u);
  EXPECT_EQ(multiline.offset(), 18u);

  EXPECT_EQ(parse_error("('A' isC").code(), ParseErrc::Syntax);
  EXPECT_EQ(parse_error("'A' isC >=").code(), ParseErrc::Syntax);
  EXPECT_EQ(parse_error("ANY{} isC").code(), ParseErrc::Syntax);
  EXPECT_EQ(parse_error("any{'A'} isC").code(), ParseErrc::Syntax);
}

TEST(Parse, ConstraintExamplesAllParse) {
  for (const auto& ex : poq::test::kConstraintExamples) {
    const Query q = parse(ex.query);
    EXPECT_EQ(q.leaf_count(), 1u) << ex.name;
    EXPECT_EQ(parse(format(q)), q) << ex.name;
  }
}

TEST(Format, Canonical) {
  EXPECT_EQ(format(parse("'A' isC")), "'A' isC");
  EXPECT_EQ(format(parse("'A' isC AND 'B' isS")), "('A' isC AND 'B' isS)");
  EXPECT_EQ(format(parse("NOT 'A' isC")), "NOT('A' isC)");
  EXPECT_EQ(format(parse("'it''s' isP ALL{'B','C'} \xE2\x89\xA4 2")),
            "'it''s' isP ALL{'B','C'} <= 2");
}

// parse(format(q)) == q for random trees up to depth 6, with labels that
// need escaping.
TEST(FormatProperty, RoundTripRandomTrees) {
  std::mt19937_64 rng(3);
  QueryGenConfig cfg;
  cfg.max_depth = 6;
  cfg.leaf_probability = 0.25;
  cfg.not_probability = 0.2;
  cfg.set_probability = 0.4;
  cfg.k_max = 1000;
  const std::vector<std::string> labels = {"A", "it's", "x y", "{}", "''", "\xC3\xA9t\xC3\xA9"};
  for (int i = 0; i < 2000; ++i) {
    const Query q = random_query(rng, cfg, labels);
    const std::string text = format(q);
    ASSERT_EQ(parse(text), q) << text;
    EXPECT_EQ(format(parse(text)), text);
  }
}

TEST(Highlight, Classes) {
  const auto spans = highlight("'A' isC");
  ASSERT_EQ(spans.size(), 2u);
  EXPECT_EQ(spans[0].cls, HighlightClass::Label);
  EXPECT_EQ(spans[1].cls, HighlightClass::Operator);
}

TEST(Highlight, UnterminatedLabelIsOneErrorSpan) {
  const auto spans = highlight("'A");
  ASSERT_EQ(spans.size(), 1u);
  EXPECT_EQ(spans[0].cls, HighlightClass::Error);
  EXPECT_EQ(spans[0].begin, 0u);
  EXPECT_EQ(spans[0].end, 2u);
}

TEST(Highlight, Fig2LabelsAreLabels) {
  const std::string text = poq::test::kFig2Query;
  std::vector<std::string> labels;
  for (const auto& s : highlight(text))
    if (s.cls == HighlightClass::Label)
      labels.push_back(text.substr(s.begin, s.end - s.begin));
  EXPECT_EQ(labels, (std::vector<std::string>{"'DC'", "'DC'", "'CRR'", "'DC'",
                                              "'DC'", "'DM'"}));
}

TEST(Highlight, NeverThrowsOnJunk) {
  std::mt19937_64 rng(9);
  const std::string alphabet = "'{}(),=<>ANYLisCDFEP 0123456789@\xE2\x89\xA5";
  for (int i = 0; i < 2000; ++i) {
    std::string s;
    const std::size_t n = rng() % 30;
    for (std::size_t j = 0; j < n; ++j) s += alphabet[rng() % alphabet.size()];
    std::vector<HighlightSpan> spans;
    ASSERT_NO_THROW(spans = highlight(s)) << s;
    std::size_t last = 0;
    for (const auto& sp : spans) {
      EXPECT_GE(sp.begin, last);
      EXPECT_LE(sp.end, s.size());
      last = sp.end;
    }
  }
}

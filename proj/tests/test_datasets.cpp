#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "ltlbench/datasets.hpp"
#include "ltlbench/semantics.hpp"
#include "ltlbench/syntax.hpp"

using namespace ltlbench;

namespace {

std::string data(const std::string& name) { return std::string(LTLBENCH_TEST_DATA_DIR) + "/" + name; }

}  // namespace

TEST(Loaders, FixtureCorporaLoad) {
  auto nl = load_nl2ltl(data("nl2ltl_fixture.jsonl"));
  EXPECT_EQ(nl.items.size(), 20u);
  EXPECT_TRUE(nl.report.rejected.empty());
  EXPECT_EQ(nl.items[0].id, "fx-01");
  EXPECT_EQ(nl.items[0].gt_formula, parse_ltl("F x1"));
  EXPECT_EQ(nl.items[2].domain_tag, std::optional<std::string>("security"));
  for (const auto& item : nl.items) EXPECT_LE(item.ap_map.size(), 3u);

  EXPECT_EQ(load_nl2ltl(data("nl2pltl_fixture.jsonl")).items.size(), 5u);
  EXPECT_EQ(load_nl2ltl(data("nl2ltl_exemplars.jsonl")).items.size(), 3u);
  auto wff = load_wff(data("wff_fixture.jsonl"));
  ASSERT_EQ(wff.items.size(), 8u);
  EXPECT_EQ(wff.items[0].ast_depth, std::optional<std::size_t>(4));
  EXPECT_FALSE(wff.items[2].well_formed);
  EXPECT_EQ(load_traces(data("trace_fixture.jsonl")).items.size(), 6u);
  auto ap = load_ap_extraction(data("ap_extraction_fixture.jsonl"));
  ASSERT_EQ(ap.items.size(), 5u);
  EXPECT_EQ(ap.items[0].gold_phrases[0], "Mary will join the team");
}

TEST(Loaders, MissingFileIsIoError) {
  EXPECT_THROW(load_nl2ltl(data("does_not_exist.jsonl")), IoError);
}

TEST(Loaders, EmptyInputWarns) {
  std::istringstream in("\n\n");
  auto r = read_nl2ltl(in, "empty");
  EXPECT_TRUE(r.items.empty());
  EXPECT_EQ(r.report.records, 0u);
  EXPECT_EQ(r.report.warnings.size(), 1u);
}

TEST(Loaders, UnmappedApIsInvariantViolation) {
  std::istringstream in(
      R"({"id":"a","nl":"x","ap_map":[{"var":"x1","phrase":"p"}],"gt_formula":"x1 U x2","tense":"future"})");
  try {
    read_nl2ltl(in, "t");
    FAIL() << "expected InvariantViolation";
  } catch (const InvariantViolation& e) {
    EXPECT_EQ(e.item_id(), "a");
  }
}

TEST(Loaders, SchemaErrors) {
  std::istringstream missing(R"({"id":"a","nl":"x","gt_formula":"x1","tense":"future"})");
  EXPECT_THROW(read_nl2ltl(missing, "t"), SchemaError);
  std::istringstream bad_json("{not json");
  EXPECT_THROW(read_nl2ltl(bad_json, "t"), SchemaError);
  std::istringstream bad_formula(
      R"({"id":"a","nl":"x","ap_map":[{"var":"x1","phrase":"p"}],"gt_formula":"x1 &","tense":"future"})");
  try {
    read_nl2ltl(bad_formula, "t");
    FAIL() << "expected SchemaError";
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.field(), "gt_formula");
  }
  std::istringstream bad_tense(
      R"({"id":"a","nl":"x","ap_map":[{"var":"x1","phrase":"p"}],"gt_formula":"x1","tense":"soon"})");
  EXPECT_THROW(read_nl2ltl(bad_tense, "t"), SchemaError);
}

TEST(Loaders, ItemInvariants) {
  std::istringstream past_in_future(
      R"({"id":"a","nl":"x","ap_map":[{"var":"x1","phrase":"p"}],"gt_formula":"O x1","tense":"future"})");
  EXPECT_THROW(read_nl2ltl(past_in_future, "t"), InvariantViolation);
  std::istringstream wrong_wff(R"({"id":"w","formula_text":"p &","label":"well_formed"})");
  EXPECT_THROW(read_wff(wrong_wff, "t"), InvariantViolation);
  std::istringstream wrong_depth(R"({"id":"w","formula_text":"X p","label":"well_formed","ast_depth":3})");
  EXPECT_THROW(read_wff(wrong_depth, "t"), InvariantViolation);
  std::istringstream wrong_trace(R"({"id":"t","formula":"G p","trace":"[{p=0}]","label":"satisfying"})");
  EXPECT_THROW(read_traces(wrong_trace, "t"), InvariantViolation);
  std::istringstream no_gold(R"({"id":"g","nl":"x","gold_phrases":[]})");
  EXPECT_THROW(read_ap_extraction(no_gold, "t"), InvariantViolation);
  std::istringstream dup(
      "{\"id\":\"w\",\"formula_text\":\"p\",\"label\":\"well_formed\"}\n"
      "{\"id\":\"w\",\"formula_text\":\"q\",\"label\":\"well_formed\"}\n");
  EXPECT_THROW(read_wff(dup, "t"), InvariantViolation);
}

TEST(Loaders, PartialLoadSkipsBadRecords) {
  std::istringstream in(
      "{\"id\":\"w1\",\"formula_text\":\"p\",\"label\":\"well_formed\"}\n"
      "{\"id\":\"w2\",\"formula_text\":\"p &\",\"label\":\"well_formed\"}\n"
      "garbage\n"
      "{\"id\":\"w4\",\"formula_text\":\"p &\",\"label\":\"malformed\"}\n");
  auto r = read_wff(in, "t", {.allow_partial = true});
  ASSERT_EQ(r.items.size(), 2u);
  EXPECT_EQ(r.items[1].id, "w4");
  ASSERT_EQ(r.report.rejected.size(), 2u);
  EXPECT_EQ(r.report.rejected[0].line, 2u);
  EXPECT_EQ(r.report.rejected[0].item_id, "w2");
  EXPECT_EQ(r.report.rejected[1].line, 3u);
  EXPECT_EQ(r.report.records, 4u);
}

TEST(Loaders, JsonlRoundtrip) {
  auto syn = generate_synthetic_nl2ltl(306, 7);
  std::stringstream buf;
  write_jsonl(buf, syn);
  auto back = read_nl2ltl(buf, "mem");
  ASSERT_EQ(back.items.size(), 306u);
  for (std::size_t i = 0; i < syn.size(); ++i) {
    EXPECT_EQ(back.items[i].id, syn[i].id);
    EXPECT_EQ(back.items[i].nl, syn[i].nl);
    EXPECT_EQ(back.items[i].ap_map, syn[i].ap_map);
    EXPECT_EQ(back.items[i].gt_formula, syn[i].gt_formula);
  }

  auto wff = load_wff(data("wff_fixture.jsonl")).items;
  std::stringstream wbuf;
  write_jsonl(wbuf, wff);
  auto wback = read_wff(wbuf, "mem").items;
  ASSERT_EQ(wback.size(), wff.size());
  for (std::size_t i = 0; i < wff.size(); ++i) {
    EXPECT_EQ(wback[i].formula_text, wff[i].formula_text);
    EXPECT_EQ(wback[i].well_formed, wff[i].well_formed);
    EXPECT_EQ(wback[i].ast_depth, wff[i].ast_depth);
  }

  auto traces = load_traces(data("trace_fixture.jsonl")).items;
  std::stringstream tbuf;
  write_jsonl(tbuf, traces);
  auto tback = read_traces(tbuf, "mem").items;
  ASSERT_EQ(tback.size(), traces.size());
  for (std::size_t i = 0; i < traces.size(); ++i) {
    EXPECT_EQ(tback[i].trace, traces[i].trace);
    EXPECT_EQ(tback[i].satisfying, traces[i].satisfying);
  }

  auto ap = load_ap_extraction(data("ap_extraction_fixture.jsonl")).items;
  std::stringstream abuf;
  write_jsonl(abuf, ap);
  auto aback = read_ap_extraction(abuf, "mem").items;
  ASSERT_EQ(aback.size(), ap.size());
  EXPECT_EQ(aback[0].gold_phrases, ap[0].gold_phrases);
  EXPECT_EQ(aback[0].gt_formula, ap[0].gt_formula);
}

TEST(Loaders, TsvEscapesAndHasHeader) {
  std::vector<ApExtractionItem> items = {{"a", "tab\there\nnewline", {"one"}, std::nullopt}};
  std::ostringstream out;
  write_tsv(out, items);
  std::string text = out.str();
  std::istringstream lines(text);
  std::string header, row, extra;
  std::getline(lines, header);
  std::getline(lines, row);
  EXPECT_FALSE(std::getline(lines, extra) && !extra.empty());
  EXPECT_EQ(header.substr(0, 3), "id\t");
  EXPECT_NE(row.find("tab\\there\\nnewline"), std::string::npos);
}

TEST(Sampler, DepthZeroIsLeaf) {
  SamplerConfig cfg;
  cfg.max_depth = 0;
  for (std::uint64_t s = 0; s < 50; ++s) {
    Formula f = sample_formula(cfg, s);
    EXPECT_EQ(f.depth(), 0u);
  }
}

TEST(Sampler, DeterministicAndHitsRequestedDepth) {
  SamplerConfig cfg;
  EXPECT_EQ(sample_formula(cfg, 99), sample_formula(cfg, 99));
  cfg.min_depth = cfg.max_depth = 5;
  for (std::uint64_t s = 0; s < 50; ++s) EXPECT_EQ(sample_formula(cfg, s).depth(), 5u);
}

TEST(Sampler, SpreadAndWellFormedness) {
  SamplerConfig cfg;
  std::mt19937_64 rng(42);
  std::set<std::size_t> depths;
  for (int i = 0; i < 500; ++i) {
    Formula f = sample_formula(cfg, rng);
    depths.insert(f.depth());
    EXPECT_TRUE(check_wff(print_ltl(f)).well_formed) << print_ltl(f);
  }
  EXPECT_GE(depths.size(), 6u);
}

TEST(Sampler, ZeroWeightExcludesOperator) {
  SamplerConfig cfg;
  cfg.weights[Op::Since] = 0;
  cfg.weights[Op::Until] = 0;
  for (std::uint64_t s = 0; s < 200; ++s) {
    Formula f = sample_formula(cfg, s);
    EXPECT_FALSE(contains_op(f, Op::Since));
    EXPECT_FALSE(contains_op(f, Op::Until));
  }
}

TEST(Sampler, GeometricDepthStaysInRangeAndFavoursShallow) {
  std::mt19937_64 rng(3);
  std::vector<int> hist(9, 0);
  for (int i = 0; i < 5000; ++i) {
    std::size_t d = sample_geometric_depth(rng);
    ASSERT_LE(d, 8u);
    ++hist[d];
  }
  EXPECT_GT(hist[0], hist[2]);
  EXPECT_GT(hist[2], hist[6]);
}

TEST(Mutation, ExampleMutations) {
  Formula s = parse_ltl("p S q");
  EXPECT_EQ(apply_mutation(s, Mutation::DeleteLeftOperand, 0), "(S q)");
  EXPECT_EQ(apply_mutation(s, Mutation::DeleteRightOperand, 0), "(p S)");
  EXPECT_EQ(apply_mutation(s, Mutation::DuplicateBinaryOperator, 0), "(p S S q)");
  Formula a = parse_ltl("p & q");
  EXPECT_EQ(mutation_sites(a, Mutation::DropParenthesis), 2u);
  EXPECT_EQ(apply_mutation(a, Mutation::DropParenthesis, 1), "(p & q");
  EXPECT_EQ(apply_mutation(a, Mutation::TruncateSuffix, 2), "(p ");
  EXPECT_EQ(mutation_sites(parse_ltl("p"), Mutation::DeleteLeftOperand), 0u);
}

TEST(Mutation, AtomCannotBeBroken) {
  EXPECT_THROW(mutate_malformed(parse_ltl("p"), 1), MutationExhausted);
}

TEST(Mutation, OutputsAlwaysFailWff) {
  SamplerConfig cfg;
  cfg.min_depth = 1;
  std::mt19937_64 rng(42);
  for (int i = 0; i < 500; ++i) {
    Formula f = sample_formula(cfg, rng);
    MalformedString m = mutate_malformed(f, rng());
    EXPECT_FALSE(check_wff(m.text).well_formed) << m.text;
  }
}

TEST(Mutation, WffCorpusIsBalancedAndLabelled) {
  auto corpus = generate_wff_corpus(101, 5);
  ASSERT_EQ(corpus.size(), 101u);
  std::size_t good = 0;
  std::set<std::string> ids;
  for (const auto& item : corpus) {
    good += item.well_formed;
    ids.insert(item.id);
    EXPECT_EQ(check_wff(item.formula_text).well_formed, item.well_formed) << item.formula_text;
    EXPECT_NO_THROW(validate(item));
  }
  EXPECT_EQ(good, 51u);
  EXPECT_EQ(ids.size(), 101u);
  EXPECT_TRUE(ids.count("wff-0001"));
  auto again = generate_wff_corpus(101, 5);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    EXPECT_EQ(again[i].formula_text, corpus[i].formula_text);
  }
}

TEST(TraceCorpus, BothSidesAndSkips) {
  Nl2LtlItem f{"f", "", {{"x1", "a"}}, parse_ltl("F x1"), Tense::Future, std::nullopt};
  Nl2LtlItem t{"t", "", {}, parse_ltl("true"), Tense::Future, std::nullopt};
  auto corpus = build_trace_corpus({f, t}, OracleConfig{}, 1);
  ASSERT_EQ(corpus.items.size(), 3u);
  std::set<std::string> ids;
  for (const auto& item : corpus.items) {
    ids.insert(item.id);
    EXPECT_EQ(satisfies(item.formula, item.trace), from_bool(item.satisfying));
  }
  EXPECT_EQ(ids, (std::set<std::string>{"f-sat", "f-viol", "t-sat"}));
  ASSERT_EQ(corpus.skipped.size(), 1u);
  EXPECT_EQ(corpus.skipped[0].item_id, "t");
  EXPECT_EQ(corpus.skipped[0].side, "violating");
}

TEST(TraceCorpus, SeedDeterminismAndFixtureLabels) {
  auto items = load_nl2ltl(data("nl2ltl_fixture.jsonl")).items;
  auto a = build_trace_corpus(items, OracleConfig{}, 11);
  auto b = build_trace_corpus(items, OracleConfig{}, 11);
  ASSERT_EQ(a.items.size(), b.items.size());
  for (std::size_t i = 0; i < a.items.size(); ++i) {
    EXPECT_EQ(a.items[i].id, b.items[i].id);
    EXPECT_EQ(a.items[i].trace, b.items[i].trace);
  }
  for (const auto& item : a.items) {
    EXPECT_EQ(satisfies(item.formula, item.trace), from_bool(item.satisfying)) << item.id;
    EXPECT_NO_THROW(validate(item));
  }
}

TEST(TraceCorpus, BudgetOverrunIsLogged) {
  Nl2LtlItem big{"big", "", {}, parse_ltl("a & b & c & d & e"), Tense::Future, std::nullopt};
  auto corpus = build_trace_corpus({big}, OracleConfig{}, 1);
  EXPECT_TRUE(corpus.items.empty());
  ASSERT_EQ(corpus.skipped.size(), 1u);
  EXPECT_EQ(corpus.skipped[0].side, "both");
}

TEST(Synthetic, ItemsAreValidAndDeterministic) {
  auto future = generate_synthetic_nl2ltl(306, 42);
  ASSERT_EQ(future.size(), 306u);
  std::size_t with_g = 0;
  for (const auto& item : future) {
    EXPECT_NO_THROW(validate(item)) << item.id;
    EXPECT_TRUE(is_future_only(item.gt_formula));
    EXPECT_LE(item.ap_map.size(), 3u);
    EXPECT_EQ(item.nl.find('{'), std::string::npos);
    with_g += contains_op(item.gt_formula, Op::Globally);
  }
  EXPECT_GT(with_g, 100u);
  EXPECT_EQ(future[0].id, "syn-0001");
  EXPECT_EQ(future[305].id, "syn-0306");
  auto again = generate_synthetic_nl2ltl(306, 42);
  for (std::size_t i = 0; i < future.size(); ++i) EXPECT_EQ(again[i].nl, future[i].nl);

  for (const auto& item : generate_synthetic_nl2ltl(40, 1, Tense::Past)) {
    EXPECT_NO_THROW(validate(item)) << item.id;
    EXPECT_EQ(item.tense, Tense::Past);
  }
}

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "ltlbench/promptgen.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {
namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in(s);
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

Nl2LtlItem sample_item() {
  return Nl2LtlItem{"t1", "Mary will always join the team.",
                    {{"x1", "Mary will join the team"}}, globally(ap("x1")), Tense::Future,
                    std::nullopt};
}

PromptSpec spec_for(Task task, Interface i, Strategy s = Strategy::ZeroShot) {
  PromptSpec spec;
  spec.task = task;
  spec.interface = i;
  spec.strategy = s;
  if (s == Strategy::FewShot) spec.exemplars = {{"a", "p"}, {"b", "q"}, {"c", "r"}};
  return spec;
}

struct FidelityCase {
  Interface interface;
  const char* reference;
};

TEST(TemplateFidelity, Nl2LtlMatchesReferenceExceptSlotLines) {
  TemplateStore store;
  for (auto c : {FidelityCase{Interface::Minimal, "nl2ltl_minimal.txt"},
                 FidelityCase{Interface::Detailed, "nl2ltl_detailed.txt"},
                 FidelityCase{Interface::CodeCompletion, "nl2ltl_code.txt"}}) {
    const std::string reference = read_file(std::string(LTLBENCH_TEST_DATA_DIR) + "/reference_prompts/" +
                                           c.reference);
    ASSERT_FALSE(reference.empty()) << c.reference;

    // Placeholders substituted back in: byte-identical.
    PromptInput placeholders;
    placeholders.nl = "{natural_language}";
    RenderedPrompt raw = build_prompt(spec_for(Task::Nl2Ltl, c.interface), PromptInput{
                                          placeholders.nl, std::vector<ApBinding>{}, {}, {}, {}},
                                      store);
    std::string with_marker = render_template(store.get(raw.template_id),
                                              {{"nl", "{natural_language}"},
                                               {"ap_mapping", "{atomic_propositions}"}});
    EXPECT_EQ(with_marker, reference) << c.reference;

    // Real slot values: only slot lines differ.
    RenderedPrompt real = build_prompt(spec_for(Task::Nl2Ltl, c.interface),
                                       prompt_input(sample_item()), store);
    auto a = split_lines(reference);
    auto b = split_lines(real.text);
    ASSERT_EQ(a.size(), b.size()) << c.reference;
    int differing = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == b[i]) continue;
      ++differing;
      EXPECT_TRUE(a[i].find("{natural_language}") != std::string::npos ||
                  a[i].find("{atomic_propositions}") != std::string::npos)
          << c.reference << " line " << i + 1;
    }
    EXPECT_EQ(differing, 2);
  }
}

TEST(BuildPrompt, Examples) {
  TemplateStore store;
  auto in = prompt_input(sample_item());
  std::string minimal = build_prompt(spec_for(Task::Nl2Ltl, Interface::Minimal), in, store).text;
  EXPECT_EQ(minimal.rfind("You are a Linear Temporal Logic (LTL) Parser.", 0), 0u);
  EXPECT_NE(minimal.find("(x1 -> \"Mary will join the team\")"), std::string::npos);
  EXPECT_NE(build_prompt(spec_for(Task::Nl2Ltl, Interface::Detailed), in, store)
                .text.find("Here is a BNF grammar"),
            std::string::npos);
  EXPECT_NE(build_prompt(spec_for(Task::Nl2Ltl, Interface::CodeCompletion), in, store)
                .text.find("formulaToFind = <your formula here>"),
            std::string::npos);
}

TEST(BuildPrompt, EveryValidCellRenders) {
  TemplateStore store;
  PromptInput in = prompt_input(sample_item());
  in.formula_text = "G p";
  in.trace = parse_trace("[{x1=1}]");
  for (int t = 0; t < 6; ++t) {
    for (int i = 0; i < 3; ++i) {
      for (int s = 0; s < 3; ++s) {
        PromptSpec spec = spec_for(static_cast<Task>(t), static_cast<Interface>(i),
                                   static_cast<Strategy>(s));
        if (!interface_supported(spec.task, spec.interface)) {
          EXPECT_THROW(build_prompt(spec, in, store), PromptError);
          continue;
        }
        RenderedPrompt p = build_prompt(spec, in, store);
        EXPECT_EQ(p.text.find("{{"), std::string::npos) << p.template_id;
        EXPECT_EQ(p.template_hash.size(), 64u);
        if (spec.strategy == Strategy::FewShot) {
          EXPECT_NE(p.text.find("Example 3:"), std::string::npos);
        }
        if (spec.strategy == Strategy::SelfRefine) {
          std::string turn2 = build_revision(p, "G p");
          EXPECT_NE(turn2.find("G p"), std::string::npos);
        }
      }
    }
  }
}

TEST(BuildPrompt, Errors) {
  TemplateStore store;
  try {
    build_prompt(spec_for(Task::Wff, Interface::CodeCompletion), PromptInput{}, store);
    FAIL();
  } catch (const PromptError& e) {
    EXPECT_EQ(e.kind(), PromptErrorKind::InvalidCombination);
  }
  PromptSpec few = spec_for(Task::Nl2Ltl, Interface::Minimal, Strategy::FewShot);
  few.exemplars.pop_back();
  EXPECT_THROW(few.validate(), PromptError);
  try {
    build_prompt(spec_for(Task::TraceChar, Interface::Minimal), PromptInput{}, store);
    FAIL();
  } catch (const PromptError& e) {
    EXPECT_EQ(e.kind(), PromptErrorKind::MissingSlot);
  }
  try {
    TemplateStore("/nonexistent").get("nl2ltl_minimal");
    FAIL();
  } catch (const PromptError& e) {
    EXPECT_EQ(e.kind(), PromptErrorKind::TemplateNotFound);
  }
  EXPECT_THROW(render_template("{{a}} {{b}}", {{"a", "1"}}), PromptError);
  EXPECT_THROW(build_revision(RenderedPrompt{}, "x"), PromptError);
}

TEST(BuildPrompt, ApFreeDropsMappingLine) {
  TemplateStore store;
  PromptSpec spec = spec_for(Task::Nl2Ltl, Interface::Detailed);
  spec.ap_free = true;
  PromptInput in;
  in.nl = "It rains.";
  std::string text = build_prompt(spec, in, store).text;
  EXPECT_EQ(text.find("Proposition Mapping:"), std::string::npos);
  EXPECT_NE(text.find("It rains."), std::string::npos);
}

TEST(ParseFormulaReply, Examples) {
  EXPECT_EQ(parse_formula_reply("G(p -> F q)", Interface::Minimal).formula,
            globally(implies(ap("p"), eventually(ap("q")))));
  EXPECT_EQ(parse_formula_reply("```\nformulaToFind = Always(AtomicProposition(\"p\"))\n```",
                                Interface::CodeCompletion)
                .formula,
            globally(ap("p")));
  FormulaReply vague =
      parse_formula_reply("The formula is probably G p, or maybe F p", Interface::Detailed);
  EXPECT_FALSE(vague.formula.has_value());
  EXPECT_FALSE(vague.failure.empty());
}

TEST(ParseFormulaReply, ExtractionRules) {
  EXPECT_EQ(parse_formula_reply("Let me think.\n\nFormula: `G p`", Interface::Minimal).formula,
            globally(ap("p")));
  EXPECT_EQ(parse_formula_reply("```ltl\np -> q\n```\n", Interface::Detailed).formula,
            implies(ap("p"), ap("q")));
  EXPECT_EQ(parse_formula_reply("Answer: F p.", Interface::Minimal).formula, eventually(ap("p")));
  EXPECT_EQ(parse_formula_reply("Here you go:\nformulaToFind = Next(AtomicProposition('a')) # done",
                                Interface::CodeCompletion)
                .formula,
            next(ap("a")));
  EXPECT_FALSE(parse_formula_reply("", Interface::Minimal).formula);
  EXPECT_FALSE(parse_formula_reply("formulaToFind = LAnd(", Interface::CodeCompletion).formula);
  EXPECT_FALSE(parse_formula_reply("formulaToFind = Foo(AtomicProposition('a'))",
                                   Interface::CodeCompletion)
                   .formula);
}

TEST(ParseDecisionReply, Examples) {
  EXPECT_EQ(parse_decision_reply("Yes"), Decision::Yes);
  EXPECT_EQ(parse_decision_reply("ill-formed"), Decision::No);
  EXPECT_EQ(parse_decision_reply("It depends."), Decision::Unparseable);
  EXPECT_EQ(parse_decision_reply("no, because the operator lacks an operand"), Decision::No);
  EXPECT_EQ(parse_decision_reply("The formula is well formed.\nYES"), Decision::Yes);
  EXPECT_EQ(parse_decision_reply("**Valid**"), Decision::Yes);
  EXPECT_EQ(parse_decision_reply(""), Decision::Unparseable);
}

TEST(ParseTraceReply, Examples) {
  TraceReply a = parse_trace_reply("satisfying: [{p=1}] violating: [{p=0}]", Interface::Minimal);
  ASSERT_TRUE(a.satisfying && a.violating);
  EXPECT_EQ(*a.satisfying, parse_trace("[{p=1}]"));
  EXPECT_EQ(*a.violating, parse_trace("[{p=0}]"));
  EXPECT_FALSE(a.partial);

  TraceReply b = parse_trace_reply("[[(\"p\", True)], [(\"p\", False)]]", Interface::CodeCompletion);
  ASSERT_TRUE(b.satisfying && b.violating);
  EXPECT_EQ(*b.satisfying, *a.satisfying);
  EXPECT_EQ(*b.violating, *a.violating);

  TraceReply c = parse_trace_reply("satisfying: [{p=1}]", Interface::Detailed);
  EXPECT_TRUE(c.satisfying.has_value());
  EXPECT_FALSE(c.violating.has_value());
  EXPECT_TRUE(c.partial);
  EXPECT_FALSE(c.failure.empty());
}

TEST(ParseTraceReply, CodeAssignmentsAndGarbage) {
  TraceReply r = parse_trace_reply(
      "satisfyingTrace = [[('p', True), ('q', False)], [('p', False), ('q', True)]]\n"
      "violatingTrace = [[('p', False), ('q', False)]]",
      Interface::CodeCompletion);
  ASSERT_TRUE(r.satisfying && r.violating);
  EXPECT_EQ(r.satisfying->size(), 2u);
  EXPECT_EQ(*r.violating, parse_trace("[{p=0, q=0}]"));
  EXPECT_EQ(reference_tracegen_answer(Interface::CodeCompletion, *r.satisfying, *r.violating),
            "satisfyingTrace = [[(\"p\", True), (\"q\", False)], [(\"p\", False), (\"q\", True)]]\n"
            "violatingTrace = [[(\"p\", False), (\"q\", False)]]");

  for (const char* junk : {"", "[[[[[[", "satisfying: [{p=7}]", "[(\"p\", True)", "no idea",
                           "[[(1, True)], [(\"p\", False)]]"}) {
    for (Interface i : {Interface::Minimal, Interface::CodeCompletion}) {
      TraceReply j = parse_trace_reply(junk, i);
      EXPECT_FALSE(j.satisfying.has_value() && j.violating.has_value()) << junk;
    }
  }
}

TEST(ParsePhraseReply, Forms) {
  PhraseReply r = parse_phrase_reply(
      "Here are the propositions:\nx1 -> \"Mary will join the team\"\n"
      "(x2 -> \"Mary will play the flute\"),\n- x3: it rains");
  ASSERT_EQ(r.bindings.size(), 3u);
  EXPECT_EQ(r.bindings[0], (ApBinding{"x1", "Mary will join the team"}));
  EXPECT_EQ(r.bindings[1].phrase, "Mary will play the flute");
  EXPECT_EQ(r.bindings[2], (ApBinding{"x3", "it rains"}));
  EXPECT_FALSE(parse_phrase_reply("nothing to see").failure.empty());
}

TEST(ReplyParsers, TotalOnArbitraryBytes) {
  std::mt19937_64 rng(5);
  const std::string alphabet = "()[]{}\"'=:,;->&|!XFGUSYOH pqTrueFalse01\n`formulaToFind";
  for (int i = 0; i < 3000; ++i) {
    std::string s(rng() % 60, ' ');
    for (char& c : s) c = alphabet[rng() % alphabet.size()];
    for (Interface iface : {Interface::Minimal, Interface::CodeCompletion}) {
      EXPECT_NO_THROW(parse_formula_reply(s, iface));
      EXPECT_NO_THROW(parse_trace_reply(s, iface));
    }
    EXPECT_NO_THROW(parse_decision_reply(s));
    EXPECT_NO_THROW(parse_phrase_reply(s));
  }
}

TEST(ReplyParsers, ReferenceAnswersRoundtrip) {
  Nl2LtlItem item = sample_item();
  item.gt_formula = parse_ltl("G(x1 -> F (x2 U x1))");
  for (Interface i : {Interface::Minimal, Interface::Detailed, Interface::CodeCompletion}) {
    FormulaReply r = parse_formula_reply(reference_answer(i, item), i);
    ASSERT_TRUE(r.formula) << r.failure;
    EXPECT_EQ(print_ltl(*r.formula), print_ltl(item.gt_formula));
  }
  ApExtractionItem ap_item{"a", "nl", {"Mary will join the team", "it rains"}, std::nullopt};
  PhraseReply phrases = parse_phrase_reply(reference_answer(ap_item));
  ASSERT_EQ(phrases.bindings.size(), 2u);
  EXPECT_EQ(phrases.bindings[1].phrase, "it rains");
}

}  // namespace
}  // namespace ltlbench

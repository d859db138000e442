#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ltlbench/datasets.hpp"
#include "ltlbench/harness.hpp"
#include "ltlbench/semantics.hpp"
#include "ltlbench/smv_export.hpp"
#include "ltlbench/syntax.hpp"

using namespace ltlbench;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitBudget = 3;

struct OracleFlags {
  std::vector<std::string> vocab;
  std::size_t min_length = 1;
  std::size_t max_length = 5;
  std::size_t max_vocab = 4;
  std::uint64_t budget = 2'000'000;
  std::uint64_t seed = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--vocab", vocab, "Propositions to enumerate over (default: those of the formulas)")
        ->delimiter(',');
    cmd->add_option("--min-length", min_length, "Shortest trace length")->capture_default_str();
    cmd->add_option("--max-length", max_length, "Longest trace length")->capture_default_str();
    cmd->add_option("--max-vocab", max_vocab, "Largest vocabulary the oracle accepts")->capture_default_str();
    cmd->add_option("--budget", budget, "Maximum number of traces per query")->capture_default_str();
    cmd->add_option("--seed", seed, "Enumeration order seed")->capture_default_str();
  }

  OracleConfig config() const {
    OracleConfig c;
    for (const auto& v : vocab) c.vocabulary = vocabulary_union(c.vocabulary, APVocabulary{v});
    c.min_trace_length = min_length;
    c.max_trace_length = max_length;
    c.max_vocab_size = max_vocab;
    c.trace_budget = budget;
    c.rng_seed = seed;
    return c;
  }
};

std::ostream& open_out(const std::string& path, std::ofstream& file) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot write " + path);
  return file;
}

int print_verdict(const OracleVerdict& v) {
  std::cout << to_string(v.kind);
  if (v.reason) std::cout << " (" << to_string(*v.reason) << ")";
  std::cout << '\n';
  if (v.witness) {
    std::cout << "witness: " << print_trace(*v.witness) << '\n'
              << "lhs: " << to_string(v.lhs) << '\n'
              << "rhs: " << to_string(v.rhs) << '\n';
  }
  if (v.undefined_conclusion) std::cout << "note: conclusion is Undefined on the witness\n";
  if (v.reason == NotMeaningfulReason::BudgetExceeded) return kExitBudget;
  if (v.reason == NotMeaningfulReason::VocabularyMismatch) return kExitData;
  return 0;
}

Formula read_formula(const std::string& text, bool code) {
  return code ? parse_constructor_form(text) : parse_ltl(text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LTL toolkit and NL-to-LTL evaluation harness"};
  app.require_subcommand(1);
  app.set_version_flag("--version", LTLBENCH_VERSION);

  int exit_code = 0;

  // parse
  std::string parse_text;
  bool parse_code = false;
  auto* parse = app.add_subcommand("parse", "Parse a formula and print its canonical forms");
  parse->add_option("formula", parse_text, "Formula text")->required();
  parse->add_flag("--code", parse_code, "Input is in constructor form");
  parse->callback([&] {
    Formula f = read_formula(parse_text, parse_code);
    std::cout << "infix: " << print_ltl(f) << '\n'
              << "code: " << print_constructor_form(f) << '\n'
              << "depth: " << f.depth() << '\n';
  });

  // wff
  std::string wff_text;
  auto* wff = app.add_subcommand("wff", "Check well-formedness; exit 0 either way");
  wff->add_option("formula", wff_text, "Formula text")->required();
  wff->callback([&] {
    WffVerdict v = check_wff(wff_text);
    std::cout << (v.well_formed ? "well_formed" : "malformed");
    if (!v.well_formed) std::cout << ": " << v.reason;
    std::cout << '\n';
  });

  // eval
  std::string eval_formula, eval_trace;
  std::ptrdiff_t eval_pos = -1;
  auto* eval = app.add_subcommand("eval", "Evaluate a formula over a finite trace");
  eval->add_option("formula", eval_formula, "Formula text")->required();
  eval->add_option("trace", eval_trace, "Trace, e.g. \"[{p=1}; {p=0}]\"")->required();
  eval->add_option("--pos", eval_pos, "Position (default: every position)");
  eval->callback([&] {
    Formula f = parse_ltl(eval_formula);
    Trace t = parse_trace(eval_trace);
    if (eval_pos >= 0) {
      std::cout << to_string(eval_at(f, t, eval_pos)) << '\n';
      return;
    }
    auto all = eval_positions(f, t);
    for (std::size_t i = 0; i < all.size(); ++i) std::cout << i << ": " << to_string(all[i]) << '\n';
  });

  // equiv / entail
  std::string lhs, rhs;
  OracleFlags equiv_flags, entail_flags;
  auto* equiv = app.add_subcommand("equiv", "Bounded equivalence check");
  equiv->add_option("f", lhs, "First formula")->required();
  equiv->add_option("g", rhs, "Second formula")->required();
  equiv_flags.add_to(equiv);
  equiv->callback([&] {
    exit_code = print_verdict(check_equivalence(parse_ltl(lhs), parse_ltl(rhs), equiv_flags.config()));
  });
  auto* entail = app.add_subcommand("entail", "Bounded entailment check: premise => conclusion");
  entail->add_option("premise", lhs, "Premise")->required();
  entail->add_option("conclusion", rhs, "Conclusion")->required();
  entail_flags.add_to(entail);
  entail->callback([&] {
    exit_code = print_verdict(check_entailment(parse_ltl(lhs), parse_ltl(rhs), entail_flags.config()));
  });

  // traces
  std::string traces_formula;
  OracleFlags traces_flags;
  auto* traces = app.add_subcommand("traces", "Find a satisfying and a violating trace");
  traces->add_option("formula", traces_formula, "Formula text")->required();
  traces_flags.add_to(traces);
  traces->callback([&] {
    TraceSearch s = find_traces(parse_ltl(traces_formula), traces_flags.config());
    const auto& sat = s.pair.satisfying();
    const auto& viol = s.pair.violating();
    std::cout << "satisfying: " << (sat ? print_trace(*sat) : "none") << '\n'
              << "violating: " << (viol ? print_trace(*viol) : "none") << '\n'
              << "traces checked: " << s.traces_checked << '\n';
  });

  // smv
  std::string smv_kind = "equiv", smv_f, smv_other;
  OracleFlags smv_flags;
  auto* smv = app.add_subcommand("smv", "Export a query as NuSMV input");
  smv->add_option("kind", smv_kind, "equiv, entail or trace")
      ->required()
      ->check(CLI::IsMember({"equiv", "entail", "trace"}));
  smv->add_option("formula", smv_f, "Formula")->required();
  smv->add_option("other", smv_other, "Second formula, or a trace for kind=trace")->required();
  smv_flags.add_to(smv);
  smv->callback([&] {
    Formula f = parse_ltl(smv_f);
    OracleConfig cfg = smv_flags.config();
    if (smv_kind == "trace") {
      std::cout << export_checker_query(CheckerQueryKind::TraceCheck, f, parse_trace(smv_other), cfg);
    } else {
      auto kind = smv_kind == "equiv" ? CheckerQueryKind::Equivalence : CheckerQueryKind::Entailment;
      std::cout << export_checker_query(kind, f, parse_ltl(smv_other), cfg);
    }
  });

  // gen
  auto* gen = app.add_subcommand("gen", "Generate corpora");
  gen->require_subcommand(1);
  std::size_t gen_count = 10;
  std::uint64_t gen_seed = 42;
  std::string gen_out;
  std::vector<std::string> gen_vocab = {"p", "q", "r"};
  std::size_t gen_min_depth = 0, gen_max_depth = 8;
  auto sampler_config = [&] {
    SamplerConfig cfg;
    cfg.vocabulary = APVocabulary{};
    for (const auto& v : gen_vocab) cfg.vocabulary = vocabulary_union(cfg.vocabulary, APVocabulary{v});
    cfg.min_depth = gen_min_depth;
    cfg.max_depth = gen_max_depth;
    return cfg;
  };
  auto common = [&](CLI::App* cmd, bool sampler) {
    cmd->add_option("--count", gen_count, "Number of items")->capture_default_str();
    cmd->add_option("--seed", gen_seed, "Seed")->capture_default_str();
    cmd->add_option("--out", gen_out, "Output file (default: stdout)");
    if (sampler) {
      cmd->add_option("--vocab", gen_vocab, "Propositions")->delimiter(',');
      cmd->add_option("--min-depth", gen_min_depth, "Smallest depth")->capture_default_str();
      cmd->add_option("--max-depth", gen_max_depth, "Largest depth")->capture_default_str();
    }
  };

  auto* gen_formulas = gen->add_subcommand("formulas", "Sample well-formed formulas, one per line");
  common(gen_formulas, true);
  gen_formulas->callback([&] {
    std::ofstream file;
    std::ostream& out = open_out(gen_out, file);
    std::mt19937_64 rng(gen_seed);
    SamplerConfig cfg = sampler_config();
    for (std::size_t i = 0; i < gen_count; ++i) out << print_ltl(sample_formula(cfg, rng)) << '\n';
  });

  auto* gen_malformed = gen->add_subcommand("malformed", "Malformed strings with their mutation, tab-separated");
  common(gen_malformed, true);
  gen_malformed->callback([&] {
    std::ofstream file;
    std::ostream& out = open_out(gen_out, file);
    std::mt19937_64 rng(gen_seed);
    SamplerConfig cfg = sampler_config();
    cfg.min_depth = std::max<std::size_t>(1, cfg.min_depth);
    for (std::size_t i = 0; i < gen_count; ++i) {
      MalformedString m = mutate_malformed(sample_formula(cfg, rng), rng());
      out << m.text << '\t' << to_string(m.mutation) << '\n';
    }
  });

  auto* gen_wff = gen->add_subcommand("wff", "Balanced well-formed/malformed corpus (JSONL)");
  common(gen_wff, true);
  gen_wff->callback([&] {
    std::ofstream file;
    std::ostream& out = open_out(gen_out, file);
    write_jsonl(out, generate_wff_corpus(gen_count, gen_seed, sampler_config()));
  });

  std::string corpus_input;
  OracleFlags corpus_flags;
  auto* gen_traces = gen->add_subcommand("trace-corpus", "Satisfying/violating traces for an nl2ltl dataset");
  gen_traces->add_option("--dataset", corpus_input, "nl2ltl dataset (JSONL)")->required();
  gen_traces->add_option("--out", gen_out, "Output file (default: stdout)");
  gen_traces->add_option("--corpus-seed", gen_seed, "Shuffle seed")->capture_default_str();
  corpus_flags.add_to(gen_traces);
  gen_traces->callback([&] {
    auto items = load_nl2ltl(corpus_input).items;
    TraceCorpus corpus = build_trace_corpus(items, corpus_flags.config(), gen_seed);
    for (const auto& s : corpus.skipped) {
      std::cerr << "skipped " << s.item_id << " (" << s.side << "): " << s.reason << '\n';
    }
    std::ofstream file;
    write_jsonl(open_out(gen_out, file), corpus.items);
  });

  std::string tense = "future";
  auto* gen_syn = gen->add_subcommand("synthetic-nl2ltl", "Template-built nl2ltl dataset (JSONL)");
  common(gen_syn, false);
  gen_syn->add_option("--tense", tense, "future or past")->check(CLI::IsMember({"future", "past"}));
  gen_syn->callback([&] {
    std::ofstream file;
    write_jsonl(open_out(gen_out, file),
                generate_synthetic_nl2ltl(gen_count, gen_seed, tense == "past" ? Tense::Past : Tense::Future));
  });

  // run / replay / report
  std::string config_path, out_dir;
  bool run_replay = false;
  auto run_and_report = [&](bool replay) {
    RunConfig cfg = load_run_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    RunResult result = run_experiments(cfg, replay);
    ReportSummary s = emit_report(result.records, result.manifest, cfg.output_dir);
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
    std::size_t nm = 0;
    for (const auto& r : result.records) nm += r.nm_reason.has_value();
    std::cout << result.records.size() << " records (" << nm << " N/M) written to "
              << cfg.output_dir.string() << '\n';
  };
  auto* run = app.add_subcommand("run", "Run the experiments of a config file and write a report");
  run->add_option("--config", config_path, "Config file (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Report directory (overrides the config)");
  run->add_flag("--replay", run_replay, "Answer only from the transcript cache");
  run->callback([&] { run_and_report(run_replay); });

  auto* replay = app.add_subcommand("replay", "Same as run --replay");
  replay->add_option("--config", config_path, "Config file (JSON)")->required()->check(CLI::ExistingFile);
  replay->add_option("--out", out_dir, "Report directory (overrides the config)");
  replay->callback([&] { run_and_report(true); });

  std::string records_path, manifest_path;
  auto* report = app.add_subcommand("report", "Re-score stored records into a report");
  report->add_option("--records", records_path, "records.jsonl")->required()->check(CLI::ExistingFile);
  report->add_option("--manifest", manifest_path, "manifest.json")->required()->check(CLI::ExistingFile);
  report->add_option("--out", out_dir, "Report directory")->required();
  report->callback([&] {
    std::ifstream in(manifest_path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    RunManifest m = manifest_from_json(buf.str());
    ReportSummary s = emit_report(read_records(records_path), m, out_dir);
    for (const auto& w : s.warnings) std::cerr << "warning: " << w << '\n';
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const PromptError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const BudgetExceeded& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const SyntaxError& e) {
    std::cerr << "syntax error at offset " << e.offset() << ": " << e.what() << '\n';
    return kExitData;
  } catch (const SchemaError& e) {
    std::cerr << "data error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitData;
  }
  return exit_code;
}

#include "ltlbench/harness.hpp"

#include "json_io.hpp"

#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "ltlbench/errors.hpp"
#include "ltlbench/hash.hpp"
#include "ltlbench/semantics.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {

using nlohmann::json;

std::size_t item_count(Task task, const TaskData& data) {
  switch (task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl:
    case Task::TraceGen: return data.nl2ltl.size();
    case Task::Wff: return data.wff.size();
    case Task::TraceChar: return data.traces.size();
    case Task::Nl2Pl: return data.ap_extraction.size();
  }
  return 0;
}

AlignmentOverrides load_alignment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open alignment file " + path.string());
  AlignmentOverrides out;
  try {
    json j = json::parse(in);
    for (const auto& [item, mapping] : j.items()) {
      for (const auto& [from, to] : mapping.items()) out[item][from] = to.get<std::string>();
    }
  } catch (const json::exception& e) {
    throw ConfigError("alignment file " + path.string() + ": " + e.what());
  }
  return out;
}

namespace {

struct Job {
  std::string item_id;
  RenderedPrompt prompt;
  ExpectedAnswer expected;
};

std::optional<TraceSearch> search_traces(const Formula& f, const OracleConfig& cfg) {
  try {
    return find_traces(f, cfg);
  } catch (const BudgetExceeded&) {
    return std::nullopt;
  }
}

std::string approach_name(const RunOptions& opts) {
  std::string out(to_string(opts.strategy));
  if (opts.ap_free) out += "+ap-free";
  return out;
}

APVocabulary mapped_vocabulary(const Nl2LtlItem& item) {
  APVocabulary v;
  for (const auto& b : item.ap_map) v = vocabulary_union(v, APVocabulary{b.var});
  return v;
}

std::vector<Job> build_jobs(const RunOptions& opts, const TaskData& data, const TemplateStore& store) {
  PromptSpec spec;
  spec.task = opts.task;
  spec.interface = opts.interface;
  spec.strategy = opts.strategy;
  spec.exemplars = opts.exemplars;
  spec.ap_free = opts.ap_free;

  std::vector<Job> jobs;
  auto add = [&](const std::string& id, const PromptInput& input, ExpectedAnswer expected) {
    expected.task = opts.task;
    expected.interface = opts.interface;
    jobs.push_back({id, build_prompt(spec, input, store), std::move(expected)});
  };
  switch (opts.task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl:
      for (const auto& item : data.nl2ltl) {
        ExpectedAnswer e;
        e.formula = item.gt_formula;
        add(item.id, prompt_input(item), e);
      }
      break;
    case Task::TraceGen:
      for (const auto& item : data.nl2ltl) {
        ExpectedAnswer e;
        e.formula = item.gt_formula;
        if (auto found = search_traces(item.gt_formula, opts.oracle)) {
          e.satisfying = found->pair.satisfying();
          e.violating = found->pair.violating();
        }
        add(item.id, prompt_input(item), e);
      }
      break;
    case Task::Wff:
      for (const auto& item : data.wff) {
        ExpectedAnswer e;
        e.decision = item.well_formed;
        add(item.id, prompt_input(item), e);
      }
      break;
    case Task::TraceChar:
      for (const auto& item : data.traces) {
        ExpectedAnswer e;
        e.decision = item.satisfying;
        add(item.id, prompt_input(item), e);
      }
      break;
    case Task::Nl2Pl:
      for (const auto& item : data.ap_extraction) {
        ExpectedAnswer e;
        e.phrases = item.gold_phrases;
        add(item.id, prompt_input(item), e);
      }
      break;
  }
  return jobs;
}

void mark_nm(EvalRecord& r, std::string reason) { r.nm_reason = std::move(reason); }

void score_translation(EvalRecord& r, const Nl2LtlItem& item, const std::string& reply,
                       const RunOptions& opts) {
  FormulaReply fr = parse_formula_reply(reply, opts.interface);
  if (!fr.formula) {
    r.parse_failure = fr.failure;
    mark_nm(r, "ParseFailure");
    return;
  }
  r.syntactically_valid = true;
  Formula pred = *fr.formula;
  if (auto it = opts.alignment.find(item.id); it != opts.alignment.end()) {
    pred = rename_aps(pred, it->second);
  }
  r.parsed = print_ltl(pred);
  OracleConfig cfg = opts.oracle;
  cfg.vocabulary = mapped_vocabulary(item);
  Comparison c = compare_formulas(item.gt_formula, pred, cfg);
  r.equivalence = std::string(to_string(c.equivalence.kind));
  r.soundness = std::string(to_string(c.soundness.kind));
  r.completeness = std::string(to_string(c.completeness.kind));
  if (c.equivalence.witness) r.witness = print_trace(*c.equivalence.witness);
  if (c.equivalence.not_meaningful()) {
    mark_nm(r, c.equivalence.reason ? std::string(to_string(*c.equivalence.reason)) : "NotMeaningful");
  }
}

void score_decision(EvalRecord& r, bool expected, const std::string& reply) {
  r.expected_positive = expected;
  Decision d = parse_decision_reply(reply);
  if (d == Decision::Unparseable) {
    r.parse_failure = "no yes/no answer found";
    mark_nm(r, "ParseFailure");
    return;
  }
  r.syntactically_valid = true;
  r.predicted_positive = d == Decision::Yes;
  r.parsed = std::string(to_string(d));
}

void score_tracegen(EvalRecord& r, const Formula& f, const std::string& reply, Interface interface) {
  TraceReply tr = parse_trace_reply(reply, interface);
  if (!tr.parsed()) {
    r.parse_failure = tr.failure;
    mark_nm(r, "ParseFailure");
    return;
  }
  r.syntactically_valid = true;
  r.parse_failure = tr.failure;
  std::string parsed;
  if (tr.satisfying) parsed += "satisfying: " + print_trace(*tr.satisfying);
  if (tr.violating) parsed += std::string(parsed.empty() ? "" : "\n") + "violating: " + print_trace(*tr.violating);
  r.parsed = parsed;
  r.satisfying_ok = tr.satisfying && satisfies(f, *tr.satisfying) == Outcome::DefinedTrue;
  r.violating_ok = tr.violating && satisfies(f, *tr.violating) == Outcome::DefinedFalse;
}

void score_phrases(EvalRecord& r, const ApExtractionItem& item, const std::string& reply,
                   double threshold) {
  PhraseReply pr = parse_phrase_reply(reply);
  if (pr.bindings.empty()) {
    r.parse_failure = pr.failure;
    mark_nm(r, "ParseFailure");
    return;
  }
  r.syntactically_valid = true;
  std::vector<std::string> phrases;
  std::string parsed;
  for (const auto& b : pr.bindings) {
    phrases.push_back(b.phrase);
    parsed += b.var + " -> \"" + b.phrase + "\"\n";
  }
  r.parsed = parsed;
  PropMatchResult m = match_prop_sets(phrases, item.gold_phrases, threshold);
  r.precision = m.precision;
  r.recall = m.recall;
  r.f1 = m.f1;
  r.jaccard = phrase_jaccard(phrases, item.gold_phrases);
}

void process(const RunOptions& opts, const TaskData& data, const Job& job, std::size_t index,
             ModelClient& client, EvalRecord& r) {
  r.run_id = opts.run_id;
  r.model = client.model_id();
  r.task = std::string(to_string(opts.task));
  r.approach = approach_name(opts);
  r.interface = std::string(to_string(opts.interface));
  r.item_id = job.item_id;
  r.prompt_hash = sha256_hex(job.prompt.text);

  Conversation conv{{"user", job.prompt.text}};
  try {
    Reply first = client.complete(conv);
    r.replies.push_back(first.text);
    r.latency_ms = first.latency_ms;
    r.started_at = first.started_at;
    r.finished_at = first.finished_at;
    if (opts.strategy == Strategy::SelfRefine) {
      conv.push_back({"assistant", first.text});
      conv.push_back({"user", build_revision(job.prompt, first.text)});
      Reply second = client.complete(conv);
      r.replies.push_back(second.text);
      r.latency_ms += second.latency_ms;
      r.finished_at = second.finished_at;
    }
  } catch (const ClientError& e) {
    r.error = e.what();
    mark_nm(r, std::string(to_string(e.kind())));
    return;
  }

  const std::string& reply = r.replies.back();
  switch (opts.task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl: score_translation(r, data.nl2ltl[index], reply, opts); break;
    case Task::TraceGen:
      score_tracegen(r, data.nl2ltl[index].gt_formula, reply, opts.interface);
      break;
    case Task::Wff: score_decision(r, data.wff[index].well_formed, reply); break;
    case Task::TraceChar: score_decision(r, data.traces[index].satisfying, reply); break;
    case Task::Nl2Pl: score_phrases(r, data.ap_extraction[index], reply, opts.match_threshold); break;
  }
}

}  // namespace

std::vector<Exemplar> exemplars_from(Task task, Interface interface, const TaskData& data,
                                     const OracleConfig& oracle) {
  std::vector<Exemplar> out;
  auto push = [&](const PromptInput& in, std::string answer) {
    if (out.size() < 3) out.push_back({exemplar_input(task, interface, in), std::move(answer)});
  };
  switch (task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl:
      for (const auto& item : data.nl2ltl) push(prompt_input(item), reference_answer(interface, item));
      break;
    case Task::TraceGen:
      for (const auto& item : data.nl2ltl) {
        auto found = search_traces(item.gt_formula, oracle);
        if (!found || !found->pair.satisfying() || !found->pair.violating()) continue;
        push(prompt_input(item), reference_tracegen_answer(interface, *found->pair.satisfying(),
                                                           *found->pair.violating()));
      }
      break;
    case Task::Wff:
      for (const auto& item : data.wff) push(prompt_input(item), reference_answer(item));
      break;
    case Task::TraceChar:
      for (const auto& item : data.traces) push(prompt_input(item), reference_answer(item));
      break;
    case Task::Nl2Pl:
      for (const auto& item : data.ap_extraction) push(prompt_input(item), reference_answer(item));
      break;
  }
  if (out.size() < 3) {
    throw ConfigError("few-shot needs 3 usable exemplars, found " + std::to_string(out.size()));
  }
  return out;
}

std::vector<EvalRecord> run_task(const RunOptions& opts, const TaskData& data, ModelClient& client,
                                 const TemplateStore& store) {
  std::vector<Job> jobs;
  try {
    jobs = build_jobs(opts, data, store);
  } catch (const PromptError& e) {
    throw ConfigError(std::string("cannot build prompts: ") + e.what());
  }
  std::map<std::string, ExpectedAnswer> key;
  for (const auto& job : jobs) key.insert_or_assign(job.prompt.text, job.expected);
  client.prepare(key);

  std::vector<EvalRecord> records(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        process(opts, data, jobs[i], i, client, records[i]);
      } catch (const std::exception& e) {
        records[i].error = e.what();
        records[i].nm_reason = "InternalError";
      }
    }
  };
  std::size_t n_threads = std::max<std::size_t>(1, std::min(opts.concurrency, jobs.size()));
  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return records;
}

// ---- records on disk ----

namespace {

template <typename T>
void put(json& j, const char* key, const std::optional<T>& v) {
  if (v) j[key] = *v;
}

template <typename T>
void get(const json& j, const char* key, std::optional<T>& v) {
  if (j.contains(key) && !j.at(key).is_null()) v = j.at(key).get<T>();
}

}  // namespace

std::string record_to_json(const EvalRecord& r) {
  json j = {{"run_id", r.run_id},
            {"model", r.model},
            {"task", r.task},
            {"approach", r.approach},
            {"interface", r.interface},
            {"item_id", r.item_id},
            {"prompt_hash", r.prompt_hash},
            {"replies", r.replies},
            {"syntactically_valid", r.syntactically_valid},
            {"latency_ms", r.latency_ms},
            {"started_at", r.started_at},
            {"finished_at", r.finished_at}};
  put(j, "parsed", r.parsed);
  if (!r.parse_failure.empty()) j["parse_failure"] = r.parse_failure;
  put(j, "equivalence", r.equivalence);
  put(j, "soundness", r.soundness);
  put(j, "completeness", r.completeness);
  put(j, "witness", r.witness);
  put(j, "expected_positive", r.expected_positive);
  put(j, "predicted_positive", r.predicted_positive);
  put(j, "satisfying_ok", r.satisfying_ok);
  put(j, "violating_ok", r.violating_ok);
  put(j, "precision", r.precision);
  put(j, "recall", r.recall);
  put(j, "f1", r.f1);
  put(j, "jaccard", r.jaccard);
  put(j, "nm_reason", r.nm_reason);
  if (!r.error.empty()) j["error"] = r.error;
  return j.dump();
}

EvalRecord record_from_json(const std::string& line) {
  json j = json::parse(line);
  EvalRecord r;
  r.run_id = j.at("run_id").get<std::string>();
  r.model = j.at("model").get<std::string>();
  r.task = j.at("task").get<std::string>();
  r.approach = j.at("approach").get<std::string>();
  r.interface = j.at("interface").get<std::string>();
  r.item_id = j.at("item_id").get<std::string>();
  r.prompt_hash = j.value("prompt_hash", "");
  r.replies = j.value("replies", std::vector<std::string>{});
  r.syntactically_valid = j.value("syntactically_valid", false);
  r.latency_ms = j.value("latency_ms", 0.0);
  r.started_at = j.value("started_at", "");
  r.finished_at = j.value("finished_at", "");
  get(j, "parsed", r.parsed);
  r.parse_failure = j.value("parse_failure", "");
  get(j, "equivalence", r.equivalence);
  get(j, "soundness", r.soundness);
  get(j, "completeness", r.completeness);
  get(j, "witness", r.witness);
  get(j, "expected_positive", r.expected_positive);
  get(j, "predicted_positive", r.predicted_positive);
  get(j, "satisfying_ok", r.satisfying_ok);
  get(j, "violating_ok", r.violating_ok);
  get(j, "precision", r.precision);
  get(j, "recall", r.recall);
  get(j, "f1", r.f1);
  get(j, "jaccard", r.jaccard);
  get(j, "nm_reason", r.nm_reason);
  r.error = j.value("error", "");
  return r;
}

void write_records(const std::filesystem::path& path, const std::vector<EvalRecord>& records) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  for (const auto& r : records) out << record_to_json(r) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

std::vector<EvalRecord> read_records(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::vector<EvalRecord> out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(line));
    } catch (const json::exception& e) {
      throw SchemaError(n, "", std::string("bad record: ") + e.what());
    }
  }
  return out;
}

// ---- manifest ----

namespace detail {

json oracle_json(const OracleConfig& c) {
  return {{"vocabulary", c.vocabulary.names()},
          {"min_trace_length", c.min_trace_length},
          {"max_trace_length", c.max_trace_length},
          {"max_vocab_size", c.max_vocab_size},
          {"trace_budget", c.trace_budget},
          {"rng_seed", c.rng_seed}};
}

OracleConfig oracle_from_json(const json& j) {
  OracleConfig c;
  for (const auto& n : j.value("vocabulary", std::vector<std::string>{})) {
    c.vocabulary = vocabulary_union(c.vocabulary, APVocabulary{n});
  }
  c.min_trace_length = j.value("min_trace_length", c.min_trace_length);
  c.max_trace_length = j.value("max_trace_length", c.max_trace_length);
  c.max_vocab_size = j.value("max_vocab_size", c.max_vocab_size);
  c.trace_budget = j.value("trace_budget", c.trace_budget);
  c.rng_seed = j.value("rng_seed", c.rng_seed);
  return c;
}

json model_json(const ModelClientSpec& m) {
  return {{"name", m.name},
          {"kind", m.kind},
          {"endpoint", m.endpoint},
          {"model", m.model},
          {"credential_env", m.credential_env},
          {"temperature", m.temperature},
          {"max_tokens", m.max_tokens},
          {"timeout_ms", m.timeout.count()},
          {"retries", m.retry.attempts},
          {"backoff_ms", m.retry.backoff.count()},
          {"requests_per_minute", m.requests_per_minute},
          {"persona", m.persona}};
}

ModelClientSpec model_from_json(const json& j) {
  ModelClientSpec m;
  m.name = j.at("name").get<std::string>();
  m.kind = j.value("kind", m.kind);
  m.endpoint = j.value("endpoint", "");
  m.model = j.value("model", "");
  m.credential_env = j.value("credential_env", "");
  m.temperature = j.value("temperature", m.temperature);
  m.max_tokens = j.value("max_tokens", m.max_tokens);
  m.timeout = std::chrono::milliseconds(j.value("timeout_ms", m.timeout.count()));
  m.retry.attempts = j.value("retries", m.retry.attempts);
  m.retry.backoff = std::chrono::milliseconds(j.value("backoff_ms", m.retry.backoff.count()));
  m.requests_per_minute = j.value("requests_per_minute", m.requests_per_minute);
  m.persona = j.value("persona", m.persona);
  return m;
}

}  // namespace detail

using detail::model_from_json;
using detail::model_json;
using detail::oracle_from_json;
using detail::oracle_json;

std::string manifest_to_json(const RunManifest& m) {
  json datasets = json::array();
  for (const auto& d : m.datasets) {
    datasets.push_back(
        {{"id", d.id}, {"kind", d.kind}, {"path", d.path}, {"sha256", d.sha256}, {"items", d.items}});
  }
  json models = json::array();
  for (const auto& s : m.models) models.push_back(model_json(s));
  json j = {{"run_id", m.run_id},
            {"datasets", datasets},
            {"templates", m.templates},
            {"models", models},
            {"oracle", oracle_json(m.oracle)},
            {"seeds", m.seeds},
            {"concurrency", m.concurrency},
            {"match_threshold", m.match_threshold},
            {"code_version", m.code_version}};
  return j.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
  json j = json::parse(text);
  RunManifest m;
  m.run_id = j.at("run_id").get<std::string>();
  for (const auto& d : j.at("datasets")) {
    m.datasets.push_back({d.at("id").get<std::string>(), d.at("kind").get<std::string>(),
                          d.at("path").get<std::string>(), d.at("sha256").get<std::string>(),
                          d.at("items").get<std::size_t>()});
  }
  m.templates = j.at("templates").get<std::map<std::string, std::string>>();
  for (const auto& s : j.at("models")) m.models.push_back(model_from_json(s));
  m.oracle = oracle_from_json(j.at("oracle"));
  m.seeds = j.at("seeds").get<std::map<std::string, std::uint64_t>>();
  m.concurrency = j.value("concurrency", m.concurrency);
  m.match_threshold = j.value("match_threshold", m.match_threshold);
  m.code_version = j.value("code_version", "");
  return m;
}

}  // namespace ltlbench

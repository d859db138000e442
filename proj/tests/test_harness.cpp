#include <gtest/gtest.h>

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"
#include "json.hpp"
#include "ltlbench/datasets.hpp"
#include "ltlbench/harness.hpp"
#include "ltlbench/syntax.hpp"

using namespace ltlbench;
namespace fs = std::filesystem;

namespace {

std::string data(const std::string& name) { return std::string(LTLBENCH_TEST_DATA_DIR) + "/" + name; }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / ("ltlbench_harness_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class ScriptedClient : public ModelClient {
 public:
  explicit ScriptedClient(std::function<std::string(const Conversation&)> fn) : fn_(std::move(fn)) {}
  std::string model_id() const override { return "scripted"; }
  Reply complete(const Conversation& c) override { return {fn_(c), 0, "", ""}; }

 private:
  std::function<std::string(const Conversation&)> fn_;
};

TaskData fixture_nl2ltl() {
  TaskData d;
  d.nl2ltl = load_nl2ltl(data("nl2ltl_fixture.jsonl")).items;
  return d;
}

SemanticRates rates(const std::vector<EvalRecord>& records) {
  std::vector<SemanticOutcome> o;
  for (const auto& r : records) o.push_back(semantic_outcome(r));
  return aggregate_semantic(o);
}

RunOptions options(Task task, Interface interface, Strategy strategy = Strategy::ZeroShot) {
  RunOptions o;
  o.task = task;
  o.interface = interface;
  o.strategy = strategy;
  return o;
}

constexpr Interface kInterfaces[] = {Interface::Minimal, Interface::Detailed, Interface::CodeCompletion};

}  // namespace

TEST(MockClient, PersonaReplies) {
  ExpectedAnswer a;
  a.task = Task::Nl2Ltl;
  a.formula = parse_ltl("G p");
  EXPECT_EQ(parse_ltl(MockClient("m", Persona::OperatorSwap).respond(a)), parse_ltl("F p"));
  EXPECT_EQ(parse_ltl(MockClient("m", Persona::Compliant).respond(a)), parse_ltl("G p"));
  for (Interface i : kInterfaces) {
    a.interface = i;
    EXPECT_FALSE(parse_formula_reply(MockClient("m", Persona::Malformed).respond(a), i).formula);
    EXPECT_FALSE(parse_formula_reply(MockClient("m", Persona::Noncompliant).respond(a), i).formula);
  }
  a.formula = parse_ltl("p");
  a.interface = Interface::Minimal;
  EXPECT_FALSE(parse_formula_reply(MockClient("m", Persona::Malformed).respond(a), a.interface).formula);
}

TEST(MockClient, UnknownPromptIsCacheMiss) {
  MockClient mock("m", Persona::Compliant);
  try {
    mock.complete({{"user", "hello"}});
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::CacheMiss);
  }
}

TEST(Transcript, CachingThenReplay) {
  fs::path dir = scratch("transcript");
  fs::path transcript = dir / "t.jsonl";
  int calls = 0;
  {
    CachingClient cache(std::make_unique<ScriptedClient>([&](const Conversation& c) {
                          ++calls;
                          return "reply to " + c.back().content;
                        }),
                        transcript);
    EXPECT_EQ(cache.complete({{"user", "a"}}).text, "reply to a");
    EXPECT_EQ(cache.complete({{"user", "a"}}).text, "reply to a");
    EXPECT_EQ(cache.complete({{"user", "b"}}).text, "reply to b");
  }
  EXPECT_EQ(calls, 2);
  EXPECT_EQ(read_transcript(transcript).size(), 2u);

  CachingClient resumed(std::make_unique<ScriptedClient>([&](const Conversation&) -> std::string {
                          ADD_FAILURE() << "cached request reached the model";
                          return "";
                        }),
                        transcript);
  EXPECT_EQ(resumed.complete({{"user", "b"}}).text, "reply to b");

  ReplayClient replay("scripted", transcript);
  EXPECT_EQ(replay.complete({{"user", "a"}}).text, "reply to a");
  try {
    replay.complete({{"user", "c"}});
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::CacheMiss);
  }
  ReplayClient other_model("someone-else", transcript);
  EXPECT_THROW(other_model.complete({{"user", "a"}}), ClientError);
}

TEST(RunTask, CompliantMockIsFullyEquivalent) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  for (Interface i : kInterfaces) {
    MockClient mock("mock", Persona::Compliant);
    auto records = run_task(options(Task::Nl2Ltl, i), d, mock, store);
    ASSERT_EQ(records.size(), 20u);
    SemanticRates s = rates(records);
    EXPECT_EQ(s.tally.equivalent, 20u) << to_string(i);
    EXPECT_EQ(s.tally.not_meaningful, 0u);
    EXPECT_DOUBLE_EQ(s.syntactic_correctness, 1.0);
    for (std::size_t k = 0; k < records.size(); ++k) EXPECT_EQ(records[k].item_id, d.nl2ltl[k].id);
  }
}

TEST(RunTask, MalformedAndNoncompliantAreNotMeaningful) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  for (Persona p : {Persona::Malformed, Persona::Noncompliant}) {
    for (Interface i : kInterfaces) {
      MockClient mock("mock", p);
      auto records = run_task(options(Task::Nl2Ltl, i), d, mock, store);
      SemanticRates s = rates(records);
      EXPECT_EQ(s.tally.not_meaningful, 20u);
      EXPECT_DOUBLE_EQ(s.syntactic_correctness, 0.0);
      for (const auto& r : records) EXPECT_EQ(r.nm_reason, std::optional<std::string>("ParseFailure"));
    }
  }
}

TEST(RunTask, OperatorSwapIsSoundButIncomplete) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  MockClient mock("mock", Persona::OperatorSwap);
  auto records = run_task(options(Task::Nl2Ltl, Interface::Minimal), d, mock, store);
  for (std::size_t k = 0; k < records.size(); ++k) {
    const auto& r = records[k];
    ASSERT_FALSE(r.nm_reason) << r.item_id;
    if (!contains_op(d.nl2ltl[k].gt_formula, Op::Globally)) {
      EXPECT_EQ(r.equivalence, std::optional<std::string>("Holds")) << r.item_id;
    }
    if (d.nl2ltl[k].gt_formula == parse_ltl("G x1")) {
      EXPECT_EQ(r.equivalence, std::optional<std::string>("Fails"));
      EXPECT_EQ(r.soundness, std::optional<std::string>("Holds"));
      EXPECT_EQ(r.completeness, std::optional<std::string>("Fails"));
      ASSERT_TRUE(r.witness);
    }
  }
  SemanticRates s = rates(records);
  EXPECT_GT(s.soundness, s.completeness);
}

TEST(RunTask, SelfRefineAndFewShot) {
  TaskData d = fixture_nl2ltl();
  TaskData ex;
  ex.nl2ltl = load_nl2ltl(data("nl2ltl_exemplars.jsonl")).items;
  TemplateStore store;
  {
    MockClient mock("mock", Persona::Compliant);
    auto records = run_task(options(Task::Nl2Ltl, Interface::Detailed, Strategy::SelfRefine), d, mock, store);
    for (const auto& r : records) {
      EXPECT_EQ(r.replies.size(), 2u);
      EXPECT_EQ(r.approach, "self-refine");
    }
    EXPECT_EQ(rates(records).tally.equivalent, 20u);
  }
  for (Interface i : kInterfaces) {
    RunOptions o = options(Task::Nl2Ltl, i, Strategy::FewShot);
    o.exemplars = exemplars_from(Task::Nl2Ltl, i, ex, o.oracle);
    ASSERT_EQ(o.exemplars.size(), 3u);
    MockClient mock("mock", Persona::Compliant);
    auto records = run_task(o, d, mock, store);
    EXPECT_EQ(rates(records).tally.equivalent, 20u);
  }
  RunOptions bad = options(Task::Nl2Ltl, Interface::Minimal, Strategy::FewShot);
  MockClient mock("mock", Persona::Compliant);
  EXPECT_THROW(run_task(bad, d, mock, store), ConfigError);
}

TEST(RunTask, ConcurrencyKeepsDatasetOrder) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  MockClient a("mock", Persona::OperatorSwap);
  MockClient b("mock", Persona::OperatorSwap);
  RunOptions one = options(Task::Nl2Ltl, Interface::CodeCompletion);
  one.concurrency = 1;
  RunOptions four = one;
  four.concurrency = 4;
  EXPECT_EQ(run_task(one, d, a, store), run_task(four, d, b, store));
}

TEST(RunTask, ApFreeNeedsAlignment) {
  TaskData d;
  d.nl2ltl = {load_nl2ltl(data("nl2ltl_fixture.jsonl")).items[0]};  // F x1
  TemplateStore store;
  ScriptedClient client([](const Conversation& c) {
    EXPECT_EQ(c.front().content.find("x1 ->"), std::string::npos);
    return std::string("F alarm");
  });
  RunOptions o = options(Task::Nl2Ltl, Interface::Minimal);
  o.ap_free = true;
  auto unaligned = run_task(o, d, client, store);
  EXPECT_EQ(unaligned[0].nm_reason, std::optional<std::string>("VocabularyMismatch"));
  EXPECT_EQ(unaligned[0].approach, "zero-shot+ap-free");
  o.alignment["fx-01"]["alarm"] = "x1";
  auto aligned = run_task(o, d, client, store);
  EXPECT_FALSE(aligned[0].nm_reason);
  EXPECT_EQ(aligned[0].equivalence, std::optional<std::string>("Holds"));
}

TEST(RunTask, ClientErrorsBecomeNotMeaningful) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  class Failing : public ModelClient {
   public:
    std::string model_id() const override { return "down"; }
    Reply complete(const Conversation&) override {
      throw ClientError(ClientErrorKind::Timeout, "timed out");
    }
  } client;
  auto records = run_task(options(Task::Nl2Ltl, Interface::Minimal), d, client, store);
  ASSERT_EQ(records.size(), 20u);
  for (const auto& r : records) {
    EXPECT_EQ(r.nm_reason, std::optional<std::string>("Timeout"));
    EXPECT_EQ(r.error, "timed out");
  }
}

TEST(RunTask, OtherTasksWithMocks) {
  TemplateStore store;
  TaskData wff;
  wff.wff = load_wff(data("wff_fixture.jsonl")).items;
  TaskData traces;
  traces.traces = load_traces(data("trace_fixture.jsonl")).items;
  TaskData ap;
  ap.ap_extraction = load_ap_extraction(data("ap_extraction_fixture.jsonl")).items;
  TaskData nl = fixture_nl2ltl();

  for (Interface i : {Interface::Minimal, Interface::Detailed}) {
    MockClient good("mock", Persona::Compliant);
    for (const auto& r : run_task(options(Task::Wff, i), wff, good, store)) {
      ASSERT_TRUE(r.predicted_positive);
      EXPECT_EQ(r.predicted_positive, r.expected_positive) << r.item_id;
    }
    MockClient bad("mock", Persona::Malformed);
    for (const auto& r : run_task(options(Task::Wff, i), wff, bad, store)) EXPECT_TRUE(r.nm_reason);
    for (const auto& r : run_task(options(Task::Nl2Pl, i), ap, good, store)) {
      ASSERT_FALSE(r.nm_reason) << r.item_id;
      EXPECT_DOUBLE_EQ(*r.f1, 1.0);
    }
    for (const auto& r : run_task(options(Task::Nl2Pl, i), ap, bad, store)) EXPECT_TRUE(r.nm_reason);
  }
  for (Interface i : kInterfaces) {
    MockClient good("mock", Persona::Compliant);
    for (const auto& r : run_task(options(Task::TraceChar, i), traces, good, store)) {
      EXPECT_EQ(r.predicted_positive, r.expected_positive) << r.item_id;
    }
    auto generated = run_task(options(Task::TraceGen, i), nl, good, store);
    for (std::size_t k = 0; k < generated.size(); ++k) {
      const auto& r = generated[k];
      ASSERT_FALSE(r.nm_reason) << r.item_id << " " << r.parse_failure;
      // Under strict Undefined propagation some formulas, e.g. G (x1 -> X x2),
      // have no satisfying finite trace at all.
      TraceSearch found = find_traces(nl.nl2ltl[k].gt_formula, OracleConfig{});
      EXPECT_EQ(*r.satisfying_ok, found.pair.satisfying().has_value()) << r.item_id;
      EXPECT_EQ(*r.violating_ok, found.pair.violating().has_value()) << r.item_id;
    }
    MockClient bad("mock", Persona::Malformed);
    for (const auto& r : run_task(options(Task::TraceGen, i), nl, bad, store)) EXPECT_TRUE(r.nm_reason);
  }
  MockClient good("mock", Persona::Compliant);
  EXPECT_THROW(run_task(options(Task::Wff, Interface::CodeCompletion), wff, good, store), ConfigError);
}

TEST(Records, JsonRoundtrip) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  MockClient mock("mock", Persona::OperatorSwap);
  auto records = run_task(options(Task::Nl2Ltl, Interface::Minimal, Strategy::SelfRefine), d, mock, store);
  for (const auto& r : records) EXPECT_EQ(record_from_json(record_to_json(r)), r);
}

TEST(Report, CompliantRowAndRescoring) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  MockClient mock("mock", Persona::Compliant);
  auto records = run_task(options(Task::Nl2Ltl, Interface::Minimal), d, mock, store);
  RunManifest m;
  m.run_id = "r";
  fs::path dir = scratch("report");
  ReportSummary s = emit_report(records, m, dir / "a");
  EXPECT_TRUE(s.warnings.empty());
  std::string tsv = slurp(dir / "a" / "translation.tsv");
  EXPECT_NE(tsv.find("mock\tnl2ltl\tzero-shot\tminimal\t20\t0\t0\t100.00\t100.00\t100.00\t100.00"),
            std::string::npos)
      << tsv;
  std::string md = slurp(dir / "a" / "tables.md");
  for (const char* col : {"Equiv", "Not-Eq", "N/M", "Eq-Acc%", "Syn.Corr%"}) {
    EXPECT_NE(md.find(col), std::string::npos);
  }

  auto stored = read_records(dir / "a" / "records.jsonl");
  RunManifest back = manifest_from_json(slurp(dir / "a" / "manifest.json"));
  emit_report(stored, back, dir / "b");
  for (const auto& f : {"records.jsonl", "tables.md", "translation.tsv", "aggregates.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST(Report, EmptyRecordsGiveHeadersAndWarning) {
  fs::path dir = scratch("empty");
  ReportSummary s = emit_report({}, RunManifest{}, dir);
  ASSERT_EQ(s.warnings.size(), 1u);
  EXPECT_EQ(slurp(dir / "translation.tsv"),
            "Model\tTask\tApproach\tInterface\tEquiv\tNot-Eq\tN/M\tEq-Acc%\tSyn.Corr%\tSound%\tCompl%\n");
  EXPECT_EQ(slurp(dir / "records.jsonl"), "");
}

TEST(Report, MixedRunPartitions) {
  TaskData d = fixture_nl2ltl();
  TemplateStore store;
  std::vector<EvalRecord> all;
  for (Persona p : {Persona::Compliant, Persona::OperatorSwap, Persona::Malformed}) {
    MockClient mock("mock", p);
    for (auto& r : run_task(options(Task::Nl2Ltl, Interface::Minimal), d, mock, store)) all.push_back(r);
  }
  SemanticRates s = rates(all);
  EXPECT_EQ(s.tally.equivalent + s.tally.not_equivalent + s.tally.not_meaningful, all.size());
  EXPECT_EQ(s.tally.not_meaningful, 20u);
}

TEST(Config, RejectsCredentialsAndBadSetups) {
  const char* ok = R"({"models":[{"name":"m","kind":"mock"}],
    "experiments":[{"task":"wff","dataset":"d.jsonl"}]})";
  RunConfig cfg = parse_run_config(ok, "/base");
  ASSERT_EQ(cfg.experiments.size(), 1u);
  EXPECT_EQ(cfg.experiments[0].dataset, fs::path("/base/d.jsonl"));
  EXPECT_EQ(cfg.experiments[0].interfaces.size(), 2u);

  EXPECT_THROW(parse_run_config(R"({"models":[{"name":"m","kind":"http","endpoint":"http://x","api_key":"abc"}],"experiments":[]})", ""),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"models":[{"name":"m","kind":"http","endpoint":"http://x","model":"sk-abc"}],"experiments":[]})", ""),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"models":[{"name":"m","kind":"mock"}],"experiments":[{"task":"wff","dataset":"d","interfaces":["code"]}]})", ""),
               ConfigError);
  EXPECT_THROW(parse_run_config(R"({"models":[{"name":"m","kind":"mock"}],"experiments":[{"task":"nl2ltl","dataset":"d","strategies":["few-shot"]}]})", ""),
               ConfigError);
  EXPECT_THROW(parse_run_config("{", ""), ConfigError);
  EXPECT_THROW(parse_run_config(R"({"models":[],"experiments":[]})", ""), ConfigError);
}

TEST(Config, ManifestNamesCredentialVariableOnly) {
  ::setenv("LTLBENCH_TEST_SECRET", "super-secret-value", 1);
  RunManifest m;
  ModelClientSpec spec;
  spec.name = "live";
  spec.endpoint = "http://127.0.0.1:1/v1/chat/completions";
  spec.model = "some-model-2024";
  spec.credential_env = "LTLBENCH_TEST_SECRET";
  m.models.push_back(spec);
  std::string text = manifest_to_json(m);
  EXPECT_NE(text.find("LTLBENCH_TEST_SECRET"), std::string::npos);
  EXPECT_EQ(text.find("super-secret-value"), std::string::npos);
  EXPECT_NE(text.find("some-model-2024"), std::string::npos);
}

TEST(Experiments, ReplayReproducesReportBytes) {
  fs::path dir = scratch("experiments");
  {
    std::ofstream cfg(dir / "run.json");
    cfg << R"({"run_id":"fixture","output_dir":"out","transcript":"cache.jsonl","concurrency":2,
      "models":[{"name":"swap","kind":"mock","persona":"operator-swap","model":"mock-swap"}],
      "experiments":[{"task":"nl2ltl","dataset":")"
        << data("nl2ltl_fixture.jsonl") << R"(","exemplars":")" << data("nl2ltl_exemplars.jsonl")
        << R"(","strategies":["zero-shot","few-shot"]}]})";
  }
  RunConfig cfg = load_run_config(dir / "run.json");
  RunResult live = run_experiments(cfg);
  EXPECT_EQ(live.records.size(), 20u * 3 * 2);
  emit_report(live.records, live.manifest, dir / "live");
  RunResult r1 = run_experiments(cfg, true);
  emit_report(r1.records, r1.manifest, dir / "r1");
  RunResult r2 = run_experiments(cfg, true);
  emit_report(r2.records, r2.manifest, dir / "r2");
  for (const auto& f : {"records.jsonl", "tables.md", "aggregates.csv", "manifest.json"}) {
    EXPECT_EQ(slurp(dir / "r1" / f), slurp(dir / "r2" / f)) << f;
    EXPECT_EQ(slurp(dir / "live" / f), slurp(dir / "r1" / f)) << f;
  }
  for (const auto& r : r1.records) EXPECT_NE(r.nm_reason, std::optional<std::string>("CacheMiss"));
  EXPECT_EQ(live.manifest.templates.count("fewshot_header"), 1u);
}

// ---- live client against a loopback server ----

class LoopbackServer : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/ok", [this](const httplib::Request& req, httplib::Response& res) {
      last_auth_ = req.get_header_value("Authorization");
      auto body = nlohmann::json::parse(req.body);
      last_model_ = body.at("model").get<std::string>();
      last_temperature_ = body.at("temperature").get<double>();
      std::string content = "echo: " + body.at("messages").back().at("content").get<std::string>();
      res.set_content(nlohmann::json{{"choices", {{{"message", {{"content", content}}}}}}}.dump(),
                      "application/json");
    });
    server_.Post("/flaky", [this](const httplib::Request&, httplib::Response& res) {
      if (flaky_calls_++ < 2) {
        res.status = 503;
        return;
      }
      res.set_content(R"({"choices":[{"message":{"content":"finally"}}]})", "application/json");
    });
    server_.Post("/denied", [this](const httplib::Request&, httplib::Response& res) {
      ++denied_calls_;
      res.status = 401;
    });
    server_.Post("/slow", [](const httplib::Request&, httplib::Response& res) {
      std::this_thread::sleep_for(std::chrono::milliseconds(600));
      res.set_content(R"({"choices":[{"message":{"content":"late"}}]})", "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  ModelClientSpec spec(const std::string& path) {
    ModelClientSpec s;
    s.name = "loopback";
    s.endpoint = "http://127.0.0.1:" + std::to_string(port_) + path;
    s.model = "test-model";
    s.retry.backoff = std::chrono::milliseconds(1);
    s.timeout = std::chrono::milliseconds(2000);
    return s;
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::string last_auth_;
  std::string last_model_;
  double last_temperature_ = -1;
  std::atomic<int> flaky_calls_{0};
  std::atomic<int> denied_calls_{0};
};

TEST_F(LoopbackServer, SendsRequestAndReadsReply) {
  ::setenv("LTLBENCH_TEST_TOKEN", "tok123", 1);
  ModelClientSpec s = spec("/ok");
  s.credential_env = "LTLBENCH_TEST_TOKEN";
  HttpClient client(s);
  Reply r = client.complete({{"user", "hi"}});
  EXPECT_EQ(r.text, "echo: hi");
  EXPECT_EQ(last_auth_, "Bearer tok123");
  EXPECT_EQ(last_model_, "test-model");
  EXPECT_EQ(last_temperature_, 0.0);
  EXPECT_FALSE(r.started_at.empty());
}

TEST_F(LoopbackServer, RetriesServerErrors) {
  HttpClient client(spec("/flaky"));
  EXPECT_EQ(client.complete({{"user", "x"}}).text, "finally");
  EXPECT_EQ(flaky_calls_.load(), 3);
}

TEST_F(LoopbackServer, ClientErrorsAreNotRetried) {
  HttpClient client(spec("/denied"));
  try {
    client.complete({{"user", "x"}});
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::HttpError);
    EXPECT_EQ(e.status(), 401);
  }
  EXPECT_EQ(denied_calls_.load(), 1);
}

TEST_F(LoopbackServer, TimeoutIsReported) {
  ModelClientSpec s = spec("/slow");
  s.timeout = std::chrono::milliseconds(150);
  s.retry.attempts = 1;
  HttpClient client(s);
  try {
    client.complete({{"user", "x"}});
    FAIL();
  } catch (const ClientError& e) {
    EXPECT_EQ(e.kind(), ClientErrorKind::Timeout) << e.what();
  }
}

TEST_F(LoopbackServer, MissingCredentialIsConfigError) {
  ::unsetenv("LTLBENCH_TEST_ABSENT");
  ModelClientSpec s = spec("/ok");
  s.credential_env = "LTLBENCH_TEST_ABSENT";
  EXPECT_THROW(HttpClient{s}, ConfigError);
}

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ltlbench/formula.hpp"
#include "ltlbench/promptgen.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

struct RetryPolicy {
  std::size_t attempts = 3;  // total tries, first one included
  std::chrono::milliseconds backoff{1000};  // doubled after every retry
};

/// Where and how to reach a model. Credentials are referenced by the name of
/// an environment variable and never stored.
struct ModelClientSpec {
  std::string name;
  std::string kind = "http";  // http, mock, replay
  std::string endpoint;
  std::string model;
  std::string credential_env;
  double temperature = 0.0;
  int max_tokens = 1024;
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  double requests_per_minute = 0;  // 0 = unlimited
  std::string persona = "compliant";  // mock only

  /// Model identifier used in cache keys and reports.
  std::string model_id() const { return model.empty() ? name : model; }
};

enum class ClientErrorKind { Timeout, HttpError, CacheMiss, Transport };

std::string_view to_string(ClientErrorKind k);

class ClientError : public std::runtime_error {
 public:
  ClientError(ClientErrorKind kind, const std::string& what, int status = 0)
      : std::runtime_error(what), kind_(kind), status_(status) {}
  ClientErrorKind kind() const noexcept { return kind_; }
  int status() const noexcept { return status_; }

 private:
  ClientErrorKind kind_;
  int status_;
};

struct Message {
  std::string role;  // user or assistant
  std::string content;
};

using Conversation = std::vector<Message>;

struct Reply {
  std::string text;
  double latency_ms = 0;
  std::string started_at;   // ISO-8601 UTC, empty for scripted clients
  std::string finished_at;
};

/// Cache key of a request: sha256 over the model id and the whole conversation.
std::string conversation_key(const std::string& model_id, const Conversation& conversation);

/// What a correct answer to one prompt looks like; used by the scripted mock.
struct ExpectedAnswer {
  Task task = Task::Nl2Ltl;
  Interface interface = Interface::Minimal;
  std::optional<Formula> formula;
  std::optional<bool> decision;
  std::optional<Trace> satisfying;
  std::optional<Trace> violating;
  std::vector<std::string> phrases;
};

class ModelClient {
 public:
  virtual ~ModelClient() = default;
  virtual std::string model_id() const = 0;
  /// Throws ClientError.
  virtual Reply complete(const Conversation& conversation) = 0;
  /// Called before a batch with the prompts about to be sent, keyed by the
  /// text of the first user turn. Only the scripted mock uses it.
  virtual void prepare(const std::map<std::string, ExpectedAnswer>& answers) { (void)answers; }
};

enum class Persona { Compliant, OperatorSwap, Malformed, Noncompliant };

std::string_view to_string(Persona p);
std::optional<Persona> parse_persona(std::string_view name);

/// Scripted client answering from the prepared answer key.
///  - compliant: the reference answer;
///  - operator-swap: formulas with every G replaced by F, other answers compliant;
///  - malformed: answers no parser accepts;
///  - noncompliant: prose without an answer.
/// An unknown prompt throws ClientError(CacheMiss).
class MockClient : public ModelClient {
 public:
  MockClient(std::string model_id, Persona persona);

  std::string model_id() const override { return model_id_; }
  Reply complete(const Conversation& conversation) override;
  void prepare(const std::map<std::string, ExpectedAnswer>& answers) override;

  /// The reply this persona gives to a prompt with the given answer.
  std::string respond(const ExpectedAnswer& answer) const;

 private:
  std::string model_id_;
  Persona persona_;
  std::mutex mu_;
  std::map<std::string, ExpectedAnswer> answers_;
};

/// One line of a transcript file.
struct TranscriptEntry {
  std::string model;
  std::string key;
  Conversation conversation;
  Reply reply;
};

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path);

/// Answers only from a transcript; anything else is a CacheMiss.
class ReplayClient : public ModelClient {
 public:
  ReplayClient(std::string model_id, const std::filesystem::path& transcript);

  std::string model_id() const override { return model_id_; }
  Reply complete(const Conversation& conversation) override;

 private:
  std::string model_id_;
  std::map<std::string, Reply> replies_;
};

/// Serves repeated requests from the transcript and appends every new reply
/// of `inner` to it, so an interrupted run resumes where it stopped.
class CachingClient : public ModelClient {
 public:
  CachingClient(std::unique_ptr<ModelClient> inner, std::filesystem::path transcript);

  std::string model_id() const override { return inner_->model_id(); }
  Reply complete(const Conversation& conversation) override;
  void prepare(const std::map<std::string, ExpectedAnswer>& answers) override {
    inner_->prepare(answers);
  }

 private:
  std::unique_ptr<ModelClient> inner_;
  std::filesystem::path transcript_;
  std::mutex mu_;
  std::map<std::string, Reply> cached_;
};

/// Chat-completions style HTTP client:
/// POST {model, messages, temperature, max_tokens}, reply in
/// choices[0].message.content. The bearer token is read from
/// spec.credential_env at construction (ConfigError if unset). Retries on
/// transport errors, timeouts, 429 and 5xx.
class HttpClient : public ModelClient {
 public:
  explicit HttpClient(ModelClientSpec spec);

  std::string model_id() const override { return spec_.model_id(); }
  Reply complete(const Conversation& conversation) override;

 private:
  void throttle();

  ModelClientSpec spec_;
  std::string token_;
  std::mutex rate_mu_;
  std::chrono::steady_clock::time_point next_slot_{};
};

/// Client for a spec: mock, replay (needs `transcript`) or http. With a
/// transcript, mock and http clients are wrapped in a CachingClient.
std::unique_ptr<ModelClient> make_client(const ModelClientSpec& spec,
                                         const std::optional<std::filesystem::path>& transcript);

}  // namespace ltlbench

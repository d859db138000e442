#include "ltlbench/clients.hpp"

#include <fstream>

#include "json.hpp"
#include "ltlbench/datasets.hpp"
#include "ltlbench/errors.hpp"
#include "ltlbench/hash.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {

using nlohmann::json;

std::string_view to_string(ClientErrorKind k) {
  switch (k) {
    case ClientErrorKind::Timeout: return "Timeout";
    case ClientErrorKind::HttpError: return "HttpError";
    case ClientErrorKind::CacheMiss: return "CacheMiss";
    case ClientErrorKind::Transport: return "Transport";
  }
  return "";
}

namespace {

json conversation_json(const Conversation& conversation) {
  json out = json::array();
  for (const auto& m : conversation) out.push_back({{"role", m.role}, {"content", m.content}});
  return out;
}

Conversation conversation_from_json(const json& j) {
  Conversation out;
  for (const auto& m : j) out.push_back({m.at("role").get<std::string>(), m.at("content").get<std::string>()});
  return out;
}

std::string render_answer_formula(const Formula& f, Interface interface) {
  if (interface == Interface::CodeCompletion) return "formulaToFind = " + print_constructor_form(f);
  return print_ltl(f);
}

std::string render_trace_answer(const ExpectedAnswer& a) {
  if (a.satisfying && a.violating) {
    return reference_tracegen_answer(a.interface, *a.satisfying, *a.violating);
  }
  bool code = a.interface == Interface::CodeCompletion;
  if (a.satisfying) {
    return code ? "satisfyingTrace = " + print_trace_literal(*a.satisfying)
                : "satisfying: " + print_trace(*a.satisfying);
  }
  if (a.violating) {
    return code ? "violatingTrace = " + print_trace_literal(*a.violating)
                : "violating: " + print_trace(*a.violating);
  }
  return "";
}

std::string malformed_formula(const Formula& f, Interface interface) {
  if (interface == Interface::CodeCompletion) {
    std::string text = render_answer_formula(f, interface);
    text.pop_back();
    return text;
  }
  try {
    return mutate_malformed(f, 0).text;
  } catch (const MutationExhausted&) {
    return print_ltl(f) + " &";
  }
}

}  // namespace

std::string conversation_key(const std::string& model_id, const Conversation& conversation) {
  return sha256_hex(model_id + "\n" + conversation_json(conversation).dump());
}

std::string_view to_string(Persona p) {
  switch (p) {
    case Persona::Compliant: return "compliant";
    case Persona::OperatorSwap: return "operator-swap";
    case Persona::Malformed: return "malformed";
    case Persona::Noncompliant: return "noncompliant";
  }
  return "";
}

std::optional<Persona> parse_persona(std::string_view name) {
  for (Persona p : {Persona::Compliant, Persona::OperatorSwap, Persona::Malformed, Persona::Noncompliant}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

MockClient::MockClient(std::string model_id, Persona persona)
    : model_id_(std::move(model_id)), persona_(persona) {}

void MockClient::prepare(const std::map<std::string, ExpectedAnswer>& answers) {
  std::lock_guard lock(mu_);
  for (const auto& [prompt, answer] : answers) answers_.insert_or_assign(prompt, answer);
}

Reply MockClient::complete(const Conversation& conversation) {
  std::optional<ExpectedAnswer> answer;
  {
    std::lock_guard lock(mu_);
    if (!conversation.empty()) {
      auto it = answers_.find(conversation.front().content);
      if (it != answers_.end()) answer = it->second;
    }
  }
  if (!answer) throw ClientError(ClientErrorKind::CacheMiss, "mock: prompt not in answer key");
  return Reply{respond(*answer), 0, "", ""};
}

std::string MockClient::respond(const ExpectedAnswer& a) const {
  switch (a.task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl: {
      if (!a.formula) return "";
      switch (persona_) {
        case Persona::Compliant: return render_answer_formula(*a.formula, a.interface);
        case Persona::OperatorSwap:
          return render_answer_formula(swap_operator(*a.formula, Op::Globally, Op::Eventually),
                                       a.interface);
        case Persona::Malformed: return malformed_formula(*a.formula, a.interface);
        case Persona::Noncompliant:
          return "I am not sure how to express this requirement as a formula.";
      }
      break;
    }
    case Task::Wff:
    case Task::TraceChar:
      switch (persona_) {
        case Persona::Compliant:
        case Persona::OperatorSwap: return a.decision.value_or(false) ? "Yes" : "No";
        case Persona::Malformed: return "Maybe";
        case Persona::Noncompliant: return "It depends on how the operators are read.";
      }
      break;
    case Task::TraceGen:
      switch (persona_) {
        case Persona::Compliant:
        case Persona::OperatorSwap: return render_trace_answer(a);
        case Persona::Malformed: return "satisfying: [{\nviolating: [";
        case Persona::Noncompliant: return "Traces cannot be given for this formula.";
      }
      break;
    case Task::Nl2Pl:
      switch (persona_) {
        case Persona::Compliant:
        case Persona::OperatorSwap: {
          std::string out;
          for (std::size_t i = 0; i < a.phrases.size(); ++i) {
            out += "x" + std::to_string(i + 1) + " -> \"" + a.phrases[i] + "\"\n";
          }
          return out;
        }
        case Persona::Malformed: return "-> ->";
        case Persona::Noncompliant: return "The sentence has no propositions.";
      }
      break;
  }
  return "";
}

std::vector<TranscriptEntry> read_transcript(const std::filesystem::path& path) {
  std::vector<TranscriptEntry> out;
  std::ifstream in(path, std::ios::binary);
  if (!in) return out;
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    ++n;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      json j = json::parse(line);
      TranscriptEntry e;
      e.model = j.at("model").get<std::string>();
      e.key = j.at("key").get<std::string>();
      e.conversation = conversation_from_json(j.at("conversation"));
      e.reply.text = j.at("reply").get<std::string>();
      e.reply.latency_ms = j.value("latency_ms", 0.0);
      e.reply.started_at = j.value("started_at", "");
      e.reply.finished_at = j.value("finished_at", "");
      out.push_back(std::move(e));
    } catch (const json::exception& e) {
      throw IoError(path.string() + ":" + std::to_string(n) + ": bad transcript line: " + e.what());
    }
  }
  return out;
}

ReplayClient::ReplayClient(std::string model_id, const std::filesystem::path& transcript)
    : model_id_(std::move(model_id)) {
  for (auto& e : read_transcript(transcript)) {
    if (e.model == model_id_) replies_.insert_or_assign(e.key, std::move(e.reply));
  }
}

Reply ReplayClient::complete(const Conversation& conversation) {
  auto it = replies_.find(conversation_key(model_id_, conversation));
  if (it == replies_.end()) {
    throw ClientError(ClientErrorKind::CacheMiss, "replay: no cached reply for this prompt");
  }
  return it->second;
}

CachingClient::CachingClient(std::unique_ptr<ModelClient> inner, std::filesystem::path transcript)
    : inner_(std::move(inner)), transcript_(std::move(transcript)) {
  std::string id = inner_->model_id();
  for (auto& e : read_transcript(transcript_)) {
    if (e.model == id) cached_.insert_or_assign(e.key, std::move(e.reply));
  }
}

Reply CachingClient::complete(const Conversation& conversation) {
  std::string key = conversation_key(model_id(), conversation);
  {
    std::lock_guard lock(mu_);
    auto it = cached_.find(key);
    if (it != cached_.end()) return it->second;
  }
  Reply reply = inner_->complete(conversation);
  json line = {{"model", model_id()},
               {"key", key},
               {"conversation", conversation_json(conversation)},
               {"reply", reply.text},
               {"latency_ms", reply.latency_ms},
               {"started_at", reply.started_at},
               {"finished_at", reply.finished_at}};
  std::lock_guard lock(mu_);
  if (cached_.count(key)) return cached_.at(key);
  if (!transcript_.parent_path().empty()) std::filesystem::create_directories(transcript_.parent_path());
  std::ofstream out(transcript_, std::ios::binary | std::ios::app);
  if (!out) throw IoError("cannot append to transcript " + transcript_.string());
  out << line.dump() << '\n';
  out.flush();
  cached_.emplace(key, reply);
  return reply;
}

std::unique_ptr<ModelClient> make_client(const ModelClientSpec& spec,
                                         const std::optional<std::filesystem::path>& transcript) {
  std::unique_ptr<ModelClient> client;
  if (spec.kind == "replay") {
    if (!transcript) throw ConfigError("client '" + spec.name + "': replay needs a transcript");
    return std::make_unique<ReplayClient>(spec.model_id(), *transcript);
  }
  if (spec.kind == "mock") {
    auto persona = parse_persona(spec.persona);
    if (!persona) throw ConfigError("client '" + spec.name + "': unknown persona '" + spec.persona + "'");
    client = std::make_unique<MockClient>(spec.model_id(), *persona);
  } else if (spec.kind == "http") {
    client = std::make_unique<HttpClient>(spec);
  } else {
    throw ConfigError("client '" + spec.name + "': unknown kind '" + spec.kind + "'");
  }
  if (transcript) return std::make_unique<CachingClient>(std::move(client), *transcript);
  return client;
}

}  // namespace ltlbench

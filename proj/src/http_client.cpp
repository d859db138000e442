#define CPPHTTPLIB_OPENSSL_SUPPORT
#include "httplib.h"

#include <cstdlib>
#include <ctime>
#include <thread>

#include "json.hpp"
#include "ltlbench/clients.hpp"
#include "ltlbench/errors.hpp"

namespace ltlbench {

using nlohmann::json;

namespace {

std::string utc_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(now.time_since_epoch()).count() % 1000;
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%S", &tm);
  char out[48];
  std::snprintf(out, sizeof out, "%s.%03dZ", buf, static_cast<int>(ms));
  return out;
}

struct Endpoint {
  std::string origin;  // scheme://host[:port]
  std::string path;
};

Endpoint split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw ConfigError("endpoint '" + url + "' lacks a scheme");
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) return {url, "/"};
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) { return status == 429 || status >= 500; }

}  // namespace

HttpClient::HttpClient(ModelClientSpec spec) : spec_(std::move(spec)) {
  split_url(spec_.endpoint);
  if (!spec_.credential_env.empty()) {
    const char* value = std::getenv(spec_.credential_env.c_str());
    if (value == nullptr || *value == '\0') {
      throw ConfigError("client '" + spec_.name + "': environment variable " + spec_.credential_env +
                        " is not set");
    }
    token_ = value;
  }
}

void HttpClient::throttle() {
  if (spec_.requests_per_minute <= 0) return;
  auto interval = std::chrono::duration_cast<std::chrono::steady_clock::duration>(
      std::chrono::duration<double>(60.0 / spec_.requests_per_minute));
  std::chrono::steady_clock::time_point slot;
  {
    std::lock_guard lock(rate_mu_);
    auto now = std::chrono::steady_clock::now();
    slot = std::max(now, next_slot_);
    next_slot_ = slot + interval;
  }
  std::this_thread::sleep_until(slot);
}

Reply HttpClient::complete(const Conversation& conversation) {
  Endpoint ep = split_url(spec_.endpoint);
  json messages = json::array();
  for (const auto& m : conversation) messages.push_back({{"role", m.role}, {"content", m.content}});
  json body = {{"model", spec_.model_id()},
               {"messages", messages},
               {"temperature", spec_.temperature},
               {"max_tokens", spec_.max_tokens}};
  std::string payload = body.dump();

  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  auto timeout = std::chrono::duration_cast<std::chrono::microseconds>(spec_.timeout);
  time_t sec = static_cast<time_t>(timeout.count() / 1000000);
  time_t usec = static_cast<time_t>(timeout.count() % 1000000);

  std::size_t attempts = std::max<std::size_t>(1, spec_.retry.attempts);
  auto backoff = spec_.retry.backoff;
  ClientError last(ClientErrorKind::Transport, "no attempt made");
  for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
    if (attempt > 0) {
      std::this_thread::sleep_for(backoff);
      backoff *= 2;
    }
    throttle();
    httplib::Client cli(ep.origin);
    cli.set_connection_timeout(sec, usec);
    cli.set_read_timeout(sec, usec);
    cli.set_write_timeout(sec, usec);

    Reply reply;
    reply.started_at = utc_now();
    auto t0 = std::chrono::steady_clock::now();
    auto res = cli.Post(ep.path, headers, payload, "application/json");
    auto elapsed = std::chrono::steady_clock::now() - t0;
    reply.finished_at = utc_now();
    reply.latency_ms = std::chrono::duration<double, std::milli>(elapsed).count();

    if (!res) {
      auto err = res.error();
      bool timed_out = err == httplib::Error::ConnectionTimeout ||
                       (err == httplib::Error::Read && elapsed >= spec_.timeout);
      last = ClientError(timed_out ? ClientErrorKind::Timeout : ClientErrorKind::Transport,
                         spec_.name + ": " + httplib::to_string(err));
      continue;
    }
    if (res->status != 200) {
      last = ClientError(ClientErrorKind::HttpError,
                         spec_.name + ": HTTP status " + std::to_string(res->status), res->status);
      if (retryable_status(res->status)) continue;
      throw last;
    }
    try {
      json j = json::parse(res->body);
      reply.text = j.at("choices").at(0).at("message").at("content").get<std::string>();
    } catch (const json::exception& e) {
      throw ClientError(ClientErrorKind::HttpError,
                        spec_.name + ": unexpected response body: " + e.what(), res->status);
    }
    return reply;
  }
  throw last;
}

}  // namespace ltlbench

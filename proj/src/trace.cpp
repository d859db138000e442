#include "ltlbench/trace.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "ltlbench/errors.hpp"

namespace ltlbench {

State::State(std::initializer_list<std::pair<std::string, bool>> assignments) {
  for (const auto& [name, value] : assignments) assign(name, value);
}

void State::assign(std::string name, bool value) {
  if (!is_valid_ap_name(name)) {
    throw std::invalid_argument("illegal atomic proposition name: \"" + name + "\"");
  }
  if (lookup(name)) throw TraceFormatError(0, "duplicate assignment to '" + name + "'");
  assignments_.emplace_back(std::move(name), value);
}

std::optional<bool> State::lookup(std::string_view name) const {
  for (const auto& [n, v] : assignments_) {
    if (n == name) return v;
  }
  return std::nullopt;
}

bool is_complete_for(const Trace& trace, const APVocabulary& vocab) {
  return std::all_of(trace.begin(), trace.end(), [&](const State& s) {
    return std::all_of(vocab.names().begin(), vocab.names().end(),
                       [&](const std::string& n) { return s.lookup(n).has_value(); });
  });
}

namespace {

// trace  := ws '[' ws ( state ( ws ';' ws state )* )? ws ']' ws
// state  := '{' ws ( assign ( ws ',' ws assign )* )? ws '}'
// assign := name ws '=' ws ( '0' | '1' )
class TraceReader {
 public:
  explicit TraceReader(std::string_view s) : s_(s) {}

  Trace read() {
    skip_ws();
    expect('[');
    Trace trace;
    skip_ws();
    if (peek() != ']') {
      trace.push_back(read_state());
      skip_ws();
      while (peek() == ';') {
        ++i_;
        skip_ws();
        trace.push_back(read_state());
        skip_ws();
      }
    }
    expect(']');
    skip_ws();
    if (i_ != s_.size()) fail("trailing characters after ']'");
    return trace;
  }

 private:
  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }

  void skip_ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  [[noreturn]] void fail(const std::string& what) const { throw TraceFormatError(i_, what); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }

  State read_state() {
    expect('{');
    State state;
    skip_ws();
    if (peek() != '}') {
      read_assignment(state);
      skip_ws();
      while (peek() == ',') {
        ++i_;
        skip_ws();
        read_assignment(state);
        skip_ws();
      }
    }
    expect('}');
    return state;
  }

  void read_assignment(State& state) {
    std::size_t start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) {
      ++i_;
    }
    std::string name(s_.substr(start, i_ - start));
    if (!is_valid_ap_name(name)) {
      throw TraceFormatError(start, "invalid proposition name '" + name + "'");
    }
    skip_ws();
    expect('=');
    skip_ws();
    char v = peek();
    if (v != '0' && v != '1') fail("expected 0 or 1");
    ++i_;
    if (state.lookup(name)) {
      throw TraceFormatError(start, "duplicate assignment to '" + name + "'");
    }
    state.assign(name, v == '1');
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

Trace parse_trace(std::string_view text) { return TraceReader(text).read(); }

std::string print_trace(const Trace& trace) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += "; ";
    out += '{';
    const auto& as = trace[i].assignments();
    for (std::size_t j = 0; j < as.size(); ++j) {
      if (j) out += ", ";
      out += as[j].first;
      out += as[j].second ? "=1" : "=0";
    }
    out += '}';
  }
  out += ']';
  return out;
}

std::string print_trace_literal(const Trace& trace) {
  std::string out = "[";
  for (std::size_t i = 0; i < trace.size(); ++i) {
    if (i) out += ", ";
    out += '[';
    const auto& as = trace[i].assignments();
    for (std::size_t j = 0; j < as.size(); ++j) {
      if (j) out += ", ";
      out += "(\"" + as[j].first + "\", " + (as[j].second ? "True" : "False") + ")";
    }
    out += ']';
  }
  out += ']';
  return out;
}

}  // namespace ltlbench

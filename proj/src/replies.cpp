#include <algorithm>
#include <cctype>
#include <memory>
#include <regex>
#include <variant>

#include "ltlbench/promptgen.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> nonempty_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    if (!line.empty()) out.push_back(line);
    start = end + 1;
  }
  return out;
}

std::string_view strip_wrapping(std::string_view s) {
  s = trim(s);
  while (s.size() >= 2 && (s.front() == '`' || s.front() == '"' || s.front() == '$') &&
         s.back() == s.front()) {
    s = trim(s.substr(1, s.size() - 2));
  }
  while (!s.empty() && s.back() == '.') s = trim(s.substr(0, s.size() - 1));
  return s;
}

// "Formula: G p", "LTL formula - G p", "**Answer:** G p" -> "G p".
std::string_view strip_label(std::string_view line) {
  static const std::regex label(R"(^[*#>\- ]*[A-Za-z][A-Za-z0-9 ()]{0,40}[*]*\s*[:=]\s*[*]*)");
  std::string s(line);
  std::smatch m;
  if (std::regex_search(s, m, label)) {
    // Only a label if what follows parses; "p -> q" must not lose "p -".
    std::string_view rest = strip_wrapping(line.substr(static_cast<std::size_t>(m.length(0))));
    if (!rest.empty() && try_parse_ltl(rest).formula) return rest;
  }
  return line;
}

// Text from `from` up to the parenthesis that closes the first '(' after it.
std::optional<std::string_view> balanced_call(std::string_view text, std::size_t from) {
  std::size_t open = text.find('(', from);
  if (open == std::string_view::npos) return std::nullopt;
  int depth = 0;
  char quote = 0;
  for (std::size_t i = open; i < text.size(); ++i) {
    char c = text[i];
    if (quote != 0) {
      if (c == quote) quote = 0;
      continue;
    }
    if (c == '"' || c == '\'') quote = c;
    else if (c == '(') ++depth;
    else if (c == ')' && --depth == 0) return text.substr(from, i + 1 - from);
  }
  return std::nullopt;
}

FormulaReply infix_reply(std::string_view text) {
  std::string body = strip_code_fences(text);
  auto lines = nonempty_lines(body);
  if (lines.empty()) return {std::nullopt, "empty reply"};
  std::string_view candidate = strip_wrapping(strip_label(strip_wrapping(lines.back())));
  ParseOutcome parsed = try_parse_ltl(candidate);
  if (parsed.formula) return {parsed.formula, {}};
  return {std::nullopt, "no single extractable formula: " + parsed.error};
}

FormulaReply constructor_reply(std::string_view text) {
  std::string body = strip_code_fences(text);
  std::string_view view = body;
  std::size_t at = view.rfind("formulaToFind");
  std::size_t from = 0;
  if (at != std::string_view::npos) {
    std::size_t eq = view.find('=', at);
    if (eq == std::string_view::npos) return {std::nullopt, "formulaToFind without assignment"};
    from = eq + 1;
    while (from < view.size() && std::isspace(static_cast<unsigned char>(view[from]))) ++from;
  } else {
    auto lines = nonempty_lines(view);
    if (lines.empty()) return {std::nullopt, "empty reply"};
    from = static_cast<std::size_t>(lines.back().data() - view.data());
  }
  auto expr = balanced_call(view, from);
  if (!expr) return {std::nullopt, "no complete constructor expression"};
  try {
    return {parse_constructor_form(*expr), {}};
  } catch (const SyntaxError& e) {
    return {std::nullopt, std::string("constructor expression rejected: ") + e.what()};
  }
}

// ---- Python literal subset: lists, tuples, strings, True/False, 0/1 ----

struct PyValue;
using PyList = std::vector<PyValue>;
struct PyValue {
  std::variant<PyList, std::string, bool> v;
  bool is_list() const { return std::holds_alternative<PyList>(v); }
};

class PyReader {
 public:
  explicit PyReader(std::string_view s) : s_(s) {}

  std::optional<PyValue> value(int depth = 0) {
    skip();
    if (depth > 64 || i_ >= s_.size()) return std::nullopt;
    char c = s_[i_];
    if (c == '[' || c == '(') {
      char close = c == '[' ? ']' : ')';
      ++i_;
      PyList items;
      for (;;) {
        skip();
        if (i_ < s_.size() && s_[i_] == close) {
          ++i_;
          return PyValue{std::move(items)};
        }
        auto item = value(depth + 1);
        if (!item) return std::nullopt;
        items.push_back(std::move(*item));
        skip();
        if (i_ < s_.size() && s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (i_ < s_.size() && s_[i_] == close) continue;
        return std::nullopt;
      }
    }
    if (c == '"' || c == '\'') {
      std::size_t end = s_.find(c, i_ + 1);
      if (end == std::string_view::npos) return std::nullopt;
      std::string str(s_.substr(i_ + 1, end - i_ - 1));
      i_ = end + 1;
      return PyValue{std::move(str)};
    }
    for (auto [word, val] : {std::pair{"True", true}, {"False", false}, {"1", true}, {"0", false}}) {
      std::string_view w(word);
      if (s_.substr(i_, w.size()) == w) {
        i_ += w.size();
        return PyValue{val};
      }
    }
    return std::nullopt;
  }

  std::size_t pos() const { return i_; }

 private:
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }

  std::string_view s_;
  std::size_t i_ = 0;
};

// A state is a list of (name, bool) pairs.
std::optional<State> as_state(const PyValue& v) {
  if (!v.is_list()) return std::nullopt;
  State s;
  for (const auto& pair : std::get<PyList>(v.v)) {
    if (!pair.is_list()) return std::nullopt;
    const auto& kv = std::get<PyList>(pair.v);
    if (kv.size() != 2 || !std::holds_alternative<std::string>(kv[0].v) ||
        !std::holds_alternative<bool>(kv[1].v)) {
      return std::nullopt;
    }
    const auto& name = std::get<std::string>(kv[0].v);
    if (!is_valid_ap_name(name) || s.lookup(name)) return std::nullopt;
    s.assign(name, std::get<bool>(kv[1].v));
  }
  return s;
}

std::optional<Trace> as_trace(const PyValue& v) {
  if (!v.is_list()) return std::nullopt;
  Trace t;
  for (const auto& item : std::get<PyList>(v.v)) {
    auto s = as_state(item);
    if (!s) return std::nullopt;
    t.push_back(std::move(*s));
  }
  return t;
}

// A trace, or a single state standing for a one-state trace.
std::optional<Trace> as_trace_or_state(const PyValue& v) {
  if (auto t = as_trace(v)) {
    const auto& items = std::get<PyList>(v.v);
    // [("p", True)] reads as a state, not as a trace of one malformed state.
    if (!items.empty()) return t;
  }
  if (auto s = as_state(v)) return Trace{std::move(*s)};
  return std::nullopt;
}

std::optional<Trace> literal_after(std::string_view text, std::string_view name) {
  std::size_t at = text.rfind(name);
  if (at == std::string_view::npos) return std::nullopt;
  std::size_t eq = text.find('=', at + name.size());
  if (eq == std::string_view::npos) return std::nullopt;
  PyReader r(text.substr(eq + 1));
  auto v = r.value();
  if (!v) return std::nullopt;
  return as_trace_or_state(*v);
}

void finish(TraceReply& r) {
  r.partial = r.satisfying.has_value() != r.violating.has_value();
  if (!r.satisfying && !r.violating) {
    if (r.failure.empty()) r.failure = "no trace found in reply";
  } else if (!r.satisfying) {
    r.failure = "satisfying trace missing or unreadable";
  } else if (!r.violating) {
    r.failure = "violating trace missing or unreadable";
  }
}

std::optional<Trace> labeled_trace(std::string_view text, std::string_view label) {
  std::string low = lower(text);
  std::size_t at = low.find(label);
  if (at == std::string::npos) return std::nullopt;
  std::size_t open = text.find('[', at);
  if (open == std::string_view::npos) return std::nullopt;
  std::size_t close = text.find(']', open);
  if (close == std::string_view::npos) return std::nullopt;
  try {
    return parse_trace(text.substr(open, close - open + 1));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace

FormulaReply parse_formula_reply(std::string_view text, Interface interface) {
  try {
    return interface == Interface::CodeCompletion ? constructor_reply(text) : infix_reply(text);
  } catch (const std::exception& e) {
    return {std::nullopt, std::string("reply could not be read: ") + e.what()};
  }
}

std::string_view to_string(Decision d) {
  switch (d) {
    case Decision::Yes: return "yes";
    case Decision::No: return "no";
    case Decision::Unparseable: return "unparseable";
  }
  return "unparseable";
}

Decision parse_decision_reply(std::string_view text, const DecisionVocabulary& vocab) {
  auto classify = [&](std::string_view word) {
    std::string w = lower(word);
    while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.back()))) w.pop_back();
    while (!w.empty() && std::ispunct(static_cast<unsigned char>(w.front()))) w.erase(0, 1);
    if (std::find(vocab.yes.begin(), vocab.yes.end(), w) != vocab.yes.end()) return Decision::Yes;
    if (std::find(vocab.no.begin(), vocab.no.end(), w) != vocab.no.end()) return Decision::No;
    return Decision::Unparseable;
  };
  std::string body = strip_code_fences(text);
  auto lines = nonempty_lines(body);
  if (lines.empty()) return Decision::Unparseable;
  auto first_word = [](std::string_view line) {
    std::size_t end = 0;
    while (end < line.size() && !std::isspace(static_cast<unsigned char>(line[end])) &&
           line[end] != ',') {
      ++end;
    }
    return line.substr(0, end);
  };
  Decision d = classify(first_word(lines.front()));
  if (d != Decision::Unparseable) return d;
  std::string_view last = lines.back();
  if (last.find(' ') == std::string_view::npos) return classify(last);
  return Decision::Unparseable;
}

TraceReply parse_trace_reply(std::string_view text, Interface interface) {
  TraceReply r;
  try {
    std::string body = strip_code_fences(text);
    if (interface == Interface::CodeCompletion) {
      r.satisfying = literal_after(body, "satisfyingTrace");
      r.violating = literal_after(body, "violatingTrace");
      if (!r.satisfying && !r.violating) {
        std::size_t open = body.find('[');
        if (open != std::string::npos) {
          PyReader reader(std::string_view(body).substr(open));
          auto v = reader.value();
          if (v && v->is_list() && std::get<PyList>(v->v).size() == 2) {
            const auto& both = std::get<PyList>(v->v);
            r.satisfying = as_trace_or_state(both[0]);
            r.violating = as_trace_or_state(both[1]);
          } else {
            r.failure = "expected a two-element (satisfying, violating) literal";
          }
        }
      }
    } else {
      r.satisfying = labeled_trace(body, "satisfying");
      r.violating = labeled_trace(body, "violating");
    }
  } catch (const std::exception& e) {
    r.satisfying.reset();
    r.violating.reset();
    r.failure = std::string("reply could not be read: ") + e.what();
  }
  finish(r);
  return r;
}

PhraseReply parse_phrase_reply(std::string_view text) {
  static const std::regex line_re(
      R"(^[\s*\-•\d.]*\(?\s*([A-Za-z][A-Za-z0-9]*)\s*(?:->|:|=|→)\s*["“']?(.*?)["”']?\s*\)?[,;]?\s*$)");
  PhraseReply out;
  std::string body = strip_code_fences(text);
  for (std::string_view line : nonempty_lines(body)) {
    std::string s(line);
    std::smatch m;
    if (!std::regex_match(s, m, line_re)) continue;
    std::string phrase(trim(m[2].str()));
    if (phrase.empty()) continue;
    out.bindings.push_back({m[1].str(), phrase});
  }
  if (out.bindings.empty()) out.failure = "no `variable -> \"phrase\"` lines found";
  return out;
}

}  // namespace ltlbench

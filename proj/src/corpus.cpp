#include <algorithm>
#include <cstdio>

#include "ltlbench/datasets.hpp"
#include "ltlbench/syntax.hpp"
#include "rng.hpp"

namespace ltlbench {

TraceCorpus build_trace_corpus(const std::vector<Nl2LtlItem>& items, const OracleConfig& cfg,
                               std::uint64_t seed) {
  TraceCorpus out;
  std::mt19937_64 rng(seed);
  for (const auto& item : items) {
    OracleConfig per_item = cfg;
    per_item.rng_seed = rng();
    TraceSearch found;
    try {
      found = find_traces(item.gt_formula, per_item);
    } catch (const BudgetExceeded& e) {
      out.skipped.push_back({item.id, "both", e.what()});
      continue;
    }
    if (const auto& sat = found.pair.satisfying()) {
      out.items.push_back({item.id + "-sat", item.gt_formula, *sat, true});
    } else {
      out.skipped.push_back({item.id, "satisfying", "no satisfying trace within the bound"});
    }
    if (const auto& viol = found.pair.violating()) {
      out.items.push_back({item.id + "-viol", item.gt_formula, *viol, false});
    } else {
      out.skipped.push_back({item.id, "violating", "no violating trace within the bound"});
    }
  }
  detail::shuffle(out.items, rng);
  return out;
}

namespace {

struct Pattern {
  const char* nl;       // {a} {b} {c} stand for the phrases of x1 x2 x3
  const char* formula;  // over x1 x2 x3
};

constexpr Pattern kFuturePatterns[] = {
    {"It is always the case that {a}.", "G x1"},
    {"Eventually {a}.", "F x1"},
    {"Whenever {a}, {b}.", "G (x1 -> x2)"},
    {"Whenever {a}, eventually {b}.", "G (x1 -> F x2)"},
    {"{A} until {b}.", "x1 U x2"},
    {"If {a}, then in the next step {b}.", "x1 -> X x2"},
    {"It is never the case that {a} and {b} at the same time.", "G !(x1 & x2)"},
    {"{A} and {b} do not both hold.", "!(x1 & x2)"},
    {"From some point on, {a} forever.", "F G x1"},
    {"Infinitely often, {a}.", "G F x1"},
    {"Sooner or later {a} or {b}.", "F (x1 | x2)"},
    {"{A} exactly when {b}.", "x1 <-> x2"},
    {"Always, if {a} then {b} until {c}.", "G (x1 -> (x2 U x3))"},
    {"In the next step, {a}.", "X x1"},
    {"Always, if {a} then {b} in the next step.", "G (x1 -> X x2)"},
    {"Eventually {a}, and it is never the case that {b}.", "F x1 & G !x2"},
};

constexpr Pattern kPastPatterns[] = {
    {"At some point in the past, {a}.", "O x1"},
    {"So far, {a} at every step.", "H x1"},
    {"In the previous step, {a}.", "Y x1"},
    {"{B} has held ever since {a}.", "x2 S x1"},
    {"Whenever {a}, {b} has happened before.", "G (x1 -> O x2)"},
    {"If {a}, then {b} in the previous step.", "x1 -> Y x2"},
    {"{A} has never held together with {b}.", "H !(x1 & x2)"},
    {"Always, {a} only if {b} held at some earlier point.", "G (x1 -> Y O x2)"},
};

constexpr const char* kPhrases[] = {
    "the alarm sounds",        "the door is open",          "the user is authenticated",
    "the request is granted",  "the valve is closed",       "the light is green",
    "the train is in the station", "the sensor reports an error", "the file is encrypted",
    "the robot is charging",   "Mary joins the team",       "the server is reachable",
    "the buffer is full",      "the session expires",       "the audit log is written",
    "the pump is running",     "the password is reset",     "the key is revoked",
    "the car is moving",       "the backup completes",      "the packet is dropped",
    "the lock is engaged",     "the printer is idle",       "the token is valid",
};

std::string fill(const char* pattern, const std::vector<std::string>& phrases) {
  std::string out;
  for (const char* p = pattern; *p != '\0'; ++p) {
    if (*p == '{' && p[1] != '\0' && p[2] == '}') {
      char key = p[1];
      bool capital = key >= 'A' && key <= 'Z';
      std::size_t idx = static_cast<std::size_t>((capital ? key - 'A' : key - 'a'));
      std::string phrase = phrases.at(idx);
      if (capital && !phrase.empty() && phrase[0] >= 'a' && phrase[0] <= 'z') {
        phrase[0] = static_cast<char>(phrase[0] - 'a' + 'A');
      }
      out += phrase;
      p += 2;
    } else {
      out += *p;
    }
  }
  return out;
}

}  // namespace

std::vector<Nl2LtlItem> generate_synthetic_nl2ltl(std::size_t count, std::uint64_t seed,
                                                  Tense tense) {
  std::mt19937_64 rng(seed);
  const Pattern* patterns = tense == Tense::Future ? kFuturePatterns : kPastPatterns;
  const std::size_t n_patterns =
      tense == Tense::Future ? std::size(kFuturePatterns) : std::size(kPastPatterns);
  std::vector<Nl2LtlItem> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Pattern& pat = patterns[i % n_patterns];
    Formula f = parse_ltl(pat.formula);
    std::vector<std::size_t> pick(std::size(kPhrases));
    for (std::size_t k = 0; k < pick.size(); ++k) pick[k] = k;
    detail::shuffle(pick, rng);
    std::vector<std::string> phrases = {kPhrases[pick[0]], kPhrases[pick[1]], kPhrases[pick[2]]};
    Nl2LtlItem item{{}, fill(pat.nl, phrases), {}, f, tense, std::nullopt};
    char id[32];
    std::snprintf(id, sizeof id, "syn-%04zu", i + 1);
    item.id = id;
    APVocabulary used = collect_aps(f);
    for (const auto& name : used.names()) {
      std::size_t idx = static_cast<std::size_t>(name[1] - '1');
      item.ap_map.push_back({name, phrases[idx]});
    }
    std::sort(item.ap_map.begin(), item.ap_map.end(),
              [](const ApBinding& a, const ApBinding& b) { return a.var < b.var; });
    out.push_back(std::move(item));
  }
  return out;
}

}  // namespace ltlbench

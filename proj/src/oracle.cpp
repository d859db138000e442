#include "ltlbench/oracle.hpp"

#include <array>
#include <stdexcept>
#include <string>

#include "ltlbench/errors.hpp"

namespace ltlbench {

std::string_view to_string(NotMeaningfulReason r) {
  switch (r) {
    case NotMeaningfulReason::ParseFailure: return "ParseFailure";
    case NotMeaningfulReason::VocabularyMismatch: return "VocabularyMismatch";
    case NotMeaningfulReason::BudgetExceeded: return "BudgetExceeded";
  }
  return "?";
}

std::string_view to_string(OracleVerdict::Kind k) {
  switch (k) {
    case OracleVerdict::Kind::Holds: return "Holds";
    case OracleVerdict::Kind::Fails: return "Fails";
    case OracleVerdict::Kind::NotMeaningful: return "NotMeaningful";
  }
  return "?";
}

OracleVerdict OracleVerdict::not_meaningful_because(NotMeaningfulReason r) {
  OracleVerdict v;
  v.kind = Kind::NotMeaningful;
  v.reason = r;
  return v;
}

TracePair::TracePair(const Formula& f, std::optional<Trace> satisfying,
                     std::optional<Trace> violating)
    : satisfying_(std::move(satisfying)), violating_(std::move(violating)) {
  if (satisfying_ && satisfies(f, *satisfying_) != Outcome::DefinedTrue) {
    throw std::invalid_argument("TracePair: satisfying trace does not satisfy the formula");
  }
  if (violating_ && satisfies(f, *violating_) != Outcome::DefinedFalse) {
    throw std::invalid_argument("TracePair: violating trace does not violate the formula");
  }
}

namespace {

std::uint64_t splitmix64(std::uint64_t& x) {
  std::uint64_t z = (x += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

// Seeded bijection on [0, 2^bits): rounds of xorshift, odd multiply, add.
class IndexPermutation {
 public:
  IndexPermutation(unsigned bits, std::uint64_t seed, std::size_t length) : bits_(bits) {
    mask_ = bits >= 64 ? ~0ULL : ((1ULL << bits) - 1);
    shift_ = bits > 1 ? bits / 2 : 1;
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (length + 1));
    for (auto& r : rounds_) {
      r.mul = splitmix64(state) | 1ULL;
      r.add = splitmix64(state);
    }
  }

  std::uint64_t operator()(std::uint64_t x) const {
    for (const auto& r : rounds_) {
      x ^= x >> shift_;
      x = (x * r.mul + r.add) & mask_;
    }
    return x;
  }

 private:
  struct Round {
    std::uint64_t mul;
    std::uint64_t add;
  };
  unsigned bits_;
  unsigned shift_;
  std::uint64_t mask_;
  std::array<Round, 3> rounds_{};
};

struct Resolved {
  APVocabulary vocab;
  bool mismatch = false;
};

Resolved resolve_vocabulary(const Formula& f, const Formula& g, const OracleConfig& cfg) {
  APVocabulary needed = vocabulary_union(collect_aps(f), collect_aps(g));
  if (cfg.vocabulary.empty()) return {needed, false};
  for (const auto& n : needed.names()) {
    if (!cfg.vocabulary.contains(n)) return {cfg.vocabulary, true};
  }
  return {cfg.vocabulary, false};
}

void record_failure(OracleVerdict& v, std::span<const std::uint32_t> states,
                    const APVocabulary& vocab, Outcome lhs, Outcome rhs) {
  v.kind = OracleVerdict::Kind::Fails;
  v.witness = decode_trace(states, vocab);
  v.lhs = lhs;
  v.rhs = rhs;
}

}  // namespace

std::uint64_t enumeration_size(const APVocabulary& vocab, const OracleConfig& cfg) {
  if (cfg.min_trace_length > cfg.max_trace_length) {
    throw std::invalid_argument("oracle: min_trace_length exceeds max_trace_length");
  }
  if (vocab.size() > cfg.max_vocab_size || vocab.size() > 31) {
    throw BudgetExceeded("oracle: vocabulary of " + std::to_string(vocab.size()) +
                         " propositions exceeds the guard of " +
                         std::to_string(cfg.max_vocab_size));
  }
  std::uint64_t total = 0;
  for (std::size_t len = cfg.min_trace_length; len <= cfg.max_trace_length; ++len) {
    std::size_t bits = vocab.size() * len;
    if (bits >= 63) throw BudgetExceeded("oracle: enumeration space overflows 2^63");
    total += 1ULL << bits;
    if (total > cfg.trace_budget) {
      throw BudgetExceeded("oracle: (2^" + std::to_string(vocab.size()) + ")^L summed to L=" +
                           std::to_string(cfg.max_trace_length) + " exceeds the budget of " +
                           std::to_string(cfg.trace_budget) + " traces");
    }
  }
  return total;
}

void enumerate_traces(const APVocabulary& vocab, const OracleConfig& cfg,
                      const std::function<bool(std::span<const std::uint32_t>)>& visit) {
  enumeration_size(vocab, cfg);
  const std::size_t width = vocab.size();
  const std::uint64_t state_mask = (1ULL << width) - 1;
  std::vector<std::uint32_t> states;
  for (std::size_t len = cfg.min_trace_length; len <= cfg.max_trace_length; ++len) {
    const auto bits = static_cast<unsigned>(width * len);
    const std::uint64_t count = 1ULL << bits;
    IndexPermutation perm(bits, cfg.rng_seed, len);
    states.assign(len, 0);
    for (std::uint64_t k = 0; k < count; ++k) {
      std::uint64_t idx = perm(k);
      for (std::size_t i = 0; i < len; ++i) {
        states[i] = static_cast<std::uint32_t>((idx >> (i * width)) & state_mask);
      }
      if (!visit(states)) return;
    }
  }
}

void enumerate_traces(const APVocabulary& vocab, const OracleConfig& cfg,
                      const std::function<bool(const Trace&)>& visit) {
  enumerate_traces(vocab, cfg, [&](std::span<const std::uint32_t> states) {
    return visit(decode_trace(states, vocab));
  });
}

Trace decode_trace(std::span<const std::uint32_t> states, const APVocabulary& vocab) {
  Trace t;
  t.reserve(states.size());
  for (std::uint32_t bits : states) {
    State s;
    for (std::size_t k = 0; k < vocab.size(); ++k) s.assign(vocab.names()[k], (bits >> k) & 1U);
    t.push_back(std::move(s));
  }
  return t;
}

Comparison compare_formulas(const std::optional<Formula>& ground_truth,
                            const std::optional<Formula>& prediction, const OracleConfig& cfg) {
  using R = NotMeaningfulReason;
  auto all_nm = [](R r) {
    auto v = OracleVerdict::not_meaningful_because(r);
    return Comparison{v, v, v};
  };
  if (!ground_truth || !prediction) return all_nm(R::ParseFailure);
  Resolved res = resolve_vocabulary(*ground_truth, *prediction, cfg);
  if (res.mismatch) return all_nm(R::VocabularyMismatch);

  CompiledFormula gt(*ground_truth, res.vocab);
  CompiledFormula pred(*prediction, res.vocab);
  Comparison out;
  std::vector<Outcome> scratch;
  std::uint64_t checked = 0;
  try {
    enumerate_traces(res.vocab, cfg, [&](std::span<const std::uint32_t> states) {
      ++checked;
      Outcome a = gt.satisfies(states, scratch);
      Outcome b = pred.satisfies(states, scratch);
      if (out.equivalence.holds() && a != b) {
        record_failure(out.equivalence, states, res.vocab, a, b);
      }
      if (out.soundness.holds() && a == Outcome::DefinedTrue && b != Outcome::DefinedTrue) {
        record_failure(out.soundness, states, res.vocab, a, b);
        out.soundness.undefined_conclusion = b == Outcome::Undefined;
      }
      if (out.completeness.holds() && b == Outcome::DefinedTrue && a != Outcome::DefinedTrue) {
        record_failure(out.completeness, states, res.vocab, b, a);
        out.completeness.undefined_conclusion = a == Outcome::Undefined;
      }
      return out.equivalence.holds() || out.soundness.holds() || out.completeness.holds();
    });
  } catch (const BudgetExceeded&) {
    return all_nm(R::BudgetExceeded);
  }
  out.equivalence.traces_checked = checked;
  out.soundness.traces_checked = checked;
  out.completeness.traces_checked = checked;
  return out;
}

OracleVerdict check_equivalence(const std::optional<Formula>& f, const std::optional<Formula>& g,
                                const OracleConfig& cfg) {
  if (!f || !g) return OracleVerdict::not_meaningful_because(NotMeaningfulReason::ParseFailure);
  Resolved res = resolve_vocabulary(*f, *g, cfg);
  if (res.mismatch) {
    return OracleVerdict::not_meaningful_because(NotMeaningfulReason::VocabularyMismatch);
  }
  CompiledFormula cf(*f, res.vocab);
  CompiledFormula cg(*g, res.vocab);
  OracleVerdict v;
  std::vector<Outcome> scratch;
  try {
    enumerate_traces(res.vocab, cfg, [&](std::span<const std::uint32_t> states) {
      ++v.traces_checked;
      Outcome a = cf.satisfies(states, scratch);
      Outcome b = cg.satisfies(states, scratch);
      if (a != b) {
        record_failure(v, states, res.vocab, a, b);
        return false;
      }
      return true;
    });
  } catch (const BudgetExceeded&) {
    return OracleVerdict::not_meaningful_because(NotMeaningfulReason::BudgetExceeded);
  }
  return v;
}

OracleVerdict check_entailment(const std::optional<Formula>& premise,
                               const std::optional<Formula>& conclusion, const OracleConfig& cfg) {
  if (!premise || !conclusion) {
    return OracleVerdict::not_meaningful_because(NotMeaningfulReason::ParseFailure);
  }
  Resolved res = resolve_vocabulary(*premise, *conclusion, cfg);
  if (res.mismatch) {
    return OracleVerdict::not_meaningful_because(NotMeaningfulReason::VocabularyMismatch);
  }
  CompiledFormula cp(*premise, res.vocab);
  CompiledFormula cc(*conclusion, res.vocab);
  OracleVerdict v;
  std::vector<Outcome> scratch;
  try {
    enumerate_traces(res.vocab, cfg, [&](std::span<const std::uint32_t> states) {
      ++v.traces_checked;
      Outcome a = cp.satisfies(states, scratch);
      if (a != Outcome::DefinedTrue) return true;
      Outcome b = cc.satisfies(states, scratch);
      if (b != Outcome::DefinedTrue) {
        record_failure(v, states, res.vocab, a, b);
        v.undefined_conclusion = b == Outcome::Undefined;
        return false;
      }
      return true;
    });
  } catch (const BudgetExceeded&) {
    return OracleVerdict::not_meaningful_because(NotMeaningfulReason::BudgetExceeded);
  }
  return v;
}

TraceSearch find_traces(const Formula& f, const OracleConfig& cfg) {
  APVocabulary vocab = collect_aps(f);
  if (!cfg.vocabulary.empty()) vocab = vocabulary_union(cfg.vocabulary, vocab);
  CompiledFormula cf(f, vocab);
  std::optional<Trace> sat;
  std::optional<Trace> viol;
  TraceSearch out;
  std::vector<Outcome> scratch;
  enumerate_traces(vocab, cfg, [&](std::span<const std::uint32_t> states) {
    ++out.traces_checked;
    Outcome o = cf.satisfies(states, scratch);
    if (o == Outcome::Undefined) {
      ++out.undefined_skipped;
    } else if (o == Outcome::DefinedTrue && !sat) {
      sat = decode_trace(states, vocab);
    } else if (o == Outcome::DefinedFalse && !viol) {
      viol = decode_trace(states, vocab);
    }
    return !(sat && viol);
  });
  out.pair = TracePair(f, std::move(sat), std::move(viol));
  return out;
}

}  // namespace ltlbench

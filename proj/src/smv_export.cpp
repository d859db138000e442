#include "ltlbench/smv_export.hpp"

#include <stdexcept>
#include <string_view>

#include "ltlbench/errors.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {

namespace {

constexpr std::string_view kReserved[] = {
    "MODULE", "DEFINE", "MDEFINE", "CONSTANTS", "VAR", "IVAR", "FROZENVAR", "INIT", "TRANS",
    "INVAR", "SPEC", "CTLSPEC", "LTLSPEC", "PSLSPEC", "COMPUTE", "NAME", "INVARSPEC",
    "FAIRNESS", "JUSTICE", "COMPASSION", "ISA", "ASSIGN", "CONSTRAINT", "SIMPWFF", "CTLWFF",
    "LTLWFF", "PSLWFF", "COMPWFF", "IN", "MIN", "MAX", "MIRROR", "PRED", "PREDICATES",
    "process", "array", "of", "boolean", "integer", "real", "word", "case", "esac", "init",
    "next", "self"};

constexpr std::string_view kReservedOperators[] = {
    "TRUE", "FALSE", "mod", "xor", "xnor", "union", "in", "count", "toint", "bool", "word1",
    "signed", "unsigned", "extend", "resize", "sizeof", "uwconst", "swconst", "EX", "AX", "EF",
    "AF", "EG", "AG", "E", "A", "BU", "EBF"};

void check_names(const APVocabulary& vocab) {
  for (const auto& n : vocab.names()) {
    for (auto r : kReserved) {
      if (n == r) throw UnsupportedFeature("proposition '" + n + "' is a NuSMV keyword");
    }
    for (auto r : kReservedOperators) {
      if (n == r) throw UnsupportedFeature("proposition '" + n + "' is a NuSMV keyword");
    }
    // Remaining single-letter temporal operators of NuSMV not in the LTL alphabet.
    if (n == "V" || n == "T" || n == "Z" || n == "ABF" || n == "ABG" || n == "EBG") {
      throw UnsupportedFeature("proposition '" + n + "' is a NuSMV operator");
    }
  }
}

void print_smv(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::True: out += "TRUE"; return;
    case Op::False: out += "FALSE"; return;
    case Op::Not:
      out += "(!";
      print_smv(f.child(), out);
      out += ')';
      return;
    default: break;
  }
  out += '(';
  if (is_unary(f.op())) {
    out += symbol(f.op());
    out += ' ';
    print_smv(f.child(), out);
  } else {
    print_smv(f.left(), out);
    out += ' ';
    out += symbol(f.op());
    out += ' ';
    print_smv(f.right(), out);
  }
  out += ')';
}

std::string frozen_name(const std::string& ap, std::size_t step) {
  return "_" + ap + "_" + std::to_string(step);
}

std::string counter_block(std::size_t steps) {
  std::string last = std::to_string(steps - 1);
  std::string out;
  out += "VAR\n";
  out += "  _step : 0.." + last + ";\n";
  out += "ASSIGN\n";
  out += "  init(_step) := 0;\n";
  out += "  next(_step) := case _step < " + last + " : _step + 1; TRUE : _step; esac;\n";
  return out;
}

// `value(ap, k)` yields the right-hand side for proposition `ap` at step k.
template <typename ValueFn>
std::string define_block(const APVocabulary& vocab, std::size_t steps, ValueFn&& value) {
  std::string out = "DEFINE\n";
  for (const auto& n : vocab.names()) {
    out += "  " + n + " := case";
    for (std::size_t k = 0; k + 1 < steps; ++k) {
      out += " _step = " + std::to_string(k) + " : " + value(n, k) + ";";
    }
    out += " TRUE : " + value(n, steps - 1) + "; esac;\n";
  }
  return out;
}

}  // namespace

std::string smv_formula(const Formula& f) {
  std::string out;
  print_smv(f, out);
  if (out.size() >= 2 && out.front() == '(' && out.back() == ')') {
    out = out.substr(1, out.size() - 2);
  }
  return out;
}

std::string export_checker_query(CheckerQueryKind kind, const Formula& f,
                                 const std::variant<Formula, Trace>& other,
                                 const OracleConfig& cfg) {
  std::string doc;
  if (kind == CheckerQueryKind::TraceCheck) {
    const Trace* trace = std::get_if<Trace>(&other);
    if (trace == nullptr) throw std::invalid_argument("trace_check needs a trace");
    if (trace->empty()) throw UnsupportedFeature("trace_check needs a nonempty trace");
    APVocabulary vocab = collect_aps(f);
    if (!is_complete_for(*trace, vocab)) {
      throw UnsupportedFeature("trace does not assign every proposition of the formula");
    }
    check_names(vocab);
    const std::size_t steps = trace->size();
    doc += "-- ltlbench trace_check, " + std::to_string(steps) + " steps\n";
    doc += "MODULE main\n";
    doc += counter_block(steps);
    if (!vocab.empty()) {
      doc += define_block(vocab, steps, [&](const std::string& ap, std::size_t k) {
        return std::string(*(*trace)[k].lookup(ap) ? "TRUE" : "FALSE");
      });
    }
    doc += "LTLSPEC " + smv_formula(f) + "\n";
    return doc;
  }

  const Formula* g = std::get_if<Formula>(&other);
  if (g == nullptr) throw std::invalid_argument("equivalence/entailment needs a second formula");
  if (cfg.max_trace_length == 0) throw UnsupportedFeature("trace length bound must be positive");
  APVocabulary vocab = cfg.vocabulary.empty()
                           ? vocabulary_union(collect_aps(f), collect_aps(*g))
                           : vocabulary_union(cfg.vocabulary,
                                              vocabulary_union(collect_aps(f), collect_aps(*g)));
  check_names(vocab);
  const std::size_t steps = cfg.max_trace_length;
  const bool equivalence = kind == CheckerQueryKind::Equivalence;
  doc += std::string("-- ltlbench ") + (equivalence ? "equivalence" : "entailment") + ", " +
         std::to_string(steps) + " steps\n";
  doc += "MODULE main\n";
  doc += counter_block(steps);
  if (!vocab.empty()) {
    doc += "FROZENVAR\n";
    for (const auto& n : vocab.names()) {
      for (std::size_t k = 0; k < steps; ++k) doc += "  " + frozen_name(n, k) + " : boolean;\n";
    }
    doc += define_block(vocab, steps, frozen_name);
  }
  doc += "LTLSPEC (" + smv_formula(f) + ") " + (equivalence ? "<->" : "->") + " (" +
         smv_formula(*g) + ")\n";
  return doc;
}

}  // namespace ltlbench

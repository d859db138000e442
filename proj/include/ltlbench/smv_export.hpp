#pragma once

#include <string>
#include <variant>

#include "ltlbench/formula.hpp"
#include "ltlbench/oracle.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

enum class CheckerQueryKind { Equivalence, Entailment, TraceCheck };

/// Renders a self-contained NuSMV input for one query; see docs/smv_export.md
/// for the exact layout. Equivalence/entailment quantify over all traces of
/// length cfg.max_trace_length through frozen per-step variables; trace checks
/// pin those variables to the trace's values.
///
/// Throws UnsupportedFeature when a proposition name collides with a NuSMV
/// keyword, the trace is empty or incomplete, or the length bound is zero.
std::string export_checker_query(CheckerQueryKind kind, const Formula& f,
                                 const std::variant<Formula, Trace>& other,
                                 const OracleConfig& cfg);

/// Formula body in NuSMV syntax: print_ltl with TRUE/FALSE literals and the
/// outermost parentheses removed.
std::string smv_formula(const Formula& f);

}  // namespace ltlbench

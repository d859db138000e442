#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "ltlbench/formula.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

/// One entry of an atomic-proposition mapping: variable name and NL phrase.
struct ApBinding {
  std::string var;
  std::string phrase;

  friend bool operator==(const ApBinding&, const ApBinding&) = default;
};

enum class Tense { Future, Past };

struct Nl2LtlItem {
  std::string id;
  std::string nl;
  std::vector<ApBinding> ap_map;
  Formula gt_formula;
  Tense tense = Tense::Future;
  std::optional<std::string> domain_tag;
};

/// formula_text is kept raw; malformed strings are the point of this kind.
struct WffItem {
  std::string id;
  std::string formula_text;
  bool well_formed = false;
  std::optional<std::size_t> ast_depth;
};

struct TraceItem {
  std::string id;
  Formula formula;
  Trace trace;
  bool satisfying = false;  // false: violating
};

struct ApExtractionItem {
  std::string id;
  std::string nl;
  std::vector<std::string> gold_phrases;
  std::optional<Formula> gt_formula;
};

}  // namespace ltlbench

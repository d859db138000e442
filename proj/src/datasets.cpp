#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "ltlbench/datasets.hpp"
#include "ltlbench/semantics.hpp"
#include "ltlbench/syntax.hpp"

namespace ltlbench {

using nlohmann::json;

namespace {

// Field access that reports the line and field name on failure.
class Record {
 public:
  Record(const json& j, std::size_t line) : j_(j), line_(line) {}

  std::string str(const char* field) const {
    const json& v = at(field);
    if (!v.is_string()) throw SchemaError(line_, field, "expected a string");
    return v.get<std::string>();
  }

  std::optional<std::string> opt_str(const char* field) const {
    if (!has(field)) return std::nullopt;
    return str(field);
  }

  std::optional<std::size_t> opt_size(const char* field) const {
    if (!has(field)) return std::nullopt;
    const json& v = j_.at(field);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
      throw SchemaError(line_, field, "expected a non-negative integer");
    }
    return v.get<std::size_t>();
  }

  std::vector<std::string> str_list(const char* field) const {
    const json& v = at(field);
    if (!v.is_array()) throw SchemaError(line_, field, "expected an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
      if (!e.is_string()) throw SchemaError(line_, field, "expected an array of strings");
      out.push_back(e.get<std::string>());
    }
    return out;
  }

  Formula formula(const char* field) const {
    try {
      return parse_ltl(str(field));
    } catch (const SyntaxError& e) {
      throw SchemaError(line_, field, std::string("formula does not parse: ") + e.what());
    }
  }

  const json& at(const char* field) const {
    if (!has(field)) throw SchemaError(line_, field, "missing field");
    return j_.at(field);
  }

  bool has(const char* field) const { return j_.contains(field) && !j_.at(field).is_null(); }
  std::size_t line() const { return line_; }

 private:
  const json& j_;
  std::size_t line_;
};

Nl2LtlItem nl2ltl_from(const Record& r) {
  Nl2LtlItem item{r.str("id"), r.str("nl"), {}, r.formula("gt_formula"), Tense::Future,
                  r.opt_str("domain_tag")};
  const json& map = r.at("ap_map");
  if (!map.is_array()) throw SchemaError(r.line(), "ap_map", "expected an array");
  for (const auto& e : map) {
    if (!e.is_object() || !e.contains("var") || !e.contains("phrase") || !e["var"].is_string() ||
        !e["phrase"].is_string()) {
      throw SchemaError(r.line(), "ap_map", "entries need string fields 'var' and 'phrase'");
    }
    item.ap_map.push_back({e["var"].get<std::string>(), e["phrase"].get<std::string>()});
  }
  std::string tense = r.str("tense");
  if (tense == "future") item.tense = Tense::Future;
  else if (tense == "past") item.tense = Tense::Past;
  else throw SchemaError(r.line(), "tense", "expected \"future\" or \"past\"");
  return item;
}

WffItem wff_from(const Record& r) {
  WffItem item{r.str("id"), r.str("formula_text"), false, r.opt_size("ast_depth")};
  std::string label = r.str("label");
  if (label == "well_formed") item.well_formed = true;
  else if (label != "malformed") throw SchemaError(r.line(), "label", "expected \"well_formed\" or \"malformed\"");
  return item;
}

TraceItem trace_from(const Record& r) {
  Trace trace;
  try {
    trace = parse_trace(r.str("trace"));
  } catch (const TraceFormatError& e) {
    throw SchemaError(r.line(), "trace", e.what());
  }
  TraceItem item{r.str("id"), r.formula("formula"), std::move(trace), false};
  std::string label = r.str("label");
  if (label == "satisfying") item.satisfying = true;
  else if (label != "violating") throw SchemaError(r.line(), "label", "expected \"satisfying\" or \"violating\"");
  return item;
}

ApExtractionItem ap_from(const Record& r) {
  ApExtractionItem item{r.str("id"), r.str("nl"), r.str_list("gold_phrases"), std::nullopt};
  if (r.has("gt_formula")) item.gt_formula = r.formula("gt_formula");
  return item;
}

template <typename Item, typename Convert>
Loaded<Item> read_items(std::istream& in, const std::string& source, const LoadOptions& opts,
                        Convert convert) {
  Loaded<Item> out;
  out.report.source = source;
  std::set<std::string> ids;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (text.find_first_not_of(" \t\r") == std::string::npos) continue;
    ++out.report.records;
    std::string id;
    try {
      json j;
      try {
        j = json::parse(text);
      } catch (const json::parse_error& e) {
        throw SchemaError(line, "", std::string("invalid JSON: ") + e.what());
      }
      if (!j.is_object()) throw SchemaError(line, "", "expected a JSON object");
      Record rec(j, line);
      if (rec.has("id") && j["id"].is_string()) id = j["id"].get<std::string>();
      Item item = convert(rec);
      validate(item);
      if (!ids.insert(item.id).second) throw InvariantViolation(item.id, "duplicate id");
      out.items.push_back(std::move(item));
    } catch (const SchemaError& e) {
      if (!opts.allow_partial) throw;
      out.report.rejected.push_back({line, id, e.what()});
    } catch (const InvariantViolation& e) {
      if (!opts.allow_partial) throw;
      out.report.rejected.push_back({line, e.item_id(), e.what()});
    }
  }
  if (out.report.records == 0) out.report.warnings.push_back(source + ": no records");
  return out;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return in;
}

std::string tsv_field(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else if (c == '\r') out += "\\r";
    else if (c == '\\') out += "\\\\";
    else out += c;
  }
  return out;
}

std::string_view tense_name(Tense t) { return t == Tense::Past ? "past" : "future"; }

}  // namespace

std::string_view to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::Nl2Ltl: return "nl2ltl";
    case DatasetKind::Wff: return "wff";
    case DatasetKind::Trace: return "trace";
    case DatasetKind::ApExtraction: return "ap_extraction";
  }
  return "";
}

std::optional<DatasetKind> parse_dataset_kind(std::string_view name) {
  for (DatasetKind k : {DatasetKind::Nl2Ltl, DatasetKind::Wff, DatasetKind::Trace,
                        DatasetKind::ApExtraction}) {
    if (to_string(k) == name) return k;
  }
  return std::nullopt;
}

void validate(const Nl2LtlItem& item) {
  std::set<std::string> vars;
  for (const auto& b : item.ap_map) {
    if (!is_valid_ap_name(b.var)) throw InvariantViolation(item.id, "illegal variable name '" + b.var + "'");
    if (!vars.insert(b.var).second) throw InvariantViolation(item.id, "variable '" + b.var + "' mapped twice");
  }
  APVocabulary used = collect_aps(item.gt_formula);
  for (const auto& name : used.names()) {
    if (!vars.count(name)) {
      throw InvariantViolation(item.id, "gt_formula uses unmapped proposition '" + name + "'");
    }
  }
  if (item.tense == Tense::Future && !is_future_only(item.gt_formula)) {
    throw InvariantViolation(item.id, "future-tense item uses a past operator");
  }
}

void validate(const WffItem& item) {
  WffVerdict v = check_wff(item.formula_text);
  if (v.well_formed != item.well_formed) {
    throw InvariantViolation(item.id, std::string("label says ") +
                                          (item.well_formed ? "well_formed" : "malformed") +
                                          " but the grammar disagrees");
  }
  if (v.well_formed && item.ast_depth && parse_ltl(item.formula_text).depth() != *item.ast_depth) {
    throw InvariantViolation(item.id, "ast_depth does not match the formula");
  }
}

void validate(const TraceItem& item) {
  Outcome o = satisfies(item.formula, item.trace);
  Outcome expected = item.satisfying ? Outcome::DefinedTrue : Outcome::DefinedFalse;
  if (o != expected) {
    throw InvariantViolation(item.id, std::string("label ") +
                                          (item.satisfying ? "satisfying" : "violating") +
                                          " but the trace evaluates to " + std::string(to_string(o)));
  }
}

void validate(const ApExtractionItem& item) {
  if (item.gold_phrases.empty()) throw InvariantViolation(item.id, "gold_phrases is empty");
}

Loaded<Nl2LtlItem> read_nl2ltl(std::istream& in, const std::string& source, const LoadOptions& opts) {
  return read_items<Nl2LtlItem>(in, source, opts, nl2ltl_from);
}
Loaded<WffItem> read_wff(std::istream& in, const std::string& source, const LoadOptions& opts) {
  return read_items<WffItem>(in, source, opts, wff_from);
}
Loaded<TraceItem> read_traces(std::istream& in, const std::string& source, const LoadOptions& opts) {
  return read_items<TraceItem>(in, source, opts, trace_from);
}
Loaded<ApExtractionItem> read_ap_extraction(std::istream& in, const std::string& source,
                                            const LoadOptions& opts) {
  return read_items<ApExtractionItem>(in, source, opts, ap_from);
}

Loaded<Nl2LtlItem> load_nl2ltl(const std::filesystem::path& path, const LoadOptions& opts) {
  auto in = open_input(path);
  return read_nl2ltl(in, path.string(), opts);
}
Loaded<WffItem> load_wff(const std::filesystem::path& path, const LoadOptions& opts) {
  auto in = open_input(path);
  return read_wff(in, path.string(), opts);
}
Loaded<TraceItem> load_traces(const std::filesystem::path& path, const LoadOptions& opts) {
  auto in = open_input(path);
  return read_traces(in, path.string(), opts);
}
Loaded<ApExtractionItem> load_ap_extraction(const std::filesystem::path& path,
                                            const LoadOptions& opts) {
  auto in = open_input(path);
  return read_ap_extraction(in, path.string(), opts);
}

void write_jsonl(std::ostream& out, const std::vector<Nl2LtlItem>& items) {
  for (const auto& it : items) {
    json map = json::array();
    for (const auto& b : it.ap_map) map.push_back({{"var", b.var}, {"phrase", b.phrase}});
    json j = {{"id", it.id}, {"nl", it.nl}, {"ap_map", map},
              {"gt_formula", print_ltl(it.gt_formula)}, {"tense", tense_name(it.tense)}};
    if (it.domain_tag) j["domain_tag"] = *it.domain_tag;
    out << j.dump() << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<WffItem>& items) {
  for (const auto& it : items) {
    json j = {{"id", it.id},
              {"formula_text", it.formula_text},
              {"label", it.well_formed ? "well_formed" : "malformed"}};
    if (it.ast_depth) j["ast_depth"] = *it.ast_depth;
    out << j.dump() << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<TraceItem>& items) {
  for (const auto& it : items) {
    json j = {{"id", it.id},
              {"formula", print_ltl(it.formula)},
              {"trace", print_trace(it.trace)},
              {"label", it.satisfying ? "satisfying" : "violating"}};
    out << j.dump() << '\n';
  }
}

void write_jsonl(std::ostream& out, const std::vector<ApExtractionItem>& items) {
  for (const auto& it : items) {
    json j = {{"id", it.id}, {"nl", it.nl}, {"gold_phrases", it.gold_phrases}};
    if (it.gt_formula) j["gt_formula"] = print_ltl(*it.gt_formula);
    out << j.dump() << '\n';
  }
}

void write_tsv(std::ostream& out, const std::vector<Nl2LtlItem>& items) {
  out << "id\tnl\tap_map\tgt_formula\ttense\tdomain_tag\n";
  for (const auto& it : items) {
    std::string map;
    for (const auto& b : it.ap_map) map += (map.empty() ? "" : "; ") + b.var + "=" + b.phrase;
    out << tsv_field(it.id) << '\t' << tsv_field(it.nl) << '\t' << tsv_field(map) << '\t'
        << print_ltl(it.gt_formula) << '\t' << tense_name(it.tense) << '\t'
        << tsv_field(it.domain_tag.value_or("")) << '\n';
  }
}

void write_tsv(std::ostream& out, const std::vector<WffItem>& items) {
  out << "id\tformula_text\tlabel\tast_depth\n";
  for (const auto& it : items) {
    out << tsv_field(it.id) << '\t' << tsv_field(it.formula_text) << '\t'
        << (it.well_formed ? "well_formed" : "malformed") << '\t'
        << (it.ast_depth ? std::to_string(*it.ast_depth) : "") << '\n';
  }
}

void write_tsv(std::ostream& out, const std::vector<TraceItem>& items) {
  out << "id\tformula\ttrace\tlabel\n";
  for (const auto& it : items) {
    out << tsv_field(it.id) << '\t' << print_ltl(it.formula) << '\t' << print_trace(it.trace)
        << '\t' << (it.satisfying ? "satisfying" : "violating") << '\n';
  }
}

void write_tsv(std::ostream& out, const std::vector<ApExtractionItem>& items) {
  out << "id\tnl\tgold_phrases\tgt_formula\n";
  for (const auto& it : items) {
    std::string phrases;
    for (const auto& p : it.gold_phrases) phrases += (phrases.empty() ? "" : "; ") + p;
    out << tsv_field(it.id) << '\t' << tsv_field(it.nl) << '\t' << tsv_field(phrases) << '\t'
        << (it.gt_formula ? print_ltl(*it.gt_formula) : "") << '\n';
  }
}

}  // namespace ltlbench

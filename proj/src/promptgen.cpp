#include "ltlbench/promptgen.hpp"

#include <fstream>
#include <sstream>

#include "ltlbench/hash.hpp"
#include "ltlbench/syntax.hpp"

#ifndef LTLBENCH_TEMPLATE_DIR
#define LTLBENCH_TEMPLATE_DIR "templates"
#endif

namespace ltlbench {

namespace {

constexpr std::string_view kTaskNames[] = {"nl2pl", "wff", "nl2ltl", "tracechar", "tracegen",
                                           "nl2pltl"};
constexpr std::string_view kInterfaceNames[] = {"minimal", "detailed", "code"};
constexpr std::string_view kStrategyNames[] = {"zero-shot", "few-shot", "self-refine"};

template <typename E, std::size_t N>
std::optional<E> lookup_name(const std::string_view (&names)[N], std::string_view name) {
  for (std::size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<E>(i);
  }
  return std::nullopt;
}

std::string_view template_suffix(Interface i) {
  switch (i) {
    case Interface::Minimal: return "minimal";
    case Interface::Detailed: return "detailed";
    case Interface::CodeCompletion: return "code";
  }
  return "";
}

// Removes every line containing `marker`, newline included.
std::string drop_lines_containing(std::string_view text, std::string_view marker) {
  std::string out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    std::size_t stop = end == std::string_view::npos ? text.size() : end + 1;
    std::string_view line = text.substr(start, stop - start);
    if (line.find(marker) == std::string_view::npos) out.append(line);
    start = stop;
  }
  return out;
}

[[noreturn]] void missing(std::string_view slot, Task task) {
  throw PromptError(PromptErrorKind::MissingSlot, "item lacks '" + std::string(slot) +
                                                      "' required by task " +
                                                      std::string(to_string(task)));
}

}  // namespace

std::string_view to_string(Task t) { return kTaskNames[static_cast<int>(t)]; }
std::string_view to_string(Interface i) { return kInterfaceNames[static_cast<int>(i)]; }
std::string_view to_string(Strategy s) { return kStrategyNames[static_cast<int>(s)]; }
std::optional<Task> parse_task(std::string_view n) { return lookup_name<Task>(kTaskNames, n); }
std::optional<Interface> parse_interface(std::string_view n) {
  return lookup_name<Interface>(kInterfaceNames, n);
}
std::optional<Strategy> parse_strategy(std::string_view n) {
  return lookup_name<Strategy>(kStrategyNames, n);
}

bool interface_supported(Task task, Interface interface) {
  if (interface != Interface::CodeCompletion) return true;
  return task == Task::Nl2Ltl || task == Task::Nl2Pltl || task == Task::TraceChar ||
         task == Task::TraceGen;
}

void PromptSpec::validate() const {
  if (!interface_supported(task, interface)) {
    throw PromptError(PromptErrorKind::InvalidCombination,
                      "interface " + std::string(to_string(interface)) +
                          " is not available for task " + std::string(to_string(task)));
  }
  if (strategy == Strategy::FewShot && exemplars.size() != 3) {
    throw PromptError(PromptErrorKind::InvalidCombination,
                      "few-shot needs exactly 3 exemplars, got " + std::to_string(exemplars.size()));
  }
  if (strategy != Strategy::FewShot && !exemplars.empty()) {
    throw PromptError(PromptErrorKind::InvalidCombination, "exemplars given without few-shot");
  }
  if (ap_free && task != Task::Nl2Ltl && task != Task::Nl2Pltl) {
    throw PromptError(PromptErrorKind::InvalidCombination,
                      "AP-free mode only applies to nl2ltl and nl2pltl");
  }
}

PromptInput prompt_input(const Nl2LtlItem& item) {
  PromptInput in;
  in.nl = item.nl;
  in.ap_map = item.ap_map;
  in.formula = item.gt_formula;
  return in;
}

PromptInput prompt_input(const WffItem& item) {
  PromptInput in;
  in.formula_text = item.formula_text;
  return in;
}

PromptInput prompt_input(const TraceItem& item) {
  PromptInput in;
  in.formula = item.formula;
  in.trace = item.trace;
  return in;
}

PromptInput prompt_input(const ApExtractionItem& item) {
  PromptInput in;
  in.nl = item.nl;
  return in;
}

TemplateStore::TemplateStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path TemplateStore::default_dir() { return LTLBENCH_TEMPLATE_DIR; }

const std::string& TemplateStore::get(const std::string& id) const {
  std::lock_guard lock(mu_);
  auto it = cache_.find(id);
  if (it != cache_.end()) return it->second;
  std::ifstream in(dir_ / (id + ".txt"), std::ios::binary);
  if (!in) {
    throw PromptError(PromptErrorKind::TemplateNotFound,
                      "template '" + id + "' not found in " + dir_.string());
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return cache_.emplace(id, buf.str()).first->second;
}

std::string TemplateStore::hash(const std::string& id) const { return sha256_hex(get(id)); }

std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots) {
  std::string out;
  std::size_t i = 0;
  while (i < tmpl.size()) {
    std::size_t open = tmpl.find("{{", i);
    if (open == std::string_view::npos) break;
    std::size_t close = tmpl.find("}}", open + 2);
    if (close == std::string_view::npos) break;
    std::string name(tmpl.substr(open + 2, close - open - 2));
    auto it = slots.find(name);
    if (it == slots.end()) {
      throw PromptError(PromptErrorKind::MissingSlot, "no value for slot '" + name + "'");
    }
    out.append(tmpl.substr(i, open - i));
    out.append(it->second);
    i = close + 2;
  }
  out.append(tmpl.substr(i));
  return out;
}

std::string render_ap_mapping(const std::vector<ApBinding>& mapping) {
  std::string out;
  for (const auto& b : mapping) {
    if (!out.empty()) out += ", ";
    out += "(" + b.var + " -> \"" + b.phrase + "\")";
  }
  return out;
}

std::string render_formula(const Formula& f, Interface interface) {
  return interface == Interface::CodeCompletion ? print_constructor_form(f) : print_ltl(f);
}

std::string render_trace(const Trace& t, Interface interface) {
  return interface == Interface::CodeCompletion ? print_trace_literal(t) : print_trace(t);
}

namespace {

std::map<std::string, std::string> slots_for(const PromptSpec& spec, const PromptInput& in) {
  std::map<std::string, std::string> slots;
  switch (spec.task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl:
      if (!in.nl) missing("nl", spec.task);
      slots["nl"] = *in.nl;
      if (!spec.ap_free) {
        if (!in.ap_map) missing("ap_map", spec.task);
        slots["ap_mapping"] = render_ap_mapping(*in.ap_map);
      }
      break;
    case Task::Nl2Pl:
      if (!in.nl) missing("nl", spec.task);
      slots["nl"] = *in.nl;
      break;
    case Task::Wff:
      if (!in.formula_text) missing("formula_text", spec.task);
      slots["formula"] = *in.formula_text;
      break;
    case Task::TraceChar:
      if (!in.trace) missing("trace", spec.task);
      slots["trace"] = render_trace(*in.trace, spec.interface);
      [[fallthrough]];
    case Task::TraceGen:
      if (!in.formula) missing("formula", spec.task);
      slots["formula"] = render_formula(*in.formula, spec.interface);
      break;
  }
  return slots;
}

}  // namespace

RenderedPrompt build_prompt(const PromptSpec& spec, const PromptInput& input,
                            const TemplateStore& store) {
  spec.validate();
  RenderedPrompt out;
  out.template_id = std::string(to_string(spec.task)) + "_" +
                    std::string(template_suffix(spec.interface));
  std::string tmpl = store.get(out.template_id);
  out.template_hash = sha256_hex(tmpl);
  if (spec.ap_free) tmpl = drop_lines_containing(tmpl, "{{ap_mapping}}");
  out.slot_values = slots_for(spec, input);
  std::string body = render_template(tmpl, out.slot_values);

  if (spec.strategy == Strategy::FewShot) {
    std::string examples;
    const std::string& example_tmpl = store.get("fewshot_example");
    for (std::size_t i = 0; i < spec.exemplars.size(); ++i) {
      examples += render_template(example_tmpl, {{"index", std::to_string(i + 1)},
                                                 {"input", spec.exemplars[i].input},
                                                 {"answer", spec.exemplars[i].answer}});
    }
    body = render_template(store.get("fewshot_header"), {{"examples", examples}}) + body;
    out.template_hash = sha256_hex(out.template_hash + store.hash("fewshot_header") +
                                   store.hash("fewshot_example"));
  } else if (spec.strategy == Strategy::SelfRefine) {
    out.revision_template = store.get("self_refine");
    out.template_hash = sha256_hex(out.template_hash + store.hash("self_refine"));
  }
  out.text = std::move(body);
  return out;
}

std::string build_revision(const RenderedPrompt& prompt, std::string_view previous_reply) {
  if (!prompt.revision_template) {
    throw PromptError(PromptErrorKind::InvalidCombination, "prompt was not built for self-refine");
  }
  return render_template(*prompt.revision_template, {{"previous_reply", std::string(previous_reply)}});
}

std::string exemplar_input(Task task, Interface interface, const PromptInput& in) {
  PromptSpec spec;
  spec.task = task;
  spec.interface = interface;
  auto slots = slots_for(spec, in);
  switch (task) {
    case Task::Nl2Ltl:
    case Task::Nl2Pltl:
      return "Natural Language: " + slots["nl"] + "\nAtomic Propositions mapping: " +
             slots["ap_mapping"];
    case Task::Nl2Pl: return "Natural Language: " + slots["nl"];
    case Task::Wff:
    case Task::TraceGen: return "Formula: " + slots["formula"];
    case Task::TraceChar: return "Formula: " + slots["formula"] + "\nTrace: " + slots["trace"];
  }
  return {};
}

std::string reference_answer(Interface interface, const Nl2LtlItem& item) {
  if (interface == Interface::CodeCompletion) {
    return "formulaToFind = " + print_constructor_form(item.gt_formula);
  }
  return print_ltl(item.gt_formula);
}

std::string reference_answer(const WffItem& item) { return item.well_formed ? "Yes" : "No"; }

std::string reference_answer(const TraceItem& item) {
  return item.satisfying ? "Yes" : "No";
}

std::string reference_answer(const ApExtractionItem& item) {
  std::string out;
  for (std::size_t i = 0; i < item.gold_phrases.size(); ++i) {
    out += "x" + std::to_string(i + 1) + " -> \"" + item.gold_phrases[i] + "\"\n";
  }
  return out;
}

std::string reference_tracegen_answer(Interface interface, const Trace& satisfying,
                                      const Trace& violating) {
  if (interface == Interface::CodeCompletion) {
    return "satisfyingTrace = " + print_trace_literal(satisfying) +
           "\nviolatingTrace = " + print_trace_literal(violating);
  }
  return "satisfying: " + print_trace(satisfying) + "\nviolating: " + print_trace(violating);
}

}  // namespace ltlbench

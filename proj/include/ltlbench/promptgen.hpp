#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ltlbench/errors.hpp"
#include "ltlbench/formula.hpp"
#include "ltlbench/items.hpp"
#include "ltlbench/oracle.hpp"
#include "ltlbench/trace.hpp"

namespace ltlbench {

enum class Task { Nl2Pl, Wff, Nl2Ltl, TraceChar, TraceGen, Nl2Pltl };
enum class Interface { Minimal, Detailed, CodeCompletion };
enum class Strategy { ZeroShot, FewShot, SelfRefine };

// Names used in files and on the command line: nl2pl wff nl2ltl tracechar
// tracegen nl2pltl / minimal detailed code / zero-shot few-shot self-refine.
std::string_view to_string(Task t);
std::string_view to_string(Interface i);
std::string_view to_string(Strategy s);
std::optional<Task> parse_task(std::string_view name);
std::optional<Interface> parse_interface(std::string_view name);
std::optional<Strategy> parse_strategy(std::string_view name);

/// CodeCompletion exists only for nl2ltl, nl2pltl, tracechar and tracegen.
bool interface_supported(Task task, Interface interface);

struct Exemplar {
  std::string input;
  std::string answer;
};

struct PromptSpec {
  Task task = Task::Nl2Ltl;
  Interface interface = Interface::Minimal;
  Strategy strategy = Strategy::ZeroShot;
  std::vector<Exemplar> exemplars;  // exactly 3 for FewShot
  /// Drop the AP mapping line; the model picks its own variable names.
  bool ap_free = false;

  /// Throws PromptError(InvalidCombination).
  void validate() const;
};

/// Slot values for one item. Which ones are needed depends on the task.
struct PromptInput {
  std::optional<std::string> nl;
  std::optional<std::vector<ApBinding>> ap_map;
  std::optional<std::string> formula_text;  // wff: the raw string under test
  std::optional<Formula> formula;           // tracechar / tracegen
  std::optional<Trace> trace;               // tracechar
};

PromptInput prompt_input(const Nl2LtlItem& item);
PromptInput prompt_input(const WffItem& item);
PromptInput prompt_input(const TraceItem& item);
PromptInput prompt_input(const ApExtractionItem& item);

struct RenderedPrompt {
  std::string text;
  std::string template_id;  // file stem, e.g. "nl2ltl_minimal"
  std::string template_hash;
  std::map<std::string, std::string> slot_values;
  /// SelfRefine only: the second-turn template, filled by build_revision.
  std::optional<std::string> revision_template;
};

/// Reads `<dir>/<id>.txt` once and caches it. Safe for concurrent use.
class TemplateStore {
 public:
  explicit TemplateStore(std::filesystem::path dir = default_dir());

  /// Throws PromptError(TemplateNotFound).
  const std::string& get(const std::string& id) const;
  std::string hash(const std::string& id) const;
  const std::filesystem::path& dir() const { return dir_; }

  /// The templates/ directory of the source tree this library was built from.
  static std::filesystem::path default_dir();

 private:
  std::filesystem::path dir_;
  mutable std::mutex mu_;
  mutable std::map<std::string, std::string> cache_;
};

/// Replaces every `{{name}}`. Throws PromptError(MissingSlot) naming the first
/// placeholder without a value.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& slots);

/// `(x1 -> "phrase one"), (x2 -> "phrase two")`
std::string render_ap_mapping(const std::vector<ApBinding>& mapping);

/// Formula as shown to the model: constructor form for CodeCompletion, infix otherwise.
std::string render_formula(const Formula& f, Interface interface);
/// Trace as shown to the model: Python literal for CodeCompletion, trace text otherwise.
std::string render_trace(const Trace& t, Interface interface);

RenderedPrompt build_prompt(const PromptSpec& spec, const PromptInput& input,
                            const TemplateStore& store);

/// Second SelfRefine turn embedding the model's first reply.
std::string build_revision(const RenderedPrompt& prompt, std::string_view previous_reply);

/// Short task statement of an item, as used inside few-shot exemplars.
std::string exemplar_input(Task task, Interface interface, const PromptInput& input);

/// Correct reply text in the interface's own answer syntax.
std::string reference_answer(Interface interface, const Nl2LtlItem& item);
std::string reference_answer(const WffItem& item);
std::string reference_answer(const TraceItem& item);
std::string reference_answer(const ApExtractionItem& item);
std::string reference_tracegen_answer(Interface interface, const Trace& satisfying,
                                      const Trace& violating);

// ---- reply parsing: every function here is total and never throws ----

struct FormulaReply {
  std::optional<Formula> formula;
  std::string failure;  // non-empty iff formula is absent
};

/// Minimal/Detailed: last non-empty line after fence and label stripping, via
/// parse_ltl. CodeCompletion: the last `formulaToFind =` expression, via
/// parse_constructor_form.
FormulaReply parse_formula_reply(std::string_view text, Interface interface);

enum class Decision { Yes, No, Unparseable };
std::string_view to_string(Decision d);

/// Words accepted as a yes/no answer, compared case-insensitively.
struct DecisionVocabulary {
  std::vector<std::string> yes = {"yes", "y", "true", "well-formed", "wellformed", "valid",
                                  "satisfies", "satisfied", "satisfying"};
  std::vector<std::string> no = {"no", "n", "false", "ill-formed", "illformed", "malformed",
                                 "invalid", "violates", "violated", "violating"};
};

/// Looks at the leading word, then at a final line consisting of one word.
Decision parse_decision_reply(std::string_view text, const DecisionVocabulary& vocab = {});

struct TraceReply {
  std::optional<Trace> satisfying;
  std::optional<Trace> violating;
  /// Exactly one side was recovered.
  bool partial = false;
  std::string failure;  // why a side is missing; empty when both parsed

  bool parsed() const { return satisfying.has_value() || violating.has_value(); }
};

/// Minimal/Detailed: `satisfying: <trace>` and `violating: <trace>` sections.
/// CodeCompletion: `satisfyingTrace = ...` / `violatingTrace = ...` assignments,
/// or one two-element literal (satisfying, violating) whose elements are traces
/// or single states.
TraceReply parse_trace_reply(std::string_view text, Interface interface);

struct PhraseReply {
  std::vector<ApBinding> bindings;
  std::string failure;  // non-empty iff no binding was found
};

/// Lines of the form `x1 -> "phrase"`, optionally parenthesized or bulleted.
PhraseReply parse_phrase_reply(std::string_view text);

}  // namespace ltlbench

#pragma once

#include <cstddef>
#include <initializer_list>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace ltlbench {

/// One tag per production of the LTL grammar (future and past fragments).
enum class Op {
  Atom,
  True,
  False,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  Next,
  Eventually,
  Globally,
  Until,
  Yesterday,
  Once,
  Historically,
  Since,
};

bool is_unary(Op op);
bool is_binary(Op op);
bool is_past(Op op);
bool is_future(Op op);
/// Infix symbol: "&", "U", "X", ... Atoms and literals return their keyword.
std::string_view symbol(Op op);

/// True iff `name` matches [a-zA-Z][a-zA-Z0-9]*.
bool is_valid_ap_name(std::string_view name);

/// Immutable LTL syntax tree. Copies share structure; equality is structural.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula literal(bool value);
  static Formula unary(Op op, Formula child);
  static Formula binary(Op op, Formula left, Formula right);

  Op op() const;
  /// AP name; empty for every other node.
  const std::string& name() const;
  /// The operand of a unary node.
  const Formula& child() const;
  const Formula& left() const;
  const Formula& right() const;

  /// Height of the tree; atoms and literals have depth 0.
  std::size_t depth() const;
  std::size_t size() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator!=(const Formula& a, const Formula& b) { return !(a == b); }

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> children;
  std::size_t depth = 0;
  std::size_t size = 1;
};

// Builders, named after the operator they construct.
Formula ap(std::string name);
Formula top();
Formula bottom();
Formula lnot(Formula f);
Formula land(Formula a, Formula b);
Formula lor(Formula a, Formula b);
Formula implies(Formula a, Formula b);
Formula equiv(Formula a, Formula b);
Formula next(Formula f);
Formula eventually(Formula f);
Formula globally(Formula f);
Formula until(Formula a, Formula b);
Formula yesterday(Formula f);
Formula once(Formula f);
Formula historically(Formula f);
Formula since(Formula a, Formula b);

bool is_future_only(const Formula& f);
bool is_past_only(const Formula& f);
bool contains_op(const Formula& f, Op op);

/// Ordered, duplicate-free set of AP names.
class APVocabulary {
 public:
  APVocabulary() = default;
  APVocabulary(std::initializer_list<std::string> names);

  /// Inserts `name` if absent. Throws std::invalid_argument on an illegal name.
  void insert(const std::string& name);
  bool contains(std::string_view name) const;
  /// Position of `name`, or size() if absent.
  std::size_t index_of(std::string_view name) const;

  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  friend bool operator==(const APVocabulary&, const APVocabulary&) = default;

 private:
  std::vector<std::string> names_;
};

/// Distinct AP names in left-to-right preorder.
APVocabulary collect_aps(const Formula& f);
APVocabulary vocabulary_union(const APVocabulary& a, const APVocabulary& b);

/// Rewrites AP names through `mapping`; names without an entry are kept.
Formula rename_aps(const Formula& f, const std::map<std::string, std::string>& mapping);

/// Replaces every `from` node by the same-arity operator `to`.
Formula swap_operator(const Formula& f, Op from, Op to);

}  // namespace ltlbench

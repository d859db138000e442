#include "ltlbench/formula.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

#include "ltlbench/errors.hpp"

namespace ltlbench {

bool is_unary(Op op) {
  switch (op) {
    case Op::Not:
    case Op::Next:
    case Op::Eventually:
    case Op::Globally:
    case Op::Yesterday:
    case Op::Once:
    case Op::Historically:
      return true;
    default:
      return false;
  }
}

bool is_binary(Op op) {
  switch (op) {
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Equiv:
    case Op::Until:
    case Op::Since:
      return true;
    default:
      return false;
  }
}

bool is_past(Op op) {
  return op == Op::Yesterday || op == Op::Once || op == Op::Historically || op == Op::Since;
}

bool is_future(Op op) {
  return op == Op::Next || op == Op::Eventually || op == Op::Globally || op == Op::Until;
}

std::string_view symbol(Op op) {
  switch (op) {
    case Op::Atom: return "ap";
    case Op::True: return "true";
    case Op::False: return "false";
    case Op::Not: return "!";
    case Op::And: return "&";
    case Op::Or: return "|";
    case Op::Implies: return "->";
    case Op::Equiv: return "<->";
    case Op::Next: return "X";
    case Op::Eventually: return "F";
    case Op::Globally: return "G";
    case Op::Until: return "U";
    case Op::Yesterday: return "Y";
    case Op::Once: return "O";
    case Op::Historically: return "H";
    case Op::Since: return "S";
  }
  return "?";
}

bool is_valid_ap_name(std::string_view name) {
  if (name.empty()) return false;
  auto is_alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z'); };
  auto is_digit = [](char c) { return c >= '0' && c <= '9'; };
  if (!is_alpha(name.front())) return false;
  return std::all_of(name.begin() + 1, name.end(),
                     [&](char c) { return is_alpha(c) || is_digit(c); });
}

const char* to_string(SyntaxErrorKind kind) {
  switch (kind) {
    case SyntaxErrorKind::EmptyInput: return "empty input";
    case SyntaxErrorKind::UnbalancedParentheses: return "unbalanced parentheses";
    case SyntaxErrorKind::MissingOperand: return "missing operand";
    case SyntaxErrorKind::InvalidApToken: return "invalid atomic proposition token";
    case SyntaxErrorKind::UnexpectedToken: return "unexpected token";
    case SyntaxErrorKind::UnknownConstructor: return "unknown constructor";
    case SyntaxErrorKind::WrongArity: return "wrong arity";
    case SyntaxErrorKind::InvalidLiteral: return "invalid literal";
  }
  return "syntax error";
}

SyntaxError::SyntaxError(SyntaxErrorKind kind, std::size_t offset, std::string expected)
    : std::runtime_error(std::string(to_string(kind)) + " at offset " + std::to_string(offset) +
                         (expected.empty() ? "" : ": expected " + expected)),
      kind_(kind),
      offset_(offset),
      expected_(std::move(expected)) {}

LexError::LexError(std::size_t offset, const std::string& token)
    : SyntaxError(SyntaxErrorKind::InvalidApToken, offset,
                  "a name matching [a-zA-Z][a-zA-Z0-9]*, got \"" + token + "\"") {}

TraceFormatError::TraceFormatError(std::size_t offset, const std::string& what)
    : std::runtime_error("trace format error at offset " + std::to_string(offset) + ": " + what),
      offset_(offset) {}

SchemaError::SchemaError(std::size_t line, std::string field, const std::string& what)
    : std::runtime_error("schema error on line " + std::to_string(line) +
                         (field.empty() ? "" : " (field '" + field + "')") + ": " + what),
      line_(line),
      field_(std::move(field)) {}

InvariantViolation::InvariantViolation(std::string item_id, const std::string& reason)
    : std::runtime_error("item '" + item_id + "': " + reason), item_id_(std::move(item_id)) {}

// Formula

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }

Formula Formula::atom(std::string name) {
  if (!is_valid_ap_name(name)) throw LexError(0, name);
  return Formula(std::make_shared<const Node>(Node{Op::Atom, std::move(name), {}}));
}

Formula Formula::literal(bool value) {
  return Formula(std::make_shared<const Node>(Node{value ? Op::True : Op::False, {}, {}}));
}

Formula Formula::unary(Op op, Formula child) {
  if (!is_unary(op)) throw std::invalid_argument("Formula::unary: not a unary operator");
  Node node{op, {}, {std::move(child)}};
  node.depth = node.children[0].depth() + 1;
  node.size = node.children[0].size() + 1;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

Formula Formula::binary(Op op, Formula left, Formula right) {
  if (!is_binary(op)) throw std::invalid_argument("Formula::binary: not a binary operator");
  Node node{op, {}, {std::move(left), std::move(right)}};
  node.depth = std::max(node.children[0].depth(), node.children[1].depth()) + 1;
  node.size = node.children[0].size() + node.children[1].size() + 1;
  return Formula(std::make_shared<const Node>(std::move(node)));
}

const Formula& Formula::child() const {
  if (!is_unary(op())) throw std::logic_error("Formula::child on a non-unary node");
  return node_->children[0];
}

const Formula& Formula::left() const {
  if (!is_binary(op())) throw std::logic_error("Formula::left on a non-binary node");
  return node_->children[0];
}

const Formula& Formula::right() const {
  if (!is_binary(op())) throw std::logic_error("Formula::right on a non-binary node");
  return node_->children[1];
}

std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.op() != b.op() || a.size() != b.size()) return false;
  if (a.op() == Op::Atom) return a.name() == b.name();
  return a.node_->children == b.node_->children;
}

Formula ap(std::string name) { return Formula::atom(std::move(name)); }
Formula top() { return Formula::literal(true); }
Formula bottom() { return Formula::literal(false); }
Formula lnot(Formula f) { return Formula::unary(Op::Not, std::move(f)); }
Formula land(Formula a, Formula b) { return Formula::binary(Op::And, std::move(a), std::move(b)); }
Formula lor(Formula a, Formula b) { return Formula::binary(Op::Or, std::move(a), std::move(b)); }
Formula implies(Formula a, Formula b) {
  return Formula::binary(Op::Implies, std::move(a), std::move(b));
}
Formula equiv(Formula a, Formula b) {
  return Formula::binary(Op::Equiv, std::move(a), std::move(b));
}
Formula next(Formula f) { return Formula::unary(Op::Next, std::move(f)); }
Formula eventually(Formula f) { return Formula::unary(Op::Eventually, std::move(f)); }
Formula globally(Formula f) { return Formula::unary(Op::Globally, std::move(f)); }
Formula until(Formula a, Formula b) {
  return Formula::binary(Op::Until, std::move(a), std::move(b));
}
Formula yesterday(Formula f) { return Formula::unary(Op::Yesterday, std::move(f)); }
Formula once(Formula f) { return Formula::unary(Op::Once, std::move(f)); }
Formula historically(Formula f) { return Formula::unary(Op::Historically, std::move(f)); }
Formula since(Formula a, Formula b) {
  return Formula::binary(Op::Since, std::move(a), std::move(b));
}

bool contains_op(const Formula& f, Op op) {
  if (f.op() == op) return true;
  if (is_unary(f.op())) return contains_op(f.child(), op);
  if (is_binary(f.op())) return contains_op(f.left(), op) || contains_op(f.right(), op);
  return false;
}

namespace {

template <typename Pred>
bool any_node(const Formula& f, Pred pred) {
  if (pred(f.op())) return true;
  if (is_unary(f.op())) return any_node(f.child(), pred);
  if (is_binary(f.op())) return any_node(f.left(), pred) || any_node(f.right(), pred);
  return false;
}

void collect_into(const Formula& f, APVocabulary& out) {
  if (f.op() == Op::Atom) {
    out.insert(f.name());
  } else if (is_unary(f.op())) {
    collect_into(f.child(), out);
  } else if (is_binary(f.op())) {
    collect_into(f.left(), out);
    collect_into(f.right(), out);
  }
}

template <typename Fn>
Formula rebuild(const Formula& f, Fn&& leaf_or_op) {
  if (is_unary(f.op())) {
    return Formula::unary(leaf_or_op(f.op()), rebuild(f.child(), leaf_or_op));
  }
  if (is_binary(f.op())) {
    return Formula::binary(leaf_or_op(f.op()), rebuild(f.left(), leaf_or_op),
                           rebuild(f.right(), leaf_or_op));
  }
  return f;
}

}  // namespace

bool is_future_only(const Formula& f) { return !any_node(f, is_past); }
bool is_past_only(const Formula& f) { return !any_node(f, is_future); }

APVocabulary::APVocabulary(std::initializer_list<std::string> names) {
  for (const auto& n : names) insert(n);
}

void APVocabulary::insert(const std::string& name) {
  if (!is_valid_ap_name(name)) {
    throw std::invalid_argument("illegal atomic proposition name: \"" + name + "\"");
  }
  if (!contains(name)) names_.push_back(name);
}

bool APVocabulary::contains(std::string_view name) const { return index_of(name) < size(); }

std::size_t APVocabulary::index_of(std::string_view name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  return static_cast<std::size_t>(it - names_.begin());
}

APVocabulary collect_aps(const Formula& f) {
  APVocabulary out;
  collect_into(f, out);
  return out;
}

APVocabulary vocabulary_union(const APVocabulary& a, const APVocabulary& b) {
  APVocabulary out = a;
  for (const auto& n : b.names()) out.insert(n);
  return out;
}

Formula rename_aps(const Formula& f, const std::map<std::string, std::string>& mapping) {
  if (f.op() == Op::Atom) {
    auto it = mapping.find(f.name());
    return it == mapping.end() ? f : ap(it->second);
  }
  if (is_unary(f.op())) return Formula::unary(f.op(), rename_aps(f.child(), mapping));
  if (is_binary(f.op())) {
    return Formula::binary(f.op(), rename_aps(f.left(), mapping), rename_aps(f.right(), mapping));
  }
  return f;
}

Formula swap_operator(const Formula& f, Op from, Op to) {
  if (is_unary(from) != is_unary(to) || is_binary(from) != is_binary(to)) {
    throw std::invalid_argument("swap_operator: arity mismatch");
  }
  return rebuild(f, [&](Op op) { return op == from ? to : op; });
}

}  // namespace ltlbench

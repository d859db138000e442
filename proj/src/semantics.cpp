#include "ltlbench/semantics.hpp"

namespace ltlbench {

std::string_view to_string(Outcome o) {
  switch (o) {
    case Outcome::DefinedTrue: return "DefinedTrue";
    case Outcome::DefinedFalse: return "DefinedFalse";
    case Outcome::Undefined: return "Undefined";
  }
  return "?";
}

namespace {

using Instr = CompiledFormula::Instr;

constexpr Outcome T = Outcome::DefinedTrue;
constexpr Outcome F = Outcome::DefinedFalse;
constexpr Outcome U = Outcome::Undefined;

std::int32_t flatten(const Formula& f, const APVocabulary& vocab, std::vector<Instr>& prog) {
  Instr ins{f.op()};
  if (f.op() == Op::Atom) {
    std::size_t k = vocab.index_of(f.name());
    ins.atom = k < vocab.size() ? static_cast<std::int32_t>(k) : -1;
  } else if (is_unary(f.op())) {
    ins.lhs = flatten(f.child(), vocab, prog);
  } else if (is_binary(f.op())) {
    ins.lhs = flatten(f.left(), vocab, prog);
    ins.rhs = flatten(f.right(), vocab, prog);
  }
  prog.push_back(ins);
  return static_cast<std::int32_t>(prog.size() - 1);
}

Outcome combine(Op op, Outcome l, Outcome r) {
  if (l == U || r == U) return U;
  bool a = l == T;
  bool b = r == T;
  switch (op) {
    case Op::And: return from_bool(a && b);
    case Op::Or: return from_bool(a || b);
    case Op::Implies: return from_bool(!a || b);
    case Op::Equiv: return from_bool(a == b);
    default: return U;
  }
}

// Fills one row of n outcomes per instruction. Every temporal operator is a
// single linear sweep whose carried state reproduces the reference scan order.
template <typename AtomFn>
void run_program(const std::vector<Instr>& prog, std::size_t n, AtomFn&& atom,
                 std::vector<Outcome>& rows) {
  rows.resize(prog.size() * n);
  for (std::size_t k = 0; k < prog.size(); ++k) {
    const Instr& ins = prog[k];
    Outcome* r = rows.data() + k * n;
    const Outcome* a = ins.lhs >= 0 ? rows.data() + ins.lhs * n : nullptr;
    const Outcome* b = ins.rhs >= 0 ? rows.data() + ins.rhs * n : nullptr;
    switch (ins.op) {
      case Op::Atom:
        for (std::size_t p = 0; p < n; ++p) r[p] = ins.atom < 0 ? U : atom(ins.atom, p);
        break;
      case Op::True:
        for (std::size_t p = 0; p < n; ++p) r[p] = T;
        break;
      case Op::False:
        for (std::size_t p = 0; p < n; ++p) r[p] = F;
        break;
      case Op::Not:
        for (std::size_t p = 0; p < n; ++p) r[p] = a[p] == U ? U : (a[p] == T ? F : T);
        break;
      case Op::And:
      case Op::Or:
      case Op::Implies:
      case Op::Equiv:
        for (std::size_t p = 0; p < n; ++p) r[p] = combine(ins.op, a[p], b[p]);
        break;
      case Op::Next:
        for (std::size_t p = 0; p < n; ++p) r[p] = p + 1 < n ? a[p + 1] : U;
        break;
      case Op::Yesterday:
        for (std::size_t p = 0; p < n; ++p) r[p] = p >= 1 ? a[p - 1] : F;
        break;
      case Op::Eventually:
        // First non-DefinedFalse child at or after p decides.
        for (std::size_t p = n; p-- > 0;) r[p] = a[p] != F ? a[p] : (p + 1 < n ? r[p + 1] : F);
        break;
      case Op::Globally:
        for (std::size_t p = n; p-- > 0;) r[p] = a[p] != T ? a[p] : (p + 1 < n ? r[p + 1] : T);
        break;
      case Op::Once:
        for (std::size_t p = 0; p < n; ++p) r[p] = (p > 0 && r[p - 1] != F) ? r[p - 1] : a[p];
        break;
      case Op::Historically:
        for (std::size_t p = 0; p < n; ++p) r[p] = (p > 0 && r[p - 1] != T) ? r[p - 1] : a[p];
        break;
      case Op::Until: {
        // scan: outcome of the forward search for a right-hand witness starting
        // at p+1 (Undefined, DefinedFalse = none found, DefinedTrue = found).
        Outcome scan = F;
        for (std::size_t p = n; p-- > 0;) {
          if (b[p] != F) {
            r[p] = b[p];
          } else if (scan != T) {
            r[p] = scan;
          } else {
            r[p] = a[p] != T ? a[p] : r[p + 1];
          }
          scan = b[p] != F ? b[p] : scan;
        }
        break;
      }
      case Op::Since: {
        Outcome scan = F;  // backward search result ending at p-1
        for (std::size_t p = 0; p < n; ++p) {
          if (b[p] != F) {
            r[p] = b[p];
          } else if (scan != T) {
            r[p] = scan;
          } else {
            r[p] = r[p - 1] != T ? r[p - 1] : a[p];
          }
          scan = b[p] != F ? b[p] : scan;
        }
        break;
      }
    }
  }
}

}  // namespace

CompiledFormula::CompiledFormula(const Formula& f, const APVocabulary& vocab) {
  program_.reserve(f.size());
  flatten(f, vocab, program_);
}

Outcome CompiledFormula::satisfies(std::span<const std::uint32_t> states,
                                   std::vector<Outcome>& scratch) const {
  const std::size_t n = states.size();
  if (n == 0) return U;
  run_program(
      program_, n,
      [&](std::int32_t k, std::size_t p) { return from_bool((states[p] >> k) & 1U); }, scratch);
  return scratch[(program_.size() - 1) * n];
}

std::vector<Outcome> eval_positions(const Formula& f, const Trace& trace) {
  const std::size_t n = trace.size();
  if (n == 0) return {};
  APVocabulary vocab = collect_aps(f);
  std::vector<Instr> prog;
  prog.reserve(f.size());
  flatten(f, vocab, prog);
  std::vector<Outcome> rows;
  run_program(
      prog, n,
      [&](std::int32_t k, std::size_t p) {
        auto v = trace[p].lookup(vocab.names()[static_cast<std::size_t>(k)]);
        return v ? from_bool(*v) : U;
      },
      rows);
  const Outcome* root = rows.data() + (prog.size() - 1) * n;
  return {root, root + n};
}

Outcome eval_at(const Formula& f, const Trace& trace, std::ptrdiff_t pos) {
  if (pos < 0 || static_cast<std::size_t>(pos) >= trace.size()) return U;
  return eval_positions(f, trace)[static_cast<std::size_t>(pos)];
}

Outcome satisfies(const Formula& f, const Trace& trace) { return eval_at(f, trace, 0); }

// --- reference transcription -------------------------------------------------

namespace {

bool out_of_range(const Trace& t, std::ptrdiff_t pos) {
  return pos < 0 || pos >= static_cast<std::ptrdiff_t>(t.size());
}

Outcome proposition_at(const std::string& name, const Trace& t, std::ptrdiff_t pos) {
  if (out_of_range(t, pos)) return U;
  for (const auto& [var, val] : t[static_cast<std::size_t>(pos)].assignments()) {
    if (var == name) return from_bool(val);
  }
  return U;
}

}  // namespace

Outcome eval_reference(const Formula& f, const Trace& t, std::ptrdiff_t pos) {
  const auto len = static_cast<std::ptrdiff_t>(t.size());
  switch (f.op()) {
    case Op::Atom:
      if (out_of_range(t, pos)) return U;
      return proposition_at(f.name(), t, pos);
    case Op::True:
      if (out_of_range(t, pos)) return U;
      return T;
    case Op::False:
      if (out_of_range(t, pos)) return U;
      return F;
    case Op::Not: {
      if (out_of_range(t, pos)) return U;
      Outcome inner = eval_reference(f.child(), t, pos);
      if (inner == U) return U;
      return inner == T ? F : T;
    }
    case Op::And:
    case Op::Or:
    case Op::Implies:
    case Op::Equiv: {
      if (out_of_range(t, pos)) return U;
      Outcome l = eval_reference(f.left(), t, pos);
      Outcome r = eval_reference(f.right(), t, pos);
      if (l != U && r != U) {
        bool lv = l == T;
        bool rv = r == T;
        if (f.op() == Op::And) return from_bool(lv && rv);
        if (f.op() == Op::Or) return from_bool(lv || rv);
        if (f.op() == Op::Implies) return from_bool(!lv || rv);
        return from_bool(lv == rv);
      }
      return U;  // (ReallyNone, _) and (_, ReallyNone)
    }
    case Op::Since: {
      if (out_of_range(t, pos)) return U;
      bool found_b = false;
      std::ptrdiff_t i = pos;
      while (i >= 0) {
        Outcome e = eval_reference(f.right(), t, i);
        if (e == U) return U;
        if (e == T) {
          found_b = true;
          break;
        }
        i -= 1;
      }
      if (!found_b) return F;
      std::ptrdiff_t j = i + 1;
      while (j <= pos) {
        Outcome e = eval_reference(f.left(), t, j);
        if (e == U) return U;
        if (e == F) return F;
        j += 1;
      }
      return T;
    }
    case Op::Until: {
      if (out_of_range(t, pos)) return U;
      bool found_b = false;
      std::ptrdiff_t i = pos;
      while (i < len) {
        Outcome e = eval_reference(f.right(), t, i);
        if (e == U) return U;
        if (e == T) {
          found_b = true;
          break;
        }
        i += 1;
      }
      if (!found_b) return F;
      std::ptrdiff_t j = pos;
      while (j < i) {
        Outcome e = eval_reference(f.left(), t, j);
        if (e == U) return U;
        if (e == F) return F;
        j += 1;
      }
      return T;
    }
    case Op::Next:
      if (out_of_range(t, pos)) return U;
      if (pos + 1 < len) return eval_reference(f.child(), t, pos + 1);
      return U;
    case Op::Globally:
      if (out_of_range(t, pos)) return U;
      for (std::ptrdiff_t i = pos; i < len; ++i) {
        Outcome e = eval_reference(f.child(), t, i);
        if (e == U) return U;
        if (e == F) return F;
      }
      return T;
    case Op::Eventually:
      if (out_of_range(t, pos)) return U;
      for (std::ptrdiff_t i = pos; i < len; ++i) {
        Outcome e = eval_reference(f.child(), t, i);
        if (e == U) return U;
        if (e == T) return T;
      }
      return F;
    case Op::Once:
      if (out_of_range(t, pos)) return U;
      for (std::ptrdiff_t i = 0; i < pos + 1; ++i) {
        Outcome e = eval_reference(f.child(), t, i);
        if (e == U) return U;
        if (e == T) return T;
      }
      return F;
    case Op::Historically:
      if (out_of_range(t, pos)) return U;
      for (std::ptrdiff_t i = 0; i < pos + 1; ++i) {
        Outcome e = eval_reference(f.child(), t, i);
        if (e == U) return U;
        if (e == F) return F;
      }
      return T;
    case Op::Yesterday:
      if (out_of_range(t, pos)) return U;
      if (pos >= 1) return eval_reference(f.child(), t, pos - 1);
      return F;
  }
  return U;
}

}  // namespace ltlbench

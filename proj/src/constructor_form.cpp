#include <cctype>
#include <string>
#include <vector>

#include "ltlbench/syntax.hpp"

namespace ltlbench {

namespace {

struct Constructor {
  std::string_view name;
  Op op;
  int arity;
};

// Wire names of the code-completion interface.
constexpr Constructor kConstructors[] = {
    {"AtomicProposition", Op::Atom, 1},
    {"Literal", Op::True, 1},
    {"LNot", Op::Not, 1},
    {"LAnd", Op::And, 2},
    {"LOr", Op::Or, 2},
    {"LImplies", Op::Implies, 2},
    {"LEquiv", Op::Equiv, 2},
    {"Since", Op::Since, 2},
    {"Until", Op::Until, 2},
    {"Next", Op::Next, 1},
    {"Always", Op::Globally, 1},
    {"Eventually", Op::Eventually, 1},
    {"Once", Op::Once, 1},
    {"Historically", Op::Historically, 1},
    {"Yesterday", Op::Yesterday, 1},
};

std::string_view constructor_name(Op op) {
  if (op == Op::False) op = Op::True;
  for (const auto& c : kConstructors) {
    if (c.op == op) return c.name;
  }
  return "?";
}

enum class CTok { Ident, String, LParen, RParen, Comma, Assign, End };

struct CToken {
  CTok kind;
  std::size_t offset;
  std::string text;
};

std::vector<CToken> lex_constructor(std::string_view s) {
  std::vector<CToken> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (c == '(' || c == ')' || c == ',' || c == '=') {
      CTok k = c == '(' ? CTok::LParen : c == ')' ? CTok::RParen : c == ',' ? CTok::Comma : CTok::Assign;
      out.push_back({k, start, std::string(1, c)});
      ++i;
      continue;
    }
    if (c == '"' || c == '\'') {
      ++i;
      std::string value;
      while (i < s.size() && s[i] != c) {
        if (s[i] == '\\' && i + 1 < s.size()) ++i;
        value.push_back(s[i++]);
      }
      if (i >= s.size()) {
        throw SyntaxError(SyntaxErrorKind::UnexpectedToken, start, "a closing quote");
      }
      ++i;
      out.push_back({CTok::String, start, std::move(value)});
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      while (i < s.size() && (std::isalnum(static_cast<unsigned char>(s[i])) || s[i] == '_')) ++i;
      out.push_back({CTok::Ident, start, std::string(s.substr(start, i - start))});
      continue;
    }
    throw SyntaxError(SyntaxErrorKind::UnexpectedToken, start,
                      "a constructor call, got '" + std::string(1, c) + "'");
  }
  out.push_back({CTok::End, s.size(), ""});
  return out;
}

class ConstructorParser {
 public:
  explicit ConstructorParser(std::vector<CToken> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    if (peek().kind == CTok::End) {
      throw SyntaxError(SyntaxErrorKind::EmptyInput, 0, "a constructor expression");
    }
    if (peek().kind == CTok::Ident && peek().text == "formulaToFind" &&
        toks_[pos_ + 1].kind == CTok::Assign) {
      pos_ += 2;
    }
    Formula f = parse_call(0);
    const CToken& t = peek();
    if (t.kind == CTok::RParen) {
      throw SyntaxError(SyntaxErrorKind::UnbalancedParentheses, t.offset, "end of input");
    }
    if (t.kind != CTok::End) {
      throw SyntaxError(SyntaxErrorKind::UnexpectedToken, t.offset, "end of input");
    }
    return f;
  }

 private:
  const CToken& peek() const { return toks_[pos_]; }
  const CToken& take() { return toks_[pos_++]; }

  Formula parse_call(std::size_t nesting) {
    const CToken& head = take();
    if (head.kind == CTok::End) {
      throw SyntaxError(SyntaxErrorKind::MissingOperand, head.offset, "a constructor call");
    }
    if (head.kind != CTok::Ident) {
      throw SyntaxError(SyntaxErrorKind::UnexpectedToken, head.offset, "a constructor name");
    }
    if (nesting > 2000) {
      throw SyntaxError(SyntaxErrorKind::UnexpectedToken, head.offset, "shallower nesting");
    }
    const Constructor* ctor = nullptr;
    for (const auto& c : kConstructors) {
      if (c.name == head.text) ctor = &c;
    }
    if (ctor == nullptr) {
      throw SyntaxError(SyntaxErrorKind::UnknownConstructor, head.offset,
                        "a known constructor, got '" + head.text + "'");
    }
    const CToken& open = take();
    if (open.kind != CTok::LParen) {
      throw SyntaxError(SyntaxErrorKind::UnexpectedToken, open.offset,
                        "'(' after " + head.text);
    }

    if (ctor->op == Op::Atom || ctor->op == Op::True) {
      const CToken& arg = take();
      if (arg.kind != CTok::String) {
        throw SyntaxError(SyntaxErrorKind::WrongArity, arg.offset,
                          head.text + " takes exactly one string argument");
      }
      close_call(*ctor, head);
      if (ctor->op == Op::Atom) {
        if (!is_valid_ap_name(arg.text)) throw LexError(arg.offset, arg.text);
        return ap(arg.text);
      }
      const std::string& v = arg.text;
      if (v == "True" || v == "true" || v == "TRUE") return top();
      if (v == "False" || v == "false" || v == "FALSE") return bottom();
      throw SyntaxError(SyntaxErrorKind::InvalidLiteral, arg.offset,
                        "\"True\" or \"False\", got \"" + v + "\"");
    }

    std::vector<Formula> args;
    while (true) {
      const CToken& t = peek();
      if (t.kind == CTok::RParen) break;
      if (t.kind == CTok::End) {
        throw SyntaxError(SyntaxErrorKind::UnbalancedParentheses, t.offset,
                          "')' to close " + head.text);
      }
      if (!args.empty()) {
        if (t.kind != CTok::Comma) {
          throw SyntaxError(SyntaxErrorKind::UnexpectedToken, t.offset, "',' or ')'");
        }
        take();
      }
      if (peek().kind == CTok::String) {
        throw SyntaxError(SyntaxErrorKind::UnexpectedToken, peek().offset,
                          head.text + " takes formula arguments, not strings");
      }
      args.push_back(parse_call(nesting + 1));
    }
    if (static_cast<int>(args.size()) != ctor->arity) {
      throw SyntaxError(SyntaxErrorKind::WrongArity, head.offset,
                        head.text + " takes " + std::to_string(ctor->arity) + " argument(s), got " +
                            std::to_string(args.size()));
    }
    take();
    return ctor->arity == 1 ? Formula::unary(ctor->op, args[0])
                            : Formula::binary(ctor->op, args[0], args[1]);
  }

  void close_call(const Constructor& ctor, const CToken& head) {
    const CToken& t = take();
    if (t.kind == CTok::RParen) return;
    if (t.kind == CTok::End) {
      throw SyntaxError(SyntaxErrorKind::UnbalancedParentheses, t.offset,
                        "')' to close " + std::string(ctor.name));
    }
    throw SyntaxError(SyntaxErrorKind::WrongArity, head.offset,
                      std::string(ctor.name) + " takes exactly one string argument");
  }

  std::vector<CToken> toks_;
  std::size_t pos_ = 0;
};

void print_infix(const Formula& f, std::string& out) {
  switch (f.op()) {
    case Op::Atom: out += f.name(); return;
    case Op::True: out += "true"; return;
    case Op::False: out += "false"; return;
    case Op::Not:
      out += "(!";
      print_infix(f.child(), out);
      out += ')';
      return;
    default: break;
  }
  out += '(';
  if (is_unary(f.op())) {
    out += symbol(f.op());
    out += ' ';
    print_infix(f.child(), out);
  } else {
    print_infix(f.left(), out);
    out += ' ';
    out += symbol(f.op());
    out += ' ';
    print_infix(f.right(), out);
  }
  out += ')';
}

void print_ctor(const Formula& f, std::string& out) {
  out += constructor_name(f.op());
  out += '(';
  switch (f.op()) {
    case Op::Atom: out += "\"" + f.name() + "\""; break;
    case Op::True: out += "\"True\""; break;
    case Op::False: out += "\"False\""; break;
    default:
      if (is_unary(f.op())) {
        print_ctor(f.child(), out);
      } else {
        print_ctor(f.left(), out);
        out += ", ";
        print_ctor(f.right(), out);
      }
  }
  out += ')';
}

}  // namespace

std::string strip_code_fences(std::string_view text) {
  std::string out;
  std::size_t i = 0;
  while (i <= text.size()) {
    std::size_t nl = text.find('\n', i);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(i, nl - i);
    std::size_t first = line.find_first_not_of(" \t\r");
    bool fence = first != std::string_view::npos && line.substr(first, 3) == "```";
    if (!fence) {
      out.append(line);
      if (nl < text.size()) out.push_back('\n');
    }
    i = nl + 1;
  }
  // Inline `...` around the whole reply.
  std::size_t a = out.find_first_not_of(" \t\r\n");
  std::size_t b = out.find_last_not_of(" \t\r\n");
  if (a != std::string::npos && b > a && out[a] == '`' && out[b] == '`') {
    out = out.substr(a + 1, b - a - 1);
  }
  return out;
}

Formula parse_constructor_form(std::string_view text) {
  return ConstructorParser(lex_constructor(strip_code_fences(text))).parse();
}

std::string print_ltl(const Formula& f) {
  std::string out;
  print_infix(f, out);
  return out;
}

std::string print_constructor_form(const Formula& f) {
  std::string out;
  print_ctor(f, out);
  return out;
}

}  // namespace ltlbench

#include <cctype>
#include <vector>

#include "ltlbench/syntax.hpp"

namespace ltlbench {

namespace {

enum class Tok {
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Equiv,
  PrefixTemporal,  // X F G Y O H
  InfixTemporal,   // U S
  Ident,
  True,
  False,
  End,
};

struct Token {
  Tok kind;
  std::size_t offset;
  std::string text;
  Op op = Op::Atom;
};

constexpr std::size_t kMaxNesting = 2000;

bool is_word_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

std::vector<Token> lex(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    switch (c) {
      case '(': out.push_back({Tok::LParen, start, "("}); ++i; continue;
      case ')': out.push_back({Tok::RParen, start, ")"}); ++i; continue;
      case '!': out.push_back({Tok::Not, start, "!", Op::Not}); ++i; continue;
      case '&': out.push_back({Tok::And, start, "&", Op::And}); ++i; continue;
      case '|': out.push_back({Tok::Or, start, "|", Op::Or}); ++i; continue;
      default: break;
    }
    if (s.substr(i, 3) == "<->") {
      out.push_back({Tok::Equiv, start, "<->", Op::Equiv});
      i += 3;
      continue;
    }
    if (s.substr(i, 2) == "->") {
      out.push_back({Tok::Implies, start, "->", Op::Implies});
      i += 2;
      continue;
    }
    if (is_word_char(c)) {
      while (i < s.size() && is_word_char(s[i])) ++i;
      std::string word(s.substr(start, i - start));
      if (!is_valid_ap_name(word)) throw LexError(start, word);
      Token t{Tok::Ident, start, word};
      if (word.size() == 1) {
        switch (word[0]) {
          case 'X': t = {Tok::PrefixTemporal, start, word, Op::Next}; break;
          case 'F': t = {Tok::PrefixTemporal, start, word, Op::Eventually}; break;
          case 'G': t = {Tok::PrefixTemporal, start, word, Op::Globally}; break;
          case 'Y': t = {Tok::PrefixTemporal, start, word, Op::Yesterday}; break;
          case 'O': t = {Tok::PrefixTemporal, start, word, Op::Once}; break;
          case 'H': t = {Tok::PrefixTemporal, start, word, Op::Historically}; break;
          case 'U': t = {Tok::InfixTemporal, start, word, Op::Until}; break;
          case 'S': t = {Tok::InfixTemporal, start, word, Op::Since}; break;
          default: break;
        }
      } else if (word == "true" || word == "True" || word == "TRUE") {
        t.kind = Tok::True;
      } else if (word == "false" || word == "False" || word == "FALSE") {
        t.kind = Tok::False;
      }
      out.push_back(std::move(t));
      continue;
    }
    throw SyntaxError(SyntaxErrorKind::UnexpectedToken, start,
                      "an operator, parenthesis or proposition, got '" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, s.size(), ""});
  return out;
}

class InfixParser {
 public:
  explicit InfixParser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse() {
    if (peek().kind == Tok::End) throw SyntaxError(SyntaxErrorKind::EmptyInput, 0, "a formula");
    Formula f = parse_equiv();
    const Token& t = peek();
    if (t.kind == Tok::RParen) {
      throw SyntaxError(SyntaxErrorKind::UnbalancedParentheses, t.offset,
                        "end of input (no matching '(')");
    }
    if (t.kind != Tok::End) {
      throw SyntaxError(SyntaxErrorKind::UnexpectedToken, t.offset,
                        "a binary operator or end of input, got '" + t.text + "'");
    }
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  Formula parse_equiv() {
    Formula lhs = parse_implies();
    if (peek().kind == Tok::Equiv) {
      Guard g(*this, take().offset);
      return equiv(lhs, parse_equiv());
    }
    return lhs;
  }

  Formula parse_implies() {
    Formula lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      Guard g(*this, take().offset);
      return implies(lhs, parse_implies());
    }
    return lhs;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (peek().kind == Tok::Or) {
      take();
      lhs = lor(lhs, parse_and());
    }
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_temporal();
    while (peek().kind == Tok::And) {
      take();
      lhs = land(lhs, parse_temporal());
    }
    return lhs;
  }

  Formula parse_temporal() {
    Formula lhs = parse_unary();
    while (peek().kind == Tok::InfixTemporal) {
      Op op = take().op;
      lhs = Formula::binary(op, lhs, parse_unary());
    }
    return lhs;
  }

  Formula parse_unary() {
    const Token& t = peek();
    if (t.kind == Tok::Not || t.kind == Tok::PrefixTemporal) {
      Op op = take().op;
      Guard g(*this, t.offset);
      return Formula::unary(op, parse_unary());
    }
    return parse_primary();
  }

  Formula parse_primary() {
    const Token& t = take();
    switch (t.kind) {
      case Tok::Ident: return ap(t.text);
      case Tok::True: return top();
      case Tok::False: return bottom();
      case Tok::LParen: {
        if (peek().kind == Tok::RParen) {
          throw SyntaxError(SyntaxErrorKind::MissingOperand, peek().offset,
                            "a formula inside parentheses");
        }
        Guard g(*this, t.offset);
        Formula inner = parse_equiv();
        const Token& close = peek();
        if (close.kind != Tok::RParen) {
          if (close.kind == Tok::End) {
            throw SyntaxError(SyntaxErrorKind::UnbalancedParentheses, close.offset,
                              "')' to close '(' at offset " + std::to_string(t.offset));
          }
          throw SyntaxError(SyntaxErrorKind::UnexpectedToken, close.offset,
                            "')' or a binary operator, got '" + close.text + "'");
        }
        take();
        return inner;
      }
      case Tok::RParen:
        throw SyntaxError(SyntaxErrorKind::MissingOperand, t.offset, "an operand before ')'");
      case Tok::End:
        throw SyntaxError(SyntaxErrorKind::MissingOperand, t.offset,
                          "an operand before end of input");
      case Tok::And:
      case Tok::Or:
      case Tok::Implies:
      case Tok::Equiv:
      case Tok::InfixTemporal:
        throw SyntaxError(SyntaxErrorKind::MissingOperand, t.offset,
                          "a left operand for '" + t.text + "'");
      default:
        throw SyntaxError(SyntaxErrorKind::UnexpectedToken, t.offset, "an operand");
    }
  }

  struct Guard {
    Guard(InfixParser& p, std::size_t offset) : parser(p) {
      if (++parser.nesting_ > kMaxNesting) {
        throw SyntaxError(SyntaxErrorKind::UnexpectedToken, offset, "shallower nesting");
      }
    }
    ~Guard() { --parser.nesting_; }
    InfixParser& parser;
  };

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::size_t nesting_ = 0;
};

}  // namespace

Formula parse_ltl(std::string_view text) { return InfixParser(lex(text)).parse(); }

ParseOutcome try_parse_ltl(std::string_view text) {
  try {
    return {parse_ltl(text), std::nullopt, {}};
  } catch (const SyntaxError& e) {
    return {std::nullopt, e.kind(), e.what()};
  }
}

WffVerdict check_wff(std::string_view text) {
  ParseOutcome r = try_parse_ltl(text);
  if (r.formula) return {true, std::nullopt, {}};
  return {false, r.error_kind, r.error};
}

}  // namespace ltlbench

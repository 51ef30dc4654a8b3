#include "dp2ff/expr.hpp"

#include <cctype>
#include <vector>

namespace dp2ff {

MapExprPtr MapExpr::literal(const Rational& v) {
  auto e = std::make_shared<MapExpr>();
  e->kind = Kind::Literal;
  e->value = v;
  return e;
}

MapExprPtr MapExpr::variable(Kind k) {
  auto e = std::make_shared<MapExpr>();
  e->kind = k;
  return e;
}

MapExprPtr MapExpr::param(std::string name) {
  auto e = std::make_shared<MapExpr>();
  e->kind = Kind::Param;
  e->name = std::move(name);
  return e;
}

MapExprPtr MapExpr::unary_neg(MapExprPtr operand) {
  auto e = std::make_shared<MapExpr>();
  e->kind = Kind::Neg;
  e->lhs = std::move(operand);
  return e;
}

MapExprPtr MapExpr::binary(Kind k, MapExprPtr lhs, MapExprPtr rhs) {
  auto e = std::make_shared<MapExpr>();
  e->kind = k;
  e->lhs = std::move(lhs);
  e->rhs = std::move(rhs);
  return e;
}

MapExprPtr MapExpr::pow(MapExprPtr base, unsigned exponent) {
  auto e = std::make_shared<MapExpr>();
  e->kind = Kind::Pow;
  e->lhs = std::move(base);
  e->exponent = exponent;
  return e;
}

bool equal(const MapExpr& a, const MapExpr& b) {
  if (a.kind != b.kind) return false;
  using K = MapExpr::Kind;
  switch (a.kind) {
    case K::Literal: return a.value == b.value;
    case K::VarX:
    case K::VarY:
    case K::VarN: return true;
    case K::Param: return a.name == b.name;
    case K::Neg: return equal(*a.lhs, *b.lhs);
    case K::Pow: return a.exponent == b.exponent && equal(*a.lhs, *b.lhs);
    default: return equal(*a.lhs, *b.lhs) && equal(*a.rhs, *b.rhs);
  }
}

namespace {

struct Token {
  enum class Type { Nat, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen, End };
  Type type;
  std::string text;
  int line;
  int column;
};

const char* describe(Token::Type t) {
  switch (t) {
    case Token::Type::Nat: return "NAT";
    case Token::Type::Ident: return "IDENT";
    case Token::Type::Plus: return "'+'";
    case Token::Type::Minus: return "'-'";
    case Token::Type::Star: return "'*'";
    case Token::Type::Slash: return "'/'";
    case Token::Type::Caret: return "'^'";
    case Token::Type::LParen: return "'('";
    case Token::Type::RParen: return "')'";
    case Token::Type::End: return "end of input";
  }
  return "?";
}

[[noreturn]] void fail(int line, int column, const std::string& what) {
  throw Error(ErrorCode::ParseError,
              "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

std::vector<Token> tokenize(std::string_view src) {
  std::vector<Token> out;
  int line = 1, column = 1;
  std::size_t i = 0;
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++column;
      ++i;
      continue;
    }
    const int start_col = column;
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      out.push_back({Token::Type::Nat, std::string(src.substr(i, j - i)), line, start_col});
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Token::Type::Ident, std::string(src.substr(i, j - i)), line, start_col});
      column += static_cast<int>(j - i);
      i = j;
      continue;
    }
    Token::Type t;
    switch (c) {
      case '+': t = Token::Type::Plus; break;
      case '-': t = Token::Type::Minus; break;
      case '*': t = Token::Type::Star; break;
      case '/': t = Token::Type::Slash; break;
      case '^': t = Token::Type::Caret; break;
      case '(': t = Token::Type::LParen; break;
      case ')': t = Token::Type::RParen; break;
      default: fail(line, column, std::string("unexpected character '") + c + "'");
    }
    out.push_back({t, std::string(1, c), line, start_col});
    ++column;
    ++i;
  }
  out.push_back({Token::Type::End, "", line, column});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  MapExprPtr parse() {
    auto e = expr();
    if (peek().type != Token::Type::End) {
      unexpected({Token::Type::Plus, Token::Type::Minus, Token::Type::Star, Token::Type::Slash,
                  Token::Type::End});
    }
    return e;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
  }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  [[noreturn]] void unexpected(std::initializer_list<Token::Type> expected) const {
    const Token& t = peek();
    std::string msg = "unexpected ";
    msg += t.type == Token::Type::End ? "end of input" : "'" + t.text + "'";
    msg += "; expected one of {";
    bool first = true;
    for (auto e : expected) {
      if (!first) msg += ", ";
      first = false;
      msg += describe(e);
    }
    msg += "}";
    fail(t.line, t.column, msg);
  }

  MapExprPtr expr() {
    auto lhs = term();
    while (peek().type == Token::Type::Plus || peek().type == Token::Type::Minus) {
      const auto kind = next().type == Token::Type::Plus ? MapExpr::Kind::Add : MapExpr::Kind::Sub;
      lhs = MapExpr::binary(kind, lhs, term());
    }
    return lhs;
  }

  MapExprPtr term() {
    auto lhs = factor();
    while (peek().type == Token::Type::Star || peek().type == Token::Type::Slash) {
      const auto kind = next().type == Token::Type::Star ? MapExpr::Kind::Mul : MapExpr::Kind::Div;
      lhs = MapExpr::binary(kind, lhs, factor());
    }
    return lhs;
  }

  MapExprPtr factor() {
    if (peek().type == Token::Type::Minus) {
      next();
      return MapExpr::unary_neg(factor());
    }
    auto base = atom();
    if (peek().type == Token::Type::Caret) {
      next();
      if (peek().type != Token::Type::Nat) {
        const Token& t = peek();
        fail(t.line, t.column,
             "exponent must be a nonnegative integer literal, got " +
                 (t.type == Token::Type::End ? std::string("end of input") : "'" + t.text + "'"));
      }
      const Token nat = next();
      if (nat.text.size() > 9) fail(nat.line, nat.column, "exponent too large");
      return MapExpr::pow(base, static_cast<unsigned>(std::stoul(nat.text)));
    }
    return base;
  }

  MapExprPtr atom() {
    const Token& t = peek();
    switch (t.type) {
      case Token::Type::Nat: {
        const Token num = next();
        if (peek().type == Token::Type::Slash && peek(1).type == Token::Type::Nat) {
          next();
          const Token den = next();
          if (den.text.find_first_not_of('0') == std::string::npos) {
            fail(den.line, den.column, "zero denominator in rational literal");
          }
          return MapExpr::literal(Rational::parse(num.text + "/" + den.text));
        }
        return MapExpr::literal(Rational::parse(num.text));
      }
      case Token::Type::Ident: {
        const Token id = next();
        if (id.text == "x") return MapExpr::variable(MapExpr::Kind::VarX);
        if (id.text == "y") return MapExpr::variable(MapExpr::Kind::VarY);
        if (id.text == "n") return MapExpr::variable(MapExpr::Kind::VarN);
        return MapExpr::param(id.text);
      }
      case Token::Type::LParen: {
        next();
        auto inner = expr();
        if (peek().type != Token::Type::RParen) {
          unexpected({Token::Type::RParen, Token::Type::Plus, Token::Type::Minus,
                      Token::Type::Star, Token::Type::Slash});
        }
        next();
        return inner;
      }
      default:
        unexpected({Token::Type::Nat, Token::Type::Ident, Token::Type::LParen, Token::Type::Minus});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string operand(const MapExpr& e);

std::string print(const MapExpr& e) {
  using K = MapExpr::Kind;
  switch (e.kind) {
    case K::Literal: return e.value.sign() < 0 ? "(" + e.value.to_string() + ")" : e.value.to_string();
    case K::VarX: return "x";
    case K::VarY: return "y";
    case K::VarN: return "n";
    case K::Param: return e.name;
    case K::Neg: return "(-" + operand(*e.lhs) + ")";
    case K::Pow: return "(" + operand(*e.lhs) + "^" + std::to_string(e.exponent) + ")";
    case K::Add: return "(" + operand(*e.lhs) + "+" + operand(*e.rhs) + ")";
    case K::Sub: return "(" + operand(*e.lhs) + "-" + operand(*e.rhs) + ")";
    case K::Mul: return "(" + operand(*e.lhs) + "*" + operand(*e.rhs) + ")";
    case K::Div: return "(" + operand(*e.lhs) + "/" + operand(*e.rhs) + ")";
  }
  return "?";
}

// Literals are wrapped so that "2/3" never glues two integer operands into
// one rational literal on re-parse.
std::string operand(const MapExpr& e) {
  if (e.kind == MapExpr::Kind::Literal) return "(" + print(e) + ")";
  return print(e);
}

}  // namespace

MapExprPtr parse_map_expr(std::string_view source) { return Parser(tokenize(source)).parse(); }

std::string print_map_expr(const MapExpr& e) { return print(e); }

}  // namespace dp2ff

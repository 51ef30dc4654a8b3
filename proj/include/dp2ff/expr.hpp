#pragma once

// Expression language for user-defined maps.
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' NAT)?
//   atom   := NAT | NAT '/' NAT | 'x' | 'y' | 'n' | IDENT | '(' expr ')'
//
// Identifiers other than x, y, n are parameters bound at evaluation time.

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "dp2ff/numbers.hpp"

namespace dp2ff {

struct MapExpr;
using MapExprPtr = std::shared_ptr<const MapExpr>;

struct MapExpr {
  enum class Kind { Literal, VarX, VarY, VarN, Param, Neg, Add, Sub, Mul, Div, Pow };

  Kind kind = Kind::Literal;
  Rational value;         // Literal
  std::string name;       // Param
  unsigned exponent = 0;  // Pow
  MapExprPtr lhs;         // Neg, binary ops, Pow base
  MapExprPtr rhs;         // binary ops

  static MapExprPtr literal(const Rational& v);
  static MapExprPtr variable(Kind k);
  static MapExprPtr param(std::string name);
  static MapExprPtr unary_neg(MapExprPtr operand);
  static MapExprPtr binary(Kind k, MapExprPtr lhs, MapExprPtr rhs);
  static MapExprPtr pow(MapExprPtr base, unsigned exponent);
};

/// Structural equality.
bool equal(const MapExpr& a, const MapExpr& b);

/// Throws ParseError carrying "line L, column C" and the expected tokens.
MapExprPtr parse_map_expr(std::string_view source);

/// Fully parenthesized; parse_map_expr(print_map_expr(e)) is structurally e.
std::string print_map_expr(const MapExpr& e);

using ParamBindings = std::map<std::string, Rational, std::less<>>;

template <class F>
F power(F base, unsigned exponent) {
  F result = embed(Rational(1), base);
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

/// Evaluates over any carrier with field operations and `embed`.
template <class F>
F evaluate(const MapExpr& e, const F& x, const F& y, long n, const ParamBindings& params) {
  using K = MapExpr::Kind;
  switch (e.kind) {
    case K::Literal: return embed(e.value, x);
    case K::VarX: return x;
    case K::VarY: return y;
    case K::VarN: return embed(Rational(n), x);
    case K::Param: {
      const auto it = params.find(e.name);
      if (it == params.end()) {
        throw Error(ErrorCode::InvalidArgument, "unbound parameter '" + e.name + "'");
      }
      return embed(it->second, x);
    }
    case K::Neg: return -evaluate(*e.lhs, x, y, n, params);
    case K::Add: return evaluate(*e.lhs, x, y, n, params) + evaluate(*e.rhs, x, y, n, params);
    case K::Sub: return evaluate(*e.lhs, x, y, n, params) - evaluate(*e.rhs, x, y, n, params);
    case K::Mul: return evaluate(*e.lhs, x, y, n, params) * evaluate(*e.rhs, x, y, n, params);
    case K::Div: return evaluate(*e.lhs, x, y, n, params) / evaluate(*e.rhs, x, y, n, params);
    case K::Pow: return power(evaluate(*e.lhs, x, y, n, params), e.exponent);
  }
  throw Error(ErrorCode::InvalidArgument, "corrupt expression node");
}

}  // namespace dp2ff

#include "doctest.h"

#include "dp2ff/expr.hpp"
#include "dp2ff/maps.hpp"

using namespace dp2ff;

namespace {

std::string parse_error(const std::string& src) {
  try {
    parse_map_expr(src);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("expr") {
  TEST_CASE("Psi_2 transcribes") {
    const auto e = parse_map_expr("(a*x+1)/(x^2*y)");
    const ParamBindings params{{"a", Rational(1)}};
    CHECK(evaluate(*e, Rational(1), Rational(1), 0, params) == Rational(2));
    const QRTParams q = build_qrt_params(Prime(5), 2, Rational(1));
    const Point<Rational> s{Rational(3) / Rational(4), Rational(-2)};
    CHECK(evaluate(*e, s.x, s.y, 0, params) == qrt_step(s, q).x);
  }

  TEST_CASE("precedence and associativity") {
    const ParamBindings none;
    auto ev = [&](const char* src) { return evaluate(*parse_map_expr(src), Rational(2), Rational(3), 5, none); };
    CHECK(ev("1+2*3") == Rational(7));
    CHECK(ev("8-3-2") == Rational(3));
    CHECK(ev("8/2/2") == Rational(2));
    CHECK(ev("-x^2") == Rational(-4));
    CHECK(ev("2*-y") == Rational(-6));
    CHECK(ev("x^0") == Rational(1));
    CHECK(ev("n*x+y") == Rational(13));
    CHECK(ev("1/2+x") == Rational(5) / Rational(2));
    CHECK(ev("(1+x)*(y-1)") == Rational(6));
  }

  TEST_CASE("parse errors carry position and expected set") {
    const std::string a = parse_error("x+");
    CHECK(a.find("column 3") != std::string::npos);
    CHECK(a.find("expected one of") != std::string::npos);
    CHECK(parse_error("x^y").find("exponent") != std::string::npos);
    CHECK(parse_error("(x").find("')'") != std::string::npos);
    CHECK(parse_error("x $ y").find("column 3") != std::string::npos);
    CHECK(parse_error("x\n+*").find("line 2") != std::string::npos);
    CHECK(parse_error("1/0").find("zero denominator") != std::string::npos);
  }

  TEST_CASE("unbound parameters are reported") {
    const auto e = parse_map_expr("b*x");
    CHECK_THROWS_AS(evaluate(*e, Rational(1), Rational(1), 0, ParamBindings{}), Error);
  }

  TEST_CASE("printer emits fully parenthesized form") {
    const auto e = parse_map_expr("1/2*x - -y^3");
    CHECK(print_map_expr(*e) == "(((1/2)*x)-(-(y^3)))");
    CHECK(equal(*parse_map_expr(print_map_expr(*e)), *e));
    // Integer division must not glue into a rational literal on re-parse.
    const auto d = MapExpr::binary(MapExpr::Kind::Div, MapExpr::literal(Rational(1)),
                                   MapExpr::literal(Rational(2)));
    CHECK(equal(*parse_map_expr(print_map_expr(*d)), *d));
  }
}

#include <doctest.h>

#include "meyer/core.hpp"

using namespace meyer;

TEST_CASE("parse_rational reads decimal literals exactly") {
  CHECK(parse_rational("0.5") == Rational(1, 2));
  CHECK(parse_rational("-2.5e-3") == Rational(-1, 400));
  CHECK(parse_rational("+7") == Rational(7));
  CHECK(parse_rational("1E2") == Rational(100));
  CHECK(parse_rational(" 0.125 ") == Rational(1, 8));
  // Leading zeros must not switch the integer parser to octal.
  CHECK(parse_rational("0414") == Rational(414));
  CHECK(parse_rational("0.0989") == Rational(989, 10000));
  CHECK(parse_rational("000") == Rational(0));
}

TEST_CASE("parse_rational rejects malformed text") {
  for (const char* bad : {"", "-", ".", "1.2.3", "abc", "1e", "1e+", "2x", "1e999999"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_rational(bad), InputError);
  }
}

TEST_CASE("parse_real agrees with the exact parse") {
  CHECK(parse_real("0.1") == 0.1);
  CHECK(parse_real("-3.25") == -3.25);
}

TEST_CASE("split trims and handles empty input") {
  CHECK(split("", ',').empty());
  const auto parts = split(" a, b ,c", ',');
  REQUIRE(parts.size() == 3);
  CHECK(parts[0] == "a");
  CHECK(parts[1] == "b");
  CHECK(parts[2] == "c");
}

TEST_CASE("exact determinant and inverse") {
  const MatrixXr m = parse_matrix("2,1;1,3");
  CHECK(determinant<Rational>(m) == Rational(5));
  const MatrixXr inv = inverse<Rational>(m);
  CHECK(inv(0, 0) == Rational(3, 5));
  CHECK(inv(0, 1) == Rational(-1, 5));
  CHECK(inv(1, 1) == Rational(2, 5));
  CHECK(determinant<Rational>(parse_matrix("1,2;2,4")) == Rational(0));
  CHECK_THROWS_AS(inverse<Rational>(parse_matrix("1,2;2,4")), InputError);
}

TEST_CASE("floating determinant matches Eigen on random matrices") {
  Matrix<double> m = Matrix<double>::Random(4, 4);
  CHECK(determinant<double>(m) == doctest::Approx(m.determinant()).epsilon(1e-12));
  const Matrix<double> prod = inverse<double>(m) * m;
  CHECK((prod - Matrix<double>::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("parse_matrix validates shape") {
  CHECK_THROWS_AS(parse_matrix("1,2;3"), InputError);
  const VectorXr v = parse_vector("1,-0.5");
  CHECK(v[1] == Rational(-1, 2));
}

TEST_CASE("lex_less is a strict order") {
  Vector<double> a(2), b(2);
  a << 1, 2;
  b << 1, 3;
  CHECK(lex_less(a, b));
  CHECK_FALSE(lex_less(b, a));
  CHECK_FALSE(lex_less(a, a));
}

TEST_CASE("format_double") {
  CHECK(format_double(0.0) == "0");
  CHECK(format_double(-0.0) == "0");
  CHECK(format_double(0.25) == "0.25");
}

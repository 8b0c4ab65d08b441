#include "meyer/core.hpp"

#include <cctype>
#include <cstdio>

namespace meyer {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) throw InputError("empty number");
  bool negative = false;
  if (s.front() == '+' || s.front() == '-') {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  long long frac_digits = 0;
  bool seen_point = false;
  bool seen_digit = false;
  std::size_t i = 0;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      digits.push_back(c);
      seen_digit = true;
      if (seen_point) ++frac_digits;
    } else if (c == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!seen_digit) throw InputError("malformed number: '" + std::string(text) + "'");
  // A leading zero would make the integer parser read octal.
  digits.erase(0, std::min(digits.find_first_not_of('0'), digits.size() - 1));
  long long exponent = 0;
  if (i < s.size()) {
    if (s[i] != 'e' && s[i] != 'E') throw InputError("malformed number: '" + std::string(text) + "'");
    const std::string exp_text(s.substr(i + 1));
    if (exp_text.empty()) throw InputError("malformed exponent: '" + std::string(text) + "'");
    std::size_t used = 0;
    try {
      exponent = std::stoll(exp_text, &used);
    } catch (const std::exception&) {
      throw InputError("malformed exponent: '" + std::string(text) + "'");
    }
    if (used != exp_text.size() || std::llabs(exponent) > 400) {
      throw InputError("malformed exponent: '" + std::string(text) + "'");
    }
  }
  using boost::multiprecision::mpz_int;
  mpz_int numerator(digits);
  mpz_int denominator(1);
  const long long shift = exponent - frac_digits;
  if (shift >= 0) {
    numerator *= boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(shift));
  } else {
    denominator = boost::multiprecision::pow(mpz_int(10), static_cast<unsigned>(-shift));
  }
  Rational value(numerator, denominator);
  return negative ? Rational(-value) : value;
}

double parse_real(std::string_view text) { return to_double(parse_rational(text)); }

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> parts;
  if (trim(text).empty()) return parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.emplace_back(trim(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

MatrixXr parse_matrix(std::string_view text) {
  const auto rows = split(text, ';');
  if (rows.empty()) throw InputError("empty matrix");
  const auto first = split(rows.front(), ',');
  MatrixXr m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(first.size()));
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const auto cells = split(rows[r], ',');
    if (cells.size() != first.size()) throw InputError("ragged matrix: '" + std::string(text) + "'");
    for (std::size_t c = 0; c < cells.size(); ++c) {
      m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = parse_rational(cells[c]);
    }
  }
  return m;
}

VectorXr parse_vector(std::string_view text) {
  const auto cells = split(text, ',');
  if (cells.empty()) throw InputError("empty vector");
  VectorXr v(static_cast<Eigen::Index>(cells.size()));
  for (std::size_t i = 0; i < cells.size(); ++i) v[static_cast<Eigen::Index>(i)] = parse_rational(cells[i]);
  return v;
}

std::string format_double(double x) {
  if (x == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace meyer

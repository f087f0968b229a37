#include "zimin/rational.hpp"

#include <cmath>

#include "zimin/error.hpp"

namespace zimin {

Integer ipow(unsigned long base, unsigned long exp) {
  Integer r;
  mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
  return r;
}

Rational qpow(unsigned long base, long exp) {
  if (exp >= 0) return Rational(ipow(base, static_cast<unsigned long>(exp)));
  return make_rational(1, ipow(base, static_cast<unsigned long>(-exp)));
}

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) fail(Errc::invalid_argument, "zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

namespace {

double log10_abs(const Integer& z) {
  long e = 0;
  double d = mpz_get_d_2exp(&e, z.get_mpz_t());
  return std::log10(std::fabs(d)) + static_cast<double>(e) * std::log10(2.0);
}

// Round n/d (d > 0) to the nearest integer, ties to even.
Integer round_half_even(const Integer& n, const Integer& d) {
  Integer q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
  Integer twice = 2 * r;
  int c = cmp(twice, d);
  if (c > 0 || (c == 0 && mpz_odd_p(q.get_mpz_t()))) q += 1;
  return q;
}

}  // namespace

double to_double(const Rational& r) {
  if (r == 0) return 0.0;
  double l = log10_of(abs(r));
  if (l < -300 || l > 300) return (r < 0 ? -1.0 : 1.0) * std::pow(10.0, l);
  return r.get_d();
}

double log10_of(const Rational& r) {
  if (r <= 0) fail(Errc::invalid_argument, "log10 of a nonpositive rational");
  return log10_abs(r.get_num()) - log10_abs(r.get_den());
}

std::string to_decimal(const Rational& r, unsigned digits) {
  Integer scale = ipow(10, digits);
  Integer n = r.get_num() * scale;
  bool neg = n < 0;
  if (neg) n = -n;
  Integer v = round_half_even(n, r.get_den());
  std::string s = v.get_str();
  if (digits > 0) {
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    s.insert(s.size() - digits, ".");
  }
  if (neg && v != 0) s.insert(0, "-");
  return s;
}

std::string to_scientific(const Rational& r, unsigned sig) {
  if (sig == 0) sig = 1;
  if (r == 0) return "0";
  Rational a = abs(r);
  long e = static_cast<long>(std::floor(log10_of(a)));
  auto scaled = [&](long exp) {
    Rational m = a * qpow(10, static_cast<long>(sig) - 1 - exp);
    return round_half_even(m.get_num(), m.get_den());
  };
  Integer m = scaled(e);
  Integer lo = ipow(10, sig - 1), hi = ipow(10, sig);
  if (m >= hi) m = scaled(++e);
  if (m < lo) m = scaled(--e);
  if (m >= hi) {
    m /= 10;
    ++e;
  }
  std::string digits = m.get_str();
  std::string s = digits.substr(0, 1);
  if (digits.size() > 1) s += "." + digits.substr(1);
  s += "e" + std::to_string(e);
  return (r < 0 ? "-" : "") + s;
}

Rational parse_rational(std::string_view text) {
  std::string t(text);
  try {
    if (auto e = t.find_first_of("eE"); e != std::string::npos) {
      std::size_t used = 0;
      long exp = std::stol(t.substr(e + 1), &used);
      if (used != t.size() - e - 1) fail(Errc::parse_error, "not a rational: " + t);
      return parse_rational(t.substr(0, e)) * qpow(10, exp);
    }
    if (auto slash = t.find('/'); slash != std::string::npos)
      return make_rational(Integer(t.substr(0, slash)), Integer(t.substr(slash + 1)));
    if (auto dot = t.find('.'); dot != std::string::npos) {
      std::string frac = t.substr(dot + 1);
      std::string whole = t.substr(0, dot);
      bool neg = !whole.empty() && whole[0] == '-';
      if (whole.empty() || whole == "-" || whole == "+") whole += "0";
      Integer den = ipow(10, frac.size());
      Integer num = Integer(whole) * den;
      Integer f = frac.empty() ? Integer(0) : Integer(frac);
      num += neg ? Integer(-f) : f;
      return make_rational(num, den);
    }
    return Rational(Integer(t));
  } catch (const std::logic_error&) {
    fail(Errc::parse_error, "not a rational: " + t);
  }
}

}  // namespace zimin

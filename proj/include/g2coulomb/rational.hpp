#pragma once

// Exact rational scalars over GMP. Every value is kept canonical:
// lowest terms, denominator > 0, zero stored as 0/1.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace g2c {

class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::invalid_argument("Rational: zero denominator");
    v_.canonicalize();
  }
  explicit Rational(const mpq_class& q) : v_(q) { v_.canonicalize(); }
  explicit Rational(const mpz_class& z) : v_(z) {}

  // Exact value of the double (every finite double is a dyadic rational).
  static Rational from_double(double x) {
    if (!std::isfinite(x)) throw std::invalid_argument("Rational: non-finite double");
    return Rational(mpq_class(x));
  }

  // Accepts "7", "-3/4", or a decimal literal like "0.25" (parsed exactly).
  static Rational parse(const std::string& s) {
    auto r = try_parse(s);
    if (!r) throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    return *r;
  }

  static std::optional<Rational> try_parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+") return std::nullopt;
      mpz_class num;
      if (num.set_str(digits, 10) != 0) return std::nullopt;
      mpz_class den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, frac_len);
      return Rational(mpq_class(num, den));
    }
    mpq_class q;
    if (q.set_str(s, 10) != 0) return std::nullopt;
    if (q.get_den() == 0) return std::nullopt;
    q.canonicalize();
    return Rational(q);
  }

  bool is_zero() const { return v_ == 0; }
  bool is_integer() const { return v_.get_den() == 1; }
  int sign() const { return sgn(v_); }

  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  double to_double() const { return v_.get_d(); }

  // "5" or "-3/7"
  std::string str() const {
    if (is_integer()) return v_.get_num().get_str();
    return v_.get_num().get_str() + "/" + v_.get_den().get_str();
  }

  Rational operator-() const { return Rational(mpq_class(-v_)); }
  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("Rational: division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.v_ < b.v_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.v_ <= b.v_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.v_ > b.v_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.v_ >= b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.str();
  }

  Rational abs() const { return v_ < 0 ? -*this : *this; }

 private:
  mpq_class v_;
};

inline Rational abs(const Rational& r) { return r.abs(); }

}  // namespace g2c

// Exact rational arithmetic: a thin always-canonical wrapper over GMP's mpq_class.
//
// Invariants held by every Rat: lowest terms, positive denominator, zero is 0/1.
// mpq_class does not canonicalize on construction, so all construction funnels
// through canon(); a zero denominator throws std::domain_error.
#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rvl {

class Rat {
 public:
  Rat() : q_(0) {}
  Rat(int v) : q_(v) {}                 // NOLINT: implicit by design, mirrors int
  Rat(long v) : q_(static_cast<signed long>(v)) {}
  Rat(long long v) { q_ = fromLongLong(v); }
  Rat(long long num, long long den) {
    q_ = mpq_class(fromLongLong(num)) / mpq_class(guardDen(fromLongLong(den)));
    q_.canonicalize();
  }
  Rat(const mpz_class& num, const mpz_class& den) {
    q_ = mpq_class(num) / mpq_class(guardDen(den));
  }
  explicit Rat(const mpq_class& q) : q_(q) {
    if (q_.get_den() == 0) throw std::domain_error("Rat: zero denominator");
    q_.canonicalize();
  }

  // Accepts "p", "p/q", and an optional leading '-'; whitespace is rejected.
  static Rat parse(const std::string& s) {
    if (s.empty()) throw std::domain_error("Rat::parse: empty string");
    auto slash = s.find('/');
    const std::string numPart = (slash == std::string::npos) ? s : s.substr(0, slash);
    const std::string denPart = (slash == std::string::npos) ? "1" : s.substr(slash + 1);
    if (!looksIntegral(numPart) || !looksIntegral(denPart))
      throw std::domain_error("Rat::parse: malformed rational '" + s + "'");
    return Rat(mpz_class(numPart), mpz_class(denPart));
  }

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool isZero() const { return sgn(q_) == 0; }
  bool isInteger() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.isZero()) throw std::domain_error("Rat: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) >= 0; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  // Largest integer <= value, as mpz.
  mpz_class floor() const {
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num().get_mpz_t(), den().get_mpz_t());
    return r;
  }

  // "p/q", or "p" when the denominator is 1.
  std::string str() const {
    return isInteger() ? num().get_str() : num().get_str() + "/" + den().get_str();
  }

  // Round-to-nearest decimal with `sig` significant digits ("0" for zero).
  std::string decimal(int sig = 6) const {
    if (isZero()) return "0";
    mpf_class f(0, 64 + static_cast<unsigned>(sig) * 4);
    f = q_;
    mp_exp_t exp10 = 0;
    std::string digits = f.get_str(exp10, 10, static_cast<size_t>(sig));
    std::string sign;
    if (!digits.empty() && digits[0] == '-') {
      sign = "-";
      digits = digits.substr(1);
    }
    while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
    // get_str yields 0.digits * 10^exp10; render without exponent when sane.
    if (exp10 >= 1 && exp10 <= sig + 3) {
      if (static_cast<size_t>(exp10) >= digits.size())
        return sign + digits + std::string(static_cast<size_t>(exp10) - digits.size(), '0');
      return sign + digits.substr(0, static_cast<size_t>(exp10)) + "." +
             digits.substr(static_cast<size_t>(exp10));
    }
    if (exp10 <= 0 && exp10 >= -3)
      return sign + "0." + std::string(static_cast<size_t>(-exp10), '0') + digits;
    std::string mant = digits.substr(0, 1);
    if (digits.size() > 1) mant += "." + digits.substr(1);
    return sign + mant + "e" + std::to_string(exp10 - 1);
  }

  double toDouble() const { return q_.get_d(); }

 private:
  static bool looksIntegral(const std::string& s) {
    if (s.empty()) return false;
    size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  }
  static mpz_class fromLongLong(long long v) {
    // mpz_class has no long long ctor on LP64-agnostic paths; go through strings.
    return mpz_class(std::to_string(v));
  }
  static mpz_class guardDen(const mpz_class& d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    return d;
  }

  mpq_class q_;
};

inline Rat operator""_r(const char* s) { return Rat::parse(s); }
inline Rat operator""_r(const char* s, std::size_t) { return Rat::parse(s); }

}  // namespace rvl

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace loday {

namespace detail {

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

}  // namespace detail

// Ground field descriptor: characteristic 0 means exact rationals,
// characteristic p means the prime field with p elements.
struct FieldDesc {
  long characteristic = 0;

  static FieldDesc rationals() { return FieldDesc{0}; }
  static FieldDesc prime_field(long p) {
    if (!detail::is_prime(p))
      throw std::invalid_argument("field characteristic must be prime, got " + std::to_string(p));
    return FieldDesc{p};
  }
  static FieldDesc parse(const std::string& s) {
    if (s == "Q" || s == "q" || s == "0") return rationals();
    std::string t = (s[0] == 'F' || s[0] == 'f') ? s.substr(1) : s;
    return prime_field(std::stol(t));
  }

  bool is_rational() const { return characteristic == 0; }
  std::string name() const { return characteristic == 0 ? std::string("Q") : "F" + std::to_string(characteristic); }
  friend bool operator==(const FieldDesc&, const FieldDesc&) = default;
};

// Exact rational scalar backed by GMP.
class Rational {
 public:
  Rational() : v_(0) {}
  Rational(long n) : v_(n) {}
  Rational(long num, long den) : v_(num, den) {
    if (den == 0) throw std::domain_error("zero denominator");
    v_.canonicalize();
  }
  explicit Rational(mpq_class v) : v_(std::move(v)) {}

  bool is_zero() const { return sgn(v_) == 0; }
  const mpq_class& value() const { return v_; }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { a += b; return a; }
  friend Rational operator-(Rational a, const Rational& b) { a -= b; return a; }
  friend Rational operator*(Rational a, const Rational& b) { a *= b; return a; }
  friend Rational operator/(Rational a, const Rational& b) { a /= b; return a; }
  Rational operator-() const { return Rational(mpq_class(-v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.v_ != b.v_; }

  std::string str() const { return v_.get_str(); }
  static Rational parse(const std::string& s) {
    mpq_class v;
    if (v.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
    v.canonicalize();
    return Rational(std::move(v));
  }

 private:
  mpq_class v_;
};

// Prime-field scalar. Each value carries its modulus; a default-constructed
// Fp is the detached zero (modulus 0) and adopts the other operand's modulus.
class Fp {
 public:
  Fp() = default;
  Fp(long v, long p) : p_(p) {
    if (p <= 1) throw std::invalid_argument("Fp modulus must be a prime > 1");
    v_ = normalize(v, p);
  }

  bool is_zero() const { return v_ == 0; }
  long value() const { return v_; }
  long modulus() const { return p_; }

  Fp& operator+=(const Fp& o) { long p = merge(o); v_ = p ? (v_ + o.v_) % p : 0; return *this; }
  Fp& operator-=(const Fp& o) { long p = merge(o); v_ = p ? normalize(v_ - o.v_, p) : 0; return *this; }
  Fp& operator*=(const Fp& o) { long p = merge(o); v_ = p ? (v_ * o.v_) % p : 0; return *this; }
  Fp& operator/=(const Fp& o) {
    if (o.is_zero()) throw std::domain_error("division by zero");
    long p = merge(o);
    v_ = (v_ * inverse(o.v_, p)) % p;
    return *this;
  }

  friend Fp operator+(Fp a, const Fp& b) { a += b; return a; }
  friend Fp operator-(Fp a, const Fp& b) { a -= b; return a; }
  friend Fp operator*(Fp a, const Fp& b) { a *= b; return a; }
  friend Fp operator/(Fp a, const Fp& b) { a /= b; return a; }
  Fp operator-() const { Fp r(*this); if (r.p_) r.v_ = normalize(-r.v_, r.p_); return r; }

  friend bool operator==(const Fp& a, const Fp& b) {
    if (a.p_ && b.p_ && a.p_ != b.p_) return false;
    return a.v_ == b.v_;
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  std::string str() const { return std::to_string(v_); }

 private:
  static long normalize(long v, long p) { long r = v % p; return r < 0 ? r + p : r; }
  static long inverse(long a, long p) {
    // extended Euclid
    long t = 0, nt = 1, r = p, nr = a;
    while (nr != 0) {
      long q = r / nr;
      long tmp = t - q * nt; t = nt; nt = tmp;
      tmp = r - q * nr; r = nr; nr = tmp;
    }
    if (r != 1) throw std::domain_error("not invertible mod p");
    return normalize(t, p);
  }
  long merge(const Fp& o) {
    if (p_ && o.p_ && p_ != o.p_) throw std::invalid_argument("mixed Fp moduli");
    if (!p_) p_ = o.p_;
    return p_;
  }

  long v_ = 0;
  long p_ = 0;
};

template <class K>
K scalar_from_long(const FieldDesc& f, long n);

template <>
inline Rational scalar_from_long<Rational>(const FieldDesc&, long n) { return Rational(n); }
template <>
inline Fp scalar_from_long<Fp>(const FieldDesc& f, long n) { return Fp(n, f.characteristic); }

template <class K>
K scalar_parse(const FieldDesc& f, const std::string& s);

template <>
inline Rational scalar_parse<Rational>(const FieldDesc&, const std::string& s) { return Rational::parse(s); }
template <>
inline Fp scalar_parse<Fp>(const FieldDesc& f, const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Fp(std::stol(s), f.characteristic);
  Fp num(std::stol(s.substr(0, slash)), f.characteristic);
  Fp den(std::stol(s.substr(slash + 1)), f.characteristic);
  return num / den;
}

template <class K>
bool scalar_matches_field(const FieldDesc& f);

template <>
inline bool scalar_matches_field<Rational>(const FieldDesc& f) { return f.is_rational(); }
template <>
inline bool scalar_matches_field<Fp>(const FieldDesc& f) { return !f.is_rational(); }

}  // namespace loday

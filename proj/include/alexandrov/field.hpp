#pragma once

#include <Eigen/Core>
#include <gmpxx.h>

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "alexandrov/common.hpp"

namespace alexandrov {

/// Element of a prime field F_p with the modulus carried by the value.
/// A default- or literal-constructed element has modulus 0 ("unattached");
/// it adopts the modulus of the first attached operand it meets. This is
/// what lets Eigen's Scalar(0)/Scalar(1) constants mix with real entries.
class Fp {
 public:
  Fp() = default;
  Fp(long long n) : v_(n) {}  // NOLINT: implicit by design, literal constant
  Fp(long long n, long long p) : v_(reduce(n, p)), p_(p) {}

  long long value() const { return v_; }
  long long modulus() const { return p_; }

  friend Fp operator+(const Fp& a, const Fp& b) {
    long long p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ + b.v_);
    return Fp(reduce(a.v_, p) + reduce(b.v_, p), p);
  }
  friend Fp operator-(const Fp& a, const Fp& b) {
    long long p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ - b.v_);
    return Fp(reduce(a.v_, p) - reduce(b.v_, p), p);
  }
  friend Fp operator*(const Fp& a, const Fp& b) {
    long long p = join(a.p_, b.p_);
    if (p == 0) return Fp(a.v_ * b.v_);
    return Fp(mulmod(reduce(a.v_, p), reduce(b.v_, p), p), p);
  }
  friend Fp operator/(const Fp& a, const Fp& b) { return a * b.inverse(); }
  Fp operator-() const { return p_ == 0 ? Fp(-v_) : Fp(p_ - v_, p_); }
  Fp& operator+=(const Fp& o) { return *this = *this + o; }
  Fp& operator-=(const Fp& o) { return *this = *this - o; }
  Fp& operator*=(const Fp& o) { return *this = *this * o; }
  Fp& operator/=(const Fp& o) { return *this = *this / o; }

  friend bool operator==(const Fp& a, const Fp& b) {
    long long p = join(a.p_, b.p_);
    if (p == 0) return a.v_ == b.v_;
    return reduce(a.v_, p) == reduce(b.v_, p);
  }
  friend bool operator!=(const Fp& a, const Fp& b) { return !(a == b); }

  bool is_zero() const { return p_ == 0 ? v_ == 0 : reduce(v_, p_) == 0; }

  Fp inverse() const {
    if (p_ == 0) {
      if (v_ == 1) return Fp(1);
      if (v_ == -1) return Fp(-1);
      throw BadField("inverse of unattached scalar " + std::to_string(v_));
    }
    long long a = reduce(v_, p_);
    if (a == 0) throw Error("division by zero in F_" + std::to_string(p_));
    // extended Euclid
    long long t = 0, new_t = 1, r = p_, new_r = a;
    while (new_r != 0) {
      long long q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    return Fp(t, p_);
  }

  friend std::ostream& operator<<(std::ostream& os, const Fp& x) {
    return os << (x.p_ == 0 ? x.v_ : reduce(x.v_, x.p_));
  }

 private:
  static long long reduce(long long n, long long p) {
    long long r = n % p;
    return r < 0 ? r + p : r;
  }
  static long long mulmod(long long a, long long b, long long p) {
    return static_cast<long long>((static_cast<__int128>(a) * b) % p);
  }
  static long long join(long long pa, long long pb) {
    if (pa == 0) return pb;
    if (pb == 0) return pa;
    if (pa != pb)
      throw BadField("mixed moduli " + std::to_string(pa) + " and " + std::to_string(pb));
    return pa;
  }

  long long v_ = 0;
  long long p_ = 0;  // 0 = not attached to a field yet
};

/// Exact rational, a plain-value wrapper around GMP's mpq_class.
/// The wrapper exists so that arithmetic returns values rather than gmpxx
/// expression templates, which do not nest inside Eigen expressions.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long long n) : v_(static_cast<long>(n)) {}  // NOLINT: implicit by design
  Rat(long long n, long long d) : v_(static_cast<long>(n), static_cast<long>(d)) {
    if (d == 0) throw Error("rational with zero denominator");
    v_.canonicalize();
  }
  explicit Rat(mpq_class q) : v_(std::move(q)) { v_.canonicalize(); }

  const mpq_class& raw() const { return v_; }
  bool is_zero() const { return sgn(v_) == 0; }

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ + b.v_)); }
  friend Rat operator-(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ - b.v_)); }
  friend Rat operator*(const Rat& a, const Rat& b) { return Rat(mpq_class(a.v_ * b.v_)); }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.is_zero()) throw Error("division by zero rational");
    return Rat(mpq_class(a.v_ / b.v_));
  }
  Rat operator-() const { return Rat(mpq_class(-v_)); }
  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { return *this = *this / o; }
  Rat inverse() const { return Rat(1) / *this; }

  friend bool operator==(const Rat& a, const Rat& b) { return a.v_ == b.v_; }
  friend bool operator!=(const Rat& a, const Rat& b) { return a.v_ != b.v_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.v_; }

 private:
  mpq_class v_;
};

/// Runtime coefficient-field descriptor: F_p for a checked prime p, or Q.
class Field {
 public:
  enum class Kind { prime, rational };

  static Field rationals() { return Field(Kind::rational, 0); }

  static Field prime(long long p) {
    if (!is_prime(p)) throw BadField("not a prime: " + std::to_string(p));
    return Field(Kind::prime, p);
  }

  /// Accepts "q" or "fp:P".
  static Field parse(std::string_view spec) {
    if (spec == "q" || spec == "Q") return rationals();
    if (spec.rfind("fp:", 0) == 0) {
      long long p = 0;
      for (char c : spec.substr(3)) {
        if (c < '0' || c > '9') throw BadField("bad field spec '" + std::string(spec) + "'");
        p = p * 10 + (c - '0');
        if (p > (1LL << 31)) throw BadField("modulus too large in '" + std::string(spec) + "'");
      }
      return prime(p);
    }
    throw BadField("bad field spec '" + std::string(spec) + "' (want q or fp:P)");
  }

  Kind kind() const { return kind_; }
  long long characteristic() const { return p_; }

  std::string to_string() const {
    return kind_ == Kind::rational ? "q" : "fp:" + std::to_string(p_);
  }

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

  static bool is_prime(long long p) {
    if (p < 2) return false;
    for (long long d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  Field(Kind k, long long p) : kind_(k), p_(p) {}
  Kind kind_;
  long long p_;
};

/// Glue between the runtime Field descriptor and the two scalar types.
template <class Scalar>
struct ScalarOps;

template <>
struct ScalarOps<Fp> {
  static constexpr Field::Kind kind = Field::Kind::prime;
  static Fp make(const Field& f, long long num, long long den = 1) {
    Fp x(num, f.characteristic());
    return den == 1 ? x : x / Fp(den, f.characteristic());
  }
  static Fp parse(const Field& f, std::string_view tok);
  static Fp random(const Field& f, Rng& rng) {
    return Fp(static_cast<long long>(rng.below(static_cast<std::uint64_t>(f.characteristic()))),
              f.characteristic());
  }
  static std::string str(const Fp& x) {
    long long p = x.modulus();
    long long v = x.value() % (p == 0 ? 1 : p);
    if (p != 0 && v < 0) v += p;
    return std::to_string(p == 0 ? x.value() : v);
  }
};

template <>
struct ScalarOps<Rat> {
  static constexpr Field::Kind kind = Field::Kind::rational;
  static Rat make(const Field&, long long num, long long den = 1) { return Rat(num, den); }
  static Rat parse(const Field& f, std::string_view tok);
  static Rat random(const Field&, Rng& rng) {
    // small ints with an occasional proper fraction keep elimination honest
    long long num = rng.range(-4, 4);
    long long den = rng.chance(1, 4) ? rng.range(2, 5) : 1;
    return Rat(num, den);
  }
  static std::string str(const Rat& x) {
    return x.raw().get_den() == 1 ? x.raw().get_num().get_str() : x.raw().get_str();
  }
};

inline long long parse_int_token(std::string_view tok, std::string_view what) {
  if (tok.empty()) throw ParseError("empty " + std::string(what));
  std::size_t i = 0;
  bool neg = false;
  if (tok[0] == '-' || tok[0] == '+') {
    neg = tok[0] == '-';
    i = 1;
  }
  if (i == tok.size()) throw ParseError("bad " + std::string(what) + " '" + std::string(tok) + "'");
  long long v = 0;
  for (; i < tok.size(); ++i) {
    if (tok[i] < '0' || tok[i] > '9')
      throw ParseError("bad " + std::string(what) + " '" + std::string(tok) + "'");
    v = v * 10 + (tok[i] - '0');
    if (v > (1LL << 62) / 2) throw ParseError("integer overflow in '" + std::string(tok) + "'");
  }
  return neg ? -v : v;
}

inline Fp ScalarOps<Fp>::parse(const Field& f, std::string_view tok) {
  if (tok.find('/') != std::string_view::npos)
    throw ParseError("fraction '" + std::string(tok) + "' not allowed over " + f.to_string());
  return Fp(parse_int_token(tok, "scalar"), f.characteristic());
}

inline Rat ScalarOps<Rat>::parse(const Field&, std::string_view tok) {
  auto slash = tok.find('/');
  if (slash == std::string_view::npos) return Rat(parse_int_token(tok, "scalar"));
  long long num = parse_int_token(tok.substr(0, slash), "numerator");
  long long den = parse_int_token(tok.substr(slash + 1), "denominator");
  if (den == 0) throw ParseError("zero denominator in '" + std::string(tok) + "'");
  return Rat(num, den);
}

}  // namespace alexandrov

namespace Eigen {

template <>
struct NumTraits<alexandrov::Fp> : GenericNumTraits<alexandrov::Fp> {
  typedef alexandrov::Fp Real;
  typedef alexandrov::Fp NonInteger;
  typedef alexandrov::Fp Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 4,
    MulCost = 6
  };
};

template <>
struct NumTraits<alexandrov::Rat> : GenericNumTraits<alexandrov::Rat> {
  typedef alexandrov::Rat Real;
  typedef alexandrov::Rat NonInteger;
  typedef alexandrov::Rat Nested;
  static inline Real epsilon() { return Real(0); }
  static inline Real dummy_precision() { return Real(0); }
  static inline int digits10() { return 0; }
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 40
  };
};

}  // namespace Eigen

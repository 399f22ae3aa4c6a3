#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <variant>

namespace mqinv {

class Scalar;

/// The working field: the rationals, or a prime field F_p with p >= 5.
///
/// F_p is only used as a randomized identity-testing device; every identity
/// the library checks is an identity over Z, so reducing modulo a prime can
/// only make a true identity look true.
class Field {
 public:
  Field() = default;

  static Field rationals() { return Field(); }
  /// Throws std::invalid_argument unless p is a prime >= 5 below 2^62.
  static Field prime(std::uint64_t p);
  /// Accepts "Q", "rational", "QQ", or a decimal prime ("101", "F_101", "p101").
  static Field parse(const std::string& text);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_integer(const mpz_class& value) const;
  Scalar from_rational(const mpq_class& value) const;

  /// Uniform sample: integers in [-bound, bound] over Q, residues in [0,p) over F_p.
  Scalar random(std::mt19937_64& rng, int bound = 9) const;

  std::string name() const;

  bool operator==(const Field&) const = default;

 private:
  friend class Scalar;
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_ = 0;
};

class Scalar {
 public:
  Scalar() : value_(mpq_class(0)) {}
  explicit Scalar(const mpq_class& q);
  static Scalar residue(std::uint64_t value, std::uint64_t p);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& rhs);
  Scalar& operator-=(const Scalar& rhs);
  Scalar& operator*=(const Scalar& rhs);
  Scalar& operator/=(const Scalar& rhs);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  bool operator==(const Scalar& rhs) const;

  /// Throws std::domain_error on zero.
  Scalar inverse() const;
  Scalar pow(long long exponent) const;

  bool is_rational() const { return value_.index() == 0; }
  const mpq_class& rational() const;
  std::uint64_t residue_value() const;

  /// Integer representative: the value itself over Q (must be an integer),
  /// the residue in [0,p) over F_p.
  mpz_class lift() const;

  /// Canonical text: "3", "-3/4" over Q; the residue in [0,p) over F_p.
  std::string to_string() const;

 private:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
    bool operator==(const Residue&) const = default;
  };

  std::variant<mpq_class, Residue> value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime(std::uint64_t n);

}  // namespace mqinv

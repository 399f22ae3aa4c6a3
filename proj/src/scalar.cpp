#include "mqinv/scalar.hpp"

#include <ostream>
#include <stdexcept>

namespace mqinv {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

u64 mul_mod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 pow_mod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 reduce(const mpz_class& value, u64 p) {
  static_assert(sizeof(unsigned long) == sizeof(u64));
  return mpz_fdiv_ui(value.get_mpz_t(), p);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (u64 small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  u64 d = n - 1;
  int r = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++r;
  }
  for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    u64 x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// --- Field ---------------------------------------------------------------

Field Field::prime(std::uint64_t p) {
  if (p < 5 || p >= (1ULL << 62) || !is_prime(p)) {
    throw std::invalid_argument("field characteristic must be a prime >= 5 below 2^62, got " +
                                std::to_string(p));
  }
  return Field(p);
}

Field Field::parse(const std::string& text) {
  if (text == "Q" || text == "QQ" || text == "rational" || text == "rationals") return rationals();
  std::string digits = text;
  if (digits.rfind("F_", 0) == 0) digits = digits.substr(2);
  else if (!digits.empty() && (digits[0] == 'p' || digits[0] == 'F')) digits = digits.substr(1);
  if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
    throw std::invalid_argument("unrecognized field '" + text + "' (expected Q or a prime)");
  }
  return prime(std::stoull(digits));
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long value) const {
  if (is_rational()) return Scalar(mpq_class(static_cast<long>(value)));
  long long r = value % static_cast<long long>(p_);
  if (r < 0) r += static_cast<long long>(p_);
  return Scalar::residue(static_cast<u64>(r), p_);
}

Scalar Field::from_integer(const mpz_class& value) const {
  if (is_rational()) return Scalar(mpq_class(value));
  return Scalar::residue(reduce(value, p_), p_);
}

Scalar Field::from_rational(const mpq_class& value) const {
  if (is_rational()) return Scalar(value);
  u64 den = reduce(value.get_den(), p_);
  if (den == 0) {
    throw std::domain_error("denominator of " + value.get_str() + " vanishes modulo " +
                            std::to_string(p_));
  }
  return from_integer(value.get_num()) / Scalar::residue(den, p_);
}

Scalar Field::random(std::mt19937_64& rng, int bound) const {
  if (is_rational()) {
    std::uniform_int_distribution<int> dist(-bound, bound);
    return from_int(dist(rng));
  }
  std::uniform_int_distribution<u64> dist(0, p_ - 1);
  return Scalar::residue(dist(rng), p_);
}

std::string Field::name() const { return is_rational() ? "Q" : "F_" + std::to_string(p_); }

// --- Scalar --------------------------------------------------------------

Scalar::Scalar(const mpq_class& q) : value_(q) { std::get<0>(value_).canonicalize(); }

Scalar Scalar::residue(std::uint64_t value, std::uint64_t p) {
  Scalar s;
  s.value_ = Residue{value % p, p};
  return s;
}

Field Scalar::field() const {
  if (is_rational()) return Field::rationals();
  return Field(std::get<1>(value_).modulus);
}

bool Scalar::is_zero() const {
  if (is_rational()) return sgn(std::get<0>(value_)) == 0;
  return std::get<1>(value_).value == 0;
}

bool Scalar::is_one() const {
  if (is_rational()) return std::get<0>(value_) == 1;
  return std::get<1>(value_).value == 1;
}

namespace {

[[noreturn]] void field_mismatch() { throw std::invalid_argument("scalar field mismatch"); }

}  // namespace

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(mpq_class(-std::get<0>(value_)));
  const auto& r = std::get<1>(value_);
  return residue(r.value == 0 ? 0 : r.modulus - r.value, r.modulus);
}

Scalar& Scalar::operator+=(const Scalar& rhs) {
  if (value_.index() != rhs.value_.index()) field_mismatch();
  if (is_rational()) {
    std::get<0>(value_) += std::get<0>(rhs.value_);
  } else {
    auto& a = std::get<1>(value_);
    const auto& b = std::get<1>(rhs.value_);
    if (a.modulus != b.modulus) field_mismatch();
    a.value += b.value;
    if (a.value >= a.modulus) a.value -= a.modulus;
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& rhs) {
  if (value_.index() != rhs.value_.index()) field_mismatch();
  if (is_rational()) {
    std::get<0>(value_) -= std::get<0>(rhs.value_);
  } else {
    auto& a = std::get<1>(value_);
    const auto& b = std::get<1>(rhs.value_);
    if (a.modulus != b.modulus) field_mismatch();
    a.value = a.value >= b.value ? a.value - b.value : a.value + (a.modulus - b.value);
  }
  return *this;
}

Scalar& Scalar::operator*=(const Scalar& rhs) {
  if (value_.index() != rhs.value_.index()) field_mismatch();
  if (is_rational()) {
    std::get<0>(value_) *= std::get<0>(rhs.value_);
  } else {
    auto& a = std::get<1>(value_);
    const auto& b = std::get<1>(rhs.value_);
    if (a.modulus != b.modulus) field_mismatch();
    a.value = mul_mod(a.value, b.value, a.modulus);
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& rhs) { return *this *= rhs.inverse(); }

bool Scalar::operator==(const Scalar& rhs) const {
  if (value_.index() != rhs.value_.index()) return false;
  if (is_rational()) return std::get<0>(value_) == std::get<0>(rhs.value_);
  return std::get<1>(value_) == std::get<1>(rhs.value_);
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero");
  if (is_rational()) return Scalar(mpq_class(1) / std::get<0>(value_));
  const auto& r = std::get<1>(value_);
  return residue(pow_mod(r.value, r.modulus - 2, r.modulus), r.modulus);
}

Scalar Scalar::pow(long long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  Scalar result = field().one();
  Scalar base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    base *= base;
    exponent >>= 1;
  }
  return result;
}

const mpq_class& Scalar::rational() const {
  if (!is_rational()) throw std::logic_error("scalar is not rational");
  return std::get<0>(value_);
}

std::uint64_t Scalar::residue_value() const {
  if (is_rational()) throw std::logic_error("scalar is not a residue");
  return std::get<1>(value_).value;
}

mpz_class Scalar::lift() const {
  if (is_rational()) {
    const auto& q = std::get<0>(value_);
    if (q.get_den() != 1) throw std::domain_error("cannot lift non-integer rational " + q.get_str());
    return q.get_num();
  }
  return mpz_class(static_cast<unsigned long>(std::get<1>(value_).value));
}

std::string Scalar::to_string() const {
  if (is_rational()) return std::get<0>(value_).get_str();
  return std::to_string(std::get<1>(value_).value);
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace mqinv

#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "mqinv/scalar.hpp"

namespace mqinv {

/// An indeterminate: either the entry x[arrow,row,col] of a generic matrix
/// (1-based indices) or an auxiliary variable u[k] used by linearizations.
///
/// The defaulted ordering (kind, arrow, row, col, aux) is the variable order
/// of the canonical text form.
struct Variable {
  enum class Kind : unsigned char { Entry = 0, Aux = 1 };

  Kind kind = Kind::Entry;
  std::string arrow;
  int row = 0;
  int col = 0;
  int aux = 0;

  static Variable entry(std::string arrow, int row, int col) {
    return Variable{Kind::Entry, std::move(arrow), row, col, 0};
  }
  static Variable auxiliary(int index) { return Variable{Kind::Aux, {}, 0, 0, index}; }

  bool is_aux() const { return kind == Kind::Aux; }
  std::string to_string() const;

  auto operator<=>(const Variable&) const = default;
};

/// A power product with positive exponents, factors sorted by variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(const Variable& v, int exponent = 1);
  /// Factors need not be sorted or merged; zero exponents are dropped.
  static Monomial from_factors(std::vector<std::pair<Variable, int>> factors);

  const std::vector<std::pair<Variable, int>>& factors() const { return factors_; }
  int degree() const { return degree_; }
  bool is_one() const { return factors_.empty(); }
  int exponent_of(const Variable& v) const;

  /// Split into (entry part, auxiliary part).
  std::pair<Monomial, Monomial> split_aux() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  bool operator==(const Monomial&) const = default;

  std::string to_string() const;

 private:
  std::vector<std::pair<Variable, int>> factors_;
  int degree_ = 0;
};

/// Graded order: higher total degree first, then lexicographic (a higher
/// exponent on an earlier variable comes first). This fixes printed output.
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

using Assignment = std::map<Variable, Scalar>;

/// Sparse multivariate polynomial with coefficients in a Field.
/// No zero coefficient is ever stored.
class Polynomial {
 public:
  using TermMap = std::map<Monomial, Scalar, MonomialOrder>;

  explicit Polynomial(Field field = Field::rationals()) : field_(field) {}
  static Polynomial constant(const Scalar& c);
  static Polynomial constant(Field field, long long c) { return constant(field.from_int(c)); }
  static Polynomial variable(Field field, const Variable& v);
  static Polynomial term(const Scalar& c, const Monomial& m);

  Field field() const { return field_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Coefficient of the constant monomial.
  Scalar constant_term() const;
  int total_degree() const;
  std::set<Variable> variables() const;

  Polynomial operator-() const;
  Polynomial& operator+=(const Polynomial& rhs);
  Polynomial& operator-=(const Polynomial& rhs);
  Polynomial& operator*=(const Polynomial& rhs);
  Polynomial& operator*=(const Scalar& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }

  bool operator==(const Polynomial& rhs) const;

  void add_term(const Monomial& m, const Scalar& c);

  /// Throws std::invalid_argument naming the first variable missing from `values`.
  Scalar evaluate(const Assignment& values) const;

  /// Replace each variable for which `rule` returns a polynomial; others stay.
  Polynomial substitute(const std::function<std::optional<Polynomial>(const Variable&)>& rule) const;

  /// Coefficient of the given auxiliary monomial, as a polynomial in the
  /// remaining (entry) variables. Terms with other auxiliary parts are dropped.
  Polynomial aux_coefficient(const Monomial& aux_part) const;

  /// Coefficients mapped into `target` (rationals must have denominators prime to p).
  Polynomial to_field(Field target) const;
  /// Over F_p: replace each residue by its representative in [0,p) as a rational.
  Polynomial lift_to_rationals() const;

  /// Canonical text, e.g. "+2*x[a,1,2]*x[b,2,1]-x[a,1,1]"; the zero polynomial is "0".
  std::string to_string() const;
  /// Inverse of to_string. Throws std::invalid_argument on malformed input.
  static Polynomial parse(const std::string& text, Field field = Field::rationals());

 private:
  Field field_;
  TermMap terms_;
};

/// Per-arrow degree vector (entry variables only).
struct Multidegree {
  std::map<std::string, int> degrees;
  bool homogeneous = true;

  int total() const;
  bool operator==(const Multidegree&) const = default;
};

/// t_alpha is the largest degree of a term in the variables of arrow alpha;
/// `homogeneous` records whether every term has the same degree vector.
Multidegree multidegree(const Polynomial& f);

}  // namespace mqinv

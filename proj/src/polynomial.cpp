#include "mqinv/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace mqinv {

std::string Variable::to_string() const {
  if (kind == Kind::Aux) return "u[" + std::to_string(aux) + "]";
  return "x[" + arrow + "," + std::to_string(row) + "," + std::to_string(col) + "]";
}

// --- Monomial ------------------------------------------------------------

Monomial::Monomial(const Variable& v, int exponent) {
  if (exponent > 0) {
    factors_.emplace_back(v, exponent);
    degree_ = exponent;
  }
}

Monomial Monomial::from_factors(std::vector<std::pair<Variable, int>> factors) {
  std::sort(factors.begin(), factors.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  Monomial m;
  for (auto& [v, e] : factors) {
    if (e < 0) throw std::invalid_argument("negative exponent in monomial");
    if (e == 0) continue;
    if (!m.factors_.empty() && m.factors_.back().first == v) {
      m.factors_.back().second += e;
    } else {
      m.factors_.emplace_back(std::move(v), e);
    }
    m.degree_ += e;
  }
  return m;
}

int Monomial::exponent_of(const Variable& v) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), v,
                             [](const auto& f, const Variable& x) { return f.first < x; });
  return (it != factors_.end() && it->first == v) ? it->second : 0;
}

std::pair<Monomial, Monomial> Monomial::split_aux() const {
  Monomial entry;
  Monomial aux;
  for (const auto& f : factors_) {
    Monomial& target = f.first.is_aux() ? aux : entry;
    target.factors_.push_back(f);
    target.degree_ += f.second;
  }
  return {entry, aux};
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.factors_.reserve(a.factors_.size() + b.factors_.size());
  auto i = a.factors_.begin();
  auto j = b.factors_.begin();
  while (i != a.factors_.end() && j != b.factors_.end()) {
    if (i->first < j->first) {
      out.factors_.push_back(*i++);
    } else if (j->first < i->first) {
      out.factors_.push_back(*j++);
    } else {
      out.factors_.emplace_back(i->first, i->second + j->second);
      ++i;
      ++j;
    }
  }
  out.factors_.insert(out.factors_.end(), i, a.factors_.end());
  out.factors_.insert(out.factors_.end(), j, b.factors_.end());
  out.degree_ = a.degree_ + b.degree_;
  return out;
}

std::string Monomial::to_string() const {
  std::string out;
  for (const auto& [v, e] : factors_) {
    if (!out.empty()) out += '*';
    out += v.to_string();
    if (e != 1) out += "^" + std::to_string(e);
  }
  return out;
}

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
  if (a.degree() != b.degree()) return a.degree() > b.degree();
  const auto& fa = a.factors();
  const auto& fb = b.factors();
  const std::size_t n = std::min(fa.size(), fb.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (fa[k].first != fb[k].first) return fa[k].first < fb[k].first;
    if (fa[k].second != fb[k].second) return fa[k].second > fb[k].second;
  }
  return fa.size() < fb.size();
}

// --- Polynomial ----------------------------------------------------------

Polynomial Polynomial::constant(const Scalar& c) {
  Polynomial p(c.field());
  p.add_term(Monomial(), c);
  return p;
}

Polynomial Polynomial::variable(Field field, const Variable& v) {
  Polynomial p(field);
  p.terms_.emplace(Monomial(v), field.one());
  return p;
}

Polynomial Polynomial::term(const Scalar& c, const Monomial& m) {
  Polynomial p(c.field());
  p.add_term(m, c);
  return p;
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Scalar Polynomial::constant_term() const {
  auto it = terms_.find(Monomial());
  return it == terms_.end() ? field_.zero() : it->second;
}

int Polynomial::total_degree() const {
  // Graded order puts the highest degree first.
  return terms_.empty() ? 0 : terms_.begin()->first.degree();
}

std::set<Variable> Polynomial::variables() const {
  std::set<Variable> out;
  for (const auto& [m, c] : terms_) {
    for (const auto& f : m.factors()) out.insert(f.first);
  }
  return out;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (c.is_zero()) return;
  if (c.field() != field_) {
    if (terms_.empty()) {
      field_ = c.field();
    } else {
      throw std::invalid_argument("polynomial field mismatch");
    }
  }
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Polynomial Polynomial::operator-() const {
  Polynomial out(field_);
  for (const auto& [m, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), m, -c);
  return out;
}

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) field_ = rhs.field_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  if (rhs.terms_.empty()) return *this;
  if (terms_.empty()) field_ = rhs.field_;
  for (const auto& [m, c] : rhs.terms_) add_term(m, -c);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out(a.is_zero() ? b.field_ : a.field_);
  if (a.is_zero() || b.is_zero()) return out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, ca * cb);
  }
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
  *this = *this * rhs;
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

bool Polynomial::operator==(const Polynomial& rhs) const {
  if (terms_.size() != rhs.terms_.size()) return false;
  // Two zero polynomials compare equal regardless of the nominal field.
  return std::equal(terms_.begin(), terms_.end(), rhs.terms_.begin(),
                    [](const auto& x, const auto& y) { return x.first == y.first && x.second == y.second; });
}

Scalar Polynomial::evaluate(const Assignment& values) const {
  Scalar sum = field_.zero();
  for (const auto& [m, c] : terms_) {
    Scalar t = c;
    for (const auto& [v, e] : m.factors()) {
      auto it = values.find(v);
      if (it == values.end()) {
        throw std::invalid_argument("assignment is missing variable " + v.to_string());
      }
      t *= it->second.pow(e);
    }
    sum += t;
  }
  return sum;
}

Polynomial Polynomial::substitute(
    const std::function<std::optional<Polynomial>(const Variable&)>& rule) const {
  std::map<Variable, std::optional<Polynomial>> cache;
  Polynomial out(field_);
  for (const auto& [m, c] : terms_) {
    Polynomial t = constant(c);
    Monomial kept;
    for (const auto& [v, e] : m.factors()) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, rule(v)).first;
      if (!it->second) {
        kept = kept * Monomial(v, e);
        continue;
      }
      for (int k = 0; k < e; ++k) t *= *it->second;
      if (t.is_zero()) break;
    }
    if (!kept.is_one()) t *= term(field_.one(), kept);
    out += t;
  }
  return out;
}

Polynomial Polynomial::aux_coefficient(const Monomial& aux_part) const {
  Polynomial out(field_);
  for (const auto& [m, c] : terms_) {
    auto [entry, aux] = m.split_aux();
    if (aux == aux_part) out.add_term(entry, c);
  }
  return out;
}

Polynomial Polynomial::to_field(Field target) const {
  Polynomial out(target);
  for (const auto& [m, c] : terms_) {
    if (c.is_rational()) {
      out.add_term(m, target.from_rational(c.rational()));
    } else {
      if (!target.is_rational() && target != c.field()) {
        throw std::invalid_argument("cannot map between distinct prime fields");
      }
      out.add_term(m, target.from_integer(c.lift()));
    }
  }
  return out;
}

Polynomial Polynomial::lift_to_rationals() const {
  if (field_.is_rational()) return *this;
  return to_field(Field::rationals());
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::string out;
  for (const auto& [m, c] : terms_) {
    std::string coeff = c.to_string();
    bool negative = !coeff.empty() && coeff[0] == '-';
    if (negative) coeff.erase(0, 1);
    out += negative ? '-' : '+';
    if (m.is_one()) {
      out += coeff;
    } else {
      if (coeff != "1") out += coeff + "*";
      out += m.to_string();
    }
  }
  return out;
}

namespace {

class PolyParser {
 public:
  PolyParser(const std::string& text, Field field) : s_(text), field_(field) {}

  Polynomial parse() {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '0') {
      std::size_t save = pos_;
      ++pos_;
      skip_ws();
      if (pos_ == s_.size()) return Polynomial(field_);
      pos_ = save;
    }
    Polynomial out(field_);
    bool first = true;
    while (true) {
      skip_ws();
      if (pos_ == s_.size()) break;
      bool negative = false;
      if (peek() == '+' || peek() == '-') {
        negative = s_[pos_++] == '-';
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      skip_ws();
      mpq_class coeff(1);
      std::vector<std::pair<Variable, int>> factors;
      if (std::isdigit(static_cast<unsigned char>(peek()))) {
        coeff = parse_rational();
        skip_ws();
        if (peek() == '*') {
          ++pos_;
          parse_factors(factors);
        }
      } else {
        parse_factors(factors);
      }
      if (negative) coeff = -coeff;
      out.add_term(Monomial::from_factors(std::move(factors)), field_.from_rational(coeff));
    }
    if (first) fail("empty polynomial");
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  std::string digits() {
    skip_ws();
    std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected digits");
    return s_.substr(start, pos_ - start);
  }
  int parse_int() {
    std::string d = digits();
    if (d.size() > 9) fail("index too large");
    return std::stoi(d);
  }
  mpq_class parse_rational() {
    mpz_class num(digits());
    mpz_class den(1);
    if (peek() == '/') {
      ++pos_;
      den = mpz_class(digits());
      if (den == 0) fail("zero denominator");
    }
    mpq_class q(num, den);
    q.canonicalize();
    return q;
  }
  void parse_factors(std::vector<std::pair<Variable, int>>& factors) {
    while (true) {
      skip_ws();
      Variable v;
      if (peek() == 'x') {
        ++pos_;
        expect('[');
        std::size_t start = pos_;
        while (pos_ < s_.size() && s_[pos_] != ',' && s_[pos_] != ']') ++pos_;
        std::string arrow = s_.substr(start, pos_ - start);
        if (arrow.empty()) fail("empty arrow id");
        expect(',');
        int row = parse_int();
        expect(',');
        int col = parse_int();
        expect(']');
        v = Variable::entry(arrow, row, col);
      } else if (peek() == 'u') {
        ++pos_;
        expect('[');
        int k = parse_int();
        expect(']');
        v = Variable::auxiliary(k);
      } else {
        fail("expected a variable");
      }
      int e = 1;
      skip_ws();
      if (peek() == '^') {
        ++pos_;
        e = parse_int();
      }
      factors.emplace_back(std::move(v), e);
      skip_ws();
      if (peek() != '*') break;
      ++pos_;
    }
  }

  const std::string& s_;
  Field field_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial Polynomial::parse(const std::string& text, Field field) {
  return PolyParser(text, field).parse();
}

int Multidegree::total() const {
  int sum = 0;
  for (const auto& [a, d] : degrees) sum += d;
  return sum;
}

Multidegree multidegree(const Polynomial& f) {
  Multidegree out;
  bool first = true;
  std::map<std::string, int> reference;
  for (const auto& [m, c] : f.terms()) {
    std::map<std::string, int> current;
    for (const auto& [v, e] : m.factors()) {
      if (!v.is_aux()) current[v.arrow] += e;
    }
    for (const auto& [a, d] : current) out.degrees[a] = std::max(out.degrees[a], d);
    if (first) {
      reference = current;
      first = false;
    } else if (current != reference) {
      out.homogeneous = false;
    }
  }
  return out;
}

}  // namespace mqinv

#pragma once

#include "moduli/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace moduli {

// Commutative polynomial over Q in named variables. A monomial is a sorted list of
// (variable, exponent) pairs; the empty list is the constant monomial.
class Polynomial {
 public:
  using Monomial = std::vector<std::pair<std::string, int>>;

  Polynomial() = default;
  static Polynomial constant(const Rational& c);
  static Polynomial variable(const std::string& name);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  std::set<std::string> variables() const;
  // total degree of each term, all variables weighted 1; -1 for zero
  int degree() const;
  bool homogeneous() const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator*(const Rational& c) const;
  Polynomial pow(int e) const;

  std::string str() const;
  bool operator==(const Polynomial& o) const { return terms_ == o.terms_; }

 private:
  void add_term(const Monomial& m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

Polynomial operator+(Polynomial a, const Polynomial& b);
Polynomial operator-(Polynomial a, const Polynomial& b);

// Grammar: sums, differences, products (explicit '*' or juxtaposition), '^' with a
// non-negative integer exponent, division by nonzero constants, parentheses, integers,
// identifiers [A-Za-z_][A-Za-z0-9_']*, and bracket atoms such as [1,2,3] kept as variables.
// Throws std::invalid_argument with the offending position on malformed input.
Polynomial parse_polynomial(const std::string& text);

int monomial_degree(const Polynomial::Monomial& m);

}  // namespace moduli

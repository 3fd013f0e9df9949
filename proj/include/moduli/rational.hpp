#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

namespace moduli {

// mpq_class keeps results of arithmetic in lowest terms with positive denominator.
using Rational = mpq_class;
using QVector = std::vector<Rational>;

Rational make_rational(long num, long den = 1);

// Accepts "p", "-p", "p/q". Throws std::invalid_argument on malformed text or zero denominator.
Rational parse_rational(const std::string& text);

// "p/q", or "p" when q = 1.
std::string to_string(const Rational& q);

bool is_integer(const Rational& q);

}  // namespace moduli

#include "moduli/expr.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace moduli {

int monomial_degree(const Polynomial::Monomial& m) {
  int d = 0;
  for (const auto& [v, e] : m) d += e;
  return d;
}

Polynomial Polynomial::constant(const Rational& c) {
  Polynomial p;
  p.add_term({}, c);
  return p;
}

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.add_term({{name, 1}}, 1);
  return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second += c;
  if (it->second == 0) terms_.erase(it);
}

bool Polynomial::is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty()); }

Rational Polynomial::constant_term() const {
  auto it = terms_.find({});
  return it == terms_.end() ? Rational(0) : it->second;
}

std::set<std::string> Polynomial::variables() const {
  std::set<std::string> out;
  for (const auto& [m, c] : terms_)
    for (const auto& [v, e] : m) out.insert(v);
  return out;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, monomial_degree(m));
  return d;
}

bool Polynomial::homogeneous() const {
  int d = -1;
  for (const auto& [m, c] : terms_) {
    int k = monomial_degree(m);
    if (d >= 0 && k != d) return false;
    d = k;
  }
  return true;
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial out;
  for (const auto& [m1, c1] : terms_)
    for (const auto& [m2, c2] : o.terms_) {
      std::map<std::string, int> e;
      for (const auto& [v, k] : m1) e[v] += k;
      for (const auto& [v, k] : m2) e[v] += k;
      out.add_term(Monomial(e.begin(), e.end()), c1 * c2);
    }
  return out;
}

Polynomial Polynomial::operator*(const Rational& c) const {
  Polynomial out;
  for (const auto& [m, x] : terms_) out.add_term(m, x * c);
  return out;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw std::invalid_argument("negative exponent");
  Polynomial out = constant(1);
  for (int i = 0; i < e; ++i) out = out * *this;
  return out;
}

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // higher degree first, then lexicographic
  std::vector<std::pair<Monomial, Rational>> sorted(terms_.begin(), terms_.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
    return monomial_degree(a.first) > monomial_degree(b.first);
  });
  for (const auto& [m, c] : sorted) {
    Rational a = c;
    if (first) {
      if (a < 0) os << "-";
    } else {
      os << (a < 0 ? " - " : " + ");
    }
    if (a < 0) a = -a;
    bool unit = a == 1 && !m.empty();
    if (!unit) os << to_string(a);
    bool first_factor = true;
    for (const auto& [v, e] : m) {
      if (!unit || !first_factor) os << "*";
      os << v;
      if (e != 1) os << "^" << e;
      first_factor = false;
    }
    first = false;
  }
  return os.str();
}

Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }

namespace {

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Polynomial parse() {
    Polynomial p = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected character");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("cannot parse '" + s_ + "' at position " + std::to_string(i_) + ": " + why);
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool peek(char c) {
    skip();
    return i_ < s_.size() && s_[i_] == c;
  }
  bool starts_atom() {
    skip();
    if (i_ >= s_.size()) return false;
    char c = s_[i_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(' || c == '[';
  }

  Polynomial expr() {
    Polynomial p;
    bool neg = false;
    if (peek('+')) ++i_;
    else if (peek('-')) { ++i_; neg = true; }
    Polynomial t = term();
    p = neg ? Polynomial() - t : t;
    while (true) {
      if (peek('+')) { ++i_; p += term(); }
      else if (peek('-')) { ++i_; p -= term(); }
      else break;
    }
    return p;
  }

  Polynomial term() {
    Polynomial p = power();
    while (true) {
      if (peek('*')) { ++i_; p = p * power(); }
      else if (peek('/')) {
        ++i_;
        Polynomial d = power();
        if (!d.is_constant() || d.constant_term() == 0) fail("division by a non-constant or zero");
        p = p * (Rational(1) / d.constant_term());
      } else if (starts_atom()) {
        p = p * power();
      } else {
        break;
      }
    }
    return p;
  }

  Polynomial power() {
    Polynomial b = atom();
    if (peek('^')) {
      ++i_;
      skip();
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      if (st == i_) fail("expected exponent");
      b = b.pow(std::stoi(s_.substr(st, i_ - st)));
    }
    return b;
  }

  Polynomial atom() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end");
    char c = s_[i_];
    if (c == '(') {
      ++i_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++i_;
      return p;
    }
    if (c == '-') {
      ++i_;
      return Polynomial() - power();
    }
    if (c == '[') {
      auto close = s_.find(']', i_);
      if (close == std::string::npos) fail("unterminated bracket");
      std::string body;
      for (std::size_t k = i_ + 1; k < close; ++k)
        if (!std::isspace(static_cast<unsigned char>(s_[k]))) body.push_back(s_[k]);
      i_ = close + 1;
      return Polynomial::variable("[" + body + "]");
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t st = i_;
      while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
      return Polynomial::constant(Rational(s_.substr(st, i_ - st)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t st = i_;
      while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '\'')) ++i_;
      return Polynomial::variable(s_.substr(st, i_ - st));
    }
    fail("unexpected character");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace

Polynomial parse_polynomial(const std::string& text) { return Parser(text).parse(); }

}  // namespace moduli

#include "moduli/symmetry.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moduli {

bool Perm::is_identity() const {
  for (std::size_t i = 0; i < img.size(); ++i)
    if (img[i] != static_cast<int>(i) + 1) return false;
  return true;
}

Perm Perm::inverse() const {
  Perm p{std::vector<int>(img.size())};
  for (std::size_t i = 0; i < img.size(); ++i) p.img[static_cast<std::size_t>(img[i] - 1)] = static_cast<int>(i) + 1;
  return p;
}

std::uint32_t Perm::apply_mask(std::uint32_t mask) const {
  std::uint32_t out = 0;
  for (std::size_t i = 0; i < img.size(); ++i)
    if (mask & (1u << i)) out |= 1u << (img[i] - 1);
  return out;
}

std::string Perm::cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(img.size(), false);
  for (std::size_t i = 0; i < img.size(); ++i) {
    if (seen[i] || img[i] == static_cast<int>(i) + 1) continue;
    os << '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) os << ' ';
      os << j + 1;
      first = false;
      j = static_cast<std::size_t>(img[j] - 1);
    }
    os << ')';
  }
  std::string s = os.str();
  return s.empty() ? "()" : s;
}

Perm identity_perm(int n) {
  Perm p{std::vector<int>(static_cast<std::size_t>(n))};
  for (int i = 0; i < n; ++i) p.img[static_cast<std::size_t>(i)] = i + 1;
  return p;
}

Perm compose(const Perm& f, const Perm& g) {
  if (f.n() != g.n()) throw std::invalid_argument("compose: size mismatch");
  Perm p{std::vector<int>(g.img.size())};
  for (std::size_t i = 0; i < g.img.size(); ++i) p.img[i] = f(g.img[i]);
  return p;
}

Perm parse_cycles(const std::string& text, int n) {
  Perm p = identity_perm(n);
  std::vector<bool> used(static_cast<std::size_t>(n) + 1, false);
  std::size_t i = 0;
  auto fail = [&] { throw std::invalid_argument("malformed cycle notation: '" + text + "'"); };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) { ++i; continue; }
    if (text[i] != '(') fail();
    auto close = text.find(')', i);
    if (close == std::string::npos) fail();
    std::string body = text.substr(i + 1, close - i - 1);
    for (char& c : body)
      if (c == ',') c = ' ';
    std::istringstream is(body);
    std::vector<int> cyc;
    std::string tok;
    while (is >> tok) {
      int v = 0;
      try {
        std::size_t used_chars = 0;
        v = std::stoi(tok, &used_chars);
        if (used_chars != tok.size()) fail();
      } catch (const std::invalid_argument&) {
        fail();
      }
      if (v < 1 || v > n || used[static_cast<std::size_t>(v)]) fail();
      used[static_cast<std::size_t>(v)] = true;
      cyc.push_back(v);
    }
    for (std::size_t k = 0; k < cyc.size(); ++k)
      p.img[static_cast<std::size_t>(cyc[k] - 1)] = cyc[(k + 1) % cyc.size()];
    i = close + 1;
  }
  return p;
}

PermGroup::PermGroup(int n, std::vector<Perm> generators) : n_(n), generators_(std::move(generators)) {
  for (const auto& g : generators_)
    if (g.n() != n) throw std::invalid_argument("generator acts on the wrong number of points");
  std::set<Perm> seen{identity_perm(n)};
  std::vector<Perm> frontier{identity_perm(n)};
  while (!frontier.empty()) {
    std::vector<Perm> next;
    for (const auto& x : frontier)
      for (const auto& g : generators_) {
        Perm y = compose(g, x);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  elements_.assign(seen.begin(), seen.end());
}

PermGroup standard_group(const std::string& tag) {
  auto P = [](const char* s) { return parse_cycles(s, 6); };
  if (tag == "R2") return PermGroup(6, {P("(1 2)"), P("(3 4)"), P("(3 4 5 6)")});
  if (tag == "S2plus") return PermGroup(6, {P("(1 2)"), P("(1 2 3)"), P("(4 5)"), P("(4 5 6)"), P("(1 4)(2 5)(3 6)")});
  if (tag == "S2minus") return PermGroup(6, {P("(2 3)"), P("(2 3 4 5 6)")});
  if (tag == "M2") return PermGroup(6, {P("(1 2)"), P("(1 2 3 4 5 6)")});
  throw std::invalid_argument("unknown group tag '" + tag + "'");
}

PermGroup custom_group(const std::string& generators, int n) {
  std::vector<Perm> gens;
  std::string cur;
  int depth = 0;
  for (char c : generators + ";") {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == ';' || (c == ',' && depth == 0)) {
      bool blank = std::all_of(cur.begin(), cur.end(), [](char x) { return std::isspace(static_cast<unsigned char>(x)); });
      if (!blank) gens.push_back(parse_cycles(cur, n));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  return PermGroup(n, std::move(gens));
}

RingElement act(const KeelRing& ring, const Perm& g, const RingElement& x) {
  return ring.act_indices(ring.permute_divisors(g.img), x);
}

RingElement group_sum(const KeelRing& ring, const PermGroup& group, const RingElement& x) {
  RingElement acc = ring.zero(x.degree);
  for (const auto& g : group.elements()) acc += act(ring, g, x);
  return acc;
}

RingElement reynolds(const KeelRing& ring, const PermGroup& group, const RingElement& x) {
  return Rational(1, static_cast<unsigned long>(group.order())) * group_sum(ring, group, x);
}

std::vector<std::size_t> InvariantBasis::dims() const {
  std::vector<std::size_t> out;
  for (const auto& d : degrees) out.push_back(d.size());
  return out;
}

std::vector<std::size_t> invariant_dims(const KeelRing& ring, const PermGroup& group) {
  std::vector<std::size_t> out;
  std::vector<std::vector<int>> perms;
  for (const auto& g : group.elements()) perms.push_back(ring.permute_divisors(g.img));
  for (int d = 0; d <= ring.top_degree(); ++d) {
    QMatrix m(0, ring.dim(d));
    for (std::size_t i = 0; i < ring.dim(d); ++i) {
      RingElement e = ring.zero(d);
      e.coeffs[i] = 1;
      RingElement acc = ring.zero(d);
      for (const auto& p : perms) acc += ring.act_indices(p, e);
      acc *= Rational(1, static_cast<unsigned long>(group.order()));
      m.append_row(acc.coeffs);
    }
    out.push_back(rank(m));
  }
  return out;
}

InvariantBasis invariant_basis(const KeelRing& ring, const PermGroup& group) {
  InvariantBasis out;
  std::vector<std::vector<int>> perms;
  for (const auto& g : group.elements()) perms.push_back(ring.permute_divisors(g.img));
  for (int d = 0; d <= ring.top_degree(); ++d) {
    // orbit sums of compatible monomials
    std::set<Monomial> done;
    QMatrix m(0, ring.dim(d));
    for (const auto& mono : ring.monomials(d)) {
      if (done.count(mono)) continue;
      std::set<Monomial> orbit;
      for (const auto& p : perms) {
        Monomial im;
        for (int f : mono) im.push_back(p[static_cast<std::size_t>(f)]);
        std::sort(im.begin(), im.end());
        orbit.insert(im);
      }
      RingElement acc = ring.zero(d);
      for (const auto& o : orbit) {
        acc += ring.reduce(o);
        done.insert(o);
      }
      m.append_row(acc.coeffs);
    }
    auto r = rref(m);
    std::vector<RingElement> basis;
    for (std::size_t i = 0; i < r.pivots.size(); ++i) basis.push_back(RingElement{ring.n(), d, r.matrix.row(i)});
    out.degrees.push_back(std::move(basis));
  }
  return out;
}

QVector invariant_coordinates(const InvariantBasis& basis, const RingElement& x) {
  if (x.degree < 0 || x.degree >= static_cast<int>(basis.degrees.size())) return {};
  const auto& b = basis.degrees[static_cast<std::size_t>(x.degree)];
  if (b.empty()) {
    if (!x.is_zero()) throw std::invalid_argument("element not in the invariant span");
    return {};
  }
  QMatrix a(x.coeffs.size(), b.size());
  for (std::size_t j = 0; j < b.size(); ++j)
    for (std::size_t i = 0; i < x.coeffs.size(); ++i) a.at(i, j) = b[j].coeffs[i];
  auto sol = solve(a, x.coeffs);
  if (!sol) throw std::invalid_argument("element not in the invariant span");
  return *sol;
}

bool is_invariant(const KeelRing& ring, const PermGroup& group, const RingElement& x) {
  for (const auto& g : group.generators())
    if (!(act(ring, g, x) == x)) return false;
  return true;
}

}  // namespace moduli

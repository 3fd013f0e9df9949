#include "moduli/keel.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <sstream>
#include <stdexcept>

namespace moduli {

std::vector<int> BoundaryIndex::members() const {
  std::vector<int> out;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) out.push_back(i + 1);
  return out;
}

int BoundaryIndex::size() const { return std::popcount(mask); }

std::string BoundaryIndex::str() const {
  std::ostringstream os;
  os << '[';
  bool first = true;
  for (int m : members()) {
    if (!first) os << ',';
    os << m;
    first = false;
  }
  os << ']';
  return os.str();
}

bool BoundaryIndex::operator<(const BoundaryIndex& o) const {
  if (n != o.n) return n < o.n;
  auto a = members(), b = o.members();
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

BoundaryIndex canonicalize_mask(std::uint32_t mask, int n) {
  std::uint32_t full = (n >= 32) ? ~0u : ((1u << n) - 1);
  if (mask & ~full) throw std::invalid_argument("boundary index outside {1..n}");
  int sz = std::popcount(mask);
  if (sz < 2 || sz > n - 2) throw std::invalid_argument("boundary index size out of range");
  if (mask & (1u << (n - 1))) mask = full & ~mask;
  return BoundaryIndex{n, mask};
}

BoundaryIndex canonicalize(const std::vector<int>& s, int n) {
  std::uint32_t mask = 0;
  for (int i : s) {
    if (i < 1 || i > n) throw std::invalid_argument("boundary index outside {1..n}");
    if (mask & (1u << (i - 1))) throw std::invalid_argument("repeated member in boundary index");
    mask |= 1u << (i - 1);
  }
  return canonicalize_mask(mask, n);
}

BoundaryIndex parse_boundary(const std::string& text, int n) {
  std::string t;
  for (char c : text)
    if (c != '[' && c != ']' && c != ' ') t.push_back(c == ',' ? ' ' : c);
  std::istringstream is(t);
  std::vector<int> s;
  std::string tok;
  while (is >> tok) {
    try {
      std::size_t used = 0;
      int v = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
      s.push_back(v);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed boundary index: '" + text + "'");
    }
  }
  return canonicalize(s, n);
}

bool incompatible(const BoundaryIndex& s, const BoundaryIndex& t) {
  if (s.n != t.n) throw std::invalid_argument("incompatible: mismatched n");
  std::uint32_t full = (1u << s.n) - 1;
  std::uint32_t a = s.mask, b = t.mask, ac = full & ~a, bc = full & ~b;
  bool ok = (a & ~b) == 0 || (b & ~a) == 0 || (a & ~bc) == 0 || (ac & ~b) == 0;
  return !ok;
}

std::pair<DivisorSum, DivisorSum> four_point_relation(int n, int i, int j, int k, int l) {
  std::set<int> idx{i, j, k, l};
  if (idx.size() != 4) throw std::invalid_argument("four_point_relation: indices not distinct");
  for (int v : idx)
    if (v < 1 || v > n) throw std::invalid_argument("four_point_relation: index outside {1..n}");
  std::uint32_t full = (1u << n) - 1;
  auto side = [&](int p, int q, int r, int s) {
    std::vector<BoundaryIndex> out;
    std::uint32_t in = (1u << (p - 1)) | (1u << (q - 1));
    std::uint32_t out_mask = (1u << (r - 1)) | (1u << (s - 1));
    for (std::uint32_t m = 0; m <= full; ++m) {
      if ((m & in) != in || (m & out_mask) != 0) continue;
      out.push_back(canonicalize_mask(m, n));
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  auto diff = [](const std::vector<BoundaryIndex>& a, const std::vector<BoundaryIndex>& b) {
    DivisorSum d;
    for (const auto& x : a) d.emplace_back(x, Rational(1));
    for (const auto& x : b) d.emplace_back(x, Rational(-1));
    return d;
  };
  auto ij = side(i, j, k, l), ik = side(i, k, j, l), il = side(i, l, j, k);
  return {diff(ij, ik), diff(ij, il)};
}

bool RingElement::is_zero() const {
  return std::all_of(coeffs.begin(), coeffs.end(), [](const Rational& q) { return sgn(q) == 0; });
}

static void check_same(const RingElement& a, const RingElement& b) {
  if (a.n != b.n || a.degree != b.degree || a.coeffs.size() != b.coeffs.size())
    throw std::invalid_argument("ring elements of different n or degree");
}

RingElement& RingElement::operator+=(const RingElement& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] += o.coeffs[i];
  return *this;
}

RingElement& RingElement::operator-=(const RingElement& o) {
  check_same(*this, o);
  for (std::size_t i = 0; i < coeffs.size(); ++i) coeffs[i] -= o.coeffs[i];
  return *this;
}

RingElement& RingElement::operator*=(const Rational& q) {
  for (auto& c : coeffs) c *= q;
  return *this;
}

bool RingElement::operator==(const RingElement& o) const {
  return n == o.n && degree == o.degree && coeffs == o.coeffs;
}

RingElement operator+(RingElement a, const RingElement& b) { return a += b; }
RingElement operator-(RingElement a, const RingElement& b) { return a -= b; }
RingElement operator*(const Rational& q, RingElement a) { return a *= q; }

KeelRing::KeelRing(int n, int cap) : n_(n) {
  if (n < 4) throw std::invalid_argument("Keel ring needs n >= 4");
  if (n > cap) throw std::invalid_argument("n exceeds the configured cap");
  if (n > 9) throw std::invalid_argument("n too large for the index packing");
  std::uint32_t full = (1u << n) - 1;
  for (std::uint32_t m = 0; m <= full; ++m) {
    int sz = std::popcount(m);
    if (sz < 2 || sz > n - 2 || (m & (1u << (n - 1)))) continue;
    divisors_.push_back(BoundaryIndex{n, m});
  }
  std::sort(divisors_.begin(), divisors_.end());
  std::size_t nd = divisors_.size();
  compat_.assign(nd, std::vector<bool>(nd, true));
  for (std::size_t a = 0; a < nd; ++a)
    for (std::size_t b = 0; b < nd; ++b) compat_[a][b] = !incompatible(divisors_[a], divisors_[b]);

  // degree-1 relations, deduplicated
  QMatrix rel(0, nd);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      for (int k = j + 1; k <= n; ++k)
        for (int l = k + 1; l <= n; ++l) {
          auto pr = four_point_relation(n, i, j, k, l);
          for (const auto* sum : {&pr.first, &pr.second}) {
            QVector v(nd);
            for (const auto& [b, c] : *sum) v[static_cast<std::size_t>(divisor_index(b))] += c;
            rel.append_row(v);
          }
        }
  auto r = rref(rel);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) linear_relations_.push_back(r.matrix.row(i));

  int top = n - 3;
  monomials_.resize(static_cast<std::size_t>(top) + 1);
  basis_.resize(monomials_.size());
  relation_rank_.assign(monomials_.size(), 0);
  reductions_.resize(monomials_.size());
  monomials_[0] = {Monomial{}};
  for (int d = 1; d <= top; ++d) {
    for (const auto& m : monomials_[static_cast<std::size_t>(d - 1)]) {
      int start = m.empty() ? 0 : m.back();
      for (int x = start; x < static_cast<int>(nd); ++x) {
        bool ok = true;
        for (int y : m)
          if (!compat_[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)]) ok = false;
        if (!ok) continue;
        Monomial mm = m;
        mm.push_back(x);
        monomials_[static_cast<std::size_t>(d)].push_back(std::move(mm));
      }
    }
  }
  for (int d = 0; d <= top; ++d) build_degree(d);

  Monomial chain;
  for (int k = 2; k <= n - 2; ++k) {
    std::vector<int> s;
    for (int i = 1; i <= k; ++i) s.push_back(i);
    chain.push_back(divisor_index(canonicalize(s, n)));
  }
  std::sort(chain.begin(), chain.end());
  RingElement a = reduce(chain);
  if (a.coeffs.size() != 1 || sgn(a.coeffs[0]) == 0)
    throw std::logic_error("anchor chain does not reduce to a nonzero top class");
  anchor_inverse_ = 1 / a.coeffs[0];
}

int KeelRing::divisor_index(const BoundaryIndex& b) const {
  auto it = std::lower_bound(divisors_.begin(), divisors_.end(), b);
  if (it == divisors_.end() || *it != b) throw std::invalid_argument("unknown divisor " + b.str());
  return static_cast<int>(it - divisors_.begin());
}

std::uint64_t KeelRing::key(const Monomial& m) const {
  std::uint64_t k = static_cast<std::uint64_t>(m.size()) << 56;
  for (std::size_t i = 0; i < m.size(); ++i) k |= static_cast<std::uint64_t>(m[i]) << (8 * i);
  return k;
}

void KeelRing::build_degree(int d) {
  auto du = static_cast<std::size_t>(d);
  const auto& cols = monomials_[du];
  std::unordered_map<std::uint64_t, int> col_of;
  for (std::size_t c = 0; c < cols.size(); ++c) col_of.emplace(key(cols[c]), static_cast<int>(c));
  SparseEchelon ech(static_cast<int>(cols.size()));
  if (d >= 1) {
    for (const auto& rel : linear_relations_) {
      for (const auto& m : monomials_[du - 1]) {
        std::map<int, Rational> row;
        for (std::size_t i = 0; i < rel.size(); ++i) {
          if (sgn(rel[i]) == 0) continue;
          Monomial mm = m;
          mm.insert(std::upper_bound(mm.begin(), mm.end(), static_cast<int>(i)), static_cast<int>(i));
          if (!compatible(mm)) continue;
          row[col_of.at(key(mm))] += rel[i];
        }
        SparseRow sr;
        for (auto& [c, v] : row)
          if (sgn(v) != 0) sr.emplace_back(c, v);
        if (!sr.empty()) ech.add_row(sr);
      }
    }
  }
  relation_rank_[du] = ech.rank();
  std::vector<int> pos(cols.size(), -1);
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (ech.is_pivot(static_cast<int>(c))) continue;
    pos[c] = static_cast<int>(basis_[du].size());
    basis_[du].push_back(cols[c]);
  }
  auto& red = reductions_[du];
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Reduction r;
    if (pos[c] >= 0) {
      r.terms.emplace_back(pos[c], Rational(1));
    } else {
      for (const auto& [col, v] : ech.rows().at(static_cast<int>(c)))
        if (col != static_cast<int>(c)) r.terms.emplace_back(pos[static_cast<std::size_t>(col)], -v);
    }
    red.emplace(key(cols[c]), std::move(r));
  }
}

std::vector<std::size_t> KeelRing::dims() const {
  std::vector<std::size_t> out;
  for (const auto& b : basis_) out.push_back(b.size());
  return out;
}

std::size_t KeelRing::dim(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return basis_[static_cast<std::size_t>(d)].size();
}

const std::vector<Monomial>& KeelRing::basis(int d) const {
  if (d < 0 || d > top_degree()) throw std::out_of_range("degree out of range");
  return basis_[static_cast<std::size_t>(d)];
}

const std::vector<Monomial>& KeelRing::monomials(int d) const {
  if (d < 0 || d > top_degree()) throw std::out_of_range("degree out of range");
  return monomials_[static_cast<std::size_t>(d)];
}

std::size_t KeelRing::relation_rank(int d) const {
  if (d < 0 || d > top_degree()) return 0;
  return relation_rank_[static_cast<std::size_t>(d)];
}

RingElement KeelRing::zero(int d) const { return RingElement{n_, d, QVector(dim(d))}; }

RingElement KeelRing::unit() const {
  RingElement e = zero(0);
  e.coeffs[0] = 1;
  return e;
}

bool KeelRing::compatible(const Monomial& m) const {
  for (std::size_t a = 0; a < m.size(); ++a)
    for (std::size_t b = a + 1; b < m.size(); ++b)
      if (!compat_[static_cast<std::size_t>(m[a])][static_cast<std::size_t>(m[b])]) return false;
  return true;
}

void KeelRing::accumulate(const Monomial& m, const Rational& c, QVector& out) const {
  int d = static_cast<int>(m.size());
  if (d > top_degree() || !compatible(m)) return;
  const auto& r = reductions_[static_cast<std::size_t>(d)].at(key(m));
  for (const auto& [p, v] : r.terms) out[static_cast<std::size_t>(p)] += c * v;
}

RingElement KeelRing::reduce(const Monomial& m) const {
  Monomial s = m;
  std::sort(s.begin(), s.end());
  RingElement e = zero(static_cast<int>(s.size()));
  accumulate(s, Rational(1), e.coeffs);
  return e;
}

RingElement KeelRing::divisor(const BoundaryIndex& b) const { return reduce({divisor_index(b)}); }

RingElement KeelRing::linear(const DivisorSum& sum) const {
  RingElement e = zero(1);
  for (const auto& [b, c] : sum) accumulate({divisor_index(b)}, c, e.coeffs);
  return e;
}

RingElement KeelRing::product(const std::vector<BoundaryIndex>& factors) const {
  Monomial m;
  for (const auto& b : factors) m.push_back(divisor_index(b));
  return reduce(m);
}

RingElement KeelRing::multiply(const RingElement& a, const RingElement& b) const {
  if (a.n != n_ || b.n != n_) throw std::invalid_argument("multiply: mismatched n");
  int d = a.degree + b.degree;
  RingElement out = zero(d);
  if (d > top_degree()) return out;
  const auto& ba = basis(a.degree);
  const auto& bb = basis(b.degree);
  Monomial m;
  for (std::size_t i = 0; i < a.coeffs.size(); ++i) {
    if (sgn(a.coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < b.coeffs.size(); ++j) {
      if (sgn(b.coeffs[j]) == 0) continue;
      m.clear();
      std::merge(ba[i].begin(), ba[i].end(), bb[j].begin(), bb[j].end(), std::back_inserter(m));
      accumulate(m, a.coeffs[i] * b.coeffs[j], out.coeffs);
    }
  }
  return out;
}

Rational KeelRing::integrate(const RingElement& a) const {
  if (a.n != n_ || a.degree != top_degree())
    throw std::invalid_argument("integrate: element is not of top degree");
  return a.coeffs[0] * anchor_inverse_;
}

std::vector<int> KeelRing::permute_divisors(const std::vector<int>& img) const {
  if (static_cast<int>(img.size()) != n_) throw std::invalid_argument("permutation of wrong size");
  std::vector<int> out(divisors_.size());
  for (std::size_t i = 0; i < divisors_.size(); ++i) {
    std::uint32_t m = 0;
    for (int x : divisors_[i].members()) m |= 1u << (img[static_cast<std::size_t>(x - 1)] - 1);
    out[i] = divisor_index(canonicalize_mask(m, n_));
  }
  return out;
}

RingElement KeelRing::act_indices(const std::vector<int>& divisor_perm, const RingElement& x) const {
  RingElement out = zero(x.degree);
  if (x.degree > top_degree()) return out;
  const auto& bx = basis(x.degree);
  Monomial m;
  for (std::size_t i = 0; i < x.coeffs.size(); ++i) {
    if (sgn(x.coeffs[i]) == 0) continue;
    m.clear();
    for (int f : bx[i]) m.push_back(divisor_perm[static_cast<std::size_t>(f)]);
    std::sort(m.begin(), m.end());
    accumulate(m, x.coeffs[i], out.coeffs);
  }
  return out;
}

std::string KeelRing::monomial_str(const Monomial& m) const {
  if (m.empty()) return "1";
  std::string s;
  for (int f : m) s += divisors_[static_cast<std::size_t>(f)].str();
  return s;
}

}  // namespace moduli

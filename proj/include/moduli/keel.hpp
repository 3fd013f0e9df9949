#pragma once

#include "moduli/qmatrix.hpp"
#include "moduli/rational.hpp"

#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace moduli {

inline constexpr int kDefaultKeelCap = 8;

// Boundary divisor D^S of M_{0,n}; stored canonically with n not in S.
struct BoundaryIndex {
  int n = 0;
  std::uint32_t mask = 0;  // bit i-1 set iff i in S

  std::vector<int> members() const;
  int size() const;
  std::string str() const;  // "[1,2,3]"
  bool operator==(const BoundaryIndex& o) const { return n == o.n && mask == o.mask; }
  bool operator!=(const BoundaryIndex& o) const { return !(*this == o); }
  // lexicographic on sorted member lists
  bool operator<(const BoundaryIndex& o) const;
};

// Throws std::invalid_argument when |S| is outside [2, n-2] or members leave {1..n}.
BoundaryIndex canonicalize(const std::vector<int>& s, int n);
BoundaryIndex canonicalize_mask(std::uint32_t mask, int n);
// Parses "[1,2]" or "1,2".
BoundaryIndex parse_boundary(const std::string& text, int n);

bool incompatible(const BoundaryIndex& s, const BoundaryIndex& t);

// Unreduced degree-1 combination of divisors.
using DivisorSum = std::vector<std::pair<BoundaryIndex, Rational>>;

// The two differences (ij|kl) - (ik|jl) and (ij|kl) - (il|jk) of the Keel sums.
std::pair<DivisorSum, DivisorSum> four_point_relation(int n, int i, int j, int k, int l);

// Sorted divisor indices into KeelRing::divisors().
using Monomial = std::vector<int>;

struct RingElement {
  int n = 0;
  int degree = 0;
  QVector coeffs;  // coordinates in the graded basis of this degree

  bool is_zero() const;
  RingElement& operator+=(const RingElement& o);
  RingElement& operator-=(const RingElement& o);
  RingElement& operator*=(const Rational& q);
  bool operator==(const RingElement& o) const;
};

RingElement operator+(RingElement a, const RingElement& b);
RingElement operator-(RingElement a, const RingElement& b);
RingElement operator*(const Rational& q, RingElement a);

class KeelRing {
 public:
  // build_graded_basis; throws std::invalid_argument when n < 4 or n > cap.
  explicit KeelRing(int n, int cap = kDefaultKeelCap);

  int n() const { return n_; }
  int top_degree() const { return n_ - 3; }
  const std::vector<BoundaryIndex>& divisors() const { return divisors_; }
  int divisor_index(const BoundaryIndex& b) const;

  std::vector<std::size_t> dims() const;
  std::size_t dim(int d) const;
  const std::vector<Monomial>& basis(int d) const;
  // compatible monomials of degree d in the fixed order
  const std::vector<Monomial>& monomials(int d) const;
  std::size_t relation_rank(int d) const;
  std::size_t linear_relation_count() const { return linear_relations_.size(); }

  RingElement zero(int d) const;
  RingElement unit() const;
  RingElement divisor(const BoundaryIndex& b) const;
  RingElement linear(const DivisorSum& sum) const;
  RingElement reduce(const Monomial& m) const;  // any multiset of divisor indices
  RingElement product(const std::vector<BoundaryIndex>& factors) const;
  RingElement multiply(const RingElement& a, const RingElement& b) const;
  Rational integrate(const RingElement& a) const;

  // image of each divisor index under a permutation of {1..n} (img[i-1] = g(i))
  std::vector<int> permute_divisors(const std::vector<int>& img) const;
  RingElement act_indices(const std::vector<int>& divisor_perm, const RingElement& x) const;

  bool compatible(const Monomial& m) const;
  std::string monomial_str(const Monomial& m) const;

 private:
  struct Reduction {
    std::vector<std::pair<int, Rational>> terms;  // (basis position, coefficient)
  };

  std::uint64_t key(const Monomial& m) const;
  void build_degree(int d);
  void accumulate(const Monomial& m, const Rational& c, QVector& out) const;

  int n_;
  std::vector<BoundaryIndex> divisors_;
  std::vector<std::vector<bool>> compat_;
  std::vector<QVector> linear_relations_;  // rref rows over divisors
  std::vector<std::vector<Monomial>> monomials_;
  std::vector<std::vector<Monomial>> basis_;
  std::vector<std::size_t> relation_rank_;
  std::vector<std::unordered_map<std::uint64_t, Reduction>> reductions_;
  Rational anchor_inverse_;
};

}  // namespace moduli

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace moduli {

// Even-weight subset of {1..2g+2} modulo the full set: a 2-torsion point of a
// hyperelliptic Jacobian, written in terms of the Weierstrass points.
struct TorsionVector {
  int g = 0;
  std::uint32_t bits = 0;  // canonical: weight < g+1, or weight g+1 containing 1
  bool is_zero() const { return bits == 0; }
  bool operator==(const TorsionVector& o) const { return g == o.g && bits == o.bits; }
  bool operator<(const TorsionVector& o) const { return bits < o.bits; }
};

TorsionVector torsion_vector(int g, std::uint32_t subset_mask);  // throws on odd weight
TorsionVector operator+(const TorsionVector& a, const TorsionVector& b);
int pairing(const TorsionVector& a, const TorsionVector& b);  // |S cap T| mod 2
bool pairing_nondegenerate(int g);

// {A, B} with A disjoint union B = {1..2g+2}, |A| = n <= g+1
struct PartitionClass {
  int g = 0;
  int n = 0;
  std::uint32_t side = 0;  // for n = g+1 the side containing 1
};
std::vector<PartitionClass> partition_classes(int g, int n);
std::uint64_t partition_count(int g, int n);

TorsionVector phi_R(const PartitionClass& p);  // n even, 2 <= n <= g+1

enum class Parity { Even, Odd };
const char* parity_str(Parity p);
Parity spin_parity(int g, int n);  // n = g+1 mod 2

// Brute force over the quadratic refinements of the standard symplectic form on F2^{2g}.
std::pair<std::uint64_t, std::uint64_t> arf_census(int g);

struct ThetaRow {
  int n = 0;
  std::uint64_t classes = 0;
  bool prym = false;    // n even, n >= 2
  bool spin = false;    // n = g+1 mod 2
  Parity parity = Parity::Even;
};

struct ThetaReport {
  int g = 0;
  std::vector<ThetaRow> rows;
  std::uint64_t prym_total = 0;
  std::uint64_t nonzero_torsion = 0;  // 2^{2g} - 1
  bool phi_injective = false;
  bool phi_surjective = false;
  std::uint64_t spin_even = 0, spin_odd = 0;
  std::uint64_t arf_even = 0, arf_odd = 0;
  bool nondegenerate = false;
  bool all_pass = false;
};

ThetaReport verify_bijections(int g);  // 1 <= g <= 8

}  // namespace moduli

#include "moduli/theta.hpp"

#include <bit>
#include <set>
#include <tuple>
#include <stdexcept>

namespace moduli {

namespace {

void check_genus(int g) {
  if (g < 1 || g > 8) throw std::invalid_argument("genus must lie in 1..8");
}

std::uint32_t full(int g) { return (std::uint32_t{1} << (2 * g + 2)) - 1; }

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

}  // namespace

TorsionVector torsion_vector(int g, std::uint32_t mask) {
  check_genus(g);
  mask &= full(g);
  if (std::popcount(mask) % 2) throw std::invalid_argument("odd weight subset is not a 2-torsion point");
  const int w = std::popcount(mask);
  if (w > g + 1 || (w == g + 1 && !(mask & 1u))) mask ^= full(g);
  return {g, mask};
}

TorsionVector operator+(const TorsionVector& a, const TorsionVector& b) {
  if (a.g != b.g) throw std::invalid_argument("genus mismatch");
  return torsion_vector(a.g, a.bits ^ b.bits);
}

int pairing(const TorsionVector& a, const TorsionVector& b) { return std::popcount(a.bits & b.bits) % 2; }

bool pairing_nondegenerate(int g) {
  check_genus(g);
  // basis e_1 + e_i, i = 2..2g+1; Gram matrix over F2 by elimination
  const int r = 2 * g;
  std::vector<std::uint32_t> rows(static_cast<std::size_t>(r), 0);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      TorsionVector a = torsion_vector(g, 1u | (1u << (i + 1)));
      TorsionVector b = torsion_vector(g, 1u | (1u << (j + 1)));
      if (pairing(a, b)) rows[static_cast<std::size_t>(i)] |= 1u << j;
    }
  int rank = 0;
  for (int c = 0; c < r; ++c) {
    int piv = -1;
    for (int i = rank; i < r; ++i)
      if (rows[static_cast<std::size_t>(i)] >> c & 1u) piv = i;
    if (piv < 0) continue;
    std::swap(rows[static_cast<std::size_t>(piv)], rows[static_cast<std::size_t>(rank)]);
    for (int i = 0; i < r; ++i)
      if (i != rank && (rows[static_cast<std::size_t>(i)] >> c & 1u)) rows[static_cast<std::size_t>(i)] ^= rows[static_cast<std::size_t>(rank)];
    ++rank;
  }
  return rank == r;
}

std::vector<PartitionClass> partition_classes(int g, int n) {
  check_genus(g);
  if (n < 0 || n > g + 1) throw std::invalid_argument("partition size out of range");
  std::vector<PartitionClass> out;
  for (std::uint32_t s = 0; s <= full(g); ++s) {
    if (std::popcount(s) != n) continue;
    if (n == g + 1 && !(s & 1u)) continue;
    out.push_back({g, n, s});
  }
  return out;
}

std::uint64_t partition_count(int g, int n) {
  check_genus(g);
  if (n < 0 || n > g + 1) return 0;
  const std::uint64_t c = binom(2 * g + 2, n);
  return n == g + 1 ? c / 2 : c;
}

TorsionVector phi_R(const PartitionClass& p) {
  if (p.n % 2 || p.n < 2 || p.n > p.g + 1) throw std::invalid_argument("phi_R needs an even part of size 2..g+1");
  return torsion_vector(p.g, p.side);
}

const char* parity_str(Parity p) { return p == Parity::Even ? "even" : "odd"; }

Parity spin_parity(int g, int n) {
  check_genus(g);
  if (n < 0 || n > g + 1 || (n - g - 1) % 2) throw std::invalid_argument("spin partitions need n = g+1 mod 2");
  return ((g + 1 - n) % 4 == 0) ? Parity::Even : Parity::Odd;
}

std::pair<std::uint64_t, std::uint64_t> arf_census(int g) {
  check_genus(g);
  // q(x,y) = sum x_i y_i + a.x + b.y on F2^g x F2^g; the refinements are indexed by (a,b)
  const std::uint32_t span = std::uint32_t{1} << g;
  std::uint64_t even = 0, odd = 0;
  for (std::uint32_t a = 0; a < span; ++a)
    for (std::uint32_t b = 0; b < span; ++b) {
      bool is_even;
      if (g <= 6) {
        std::uint64_t zeros = 0;
        for (std::uint32_t x = 0; x < span; ++x)
          for (std::uint32_t y = 0; y < span; ++y)
            zeros += (std::popcount(x & y) + std::popcount(a & x) + std::popcount(b & y)) % 2 == 0;
        is_even = 2 * zeros > (std::uint64_t{1} << (2 * g));
      } else {
        is_even = std::popcount(a & b) % 2 == 0;  // Arf = sum q(e_i) q(f_i)
      }
      (is_even ? even : odd) += 1;
    }
  return {even, odd};
}

ThetaReport verify_bijections(int g) {
  check_genus(g);
  ThetaReport r;
  r.g = g;
  r.nonzero_torsion = (std::uint64_t{1} << (2 * g)) - 1;
  std::set<TorsionVector> image;
  std::uint64_t images = 0;
  for (int n = 0; n <= g + 1; ++n) {
    ThetaRow row;
    row.n = n;
    row.classes = partition_count(g, n);
    row.prym = n % 2 == 0 && n >= 2;
    row.spin = (g + 1 - n) % 2 == 0;
    if (row.spin) {
      row.parity = spin_parity(g, n);
      (row.parity == Parity::Even ? r.spin_even : r.spin_odd) += row.classes;
    }
    if (row.prym) {
      r.prym_total += row.classes;
      for (const auto& p : partition_classes(g, n)) {
        image.insert(phi_R(p));
        ++images;
      }
    }
    r.rows.push_back(row);
  }
  r.phi_injective = image.size() == images && !image.count(TorsionVector{g, 0});
  r.phi_surjective = image.size() == r.nonzero_torsion;
  std::tie(r.arf_even, r.arf_odd) = arf_census(g);
  r.nondegenerate = pairing_nondegenerate(g);
  r.all_pass = r.prym_total == r.nonzero_torsion && r.phi_injective && r.phi_surjective && r.spin_even == r.arf_even &&
               r.spin_odd == r.arf_odd && r.nondegenerate;
  return r;
}

}  // namespace moduli

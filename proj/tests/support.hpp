#pragma once

#include "moduli/keel.hpp"
#include "moduli/space.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <vector>

namespace testing_support {

inline moduli::Workspace& workspace() {
  static moduli::Workspace ws(MODULI_TEST_PRESETS);
  return ws;
}

// Rank over F_p of a rational matrix whose denominators avoid p.
inline std::size_t rank_mod_p(const std::vector<moduli::QVector>& rows, std::int64_t p = 1000003) {
  if (rows.empty()) return 0;
  auto red = [p](const moduli::Rational& q) {
    mpz_class num = q.get_num() % p, den = q.get_den() % p;
    if (num < 0) num += p;
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mpz_class(p).get_mpz_t());
    return static_cast<std::int64_t>(mpz_class(num * inv % p).get_si());
  };
  const std::size_t cols = rows[0].size();
  std::vector<std::vector<std::int64_t>> m;
  for (const auto& r : rows) {
    std::vector<std::int64_t> v(cols);
    for (std::size_t c = 0; c < cols; ++c) v[c] = red(r[c]);
    m.push_back(v);
  }
  auto powmod = [p](std::int64_t b, std::int64_t e) {
    std::int64_t r = 1;
    b %= p;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    return r;
  };
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    const std::int64_t inv = powmod(m[rank][c], p - 2);
    for (auto& x : m[rank]) x = x * inv % p;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == rank || m[i][c] == 0) continue;
      const std::int64_t f = m[i][c];
      for (std::size_t k = c; k < cols; ++k) m[i][k] = ((m[i][k] - f * m[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

// Graded dimensions of A*(M0,n) recomputed from scratch: compatible monomials modulo the
// four-point relations times compatible monomials, ranks taken mod p.
inline std::vector<std::size_t> keel_dims_oracle(int n) {
  std::vector<std::uint32_t> divs;
  const std::uint32_t all = (1u << n) - 1;
  for (std::uint32_t s = 1; s < all; ++s) {
    if (s & (1u << (n - 1))) continue;  // side without the last point
    const int w = __builtin_popcount(s);
    if (w >= 2 && n - w >= 2) divs.push_back(s);
  }
  auto compat = [all](std::uint32_t a, std::uint32_t b) {
    const std::uint32_t ac = all & ~a, bc = all & ~b;
    return !(a & b) || !(a & bc) || !(ac & b) || !(ac & bc);
  };
  std::vector<std::vector<std::vector<int>>> mons(static_cast<std::size_t>(n - 2));
  mons[0] = {{}};
  for (int d = 1; d <= n - 3; ++d)
    for (const auto& m : mons[static_cast<std::size_t>(d - 1)]) {
      const int start = m.empty() ? 0 : m.back();
      for (int i = start; i < static_cast<int>(divs.size()); ++i) {
        bool ok = true;
        for (int j : m) ok = ok && compat(divs[static_cast<std::size_t>(i)], divs[static_cast<std::size_t>(j)]);
        if (!ok) continue;
        auto x = m;
        x.push_back(i);
        mons[static_cast<std::size_t>(d)].push_back(x);
      }
    }
  // R(ab|cd) = sum of D_S with a, b on one side and c, d on the other
  auto side_sum = [&](int a, int b, int c, int d) {
    std::map<int, int> r;
    for (std::size_t t = 0; t < divs.size(); ++t) {
      const std::uint32_t s = divs[t], sc = all & ~s;
      auto sep = [&](std::uint32_t x) { return (x >> a & 1u) && (x >> b & 1u) && !(x >> c & 1u) && !(x >> d & 1u); };
      if (sep(s) || sep(sc)) r[static_cast<int>(t)] += 1;
    }
    return r;
  };
  std::vector<std::vector<std::pair<int, int>>> lin;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          const auto base = side_sum(i, j, k, l);
          for (const auto& other : {side_sum(i, k, j, l), side_sum(i, l, j, k)}) {
            std::map<int, int> diff = base;
            for (const auto& [t, c] : other) diff[t] -= c;
            std::vector<std::pair<int, int>> rel;
            for (const auto& [t, c] : diff)
              if (c) rel.emplace_back(t, c);
            lin.push_back(rel);
          }
        }
  std::vector<std::size_t> dims;
  for (int d = 0; d <= n - 3; ++d) {
    const auto& cols = mons[static_cast<std::size_t>(d)];
    std::map<std::vector<int>, std::size_t> pos;
    for (std::size_t c = 0; c < cols.size(); ++c) pos[cols[c]] = c;
    std::vector<moduli::QVector> rows;
    if (d >= 1)
      for (const auto& rel : lin)
        for (const auto& m : mons[static_cast<std::size_t>(d - 1)]) {
          moduli::QVector v(cols.size());
          for (const auto& [t, c] : rel) {
            auto x = m;
            x.push_back(t);
            std::sort(x.begin(), x.end());
            auto it = pos.find(x);
            if (it != pos.end()) v[it->second] += c;
          }
          rows.push_back(v);
        }
    dims.push_back(cols.size() - rank_mod_p(rows));
  }
  return dims;
}

}  // namespace testing_support

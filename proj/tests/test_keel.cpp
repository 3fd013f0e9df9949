#include "moduli/keel.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace moduli;

namespace {

// P_{n+1} = (1+q) P_n + q/2 sum_{j=2}^{n-2} C(n,j) P_{j+1} P_{n-j+1}
std::vector<long> poincare(int n) {
  std::vector<std::vector<long>> p(static_cast<std::size_t>(n + 1));
  p[3] = {1};
  auto binom = [](int a, int b) {
    long r = 1;
    for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  for (int m = 3; m < n; ++m) {
    std::vector<long> next(static_cast<std::size_t>(m - 1), 0);
    const auto& pm = p[static_cast<std::size_t>(m)];
    for (std::size_t i = 0; i < pm.size(); ++i) {
      next[i] += pm[i];
      next[i + 1] += pm[i];
    }
    std::vector<long> acc(static_cast<std::size_t>(m - 1), 0);
    for (int j = 2; j <= m - 2; ++j) {
      const auto& a = p[static_cast<std::size_t>(j + 1)];
      const auto& b = p[static_cast<std::size_t>(m - j + 1)];
      for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y) acc[x + y + 1] += binom(m, j) * a[x] * b[y];
    }
    for (std::size_t i = 0; i < next.size(); ++i) next[i] += acc[i] / 2;
    p[static_cast<std::size_t>(m + 1)] = next;
  }
  return p[static_cast<std::size_t>(n)];
}

std::vector<long> as_long(const std::vector<std::size_t>& v) { return {v.begin(), v.end()}; }

}  // namespace

TEST_CASE("graded dimensions for small n") {
  CHECK(KeelRing(4).dims() == std::vector<std::size_t>{1, 1});
  CHECK(KeelRing(5).dims() == std::vector<std::size_t>{1, 5, 1});
  CHECK(testing_support::workspace().ring().dims() == std::vector<std::size_t>{1, 16, 16, 1});
}

TEST_CASE("dimensions agree with the Poincare recursion and a modular recomputation") {
  for (int n = 4; n <= 6; ++n) {
    auto d = n == 6 ? testing_support::workspace().ring().dims() : KeelRing(n).dims();
    CHECK(as_long(d) == poincare(n));
    CHECK(d == testing_support::keel_dims_oracle(n));
    for (std::size_t i = 0; i < d.size(); ++i) CHECK(d[i] == d[d.size() - 1 - i]);
  }
}

TEST_CASE("n out of range") {
  CHECK_THROWS_AS(KeelRing(3), std::invalid_argument);
  CHECK_THROWS_AS(KeelRing(9), std::invalid_argument);
}

TEST_CASE("boundary indices") {
  CHECK(canonicalize({1, 2}, 5) == canonicalize({3, 4, 5}, 5));
  CHECK(parse_boundary("[5,6]", 6) == canonicalize({1, 2, 3, 4}, 6));
  CHECK_THROWS_AS(canonicalize({1}, 6), std::invalid_argument);
  CHECK_THROWS_AS(canonicalize({1, 7}, 6), std::invalid_argument);
  CHECK(incompatible(canonicalize({1, 2}, 6), canonicalize({2, 3}, 6)));
  CHECK_FALSE(incompatible(canonicalize({1, 2}, 6), canonicalize({1, 2, 3}, 6)));
}

TEST_CASE("four-point relations vanish and products of incompatible divisors are zero") {
  const auto& ring = testing_support::workspace().ring();
  auto [a, b] = four_point_relation(6, 1, 2, 3, 4);
  CHECK(ring.linear(a).is_zero());
  CHECK(ring.linear(b).is_zero());
  CHECK(ring.product({canonicalize({1, 2}, 6), canonicalize({2, 3}, 6)}).is_zero());
}

TEST_CASE("point class integrates to one and self-intersection on M0,4") {
  KeelRing r4(4);
  CHECK(r4.integrate(r4.divisor(canonicalize({1, 2}, 4))) == 1);
  KeelRing r5(5);
  auto d = r5.divisor(canonicalize({1, 2}, 5));
  CHECK(r5.integrate(r5.multiply(d, d)) == -1);
  CHECK(r5.integrate(r5.product({canonicalize({1, 2}, 5), canonicalize({3, 4}, 5)})) == 1);
}

TEST_CASE("multiplication is commutative and associative on samples") {
  const auto& ring = testing_support::workspace().ring();
  auto x = ring.divisor(canonicalize({1, 2}, 6)) + ring.divisor(canonicalize({1, 2, 3}, 6));
  auto y = ring.divisor(canonicalize({3, 4}, 6));
  auto z = ring.divisor(canonicalize({5, 6}, 6)) + ring.divisor(canonicalize({2, 5}, 6));
  CHECK(ring.multiply(x, y) == ring.multiply(y, x));
  CHECK(ring.multiply(ring.multiply(x, y), z) == ring.multiply(x, ring.multiply(y, z)));
}

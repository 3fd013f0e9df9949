#include "moduli/qmatrix.hpp"
#include "moduli/rational.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace moduli;

TEST_CASE("rational parsing and printing") {
  CHECK(to_string(parse_rational("6/8")) == "3/4");
  CHECK(to_string(parse_rational("-4/2")) == "-2");
  CHECK(to_string(make_rational(3, -6)) == "-1/2");
  CHECK(is_integer(parse_rational("10/5")));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("x"), std::invalid_argument);
  CHECK_THROWS_AS(make_rational(1, 0), std::invalid_argument);
}

TEST_CASE("rref, rank and kernel") {
  QMatrix m = QMatrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(m) == 2);
  auto k = kernel_basis(m);
  REQUIRE(k.size() == 1);
  CHECK(is_zero(mat_vec(m, k[0])));
  auto r = rref(m);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK_THROWS_AS(QMatrix::from_rows({{1, 2}, {1}}), std::invalid_argument);
}

TEST_CASE("solve detects inconsistency") {
  QMatrix a = QMatrix::from_rows({{1, 1}, {2, 2}});
  CHECK_FALSE(solve(a, {1, 3}).has_value());
  auto x = solve(a, {1, 2});
  REQUIRE(x);
  CHECK(mat_vec(a, *x) == QVector{1, 2});
}

TEST_CASE("sparse echelon agrees with dense rref") {
  std::vector<QVector> rows = {{0, 2, 4, 0}, {1, 1, 0, make_rational(1, 3)}, {1, 2, 2, make_rational(1, 3)}, {3, 0, -1, 5}};
  SparseEchelon e(4);
  for (const auto& r : rows) {
    SparseRow s;
    for (int c = 0; c < 4; ++c)
      if (r[static_cast<std::size_t>(c)] != 0) s.emplace_back(c, r[static_cast<std::size_t>(c)]);
    e.add_row(s);
  }
  CHECK(e.rank() == rank(QMatrix::from_rows(rows)));
  CHECK(e.rank() == testing_support::rank_mod_p(rows));
}

TEST_CASE("rank agrees with a modular oracle on random integer matrices") {
  std::uint64_t seed = 12345;
  auto next = [&] {
    seed = seed * 6364136223846793005ULL + 1442695040888963407ULL;
    return static_cast<long>((seed >> 33) % 7) - 3;
  };
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<QVector> rows(6, QVector(7));
    for (auto& r : rows)
      for (auto& x : r) x = next();
    rows[5] = rows[0];
    for (std::size_t c = 0; c < 7; ++c) rows[5][c] += rows[1][c];
    CHECK(rank(QMatrix::from_rows(rows)) == testing_support::rank_mod_p(rows));
  }
}

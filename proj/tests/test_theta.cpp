#include "moduli/theta.hpp"

#include <doctest.h>

#include <set>
#include <stdexcept>

using namespace moduli;

TEST_CASE("torsion vectors modulo the full set") {
  auto a = torsion_vector(2, 0b000011);
  CHECK(a.bits == 0b000011);
  CHECK(torsion_vector(2, 0b111100) == a);
  CHECK(torsion_vector(2, 0b111111).is_zero());
  CHECK((a + a).is_zero());
  CHECK_THROWS_AS(torsion_vector(2, 0b1), std::invalid_argument);
  CHECK(torsion_vector(2, 0b001111).bits == 0b110000);
}

TEST_CASE("pairing is alternating and nondegenerate") {
  for (int g = 1; g <= 5; ++g) CHECK(pairing_nondegenerate(g));
  auto a = torsion_vector(3, 0b00000011), b = torsion_vector(3, 0b00000110);
  CHECK(pairing(a, a) == 0);
  CHECK(pairing(a, b) == 1);
}

TEST_CASE("phi_R on genus 2") {
  auto p = partition_classes(2, 2);
  CHECK(p.size() == 15);
  std::set<TorsionVector> img;
  for (const auto& c : p) img.insert(phi_R(c));
  CHECK(img.size() == 15);
  CHECK_THROWS_AS(phi_R(partition_classes(2, 1).front()), std::invalid_argument);
  CHECK(partition_count(3, 2) + partition_count(3, 4) == 63);
}

TEST_CASE("spin parity rule") {
  CHECK(spin_parity(2, 3) == Parity::Even);
  CHECK(spin_parity(2, 1) == Parity::Odd);
  CHECK(spin_parity(3, 0) == Parity::Even);
  CHECK(spin_parity(3, 2) == Parity::Odd);
  CHECK_THROWS_AS(spin_parity(2, 2), std::invalid_argument);
}

TEST_CASE("Arf census") {
  CHECK(arf_census(1) == std::pair<std::uint64_t, std::uint64_t>{3, 1});
  CHECK(arf_census(2) == std::pair<std::uint64_t, std::uint64_t>{10, 6});
  CHECK(arf_census(3) == std::pair<std::uint64_t, std::uint64_t>{36, 28});
  for (int g = 1; g <= 8; ++g) {
    auto [e, o] = arf_census(g);
    CHECK(e == (std::uint64_t{1} << (2 * g - 1)) + (std::uint64_t{1} << (g - 1)));
    CHECK(o == (std::uint64_t{1} << (2 * g - 1)) - (std::uint64_t{1} << (g - 1)));
  }
  CHECK_THROWS_AS(arf_census(9), std::invalid_argument);
}

TEST_CASE("bijections for genus 1 to 6") {
  for (int g = 1; g <= 6; ++g) {
    CAPTURE(g);
    auto r = verify_bijections(g);
    CHECK(r.all_pass);
  }
}

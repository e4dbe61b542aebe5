#include <catch2/catch_amalgamated.hpp>

#include "irrlat/rootdata.hpp"

using namespace irrlat;

namespace {
characteristic P(int p) { return characteristic::prime(p); }
std::int64_t wd(const char* t, const high_weight& w) { return weyl_dim(simple_type::parse(t), w); }
}  // namespace

TEST_CASE("positive root counts") {
  auto count = [](const char* t) {
    return rootdata::positive_roots(simple_type::parse(t)).size();
  };
  CHECK(count("A2") == 3);
  CHECK(count("A5") == 15);
  CHECK(count("B4") == 16);
  CHECK(count("C3") == 9);
  CHECK(count("D4") == 12);
  CHECK(count("G2") == 6);
  CHECK(count("F4") == 24);
  CHECK(count("E6") == 36);
  CHECK(count("E7") == 63);
  CHECK(count("E8") == 120);
}

TEST_CASE("Weyl dimension formula on known modules") {
  CHECK(wd("A1", {3}) == 4);
  CHECK(wd("A2", {1, 1}) == 8);
  CHECK(wd("A2", {2, 2}) == 27);
  CHECK(wd("A3", {1, 0, 1}) == 15);
  CHECK(wd("A3", {0, 2, 0}) == 20);
  CHECK(wd("A5", {0, 0, 1, 0, 0}) == 20);
  CHECK(wd("A5", {1, 0, 0, 0, 1}) == 35);
  CHECK(wd("B2", {1, 0}) == 5);
  CHECK(wd("B2", {0, 1}) == 4);
  CHECK(wd("B3", {1, 0, 0}) == 7);
  CHECK(wd("B3", {0, 1, 0}) == 21);
  CHECK(wd("B3", {0, 0, 1}) == 8);
  CHECK(wd("B4", {1, 0, 0, 0}) == 9);
  CHECK(wd("B4", {0, 1, 0, 0}) == 36);
  CHECK(wd("B4", {0, 0, 0, 1}) == 16);
  CHECK(wd("C3", {1, 0, 0}) == 6);
  CHECK(wd("C3", {0, 1, 0}) == 14);
  CHECK(wd("C3", {0, 0, 1}) == 14);
  CHECK(wd("C3", {2, 0, 0}) == 21);
  CHECK(wd("C4", {0, 1, 0, 0}) == 27);
  CHECK(wd("C4", {2, 0, 0, 0}) == 36);
  CHECK(wd("C4", {0, 0, 0, 1}) == 42);
  CHECK(wd("D4", {1, 0, 0, 0}) == 8);
  CHECK(wd("D4", {0, 1, 0, 0}) == 28);
  CHECK(wd("D4", {0, 0, 1, 0}) == 8);
  CHECK(wd("D4", {0, 0, 0, 1}) == 8);
  CHECK(wd("G2", {1, 0}) == 7);
  CHECK(wd("G2", {0, 1}) == 14);
  CHECK(wd("G2", {2, 0}) == 27);
  CHECK(wd("G2", {1, 1}) == 64);
  CHECK(wd("G2", {3, 0}) == 77);
  CHECK(wd("F4", {0, 0, 0, 1}) == 26);
  CHECK(wd("F4", {1, 0, 0, 0}) == 52);
  CHECK(wd("E6", {1, 0, 0, 0, 0, 0}) == 27);
  CHECK(wd("E6", {0, 1, 0, 0, 0, 0}) == 78);
  CHECK(wd("E7", {0, 0, 0, 0, 0, 0, 1}) == 56);
  CHECK(wd("E7", {1, 0, 0, 0, 0, 0, 0}) == 133);
  CHECK(wd("E8", {0, 0, 0, 0, 0, 0, 0, 1}) == 248);
  CHECK(wd("D8", {1, 0, 0, 0, 0, 0, 0, 0}) == 16);
  CHECK(wd("A5", {0, 1, 0, 0, 0}) == 15);
}

TEST_CASE("modular dimensions through digit layers and exceptions") {
  CHECK(irr_dim(simple_type::parse("G2"), {1, 0}, P(2)) == 6);
  CHECK(irr_dim(simple_type::parse("G2"), {1, 0}, P(3)) == 7);
  CHECK(irr_dim(simple_type::parse("G2"), {2, 0}, P(2)) == 6);  // Frobenius twist of (1,0)
  CHECK(irr_dim(simple_type::parse("G2"), {2, 0}, P(7)) == 26);
  CHECK(irr_dim(simple_type::parse("G2"), {1, 1}, P(7)) == 38);
  CHECK(irr_dim(simple_type::parse("C4"), {0, 1, 0, 0}, P(2)) == 26);
  CHECK(irr_dim(simple_type::parse("C4"), {0, 0, 0, 1}, P(2)) == 16);
  CHECK(irr_dim(simple_type::parse("D4"), {0, 1, 0, 0}, P(2)) == 26);
  CHECK(irr_dim(simple_type::parse("D4"), {2, 0, 0, 0}, P(2)) == 8);
  CHECK(irr_dim(simple_type::parse("B3"), {1, 0, 0}, P(2)) == 6);
  CHECK(irr_dim(simple_type::parse("B3"), {0, 1, 0}, P(2)) == 14);
  CHECK(irr_dim(simple_type::parse("A3"), {1, 0, 1}, P(2)) == 14);
  CHECK(irr_dim(simple_type::parse("A3"), {0, 2, 0}, P(2)) == 6);
  CHECK(irr_dim(simple_type::parse("A3"), {1, 0, 1}, P(3)) == 15);
  CHECK(irr_dim(simple_type::parse("A2"), {1, 1}, P(3)) == 7);
  CHECK(irr_dim(simple_type::parse("A1"), {6}, P(2)) == 4);
  CHECK(irr_dim(simple_type::parse("B2"), {1, 0}, P(2)) == 4);
  CHECK(irr_dim(simple_type::parse("B2"), {1, 0}, characteristic::infinity()) == 5);
}

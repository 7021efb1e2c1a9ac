#include <random>

#include "doctest.h"
#include "tfg/elekmonod.hpp"
#include "tfg/systems.hpp"

using namespace tfg;

namespace {

// Independent oracle: the integer value of a finite digit prefix.
BigInt value_of(const Point& x, std::size_t n) {
  BigInt v = 0;
  for (std::size_t i = n; i-- > 0;) v = 2 * v + x.digits.digit(i);
  return v;
}

Point random_odometer_point(const SystemContext& sys, std::mt19937_64& rng) {
  std::vector<int> prefix(rng() % 8), period(1 + rng() % 3);
  for (auto& d : prefix) d = static_cast<int>(rng() % 2);
  for (auto& d : period) d = static_cast<int>(rng() % 2);
  return odometer_point(sys, prefix, period);
}

}  // namespace

TEST_CASE("translate: odometer add with carry") {
  const auto sys = SystemContext::binary_odometer();
  const auto x = odometer_point(*sys, {0, 1, 1}, {0});
  CHECK(translate(*sys, x, GroupElement::vec({1})) == odometer_point(*sys, {1, 1, 1}, {0}));
  const auto ones = odometer_point(*sys, {}, {1});
  CHECK(translate(*sys, ones, GroupElement::vec({1})) == odometer_point(*sys, {}, {0}));
  CHECK(translate(*sys, odometer_point(*sys, {}, {0}), GroupElement::vec({-1})) == ones);
}

TEST_CASE("translate: orbit points move by vectors") {
  const auto sys = em::em_system();
  CHECK(translate(*sys, orbit_point({2, 3}), GroupElement::vec({1, -1})) == orbit_point({3, 2}));
}

TEST_CASE("window: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto x = odometer_point(*odo, {0, 1}, {0});
  const std::vector<Cell> first3 = {Cell::digit(0), Cell::digit(1), Cell::digit(2)};
  CHECK(window(*odo, x, first3) == std::vector<int>{0, 1, 0});

  const auto em = em::em_system();
  const std::vector<Cell> edge = {Cell::hedge(0, 0)};
  CHECK(window(*em, orbit_point({0, 0}), edge) == std::vector<int>{em::E});

  const auto prod = SystemContext::product({odo, odo});
  Point p;
  p.factors = {x, odometer_point(*odo, {1}, {0})};
  std::vector<Cell> dom = {Cell::digit(0, 0), Cell::digit(1, 0), Cell::digit(0, 1), Cell::digit(1, 1)};
  CHECK(window(*prod, p, dom) == std::vector<int>{0, 1, 1, 0});
}

TEST_CASE("metric: examples") {
  const auto sys = SystemContext::binary_odometer();
  const auto x = odometer_point(*sys, {1, 0, 1, 1, 0}, {0});
  auto m = metric(*sys, x, x, 10);
  CHECK(m.value == 0);
  CHECK(m.agree_radius == 10);
  CHECK(metric(*sys, x, odometer_point(*sys, {0, 0, 1, 1, 0}, {0}), 10).value == 1);
  m = metric(*sys, x, odometer_point(*sys, {1, 0, 1, 1, 0, 1}, {0}), 10);
  CHECK(m.value == ratio(1, 32));
  CHECK(m.agree_radius == 5);
}

TEST_CASE("banach_density_lower: examples") {
  const auto sys = SystemContext::binary_odometer();
  const auto base = odometer_point(*sys, {1, 0, 1}, {0, 1});
  CHECK(banach_density_lower(*sys, Pattern::exact({{Cell::digit(0), 0}}), base, 8) == ratio(128, 256));
  CHECK(banach_density_lower(*sys, Pattern::full(), base, 8) == 1);
  Pattern empty;
  empty.constraints.push_back({Cell::digit(0), 0});
  CHECK(banach_density_lower(*sys, empty, base, 4) == 0);
}

TEST_CASE("property: action law on odometer points") {
  std::mt19937_64 rng(21);
  const auto sys = SystemContext::binary_odometer();
  const auto B = ball(sys->group, 3);
  for (int t = 0; t < 200; ++t) {
    const auto x = random_odometer_point(*sys, rng);
    const auto& g = B[rng() % B.size()];
    const auto& h = B[rng() % B.size()];
    CHECK(translate(*sys, translate(*sys, x, g), h) == translate(*sys, x, multiply(sys->group, h, g)));
  }
}

TEST_CASE("property: +1 matches integer addition on prefixes") {
  std::mt19937_64 rng(22);
  const auto sys = SystemContext::binary_odometer();
  for (int t = 0; t < 200; ++t) {
    const auto x = random_odometer_point(*sys, rng);
    const auto y = translate(*sys, x, GroupElement::vec({1}));
    for (std::size_t n : {1u, 4u, 9u}) CHECK(value_of(y, n) == (value_of(x, n) + 1) % (BigInt(1) << n));
  }
}

TEST_CASE("property: orbit windows are translation covariant") {
  std::mt19937_64 rng(23);
  const auto sys = em::em_system();
  const auto cells = radius_cells(*sys, 4);
  std::uniform_int_distribution<std::int64_t> c(-40, 40);
  for (int t = 0; t < 50; ++t) {
    const auto x = orbit_point({c(rng), c(rng)});
    const std::vector<std::int64_t> g = {c(rng), c(rng)};
    const auto gx = translate(*sys, x, GroupElement::vec(g));
    const std::vector<std::int64_t> ginv = {-g[0], -g[1]};
    for (const auto& cell : cells) CHECK(symbol_at(*sys, gx, cell) == symbol_at(*sys, x, shift_cell(cell, ginv)));
  }
}

TEST_CASE("property: metric symmetric with triangle inequality") {
  std::mt19937_64 rng(24);
  const auto sys = SystemContext::binary_odometer();
  for (int t = 0; t < 200; ++t) {
    const auto x = random_odometer_point(*sys, rng), y = random_odometer_point(*sys, rng),
               z = random_odometer_point(*sys, rng);
    const auto dxy = metric(*sys, x, y, 12).value, dyz = metric(*sys, y, z, 12).value,
               dxz = metric(*sys, x, z, 12).value;
    CHECK(dxy == metric(*sys, y, x, 12).value);
    CHECK(dxz <= dxy + dyz);
  }
}

TEST_CASE("property: +1 then -1 returns the canonical point") {
  std::mt19937_64 rng(25);
  const auto sys = SystemContext::binary_odometer();
  for (int t = 0; t < 200; ++t) {
    const auto x = random_odometer_point(*sys, rng);
    CHECK(translate(*sys, translate(*sys, x, GroupElement::vec({1})), GroupElement::vec({-1})) == x);
  }
}

TEST_CASE("patterns: intersection and disjointness") {
  const auto a = Pattern::exact({{Cell::digit(0), 0}});
  const auto b = Pattern::exact({{Cell::digit(0), 1}});
  const auto c = Pattern::exact({{Cell::digit(1), 1}});
  CHECK(syntactically_disjoint(a, b));
  auto ac = intersect(a, c);
  REQUIRE(ac);
  CHECK(ac->constraints.size() == 2);
  CHECK(intersect(a, Pattern::full()) == a);
}

#include <random>

#include "doctest.h"
#include "tfg/lef.hpp"

using namespace tfg;

namespace {

CocycleTable plus(const SystemPtr& s, std::int64_t k) { return constant_table(s, GroupElement::vec({k})); }

Map cycle(std::uint32_t n) {
  Map m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = (i + 1) % n;
  return m;
}

Map identity(std::size_t n) {
  Map m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

std::size_t index_of(const FiniteModel& M, const Point& p) {
  for (std::size_t i = 0; i < M.points.size(); ++i)
    if (M.points[i] == p) return i;
  return M.points.size();
}

Point random_point(const SystemContext& sys, std::mt19937_64& rng) {
  std::vector<int> prefix(rng() % 12), period(1 + rng() % 3);
  for (auto& d : prefix) d = static_cast<int>(rng() % 2);
  for (auto& d : period) d = static_cast<int>(rng() % 2);
  return odometer_point(sys, prefix, period);
}

}  // namespace

TEST_CASE("odometer_finite_model: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto M = odometer_finite_model(odo, 3);
  CHECK(M.points.size() == 8);
  CHECK(M.epsilon == ratio(1, 8));
  const Map up = M.beta_of(GroupElement::vec({1}));
  const Map down = M.beta_of(GroupElement::vec({-1}));
  // Points are the integers 0..7 with zero tail.
  for (std::uint32_t k = 0; k < 8; ++k)
    CHECK(M.points[k] == odometer_point(*odo, {int(k & 1u), int(k >> 1 & 1u), int(k >> 2 & 1u)}, {0}));
  CHECK(up == cycle(8));
  for (std::uint32_t k = 0; k < 8; ++k) CHECK(down[up[k]] == k);
  // Carry point: alpha(+1) of 7 is 8, beta(+1) of 7 is 0; they agree on the first 3 digits.
  const auto a = translate(*odo, M.points[7], GroupElement::vec({1}));
  CHECK(metric(*odo, a, M.points[up[7]], 20).value == ratio(1, 8));
}

TEST_CASE("check_residually_finite: examples") {
  std::mt19937_64 rng(81);
  const auto odo = SystemContext::binary_odometer();
  const auto M = odometer_finite_model(odo, 3);
  std::vector<Point> samples;
  for (int i = 0; i < 100; ++i) samples.push_back(random_point(*odo, rng));
  samples.push_back(odometer_point(*odo, {}, {1}));
  const std::vector<GroupElement> F = {GroupElement::vec({1}), GroupElement::vec({-1})};
  auto r = check_residually_finite(M, samples, F, ratio(1, 8));
  CHECK(r.pass());
  CHECK(r.worst_approximation == ratio(1, 8));
  r = check_residually_finite(M, samples, F, ratio(1, 32));
  CHECK_FALSE(r.density_ok);
  CHECK(r.density_witness);
  r = check_residually_finite(M, samples, {}, ratio(1, 8));
  CHECK(r.approximation_ok);
}

TEST_CASE("freeness_check: examples") {
  const auto odo = SystemContext::binary_odometer();
  auto M = odometer_finite_model(odo, 3);
  auto f = freeness_check(M, 4);
  CHECK(f.free);
  CHECK(f.structural);
  CHECK(freeness_check(M, 0).vacuous);
  M.points[5] = M.points[2];
  f = freeness_check(M, 4);
  CHECK_FALSE(f.free);
  CHECK(f.duplicate);
}

TEST_CASE("build_lef_map: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto M = odometer_finite_model(odo, 3);
  CHECK(lef_permutation(plus(odo, 1), M) == cycle(8));
  CHECK(lef_permutation(identity_table(odo), M) == identity(8));
  // Swap moves no point across the carry, so Theta agrees with alpha pointwise.
  const Map s = lef_permutation(odometer_swap(odo), M);
  for (std::size_t z = 0; z < 8; ++z) {
    CHECK(s[z] == index_of(M, evaluate(odometer_swap(odo), M.points[z])));
    CHECK(s[z] == (z ^ 1u));
  }
  CHECK_THROWS_AS(lef_permutation(plus(odo, 2), [&] {
    auto N = M;
    N.beta.clear();
    return N;
  }()), LefError);
}

TEST_CASE("check_lef_conditions: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto M = odometer_finite_model(odo, 3);
  auto r = check_lef_conditions(build_lef_map({identity_table(odo)}, M), M);
  CHECK(r.pass());

  const auto ball = subgroup_ball({plus(odo, 1), plus(odo, -1)}, 2);
  r = check_lef_conditions(build_lef_map(ball, M), M);
  CHECK(r.multiplicative);
  CHECK(r.max_product_defect == 0);
  CHECK(r.pass());

  const auto sw = subgroup_ball({odometer_swap(odo)}, 1);
  std::vector<Rational> eps(sw.size(), ratio(1, 4));
  r = check_lef_conditions(build_lef_map(sw, M), M, eps);
  CHECK(r.min_displacement == 1);
  CHECK(r.pass());
  std::vector<Rational> strict(sw.size(), Rational(1));
  CHECK_FALSE(check_lef_conditions(build_lef_map(sw, M), M, strict).displacement_ok);
}

TEST_CASE("property: identity maps to identity and products are exact on cyclic balls") {
  const auto odo = SystemContext::binary_odometer();
  for (int n = 3; n <= 10; ++n) {
    const auto M = odometer_finite_model(odo, n);
    CHECK(lef_permutation(identity_table(odo), M) == identity(M.points.size()));
    const auto ball = subgroup_ball({plus(odo, 1), plus(odo, -1)}, 3);
    CHECK(check_lef_conditions(build_lef_map(ball, M), M).max_product_defect == 0);
  }
}

TEST_CASE("property: model quality halves per level") {
  const auto odo = SystemContext::binary_odometer();
  for (int n = 1; n < 16; ++n) CHECK(odometer_finite_model(odo, n + 1).epsilon * 2 == odometer_finite_model(odo, n).epsilon);
}

TEST_CASE("property: minimal LEF level is finite and stays passing") {
  const auto odo = SystemContext::binary_odometer();
  const auto ball = subgroup_ball({plus(odo, 1), plus(odo, -1), odometer_swap(odo)}, 2);
  const auto s = minimal_lef_n(odo, ball, 16);
  REQUIRE(s.minimal_n);
  CHECK(*s.minimal_n <= 16);
  CHECK(s.monotone);
  for (const auto& row : s.rows)
    if (row.n >= *s.minimal_n) CHECK(row.report.pass());
  const auto j = to_json(s);
  CHECK(j.contains("minimal_n"));
}

#include <random>

#include "doctest.h"
#include "tfg/sofic.hpp"

using namespace tfg;

namespace {

CocycleTable plus(const SystemPtr& s, std::int64_t k) { return constant_table(s, GroupElement::vec({k})); }

Point zero(const SystemPtr& s) { return odometer_point(*s, {}, {0}); }
Point minus_one(const SystemPtr& s) { return odometer_point(*s, {}, {1}); }

Map cycle(std::uint32_t n) {
  Map m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = (i + 1) % n;
  return m;
}

Map identity(std::uint32_t n) {
  Map m(n);
  for (std::uint32_t i = 0; i < n; ++i) m[i] = i;
  return m;
}

std::size_t moved(const Map& f) {
  std::size_t c = 0;
  for (std::size_t i = 0; i < f.size(); ++i) c += f[i] != i;
  return c;
}

Map random_map(std::mt19937_64& rng, std::uint32_t n) {
  Map m(n);
  for (auto& v : m) v = static_cast<std::uint32_t>(rng() % n);
  return m;
}

}  // namespace

TEST_CASE("hamming: examples") {
  CHECK(hamming(cycle(5), cycle(5)) == 0);
  CHECK(hamming(Map{0, 1, 2, 3}, Map{0, 1, 3, 3}) == ratio(1, 4));
  CHECK(hamming(identity(8), cycle(8)) == 1);
  CHECK_THROWS(hamming(identity(3), identity(4)));
}

TEST_CASE("build_theta: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1), swap = odometer_swap(odo), id = identity_table(odo);
  auto A = build_theta(odo, zero(odo), 3, {up, swap, id});
  CHECK(A.base_size() == 8);
  const Map& c = A.base_map(up);
  CHECK(c == cycle(8));
  CHECK(hamming(c, identity(8)) == 1);
  CHECK(A.base_map(id) == identity(8));
  // Orbit {1..8}: swap pairs 2-3, 4-5, 6-7 inside; 1 and 8 leave and are matched to themselves.
  CHECK(moved(A.base_map(swap)) == 6);
  // Orbit {0..7}: every point has its swap partner inside.
  auto B = build_theta(odo, minus_one(odo), 3, {swap});
  CHECK(moved(B.base_map(swap)) == 8);
  CHECK(is_permutation(B.base_map(swap)));
}

TEST_CASE("build_theta: collisions are rejected") {
  OdometerBases periodic{{}, {2}};
  const auto odo = SystemContext::odometer(periodic);
  CHECK_NOTHROW(build_theta(odo, zero(odo), 4, {plus(odo, 1)}));
  auto undeclared = std::make_shared<SystemContext>(*odo);
  undeclared->declared_free = false;
  CHECK_THROWS(build_theta(undeclared, zero(odo), 2, {plus(odo, 1)}));
}

TEST_CASE("build_theta_multi: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1);
  auto one = build_theta_multi(odo, {zero(odo)}, 3, {up});
  auto single = build_theta(odo, zero(odo), 3, {up});
  CHECK(one.base_map(up) == single.base_map(up));
  auto twice = build_theta_multi(odo, {zero(odo), zero(odo)}, 3, {up});
  CHECK(twice.base_size() == 16);
  auto two = build_theta_multi(odo, {zero(odo), odometer_point(*odo, {1}, {0})}, 2, {up});
  CHECK(two.base_size() == 8);
  const Map& m = two.base_map(up);
  CHECK(m == Map{1, 2, 3, 0, 5, 6, 7, 4});
}

TEST_CASE("amplify: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1), id = identity_table(odo);
  auto A = build_theta(odo, zero(odo), 3, {up, id});
  auto A1 = amplify(A, 1);
  CHECK(action_hamming(A1, up, id) == action_hamming(A, up, id));
  auto A2 = amplify(A, 2);
  CHECK(action_hamming(A2, up, id) == 1);
  CHECK(action_hamming_explicit(A2, up, id) == 1);
  CHECK(action_hamming_explicit(A2, id, id) == 0);

  const Map f = identity(4), g = {1, 0, 2, 3};
  CHECK(hamming(amplify_map(f, 2), amplify_map(g, 2)) == ratio(3, 4));
}

TEST_CASE("check_injective_almost_action: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1), down = plus(odo, -1), id = identity_table(odo);
  auto A = build_theta(odo, zero(odo), 8, {id});
  auto r = check_injective_almost_action(A, {id}, ratio(1, 1000));
  CHECK(r.pass);
  CHECK(r.identity_ok);

  auto B = build_theta(odo, zero(odo), 8, {up, down});
  r = check_injective_almost_action(B, {up, down}, ratio(1, 10));
  CHECK(r.mult_defect <= ratio(2, 256));

  auto C = build_theta(odo, zero(odo), 2, {up});
  r = check_injective_almost_action(C, {up}, ratio(1, 10));
  CHECK(r.min_displacement == 1);
  CHECK(r.displacement_ok);
}

TEST_CASE("measure_good_sets: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1), down = plus(odo, -1), id = identity_table(odo);
  auto A = build_theta(odo, zero(odo), 3, {id});
  auto g = measure_good_sets(A, {id});
  CHECK(g.q1 == 1);
  CHECK(g.q2 == 1);

  // Oracle: count points where every pair in the ball composes correctly.
  auto B = build_theta(odo, zero(odo), 8, {up, down});
  const auto ball = subgroup_ball({up, down}, 2);
  std::size_t good = 0;
  for (std::uint32_t z = 0; z < B.base_size(); ++z) {
    bool ok = true;
    for (const auto& a : ball)
      for (const auto& b : ball) {
        const auto& fa = ensure_assigned(B, a);
        const auto& fb = ensure_assigned(B, b);
        const auto& fab = ensure_assigned(B, compose(a, b));
        ok = ok && fa[fb[z]] == fab[z];
      }
    good += ok;
  }
  g = measure_good_sets(B, ball);
  CHECK(g.q1 == ratio(BigInt(good), 256));
  CHECK(g.q1 >= 1 - ratio(8, 256));

  auto C = amplify(build_theta(odo, zero(odo), 3, {up}), 2);
  g = measure_good_sets(C, {id, up});
  CHECK(g.q2 == 1);
}

TEST_CASE("schreier_graph: examples") {
  const auto odo = SystemContext::binary_odometer();
  const auto up = plus(odo, 1), swap = odometer_swap(odo), id = identity_table(odo);
  auto A = build_theta(odo, minus_one(odo), 3, {up, swap, id});
  auto G = schreier_graph(A, {id});
  CHECK(G.edges.size() == 8);
  for (const auto& e : G.edges) CHECK(e.source == e.target);
  G = schreier_graph(A, {up});
  CHECK(G.is_proper());
  for (const auto& e : G.edges) CHECK(e.target == (e.source + 1) % 8);
  G = schreier_graph(A, {swap});
  for (const auto& e : G.edges) CHECK((e.source ^ 1u) == e.target);
  CHECK(G.max_degree() <= 2);
}

TEST_CASE("property: identity maps to identity and every assignment is a permutation") {
  std::mt19937_64 rng(41);
  const auto odo = SystemContext::binary_odometer();
  const auto ball = subgroup_ball({plus(odo, 1), plus(odo, -1), odometer_swap(odo)}, 3);
  for (int n = 1; n <= 6; ++n) {
    std::vector<int> prefix(rng() % 5);
    for (auto& d : prefix) d = static_cast<int>(rng() % 2);
    auto A = build_theta(odo, odometer_point(*odo, prefix, {static_cast<int>(rng() % 2)}), n, ball);
    CHECK(A.base_map(identity_table(odo)) == identity(static_cast<std::uint32_t>(A.base_size())));
    for (const auto& t : ball) CHECK(is_permutation(A.base_map(t)));
  }
}

TEST_CASE("property: amplification Hamming law on random pairs") {
  std::mt19937_64 rng(42);
  for (int t = 0; t < 100; ++t) {
    const auto n = static_cast<std::uint32_t>(2 + rng() % 6);
    const Map f = random_map(rng, n), g = random_map(rng, n);
    const Rational d = hamming(f, g);
    for (int l = 1; l <= 3; ++l) CHECK(hamming(amplify_map(f, l), amplify_map(g, l)) == 1 - pow(1 - d, l));
  }
}

TEST_CASE("property: multiplicativity holds on the locality set") {
  const auto odo = SystemContext::binary_odometer();
  const auto ball = subgroup_ball({plus(odo, 1), plus(odo, -1), odometer_swap(odo)}, 2);
  auto A = build_theta(odo, zero(odo), 5, ball);
  for (const auto& phi : ball)
    for (const auto& psi : ball) CHECK(locality_violations(A, phi, psi) == 0);
}

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "tfg/elekmonod.hpp"

using namespace tfg;
using namespace tfg::em;

namespace {

// Oracle words: the ten listed words, then all longer reduced words in length-lex order.
std::vector<std::string> oracle_words(std::size_t count) {
  std::vector<std::string> w = {"A", "B", "C", "AB", "AC", "BC", "BA", "CA", "CB", "ABC"};
  std::set<std::string> seen(w.begin(), w.end());
  std::vector<std::string> layer = {"A", "B", "C"};
  while (w.size() < count) {
    std::vector<std::string> next;
    for (const auto& s : layer)
      for (char c : {'A', 'B', 'C'})
        if (s.back() != c) next.push_back(s + c);
    std::sort(next.begin(), next.end());
    for (const auto& s : next)
      if (next[0].size() >= 3 && !seen.count(s)) w.push_back(s);
    layer = next;
  }
  w.resize(count);
  return w;
}

int oracle_label(std::int64_t m) {
  int n = 0;
  m = m < 0 ? -m : m;
  while (m % 2 == 0) m /= 2, ++n;
  return n;
}

std::int64_t floor_mod(std::int64_t a, std::int64_t p) { return ((a % p) + p) % p; }

// Oracle coloring, restated from the construction directly.
char oracle_color(bool vertical, std::int64_t x, std::int64_t y) {
  static const auto words = oracle_words(64);
  if (!vertical) return floor_mod(x, 2) == 0 ? 'E' : 'F';
  if (x == 0 || floor_mod(x, 2) == 1) return floor_mod(y, 2) == 0 ? 'A' : 'D';
  const std::string& w = words[static_cast<std::size_t>(oracle_label(x)) - 1];
  const std::int64_t p = static_cast<std::int64_t>(w.size()) + 1, slot = floor_mod(y, p);
  if (slot == p - 1) return 'D';
  return w[w.size() - 1 - static_cast<std::size_t>(slot)];
}

int color(bool vertical, std::int64_t x, std::int64_t y) { return sigma_color({vertical, x, y}); }

ColoringWindow oracle_window(std::int64_t gx, std::int64_t gy, int n) {
  const std::int64_t s = std::int64_t{1} << n;
  ColoringWindow w{gx, gy, n, {}, {}};
  for (std::int64_t x = 0; x < s; ++x)
    for (std::int64_t y = 0; y <= s; ++y) w.h.push_back(static_cast<std::uint8_t>(color_of(oracle_color(false, gx + x, gy + y))));
  for (std::int64_t x = 0; x <= s; ++x)
    for (std::int64_t y = 0; y < s; ++y) w.v.push_back(static_cast<std::uint8_t>(color_of(oracle_color(true, gx + x, gy + y))));
  return w;
}

std::int64_t window_period(std::int64_t gx, int n) {
  std::int64_t p = 2;
  for (std::int64_t x = gx; x <= gx + (std::int64_t{1} << n); ++x) p = std::lcm(p, line_period(x));
  return p;
}

std::vector<std::int64_t> neg(const std::vector<std::int64_t>& v) { return {-v[0], -v[1]}; }

}  // namespace

TEST_CASE("label: examples") {
  CHECK(label(12) == 2);
  CHECK(label(7) == 0);
  CHECK(label(8) == 3);
  CHECK(label(-8) == 3);
  CHECK_THROWS(label(0));
  for (std::int64_t m = -500; m <= 500; ++m)
    if (m) CHECK(label(m) == oracle_label(m));
}

TEST_CASE("delta_word: examples") {
  CHECK(delta_word(1) == "A");
  CHECK(delta_word(4) == "AB");
  CHECK(delta_word(9) == "CB");
  CHECK(delta_word(10) == "ABC");
  const auto words = oracle_words(64);
  for (int i = 1; i <= 64; ++i) {
    CHECK(delta_word(i) == words[static_cast<std::size_t>(i) - 1]);
    CHECK(delta_word(i).size() <= static_cast<std::size_t>(i));
  }
  std::set<std::string> distinct;
  for (int i = 1; i <= 200; ++i) distinct.insert(delta_word(i));
  CHECK(distinct.size() == 200);
}

TEST_CASE("sigma_color: examples") {
  CHECK(color(false, 0, 5) == E);
  CHECK(color(true, 3, 0) == A);
  CHECK(color(true, 2, 1) == D);
  CHECK(color(true, 2, 0) == A);
  // Line 4 carries w_2 = B; line 8 carries w_3 = C; line 16 carries w_4 = AB, last letter at y = 0.
  CHECK(color(true, 4, 0) == B);
  CHECK(color(true, 8, 0) == C);
  CHECK(color(true, 16, 0) == B);
  CHECK(color(true, 16, 1) == A);
  CHECK(color(true, 16, 2) == D);
}

TEST_CASE("property: sigma agrees with the restated construction") {
  std::mt19937_64 rng(71);
  std::uniform_int_distribution<std::int64_t> c(-100000, 100000);
  for (int t = 0; t < 20000; ++t) {
    const bool v = rng() % 2;
    const auto x = c(rng), y = c(rng);
    CHECK(color(v, x, y) == color_of(oracle_color(v, x, y)));
  }
}

TEST_CASE("check_proper: examples") {
  CHECK(check_proper(-8, 8, -8, 8).proper);
  const auto one = check_proper(0, 0, 0, 0);
  CHECK(one.proper);
  CHECK(one.vertices == 1);
  const auto bad = check_proper(-2, 2, -2, 2, [](const LatticeEdge& e) { return e.vertical ? int{A} : sigma_color(e); });
  CHECK_FALSE(bad.proper);
  REQUIRE(bad.first);
  CHECK(bad.violations > 0);
}

TEST_CASE("property: properness on a large region") {
  const auto r = check_proper(-600, 600, -600, 600);
  CHECK(r.proper);
  CHECK(r.vertices == 1201u * 1201u);
}

TEST_CASE("property: label density") {
  for (int n = 0; n <= 8; ++n) CHECK(label_density(n, -100000, 100000).ok);
  // Oracle: direct scan for small n.
  for (int n = 0; n <= 4; ++n) {
    const std::int64_t run = std::int64_t{2} << n;
    for (std::int64_t s = -2000; s + run - 1 <= 2000; ++s) {
      bool hit = false;
      for (std::int64_t m = s; m < s + run && !hit; ++m) hit = m != 0 && oracle_label(m) == n;
      CHECK(hit);
    }
  }
}

TEST_CASE("property: vertical line periods") {
  for (std::int64_t x = -300; x <= 300; ++x) {
    const auto p = line_period(x);
    std::int64_t least = 1;
    for (;; ++least) {
      bool ok = true;
      for (std::int64_t y = -50; y < 50 && ok; ++y) ok = color(true, x, y) == color(true, x, y + least);
      if (ok) break;
    }
    CHECK(p == least);
  }
}

TEST_CASE("window_at: examples") {
  const auto w = window_at(0, 0, 1);
  CHECK(w.h == std::vector<std::uint8_t>{E, E, E, F, F, F});
  CHECK(w.h[0] == E);
  std::mt19937_64 rng(72);
  std::uniform_int_distribution<std::int64_t> c(-5000, 5000);
  for (int t = 0; t < 200; ++t) {
    const auto gx = c(rng), gy = c(rng);
    const int n = 1 + static_cast<int>(rng() % 3);
    CHECK(window_at(gx, gy, n) == oracle_window(gx, gy, n));
    CHECK(window_at(gx, gy, n) == window_at(gx, gy + window_period(gx, n), n));
  }
  CHECK_FALSE(window_text(w).empty());
}

TEST_CASE("same_pattern_check: examples") {
  CHECK(same_pattern_check(2, 0, 10));
  CHECK(same_pattern_check(1, 0, 50));
  CHECK(same_pattern_check(3, 0, 1));
}

TEST_CASE("property: same pattern for all n <= 5, m <= 50") {
  for (int n = 1; n <= 5; ++n) CHECK(same_pattern_check(n, 0, 50));
}

TEST_CASE("pattern_count: examples") {
  const auto c1 = pattern_count(1, -64, 64);
  CHECK(c1.count >= 1);
  CHECK(BigInt(c1.count) <= 128);
  CHECK(pattern_bound(1) == 128);
  CHECK(pattern_bound(3) == 25165824);
  CHECK(pattern_bound_sum(1) == 2 + 4 * 2 * 16 * 2);

  // Oracle count: brute-force windows over a vertical range covering every period.
  std::set<std::pair<std::vector<std::uint8_t>, std::vector<std::uint8_t>>> seen;
  for (std::int64_t gx = -20; gx <= 20; ++gx)
    for (std::int64_t gy = 0; gy < 840 * 2; ++gy) {
      const auto w = oracle_window(gx, gy, 1);
      seen.insert({w.h, w.v});
    }
  CHECK(pattern_count(1, -20, 20).count == seen.size());
}

TEST_CASE("property: counts are monotone in sweep width and below the bound") {
  for (int n = 1; n <= 3; ++n) {
    std::uint64_t prev = 0;
    for (std::int64_t h : {2, 8, 32, 128}) {
      const auto c = pattern_count(n, -h, h);
      CHECK(c.count >= prev);
      CHECK(BigInt(c.count) <= pattern_bound(n));
      prev = c.count;
    }
  }
}

TEST_CASE("entropy_table: bound rows") {
  const auto rows = entropy_table(3);
  REQUIRE(rows.size() == 3);
  CHECK(rows[2].bound == 25165824);
  CHECK(rows[2].normalized_bound == doctest::Approx(std::log(25165824.0) / 64));
  for (const auto& r : rows) CHECK(BigInt(r.count) <= r.bound);
  // The majorant uses n! <= n (n/e)^n, which dominates the bound row only from n = 2 on.
  CHECK(rows[0].normalized_bound > rows[0].majorant);
  CHECK(rows[1].normalized_bound < rows[1].majorant);
  CHECK(rows[2].normalized_bound < rows[2].majorant);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    CHECK(rows[i].normalized_log < rows[i - 1].normalized_log);
    CHECK(rows[i].normalized_bound < rows[i - 1].normalized_bound);
  }
}

TEST_CASE("involution_table: examples") {
  const auto sys = em_system();
  const auto origin = orbit_point({0, 0});
  const auto y = evaluate(involution_table(sys, E), origin);
  for (const auto& c : radius_cells(*sys, 3)) CHECK(symbol_at(*sys, y, c) == sigma_cell(shift_cell(c, std::vector<std::int64_t>{1, 0})));
  CHECK(evaluate(involution_table(sys, B), origin) == origin);
  CHECK(apply_word(sys, "EE", origin) == origin);
}

TEST_CASE("property: involutions square to the identity") {
  const auto sys = em_system();
  for (int letter = 0; letter < 6; ++letter) {
    const std::string w(2, color_char(letter));
    for (std::int64_t x = -50; x < 50; ++x)
      for (std::int64_t y = -50; y < 50; ++y) {
        const auto p = orbit_point({x, y});
        CHECK(apply_word(sys, w, p) == p);
      }
  }
}

TEST_CASE("reduced_words: counts") {
  CHECK(reduced_words(1).size() == 3);
  CHECK(reduced_words(2).size() == 9);
  CHECK(reduced_words(3).size() == 21);
  CHECK(reduced_words(6).size() == 3 * (64 - 1));
  for (const auto& w : reduced_words(4))
    for (std::size_t i = 1; i < w.size(); ++i) CHECK(w[i] != w[i - 1]);
}

TEST_CASE("word_acts_nontrivially: examples") {
  const auto sys = em_system();
  auto a = word_acts_nontrivially(sys, "A", 4);
  REQUIRE(a);
  const auto p = orbit_point(neg(a->g));
  const auto q = apply_word(sys, "A", p);
  CHECK(symbol_at(*sys, q, a->certificate) != symbol_at(*sys, p, a->certificate));
  for (const std::string w : {"ABAB", "ABABAB", "BABA", "ACAC"}) {
    const auto r = word_acts_nontrivially(sys, w, 32);
    REQUIRE(r);
    const auto x = orbit_point(neg(r->g));
    const auto y = apply_word(sys, w, x);
    CHECK(symbol_at(*sys, y, r->certificate) != symbol_at(*sys, x, r->certificate));
  }
  CHECK_THROWS(word_acts_nontrivially(sys, "AA", 4));
}

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tfg/fullgroup.hpp"
#include "tfg/systems.hpp"

namespace tfg::em {

// Colors A..F as 0..5.
enum Color : int { A = 0, B = 1, C = 2, D = 3, E = 4, F = 5 };
char color_char(int c);
int color_of(char ch);

// 2-adic valuation of |m|; throws for m = 0.
int label(std::int64_t m);
// i-th nontrivial reduced word over {A,B,C}, i >= 1, as a string.
std::string delta_word(int i);

// H edge (x,y)-(x+1,y) or V edge (x,y)-(x,y+1).
struct LatticeEdge {
  bool vertical = false;
  std::int64_t x = 0, y = 0;
};
int sigma_color(const LatticeEdge& e);
int sigma_cell(const Cell& c);
// Vertical period of the line through x (2 for x = 0 or odd, |w_{L(x)}| + 1 otherwise).
std::int64_t line_period(std::int64_t x);

using ColorFn = std::function<int(const LatticeEdge&)>;
struct ProperReport {
  bool proper = true;
  std::size_t vertices = 0;
  std::size_t violations = 0;
  std::optional<std::pair<std::int64_t, std::int64_t>> first;  // vertex
};
// Vertices in [x0,x1] x [y0,y1]; colors from `color` (sigma by default).
ProperReport check_proper(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1,
                          const ColorFn& color = {});

// Every run of 2^{n+1} consecutive integers in [lo, hi] contains m with L(m) = n.
struct DensityReport {
  bool ok = true;
  std::optional<std::int64_t> first_bad_start;
};
DensityReport label_density(int n, std::int64_t lo, std::int64_t hi);

// Colors of g + E_n: H bases [0,2^n-1] x [0,2^n] then V bases [0,2^n] x [0,2^n-1], row-major by x then y.
struct ColoringWindow {
  std::int64_t gx = 0, gy = 0;
  int n = 0;
  std::vector<std::uint8_t> h, v;
  bool operator==(const ColoringWindow& o) const { return h == o.h && v == o.v; }
};
ColoringWindow window_at(std::int64_t gx, std::int64_t gy, int n);
std::string window_text(const ColoringWindow& w);

// All sigma restricted to P_{n,m} agree for m in [m_lo, m_hi] (translation-aligned).
bool same_pattern_check(int n, std::int64_t m_lo, std::int64_t m_hi);

struct PatternCount {
  int n = 0;
  std::int64_t h_lo = 0, h_hi = 0;
  std::uint64_t count = 0;
  std::uint64_t windows_scanned = 0;
  std::int64_t max_period = 0;
  std::string digest;  // hex digest of the sorted catalog
};
// g1 over [h_lo, h_hi]; g2 over one full vertical period of the window's lines (exact per column).
PatternCount pattern_count(int n, std::int64_t h_lo, std::int64_t h_hi, std::uint64_t max_windows = 200'000'000);
// 2 2^n 4^{2^n} (n+1)!
BigInt pattern_bound(int n);
// 2^n n! + 4 2^n 4^{2^n} (n+1)!
BigInt pattern_bound_sum(int n);

struct EntropyRow {
  int n = 0;
  std::uint64_t count = 0;
  double normalized_log = 0;    // log(count) / 4^n
  double normalized_bound = 0;  // log(2 2^n 4^{2^n} (n+1)!) / 4^n
  double majorant = 0;          // (n log2 + log n + n(log n - 1) + log(4n+5) + 2^n log 4) / 4^n
  BigInt bound;
};
// Default sweep: g1 in [-2^{n+6}, 2^{n+6}].
std::vector<EntropyRow> entropy_table(int n_max, std::int64_t h_half = 0);

// The orbit system of sigma: free Z^2 orbit, properness as the infeasibility hook.
SystemPtr em_system();
// Letter 0..5: move the origin along the incident edge of that color, else stay.
CocycleTable involution_table(const SystemPtr& sys, int letter);

// Applies the letters right to left.
Point apply_word(const SystemPtr& sys, const std::string& word, const Point& x);

struct WordWitness {
  std::vector<std::int64_t> g;  // translate g.sigma
  std::vector<std::int64_t> net;
  Cell certificate;             // a cell where the two windows differ
};
// Scans g in [-R, R]^2 lexicographically; window-certified at radius R.
std::optional<WordWitness> word_acts_nontrivially(const SystemPtr& sys, const std::string& word, std::int64_t R);
// Nontrivial reduced words over {A,B,C} of length 1..max_len, length then lexicographic.
std::vector<std::string> reduced_words(int max_len, int letters = 3);

}  // namespace tfg::em

#include "tfg/elekmonod.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_set>

namespace tfg::em {

namespace {

constexpr std::array<const char*, 10> kListed = {"A", "B", "C", "AB", "AC", "BC", "BA", "CA", "CB", "ABC"};

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

// Words of length len over {A,B,C} with no equal adjacent letters, lexicographic.
void reduced_of_length(int len, int letters, std::string& cur, std::vector<std::string>& out) {
  if (static_cast<int>(cur.size()) == len) {
    out.push_back(cur);
    return;
  }
  for (int c = 0; c < letters; ++c) {
    char ch = static_cast<char>('A' + c);
    if (!cur.empty() && cur.back() == ch) continue;
    cur.push_back(ch);
    reduced_of_length(len, letters, cur, out);
    cur.pop_back();
  }
}

std::uint64_t fnv1a(std::string_view s, std::uint64_t h = 1469598103934665603ull) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace

char color_char(int c) {
  if (c < 0 || c > 5) throw InvalidInput("color out of range");
  return static_cast<char>('A' + c);
}

int color_of(char ch) {
  if (ch < 'A' || ch > 'F') throw InvalidInput(std::string("unknown color ") + ch);
  return ch - 'A';
}

int label(std::int64_t m) {
  if (m == 0) throw InvalidInput("label: m must be nonzero");
  std::uint64_t u = m < 0 ? static_cast<std::uint64_t>(-(m + 1)) + 1 : static_cast<std::uint64_t>(m);
  return std::countr_zero(u);
}

std::string delta_word(int i) {
  if (i < 1) throw InvalidInput("delta_word: i must be >= 1");
  if (i <= static_cast<int>(kListed.size())) return kListed[i - 1];
  static std::mutex mu;
  static std::vector<std::string> tail;  // length-lex from length 3, listed words removed
  static int built_len = 2;
  std::lock_guard lock(mu);
  std::size_t want = static_cast<std::size_t>(i) - kListed.size();
  while (tail.size() < want) {
    ++built_len;
    std::vector<std::string> words;
    std::string cur;
    reduced_of_length(built_len, 3, cur, words);
    for (auto& w : words)
      if (std::find(kListed.begin(), kListed.end(), w) == kListed.end()) tail.push_back(std::move(w));
  }
  return tail[want - 1];
}

std::int64_t line_period(std::int64_t x) {
  if (x == 0 || x % 2 != 0) return 2;
  return static_cast<std::int64_t>(delta_word(label(x)).size()) + 1;
}

int sigma_color(const LatticeEdge& e) {
  if (!e.vertical) return e.x % 2 == 0 ? E : F;
  if (e.x == 0 || e.x % 2 != 0) return e.y % 2 == 0 ? A : D;
  const std::string w = delta_word(label(e.x));
  const auto len = static_cast<std::int64_t>(w.size());
  const std::int64_t slot = floor_mod(e.y, len + 1);
  if (slot == len) return D;
  return color_of(w[static_cast<std::size_t>(len - 1 - slot)]);
}

int sigma_cell(const Cell& c) {
  if (c.kind == Cell::HEdge) return sigma_color({false, c.a, c.b});
  if (c.kind == Cell::VEdge) return sigma_color({true, c.a, c.b});
  throw KindMismatch("sigma is a coloring of lattice edges");
}

ProperReport check_proper(std::int64_t x0, std::int64_t x1, std::int64_t y0, std::int64_t y1, const ColorFn& color) {
  ProperReport r;
  auto col = [&](const LatticeEdge& e) { return color ? color(e) : sigma_color(e); };
  for (std::int64_t x = x0; x <= x1; ++x)
    for (std::int64_t y = y0; y <= y1; ++y) {
      ++r.vertices;
      const int c[4] = {col({false, x, y}), col({false, x - 1, y}), col({true, x, y}), col({true, x, y - 1})};
      bool ok = true;
      for (int i = 0; i < 4 && ok; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (c[i] == c[j]) {
            ok = false;
            break;
          }
      if (!ok) {
        r.proper = false;
        ++r.violations;
        if (!r.first) r.first = {x, y};
      }
    }
  return r;
}

DensityReport label_density(int n, std::int64_t lo, std::int64_t hi) {
  DensityReport r;
  const std::int64_t len = std::int64_t{1} << (n + 1);
  // Last position in [lo, hi] carrying label n, swept left to right.
  std::optional<std::int64_t> last;
  for (std::int64_t m = lo; m <= hi; ++m) {
    if (m != 0 && label(m) == n) last = m;
    const std::int64_t start = m - len + 1;
    if (start < lo) continue;
    if (!last || *last < start) {
      r.ok = false;
      r.first_bad_start = start;
      return r;
    }
  }
  return r;
}

ColoringWindow window_at(std::int64_t gx, std::int64_t gy, int n) {
  if (n < 0 || n > 12) throw BudgetExceeded("window_at: n must be in [0, 12]");
  ColoringWindow w{gx, gy, n, {}, {}};
  const std::int64_t s = std::int64_t{1} << n;
  w.h.reserve(static_cast<std::size_t>(s * (s + 1)));
  w.v.reserve(static_cast<std::size_t>(s * (s + 1)));
  for (std::int64_t x = 0; x <= s - 1; ++x)
    for (std::int64_t y = 0; y <= s; ++y) w.h.push_back(static_cast<std::uint8_t>(sigma_color({false, gx + x, gy + y})));
  for (std::int64_t x = 0; x <= s; ++x)
    for (std::int64_t y = 0; y <= s - 1; ++y) w.v.push_back(static_cast<std::uint8_t>(sigma_color({true, gx + x, gy + y})));
  return w;
}

std::string window_text(const ColoringWindow& w) {
  // Rows from top to bottom: a vertex row (H colors) then a V row below it.
  const std::int64_t s = std::int64_t{1} << w.n;
  std::ostringstream os;
  for (std::int64_t y = s; y >= 0; --y) {
    for (std::int64_t x = 0; x <= s; ++x) {
      os << '+';
      if (x < s) os << color_char(w.h[static_cast<std::size_t>(x * (s + 1) + y)]);
    }
    os << '\n';
    if (y == 0) break;
    for (std::int64_t x = 0; x <= s; ++x) {
      os << color_char(w.v[static_cast<std::size_t>(x * s + (y - 1))]);
      if (x < s) os << ' ';
    }
    os << '\n';
  }
  return os.str();
}

bool same_pattern_check(int n, std::int64_t m_lo, std::int64_t m_hi) {
  if (n < 1) throw InvalidInput("same_pattern_check: n must be >= 1");
  const std::int64_t s = std::int64_t{1} << n;
  auto pattern = [&](std::int64_t m) {
    const std::int64_t x0 = s * m + 1, x1 = s * (m + 1) - 1;
    std::vector<std::uint8_t> out;
    for (std::int64_t x = x0; x + 1 <= x1; ++x)
      for (std::int64_t y = 0; y <= s; ++y) out.push_back(static_cast<std::uint8_t>(sigma_color({false, x, y})));
    for (std::int64_t x = x0; x <= x1; ++x)
      for (std::int64_t y = 0; y + 1 <= s; ++y) out.push_back(static_cast<std::uint8_t>(sigma_color({true, x, y})));
    return out;
  };
  const auto ref = pattern(m_lo);
  for (std::int64_t m = m_lo + 1; m <= m_hi; ++m)
    if (pattern(m) != ref) return false;
  return true;
}

PatternCount pattern_count(int n, std::int64_t h_lo, std::int64_t h_hi, std::uint64_t max_windows) {
  if (h_lo > h_hi) throw InvalidInput("pattern_count: empty h_range");
  PatternCount r{n, h_lo, h_hi, 0, 0, 0, {}};
  const std::int64_t s = std::int64_t{1} << n;
  std::unordered_set<std::string> seen;
  for (std::int64_t g1 = h_lo; g1 <= h_hi; ++g1) {
    std::int64_t P = 2;
    for (std::int64_t x = g1; x <= g1 + s; ++x) P = std::lcm(P, line_period(x));
    r.max_period = std::max(r.max_period, P);
    for (std::int64_t g2 = 0; g2 < P; ++g2) {
      if (++r.windows_scanned > max_windows) throw BudgetExceeded("pattern_count: window budget exceeded");
      const auto w = window_at(g1, g2, n);
      std::string key(w.h.begin(), w.h.end());
      key.append(w.v.begin(), w.v.end());
      seen.insert(std::move(key));
    }
  }
  r.count = seen.size();
  std::vector<std::string> sorted(seen.begin(), seen.end());
  std::sort(sorted.begin(), sorted.end());
  std::uint64_t h = 1469598103934665603ull;
  for (const auto& k : sorted) h = fnv1a(k, h);
  std::ostringstream os;
  os << std::hex << h;
  r.digest = os.str();
  return r;
}

BigInt pattern_bound(int n) {
  const BigInt s = pow(BigInt(2), static_cast<unsigned>(n));
  return 2 * s * pow(BigInt(4), static_cast<unsigned>(s)) * factorial(static_cast<unsigned>(n + 1));
}

BigInt pattern_bound_sum(int n) {
  const BigInt s = pow(BigInt(2), static_cast<unsigned>(n));
  return s * factorial(static_cast<unsigned>(n)) +
         4 * s * pow(BigInt(4), static_cast<unsigned>(s)) * factorial(static_cast<unsigned>(n + 1));
}

std::vector<EntropyRow> entropy_table(int n_max, std::int64_t h_half) {
  std::vector<EntropyRow> rows;
  for (int n = 1; n <= n_max; ++n) {
    const std::int64_t half = h_half > 0 ? h_half : (std::int64_t{1} << (n + 6));
    const auto pc = pattern_count(n, -half, half);
    EntropyRow row;
    row.n = n;
    row.count = pc.count;
    const double area = std::pow(4.0, n);
    row.normalized_log = std::log(static_cast<double>(pc.count)) / area;
    row.bound = pattern_bound(n);
    row.normalized_bound = log_of(row.bound) / area;
    const double dn = n;
    row.majorant = (dn * std::log(2.0) + std::log(dn) + dn * (std::log(dn) - 1) + std::log(4 * dn + 5) +
                    std::pow(2.0, n) * std::log(4.0)) /
                   area;
    rows.push_back(std::move(row));
  }
  return rows;
}

SystemPtr em_system() {
  OrbitSpec spec;
  spec.name = "elek-monod";
  spec.dim = 2;
  spec.edges = true;
  spec.alphabet = 6;
  spec.oracle = sigma_cell;
  // Two incident edges forced to the same single color cannot occur in a proper coloring.
  spec.infeasible = [](const Pattern& p) {
    std::map<std::pair<std::int64_t, std::int64_t>, std::vector<std::uint64_t>> at_vertex;
    for (const auto& k : p.constraints) {
      if (k.mask == 0) return true;
      if (std::popcount(k.mask) != 1) continue;
      const auto& c = k.cell;
      at_vertex[{c.a, c.b}].push_back(k.mask);
      if (c.kind == Cell::HEdge) at_vertex[{c.a + 1, c.b}].push_back(k.mask);
      if (c.kind == Cell::VEdge) at_vertex[{c.a, c.b + 1}].push_back(k.mask);
    }
    for (auto& [v, masks] : at_vertex) {
      std::sort(masks.begin(), masks.end());
      if (std::adjacent_find(masks.begin(), masks.end()) != masks.end()) return true;
    }
    return false;
  };
  return SystemContext::orbit_system(std::move(spec), true);
}

CocycleTable involution_table(const SystemPtr& sys, int letter) {
  if (letter < 0 || letter > 5) throw InvalidInput("involution_table: letter must be A..F");
  const std::uint64_t full = (std::uint64_t{1} << 6) - 1;
  const std::uint64_t is = std::uint64_t{1} << letter;
  const std::uint64_t not_is = full & ~is;
  // Incident edges of the origin and the neighbor each leads to.
  const std::array<std::pair<Cell, std::array<std::int64_t, 2>>, 4> incident = {{
      {Cell::hedge(0, 0), {1, 0}},
      {Cell::hedge(-1, 0), {-1, 0}},
      {Cell::vedge(0, 0), {0, 1}},
      {Cell::vedge(0, -1), {0, -1}},
  }};
  CocycleTable t{sys, {}};
  for (std::size_t i = 0; i < incident.size(); ++i) {
    Pattern p;
    for (std::size_t j = 0; j < incident.size(); ++j) p.constraints.push_back({incident[j].first, i == j ? is : not_is});
    std::sort(p.constraints.begin(), p.constraints.end());
    // The origin moves to v: the new point reads the old one at c + v.
    const auto& v = incident[i].second;
    t.parts.push_back({std::move(p), GroupElement::vec({-v[0], -v[1]})});
  }
  Pattern rest;
  for (const auto& [cell, v] : incident) rest.constraints.push_back({cell, not_is});
  std::sort(rest.constraints.begin(), rest.constraints.end());
  t.parts.push_back({std::move(rest), GroupElement::vec({0, 0})});
  std::sort(t.parts.begin(), t.parts.end());
  return t;
}

Point apply_word(const SystemPtr& sys, const std::string& word, const Point& x) {
  static std::mutex mu;
  static std::map<std::pair<const SystemContext*, int>, CocycleTable> cache;
  Point y = x;
  for (auto it = word.rbegin(); it != word.rend(); ++it) {
    const int letter = color_of(*it);
    const CocycleTable* t;
    {
      std::lock_guard lock(mu);
      auto key = std::make_pair(sys.get(), letter);
      auto f = cache.find(key);
      if (f == cache.end()) f = cache.emplace(key, involution_table(sys, letter)).first;
      t = &f->second;
    }
    y = evaluate(*t, y);
  }
  return y;
}

std::optional<WordWitness> word_acts_nontrivially(const SystemPtr& sys, const std::string& word, std::int64_t R) {
  if (word.empty()) throw InvalidInput("word_acts_nontrivially: empty word");
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (word[i] == word[i + 1]) throw InvalidInput("word_acts_nontrivially: word is not reduced");
  const auto cells = radius_cells(*sys, static_cast<int>(R));
  for (std::int64_t gx = -R; gx <= R; ++gx)
    for (std::int64_t gy = -R; gy <= R; ++gy) {
      const Point x = orbit_point({gx, gy});
      const Point y = apply_word(sys, word, x);
      if (y == x) continue;
      for (const auto& c : cells)
        if (symbol_at(*sys, x, c) != symbol_at(*sys, y, c))
          return WordWitness{{gx, gy}, {y.shift[0] - gx, y.shift[1] - gy}, c};
    }
  return std::nullopt;
}

std::vector<std::string> reduced_words(int max_len, int letters) {
  std::vector<std::string> out;
  for (int len = 1; len <= max_len; ++len) {
    std::string cur;
    reduced_of_length(len, letters, cur, out);
  }
  return out;
}

}  // namespace tfg::em

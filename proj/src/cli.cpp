#include "tfg/cli.hpp"

#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tfg/elekmonod.hpp"
#include "tfg/folner.hpp"
#include "tfg/hyperfinite.hpp"
#include "tfg/lef.hpp"
#include "tfg/sofic.hpp"

namespace tfg::cli {

namespace {

using nlohmann::json;

struct ConfigError : Error {
  using Error::Error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::uint64_t budget = 0;
  std::string out;
  bool json = false;
  std::string config;
};

struct Result {
  std::string text;
  bool pass = true;
};

std::string dump(const json& j) { return j.dump(2) + "\n"; }

std::string fixed(double v) {
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

std::pair<std::int64_t, std::int64_t> parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) throw InvalidInput("range must look like A..B: '" + s + "'");
  try {
    std::size_t used = 0;
    const auto a = std::stoll(s.substr(0, dots), &used);
    if (used != dots) throw InvalidInput("bad range start: '" + s + "'");
    const auto rest = s.substr(dots + 2);
    const auto b = std::stoll(rest, &used);
    if (used != rest.size()) throw InvalidInput("bad range end: '" + s + "'");
    if (a > b) throw InvalidInput("empty range: '" + s + "'");
    return {a, b};
  } catch (const std::logic_error&) {
    throw InvalidInput("bad range: '" + s + "'");
  }
}

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw InvalidInput("bad integer '" + item + "'");
    } catch (const std::logic_error&) {
      throw InvalidInput("bad integer '" + item + "'");
    }
  }
  if (out.empty()) throw InvalidInput("empty integer list");
  return out;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep))
    if (!item.empty()) out.push_back(item);
  return out;
}

std::vector<CocycleTable> odometer_generators(const SystemPtr& sys, bool with_swap) {
  std::vector<CocycleTable> T = {constant_table(sys, GroupElement::vec({1})), constant_table(sys, GroupElement::vec({-1}))};
  if (with_swap) T.push_back(odometer_swap(sys));
  return T;
}

json zd_bound_json(const ZdBound& b) {
  return {{"m", b.m},
          {"C", to_string(b.C)},
          {"k_statement", to_string(b.k_statement)},
          {"k_proof", to_string(b.k_proof)},
          {"bound_statement", to_string(b.bound_statement)},
          {"bound_proof", to_string(b.bound_proof)},
          {"clamped", b.clamped}};
}

std::vector<Offset> standard_offsets(int d) {
  std::vector<Offset> S{Offset(d, 0)};
  for (int i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      Offset e(d, 0);
      e[i] = s;
      S.push_back(e);
    }
  return S;
}

// --- commands ---

struct EntropyArgs {
  int n = 3;
  int n_min = 0;
  std::string hrange;
  bool exact_vertical = true;
};

Result cmd_entropy(const EntropyArgs& a, const Globals& g) {
  if (a.n < 1 || a.n > 8) throw InvalidInput("--n must be in [1, 8]");
  const int lo = a.n_min > 0 ? a.n_min : a.n;
  if (lo > a.n) throw InvalidInput("--n-min exceeds --n");
  Result r;
  json rows = json::array();
  std::ostringstream csv;
  csv << "n,h_lo,h_hi,count,bound,count_le_bound,digest,log_count_per_area(float),log_bound_per_area(float)\n";
  for (int n = lo; n <= a.n; ++n) {
    std::int64_t h_lo = -(std::int64_t{1} << (n + 6)), h_hi = -h_lo;
    if (!a.hrange.empty()) std::tie(h_lo, h_hi) = parse_range(a.hrange);
    const auto pc = g.budget ? em::pattern_count(n, h_lo, h_hi, g.budget) : em::pattern_count(n, h_lo, h_hi);
    const BigInt bound = em::pattern_bound(n);
    const bool ok = BigInt(pc.count) <= bound;
    r.pass = r.pass && ok;
    const double area = std::pow(4.0, n);
    const double nl = std::log(static_cast<double>(pc.count)) / area, nb = log_of(bound) / area;
    csv << n << ',' << h_lo << ',' << h_hi << ',' << pc.count << ',' << to_string(bound) << ',' << (ok ? "true" : "false")
        << ',' << pc.digest << ',' << fixed(nl) << ',' << fixed(nb) << '\n';
    rows.push_back({{"n", n},
                    {"h_range", {h_lo, h_hi}},
                    {"count", pc.count},
                    {"windows_scanned", pc.windows_scanned},
                    {"max_period", pc.max_period},
                    {"bound", to_string(bound)},
                    {"count_le_bound", ok},
                    {"digest", pc.digest},
                    {"log_count_per_area_float", nl},
                    {"log_bound_per_area_float", nb}});
  }
  r.text = g.json ? dump({{"exact_vertical", a.exact_vertical}, {"rows", rows}, {"pass", r.pass}}) : csv.str();
  return r;
}

struct FreewordsArgs {
  int max_len = 6;
  std::int64_t radius = 32;
};

Result cmd_freewords(const FreewordsArgs& a, const Globals& g) {
  if (a.max_len < 1 || a.radius < 1) throw InvalidInput("--max-len and --radius must be positive");
  const auto sys = em::em_system();
  Result r;
  json words = json::array();
  std::ostringstream csv;
  csv << "word,witness_found,gx,gy,net_x,net_y\n";
  for (const auto& w : em::reduced_words(a.max_len)) {
    const auto wit = em::word_acts_nontrivially(sys, w, a.radius);
    r.pass = r.pass && wit.has_value();
    if (wit) {
      csv << w << ",true," << wit->g[0] << ',' << wit->g[1] << ',' << wit->net[0] << ',' << wit->net[1] << '\n';
      words.push_back({{"word", w}, {"g", wit->g}, {"net", wit->net}, {"certificate", to_json(wit->certificate)}});
    } else {
      csv << w << ",false,,,,\n";
      words.push_back({{"word", w}, {"g", nullptr}});
    }
  }
  r.text = g.json ? dump({{"radius", a.radius}, {"words", words}, {"pass", r.pass}}) : csv.str();
  return r;
}

struct SoficArgs {
  int n = 12;
  int radius = 2;
  int l = 1;
  std::string eps = "1/128";
  std::string displacement;
};

Result cmd_sofic(const SoficArgs& a, const Globals& g) {
  const Rational eps = parse_rational(a.eps);
  std::optional<Rational> disp;
  if (!a.displacement.empty()) disp = parse_rational(a.displacement);
  if (a.n < 1 || a.n > 20 || a.l < 1) throw InvalidInput("--n must be in [1, 20] and --l >= 1");
  const auto sys = SystemContext::binary_odometer();
  FullGroupBudget budget;
  if (g.budget) budget.max_ball = g.budget;
  const auto ball = subgroup_ball(odometer_generators(sys, true), a.radius, budget);
  AlmostAction A = build_theta(sys, odometer_point(*sys, {}, {0}), a.n, ball);
  if (a.l > 1) A = amplify(A, a.l);
  const auto rep = check_injective_almost_action(A, ball, eps);
  Result r;
  json j = to_json(A, rep);
  j["ball_size"] = ball.size();
  if (disp) {
    const bool ok = rep.identity_ok && rep.mult_ok && rep.min_displacement >= *disp;
    j["displacement_threshold"] = to_string(*disp);
    j["pass"] = ok;
    r.pass = ok;
  } else {
    r.pass = rep.pass;
  }
  r.text = dump(j);
  return r;
}

struct QuasitileArgs {
  std::int64_t side = 512;
  std::string eps = "1/10";
  std::string tiles;
  unsigned bits = 4096;
};

Result cmd_quasitile(const QuasitileArgs& a, const Globals& g) {
  const Rational eps = parse_rational(a.eps);
  if (a.side < 1) throw InvalidInput("--side must be positive");
  const auto ctx = GroupContext::standard_int_vector(2);
  const auto S = standard_offsets(2);
  const Region Sreg = Region::of_points(S);
  const Region A = Region::of_box(corner_box({BigInt(a.side), BigInt(a.side)}));
  json j = {{"side", a.side}, {"epsilon", to_string(eps)}};
  std::vector<Region> tiles;
  Result r;
  if (a.tiles.empty()) {
    try {
      const auto tower = tile_tower(ctx, Sreg, eps, g.budget ? static_cast<unsigned>(g.budget) : a.bits);
      tiles = tower.tiles;
      j["tower_levels"] = tower.n;
    } catch (const BudgetExceeded& e) {
      j["error"] = e.what();
      j["pass"] = false;
      r.pass = false;
      r.text = dump(j);
      return r;
    }
  } else {
    tiles.push_back(Sreg);
    for (const auto& spec : split(a.tiles, ',')) {
      const auto [lo, hi] = parse_range(spec);
      tiles.push_back(Region::of_box(Box{{BigInt(lo), BigInt(lo)}, {BigInt(hi), BigInt(hi)}}));
    }
  }
  const auto q = quasitile(ctx, A, tiles, eps);
  const auto [c1, c2] = verify_quasitiling(q);
  const auto part = folner_graph_partition(ctx, A, S, q, eps);
  j["tiling"] = to_json(q);
  j["reverified"] = {{"condition1", c1}, {"condition2", c2}};
  j["partition"] = to_json(part.certificate);
  j["partition"].erase("blocks");
  j["delta"] = to_string(part.delta);
  j["delta_schedule"] = part.delta_schedule;
  r.pass = c1 && c2 && part.certificate.fraction_ok;
  j["pass"] = r.pass;
  r.text = dump(j);
  return r;
}

struct BoundArgs {
  int l = 1;
  int d = 1;
  std::string eps = "1/2";
  std::size_t t_size = 2;
};

Result cmd_folner_bound(const BoundArgs& a, const Globals&) {
  const Rational eps = parse_rational(a.eps);
  const auto b = folner_bound_zd(a.l, a.d, standard_offsets(a.d), a.t_size, eps);
  json j = zd_bound_json(b);
  j["l"] = a.l;
  j["d"] = a.d;
  j["epsilon"] = to_string(eps);
  j["T_size"] = a.t_size;
  return {dump(j), true};
}

struct ExtractArgs {
  int n = 8;
  std::string eps = "1/2";
  std::size_t block = 8;
  int ball = 8;
};

Result cmd_folner_extract(const ExtractArgs& a, const Globals& g) {
  const Rational eps = parse_rational(a.eps);
  const auto sys = SystemContext::binary_odometer();
  const auto T = odometer_generators(sys, false);
  FullGroupBudget budget;
  if (g.budget) budget.max_ball = g.budget;
  const auto gamma = subgroup_ball(T, a.ball, budget);
  AlmostAction A = build_theta(sys, odometer_point(*sys, {}, {0}), a.n, gamma);
  const auto G = std::make_shared<const LabeledGraph>(schreier_graph(A, T));
  const auto cert = chunk_certificate(G, a.block, eps);
  Result r;
  json j = {{"certificate", {{"K", cert.K}, {"fraction", to_string(cert.fraction)}, {"pass", cert.pass()}}}};
  const auto bound = folner_bound_zd(1, 1, standard_offsets(1), T.size(), eps);
  j["bound"] = zd_bound_json(bound);
  try {
    const auto rep = extract_folner_set(cert, A, T, a.ball, eps);
    const BigInt size(rep.F.size());
    j["report"] = to_json(rep);
    j["within_statement_bound"] = size <= bound.bound_statement;
    j["within_proof_bound"] = size <= bound.bound_proof;
    r.pass = rep.meets && size <= bound.bound_proof;
  } catch (const Error& e) {
    j["error"] = e.what();
    r.pass = false;
  }
  j["pass"] = r.pass;
  r.text = dump(j);
  return r;
}

struct PhiArgs {
  std::string eps = "1/2";
  int steps = 3;
  int d = 1;
  std::size_t t_size = 2;
  int l = 1;
};

Result cmd_phi(const PhiArgs& a, const Globals& g) {
  const Rational eps = parse_rational(a.eps);
  const auto ctx = GroupContext::standard_int_vector(a.d);
  const auto t = phi_recursion(ctx, eps, a.steps, standard_zd_oracle(a.d), {a.t_size, a.l});
  Result r;
  r.pass = t.complete;
  if (g.json) {
    json rows = json::array();
    for (const auto& row : t.rows) {
      json jr = {{"i", row.i}, {"Phi", to_string(row.Phi)}, {"phi", to_string(row.phi)}};
      if (row.i >= 2) jr["eta"] = to_string(row.eta);
      if (row.fol) jr["fol"] = {{"value", to_string(row.fol->value)}, {"exact", row.fol->exact}, {"verified", row.fol->verified}};
      if (row.psi) jr["psi"] = {{"value", to_string(row.psi->value)}, {"exact", row.psi->exact}, {"verified", row.psi->verified}};
      rows.push_back(std::move(jr));
    }
    r.text = dump({{"delta", to_string(t.delta)}, {"n", t.n}, {"rows", rows}, {"complete", t.complete}, {"stopped", t.stopped}});
  } else {
    r.text = phi_csv(t);
  }
  return r;
}

struct PsiArgs {
  std::string eps = "1/2";
  int steps = 3;
  int d = 1;
};

Result cmd_psi(const PsiArgs& a, const Globals& g) {
  const Rational eps = parse_rational(a.eps);
  const auto ctx = GroupContext::standard_int_vector(a.d);
  const auto t = g.budget ? psi_tilde_recursion(ctx, eps, a.steps, static_cast<unsigned>(g.budget))
                          : psi_tilde_recursion(ctx, eps, a.steps);
  Result r;
  r.pass = t.complete;
  if (g.json) {
    json rows = json::array();
    for (const auto& row : t.rows)
      rows.push_back({{"i", row.i},
                      {"Psi", to_string(row.Psi)},
                      {"eta", to_string(row.eta)},
                      {"radius", to_string(row.radius)},
                      {"verified", row.verified}});
    r.text = dump({{"rows", rows}, {"complete", t.complete}, {"stopped", t.stopped}});
  } else {
    r.text = psi_csv(t);
  }
  return r;
}

struct LefArgs {
  std::string system = "odometer";
  std::string bases = "2";
  int ball = 2;
  int max_n = 16;
};

Result cmd_lef(const LefArgs& a, const Globals& g) {
  if (a.system != "odometer") throw InvalidInput("--system: only 'odometer' is built in");
  const auto cycle = parse_int_list(a.bases);
  for (int b : cycle)
    if (b < 2) throw InvalidInput("--bases entries must be >= 2");
  const bool binary = std::all_of(cycle.begin(), cycle.end(), [](int b) { return b == 2; });
  const auto sys = SystemContext::odometer({{}, cycle});
  FullGroupBudget budget;
  if (g.budget) budget.max_ball = g.budget;
  const auto ball = subgroup_ball(odometer_generators(sys, binary), a.ball, budget);
  const auto s = minimal_lef_n(sys, ball, a.max_n);
  json j = to_json(s);
  j["ball_size"] = ball.size();
  json witnesses = json::array();
  for (const auto& row : s.rows) {
    const auto& rep = row.report;
    if (rep.product_witness)
      witnesses.push_back({{"n", row.n}, {"product", {rep.product_witness->first, rep.product_witness->second}}});
    if (rep.displacement_witness) witnesses.push_back({{"n", row.n}, {"fixed_element", *rep.displacement_witness}});
  }
  j["witnesses"] = witnesses;
  Result r;
  r.pass = s.minimal_n.has_value();
  j["pass"] = r.pass;
  r.text = dump(j);
  return r;
}

// Inserts "--key value" pairs from a JSON config right after the subcommand name.
std::vector<std::string> apply_config(const std::vector<std::string>& args, const CLI::App& app,
                                      const std::vector<std::string>& commands) {
  std::vector<std::string> rest;
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a path");
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config " + path);
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!cfg.is_object()) throw ConfigError("config must be a JSON object");

  auto pos = std::find_if(rest.begin(), rest.end(),
                          [&](const std::string& a) { return std::find(commands.begin(), commands.end(), a) != commands.end(); });
  std::string command;
  if (pos != rest.end()) {
    command = *pos;
  } else if (cfg.contains("command")) {
    if (!cfg["command"].is_string()) throw ConfigError("config field 'command' must be a string");
    command = cfg["command"];
    if (std::find(commands.begin(), commands.end(), command) == commands.end())
      throw ConfigError("config names unknown command '" + command + "'");
  } else {
    throw ConfigError("no command given");
  }
  if (pos != rest.end() && cfg.contains("command") && cfg["command"] != command)
    throw ConfigError("config command differs from the command line");
  const CLI::App* sub = app.get_subcommand(command);

  std::vector<std::string> inject;
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") continue;
    const std::string flag = "--" + key;
    if (!sub->get_option_no_throw(flag) && !app.get_option_no_throw(flag))
      throw ConfigError("unknown config field '" + key + "'");
    if (value.is_boolean()) {
      if (value.get<bool>()) inject.push_back(flag);
    } else if (value.is_string()) {
      inject.push_back(flag);
      inject.push_back(value.get<std::string>());
    } else if (value.is_number_integer()) {
      inject.push_back(flag);
      inject.push_back(value.dump());
    } else if (value.is_array()) {
      std::string joined;
      for (const auto& v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      inject.push_back(flag);
      inject.push_back(joined);
    } else {
      throw ConfigError("config field '" + key + "' must be a string, integer, boolean or array (rationals as \"p/q\")");
    }
  }
  if (pos == rest.end()) {
    rest.push_back(command);
    pos = rest.end() - 1;
  }
  rest.insert(pos + 1, inject.begin(), inject.end());
  return rest;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Topological full groups: experiments and exact checks", "tfg"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "Seed recorded in reports (no command samples randomly)");
  app.add_option("--budget", g.budget, "Command-specific size budget (0 = default)");
  app.add_option("--out", g.out, "Write the artifact to this file instead of stdout");
  app.add_flag("--json", g.json, "JSON instead of CSV for table commands");
  app.add_option("--config", g.config, "JSON file of option values; unknown fields are rejected");

  EntropyArgs ea;
  auto* e = app.add_subcommand("entropy", "Pattern counts of the edge coloring against the counting bound");
  e->add_option("--n", ea.n, "Window exponent (largest n)");
  e->add_option("--n-min", ea.n_min, "Smallest n (default: --n)");
  e->add_option("--hrange", ea.hrange, "Horizontal anchors A..B (default -2^(n+6)..2^(n+6))");
  e->add_flag("--exact-vertical", ea.exact_vertical, "Sweep one full vertical period per column (always on)");

  FreewordsArgs fa;
  auto* f = app.add_subcommand("freewords", "Nontriviality witnesses for reduced words over {A,B,C}");
  f->add_option("--max-len", fa.max_len, "Longest word");
  f->add_option("--radius", fa.radius, "Search box half-width and certification radius");

  SoficArgs sa;
  auto* s = app.add_subcommand("sofic-check", "Injective almost action of the binary odometer group ball");
  s->add_option("--n", sa.n, "Folner exponent: |A_n| = 2^n");
  s->add_option("--radius", sa.radius, "Ball radius over {+1, -1, swap}");
  s->add_option("--l", sa.l, "Amplification power");
  s->add_option("--eps", sa.eps, "Multiplicativity tolerance p/q");
  s->add_option("--displacement", sa.displacement, "Assert min displacement >= p/q instead of > 1 - eps");

  QuasitileArgs qa;
  auto* q = app.add_subcommand("quasitile", "Quasi-tiling of [1,side]^2 and the induced graph partition");
  q->add_option("--side", qa.side, "Side of A = [1,side]^2");
  q->add_option("--eps", qa.eps, "Epsilon p/q");
  q->add_option("--tiles", qa.tiles, "Explicit square tiles a..b,... after S (default: tile tower)");
  q->add_option("--bits", qa.bits, "Tile tower side-length bit budget");

  BoundArgs ba;
  auto* b = app.add_subcommand("folner-bound", "Folner function bound for Z^d with standard generators");
  b->add_option("--l", ba.l, "Power l");
  b->add_option("--d", ba.d, "Dimension d");
  b->add_option("--eps", ba.eps, "Epsilon p/q");
  b->add_option("--t-size", ba.t_size, "|T|");

  ExtractArgs xa;
  auto* x = app.add_subcommand("folner-extract", "Folner set pulled back from a Schreier graph partition (binary odometer)");
  x->add_option("--n", xa.n, "Folner exponent of the almost action");
  x->add_option("--eps", xa.eps, "Epsilon p/q");
  x->add_option("--block", xa.block, "Partition block size K");
  x->add_option("--ball", xa.ball, "Ball radius searched for F");

  PhiArgs pa;
  auto* p = app.add_subcommand("phi-table", "Folner function recursion Phi, phi for Z^d");
  p->add_option("--eps", pa.eps, "Epsilon p/q");
  p->add_option("--steps", pa.steps, "Rows");
  p->add_option("--d", pa.d, "Dimension");
  p->add_option("--t-size", pa.t_size, "|T|");
  p->add_option("--l", pa.l, "Power l");

  PsiArgs ya;
  auto* y = app.add_subcommand("psi-table", "Radius recursion Psi for Z^d");
  y->add_option("--eps", ya.eps, "Epsilon p/q");
  y->add_option("--steps", ya.steps, "Rows");
  y->add_option("--d", ya.d, "Dimension");

  LefArgs la;
  auto* l = app.add_subcommand("lef", "Minimal finite model passing the LEF conditions");
  l->add_option("--system", la.system, "System (odometer)");
  l->add_option("--bases", la.bases, "Repeating odometer bases, comma separated");
  l->add_option("--ball", la.ball, "Generator ball radius");
  l->add_option("--max-n", la.max_n, "Largest model exponent");

  const std::vector<std::string> commands = {"entropy", "freewords", "sofic-check", "quasitile", "folner-bound",
                                             "folner-extract", "phi-table", "psi-table", "lef"};
  std::vector<std::string> argv_s;
  try {
    argv_s = apply_config(args, app, commands);
  } catch (const ConfigError& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  }
  std::vector<char*> argv{const_cast<char*>("tfg")};
  for (auto& a : argv_s) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& ex) {
    const int code = app.exit(ex, out, err);
    return code == 0 ? 0 : 2;
  }

  Result r;
  try {
    if (*e) r = cmd_entropy(ea, g);
    else if (*f) r = cmd_freewords(fa, g);
    else if (*s) r = cmd_sofic(sa, g);
    else if (*q) r = cmd_quasitile(qa, g);
    else if (*b) r = cmd_folner_bound(ba, g);
    else if (*x) r = cmd_folner_extract(xa, g);
    else if (*p) r = cmd_phi(pa, g);
    else if (*y) r = cmd_psi(ya, g);
    else if (*l) r = cmd_lef(la, g);
  } catch (const InvalidInput& ex) {
    err << "error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    err << "failed: " << ex.what() << "\n";
    return 1;
  }

  if (!g.out.empty()) {
    std::ofstream file(g.out, std::ios::binary);
    if (!file) {
      err << "error: cannot write " << g.out << "\n";
      return 1;
    }
    file << r.text;
  } else {
    out << r.text;
  }
  if (!r.pass) err << "check failed\n";
  return r.pass ? 0 : 1;
}

int run(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace tfg::cli

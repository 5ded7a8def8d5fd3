// ppsz_cli: solve, estimate, verify, analyze and benchmark from the shell.
// Exit codes: 10 satisfiable, 20 unsatisfiable, 0 other subcommands (and a
// randomized solve that found nothing), 1 on errors.

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "instance_generator.hpp"
#include "ppsz/json_io.hpp"
#include "ppsz/ppsz.hpp"
#include "suites.hpp"

namespace {

using ppsz::Json;

constexpr int kExitSat = 10;
constexpr int kExitUnsat = 20;
constexpr int kExitSuiteFailed = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::optional<unsigned> tau;
  std::optional<unsigned> kwise;
  std::string mode = "unique";
  std::uint64_t seed = 1;
  std::size_t oracle_limit = ppsz::kDefaultOracleLimit;
  std::uint64_t slice = 0;
  std::optional<double> slack;
  std::string format = "json";
  std::string out;
  std::string engine = "tree";
  std::uint64_t trials = 1;
};

ppsz::Formula load(const std::string& path) {
  if (path.empty() || path == "-") return ppsz::parse_dimacs(std::cin);
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  try {
    return ppsz::parse_dimacs(in);
  } catch (const ppsz::ParseError& e) {
    throw ppsz::ParseError(e.line(), std::string(e.what()).substr(std::string(e.what()).find(": ") + 2) +
                                         " in '" + path + "'");
  }
}

void emit(const Common& c, const std::string& text) {
  if (c.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream o(c.out);
  if (!o) throw std::runtime_error("cannot write '" + c.out + "'");
  o << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

ppsz::DppszEngine engine_of(const std::string& e) {
  return e == "literal" ? ppsz::DppszEngine::literal : ppsz::DppszEngine::tree;
}

void check_tau(const Common& c, std::size_t n) {
  if (c.tau && *c.tau < 1) throw UsageError("--tau must be at least 1");
  if (c.kwise && (*c.kwise < 1 || (n > 0 && *c.kwise > n)))
    throw UsageError("--kwise must lie in [1, n] (n=" + std::to_string(n) + ")");
}

Json tau_json(const ppsz::TauChoice& t) {
  return {{"value", t.tau}, {"unclamped", t.unclamped}, {"clamped", t.clamped}, {"overridden", t.overridden}};
}

Json sigma_json(const ppsz::PermutationSet& s, std::size_t n) {
  return {{"size", s.size()}, {"kwise", s.independence()}, {"field_prime", s.field_prime()}, {"n", n},
          {"prime_exceeds_n", s.field_prime() > n}};
}

// Every printed assignment goes through this.
Json verified(const ppsz::Formula& f, const ppsz::Assignment& a) {
  if (!ppsz::is_solution(f, a)) throw std::logic_error("refusing to print an assignment that does not satisfy F");
  return ppsz::to_json(a);
}

int solve_text_or_json(const Common& c, const Json& j, int code) {
  if (c.format == "text") {
    std::ostringstream o;
    o << "s " << j.at("verdict").get<std::string>() << "\n";
    if (j.contains("assignment") && !j.at("assignment").is_null()) {
      o << "v";
      for (const auto& l : j.at("assignment")) o << ' ' << l.get<long>();
      o << " 0\n";
    }
    emit(c, o.str());
  } else {
    emit(c, dump(j));
  }
  return code;
}

int cmd_solve(const Common& c) {
  ppsz::Formula f = load(c.input);
  const std::size_t n = f.variable_count();
  check_tau(c, n);
  Json j;
  j["mode"] = c.mode;
  j["n"] = n;
  j["m"] = f.size();
  if (c.mode == "unique") {
    ppsz::UniqueConfig cfg;
    cfg.tau = c.tau;
    cfg.kwise = c.kwise;
    cfg.dppsz.engine = engine_of(c.engine);
    ppsz::UniqueResult r = ppsz::solve_unique(f, cfg);
    const bool sat = r.run.status == ppsz::DppszStatus::solution;
    j["sat"] = sat;
    j["verdict"] = sat ? "sat" : "unsat";
    j["assignment"] = sat ? verified(f, *r.run.solution) : Json(nullptr);
    j["round"] = sat ? Json(r.run.round) : Json(nullptr);
    j["instance_i"] = nullptr;
    j["stats"] = ppsz::to_json(r.run);
    j["stats"]["engine"] = c.engine;
    j["tau"] = tau_json(r.tau);
    j["sigma"] = {{"size", r.run.sigma_size}, {"kwise", r.kwise}, {"field_prime", r.field_prime}, {"n", n},
                  {"prime_exceeds_n", r.field_prime > n}};
    return solve_text_or_json(c, j, sat ? kExitSat : kExitUnsat);
  }
  if (c.mode == "general") {
    ppsz::GeneralConfig cfg;
    cfg.tau = c.tau;
    cfg.kwise = c.kwise;
    cfg.slack = c.slack;
    cfg.slice = c.slice;
    cfg.engine = engine_of(c.engine);
    ppsz::GeneralResult r = ppsz::solve_general(f, cfg);
    const bool sat = r.status == ppsz::GeneralStatus::sat;
    j["sat"] = sat;
    j["verdict"] = sat ? "sat" : "unsat";
    j["assignment"] = sat ? verified(f, *r.solution) : Json(nullptr);
    j["round"] = r.winning_round ? Json(*r.winning_round) : Json(nullptr);
    j["instance_i"] = r.winning_instance ? Json(*r.winning_instance) : Json(nullptr);
    Json inst = Json::array();
    for (const auto& s : r.instances) inst.push_back(ppsz::to_json(s));
    j["stats"] = {{"combinations_tried", r.combinations_tried},
                  {"modify_calls", r.modify_calls},
                  {"slack", r.slack},
                  {"lambda", r.lambda},
                  {"k_effective", r.k_effective},
                  {"slice", c.slice},
                  {"engine", c.engine},
                  {"instances", inst}};
    return solve_text_or_json(c, j, sat ? kExitSat : kExitUnsat);
  }
  if (c.mode == "randomized") {
    if (c.trials < 1) throw UsageError("--trials must be at least 1");
    ppsz::TauChoice tau = ppsz::choose_tau(n, c.tau);
    ppsz::PermutationSet sigma = ppsz::construct_sigma(f, c.kwise.value_or(tau.tau));
    ppsz::ImplicationMemo memo(f, {tau.tau});
    ppsz::ModifyRunner runner(f, memo);
    std::optional<ppsz::TrialRecord> hit;
    std::uint64_t used = 0;
    for (std::uint64_t t = 0; t < c.trials && !hit; ++t) {
      auto rng = ppsz::trial_rng(c.seed, t);
      ppsz::TrialRecord rec = ppsz::ppsz_trial(runner, sigma, rng);
      ++used;
      if (rec.result.ok()) hit = std::move(rec);
    }
    j["sat"] = hit ? Json(true) : Json(nullptr);
    j["verdict"] = hit ? "sat" : "unknown";
    j["assignment"] = hit ? verified(f, *hit->result.assignment) : Json(nullptr);
    j["round"] = nullptr;
    j["instance_i"] = nullptr;
    j["stats"] = {{"trials", used}, {"seed", c.seed}};
    if (hit) j["stats"]["trial"] = ppsz::to_json(*hit);
    j["tau"] = tau_json(tau);
    j["sigma"] = sigma_json(sigma, n);
    return solve_text_or_json(c, j, hit ? kExitSat : 0);
  }
  throw UsageError("unknown mode '" + c.mode + "' (unique, general, randomized)");
}

int cmd_estimate(const Common& c) {
  ppsz::Formula f = load(c.input);
  const std::size_t n = f.variable_count();
  check_tau(c, n);
  ppsz::TauChoice tau = ppsz::choose_tau(n, c.tau);
  ppsz::PermutationSet sigma = ppsz::construct_sigma(f, c.kwise.value_or(tau.tau));
  ppsz::ImplicationConfig cfg{tau.tau};
  Json j;
  j["n"] = n;
  j["tau"] = tau_json(tau);
  j["sigma"] = sigma_json(sigma, n);
  try {
    ppsz::Rational exact = ppsz::success_probability_exact(f, sigma, cfg);
    ppsz::Rational via = ppsz::success_probability_via_identity(f, sigma, cfg, ppsz::kDefaultEnumerationBudget,
                                                                c.oracle_limit);
    j["exact"] = exact.str();
    j["identity"] = via.str();
    j["equal"] = exact == via;
    j["exact_value"] = exact.convert_to<double>();
  } catch (const ppsz::BudgetExceeded& e) {
    j["exact"] = nullptr;
    j["identity"] = nullptr;
    j["equal"] = nullptr;
    j["note"] = e.what();
  }
  ppsz::MonteCarloEstimate mc = ppsz::success_probability_monte_carlo(f, sigma, cfg, c.trials, c.seed);
  j["monte_carlo"] = {{"trials", mc.trials}, {"successes", mc.successes}, {"estimate", mc.estimate()}, {"seed", c.seed}};
  emit(c, dump(j));
  return 0;
}

int cmd_oracle(const Common& c) {
  ppsz::Formula f = load(c.input);
  ppsz::SolutionSet s = ppsz::enumerate_solutions(f, c.oracle_limit);
  ppsz::VariableClassification cls = ppsz::classify_variables(f, c.oracle_limit);
  Json sols = Json::array();
  for (const auto& a : s.solutions) sols.push_back(verified(f, a));
  Json frozen = Json::array(), liquid = Json::array();
  for (ppsz::Var v : cls.frozen) frozen.push_back(v.index);
  for (ppsz::Var v : cls.liquid) liquid.push_back(v.index);
  Json j = {{"n", f.variable_count()}, {"count", s.count()}, {"solutions", sols},
            {"frozen", frozen},         {"liquid", liquid}};
  emit(c, dump(j));
  return 0;
}

int cmd_verify(const Common& c, const std::string& suite, const ppsz::suites::SuiteOptions& o) {
  std::vector<std::string> names = suite == "all" ? ppsz::suites::suite_names() : std::vector<std::string>{suite};
  Json reports = Json::array();
  bool ok = true;
  for (const auto& name : names) {
    if (name == "tree" && o.n_max < 4) throw UsageError("tree suite needs --n-max >= 4");
    if (o.n_max < 3) throw UsageError("--n-max must be at least 3");
    auto r = ppsz::suites::run_suite(name, o);
    ok = ok && r.ok();
    reports.push_back(r.to_json());
  }
  emit(c, dump({{"seed", o.seed}, {"count", o.count}, {"n_max", o.n_max}, {"suites", reports}, {"ok", ok}}));
  return ok ? 0 : kExitSuiteFailed;
}

int cmd_perm(const Common& c, std::uint32_t n) {
  if (n < 1) throw UsageError("--n must be at least 1");
  ppsz::TauChoice tau = ppsz::choose_tau(n, c.tau);
  std::vector<ppsz::Var> vars;
  for (std::uint32_t v = 1; v <= n; ++v) vars.emplace_back(v);
  check_tau(c, n);
  ppsz::PermutationSet s(vars, c.kwise.value_or(tau.tau));
  if (c.format == "csv") {
    std::ostringstream o;
    o << "index,coefficients,placements,order\n";
    for (std::uint64_t m = 0; m < s.size(); ++m) {
      auto join = [](const auto& xs) {
        std::ostringstream t;
        for (std::size_t i = 0; i < xs.size(); ++i) t << (i ? " " : "") << xs[i];
        return t.str();
      };
      std::vector<std::uint32_t> order;
      for (ppsz::Var v : s.at(m)) order.push_back(v.index);
      o << m << ',' << join(s.family().coefficients(m)) << ',' << join(s.placements(m)) << ',' << join(order) << '\n';
    }
    emit(c, o.str());
    return 0;
  }
  Json perms = Json::array();
  for (std::uint64_t m = 0; m < s.size(); ++m) {
    Json order = Json::array();
    for (ppsz::Var v : s.at(m)) order.push_back(v.index);
    perms.push_back({{"index", m}, {"coefficients", s.family().coefficients(m)}, {"placements", s.placements(m)},
                     {"order", order}});
  }
  emit(c, dump({{"sigma", sigma_json(s, n)}, {"permutations", perms}}));
  return 0;
}

int cmd_tree(const Common& c, std::uint32_t var, std::optional<std::size_t> depth) {
  ppsz::Formula f = load(c.input);
  const std::size_t n = f.variable_count();
  if (!f.has_variable(ppsz::Var(var))) throw UsageError("--var " + std::to_string(var) + " is not a variable of F");
  ppsz::SolutionSet s = ppsz::enumerate_solutions(f, c.oracle_limit);
  if (s.count() != 1)
    throw UsageError("tree needs a unique-solution formula (found " + std::to_string(s.count()) + " solutions)");
  const ppsz::Assignment& alpha = s.solutions.front();
  ppsz::TauChoice tau = ppsz::choose_tau(n, c.tau);
  const std::size_t K = tau.tau;
  const std::size_t d = depth.value_or(ppsz::tree_depth(f.width(), K));
  ppsz::FrozenTree t = ppsz::construct_tree(f, alpha, ppsz::Var(var), d);
  ppsz::TreeReport rep = ppsz::verify_tree(t, f, alpha, K);
  if (c.format == "text") {
    std::ostringstream o;
    o << ppsz::render_tree(t);
    for (std::size_t p = 0; p < rep.property.size(); ++p)
      o << "property " << p + 1 << ": " << (rep.property[p] ? "pass" : "FAIL") << "\n";
    for (const auto& why : rep.failures) o << "  " << why << "\n";
    emit(c, o.str());
  } else {
    emit(c, dump({{"root", var}, {"K", K}, {"depth", d}, {"tau", tau_json(tau)}, {"solution", verified(f, alpha)},
                  {"tree", ppsz::tree_to_json(t)}, {"report", ppsz::to_json(rep)}}));
  }
  return 0;
}

int cmd_constants(const Common& c) {
  auto l3 = ppsz::lambda_k(3), l4 = ppsz::lambda_k(4);
  auto row = [](const std::string& name, double value, const std::string& note) {
    return Json{{"name", name}, {"value", value}, {"note", note}};
  };
  auto bound = [](double e) {
    std::ostringstream o;
    o << "partial sum, error <= " << std::setprecision(3) << e;
    return o.str();
  };
  Json rows = Json::array();
  rows.push_back(row("lambda_3", l3.value, bound(l3.error_bound)));
  rows.push_back(row("two_minus_two_ln2", 2.0 - 2.0 * std::log(2.0), "closed form of lambda_3"));
  rows.push_back(row("lambda_4", l4.value, bound(l4.error_bound)));
  rows.push_back(row("base_3_unique", ppsz::runtime_base(3, 0.0), "2^(1 - lambda_3)"));
  rows.push_back(row("base_4_unique", ppsz::runtime_base(4, 0.0), "2^(1 - lambda_4)"));
  const double x3 = ppsz::crossover_delta(3, ppsz::kDefaultCompetitor3);
  const double x4 = ppsz::crossover_delta(4, ppsz::kDefaultCompetitor4);
  rows.push_back(row("crossover_3", x3, "competitor base 1.328"));
  rows.push_back(row("crossover_3_inverse", 1.0 / x3, "1 / crossover_3"));
  rows.push_back(row("crossover_4", x4, "competitor base 1.4976"));
  rows.push_back(row("crossover_4_inverse", 1.0 / x4, "1 / crossover_4"));
  if (c.format == "csv") {
    std::ostringstream o;
    o << "name,value,note\n" << std::setprecision(12);
    for (const auto& r : rows)
      o << r["name"].get<std::string>() << ',' << r["value"].get<double>() << ',' << r["note"].get<std::string>() << '\n';
    emit(c, o.str());
  } else {
    emit(c, dump({{"constants", rows}}));
  }
  return 0;
}

int cmd_bench(const Common& c, const std::string& family, std::uint32_t n_min, std::uint32_t n_max, std::size_t k,
              std::size_t count, bool wall_time) {
  if (n_min < 1 || n_max < n_min) throw UsageError("need 1 <= --n-min <= --n-max");
  if (n_max > c.oracle_limit) throw UsageError("--n-max exceeds the oracle limit");
  if (family != "unique" && family != "general") throw UsageError("--family must be unique or general");
  ppsz::gen::Rng rng(c.seed);
  std::ostringstream o;
  o << "n,mode,instance,m,solutions,modify_calls,sigma_size,winning_round,winning_instance"
    << (wall_time ? ",wall_time_s" : "") << '\n';
  for (std::uint32_t n = n_min; n <= n_max; ++n) {
    for (std::size_t t = 0; t < count; ++t) {
      ppsz::Assignment planted = ppsz::gen::random_assignment(rng, n);
      const double dens = k == 3 ? 4.27 : 9.93;
      ppsz::Formula f =
          family == "unique"
              ? ppsz::gen::unique_planted_kcnf(rng, n, k, static_cast<std::size_t>(n * dens * 0.5), planted)
              : ppsz::gen::planted_kcnf(rng, n, k, static_cast<std::size_t>(n * dens * 0.5), planted);
      const std::uint64_t sols = ppsz::count_solutions(f, c.oracle_limit);
      auto start = std::chrono::steady_clock::now();
      std::string round = "", inst = "";
      std::uint64_t calls = 0, sigma_size = 0;
      if (family == "unique") {
        ppsz::UniqueConfig cfg;
        cfg.tau = c.tau;
        cfg.kwise = c.kwise;
        cfg.dppsz.engine = engine_of(c.engine);
        auto r = ppsz::solve_unique(f, cfg);
        calls = r.run.modify_calls;
        sigma_size = r.run.sigma_size;
        if (r.run.solution) verified(f, *r.run.solution);
        round = std::to_string(r.run.round);
      } else {
        ppsz::GeneralConfig cfg;
        cfg.tau = c.tau;
        cfg.kwise = c.kwise;
        cfg.slack = c.slack;
        cfg.slice = c.slice;
        cfg.engine = engine_of(c.engine);
        auto r = ppsz::solve_general(f, cfg);
        calls = r.modify_calls;
        if (r.solution) verified(f, *r.solution);
        if (r.winning_round) round = std::to_string(*r.winning_round);
        if (r.winning_instance) {
          inst = std::to_string(*r.winning_instance);
          sigma_size = r.instances[*r.winning_instance].sigma_size;
        }
      }
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      o << n << ',' << family << ',' << t << ',' << f.size() << ',' << sols << ',' << calls << ',' << sigma_size << ','
        << round << ',' << inst;
      if (wall_time) o << ',' << std::setprecision(6) << secs;
      o << '\n';
    }
  }
  emit(c, o.str());
  return 0;
}

int cmd_generate(const Common& c, std::uint32_t n, std::size_t k, std::size_t m, const std::string& kind) {
  if (n < 1 || k < 1) throw UsageError("need --n >= 1 and --k >= 1");
  ppsz::gen::Rng rng(c.seed);
  ppsz::Formula f;
  if (kind == "uniform") {
    f = ppsz::gen::random_kcnf(rng, n, k, m);
  } else if (kind == "planted" || kind == "unique") {
    ppsz::Assignment planted = ppsz::gen::random_assignment(rng, n);
    f = kind == "planted" ? ppsz::gen::planted_kcnf(rng, n, k, m, planted)
                          : ppsz::gen::unique_planted_kcnf(rng, n, k, m, planted);
  } else {
    throw UsageError("--kind must be uniform, planted or unique");
  }
  std::ostringstream o;
  o << "c seed " << c.seed << " kind " << kind << " k " << k << "\n";
  // keep the declared variable count even when a variable occurs in no clause
  std::string body = ppsz::to_dimacs(f);
  body = body.substr(body.find('\n') + 1);
  o << "p cnf " << n << ' ' << f.size() << '\n' << body;
  emit(c, o.str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PPSZ-style satisfiability tools"};
  app.require_subcommand(1);
  Common c;

  auto add_common = [&](CLI::App* s) {
    s->add_option("--tau", c.tau, "sub-CNF size bound for implication");
    s->add_option("--kwise", c.kwise, "independence K of the permutation family");
    s->add_option("--seed", c.seed, "random seed");
    s->add_option("--oracle-limit", c.oracle_limit, "largest n the brute-force oracle accepts");
    s->add_option("--format", c.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    s->add_option("--out", c.out, "write output to this file");
  };

  auto* solve = app.add_subcommand("solve", "decide satisfiability of a DIMACS file");
  add_common(solve);
  solve->add_option("input", c.input, "DIMACS CNF file ('-' for stdin)")->required();
  solve->add_option("--mode", c.mode, "unique, general or randomized")
      ->check(CLI::IsMember({"unique", "general", "randomized"}));
  solve->add_option("--slice", c.slice, "general mode: modify calls per instance turn (0 = sequential)");
  solve->add_option("--slack", c.slack, "general mode: extra exponent in the per-instance cutoff");
  solve->add_option("--engine", c.engine, "tree or literal")->check(CLI::IsMember({"tree", "literal"}));
  solve->add_option("--trials", c.trials, "randomized mode: number of trials");

  auto* estimate = app.add_subcommand("estimate", "success probability: exact, identity and Monte Carlo");
  add_common(estimate);
  estimate->add_option("input", c.input)->required();
  c.trials = 1;
  std::uint64_t mc_trials = 1000;
  estimate->add_option("--trials", mc_trials, "Monte Carlo trials");

  auto* oracle = app.add_subcommand("oracle", "enumerate solutions and classify variables");
  add_common(oracle);
  oracle->add_option("input", c.input)->required();

  auto* verify = app.add_subcommand("verify", "run property suites on seeded random instances");
  add_common(verify);
  std::string suite = "all";
  ppsz::suites::SuiteOptions so;
  verify->add_option("--suite", suite, "identity, tree, construct-a, kwise, equivalence or all")
      ->check(CLI::IsMember({"all", "identity", "tree", "construct-a", "kwise", "equivalence"}));
  verify->add_option("--count", so.count, "instances per suite");
  verify->add_option("--n-max", so.n_max, "largest instance size");

  auto* perm = app.add_subcommand("perm", "list the permutation family for n variables");
  add_common(perm);
  std::uint32_t perm_n = 4;
  perm->add_option("--n", perm_n, "number of variables");

  auto* tree = app.add_subcommand("tree", "build and verify the frozen tree of a variable");
  add_common(tree);
  tree->add_option("input", c.input)->required();
  std::uint32_t tree_var = 1;
  std::optional<std::size_t> tree_d;
  tree->add_option("--var", tree_var, "root variable");
  tree->add_option("--depth", tree_d, "tree depth (default floor(log_k tau))");

  auto* constants = app.add_subcommand("constants", "numeric constants");
  add_common(constants);

  auto* bench = app.add_subcommand("bench", "modify-call counts on planted families");
  add_common(bench);
  std::string family = "unique";
  std::uint32_t n_min = 6, n_max = 10;
  std::size_t bench_k = 3, bench_count = 3;
  bool no_wall = false;
  bench->add_option("--family", family, "unique or general");
  bench->add_option("--n-min", n_min);
  bench->add_option("--n-max", n_max);
  bench->add_option("--k", bench_k);
  bench->add_option("--count", bench_count, "instances per n");
  bench->add_option("--slice", c.slice);
  bench->add_option("--slack", c.slack);
  bench->add_option("--engine", c.engine)->check(CLI::IsMember({"tree", "literal"}));
  bench->add_flag("--no-wall-time", no_wall, "omit the wall-time column (byte-stable output)");

  auto* generate = app.add_subcommand("generate", "write a random DIMACS instance");
  add_common(generate);
  std::uint32_t gen_n = 10;
  std::size_t gen_k = 3, gen_m = 42;
  std::string kind = "uniform";
  generate->add_option("--n", gen_n);
  generate->add_option("--k", gen_k);
  generate->add_option("--m", gen_m);
  generate->add_option("--kind", kind, "uniform, planted or unique");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) return cmd_solve(c);
    if (*estimate) {
      c.trials = mc_trials;
      return cmd_estimate(c);
    }
    if (*oracle) return cmd_oracle(c);
    if (*verify) {
      so.seed = c.seed;
      so.oracle_limit = c.oracle_limit;
      return cmd_verify(c, suite, so);
    }
    if (*perm) return cmd_perm(c, perm_n);
    if (*tree) return cmd_tree(c, tree_var, tree_d);
    if (*constants) return cmd_constants(c);
    if (*bench) return cmd_bench(c, family, n_min, n_max, bench_k, bench_count, !no_wall);
    if (*generate) return cmd_generate(c, gen_n, gen_k, gen_m, kind);
  } catch (const ppsz::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

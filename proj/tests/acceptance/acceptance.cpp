// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails. `--only N[,M...]` runs a subset.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <fmt/core.h>
#include <spdlog/spdlog.h>

#include "iota/affordance/mask.hpp"
#include "iota/affordance/rules.hpp"
#include "iota/agents/learner.hpp"
#include "iota/agents/targets.hpp"
#include "iota/agents/trainer.hpp"
#include "iota/ckf/ckf.hpp"
#include "iota/common/rng.hpp"
#include "iota/envs/environment.hpp"
#include "iota/harness/experiment_spec.hpp"
#include "iota/harness/metrics.hpp"
#include "iota/harness/runner.hpp"
#include "iota/nn/loss.hpp"
#include "support/oracles.hpp"

using namespace iota;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

fs::path work_dir() {
  const auto dir = fs::current_path() / "acceptance-out";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

affordance::RuleSet shipped_rules(const envs::Environment& env) {
  return affordance::load_ruleset(envs::rules_path(env.name()), env.action_space().names, *env.registry()).rules;
}

// --- 1 -------------------------------------------------------------------

Outcome tokenizer_suite() {
  const auto t0 = Clock::now();
  long checked = 0, failures = 0;
  for (int mu : {10, 100}) {
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>((mu - 1) * 10 * 10 * 9));
    for (int k = 1; k < mu; ++k) {
      for (int a = 0; a < 10; ++a) {
        for (int b = 0; b < 10; ++b) {
          for (int d = 0; d <= 8; ++d) {
            const auto t = ckf::Token::pack(k, a, b, d, mu);
            const double v = t.value();
            ++checked;
            const bool bands_ok = oracle::decode_bands(v, mu) == oracle::Bands{k, a, b, d};
            const bool round_trip = ckf::token_from_value(v, mu) == t;
            const bool key_ok = ckf::decode_key(t) == static_cast<double>(k) / mu;
            const bool range_ok = v > 0 && v < 1;
            if (!(bands_ok && round_trip && key_ok && range_ok)) ++failures;
            values.push_back(v);
          }
        }
      }
    }
    std::sort(values.begin(), values.end());
    failures += std::adjacent_find(values.begin(), values.end()) != values.end();
  }
  const double secs = seconds_since(t0);
  return {failures == 0 && secs < 10,
          fmt::format("{} tuples, {} failures, {:.2f} s", checked, failures, secs)};
}

// --- 2 -------------------------------------------------------------------

struct Enumeration {
  long states = 0;
  long mismatches = 0;
};

Enumeration enumerate_masks(const std::string& layout_file, const std::vector<std::uint64_t>& seeds) {
  const auto layout = envs::load_layout(layout_file);
  Enumeration out;
  for (auto seed : seeds) {
    auto root = envs::make_environment(layout);
    const auto rules = shipped_rules(*root);
    const int n_a = root->action_space().n;
    root->reset(seed);
    std::unordered_set<std::string> seen{root->state_key()};
    std::deque<std::unique_ptr<envs::Environment>> queue;
    queue.push_back(std::move(root));
    while (!queue.empty()) {
      auto env = std::move(queue.front());
      queue.pop_front();
      const auto frame = env->frame();
      const auto params = frame.token_params();
      const auto grid = ckf::build_ckf(frame.elements, params);
      const auto under = ckf::build_underlay(frame.elements, params);
      const auto got = affordance::affordance_mask(grid, under, rules);
      const auto want = oracle::mask(grid, under, rules);
      ++out.states;
      bool same = static_cast<int>(want.size()) == got.size();
      for (int a = 0; same && a < n_a; ++a) same = (got.allowed(a) ? 1 : 0) == want[static_cast<std::size_t>(a)];
      out.mismatches += !same;
      if (env->terminal()) continue;
      for (int a = 0; a < n_a; ++a) {
        auto child = env->clone();
        child->step(a);
        if (seen.insert(child->state_key()).second) queue.push_back(std::move(child));
      }
    }
  }
  return out;
}

Outcome mask_oracle_equivalence(const fs::path& data_dir) {
  const auto t0 = Clock::now();
  // Ghost patrols depend on the seed; cover several draws.
  const auto pac = enumerate_masks((data_dir / "pacman5.layout").string(), {1, 2, 3, 4, 5, 6, 7, 8});
  const auto taxi = enumerate_masks((data_dir / "taxi5.layout").string(), {1});
  const double secs = seconds_since(t0);
  return {pac.mismatches + taxi.mismatches == 0 && secs < 60 && pac.states > 0 && taxi.states > 0,
          fmt::format("pacman {} states / {} mismatches, taxidriver {} states / {} mismatches, {:.1f} s",
                      pac.states, pac.mismatches, taxi.states, taxi.mismatches, secs)};
}

// --- 3 -------------------------------------------------------------------

struct GradReport {
  int sampled = 0;
  double worst = 0;
};

GradReport gradient_check(agents::AgentKind kind, std::uint64_t seed) {
  const int inputs = 10, n_a = 4, batch = 6;
  nn::Architecture arch{inputs, n_a, agents::head_of(kind), 12, 8};
  nn::Network main(arch, seed);
  nn::Network target(arch, seed + 1);
  Rng rng(seed * 31 + 7);

  Eigen::MatrixXd s(inputs, batch), s2(inputs, batch);
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    s.data()[i] = rng.uniform(0, 1);
    s2.data()[i] = rng.uniform(0, 1);
  }
  std::vector<agents::Transition> store(batch);
  for (int i = 0; i < batch; ++i) {
    auto& t = store[static_cast<std::size_t>(i)];
    t.action = static_cast<int>(rng.below(n_a));
    t.reward = rng.uniform(-2, 2);
    t.terminal = i == batch - 1;
    std::vector<std::uint8_t> m(n_a), m2(n_a);
    for (auto& x : m) x = static_cast<std::uint8_t>(rng.below(2));
    for (auto& x : m2) x = static_cast<std::uint8_t>(rng.below(2));
    m[0] = m2[0] = 1;
    t.mask = affordance::AffordanceMask(m);
    t.next_mask = affordance::AffordanceMask(m2);
  }
  std::vector<const agents::Transition*> items;
  for (const auto& t : store) items.push_back(&t);

  const auto q_s = main.forward(s).q;
  const auto q_next_main = main.forward(s2).q;
  const auto q_next_target = target.forward(s2).q;
  const auto spec = agents::build_loss(kind, 0.99, 1.0, items, q_s, q_next_main, q_next_target);

  Eigen::VectorXd grad;
  nn::loss_and_gradient(main, s, spec, grad);

  std::vector<Eigen::Index> order(static_cast<std::size_t>(main.size()));
  for (Eigen::Index i = 0; i < main.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[rng.below(i + 1)]);
  order.resize(std::min<std::size_t>(order.size(), 240));

  GradReport report;
  const double h = 1e-5;
  for (auto i : order) {
    nn::Network plus = main, minus = main;
    plus.params()[i] += h;
    minus.params()[i] -= h;
    const double fd = (nn::evaluate_loss(plus, s, spec) - nn::evaluate_loss(minus, s, spec)) / (2 * h);
    const double rel = std::abs(fd - grad[i]) / std::max({std::abs(fd), std::abs(grad[i]), 1e-6});
    report.worst = std::max(report.worst, rel);
    ++report.sampled;
  }
  return report;
}

Outcome gradient_checks() {
  using agents::AgentKind;
  const std::vector<std::pair<std::string, AgentKind>> variants = {
      {"composite-simple", AgentKind::idqn},     {"composite-double", AgentKind::iddqn},
      {"max-target", AgentKind::dqn},            {"double-target", AgentKind::ddqn},
      {"composite-simple-dueling", AgentKind::idudqn}, {"composite-double-dueling", AgentKind::idddqn}};
  bool pass = true;
  std::string detail;
  for (const auto& [name, kind] : variants) {
    const auto r = gradient_check(kind, 101);
    pass = pass && r.sampled >= 200 && r.worst < 1e-4;
    detail += fmt::format("{}{} n={} max_rel={:.1e}", detail.empty() ? "" : "; ", name, r.sampled, r.worst);
  }
  return {pass, detail};
}

// --- 4 -------------------------------------------------------------------

Outcome safety_audit() {
  using agents::AgentKind;
  long steps = 0, violations = 0, fallbacks = 0, mask_mismatch = 0;
  const std::vector<AgentKind> kinds = {AgentKind::idqn, AgentKind::iddqn, AgentKind::idudqn, AgentKind::idddqn};
  for (const auto& name : envs::environment_names()) {
    for (auto kind : kinds) {
      auto env = envs::make_environment(name);
      const auto rules = shipped_rules(*env);
      agents::TrainConfig config;
      config.kind = kind;
      config.units = 5;
      config.steps_per_epoch = 1000;
      config.seed = 17;
      agents::TrainHooks hooks;
      hooks.on_step = [&](const agents::StepRecord& r) {
        ++steps;
        const auto want = oracle::mask(*r.state, *r.underlay, rules);
        for (int a = 0; a < r.mask->size(); ++a) {
          if ((r.mask->allowed(a) ? 1 : 0) != want[static_cast<std::size_t>(a)]) {
            ++mask_mismatch;
            break;
          }
        }
        const bool all_zero = std::count(want.begin(), want.end(), 1) == 0;
        if (all_zero) {
          ++fallbacks;
        } else if (want[static_cast<std::size_t>(r.selection.action)] == 0) {
          ++violations;
        }
      };
      const auto result = agents::train(*env, rules, config, hooks);
      if (result.fallbacks > 0) spdlog::warn("{} {}: {} all-zero-mask fallbacks", name, to_string(kind), result.fallbacks);
    }
  }
  const double fallback_rate = steps ? static_cast<double>(fallbacks) / static_cast<double>(steps) : 1.0;
  return {steps >= 100000 && violations == 0 && mask_mismatch == 0 && fallback_rate < 1e-3,
          fmt::format("{} steps, {} violations, {} mask/oracle mismatches, {} fallbacks ({:.4f}%)", steps, violations,
                      mask_mismatch, fallbacks, 100 * fallback_rate)};
}

// --- 5, 6 ----------------------------------------------------------------

struct RunTrace {
  std::vector<double> rewards;
  std::vector<envs::TerminalKind> outcomes;
  std::vector<int> positives;
};

struct OrderingRun {
  std::map<std::string, RunTrace> runs;  // by run id
  std::map<std::string, std::pair<std::string, std::uint64_t>> cell;  // run id -> (agent, seed)
};

OrderingRun run_ordering(const std::string& env, const std::string& out) {
  auto spec = harness::parse_spec(fmt::format("name: {0}\nstage: 2\nenv: {0}\nagents: IDQN, DQN\nseeds: 1, 2, 3\n"
                                              "epochs: 100\ncheckpoint_every: 0\n",
                                              env),
                                  work_dir().string());
  spec.output = out;
  OrderingRun result;
  std::mutex mu;
  harness::RunOptions options;
  options.on_unit = [&](const harness::Cell& c, const agents::UnitMetrics& u) {
    std::lock_guard lock(mu);
    auto& t = result.runs[c.run_id];
    t.outcomes.push_back(u.outcome);
    t.positives.push_back(u.positive_rewards);
    result.cell[c.run_id] = {agents::to_string(c.agent), c.seed};
  };
  const auto exp = harness::run_experiment(spec, options);
  for (const auto& row : exp.rows) result.runs[row.run_id].rewards.push_back(row.avg_reward);
  return result;
}

double tail_mean(const std::vector<double>& x) {
  const int n = harness::tail_length(static_cast<int>(x.size()));
  double s = 0;
  for (auto i = x.size() - static_cast<std::size_t>(n); i < x.size(); ++i) s += x[i];
  return s / n;
}

std::map<std::uint64_t, std::map<std::string, const RunTrace*>> by_seed(const OrderingRun& r) {
  std::map<std::uint64_t, std::map<std::string, const RunTrace*>> out;
  for (const auto& [id, trace] : r.runs) {
    const auto& [agent, seed] = r.cell.at(id);
    out[seed][agent] = &trace;
  }
  return out;
}

Outcome taxi_ordering() {
  const auto t0 = Clock::now();
  const auto r = run_ordering("taxidriver", "taxi-ordering");
  bool pass = r.runs.size() == 6;
  std::string detail;
  for (const auto& [seed, agents] : by_seed(r)) {
    const double idqn = tail_mean(agents.at("IDQN")->rewards);
    const double dqn = tail_mean(agents.at("DQN")->rewards);
    pass = pass && idqn > 0 && idqn >= 3 * dqn;
    detail += fmt::format("seed {}: IDQN {:.2f} vs DQN {:.2f}; ", seed, idqn, dqn);
  }
  return {pass, detail + fmt::format("{:.0f} s", seconds_since(t0))};
}

Outcome flappy_ordering() {
  const auto t0 = Clock::now();
  const auto r = run_ordering("flappybirds", "flappy-ordering");
  bool pass = r.runs.size() == 6;
  std::string detail;
  for (const auto& [seed, agents] : by_seed(r)) {
    const auto& idqn = *agents.at("IDQN");
    const auto& dqn = *agents.at("DQN");
    const double ti = tail_mean(idqn.rewards);
    const double td = tail_mean(dqn.rewards);
    const auto n = static_cast<double>(dqn.outcomes.size());
    const auto failed = static_cast<double>(
        std::count_if(dqn.outcomes.begin(), dqn.outcomes.end(), [](auto k) { return k != envs::TerminalKind::win; }));
    const auto no_pipe = static_cast<double>(std::count(dqn.positives.begin(), dqn.positives.end(), 0));
    pass = pass && ti > 0 && td < ti && n > 0 && failed / n >= 0.9;
    detail += fmt::format("seed {}: IDQN {:.2f} vs DQN {:.2f}, DQN failed {:.0f}% (no pipe passed {:.0f}%); ", seed,
                          ti, td, 100 * failed / n, 100 * no_pipe / n);
  }
  return {pass, detail + fmt::format("{:.0f} s", seconds_since(t0))};
}

// --- 7 -------------------------------------------------------------------

Outcome lambda_sweep() {
  auto spec = harness::parse_spec(
      "name: sweep\nstage: lambda-sweep\nenv: pacman\nagents: IDQN, IDDQN, IDuDQN, IDDDQN\nseeds: 1\n"
      "epochs: 2\nsteps_per_epoch: 60\nbatch: 16\ncheckpoint_every: 0\n",
      work_dir().string());
  spec.output = "lambda-sweep";
  const auto result = harness::run_experiment(spec);
  std::set<std::string> agents;
  std::set<double> lambdas;
  for (const auto& c : result.summary) {
    agents.insert(c.agent);
    lambdas.insert(c.lambda);
  }
  const auto table = slurp(fs::path(result.output_dir) / "summary.txt");
  const auto csv = slurp(fs::path(result.output_dir) / "summary.csv");
  const long csv_rows = std::count(csv.begin(), csv.end(), '\n') - 1;
  const bool pass = result.summary.size() == 20 && agents.size() == 4 && lambdas == std::set<double>{0, 0.5, 1, 5, 10} &&
                    csv_rows == 20 && table.find("IDDDQN") != std::string::npos;
  return {pass, fmt::format("{} summary cells ({} agents x {} lambdas)", result.summary.size(), agents.size(),
                            lambdas.size())};
}

// --- 8 -------------------------------------------------------------------

Outcome reduction_identities() {
  Rng rng(2024);
  const int cases = 10000;
  long simple_bad = 0, index_bad = 0;
  double worst = 0;
  for (int i = 0; i < cases; ++i) {
    const int n = 2 + static_cast<int>(rng.below(7));
    Eigen::VectorXd q(n), q_any(n);
    for (int a = 0; a < n; ++a) {
      q[a] = rng.uniform(0, 10);
      q_any[a] = rng.uniform(-10, 10);
    }
    // An empty rule set yields the all-ones mask.
    ckf::Ckf grid(1, 1, 10);
    grid.set(0, 0, ckf::Token::pack(1, 0, 0, 0, 10));
    const auto ones = affordance::affordance_mask(grid, grid, affordance::RuleSet(n, {}));
    const double r = rng.uniform(-10, 10);
    const double gamma = rng.uniform(0.5, 1.0);
    const double lhs = agents::target_simple(r, gamma, q, ones, false);
    const double rhs = r + gamma * q.maxCoeff();
    const double err = std::abs(lhs - rhs);
    worst = std::max(worst, err / (std::abs(r) + gamma * q.maxCoeff() + 1e-300));
    // Machine precision: rounding of the shift and the sum, a few ulps.
    if (err > 8 * std::numeric_limits<double>::epsilon() * (std::abs(r) + gamma * q.maxCoeff())) ++simple_bad;

    Eigen::Index best = 0;
    q_any.maxCoeff(&best);
    if (agents::target_double_index(q_any, q_any, ones) != best) ++index_bad;
  }
  return {simple_bad == 0 && index_bad == 0,
          fmt::format("{} cases: target mismatches {}, index mismatches {}, max rel err {:.1e}", cases, simple_bad,
                      index_bad, worst)};
}

// --- 9 -------------------------------------------------------------------

Outcome determinism() {
  const std::string text =
      "name: det\nstage: 2\nenv: scararobot\nagents: IDDDQN, DQN, IDuDQN\nseeds: 4, 5\nepochs: 3\n"
      "steps_per_epoch: 120\nbatch: 16\ncheckpoint_every: 0\n";
  std::vector<std::string> dirs;
  const std::vector<int> jobs = {1, 1, 2};
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    auto spec = harness::parse_spec(text, work_dir().string());
    spec.output = "determinism-" + std::to_string(i);
    harness::RunOptions options;
    options.jobs = jobs[i];
    dirs.push_back(harness::run_experiment(spec, options).output_dir);
  }
  long files = 0, differing = 0;
  for (const auto& entry : fs::recursive_directory_iterator(dirs[0])) {
    if (!entry.is_regular_file() || entry.path().extension() != ".csv") continue;
    const auto rel = fs::relative(entry.path(), dirs[0]);
    const auto ref = slurp(entry.path());
    for (std::size_t i = 1; i < dirs.size(); ++i) {
      ++files;
      differing += slurp(fs::path(dirs[i]) / rel) != ref;
    }
  }
  return {files > 0 && differing == 0,
          fmt::format("{} CSV comparisons across 3 runs (jobs 1, 1, 2), {} differ", files, differing)};
}

}  // namespace

int main(int argc, char** argv) {
  spdlog::set_level(spdlog::level::warn);
  std::set<int> only;
  fs::path data_dir = fs::path(IOTA_RL_TEST_DATA_DIR);
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--only" && i + 1 < argc) {
      std::stringstream list(argv[++i]);
      std::string item;
      while (std::getline(list, item, ',')) only.insert(std::stoi(item));
    }
  }

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"tokenizer oracle suite", tokenizer_suite},
      {"mask oracle equivalence", [&] { return mask_oracle_equivalence(data_dir); }},
      {"gradient checks", gradient_checks},
      {"safety audit", safety_audit},
      {"taxidriver ordering", taxi_ordering},
      {"flappybirds ordering", flappy_ordering},
      {"lambda sweep shape", lambda_sweep},
      {"reduction identities", reduction_identities},
      {"determinism", determinism},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!only.empty() && !only.count(id)) continue;
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    fmt::print("{} {}. {}: {}\n", o.pass ? "PASS" : "FAIL", id, criteria[i].first, o.detail);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}

// hastings-lab: command line front end for the experiment runners.
//
// Exit status: 0 when every asserted inequality held, 1 for usage or configuration errors,
// 2 when at least one asserted inequality failed.

#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "hlab/experiments.hpp"

namespace {

using hlab::ExperimentConfig;

struct Flags {
  std::map<std::string, std::string> values;
};

template <typename T>
std::vector<T> parse_list(const std::string& text, const std::string& flag) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::stringstream is(item);
    T v;
    if (!(is >> v) || !is.eof()) throw hlab::Error(hlab::ErrorCode::ConfigInvalid, flag + ": cannot parse '" + item + "'");
    out.push_back(v);
  }
  if (out.empty()) throw hlab::Error(hlab::ErrorCode::ConfigInvalid, flag + ": empty list");
  return out;
}

template <typename T>
T parse_one(const std::string& text, const std::string& flag) {
  const auto v = parse_list<T>(text, flag);
  if (v.size() != 1) throw hlab::Error(hlab::ErrorCode::ConfigInvalid, flag + ": expected a single value");
  return v[0];
}

ExperimentConfig build_config(const Flags& f) {
  ExperimentConfig cfg;
  if (auto it = f.values.find("config"); it != f.values.end()) {
    std::ifstream in(it->second);
    if (!in) throw hlab::Error(hlab::ErrorCode::ConfigInvalid, "--config: cannot read " + it->second);
    hlab::Json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw hlab::Error(hlab::ErrorCode::ConfigInvalid, std::string("--config: ") + e.what());
    }
    cfg = ExperimentConfig::from_json(j);
  }
  for (const auto& [key, v] : f.values) {
    const std::string flag = "--" + key;
    if (key == "config") continue;
    else if (key == "model") cfg.model = v;
    else if (key == "L") cfg.L = parse_one<int>(v, flag);
    else if (key == "g" || key == "J" || key == "delta") cfg.couplings[key] = parse_one<double>(v, flag);
    else if (key == "X") cfg.x = hlab::parse_site_range(v, flag);
    else if (key == "ell") cfg.ells = parse_list<double>(v, flag);
    else if (key == "mu") cfg.mu = parse_one<double>(v, flag);
    else if (key == "quad-nodes") cfg.quad_nodes = parse_one<int>(v, flag);
    else if (key == "t") cfg.times = parse_list<double>(v, flag);
    else if (key == "sites") cfg.sites = parse_list<int>(v, flag);
    else if (key == "inner") cfg.inner = hlab::parse_site_range(v, flag);
    else if (key == "cuts") cfg.cuts = parse_list<int>(v, flag);
    else if (key == "chain") cfg.chain = parse_one<int>(v, flag);
    else if (key == "r") cfg.r = parse_one<double>(v, flag);
    else if (key == "c1") cfg.c1 = parse_one<double>(v, flag);
    else if (key == "c2") cfg.c2 = parse_one<double>(v, flag);
    else if (key == "g-values") cfg.g_values = parse_list<double>(v, flag);
    else if (key == "L-values") cfg.l_values = parse_list<int>(v, flag);
    else if (key == "seed") cfg.seed = parse_one<std::uint64_t>(v, flag);
    else if (key == "threads") cfg.threads = parse_one<int>(v, flag);
    else if (key == "out") cfg.out = v;
  }
  return cfg;
}

void add_flags(CLI::App* cmd, Flags& f, const std::vector<std::pair<std::string, std::string>>& names) {
  for (const auto& [name, help] : names) {
    cmd->add_option_function<std::string>(
        "--" + name, [&f, name = name](const std::string& v) { f.values[name] = v; }, help);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite-volume checks of Lieb-Robinson bounds, ground-state factorization and entanglement area laws"};
  app.require_subcommand(1);
  Flags flags;
  const std::vector<std::pair<std::string, std::string>> common{
      {"config", "JSON file with the same keys as the flags"},
      {"out", "output directory (default .)"},
      {"seed", "seed for randomized diagnostics (default 0)"},
      {"threads", "worker threads for sweeps"}};
  const std::vector<std::pair<std::string, std::string>> model{
      {"model", "tfim | xxz | cluster | onsite"}, {"L", "chain length"}, {"g", "field coupling"},
      {"J", "bond coupling"}, {"delta", "xxz anisotropy"}};

  using hlab::Runner;
  std::map<std::string, Runner> runners;
  auto sub = [&](const std::string& name, const std::string& help, Runner run,
                 std::vector<std::pair<std::string, std::string>> extra) {
    CLI::App* cmd = app.add_subcommand(name, help);
    add_flags(cmd, flags, common);
    add_flags(cmd, flags, extra);
    runners[name] = std::move(run);
    return cmd;
  };
  auto join = [](std::vector<std::pair<std::string, std::string>> a,
                 const std::vector<std::pair<std::string, std::string>>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
  };

  sub("geometry", "r-boundary, interior, thickening and interaction boundary of a chain interval",
      hlab::run_geometry, {{"chain", "chain length"}, {"X", "interval a:b (half-open)"}, {"r", "boundary width"}});
  sub("lr", "commutator growth against the Lieb-Robinson bounds", hlab::run_lr,
      join(model, {{"mu", "exponential weight"}, {"t", "comma-separated times"}, {"sites", "sites of A and B"},
                   {"inner", "truncation interval a:b"}, {"X", "support of the truncated operator a:b"}}));
  sub("factorize", "factorization pipeline and its inequality chain", hlab::run_factorize,
      join(model, {{"X", "interval a:b (half-open)"}, {"ell", "comma-separated lengths"}, {"mu", "exponential weight"},
                   {"quad-nodes", "Gauss-Hermite nodes"}}));
  sub("entropy", "entropy, fidelity and the entropy bound for one cut", hlab::run_entropy,
      join(model, {{"X", "interval a:b (half-open)"}, {"ell", "comma-separated lengths"}, {"mu", "exponential weight"},
                   {"c1", "prefactor constant"}, {"c2", "decay constant"}, {"quad-nodes", "Gauss-Hermite nodes"}}));
  sub("arealaw", "entropy of the first m sites for each cut", hlab::run_arealaw,
      join(model, {{"cuts", "comma-separated cut positions"}}));
  sub("sweep", "factorization and entropy over a grid of L, g and ell", hlab::run_sweep,
      join(model, {{"L-values", "comma-separated lengths"}, {"g-values", "comma-separated fields"},
                   {"ell", "comma-separated lengths"}, {"X", "interval a:b"}, {"mu", "exponential weight"},
                   {"c1", "prefactor constant"}, {"c2", "decay constant"}}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  const std::string name = app.get_subcommands().front()->get_name();
  ExperimentConfig cfg;
  try {
    cfg = build_config(flags);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return hlab::run_and_report(name, runners.at(name), cfg, std::cout, std::cerr);
}

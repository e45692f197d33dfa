// rqmc: command-line front end for the point-set, evaluation, gradient and
// learning experiments. Every command writes CSV with one leading "# {json}"
// metadata line and is a pure function of its flags.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rqmcpg/experiments.hpp"
#include "rqmcpg/lowdisc.hpp"

#ifndef RQMCPG_VERSION
#define RQMCPG_VERSION "0.0.0"
#endif

namespace {

using namespace rqmcpg;
using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string item; std::getline(ss, item, ',');) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// Destination for a CSV stream: a file when a path is given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty()) {
      out_ = &fallback;
      return;
    }
    file_.open(path, std::ios::binary | std::ios::trunc);
    if (!file_) throw std::runtime_error("cannot open output file " + path);
    out_ = &file_;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

/// Raw flag values; converted and validated into ExperimentConfig.
struct Flags {
  std::string env = "lqr";
  std::string sampler = "mc,rqmc";
  std::string randomization = "lms-shift";
  std::string sort_norm = "l1";
  int log2n = -1;
  int log2n_min = 4;
  int log2n_max = 12;
  int seeds = 30;
  std::uint64_t seed_base = 0;
  int horizon = 20;
  double noise_scale = kDefaultLqrNoiseScale;
  std::uint64_t env_seed = 0;
  std::string optimizer = "sgd";
  std::string cv = "off";
  int iters = 2000;
  std::size_t trajs = 16;
  double lr = kDefaultSgdLr;
  double momentum = 0.99;
  double asgd_lr = kDefaultAsgdLr;
  double kappa = 1000.0;
  double xi = 10.0;
  double gamma = 0.99;
  double lambda = 0.95;
  double init_scale = 0.3;
  int record_every = 1;
  std::size_t truth_budget = std::size_t{1} << 14;
  std::int64_t truth_seed = -1;
  int threads = 0;
  std::string out;
  std::string config;

  // points
  std::string kind = "rqmc";
  int dims = 2;
  std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--env", f.env, "brownian | lqr");
  cmd->add_option("--sampler", f.sampler, "comma-separated samplers: mc, rqmc, arqmc");
  cmd->add_option("--randomization", f.randomization, "lms-shift | owen");
  cmd->add_option("--sort-norm", f.sort_norm, "Array-RQMC state ordering: l1 | l2 | linf");
  cmd->add_option("--log2n", f.log2n, "single log2 sample size (sets min and max)");
  cmd->add_option("--log2n-min", f.log2n_min, "smallest log2 sample size");
  cmd->add_option("--log2n-max", f.log2n_max, "largest log2 sample size");
  cmd->add_option("--seeds", f.seeds, "replications per cell");
  cmd->add_option("--seed-base", f.seed_base, "first replication seed");
  cmd->add_option("--horizon", f.horizon, "episode length");
  cmd->add_option("--noise-scale", f.noise_scale, "LQR dynamics noise multiplier");
  cmd->add_option("--env-seed", f.env_seed, "seed of the random LQR instance");
  cmd->add_option("--threads", f.threads, "worker threads (0 = all, capped by QMC_THREADS)");
  cmd->add_option("--out", f.out, "output CSV path (default stdout)");
  cmd->add_option("--config", f.config, "key=value file; command-line flags take precedence");
}

ExperimentConfig to_config(const Flags& f) {
  ExperimentConfig cfg;
  const auto env = parse_env(f.env);
  if (!env) throw UsageError("unknown --env '" + f.env + "'");
  cfg.env = *env;
  cfg.samplers.clear();
  for (const auto& s : split_list(f.sampler)) {
    const auto parsed = parse_sampler(s);
    if (!parsed) throw UsageError("unknown sampler '" + s + "'");
    cfg.samplers.push_back(*parsed);
  }
  const auto rand = parse_randomization(f.randomization);
  if (!rand) throw UsageError("unknown --randomization '" + f.randomization + "'");
  cfg.randomization = *rand;
  if (f.sort_norm == "l1") {
    cfg.sort_norm = SortNorm::l1;
  } else if (f.sort_norm == "l2") {
    cfg.sort_norm = SortNorm::l2;
  } else if (f.sort_norm == "linf") {
    cfg.sort_norm = SortNorm::linf;
  } else {
    throw UsageError("unknown --sort-norm '" + f.sort_norm + "'");
  }
  cfg.log2n_min = f.log2n >= 0 ? f.log2n : f.log2n_min;
  cfg.log2n_max = f.log2n >= 0 ? f.log2n : f.log2n_max;
  cfg.seeds = f.seeds;
  cfg.seed_base = f.seed_base;
  cfg.horizon = f.horizon;
  cfg.noise_scale = f.noise_scale;
  cfg.env_seed = f.env_seed;
  cfg.optimizers.clear();
  for (const auto& o : split_list(f.optimizer)) {
    const auto parsed = parse_optimizer(o);
    if (!parsed) throw UsageError("unknown optimizer '" + o + "'");
    cfg.optimizers.push_back(*parsed);
  }
  if (f.cv == "off") {
    cfg.cv_options = {false};
  } else if (f.cv == "on") {
    cfg.cv_options = {true};
  } else if (f.cv == "both") {
    cfg.cv_options = {false, true};
  } else {
    throw UsageError("--cv must be off, on or both");
  }
  cfg.iterations = f.iters;
  cfg.trajectories_per_update = f.trajs;
  cfg.lr = f.lr;
  cfg.momentum = f.momentum;
  cfg.asgd_lr = f.asgd_lr;
  cfg.kappa = f.kappa;
  cfg.xi = f.xi;
  cfg.gae_gamma = f.gamma;
  cfg.gae_lambda = f.lambda;
  cfg.init_scale = f.init_scale;
  cfg.record_every = f.record_every;
  cfg.truth_budget = f.truth_budget;
  if (f.truth_seed >= 0) cfg.truth_seed = static_cast<std::uint64_t>(f.truth_seed);
  cfg.threads = f.threads;
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return cfg;
}

json config_json(const ExperimentConfig& c) {
  json samplers = json::array();
  for (auto s : c.samplers) samplers.push_back(std::string(to_string(s)));
  json optimizers = json::array();
  for (auto o : c.optimizers) optimizers.push_back(std::string(to_string(o)));
  json cvs = json::array();
  for (bool b : c.cv_options) cvs.push_back(b);
  return json{{"env", std::string(to_string(c.env))},
              {"samplers", samplers},
              {"randomization", std::string(to_string(c.randomization))},
              {"log2n_min", c.log2n_min},
              {"log2n_max", c.log2n_max},
              {"seeds", c.seeds},
              {"seed_base", c.seed_base},
              {"horizon", c.horizon},
              {"noise_scale", c.noise_scale},
              {"env_seed", c.env_seed},
              {"optimizers", optimizers},
              {"cv", cvs},
              {"iterations", c.iterations},
              {"trajectories_per_update", c.trajectories_per_update},
              {"lr", c.lr},
              {"momentum", c.momentum},
              {"asgd_lr", c.asgd_lr},
              {"kappa", c.kappa},
              {"xi", c.xi},
              {"gae_gamma", c.gae_gamma},
              {"gae_lambda", c.gae_lambda},
              {"init_scale", c.init_scale},
              {"truth_budget", c.truth_budget}};
}

void write_metadata(std::ostream& os, const std::string& command, json config) {
  json meta{{"command", command},
            {"config", std::move(config)},
            {"version", RQMCPG_VERSION},
            {"direction_table", std::string(kDirectionTableId)}};
  os << "# " << meta.dump() << '\n';
}

int cmd_points(const Flags& f) {
  if (f.log2n < 0 || f.log2n > 20) throw UsageError("--log2n must lie in [0, 20]");
  if (f.dims < 1 || f.dims > kMaxSobolDims) throw UsageError("--dims must lie in [1, 128]");
  RngStream rng(f.seed);
  std::optional<PointSet> points;
  if (f.kind == "mc") {
    points = mc_uniform(std::size_t{1} << f.log2n, f.dims, rng);
  } else if (f.kind == "raw") {
    if (f.log2n < 1) throw UsageError("raw nets need --log2n >= 1");
    points = generate_net(sobol_matrices(f.dims, f.log2n));
  } else if (f.kind == "rqmc" || f.kind == "lms-shift" || f.kind == "owen") {
    auto rand = parse_randomization(f.kind == "rqmc" ? f.randomization : f.kind);
    if (!rand) throw UsageError("unknown --randomization '" + f.randomization + "'");
    points = randomized_sobol(f.dims, f.log2n, *rand, rng);
  } else {
    throw UsageError("unknown --kind '" + f.kind + "' (expected mc, raw, rqmc, lms-shift or owen)");
  }
  Sink sink(f.out, std::cout);
  auto& os = *sink;
  write_metadata(os, "points",
                 json{{"kind", f.kind},
                      {"point_kind", std::string(to_string(points->kind()))},
                      {"log2n", f.log2n},
                      {"dims", f.dims},
                      {"seed", f.seed},
                      {"randomization", f.randomization}});
  os << "index";
  for (int j = 0; j < points->dims(); ++j) os << ",dim" << j;
  os << '\n';
  for (std::size_t i = 0; i < points->size(); ++i) {
    os << i;
    for (int j = 0; j < points->dims(); ++j) os << ',' << num((*points)(i, j));
    os << '\n';
  }
  return 0;
}

std::string summary_path(const std::string& out) { return out.empty() ? std::string{} : out + ".summary.csv"; }

int cmd_eval(const Flags& f) {
  const ExperimentConfig cfg = to_config(f);
  const EvalResult res = run_eval(cfg);
  const std::string env(to_string(cfg.env));
  {
    Sink sink(f.out, std::cout);
    auto& os = *sink;
    write_metadata(os, "eval", config_json(cfg));
    os << "env,sampler,n,seed,estimate,sq_error\n";
    for (const auto& r : res.rows) {
      os << env << ',' << to_string(r.sampler) << ',' << r.n << ',' << r.seed << ',' << num(r.estimate) << ','
         << num(r.sq_error) << '\n';
    }
  }
  Sink sink(summary_path(f.out), std::cerr);
  auto& os = *sink;
  write_metadata(os, "eval-summary", config_json(cfg));
  os << "env,sampler,n,mse,ci95_halfwidth,truth\n";
  for (const auto& r : res.summary) {
    os << env << ',' << to_string(r.sampler) << ',' << r.n << ',' << num(r.mse) << ',' << num(r.ci_halfwidth) << ','
       << num(res.truth) << '\n';
  }
  for (const auto& [s, slope] : res.slopes) {
    os << env << ',' << to_string(s) << ",slope," << num(slope) << ",,\n";
  }
  return 0;
}

int cmd_gradcheck(const Flags& f) {
  const ExperimentConfig cfg = to_config(f);
  if (cfg.env != EnvKind::lqr) throw UsageError("gradcheck supports --env lqr only");
  const GradResult res = run_gradcheck(cfg);
  {
    Sink sink(f.out, std::cout);
    auto& os = *sink;
    write_metadata(os, "gradcheck", config_json(cfg));
    os << "env,sampler,n,seed,sq_error,one_minus_cos\n";
    for (const auto& r : res.rows) {
      os << "lqr," << to_string(r.sampler) << ',' << r.n << ',' << r.seed << ',' << num(r.sq_error) << ','
         << num(r.misalignment) << '\n';
    }
  }
  Sink sink(summary_path(f.out), std::cerr);
  auto& os = *sink;
  write_metadata(os, "gradcheck-summary", config_json(cfg));
  os << "env,sampler,n,variance,variance_ci95,one_minus_cos,one_minus_cos_ci95\n";
  for (const auto& r : res.summary) {
    os << "lqr," << to_string(r.sampler) << ',' << r.n << ',' << num(r.variance) << ',' << num(r.variance_ci) << ','
       << num(r.misalignment) << ',' << num(r.misalignment_ci) << '\n';
  }
  return 0;
}

int cmd_learn(const Flags& f) {
  const ExperimentConfig cfg = to_config(f);
  if (cfg.env != EnvKind::lqr) throw UsageError("learn supports --env lqr only");
  const auto runs = run_learn(cfg);
  Sink sink(f.out, std::cout);
  auto& os = *sink;
  write_metadata(os, "learn", config_json(cfg));
  os << "iter,interactions,cost,sampler,seed\n";
  for (const auto& run : runs) {
    for (const auto& r : run.records) {
      if (r.iteration % cfg.record_every != 0 && r.iteration != cfg.iterations) continue;
      os << r.iteration << ',' << r.interactions << ',' << num(r.cost()) << ',' << run.label << ',' << r.seed << '\n';
    }
  }
  return 0;
}

/// Expands `--config FILE` into `--key value` arguments placed before the
/// explicit flags, so that explicit flags win.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  std::vector<std::string> from_file;
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string path;
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      continue;
    }
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path);
    for (std::string line; std::getline(in, line);) {
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) throw UsageError("malformed config line: " + line);
        continue;
      }
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        const auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
      };
      from_file.push_back("--" + trim(line.substr(0, eq)));
      from_file.push_back(trim(line.substr(eq + 1)));
    }
  }
  if (args.empty()) return args;
  out.push_back(args.front());  // subcommand
  out.insert(out.end(), from_file.begin(), from_file.end());
  out.insert(out.end(), args.begin() + 1, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized quasi-Monte Carlo for policy evaluation and policy gradients"};
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  Flags f;

  auto* points = app.add_subcommand("points", "dump a point set as CSV");
  points->add_option("--kind", f.kind, "mc | raw | rqmc | lms-shift | owen");
  points->add_option("--log2n", f.log2n, "log2 of the point count")->required();
  points->add_option("--dims", f.dims, "dimension");
  points->add_option("--seed", f.seed, "randomization seed");
  points->add_option("--randomization", f.randomization, "randomization used by --kind rqmc");
  points->add_option("--out", f.out, "output CSV path (default stdout)");
  points->add_option("--config", f.config, "key=value file; command-line flags take precedence");

  auto* eval = app.add_subcommand("eval", "policy evaluation error versus sample size");
  add_common(eval, f);

  auto* grad = app.add_subcommand("gradcheck", "gradient variance and alignment versus sample size");
  add_common(grad, f);
  grad->add_option("--truth-budget", f.truth_budget, "MC trajectories for the ground-truth gradient");
  grad->add_option("--truth-seed", f.truth_seed, "seed of the ground-truth gradient stream");

  auto* learn = app.add_subcommand("learn", "vanilla policy gradient learning curves");
  add_common(learn, f);
  learn->add_option("--optimizer", f.optimizer, "comma-separated: sgd, asgd");
  learn->add_option("--cv", f.cv, "GAE control variate: off | on | both");
  learn->add_option("--iters", f.iters, "training iterations");
  learn->add_option("--trajs", f.trajs, "trajectories per update");
  learn->add_option("--lr", f.lr, "SGD learning rate");
  learn->add_option("--momentum", f.momentum, "SGD momentum");
  learn->add_option("--asgd-lr", f.asgd_lr, "ASGD short step");
  learn->add_option("--kappa", f.kappa, "ASGD long-to-short step ratio");
  learn->add_option("--xi", f.xi, "ASGD statistical advantage");
  learn->add_option("--gamma", f.gamma, "GAE discount");
  learn->add_option("--lambda", f.lambda, "GAE interpolation");
  learn->add_option("--init-scale", f.init_scale, "stddev of the initial gain entries");
  learn->add_option("--record-every", f.record_every, "emit every k-th iteration");

  try {
    std::vector<std::string> args(argv + 1, argv + argc);
    args = expand_config(args);
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*points) return cmd_points(f);
    if (*eval) return cmd_eval(f);
    if (*grad) return cmd_gradcheck(f);
    if (*learn) return cmd_learn(f);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

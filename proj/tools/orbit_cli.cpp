// Copyright 2026 The orbit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// orbit: command-line front end for the samplers, densities, kernels,
// counters and the verification suites.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <json.hpp>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "orbit/combinat.hpp"
#include "orbit/detproc.hpp"
#include "orbit/ensembles.hpp"
#include "orbit/error.hpp"
#include "orbit/gtpolytope.hpp"
#include "orbit/parallel.hpp"
#include "orbit/perturbation.hpp"
#include "orbit/verify.hpp"
#include "orbit/weyl.hpp"

using json = nlohmann::json;
using namespace orbit;

namespace {

constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Config {
  std::string field = "C";
  int n = 2;
  int k = 1;
  int m = 1;
  std::vector<double> lambda;
  double theta = 1.0;
  std::vector<double> alpha;
  std::uint64_t seed = 1;
  int replicas = 1;
  int threads = default_threads();
  std::string format = "json";
  std::string output;

  FieldContext ctx() const { return FieldContext::make(parse_field(field), n); }
};

void add_common(CLI::App* app, Config& c) {
  app->add_option("--field", c.field, "R, C or H")->capture_default_str();
  app->add_option("--n", c.n, "size over F")->capture_default_str();
  app->add_option("--k", c.k, "number of columns / chain steps")->capture_default_str();
  app->add_option("--m", c.m, "tensor power or kernel levels")->capture_default_str();
  app->add_option("--lambda", c.lambda, "comma-separated weight")->delimiter(',');
  app->add_option("--theta", c.theta, "rank-one size")->capture_default_str();
  app->add_option("--alpha", c.alpha, "comma-separated Wishart parameters")->delimiter(',');
  app->add_option("--seed", c.seed, "random seed")->capture_default_str();
  app->add_option("--replicas", c.replicas, "number of samples")->capture_default_str();
  app->add_option("--threads", c.threads, "worker threads")->capture_default_str();
  app->add_option("--format", c.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app->add_option("--output", c.output, "output file (default stdout)");
}

// stdout or the --output file
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw UsageError("cannot open output file '" + path + "'");
    }
    out().precision(17);
  }
  std::ostream& out() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

void csv_row(std::ostream& o, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) o << (i ? "," : "") << csv_field(cells[i]);
  o << "\n";
}

std::string num(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

RadialPoint require_lambda(const Config& c) {
  if (c.lambda.empty()) throw UsageError("--lambda is required");
  return RadialPoint(c.ctx(), c.lambda);
}

IntWeight integral_lambda(const Config& c) {
  IntWeight w;
  for (double v : c.lambda) {
    if (v != std::floor(v)) throw UsageError("--lambda must be integral here");
    w.push_back(static_cast<long long>(v));
  }
  return w;
}

json matrix_json(const Eigen::MatrixXcd& m) {
  json re = json::array(), im = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array(), s = json::array();
    for (int j = 0; j < m.cols(); ++j) {
      r.push_back(m(i, j).real());
      s.push_back(m(i, j).imag());
    }
    re.push_back(r);
    im.push_back(s);
  }
  return {{"re", re}, {"im", im}};
}

// ---- sample ----

int cmd_sample(const Config& c, const std::string& target) {
  const FieldContext ctx = c.ctx();
  if (c.replicas < 1) throw UsageError("--replicas must be >= 1");
  Rng root(c.seed);
  auto records = parallel_map(c.replicas, c.threads, [&](std::size_t i) {
    Rng rng = root.split(i);
    json r = {{"replica", i}, {"target", target}, {"field", c.field}, {"n", c.n}};
    if (target == "gue") {
      r["matrix"] = matrix_json(sample_gaussian_hermitian(ctx, rng).data);
    } else if (target == "lue") {
      r["k"] = c.k;
      r["radial"] = lue_sample(ctx, c.k, rng).coords;
    } else if (target == "gt_uniform") {
      r["levels"] = sample_uniform_spectral(require_lambda(c), rng).levels;
    } else if (target == "perturb") {
      r["theta"] = c.theta;
      r["radial"] = perturb_spectral_sample(require_lambda(c), c.theta, rng).coords;
    } else {
      const int len = ctx.field == Field::R ? ctx.n_tilde : ctx.n;
      std::vector<double> start = c.lambda.empty() ? std::vector<double>(len, 0.0) : c.lambda;
      json steps = json::array();
      for (const auto& p : lue_chain(ctx, c.k, rng, RadialPoint(ctx, start))) steps.push_back(p.coords);
      r["chain"] = steps;
    }
    return r;
  });
  Sink sink(c.output);
  std::ostream& o = sink.out();
  if (c.format == "json") {
    for (const auto& r : records) o << r.dump() << "\n";
    return 0;
  }
  // long CSV layouts
  if (target == "gue") {
    csv_row(o, {"replica", "row", "col", "re", "im"});
    for (const auto& r : records) {
      const auto& re = r["matrix"]["re"];
      const auto& im = r["matrix"]["im"];
      for (std::size_t i = 0; i < re.size(); ++i)
        for (std::size_t j = 0; j < re[i].size(); ++j)
          csv_row(o, {std::to_string(r["replica"].get<int>()), std::to_string(i), std::to_string(j),
                      num(re[i][j]), num(im[i][j])});
    }
  } else if (target == "gt_uniform") {
    csv_row(o, {"replica", "level", "index", "value"});
    for (const auto& r : records)
      for (std::size_t l = 0; l < r["levels"].size(); ++l)
        for (std::size_t j = 0; j < r["levels"][l].size(); ++j)
          csv_row(o, {std::to_string(r["replica"].get<int>()), std::to_string(l), std::to_string(j),
                      num(r["levels"][l][j])});
  } else if (target == "chain") {
    csv_row(o, {"replica", "step", "index", "value"});
    for (const auto& r : records)
      for (std::size_t s = 0; s < r["chain"].size(); ++s)
        for (std::size_t j = 0; j < r["chain"][s].size(); ++j)
          csv_row(o, {std::to_string(r["replica"].get<int>()), std::to_string(s + 1),
                      std::to_string(j), num(r["chain"][s][j])});
  } else {
    csv_row(o, {"replica", "index", "value"});
    for (const auto& r : records)
      for (std::size_t j = 0; j < r["radial"].size(); ++j)
        csv_row(o, {std::to_string(r["replica"].get<int>()), std::to_string(j), num(r["radial"][j])});
  }
  return 0;
}

// ---- density ----

int cmd_density(const Config& c, const std::string& name, const std::vector<double>& grid) {
  if (grid.size() != 3 || grid[2] < 2 || grid[1] <= grid[0])
    throw UsageError("--grid must be lo,hi,points with hi > lo and points >= 2");
  const FieldContext ctx = c.ctx();
  const int pts = static_cast<int>(grid[2]);
  int dim = 0;
  std::function<double(const std::vector<double>&)> f;
  std::unique_ptr<CorrelationKernel> kernel;
  const int lam_rank = ctx.field == Field::R ? ctx.n_tilde : ctx.n;

  if (name == "mu_lambda") {
    const RadialPoint lam = require_lambda(c);
    const FieldContext sub = sub_context(ctx);
    dim = sub.field == Field::R ? sub.n_tilde : sub.n;
    f = [lam](const std::vector<double>& b) { return mu_lambda_density(lam, b); };
  } else if (name == "nu_lambda_theta") {
    const RadialPoint lam = require_lambda(c);
    dim = ctx.field == Field::C ? ctx.n - 1 : ctx.n_tilde;
    const double theta = c.theta;
    f = [lam, theta](const std::vector<double>& b) { return nu_lambda_theta_density(lam, theta, b); };
  } else if (name == "nu_lambda") {
    const RadialPoint lam = require_lambda(c);
    dim = nu_lambda_support_dim(lam);
    f = [lam, lam_rank](std::vector<double> b) {
      b.resize(lam_rank, 0.0);
      return nu_lambda_density(lam, b);
    };
  } else if (name == "lue" || name == "wishart") {
    dim = lue_rank(ctx, c.k);
    const int k = c.k;
    const std::vector<double> alpha = c.alpha;
    if (name == "wishart" && alpha.empty()) throw UsageError("--alpha is required for wishart");
    f = [ctx, k, alpha, name](const std::vector<double>& x) {
      for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] <= 0 || (i > 0 && !(x[i] < x[i - 1]))) return 0.0;
      return name == "lue" ? lue_density(ctx, k, x) : wishart_general_density(ctx, k, alpha, x);
    };
  } else if (name == "gue") {
    kernel = std::make_unique<CorrelationKernel>(gue_minor_kernel(ctx));
    dim = kernel->expected_count(ctx.n);
    const CorrelationKernel* kp = kernel.get();
    f = [kp](const std::vector<double>& x) { return top_level_density(*kp, x); };
  } else {
    throw UsageError("unknown density '" + name + "'");
  }
  if (dim < 1) throw UsageError("density '" + name + "' has no free coordinates here");
  if (std::pow(static_cast<double>(pts), dim) > 1e7) throw UsageError("grid too large");

  Sink sink(c.output);
  std::ostream& o = sink.out();
  std::vector<std::string> head;
  for (int i = 1; i <= dim; ++i) head.push_back("x" + std::to_string(i));
  head.push_back("value");
  csv_row(o, head);
  std::vector<int> idx(dim, 0);
  const double h = (grid[1] - grid[0]) / (pts - 1);
  for (;;) {
    std::vector<double> x(dim);
    for (int i = 0; i < dim; ++i) x[i] = grid[0] + idx[i] * h;
    std::vector<std::string> row;
    for (double v : x) row.push_back(num(v));
    row.push_back(num(f(x)));
    csv_row(o, row);
    int i = dim - 1;
    while (i >= 0 && ++idx[i] == pts) idx[i--] = 0;
    if (i < 0) break;
  }
  return 0;
}

// ---- kernel ----

int cmd_kernel(const Config& c, const std::string& which, const std::vector<double>& grid) {
  const FieldContext ctx = c.ctx();
  std::unique_ptr<CorrelationKernel> k;
  if (which == "gue")
    k = std::make_unique<CorrelationKernel>(gue_minor_kernel(ctx));
  else if (which == "guer")
    k = std::make_unique<CorrelationKernel>(guer_kernel(c.n));
  else if (which == "rectangular")
    k = std::make_unique<CorrelationKernel>(rectangular_kernel(require_lambda(c), c.m));
  else
    throw UsageError("unknown kernel '" + which + "'");

  Sink sink(c.output);
  std::ostream& o = sink.out();
  if (c.format == "json") {
    json counts = json::array();
    for (int r : k->levels())
      counts.push_back({{"level", r}, {"integral", level_count(*k, r)}, {"points", k->expected_count(r)}});
    o << json{{"kernel", k->name()}, {"reference_measure", k->reference_measure()},
              {"level_counts", counts}}
             .dump()
      << "\n";
    return 0;
  }
  if (grid.size() != 3 || grid[2] < 2 || grid[1] <= grid[0])
    throw UsageError("--grid must be lo,hi,points with hi > lo and points >= 2");
  const int pts = static_cast<int>(grid[2]);
  const double h = (grid[1] - grid[0]) / (pts - 1);
  csv_row(o, {"r", "x", "s", "y", "K"});
  for (int r : k->levels())
    for (int s : k->levels())
      for (int i = 0; i < pts; ++i)
        for (int j = 0; j < pts; ++j) {
          const double x = grid[0] + i * h, y = grid[0] + j * h;
          csv_row(o, {std::to_string(r), num(x), std::to_string(s), num(y), num((*k)(r, x, s, y))});
        }
  return 0;
}

// ---- count / dim ----

int cmd_count(const Config& c, const std::string& what) {
  const FieldContext ctx = c.ctx();
  const IntWeight lam = integral_lambda(c);
  Sink sink(c.output);
  std::ostream& o = sink.out();
  if (what == "gt") {
    o << json{{"gt_count", gt_count(ctx, lam).str()},
              {"enumerated", std::to_string(gt_enumerate_visit(ctx, lam))}}
             .dump()
      << "\n";
    return 0;
  }
  DecompositionTable t;
  if (what == "tensor")
    t = tensor_rank_one(ctx, lam, c.m);
  else if (what == "branch")
    t = branch(ctx, lam);
  else
    throw UsageError("unknown count '" + what + "'");
  if (c.format == "csv") {
    csv_row(o, {"beta", "mult"});
    for (const auto& [beta, mult] : t) {
      std::string b;
      for (std::size_t i = 0; i < beta.size(); ++i) b += (i ? "," : "") + std::to_string(beta[i]);
      csv_row(o, {b, mult.str()});
    }
  } else {
    for (const auto& [beta, mult] : t) o << json{{"beta", beta}, {"mult", mult.str()}}.dump() << "\n";
  }
  return 0;
}

int cmd_dim(const Config& c) {
  const FieldContext ctx = c.ctx();
  const RadialPoint lam = require_lambda(c);
  json r = {{"field", c.field}, {"n", c.n}, {"lambda", c.lambda}, {"asym_dim", asym_dim(lam)}};
  bool integral = true;
  for (double v : c.lambda) integral = integral && v == std::floor(v);
  if (integral) r["weyl_dim"] = weyl_dim(ctx, integral_lambda(c)).str();
  Sink sink(c.output);
  sink.out() << r.dump() << "\n";
  return 0;
}

// ---- verify ----

int cmd_verify(const Config& c, const std::string& suite, const std::string& budget) {
  VerifyOptions opt;
  opt.seed = c.seed;
  opt.threads = c.threads;
  opt.budget = parse_budget(budget);
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suites();
  } else {
    const auto& all = verify_suites();
    if (std::find(all.begin(), all.end(), suite) == all.end())
      throw UsageError("unknown suite '" + suite + "'");
    names = {suite};
  }
  bool ok = true;
  json suites = json::array();
  for (const auto& name : names) {
    const SuiteReport rep = run_suite(name, opt);
    ok = ok && rep.pass();
    json checks = json::array();
    for (const auto& ch : rep.checks)
      checks.push_back({{"name", ch.name}, {"pass", ch.pass}, {"detail", ch.detail}, {"stats", ch.stats}});
    suites.push_back({{"suite", rep.suite}, {"pass", rep.pass()}, {"seconds", rep.seconds},
                      {"checks", checks}});
  }
  Sink sink(c.output);
  sink.out() << json{{"seed", c.seed}, {"budget", budget}, {"pass", ok}, {"suites", suites}}.dump(2)
             << "\n";
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orbit: invariant ensembles over R, C and H"};
  app.set_config("--config", "", "TOML/INI file; subcommand options go in [sample], [density], ... sections");
  app.require_subcommand(1);
  Config cfg;
  std::string target = "gue", density = "mu_lambda", kernel = "gue", what = "gt";
  std::string suite = "all", budget = "full";
  std::vector<double> grid = {0.0, 1.0, 101};
  std::vector<double> kgrid = {0.0, 3.0, 7};

  auto* sample = app.add_subcommand("sample", "draw samples");
  add_common(sample, cfg);
  sample->add_option("--target", target, "gue, lue, gt_uniform, perturb or chain")
      ->check(CLI::IsMember({"gue", "lue", "gt_uniform", "perturb", "chain"}))
      ->capture_default_str();

  auto* dens = app.add_subcommand("density", "evaluate a density on a grid (CSV)");
  add_common(dens, cfg);
  dens->add_option("--name", density, "mu_lambda, nu_lambda_theta, nu_lambda, lue, wishart, gue")
      ->capture_default_str();
  dens->add_option("--grid", grid, "lo,hi,points per coordinate")->delimiter(',');

  auto* kern = app.add_subcommand("kernel", "kernel grid (CSV) or level counts (JSON)");
  add_common(kern, cfg);
  kern->add_option("--kernel", kernel, "gue, guer or rectangular")->capture_default_str();
  kern->add_option("--grid", kgrid, "lo,hi,points")->delimiter(',');

  auto* count = app.add_subcommand("count", "exact lattice counts and multiplicity tables");
  add_common(count, cfg);
  count->add_option("--what", what, "gt, tensor or branch")->capture_default_str();

  auto* dim = app.add_subcommand("dim", "Weyl and asymptotic dimensions");
  add_common(dim, cfg);

  auto* verify = app.add_subcommand("verify", "run verification suites (JSON report)");
  add_common(verify, cfg);
  verify->add_option("--suite", suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--budget", budget, "small or full")
      ->check(CLI::IsMember({"small", "full"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*sample) return cmd_sample(cfg, target);
    if (*dens) return cmd_density(cfg, density, grid);
    if (*kern) return cmd_kernel(cfg, kernel, kgrid);
    if (*count) return cmd_count(cfg, what);
    if (*dim) return cmd_dim(cfg);
    if (*verify) return cmd_verify(cfg, suite, budget);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const orbit::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

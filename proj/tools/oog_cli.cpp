// Command-line front end. Links only the C API of liboog.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "bench.hpp"
#include "oog/oog.h"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

enum Exit { kOk = 0, kInput = 2, kPrecondition = 3, kNumerical = 4 };

int exit_code(oog_status status) {
  switch (status) {
    case OOG_OK: return kOk;
    case OOG_ERR_INVALID_ARGUMENT:
    case OOG_ERR_PARSE:
    case OOG_ERR_IO:
    case OOG_ERR_BUFFER_TOO_SMALL: return kInput;
    case OOG_ERR_NOT_STABLE: return kPrecondition;
    default: return kNumerical;
  }
}

// Thrown to unwind to main with an exit status.
struct Failure {
  int code;
};

[[noreturn]] void fail_input(const std::string& message) {
  std::cerr << "error: InvalidArgument: " << message << '\n';
  throw Failure{kInput};
}

void check(oog_status status) {
  if (status == OOG_OK) return;
  std::cerr << "error: " << oog_status_name(status) << ": " << oog_last_error() << '\n';
  throw Failure{exit_code(status)};
}

struct PlantDeleter {
  void operator()(oog_plant* p) const { oog_plant_free(p); }
};
using PlantPtr = std::unique_ptr<oog_plant, PlantDeleter>;

PlantPtr load(const std::string& path) {
  oog_plant* raw = nullptr;
  check(oog_plant_load(path.c_str(), &raw));
  return PlantPtr(raw);
}

struct Globals {
  std::vector<double> epsilons;
  double tol_gamma = 1e-4;
  std::uint64_t seed = 0;
  bool json = false;
  std::string out;

  double epsilon() const {
    if (epsilons.size() > 1) fail_input("this command takes a single --epsilon");
    const double eps = epsilons.empty() ? 1e-8 : epsilons.front();
    if (!(eps > 0.0)) fail_input("--epsilon must be > 0 (only the regularized gain is supported)");
    return eps;
  }

  oog_config config() const {
    oog_config cfg = oog_config_default();
    cfg.epsilon = epsilon();
    cfg.tol_gamma = tol_gamma;
    return cfg;
  }
};

struct GridFlags {
  double omega_min = 1e-4;
  double omega_max = 1e4;
  int points = 10000;
  bool no_zero = false;
  bool refine = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--omega-min", omega_min, "Lowest grid frequency [rad/s]")->capture_default_str();
    cmd->add_option("--omega-max", omega_max, "Highest grid frequency [rad/s]")->capture_default_str();
    cmd->add_option("--points", points, "Number of log-spaced frequencies")->capture_default_str();
    cmd->add_flag("--no-zero", no_zero, "Do not evaluate w = 0");
  }

  oog_grid grid() const { return {omega_min, omega_max, points, no_zero ? 0 : 1, refine ? 1 : 0}; }
};

// Output stream for --out (or stdout).
class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) {
        std::cerr << "error: IoError: cannot write '" << path << "'\n";
        throw Failure{kInput};
      }
    }
  }
  std::ostream& stream() { return file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout; }

 private:
  std::ofstream file_;
};

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void print_result(const oog_result& r, const Globals& g, const oog_config& cfg) {
  if (g.json) {
    json doc = {{"value", r.value},
                {"lower", r.lower},
                {"upper", r.upper},
                {"peak_frequency", number_or_null(r.peak_frequency)},
                {"iterations", r.iterations},
                {"epsilon", cfg.epsilon},
                {"tol_gamma", cfg.tol_gamma}};
    Output out(g.out);
    out.stream() << doc.dump(2) << '\n';
    return;
  }
  Output out(g.out);
  auto& os = out.stream();
  os.precision(12);
  os << "value           " << r.value << '\n'
     << "lower           " << r.lower << '\n'
     << "upper           " << r.upper << '\n'
     << "peak_frequency  " << (std::isfinite(r.peak_frequency) ? std::to_string(r.peak_frequency) : "inf") << '\n'
     << "iterations      " << r.iterations << '\n';
}

int cmd_compute(const std::string& path, const Globals& g, int max_iters) {
  const oog_config base = g.config();
  oog_config cfg = base;
  if (max_iters > 0) cfg.max_iters = max_iters;
  PlantPtr plant = load(path);
  oog_result result{};
  const oog_status status = oog_compute_rcoog(plant.get(), &cfg, &result);
  if (status == OOG_ERR_MAX_ITERATIONS || status == OOG_ERR_STAGNATION) {
    std::cerr << "warning: best uncertified interval [" << result.lower << ", " << result.upper
              << "]\n";
  }
  check(status);
  print_result(result, g, cfg);
  return kOk;
}

int cmd_sweep(const std::string& path, const Globals& g, const GridFlags& flags) {
  if (g.epsilons.empty()) fail_input("sweep needs at least one --epsilon");
  for (const double eps : g.epsilons) {
    if (!(eps > 0.0)) fail_input("--epsilon must be > 0 (only the regularized gain is supported)");
  }
  PlantPtr plant = load(path);
  const oog_grid grid = flags.grid();
  size_t count = 0;
  const oog_status probe = oog_sigma_curve(plant.get(), g.epsilons.front(), &grid, nullptr, nullptr, 0, &count);
  if (probe != OOG_ERR_BUFFER_TOO_SMALL) check(probe);

  std::vector<double> omegas(count), sigmas(count);
  Output out(g.out);
  auto& os = out.stream();
  os << "omega,sigma_bar,epsilon\n";
  for (const double eps : g.epsilons) {
    check(oog_sigma_curve(plant.get(), eps, &grid, omegas.data(), sigmas.data(), count, &count));
    for (size_t k = 0; k < count; ++k) {
      os << oogcli::format_number(omegas[k]) << ',' << oogcli::format_number(sigmas[k]) << ','
         << oogcli::format_number(eps) << '\n';
    }
  }
  return kOk;
}

unsigned worker_threads() {
  unsigned threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("OOG_NUM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) threads = std::min<unsigned>(threads, static_cast<unsigned>(cap));
  }
  return threads;
}

int cmd_bench(const Globals& g, const std::string& suite, std::vector<int> sizes, int instances,
              int grid_points) {
  oogcli::BenchOptions opt;
  opt.suite = suite;
  if (suite != "random" && suite != "network") fail_input("--suite must be random or network");
  if (sizes.empty()) sizes = suite == "random" ? std::vector<int>{5, 10, 25, 50} : std::vector<int>{50, 100, 200};
  if (instances < 1) fail_input("--instances must be >= 1");
  opt.sizes = sizes;
  opt.instances = instances;
  opt.seed = g.seed;
  opt.config = g.config();
  opt.grid = oog_grid_default();
  opt.grid.n_points = grid_points;
  opt.threads = worker_threads();

  const auto records = oogcli::run_bench(opt);
  const auto summary = oogcli::summarize(records);
  if (g.out.empty()) {
    oogcli::write_records_csv(std::cout, records);
    oogcli::write_summary_csv(std::cerr, summary);
    return kOk;
  }
  {
    Output out(g.out);
    oogcli::write_records_csv(out.stream(), records);
  }
  const fs::path p(g.out);
  const fs::path summary_path = p.parent_path() / (p.stem().string() + "_summary.csv");
  Output out(summary_path.string());
  oogcli::write_summary_csv(out.stream(), summary);
  return kOk;
}

int cmd_gen(const Globals& g, const std::string& kind, int size, int edges, int count,
            double pole_min, double pole_max) {
  if (kind != "random" && kind != "network") fail_input("gen kind must be random or network");
  if (g.out.empty()) fail_input("gen needs --out (a file, or a directory with --count)");
  if (count < 1) fail_input("--count must be >= 1");
  if (size <= 0) size = kind == "random" ? 5 : 50;
  if (edges <= 0) edges = size;

  auto generate = [&](std::uint64_t seed) {
    oog_plant* raw = nullptr;
    check(kind == "random" ? oog_generate_random(size, seed, pole_min, pole_max, &raw)
                           : oog_generate_network(size, edges, seed, 0.8, 1.2, 0.02, &raw));
    return PlantPtr(raw);
  };

  if (count == 1 && !fs::is_directory(g.out)) {
    check(oog_plant_save(generate(g.seed).get(), g.out.c_str()));
    return kOk;
  }
  const fs::path dir(g.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  Output manifest((dir / "manifest.csv").string());
  manifest.stream() << "file,kind,seed,size,edges\n";
  for (int i = 0; i < count; ++i) {
    const std::uint64_t seed = g.seed + static_cast<std::uint64_t>(i);
    const std::string file = "instance_" + std::to_string(seed) + ".plant";
    check(oog_plant_save(generate(seed).get(), (dir / file).string().c_str()));
    manifest.stream() << file << ',' << kind << ',' << seed << ',' << size << ','
                      << (kind == "network" ? edges : 0) << '\n';
  }
  return kOk;
}

int cmd_oracle(const std::string& path, const Globals& g, const GridFlags& flags, bool hinf,
               const std::string& curve) {
  const double eps = g.epsilon();
  PlantPtr plant = load(path);
  const oog_grid grid = flags.grid();
  double value = 0.0, omega = 0.0;
  if (hinf) {
    check(oog_hinf_reference(plant.get(), eps, &grid, &value));
    omega = std::nan("");
  } else {
    check(oog_grid_rcoog(plant.get(), eps, &grid, &value, &omega));
  }

  if (!curve.empty()) {
    size_t count = 0;
    const oog_status probe = oog_sigma_curve(plant.get(), eps, &grid, nullptr, nullptr, 0, &count);
    if (probe != OOG_ERR_BUFFER_TOO_SMALL) check(probe);
    std::vector<double> omegas(count), sigmas(count);
    check(oog_sigma_curve(plant.get(), eps, &grid, omegas.data(), sigmas.data(), count, &count));
    Output out(curve);
    out.stream() << "omega,sigma_bar\n";
    for (size_t k = 0; k < count; ++k) {
      out.stream() << oogcli::format_number(omegas[k]) << ',' << oogcli::format_number(sigmas[k]) << '\n';
    }
  }

  Output out(g.out);
  if (g.json) {
    json doc = {{"value", value}, {"omega", number_or_null(omega)}, {"epsilon", eps},
                {"points", grid.n_points}, {"method", hinf ? "hinf" : "grid"}};
    out.stream() << doc.dump(2) << '\n';
  } else {
    out.stream().precision(12);
    out.stream() << "value  " << value << '\n';
    if (!hinf) out.stream() << "omega  " << omega << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularized cyclic output-to-output gain of LTI systems"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--epsilon", g.epsilons, "Regularization (sweep: repeat or comma-separate)")
      ->delimiter(',');
  app.add_option("--tol-gamma", g.tol_gamma, "Relative tolerance of the computed gain")->capture_default_str();
  app.add_option("--seed", g.seed, "Base random seed")->capture_default_str();
  app.add_flag("--json", g.json, "Machine-readable output");
  app.add_option("--out", g.out, "Output file (gen --count: directory)");

  std::string plant_path;
  int max_iters = 0;
  auto* compute = app.add_subcommand("compute", "Compute the gain with the Hamiltonian iteration");
  compute->add_option("plant", plant_path, "Plant file")->required();
  compute->add_option("--max-iters", max_iters, "Iteration cap (default 100)");

  GridFlags sweep_grid;
  auto* sweep = app.add_subcommand("sweep", "Emit omega,sigma_bar,epsilon curves over a grid");
  sweep->add_option("plant", plant_path, "Plant file")->required();
  sweep_grid.attach(sweep);

  std::string suite = "random";
  std::vector<int> sizes;
  int instances = 10;
  int grid_points = 10000;
  auto* bench = app.add_subcommand("bench", "Time the Hamiltonian iteration against the grid oracle");
  bench->add_option("--suite", suite, "random or network")->capture_default_str();
  bench->add_option("--sizes", sizes, "State dimensions (random) or node counts (network)")->delimiter(',');
  bench->add_option("--instances", instances, "Instances per size")->capture_default_str();
  bench->add_option("--grid-points", grid_points, "Oracle grid size")->capture_default_str();

  std::string kind;
  int size = 0, edges = 0, count = 1;
  double pole_min = -1.5, pole_max = -0.5;
  auto* gen = app.add_subcommand("gen", "Generate random or networked plants");
  gen->add_option("kind", kind, "random or network")->required();
  gen->add_option("--size", size, "n_x (random, multiple of 5) or node count (network)");
  gen->add_option("--edges", edges, "Edge count (network, default = nodes)");
  gen->add_option("--count", count, "Number of instances; > 1 writes a directory")->capture_default_str();
  gen->add_option("--pole-min", pole_min)->capture_default_str();
  gen->add_option("--pole-max", pole_max)->capture_default_str();

  GridFlags oracle_grid;
  bool hinf = false;
  std::string curve;
  auto* oracle = app.add_subcommand("oracle", "Frequency-grid reference value");
  oracle->add_option("plant", plant_path, "Plant file")->required();
  oracle_grid.attach(oracle);
  oracle->add_flag("--refine", oracle_grid.refine, "Refine around the grid argmax");
  oracle->add_flag("--hinf", hinf, "H-infinity norm of the performance channel (y_r = u)");
  oracle->add_option("--curve", curve, "Also write omega,sigma_bar CSV here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInput;
  }

  try {
    if (*compute) return cmd_compute(plant_path, g, max_iters);
    if (*sweep) return cmd_sweep(plant_path, g, sweep_grid);
    if (*bench) return cmd_bench(g, suite, sizes, instances, grid_points);
    if (*gen) return cmd_gen(g, kind, size, edges, count, pole_min, pole_max);
    if (*oracle) return cmd_oracle(plant_path, g, oracle_grid, hinf, curve);
  } catch (const Failure& f) {
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "oog/oog.h"

namespace oogcli {

enum class Method { Hamiltonian, Grid };

const char* to_string(Method method);

struct BenchRecord {
  std::string instance_id;
  int n_x = 0;
  std::uint64_t seed = 0;
  Method method = Method::Hamiltonian;
  double value = 0.0;      // NaN when the computation failed
  double wall_time = 0.0;  // seconds, gain computation only
  int iterations = 0;
  bool correct = false;    // value >= 0.95 * grid value
  std::string error;       // status name, empty on success

  bool operator==(const BenchRecord&) const = default;
};

struct BenchSummary {
  int n_x = 0;
  Method method = Method::Hamiltonian;
  int instances = 0;
  double tavg = 0.0;
  double tmin = 0.0;
  double tmax = 0.0;
  double accuracy = 0.0;
};

struct BenchOptions {
  std::string suite = "random";  // "random" or "network"
  std::vector<int> sizes;        // n_x for random, node count for network
  int instances = 10;
  std::uint64_t seed = 0;
  oog_config config = oog_config_default();
  oog_grid grid = oog_grid_default();
  unsigned threads = 1;
};

/// Relative slack of the accuracy rule: correct iff value >= (1 - 0.05) * grid.
inline constexpr double kAccuracySlack = 0.05;

/// Seed of instance `index` at size `size`: splitmix64 over the three inputs.
std::uint64_t instance_seed(std::uint64_t base, int size, int index);

/// Generates every instance, times compute_rcoog and the grid oracle on it,
/// and returns records sorted by instance_id then method.
std::vector<BenchRecord> run_bench(const BenchOptions& options);

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records);

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records);
std::vector<BenchRecord> read_records_csv(std::istream& in);
void write_summary_csv(std::ostream& out, const std::vector<BenchSummary>& summary);

/// Shortest decimal representation that round-trips.
std::string format_number(double value);

}  // namespace oogcli

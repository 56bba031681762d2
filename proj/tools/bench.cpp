#include "bench.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <tuple>

namespace oogcli {
namespace {

constexpr const char* kRecordHeader =
    "instance_id,n_x,seed,method,value,wall_time,iterations,correct,error";
constexpr const char* kSummaryHeader = "n_x,method,instances,tavg,tmin,tmax,accuracy";

struct PlantDeleter {
  void operator()(oog_plant* p) const { oog_plant_free(p); }
};
using PlantPtr = std::unique_ptr<oog_plant, PlantDeleter>;

struct Job {
  int size;
  int index;
  std::uint64_t seed;
  std::string id;
};

std::string make_id(const std::string& suite, int size, int index) {
  std::array<char, 64> buf{};
  std::snprintf(buf.data(), buf.size(), "%s-%05d-%04d", suite.c_str(), size, index);
  return buf.data();
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::array<BenchRecord, 2> run_instance(const BenchOptions& opt, const Job& job) {
  BenchRecord ham{job.id, job.size, job.seed, Method::Hamiltonian, 0.0, 0.0, 0, false, {}};
  BenchRecord grid{job.id, job.size, job.seed, Method::Grid, 0.0, 0.0, 0, false, {}};
  const double nan = std::numeric_limits<double>::quiet_NaN();

  oog_plant* raw = nullptr;
  const oog_status gen =
      opt.suite == "network"
          ? oog_generate_network(job.size, job.size, job.seed, 0.8, 1.2, 0.02, &raw)
          : oog_generate_random(job.size, job.seed, -1.5, -0.5, &raw);
  PlantPtr plant(raw);
  if (gen != OOG_OK) {
    for (BenchRecord* r : {&ham, &grid}) {
      r->value = nan;
      r->error = oog_status_name(gen);
    }
    return {ham, grid};
  }

  oog_result result{};
  auto start = std::chrono::steady_clock::now();
  const oog_status hs = oog_compute_rcoog(plant.get(), &opt.config, &result);
  ham.wall_time = seconds_since(start);
  ham.value = hs == OOG_OK ? result.value : nan;
  ham.iterations = result.iterations;
  if (hs != OOG_OK) ham.error = oog_status_name(hs);

  double grid_value = nan;
  start = std::chrono::steady_clock::now();
  const oog_status gs = oog_grid_rcoog(plant.get(), opt.config.epsilon, &opt.grid, &grid_value, nullptr);
  grid.wall_time = seconds_since(start);
  grid.value = gs == OOG_OK ? grid_value : nan;
  grid.iterations = 0;
  grid.correct = gs == OOG_OK;
  if (gs != OOG_OK) grid.error = oog_status_name(gs);

  ham.correct = hs == OOG_OK && gs == OOG_OK && ham.value >= (1.0 - kAccuracySlack) * grid_value;
  return {ham, grid};
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

template <typename T>
T parse(const std::string& s) {
  T value{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw std::runtime_error("bad CSV field '" + s + "'");
  }
  return value;
}

}  // namespace

const char* to_string(Method method) {
  return method == Method::Hamiltonian ? "hamiltonian" : "grid";
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  std::array<char, 32> buf{};
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  (void)ec;
  return {buf.data(), ptr};
}

std::uint64_t instance_seed(std::uint64_t base, int size, int index) {
  auto mix = [](std::uint64_t z) {
    z += 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  };
  return mix(mix(mix(base) ^ static_cast<std::uint64_t>(size)) ^ static_cast<std::uint64_t>(index));
}

std::vector<BenchRecord> run_bench(const BenchOptions& opt) {
  if (opt.suite != "random" && opt.suite != "network") {
    throw std::invalid_argument("unknown suite '" + opt.suite + "' (random or network)");
  }
  std::vector<Job> jobs;
  for (const int size : opt.sizes) {
    for (int i = 0; i < opt.instances; ++i) {
      jobs.push_back({size, i, instance_seed(opt.seed, size, i), make_id(opt.suite, size, i)});
    }
  }

  std::vector<std::array<BenchRecord, 2>> results(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < jobs.size(); k = next++) results[k] = run_instance(opt, jobs[k]);
  };
  const unsigned threads = std::max(1U, std::min<unsigned>(opt.threads, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::vector<BenchRecord> records;
  records.reserve(2 * results.size());
  for (auto& pair : results) {
    for (auto& r : pair) records.push_back(std::move(r));
  }
  std::sort(records.begin(), records.end(), [](const BenchRecord& a, const BenchRecord& b) {
    return std::tie(a.instance_id, a.method) < std::tie(b.instance_id, b.method);
  });
  return records;
}

std::vector<BenchSummary> summarize(const std::vector<BenchRecord>& records) {
  std::map<std::pair<int, int>, BenchSummary> groups;
  std::map<std::pair<int, int>, int> correct;
  for (const auto& r : records) {
    const auto key = std::make_pair(r.n_x, static_cast<int>(r.method));
    auto [it, fresh] = groups.try_emplace(key, BenchSummary{r.n_x, r.method});
    BenchSummary& s = it->second;
    s.tmin = fresh ? r.wall_time : std::min(s.tmin, r.wall_time);
    s.tmax = fresh ? r.wall_time : std::max(s.tmax, r.wall_time);
    s.tavg += r.wall_time;
    ++s.instances;
    correct[key] += r.correct ? 1 : 0;
  }
  std::vector<BenchSummary> out;
  for (auto& [key, s] : groups) {
    s.tavg /= s.instances;
    s.accuracy = static_cast<double>(correct[key]) / s.instances;
    out.push_back(s);
  }
  return out;
}

void write_records_csv(std::ostream& out, const std::vector<BenchRecord>& records) {
  out << kRecordHeader << '\n';
  for (const auto& r : records) {
    out << r.instance_id << ',' << r.n_x << ',' << r.seed << ',' << to_string(r.method) << ','
        << format_number(r.value) << ',' << format_number(r.wall_time) << ',' << r.iterations
        << ',' << (r.correct ? 1 : 0) << ',' << r.error << '\n';
  }
}

std::vector<BenchRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kRecordHeader) {
    throw std::runtime_error("not a bench record CSV (header mismatch)");
  }
  std::vector<BenchRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != 9) throw std::runtime_error("bench CSV row has " + std::to_string(f.size()) + " fields");
    BenchRecord r;
    r.instance_id = f[0];
    r.n_x = parse<int>(f[1]);
    r.seed = parse<std::uint64_t>(f[2]);
    if (f[3] == "hamiltonian") {
      r.method = Method::Hamiltonian;
    } else if (f[3] == "grid") {
      r.method = Method::Grid;
    } else {
      throw std::runtime_error("unknown method '" + f[3] + "'");
    }
    r.value = f[4] == "nan" ? std::numeric_limits<double>::quiet_NaN() : parse<double>(f[4]);
    r.wall_time = parse<double>(f[5]);
    r.iterations = parse<int>(f[6]);
    r.correct = parse<int>(f[7]) != 0;
    r.error = f[8];
    records.push_back(std::move(r));
  }
  return records;
}

void write_summary_csv(std::ostream& out, const std::vector<BenchSummary>& summary) {
  out << kSummaryHeader << '\n';
  for (const auto& s : summary) {
    out << s.n_x << ',' << to_string(s.method) << ',' << s.instances << ','
        << format_number(s.tavg) << ',' << format_number(s.tmin) << ','
        << format_number(s.tmax) << ',' << format_number(s.accuracy) << '\n';
  }
}

}  // namespace oogcli

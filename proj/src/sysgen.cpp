#include "oog/sysgen.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <cmath>
#include <numbers>
#include <set>
#include <string>

#include "oog/error.hpp"

namespace oog {
namespace {

constexpr double kMaxConditionT = 1e6;
constexpr int kMaxRedraws = 100;

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

Matrix normal_matrix(Rng& rng, Eigen::Index rows, Eigen::Index cols) {
  Matrix M(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) M(i, j) = rng.normal();
  return M;
}

// k distinct values from [0, n), ascending (Floyd's algorithm).
std::set<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n, std::uint64_t k) {
  std::set<std::uint64_t> out;
  for (std::uint64_t j = n - k; j < n; ++j) {
    const std::uint64_t t = rng.below(j + 1);
    if (!out.insert(t).second) out.insert(j);
  }
  return out;
}

using Digraph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;

std::vector<int> components(int nodes, const std::set<std::pair<int, int>>& edges, int& count) {
  Digraph g(static_cast<std::size_t>(nodes));
  for (const auto& [u, v] : edges) boost::add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v), g);
  std::vector<int> comp(static_cast<std::size_t>(nodes));
  count = boost::strong_components(
      g, boost::make_iterator_property_map(comp.begin(), boost::get(boost::vertex_index, g)));
  return comp;
}

// The self-loop convention lives here: every node gets a unit self-loop,
// which shifts the Laplacian dynamics -L to -(L + I).
Matrix network_state_matrix(int nodes, const std::vector<std::pair<int, int>>& edges,
                            const std::vector<double>& weights) {
  Matrix A = Matrix::Zero(nodes, nodes);
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto [source, target] = edges[e];
    A(target, source) += weights[e];  // in-degree Laplacian: row = receiving node
    A(target, target) -= weights[e];
  }
  A.diagonal().array() -= 1.0;
  return A;
}

}  // namespace

double Rng::uniform01() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u lies in (0, 1], so the log is finite.
  const double radius = std::sqrt(-2.0 * std::log(1.0 - uniform01()));
  const double angle = 2.0 * std::numbers::pi * uniform01();
  spare_ = radius * std::sin(angle);
  has_spare_ = true;
  return radius * std::cos(angle);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "Rng::below(0)");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = engine_();
  } while (x >= limit);
  return x % n;
}

void RandomSystemSpec::validate() const {
  require(n_x >= 5 && n_x % 5 == 0, "n_x must be a positive multiple of 5");
  require(pole_range.first <= pole_range.second && pole_range.second < 0.0,
          "pole range must be an interval of strictly negative reals");
}

TwoOutputPlant random_stable_plant(const RandomSystemSpec& spec) {
  spec.validate();
  const int n = spec.n_x;
  const int m = n / 5;
  Rng rng(spec.seed);

  Eigen::VectorXd poles(n);
  for (int i = 0; i < n; ++i) poles[i] = rng.uniform(spec.pole_range.first, spec.pole_range.second);

  Matrix T;
  for (int attempt = 0;; ++attempt) {
    if (attempt > kMaxRedraws) {
      throw Error(ErrorCode::GenerationFailed, "no well-conditioned similarity transform drawn");
    }
    T = normal_matrix(rng, n, n);
    const Eigen::VectorXd s = Eigen::JacobiSVD<Matrix>(T).singularValues();
    if (s[n - 1] > 0.0 && s[0] / s[n - 1] <= kMaxConditionT) break;
  }
  // A = T^{-1} Lambda T
  Matrix A = T.partialPivLu().solve(poles.asDiagonal() * T);

  Matrix B = normal_matrix(rng, n, m);
  Matrix Cp = normal_matrix(rng, m, n);
  Matrix Dp = normal_matrix(rng, m, m);
  Matrix Cr = normal_matrix(rng, m, n);
  Matrix Dr = normal_matrix(rng, m, m);
  return {std::move(A), std::move(B), std::move(Cp), std::move(Dp), std::move(Cr), std::move(Dr)};
}

void NetworkSpec::validate() const {
  require(nodes >= 2, "network needs at least 2 nodes");
  const auto candidates = static_cast<std::uint64_t>(nodes) * static_cast<std::uint64_t>(nodes - 1);
  require(n_edges >= 0 && static_cast<std::uint64_t>(n_edges) <= candidates,
          "n_edges must be in [0, N(N-1)]");
  require(0.0 < weight_range.first && weight_range.first <= weight_range.second,
          "weight range must be positive");
  require(residual_fraction > 0.0 && residual_fraction <= 1.0,
          "residual fraction must be in (0, 1]");
}

std::vector<std::pair<int, int>> network_topology(const NetworkSpec& spec, Rng& rng) {
  spec.validate();
  const int N = spec.nodes;
  const auto others = static_cast<std::uint64_t>(N - 1);

  std::set<std::pair<int, int>> edges;
  for (const std::uint64_t idx :
       sample_distinct(rng, static_cast<std::uint64_t>(N) * others, static_cast<std::uint64_t>(spec.n_edges))) {
    const auto source = static_cast<int>(idx / others);
    auto target = static_cast<int>(idx % others);
    if (target >= source) ++target;
    edges.emplace(source, target);
  }

  int count = 0;
  std::vector<int> comp = components(N, edges, count);
  if (count > 1) {
    std::vector<std::vector<int>> members(static_cast<std::size_t>(count));
    for (int v = 0; v < N; ++v) members[static_cast<std::size_t>(comp[static_cast<std::size_t>(v)])].push_back(v);
    // One edge from each component to the next closes a cycle through all of them.
    for (int c = 0; c < count; ++c) {
      const auto& from = members[static_cast<std::size_t>(c)];
      const auto& to = members[static_cast<std::size_t>((c + 1) % count)];
      const int u = from[rng.below(from.size())];
      const int v = to[rng.below(to.size())];
      edges.emplace(u, v);
    }
    comp = components(N, edges, count);
    if (count != 1) {
      throw Error(ErrorCode::GenerationFailed,
                  "graph not strongly connected after stitching (" + std::to_string(count) +
                      " components)");
    }
  }
  return {edges.begin(), edges.end()};
}

TwoOutputPlant networked_plant(const NetworkSpec& spec) {
  spec.validate();
  const int N = spec.nodes;
  Rng rng(spec.seed);

  const auto edges = network_topology(spec, rng);
  std::vector<double> weights;
  weights.reserve(edges.size());
  for (std::size_t e = 0; e < edges.size(); ++e) {
    weights.push_back(rng.uniform(spec.weight_range.first, spec.weight_range.second));
  }
  Matrix A = network_state_matrix(N, edges, weights);

  const auto d = static_cast<std::uint64_t>(
      std::max(1L, std::lround(spec.residual_fraction * static_cast<double>(N))));
  Matrix Cr = Matrix::Zero(static_cast<Eigen::Index>(d), N);
  Eigen::Index row = 0;
  for (const std::uint64_t node : sample_distinct(rng, static_cast<std::uint64_t>(N), d)) {
    Cr(row++, static_cast<Eigen::Index>(node)) = 1.0;
  }

  return {std::move(A),          Matrix::Identity(N, N), Matrix::Ones(1, N),
          Matrix::Zero(1, N),    std::move(Cr),          Matrix::Zero(static_cast<Eigen::Index>(d), N)};
}

}  // namespace oog

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qaoatl/bitops.hpp"
#include "qaoatl/errors.hpp"

namespace qaoatl {

enum class ProblemKind { Tsp, Bpp, Kp, Po, Mis, Maxcut };

/// Lowercase identifier used in CLIs and file formats ("tsp", "bpp", ...).
std::string to_string(ProblemKind kind);
ProblemKind kind_from_string(const std::string& name);

/// Traveling salesperson on n_cities cities with a symmetric, positive
/// distance matrix.  Binary variable x_{i,t} ("city i visited at tour
/// position t") lives at index i * n_cities + t.
struct TspInstance {
  std::size_t n_cities = 0;
  std::vector<std::vector<double>> dist;  // n x n, symmetric, zero diagonal
};

/// Bin packing of n_items items of integer weight into n_bins bins of
/// capacity max_weight.  x_{i,j} ("item i placed in bin j") lives at index
/// i * n_bins + j; the bin-open flag y_j lives at index
/// n_items * n_bins + j.
struct BppInstance {
  std::size_t n_items = 0;
  std::vector<int> weights;
  int max_weight = 0;
  std::size_t n_bins = 0;
};

/// 0-1 knapsack: maximize total value subject to total weight <= max_weight.
struct KpInstance {
  std::size_t n_items = 0;
  std::vector<int> values;
  std::vector<int> weights;
  int max_weight = 0;
};

/// Portfolio selection: maximize expected return minus risk_factor times
/// covariance risk, subject to total cost <= budget.
struct PoInstance {
  std::size_t n_assets = 0;
  std::vector<double> returns;
  std::vector<std::vector<double>> cov;  // n x n, symmetric
  std::vector<double> costs;
  double budget = 0.0;
  double risk_factor = 1.0;
};

struct GraphEdge {
  std::uint32_t u = 0;  // u < v
  std::uint32_t v = 0;
  double weight = 1.0;
};

/// Undirected graph payload shared by maximum independent set (node_weights
/// populated, edge weights 1) and max-cut (weighted edges, node_weights
/// empty).
struct GraphInstance {
  std::size_t n_nodes = 0;
  std::vector<GraphEdge> edges;
  std::vector<double> node_weights;
};

/// Variable indices for the matrix-shaped problems.
inline std::size_t tsp_var(std::size_t n_cities, std::size_t city, std::size_t pos) {
  return city * n_cities + pos;
}
inline std::size_t bpp_item_var(std::size_t n_bins, std::size_t item, std::size_t bin) {
  return item * n_bins + bin;
}
inline std::size_t bpp_bin_var(std::size_t n_items, std::size_t n_bins, std::size_t bin) {
  return n_items * n_bins + bin;
}

/// One generated (or deserialized) problem instance.  kind/size/seed record
/// how the payload was produced and travel with it through serialization.
class ProblemInstance {
 public:
  using Payload = std::variant<TspInstance, BppInstance, KpInstance, PoInstance, GraphInstance>;

  ProblemInstance(ProblemKind kind, std::size_t size, std::uint64_t seed, Payload data);

  ProblemKind kind() const { return kind_; }
  std::size_t size() const { return size_; }
  std::uint64_t seed() const { return seed_; }

  /// Number of binary variables in the QUBO encoding of this instance.
  std::size_t n_vars() const;

  const TspInstance& tsp() const;
  const BppInstance& bpp() const;
  const KpInstance& kp() const;
  const PoInstance& po() const;
  const GraphInstance& graph() const;

 private:
  ProblemKind kind_;
  std::size_t size_;
  std::uint64_t seed_;
  Payload data_;
};

struct GenOptions {
  double po_risk_factor = 1.0;
};

/// Draws an instance of the given kind and size from the library's fixed
/// distributions, reproducibly from the seed (see Rng for portability):
///  - tsp (3 <= size <= 8 cities): distances Normal(mean 10, sd 0.1),
///    drawn once per unordered pair in row-major upper-triangle order,
///    mirrored, floored at a tiny positive value;
///  - bpp (2 <= size <= 8 items): weights uniform on {1..10} in item
///    order, capacity 20, one candidate bin per item;
///  - kp (2 <= size <= 40 items): values uniform on {5..63} in item order,
///    then weights uniform on {1..20} in item order, capacity
///    floor(total weight / 2);
///  - po (2 <= size <= 40 assets): returns uniform on [0,1) in asset
///    order, then covariance entries drawn per upper-triangle pair
///    (diagonal included) uniformly from {-0.1, 0, 0.1, 0.2} and mirrored,
///    then costs uniform on [0.5, 1.5), budget = half the total cost;
///  - mis (2 <= size <= 40 nodes): each pair (upper-triangle order) is an
///    edge with probability 1/2, node weights all 1;
///  - maxcut (2 <= size <= 40 nodes): each pair is an edge with
///    probability 0.7, and present edges draw a weight in (0, 1].
ProblemInstance generate(ProblemKind kind, std::size_t size, std::uint64_t seed);
ProblemInstance generate(ProblemKind kind, std::size_t size, std::uint64_t seed, const GenOptions& opts);

struct EvalResult {
  double objective = 0.0;
  bool feasible = false;
};

/// Raw (unpenalized) objective and feasibility of an assignment.  The
/// objective keeps each problem's native orientation: route length for tsp
/// and bins used for bpp (minimize); total value for kp, return minus
/// weighted risk for po, selected weight for mis, and cut weight for
/// maxcut (maximize).  The assignment length must equal n_vars().
EvalResult evaluate(const ProblemInstance& instance, const Assignment& assignment);

/// Lossless JSON round-trip (every double is preserved bit-exactly).
std::string to_json_string(const ProblemInstance& instance, int indent = 2);
ProblemInstance problem_from_json_string(const std::string& text);

}  // namespace qaoatl

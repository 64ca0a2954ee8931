#pragma once

#include <cstddef>
#include <vector>

namespace carasolve {

/// Strictly ascending nodes x0 < x1 < ... < xm spanning the working interval.
class Partition {
 public:
  static Partition uniform(double a, double b, std::size_t cells);
  static Partition from_nodes(std::vector<double> nodes);

  const std::vector<double>& nodes() const { return nodes_; }
  double a() const { return nodes_.front(); }
  double b() const { return nodes_.back(); }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t cell_count() const { return nodes_.size() - 1; }

  /// Index j of the cell [x_j, x_{j+1}] containing x (the last cell owns b).
  /// Throws DomainError for x outside [a, b].
  std::size_t cell_of(double x) const;

  bool operator==(const Partition& other) const = default;

 private:
  explicit Partition(std::vector<double> nodes) : nodes_(std::move(nodes)) {}
  std::vector<double> nodes_;
};

/// Piecewise-linear function on a partition: the computational stand-in for
/// the absolutely continuous candidates z, w, w0, v0, z0.
class GridFunction {
 public:
  GridFunction(Partition partition, std::vector<double> values);

  static GridFunction constant(const Partition& partition, double c);

  /// Linear interpolation; bit-exact at nodes.
  double eval(double x) const;
  double operator()(double x) const { return eval(x); }

  const Partition& partition() const { return partition_; }
  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  double value_at_node(std::size_t j) const { return values_[j]; }

  /// Evaluates this function on the nodes of another partition.
  GridFunction resampled(const Partition& target) const;

 private:
  Partition partition_;
  std::vector<double> values_;
};

/// max_j |f_j - g_j| over shared nodes; ShapeError on mismatched partitions.
double sup_diff(const GridFunction& f, const GridFunction& g);

GridFunction nodewise_min(const GridFunction& f, const GridFunction& g);
GridFunction nodewise_max(const GridFunction& f, const GridFunction& g);

/// f + c as a new grid function.
GridFunction shifted(const GridFunction& f, double c);

}  // namespace carasolve

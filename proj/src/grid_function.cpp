#include "carasolve/grid_function.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "carasolve/errors.hpp"

namespace carasolve {

Partition Partition::uniform(double a, double b, std::size_t cells) {
  if (!(a < b)) throw DomainError("Partition::uniform: requires a < b");
  if (cells < 1) throw DomainError("Partition::uniform: requires >= 1 cell");
  std::vector<double> nodes(cells + 1);
  for (std::size_t j = 0; j <= cells; ++j) {
    nodes[j] = a + (b - a) * (static_cast<double>(j) / static_cast<double>(cells));
  }
  nodes.front() = a;
  nodes.back() = b;
  return Partition(std::move(nodes));
}

Partition Partition::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < 2) throw DomainError("Partition: needs >= 2 nodes");
  for (std::size_t j = 0; j + 1 < nodes.size(); ++j) {
    if (!(nodes[j] < nodes[j + 1]) || !std::isfinite(nodes[j])) {
      throw DomainError("Partition: nodes must be finite and strictly ascending");
    }
  }
  if (!std::isfinite(nodes.back())) throw DomainError("Partition: nodes must be finite");
  return Partition(std::move(nodes));
}

std::size_t Partition::cell_of(double x) const {
  if (!(x >= nodes_.front() && x <= nodes_.back())) {
    throw DomainError("Partition::cell_of: x outside [a, b]");
  }
  if (x == nodes_.back()) return nodes_.size() - 2;
  auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x);
  return static_cast<std::size_t>(it - nodes_.begin()) - 1;
}

GridFunction::GridFunction(Partition partition, std::vector<double> values)
    : partition_(std::move(partition)), values_(std::move(values)) {
  if (values_.size() != partition_.node_count()) {
    throw ShapeError("GridFunction: value count must match node count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw DomainError("GridFunction: values must be finite");
  }
}

GridFunction GridFunction::constant(const Partition& partition, double c) {
  return GridFunction(partition, std::vector<double>(partition.node_count(), c));
}

double GridFunction::eval(double x) const {
  const auto& xs = partition_.nodes();
  std::size_t j = partition_.cell_of(x);
  if (x == xs[j]) return values_[j];
  if (x == xs[j + 1]) return values_[j + 1];
  double s = (x - xs[j]) / (xs[j + 1] - xs[j]);
  return values_[j] + s * (values_[j + 1] - values_[j]);
}

GridFunction GridFunction::resampled(const Partition& target) const {
  std::vector<double> out(target.node_count());
  for (std::size_t j = 0; j < target.node_count(); ++j) {
    out[j] = eval(target.nodes()[j]);
  }
  return GridFunction(target, std::move(out));
}

double sup_diff(const GridFunction& f, const GridFunction& g) {
  if (f.partition() != g.partition()) throw ShapeError("sup_diff: mismatched partitions");
  double worst = 0.0;
  for (std::size_t j = 0; j < f.values().size(); ++j) {
    worst = std::max(worst, std::fabs(f.values()[j] - g.values()[j]));
  }
  return worst;
}

GridFunction nodewise_min(const GridFunction& f, const GridFunction& g) {
  if (f.partition() != g.partition()) throw ShapeError("nodewise_min: mismatched partitions");
  std::vector<double> out(f.values().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::min(f.values()[j], g.values()[j]);
  return GridFunction(f.partition(), std::move(out));
}

GridFunction nodewise_max(const GridFunction& f, const GridFunction& g) {
  if (f.partition() != g.partition()) throw ShapeError("nodewise_max: mismatched partitions");
  std::vector<double> out(f.values().size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = std::max(f.values()[j], g.values()[j]);
  return GridFunction(f.partition(), std::move(out));
}

GridFunction shifted(const GridFunction& f, double c) {
  std::vector<double> out(f.values());
  for (double& v : out) v += c;
  return GridFunction(f.partition(), std::move(out));
}

}  // namespace carasolve

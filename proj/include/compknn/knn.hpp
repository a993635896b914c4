#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "compknn/dataset.hpp"
#include "compknn/matrix.hpp"
#include "compknn/metrics.hpp"

namespace compknn {

struct NeighborConfig {
  std::size_t k = 1;
  MetricSpec spec{MetricFamily::ESOV};
};

/// Entry (i, j) is distance(spec, queries[i], train.rows()[j]). Metric errors
/// are rethrown with the offending (query, train row) pair in the message.
Matrix pairwise_distances(const LabeledDataset& train,
                          std::span<const Composition> queries,
                          const MetricSpec& spec);

/// Indices of `distances` ordered by (distance, index).
std::vector<std::size_t> rank_neighbors(std::span<const double> distances);

/// Outcome of a k-NN vote.
struct Vote {
  ClassIndex winner = 0;
  std::vector<std::size_t> counts;  // per class, over the k nearest
};

/// Majority vote among the first k entries of `order`. Count ties go to the
/// class whose in-neighbourhood members have the smaller distance sum, then to
/// the lower class index.
Vote vote(std::span<const std::size_t> order, std::span<const double> distances,
          std::span<const ClassIndex> labels, std::size_t class_count,
          std::size_t k);

/// Throws Error{InsufficientTraining} when k is 0 or exceeds train.size().
ClassIndex classify(const LabeledDataset& train, const Composition& query,
                    const NeighborConfig& config);

/// Fraction of the k nearest neighbours carrying each class label.
std::vector<double> membership_scores(const LabeledDataset& train,
                                      const Composition& query,
                                      const NeighborConfig& config);

}  // namespace compknn

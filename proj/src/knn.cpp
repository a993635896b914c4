#include "compknn/knn.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "compknn/error.hpp"

namespace compknn {
namespace {

void require_k(std::size_t k, std::size_t train_size) {
  if (k == 0 || k > train_size) {
    throw Error(ErrorKind::InsufficientTraining,
                "k = " + std::to_string(k) + " with " +
                    std::to_string(train_size) + " training rows");
  }
}

Vote nearest_vote(const LabeledDataset& train, const Composition& query,
                  const NeighborConfig& config) {
  require_k(config.k, train.size());
  const Matrix d = pairwise_distances(train, std::span(&query, 1), config.spec);
  const auto order = rank_neighbors(d.row(0));
  return vote(order, d.row(0), train.labels(), train.class_count(), config.k);
}

}  // namespace

Matrix pairwise_distances(const LabeledDataset& train,
                          std::span<const Composition> queries,
                          const MetricSpec& spec) {
  // Transform every row once; base_distance on prepared rows is the same
  // arithmetic distance() performs per pair.
  std::vector<Composition> prepared_train;
  prepared_train.reserve(train.size());
  for (std::size_t j = 0; j < train.size(); ++j) {
    try {
      prepared_train.push_back(prepare(spec, train.rows()[j]));
    } catch (const Error& e) {
      throw Error(e.kind(), "training row " + std::to_string(j) + ": " + e.what());
    }
  }

  Matrix out(queries.size(), train.size());
  for (std::size_t i = 0; i < queries.size(); ++i) {
    if (queries[i].size() != train.dimension()) {
      throw Error(ErrorKind::DimensionMismatch,
                  "query " + std::to_string(i) + " has " +
                      std::to_string(queries[i].size()) + " parts, training rows have " +
                      std::to_string(train.dimension()));
    }
    const Composition q = [&] {
      try {
        return prepare(spec, queries[i]);
      } catch (const Error& e) {
        throw Error(e.kind(), "query " + std::to_string(i) + ": " + e.what());
      }
    }();
    for (std::size_t j = 0; j < train.size(); ++j) {
      out(i, j) = base_distance(spec.family(), q, prepared_train[j]);
    }
  }
  return out;
}

std::vector<std::size_t> rank_neighbors(std::span<const double> distances) {
  std::vector<std::size_t> order(distances.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (distances[a] != distances[b]) return distances[a] < distances[b];
    return a < b;
  });
  return order;
}

Vote vote(std::span<const std::size_t> order, std::span<const double> distances,
          std::span<const ClassIndex> labels, std::size_t class_count,
          std::size_t k) {
  require_k(k, order.size());
  Vote result;
  result.counts.assign(class_count, 0);
  std::vector<double> spread(class_count, 0.0);
  for (std::size_t r = 0; r < k; ++r) {
    const std::size_t j = order[r];
    ++result.counts[labels[j]];
    spread[labels[j]] += distances[j];
  }
  ClassIndex best = 0;
  for (ClassIndex c = 1; c < class_count; ++c) {
    if (result.counts[c] > result.counts[best] ||
        (result.counts[c] == result.counts[best] && spread[c] < spread[best])) {
      best = c;
    }
  }
  result.winner = best;
  return result;
}

ClassIndex classify(const LabeledDataset& train, const Composition& query,
                    const NeighborConfig& config) {
  return nearest_vote(train, query, config).winner;
}

std::vector<double> membership_scores(const LabeledDataset& train,
                                      const Composition& query,
                                      const NeighborConfig& config) {
  const Vote v = nearest_vote(train, query, config);
  std::vector<double> scores(v.counts.size());
  for (std::size_t c = 0; c < scores.size(); ++c) {
    scores[c] = static_cast<double>(v.counts[c]) / static_cast<double>(config.k);
  }
  return scores;
}

}  // namespace compknn

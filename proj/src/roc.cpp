#include <algorithm>
#include <string>

#include "compknn/error.hpp"
#include "compknn/evaluation.hpp"

namespace compknn {

Matrix loocv_scores(const LabeledDataset& data, const NeighborConfig& config) {
  const std::size_t n = data.size();
  if (config.k == 0 || config.k + 1 > n) {
    throw Error(ErrorKind::InsufficientTraining,
                "k = " + std::to_string(config.k) + " needs more than " +
                    std::to_string(n) + " rows for leave-one-out");
  }
  std::vector<Composition> prepared;
  prepared.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    try {
      prepared.push_back(prepare(config.spec, data.rows()[i]));
    } catch (const Error& e) {
      throw Error(e.kind(), "row " + std::to_string(i) + ": " + e.what());
    }
  }

  Matrix scores(n, data.class_count());
  std::vector<double> distances(n - 1);
  std::vector<ClassIndex> labels(n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0, r = 0; j < n; ++j) {
      if (j == i) continue;
      distances[r] = base_distance(config.spec.family(), prepared[i], prepared[j]);
      labels[r] = data.labels()[j];
      ++r;
    }
    const auto order = rank_neighbors(distances);
    const Vote v = vote(order, distances, labels, data.class_count(), config.k);
    for (std::size_t c = 0; c < data.class_count(); ++c) {
      scores(i, c) = static_cast<double>(v.counts[c]) / static_cast<double>(config.k);
    }
  }
  return scores;
}

RocCurve roc_curve(const Matrix& scores, const std::vector<ClassIndex>& truth,
                   ClassIndex positive_class) {
  if (scores.rows() != truth.size()) {
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(scores.rows()) + " score rows vs " +
                    std::to_string(truth.size()) + " labels");
  }
  if (positive_class >= scores.cols()) {
    throw Error(ErrorKind::InvalidArgument, "class index out of range");
  }
  std::size_t positives = 0;
  for (ClassIndex t : truth) positives += (t == positive_class);
  const std::size_t negatives = truth.size() - positives;
  if (positives == 0 || negatives == 0) {
    throw Error(ErrorKind::UndefinedRoc,
                "class " + std::to_string(positive_class) + " has " +
                    std::to_string(positives) + " positives and " +
                    std::to_string(negatives) + " negatives");
  }

  std::vector<double> levels{0.0};
  double top = 1.0;
  for (std::size_t i = 0; i < scores.rows(); ++i) {
    levels.push_back(scores(i, positive_class));
    top = std::max(top, scores(i, positive_class));
  }
  levels.push_back(top + 1.0);
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  RocCurve curve;
  curve.positive_class = positive_class;
  for (double t : levels) {
    std::size_t tp = 0, fp = 0;
    for (std::size_t i = 0; i < scores.rows(); ++i) {
      if (scores(i, positive_class) >= t) {
        (truth[i] == positive_class ? tp : fp) += 1;
      }
    }
    const RocPoint p{static_cast<double>(fp) / static_cast<double>(negatives),
                     static_cast<double>(tp) / static_cast<double>(positives)};
    if (!curve.points.empty() && curve.points.back().fpr == p.fpr &&
        curve.points.back().tpr == p.tpr) {
      continue;
    }
    curve.points.push_back(p);
    curve.thresholds.push_back(t);
  }
  return curve;
}

double auc(const RocCurve& curve) {
  CompensatedSum area;
  for (std::size_t i = 1; i < curve.points.size(); ++i) {
    const auto& a = curve.points[i - 1];
    const auto& b = curve.points[i];
    area.add((b.fpr - a.fpr) * (a.tpr + b.tpr) / 2.0);
  }
  return area.value();
}

}  // namespace compknn

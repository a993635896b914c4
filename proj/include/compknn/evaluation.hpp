#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "compknn/dataset.hpp"
#include "compknn/knn.hpp"
#include "compknn/matrix.hpp"
#include "compknn/metrics.hpp"

namespace compknn {

// ---------------------------------------------------------------------------
// Stratified holdout

/// Per-class test counts for a split of `class_sizes` with `test_total` test
/// rows: proportional quotas rounded by largest remainder, at least one per
/// class. Remainder ties go to the lower class index.
///
/// Throws Error{InfeasibleStratification} if test_total is smaller than the
/// number of classes or not smaller than the dataset.
std::vector<std::size_t> stratified_test_counts(
    const std::vector<std::size_t>& class_sizes, std::size_t test_total);

struct SplitPlan {
  std::vector<std::size_t> test_count_per_class;
  std::uint64_t seed = 0;
  std::uint64_t replication_index = 0;
};

struct Split {
  LabeledDataset train;
  LabeledDataset test;
  // Positions in the source dataset, ascending.
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;

  /// FNV-1a over test_indices; equal for equal splits.
  std::uint64_t fingerprint() const;
};

Split stratified_holdout(const LabeledDataset& data, std::size_t test_total,
                         std::uint64_t seed, std::uint64_t replication_index);

// ---------------------------------------------------------------------------
// Confusion statistics

/// counts(t, p) = number of rows of true class t predicted as p.
class ConfusionMatrix {
 public:
  explicit ConfusionMatrix(std::size_t class_count)
      : classes_(class_count), counts_(class_count * class_count, 0) {}

  std::size_t class_count() const noexcept { return classes_; }
  std::size_t operator()(std::size_t truth, std::size_t predicted) const {
    return counts_[truth * classes_ + predicted];
  }
  void add(std::size_t truth, std::size_t predicted);

  std::size_t total() const;
  std::size_t row_total(std::size_t truth) const;
  std::size_t column_total(std::size_t predicted) const;

 private:
  std::size_t classes_;
  std::vector<std::size_t> counts_;
};

ConfusionMatrix confusion_matrix(const std::vector<ClassIndex>& truth,
                                 const std::vector<ClassIndex>& predicted,
                                 std::size_t class_count);

/// One-vs-rest rates for a class; a rate whose denominator is zero is absent.
struct ClassRates {
  std::optional<double> sensitivity;
  std::optional<double> specificity;
};

std::vector<ClassRates> sensitivity_specificity(const ConfusionMatrix& cm);

// ---------------------------------------------------------------------------
// Repeated-holdout grid search

struct Summary {
  double mean = 0.0;
  double sd = 0.0;
  std::size_t n = 0;  // replications that contributed
};

struct ClassSummary {
  Summary sensitivity;  // percent
  Summary specificity;  // percent
};

struct GridCell {
  std::optional<double> alpha;  // absent for AITCHISON
  std::size_t k = 0;
  bool ok = true;
  std::string diagnostic;       // set when !ok
  Summary accuracy;             // percent
  std::vector<ClassSummary> per_class;
};

struct GridResult {
  MetricFamily family = MetricFamily::ESOV;
  std::vector<std::string> classes;
  std::size_t replications = 0;
  std::size_t test_total = 0;
  std::uint64_t seed = 0;
  bool shared_splits = true;
  std::vector<std::uint64_t> split_fingerprints;  // one per replication
  std::vector<GridCell> cells;                    // alpha-major, then k

  const GridCell* find(std::optional<double> alpha, std::size_t k) const;
};

struct GridOptions {
  std::size_t replications = 200;
  std::size_t test_total = 0;
  std::uint64_t seed = 0;
  std::size_t threads = 1;
};

/// For each replication draws one stratified split and classifies its test
/// rows under every (alpha, k) cell, so all cells see the same splits. Cell
/// statistics are means and sample standard deviations over replications.
///
/// A cell whose metric cannot be evaluated (zeros under AITCHISON or a
/// negative power, k larger than the training set) is marked !ok with a
/// diagnostic; other cells are unaffected. For AITCHISON `alphas` is ignored.
/// The result does not depend on options.threads.
GridResult grid_search(const LabeledDataset& data,
                       const std::vector<double>& alphas,
                       const std::vector<std::size_t>& ks, MetricFamily family,
                       const GridOptions& options);

// ---------------------------------------------------------------------------
// Leave-one-out scores and ROC

/// Row i holds membership_scores of data[i] against all other rows.
Matrix loocv_scores(const LabeledDataset& data, const NeighborConfig& config);

struct RocPoint {
  double fpr = 0.0;
  double tpr = 0.0;
};

struct RocCurve {
  ClassIndex positive_class = 0;
  std::vector<RocPoint> points;   // from (0,0) to (1,1)
  std::vector<double> thresholds; // thresholds[i] produced points[i]
};

/// One-vs-rest ROC for `positive_class`: predicts positive iff
/// score >= t for t sweeping the achievable score levels (every observed
/// score, 0, and a sentinel above the maximum). Repeated points are merged.
///
/// Throws Error{UndefinedRoc} if the class has no positive or no negative row.
RocCurve roc_curve(const Matrix& scores, const std::vector<ClassIndex>& truth,
                   ClassIndex positive_class);

/// Trapezoidal area under the curve.
double auc(const RocCurve& curve);

}  // namespace compknn

#include "compknn/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "compknn/error.hpp"

namespace compknn {

void ConfusionMatrix::add(std::size_t truth, std::size_t predicted) {
  if (truth >= classes_ || predicted >= classes_) {
    throw Error(ErrorKind::InvalidArgument, "class index out of range");
  }
  ++counts_[truth * classes_ + predicted];
}

std::size_t ConfusionMatrix::total() const {
  std::size_t n = 0;
  for (std::size_t v : counts_) n += v;
  return n;
}

std::size_t ConfusionMatrix::row_total(std::size_t truth) const {
  std::size_t n = 0;
  for (std::size_t p = 0; p < classes_; ++p) n += (*this)(truth, p);
  return n;
}

std::size_t ConfusionMatrix::column_total(std::size_t predicted) const {
  std::size_t n = 0;
  for (std::size_t t = 0; t < classes_; ++t) n += (*this)(t, predicted);
  return n;
}

ConfusionMatrix confusion_matrix(const std::vector<ClassIndex>& truth,
                                 const std::vector<ClassIndex>& predicted,
                                 std::size_t class_count) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(truth.size()) + " truths vs " +
                    std::to_string(predicted.size()) + " predictions");
  }
  ConfusionMatrix cm(class_count);
  for (std::size_t i = 0; i < truth.size(); ++i) cm.add(truth[i], predicted[i]);
  return cm;
}

std::vector<ClassRates> sensitivity_specificity(const ConfusionMatrix& cm) {
  const std::size_t total = cm.total();
  std::vector<ClassRates> rates(cm.class_count());
  for (std::size_t c = 0; c < cm.class_count(); ++c) {
    const std::size_t tp = cm(c, c);
    const std::size_t positives = cm.row_total(c);
    const std::size_t fp = cm.column_total(c) - tp;
    const std::size_t negatives = total - positives;
    if (positives > 0) {
      rates[c].sensitivity = static_cast<double>(tp) / static_cast<double>(positives);
    }
    if (negatives > 0) {
      rates[c].specificity =
          static_cast<double>(negatives - fp) / static_cast<double>(negatives);
    }
  }
  return rates;
}

const GridCell* GridResult::find(std::optional<double> alpha, std::size_t k) const {
  for (const auto& cell : cells) {
    if (cell.k != k || cell.alpha.has_value() != alpha.has_value()) continue;
    if (!alpha || std::abs(*cell.alpha - *alpha) <= 1e-12) return &cell;
  }
  return nullptr;
}

namespace {

struct CellOutcome {
  std::string error;  // non-empty when the cell failed in this replication
  double accuracy = 0.0;
  std::vector<ClassRates> rates;
};

class Accumulator {
 public:
  void add(double v) {
    sum_.add(v);
    values_.push_back(v);
  }
  Summary summary() const {
    Summary s;
    s.n = values_.size();
    if (s.n == 0) return s;
    s.mean = sum_.value() / static_cast<double>(s.n);
    if (s.n > 1) {
      CompensatedSum sq;
      for (double v : values_) sq.add((v - s.mean) * (v - s.mean));
      s.sd = std::sqrt(sq.value() / static_cast<double>(s.n - 1));
    }
    return s;
  }

 private:
  CompensatedSum sum_;
  std::vector<double> values_;
};

std::vector<CellOutcome> run_replication(const LabeledDataset& data,
                                         const std::vector<MetricSpec>& specs,
                                         const std::vector<std::size_t>& ks,
                                         const GridOptions& options,
                                         std::size_t b, std::uint64_t* fingerprint) {
  const Split split = stratified_holdout(data, options.test_total, options.seed, b);
  *fingerprint = split.fingerprint();
  const auto& truth = split.test.labels();
  const std::size_t classes = data.class_count();

  std::vector<CellOutcome> outcomes;
  outcomes.reserve(specs.size() * ks.size());
  for (const auto& spec : specs) {
    Matrix d;
    std::string failure;
    try {
      d = pairwise_distances(split.train, split.test.rows(), spec);
    } catch (const Error& e) {
      failure = e.what();
    }
    std::vector<std::vector<std::size_t>> order;
    if (failure.empty()) {
      order.reserve(d.rows());
      for (std::size_t i = 0; i < d.rows(); ++i) order.push_back(rank_neighbors(d.row(i)));
    }
    for (std::size_t k : ks) {
      CellOutcome out;
      if (!failure.empty()) {
        out.error = failure;
      } else if (k == 0 || k > split.train.size()) {
        out.error = "InsufficientTraining: k = " + std::to_string(k) + " with " +
                    std::to_string(split.train.size()) + " training rows";
      } else {
        std::vector<ClassIndex> predicted(d.rows());
        std::size_t correct = 0;
        for (std::size_t i = 0; i < d.rows(); ++i) {
          predicted[i] =
              vote(order[i], d.row(i), split.train.labels(), classes, k).winner;
          if (predicted[i] == truth[i]) ++correct;
        }
        out.accuracy = 100.0 * static_cast<double>(correct) / static_cast<double>(d.rows());
        out.rates = sensitivity_specificity(confusion_matrix(truth, predicted, classes));
      }
      outcomes.push_back(std::move(out));
    }
  }
  return outcomes;
}

}  // namespace

GridResult grid_search(const LabeledDataset& data, const std::vector<double>& alphas,
                       const std::vector<std::size_t>& ks, MetricFamily family,
                       const GridOptions& options) {
  if (options.replications == 0) {
    throw Error(ErrorKind::InvalidArgument, "at least one replication is required");
  }
  if (ks.empty() || (uses_alpha(family) && alphas.empty())) {
    throw Error(ErrorKind::InvalidArgument, "empty parameter grid");
  }
  // Fail fast on an infeasible split before any work is scheduled.
  stratified_test_counts(data.class_sizes(), options.test_total);

  std::vector<MetricSpec> specs;
  if (uses_alpha(family)) {
    for (double a : alphas) specs.emplace_back(family, a);
  } else {
    specs.emplace_back(family);
  }

  const std::size_t reps = options.replications;
  std::vector<std::vector<CellOutcome>> per_rep(reps);
  std::vector<std::uint64_t> fingerprints(reps);

  const std::size_t workers =
      std::max<std::size_t>(1, std::min(options.threads, reps));
  std::vector<std::exception_ptr> failures(workers);
  auto work = [&](std::size_t w) {
    try {
      for (std::size_t b = w; b < reps; b += workers) {
        per_rep[b] = run_replication(data, specs, ks, options, b, &fingerprints[b]);
      }
    } catch (...) {
      failures[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }

  GridResult result;
  result.family = family;
  result.classes = data.classes();
  result.replications = reps;
  result.test_total = options.test_total;
  result.seed = options.seed;
  result.split_fingerprints = std::move(fingerprints);

  const std::size_t classes = data.class_count();
  std::size_t cell_index = 0;
  for (const auto& spec : specs) {
    for (std::size_t k : ks) {
      GridCell cell;
      if (uses_alpha(family)) cell.alpha = spec.alpha();
      cell.k = k;
      Accumulator accuracy;
      std::vector<Accumulator> sens(classes), spec_acc(classes);
      for (std::size_t b = 0; b < reps; ++b) {
        const CellOutcome& out = per_rep[b][cell_index];
        if (!out.error.empty()) {
          cell.ok = false;
          cell.diagnostic = "replication " + std::to_string(b) + ": " + out.error;
          break;
        }
        accuracy.add(out.accuracy);
        for (std::size_t c = 0; c < classes; ++c) {
          if (out.rates[c].sensitivity) sens[c].add(100.0 * *out.rates[c].sensitivity);
          if (out.rates[c].specificity) spec_acc[c].add(100.0 * *out.rates[c].specificity);
        }
      }
      if (cell.ok) {
        cell.accuracy = accuracy.summary();
        cell.per_class.resize(classes);
        for (std::size_t c = 0; c < classes; ++c) {
          cell.per_class[c] = {sens[c].summary(), spec_acc[c].summary()};
        }
      }
      result.cells.push_back(std::move(cell));
      ++cell_index;
    }
  }
  return result;
}

}  // namespace compknn

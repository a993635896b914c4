#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "compknn/composition.hpp"

namespace compknn {

using ClassIndex = std::size_t;

/// Compositions with one class label each.
///
/// The class catalog is shared by every subset taken from a dataset, so a
/// training split may legitimately hold no rows of some class. The
/// "every class is populated" rule is checked on ingestion via
/// require_populated_classes().
class LabeledDataset {
 public:
  /// Throws Error{InvalidArgument} on empty input, length mismatch or a label
  /// outside the catalog, and Error{DimensionMismatch} when rows differ in D.
  LabeledDataset(std::vector<Composition> rows, std::vector<ClassIndex> labels,
                 std::vector<std::string> classes);

  std::size_t size() const noexcept { return rows_.size(); }
  std::size_t dimension() const noexcept { return rows_.front().size(); }
  std::size_t class_count() const noexcept { return classes_.size(); }

  const std::vector<Composition>& rows() const noexcept { return rows_; }
  const std::vector<ClassIndex>& labels() const noexcept { return labels_; }
  const std::vector<std::string>& classes() const noexcept { return classes_; }

  std::vector<std::size_t> class_sizes() const;

  /// Rows at the given indices, in the order given, with the same catalog.
  LabeledDataset subset(const std::vector<std::size_t>& indices) const;

  void require_populated_classes() const;

  friend bool operator==(const LabeledDataset&, const LabeledDataset&) = default;

 private:
  std::vector<Composition> rows_;
  std::vector<ClassIndex> labels_;
  std::vector<std::string> classes_;
};

}  // namespace compknn

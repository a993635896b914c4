#include "compknn/dataset.hpp"

#include <string>

#include "compknn/error.hpp"

namespace compknn {

LabeledDataset::LabeledDataset(std::vector<Composition> rows,
                               std::vector<ClassIndex> labels,
                               std::vector<std::string> classes)
    : rows_(std::move(rows)), labels_(std::move(labels)), classes_(std::move(classes)) {
  if (rows_.empty()) {
    throw Error(ErrorKind::InvalidArgument, "dataset has no rows");
  }
  if (rows_.size() != labels_.size()) {
    throw Error(ErrorKind::InvalidArgument,
                std::to_string(rows_.size()) + " rows but " +
                    std::to_string(labels_.size()) + " labels");
  }
  const std::size_t d = rows_.front().size();
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    if (rows_[i].size() != d) {
      throw Error(ErrorKind::DimensionMismatch,
                  "row " + std::to_string(i) + " has " +
                      std::to_string(rows_[i].size()) + " parts, expected " +
                      std::to_string(d));
    }
    if (labels_[i] >= classes_.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  "row " + std::to_string(i) + " has label " +
                      std::to_string(labels_[i]) + " outside the catalog of " +
                      std::to_string(classes_.size()));
    }
  }
}

std::vector<std::size_t> LabeledDataset::class_sizes() const {
  std::vector<std::size_t> sizes(classes_.size(), 0);
  for (ClassIndex c : labels_) ++sizes[c];
  return sizes;
}

LabeledDataset LabeledDataset::subset(const std::vector<std::size_t>& indices) const {
  std::vector<Composition> rows;
  std::vector<ClassIndex> labels;
  rows.reserve(indices.size());
  labels.reserve(indices.size());
  for (std::size_t i : indices) {
    if (i >= rows_.size()) {
      throw Error(ErrorKind::InvalidArgument,
                  "subset index " + std::to_string(i) + " out of range");
    }
    rows.push_back(rows_[i]);
    labels.push_back(labels_[i]);
  }
  return LabeledDataset(std::move(rows), std::move(labels), classes_);
}

void LabeledDataset::require_populated_classes() const {
  const auto sizes = class_sizes();
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] == 0) {
      throw Error(ErrorKind::InvalidArgument,
                  "class '" + classes_[c] + "' has no rows");
    }
  }
}

}  // namespace compknn

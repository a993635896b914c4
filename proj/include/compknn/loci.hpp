#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "compknn/composition.hpp"
#include "compknn/dataset.hpp"
#include "compknn/metrics.hpp"

namespace compknn {

/// A 3-part composition and its position in the plot triangle with vertices
/// (0,0), (1,0) and (0.5, sqrt(3)/2) for parts 1, 2 and 3.
struct TernaryPoint {
  Composition composition;
  double x = 0.0;
  double y = 0.0;
};

/// Throws Error{DimensionMismatch} unless c has three parts.
TernaryPoint ternary_embed(const Composition& c);

/// power_transform each row, then embed it.
std::vector<TernaryPoint> transform_dataset(const LabeledDataset& data,
                                            double alpha);

struct DistanceField {
  std::size_t resolution = 0;
  MetricSpec spec{MetricFamily::ESOV};
  Composition reference{1.0 / 3, 1.0 / 3, 1.0 / 3};
  std::vector<TernaryPoint> points;
  std::vector<double> values;
  // Lattice coordinates (i, j) of each point; part 3 is n - i - j.
  std::vector<std::pair<std::size_t, std::size_t>> lattice;
};

/// Distance from `reference` at every point (i/n, j/n, (n-i-j)/n) of the
/// triangular lattice, row-major in (i, j). Points outside the metric's
/// domain are left out.
///
/// Throws Error{InvalidArgument} for n < 2, Error{DimensionMismatch} unless
/// the reference has three parts, and the metric's domain error when the
/// reference itself is outside the domain.
DistanceField distance_field(const MetricSpec& spec,
                             const Composition& reference, std::size_t n);

/// CSV with header c1,c2,c3,x,y,value.
void write_field_csv(std::ostream& out, const DistanceField& field);

}  // namespace compknn

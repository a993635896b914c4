#include "compknn/loci.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>
#include <string>

#include "compknn/error.hpp"

namespace compknn {
namespace {

const double kHalfRootThree = std::sqrt(3.0) / 2.0;

}  // namespace

TernaryPoint ternary_embed(const Composition& c) {
  if (c.size() != 3) {
    throw Error(ErrorKind::DimensionMismatch,
                "ternary embedding needs 3 parts, got " + std::to_string(c.size()));
  }
  return TernaryPoint{c, c[1] + c[2] / 2.0, c[2] * kHalfRootThree};
}

std::vector<TernaryPoint> transform_dataset(const LabeledDataset& data, double alpha) {
  if (data.dimension() != 3) {
    throw Error(ErrorKind::DimensionMismatch,
                "ternary plots need 3 parts, dataset has " +
                    std::to_string(data.dimension()));
  }
  std::vector<TernaryPoint> out;
  out.reserve(data.size());
  for (std::size_t i = 0; i < data.size(); ++i) {
    try {
      out.push_back(ternary_embed(power_transform(data.rows()[i], alpha)));
    } catch (const Error& e) {
      throw Error(e.kind(), "row " + std::to_string(i) + ": " + e.what());
    }
  }
  return out;
}

DistanceField distance_field(const MetricSpec& spec, const Composition& reference,
                             std::size_t n) {
  if (n < 2) {
    throw Error(ErrorKind::InvalidArgument, "lattice resolution must be at least 2");
  }
  if (reference.size() != 3) {
    throw Error(ErrorKind::DimensionMismatch, "reference must have 3 parts");
  }
  // Surfaces the metric's own domain error for a bad reference.
  const Composition ref = prepare(spec, reference);

  DistanceField field;
  field.resolution = n;
  field.spec = spec;
  field.reference = reference;
  const double denom = static_cast<double>(n);
  for (std::size_t i = 0; i <= n; ++i) {
    for (std::size_t j = 0; i + j <= n; ++j) {
      const Composition c{static_cast<double>(i) / denom, static_cast<double>(j) / denom,
                          static_cast<double>(n - i - j) / denom};
      if (!in_domain(spec, c)) continue;
      field.points.push_back(ternary_embed(c));
      field.values.push_back(base_distance(spec.family(), prepare(spec, c), ref));
      field.lattice.emplace_back(i, j);
    }
  }
  return field;
}

void write_field_csv(std::ostream& out, const DistanceField& field) {
  out << "c1,c2,c3,x,y,value\n";
  out << std::setprecision(17);
  for (std::size_t p = 0; p < field.points.size(); ++p) {
    const auto& pt = field.points[p];
    out << pt.composition[0] << ',' << pt.composition[1] << ',' << pt.composition[2]
        << ',' << pt.x << ',' << pt.y << ',' << field.values[p] << '\n';
  }
}

}  // namespace compknn

#include "compknn/composition.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "compknn/error.hpp"

namespace compknn {
namespace {

void check_parts(std::span<const double> v) {
  if (v.size() < 2) {
    throw Error(ErrorKind::InvalidArgument,
                "a composition needs at least 2 parts, got " +
                    std::to_string(v.size()));
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!(v[i] >= 0.0) || !std::isfinite(v[i])) {
      throw Error(ErrorKind::NegativeComponent,
                  "part " + std::to_string(i) + " is " + std::to_string(v[i]));
    }
  }
}

std::vector<double> divide_by_sum(std::span<const double> v) {
  const double total = compensated_sum(v);
  if (total <= 0.0) {
    throw Error(ErrorKind::DegenerateInput, "all parts are zero");
  }
  std::vector<double> out(v.begin(), v.end());
  for (double& p : out) p /= total;
  return out;
}

}  // namespace

double compensated_sum(std::span<const double> values) {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

Composition::Composition(std::span<const double> parts) {
  check_parts(parts);
  const double total = compensated_sum(parts);
  if (total <= 0.0) {
    throw Error(ErrorKind::DegenerateInput, "all parts are zero");
  }
  if (std::abs(total - 1.0) <= kClosureTolerance) {
    parts_.assign(parts.begin(), parts.end());
  } else {
    parts_ = divide_by_sum(parts);
  }
}

Composition::Composition(std::initializer_list<double> parts)
    : Composition(std::span<const double>(parts.begin(), parts.size())) {}

bool Composition::strictly_positive() const noexcept {
  return std::all_of(parts_.begin(), parts_.end(),
                     [](double p) { return p > 0.0; });
}

Composition Composition::barycentre(std::size_t dimension) {
  if (dimension < 2) {
    throw Error(ErrorKind::InvalidArgument, "barycentre needs D >= 2");
  }
  return Composition(Trusted{}, std::vector<double>(
                                    dimension, 1.0 / static_cast<double>(dimension)));
}

Composition closure(std::span<const double> v) {
  check_parts(v);
  return Composition(Composition::Trusted{}, divide_by_sum(v));
}

Composition power_transform(const Composition& x, double alpha) {
  if (!std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
  }
  const auto parts = x.parts();
  if (alpha == 1.0) return x;

  std::vector<double> out(parts.size(), 0.0);
  if (alpha == 0.0) {
    for (std::size_t i = 0; i < parts.size(); ++i) {
      out[i] = parts[i] > 0.0 ? 1.0 : 0.0;
    }
    return Composition(Composition::Trusted{}, divide_by_sum(out));
  }

  // Work with a*log(x_i) shifted by its maximum so that large |a| cannot
  // overflow; zeros (only possible for a > 0) map to zero.
  double shift = -INFINITY;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (parts[i] > 0.0) {
      out[i] = alpha * std::log(parts[i]);
      shift = std::max(shift, out[i]);
    } else if (alpha < 0.0) {
      throw Error(ErrorKind::ZeroUnderNegativePower,
                  "part " + std::to_string(i) + " is zero with alpha = " +
                      std::to_string(alpha));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    out[i] = parts[i] > 0.0 ? std::exp(out[i] - shift) : 0.0;
  }
  return Composition(Composition::Trusted{}, divide_by_sum(out));
}

Composition perturb(const Composition& x, std::span<const double> p) {
  if (p.size() != x.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                "perturbation has " + std::to_string(p.size()) +
                    " parts, composition has " + std::to_string(x.size()));
  }
  std::vector<double> out(x.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (!(p[i] > 0.0) || !std::isfinite(p[i])) {
      throw Error(ErrorKind::NegativeComponent,
                  "perturbation part " + std::to_string(i) + " is not positive");
    }
    out[i] = x[i] * p[i];
  }
  return closure(out);
}

}  // namespace compknn

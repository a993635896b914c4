#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "compknn/composition.hpp"

namespace compknn {

enum class MetricFamily { ESOV, TC, AITCHISON, HELLINGER, ANGULAR };

std::string_view to_string(MetricFamily family);
/// Case-insensitive; accepts "esov", "tc"/"taxicab", "aitchison",
/// "hellinger", "angular".
std::optional<MetricFamily> parse_family(std::string_view name);

/// Whether the family carries a power parameter.
constexpr bool uses_alpha(MetricFamily family) {
  return family == MetricFamily::ESOV || family == MetricFamily::TC;
}

/// A metric family together with its power parameter. alpha is pinned to 1
/// for the families without one.
class MetricSpec {
 public:
  explicit MetricSpec(MetricFamily family, double alpha = 1.0);

  MetricFamily family() const noexcept { return family_; }
  double alpha() const noexcept { return alpha_; }

  std::string label() const;

  friend bool operator==(const MetricSpec&, const MetricSpec&) = default;

 private:
  MetricFamily family_;
  double alpha_;
};

// Eq-level metrics. All throw Error{DimensionMismatch} when x and w differ in
// length. Logarithms are natural.

/// Square root of the Jensen-Shannon divergence (ES-OV metric), with the
/// 0 log 0 = 0 convention.
double esov_distance(const Composition& x, const Composition& w);
double esov_alpha_distance(const Composition& x, const Composition& w,
                           double alpha);

double taxicab_distance(const Composition& x, const Composition& w);
double taxicab_alpha_distance(const Composition& x, const Composition& w,
                              double alpha);

/// Euclidean distance of the centred log-ratio images. Throws
/// Error{ZeroInAitchison} if either argument has a zero part.
double aitchison_distance(const Composition& x, const Composition& w);

double hellinger_distance(const Composition& x, const Composition& w);

/// arccos of the plain dot product, clamped to [-1, 1]. Note that this is not
/// zero at x == w unless x is a vertex.
double angular_distance(const Composition& x, const Composition& w);

double distance(const MetricSpec& spec, const Composition& x,
                const Composition& w);

/// True when distance(spec, x, .) can be evaluated for x: no zero parts for
/// AITCHISON or for a negative power.
bool in_domain(const MetricSpec& spec, const Composition& x);

/// The representation a metric actually compares: the power transform for
/// ESOV/TC, x itself otherwise. Lets callers transform each row once and then
/// use base_distance() on the results.
Composition prepare(const MetricSpec& spec, const Composition& x);

/// Distance between two already prepared compositions. For ESOV/TC this is
/// the alpha = 1 metric; for the others it is the metric itself.
double base_distance(MetricFamily family, const Composition& x,
                     const Composition& w);

}  // namespace compknn

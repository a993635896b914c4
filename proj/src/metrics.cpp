#include "compknn/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <string>

#include "compknn/error.hpp"

namespace compknn {
namespace {

void require_same_dimension(const Composition& x, const Composition& w) {
  if (x.size() != w.size()) {
    throw Error(ErrorKind::DimensionMismatch,
                std::to_string(x.size()) + " parts vs " +
                    std::to_string(w.size()) + " parts");
  }
}

// p * log(2p / (p + q)) written with log1p so that nearby p, q do not lose
// precision. Zero when p == 0.
double js_term(double p, double q) {
  if (p == 0.0) return 0.0;
  return p * std::log1p((p - q) / (p + q));
}

// Centred log-ratio image.
std::vector<double> clr(const Composition& x) {
  std::vector<double> logs(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] <= 0.0) {
      throw Error(ErrorKind::ZeroInAitchison,
                  "part " + std::to_string(i) + " is zero");
    }
    logs[i] = std::log(x[i]);
  }
  const double mean = compensated_sum(logs) / static_cast<double>(x.size());
  for (double& v : logs) v -= mean;
  return logs;
}

}  // namespace

std::string_view to_string(MetricFamily family) {
  switch (family) {
    case MetricFamily::ESOV: return "esov";
    case MetricFamily::TC: return "tc";
    case MetricFamily::AITCHISON: return "aitchison";
    case MetricFamily::HELLINGER: return "hellinger";
    case MetricFamily::ANGULAR: return "angular";
  }
  return "unknown";
}

std::optional<MetricFamily> parse_family(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "esov" || lower == "es-ov") return MetricFamily::ESOV;
  if (lower == "tc" || lower == "taxicab") return MetricFamily::TC;
  if (lower == "aitchison" || lower == "ait") return MetricFamily::AITCHISON;
  if (lower == "hellinger") return MetricFamily::HELLINGER;
  if (lower == "angular") return MetricFamily::ANGULAR;
  return std::nullopt;
}

MetricSpec::MetricSpec(MetricFamily family, double alpha)
    : family_(family), alpha_(uses_alpha(family) ? alpha : 1.0) {
  if (!std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
  }
}

std::string MetricSpec::label() const {
  std::ostringstream out;
  out << to_string(family_);
  if (uses_alpha(family_)) out << "(alpha=" << alpha_ << ")";
  return out.str();
}

double esov_distance(const Composition& x, const Composition& w) {
  require_same_dimension(x, w);
  CompensatedSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum.add(js_term(x[i], w[i]) + js_term(w[i], x[i]));
  }
  return std::sqrt(std::max(0.0, sum.value()));
}

double esov_alpha_distance(const Composition& x, const Composition& w,
                           double alpha) {
  require_same_dimension(x, w);
  return esov_distance(power_transform(x, alpha), power_transform(w, alpha));
}

double taxicab_distance(const Composition& x, const Composition& w) {
  require_same_dimension(x, w);
  CompensatedSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) sum.add(std::abs(x[i] - w[i]));
  return sum.value();
}

double taxicab_alpha_distance(const Composition& x, const Composition& w,
                              double alpha) {
  require_same_dimension(x, w);
  return taxicab_distance(power_transform(x, alpha), power_transform(w, alpha));
}

double aitchison_distance(const Composition& x, const Composition& w) {
  require_same_dimension(x, w);
  const auto cx = clr(x);
  const auto cw = clr(w);
  CompensatedSum sum;
  for (std::size_t i = 0; i < cx.size(); ++i) {
    const double d = cx[i] - cw[i];
    sum.add(d * d);
  }
  return std::sqrt(sum.value());
}

double hellinger_distance(const Composition& x, const Composition& w) {
  require_same_dimension(x, w);
  CompensatedSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = std::sqrt(x[i]) - std::sqrt(w[i]);
    sum.add(d * d);
  }
  return std::sqrt(sum.value()) / std::sqrt(2.0);
}

double angular_distance(const Composition& x, const Composition& w) {
  require_same_dimension(x, w);
  CompensatedSum dot;
  for (std::size_t i = 0; i < x.size(); ++i) dot.add(x[i] * w[i]);
  return std::acos(std::clamp(dot.value(), -1.0, 1.0));
}

bool in_domain(const MetricSpec& spec, const Composition& x) {
  switch (spec.family()) {
    case MetricFamily::AITCHISON:
      return x.strictly_positive();
    case MetricFamily::ESOV:
    case MetricFamily::TC:
      return spec.alpha() >= 0.0 || x.strictly_positive();
    default:
      return true;
  }
}

Composition prepare(const MetricSpec& spec, const Composition& x) {
  if (uses_alpha(spec.family())) return power_transform(x, spec.alpha());
  if (spec.family() == MetricFamily::AITCHISON && x.has_zero()) {
    throw Error(ErrorKind::ZeroInAitchison, "composition has a zero part");
  }
  return x;
}

double base_distance(MetricFamily family, const Composition& x,
                     const Composition& w) {
  switch (family) {
    case MetricFamily::ESOV: return esov_distance(x, w);
    case MetricFamily::TC: return taxicab_distance(x, w);
    case MetricFamily::AITCHISON: return aitchison_distance(x, w);
    case MetricFamily::HELLINGER: return hellinger_distance(x, w);
    case MetricFamily::ANGULAR: return angular_distance(x, w);
  }
  throw Error(ErrorKind::InvalidArgument, "unknown metric family");
}

double distance(const MetricSpec& spec, const Composition& x,
                const Composition& w) {
  switch (spec.family()) {
    case MetricFamily::ESOV: return esov_alpha_distance(x, w, spec.alpha());
    case MetricFamily::TC: return taxicab_alpha_distance(x, w, spec.alpha());
    default: return base_distance(spec.family(), x, w);
  }
}

}  // namespace compknn

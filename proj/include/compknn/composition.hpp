#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace compknn {

// Rows whose raw sum lies within this distance of 1 are stored as given.
inline constexpr double kClosureTolerance = 1e-9;

/// A point on the simplex: D >= 2 non-negative parts summing to 1.
///
/// Construction validates the parts and closes them when the raw sum is
/// farther than kClosureTolerance from 1, so percent-form rows can be passed
/// straight in. The parts are immutable afterwards.
class Composition {
 public:
  /// Throws Error{NegativeComponent} for negative or non-finite parts,
  /// Error{DegenerateInput} for an all-zero vector and
  /// Error{InvalidArgument} when fewer than two parts are given.
  explicit Composition(std::span<const double> parts);
  Composition(std::initializer_list<double> parts);

  std::span<const double> parts() const noexcept { return parts_; }
  std::size_t size() const noexcept { return parts_.size(); }
  double operator[](std::size_t i) const noexcept { return parts_[i]; }

  bool strictly_positive() const noexcept;
  bool has_zero() const noexcept { return !strictly_positive(); }

  /// The equal-parts composition (1/D, ..., 1/D).
  static Composition barycentre(std::size_t dimension);

  friend bool operator==(const Composition&, const Composition&) = default;

 private:
  struct Trusted {};
  Composition(Trusted, std::vector<double> parts) : parts_(std::move(parts)) {}

  std::vector<double> parts_;

  friend Composition closure(std::span<const double>);
  friend Composition power_transform(const Composition&, double);
};

/// Divides v by its sum. Unlike the constructor this always rescales.
Composition closure(std::span<const double> v);

/// Component-wise power followed by closure: u_i = x_i^a / sum_j x_j^a.
///
/// Zero parts stay zero for a > 0. At a == 0 every positive part receives an
/// equal share of the positive support. A negative exponent with a zero part
/// throws Error{ZeroUnderNegativePower}.
Composition power_transform(const Composition& x, double alpha);

/// Element-wise product with a strictly positive vector, then closure.
Composition perturb(const Composition& x, std::span<const double> p);

/// Running Neumaier-compensated sum.
class CompensatedSum {
 public:
  void add(double v) noexcept {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      carry_ += (sum_ - t) + v;
    } else {
      carry_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const noexcept { return sum_ + carry_; }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> values);

}  // namespace compknn

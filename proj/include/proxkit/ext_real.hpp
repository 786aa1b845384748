#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "proxkit/errors.hpp"

namespace proxkit {

/// Extended real value in R u {+inf}. Functions are proper, so -inf is never
/// representable; arithmetic follows lower-semicontinuous conventions
/// (finite + inf = inf, and a nonnegative scale of +inf stays +inf).
class ExtReal {
 public:
  ExtReal() : v_(0.0) {}
  ExtReal(double v) : v_(v) {  // NOLINT: implicit by design
    if (std::isnan(v) || v == -std::numeric_limits<double>::infinity())
      throw Error("ExtRealInvalid", "value must be finite or +inf");
  }

  static ExtReal infinity() { return ExtReal(std::numeric_limits<double>::infinity()); }

  bool is_finite() const { return std::isfinite(v_); }
  /// Raw double; +inf when not finite.
  double raw() const { return v_; }
  /// Finite value; throws if +inf.
  double finite() const {
    if (!is_finite()) throw eval_infinite("ExtReal is +inf");
    return v_;
  }

  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }
  friend ExtReal operator-(ExtReal a, double b) { return ExtReal(a.v_ - b); }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }

  /// lsc scaling: c * inf = inf for c >= 0; negative scales of +inf are
  /// rejected (they would leave the codomain).
  ExtReal scaled(double c) const {
    if (is_finite()) return ExtReal(c * v_);
    if (c < 0) throw Error("ExtRealInvalid", "negative scale of +inf");
    return infinity();
  }

  std::string str() const { return is_finite() ? std::to_string(v_) : "inf"; }

 private:
  double v_;
};

}  // namespace proxkit

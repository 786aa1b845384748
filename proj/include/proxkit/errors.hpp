#pragma once

#include <stdexcept>
#include <string>

namespace proxkit {

/// Library error with a stable machine-readable code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Error dimension_mismatch(const std::string& what) {
  return Error("DimensionMismatch", what);
}
inline Error empty_list(const std::string& what) { return Error("EmptyList", what); }
inline Error no_subdiff_oracle(const std::string& what) {
  return Error("NoSubdiffOracle", what);
}
inline Error eval_infinite(const std::string& what) { return Error("EvalInfinite", what); }
inline Error not_finite_valued(const std::string& what) {
  return Error("NotFiniteValued", what);
}
inline Error not_c1_tagged(const std::string& what) { return Error("NotC1Tagged", what); }
inline Error not_convex_tagged(const std::string& what) {
  return Error("NotConvexTagged", what);
}
inline Error improper_on_grid(const std::string& what) {
  return Error("ImproperOnGrid", what);
}
inline Error threshold_violated(const std::string& what) {
  return Error("ThresholdViolated", what);
}
inline Error nonpositive_lambda(const std::string& what) {
  return Error("NonpositiveLambda", what);
}
inline Error degenerate_box(const std::string& what) { return Error("DegenerateBox", what); }
inline Error spec_parse_error(const std::string& what) {
  return Error("SpecParseError", what);
}
inline Error usage_error(const std::string& what) { return Error("UsageError", what); }

}  // namespace proxkit

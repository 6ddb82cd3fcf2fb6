#pragma once

#include <stdexcept>
#include <string>

namespace gammashrink {

// A numerical procedure failed to reach its tolerance. The best estimate and
// its error bound travel with the exception.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double estimate, double error_estimate)
      : std::runtime_error(what), estimate_(estimate), error_estimate_(error_estimate) {}

  double estimate() const { return estimate_; }
  double error_estimate() const { return error_estimate_; }

 private:
  double estimate_;
  double error_estimate_;
};

}  // namespace gammashrink

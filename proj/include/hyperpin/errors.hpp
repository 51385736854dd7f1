#pragma once

#include <stdexcept>
#include <string>

namespace hyperpin {

// Base of every error raised by the library. Callers that only care about
// "something in hyperpin went wrong" catch this.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define HYPERPIN_DEFINE_ERROR(Name)            \
  class Name : public Error {                  \
   public:                                     \
    using Error::Error;                        \
  }

// hypergraph
HYPERPIN_DEFINE_ERROR(OverlapError);
HYPERPIN_DEFINE_ERROR(WeightError);
HYPERPIN_DEFINE_ERROR(IndexError);
HYPERPIN_DEFINE_ERROR(SizeError);
HYPERPIN_DEFINE_ERROR(DuplicateEdgeError);
HYPERPIN_DEFINE_ERROR(ParseError);

// spectral
HYPERPIN_DEFINE_ERROR(SingularTransform);
HYPERPIN_DEFINE_ERROR(ConvergenceError);

// msf
HYPERPIN_DEFINE_ERROR(IntegrationError);
HYPERPIN_DEFINE_ERROR(NotType2Error);

// select
HYPERPIN_DEFINE_ERROR(InfeasibleError);
HYPERPIN_DEFINE_ERROR(ExhaustedError);

// cli
HYPERPIN_DEFINE_ERROR(ConfigError);
HYPERPIN_DEFINE_ERROR(UnknownExample);

#undef HYPERPIN_DEFINE_ERROR

// Raised by the network integrator when the stacked state norm passes the
// blow-up threshold. Carries the simulated time at which that happened.
class BlowupError : public Error {
 public:
  BlowupError(const std::string& what, double time) : Error(what), time_(time) {}
  double time() const noexcept { return time_; }

 private:
  double time_;
};

}  // namespace hyperpin

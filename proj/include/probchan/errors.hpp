#pragma once

#include <stdexcept>
#include <string>

namespace probchan {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid parameter (non-positive shape, sigma <= 0, ...).
struct DomainError : Error {
  using Error::Error;
};

// Operands live on different carriers.
struct CarrierMismatch : Error {
  using Error::Error;
};

// Label not present in the relevant label set.
struct UnknownLabel : Error {
  using Error::Error;
};

// Conditioning on a random variable with (near-)zero validity.
struct ZeroValidity : Error {
  using Error::Error;
};

// Bayesian inversion requested at an observation of zero mass.
struct ZeroMassObservation : Error {
  using Error::Error;
};

// Adaptive quadrature exhausted its panel budget.
struct NonConvergent : Error {
  using Error::Error;
};

// Integrand produced NaN or infinity at a quadrature node.
struct NonFinite : Error {
  using Error::Error;
};

}  // namespace probchan

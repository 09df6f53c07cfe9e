#pragma once

#include <span>
#include <string>
#include <vector>

#include "corrsc/distribution.hpp"

namespace corrsc::benchmarks {

/// Two-component correlated mixture for the 6-parameter oscillator model.
GaussianMixture ro6_mixture();

/// Two-component correlated mixture for the 4-parameter filter model.
GaussianMixture filter4_mixture();

/// Mixture used by a named benchmark ("ro6" or "filter4").
GaussianMixture mixture(const std::string& name);

/// Ring-oscillator-like frequency of six threshold-voltage deviations.
///
/// Each of the three stages has two devices with threshold
/// V_i = 0.35 + 0.03 xi_i on a 1.0 V supply and alpha-power-law delay
///   tau(V) = tau0 * ((1 - 0.35) / (1 - V))^1.3,
/// stage delay is the mean of its two device delays, and
///   ro6(xi) = 1 / (2 * sum_s tau_s)
/// with tau0 = 1/12, so ro6(0) = 2.
double ro6(std::span<const double> xi);

/// Detuning grid (21 points in [-1, 1]) used by filter4.
std::vector<double> filter4_frequencies();

/// Transmission of a two-resonance filter at every grid frequency.
///
/// Waveguide-length deviations shift the resonances
///   s_a = 0.02 (xi_1 + xi_2) + 0.005 xi_3,
///   s_b = 0.02 (xi_3 + xi_4) - 0.005 xi_2,
/// and at detuning f
///   T(f) = 1 - 0.5 / (1 + ((f + 0.4 - s_a) / 0.5)^2)
///            - 0.4 / (1 + ((f - 0.4 - s_b) / 0.5)^2).
std::vector<double> filter4(std::span<const double> xi);

/// Names accepted by model_outputs / mixture.
const std::vector<std::string>& names();

/// Output values of the named benchmark at xi (one entry for ro6).
std::vector<double> model_outputs(const std::string& name, std::span<const double> xi);

/// Labels of the outputs (frequencies for filter4, "ro6" for ro6).
std::vector<std::string> output_labels(const std::string& name);

}  // namespace corrsc::benchmarks

#pragma once

namespace respow {

// Standard normal CDF, Phi(z).
double normal_cdf(double z);

// Upper tail 1 - Phi(z), computed via erfc so it stays accurate for large z.
double normal_cdf_upper(double z);

// Inverse standard normal CDF. Rational approximation refined with one
// Halley step on the CDF; relative error below 1e-13 across (0,1).
// Throws std::domain_error for p outside (0,1).
double normal_quantile(double p);

} // namespace respow

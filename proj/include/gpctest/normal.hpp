#pragma once

namespace gpctest {

// Standard normal distribution function. Absolute error below 1e-15.
double normal_cdf(double x);

// Inverse of normal_cdf on (0,1); returns -inf / +inf at 0 / 1.
// Acklam's rational approximation followed by one Halley step, absolute
// error below 1e-12 on [1e-300, 1 - 1e-16].
double normal_quantile(double p);

}  // namespace gpctest

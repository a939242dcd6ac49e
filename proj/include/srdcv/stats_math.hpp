#pragma once

namespace srdcv {

double log_beta(double a, double b);

// Regularized incomplete beta I_x(a, b), relative error ~1e-14 via the
// modified Lentz continued fraction.
double reg_incomplete_beta(double x, double a, double b);

double student_t_cdf(double x, double df);

// CDF of the F distribution with (d1, d2) degrees of freedom.
double f_cdf(double x, double d1, double d2);

double normal_cdf(double z);

// Inverse standard normal CDF (Acklam's approximation plus one Halley step).
double normal_quantile(double p);

} // namespace srdcv

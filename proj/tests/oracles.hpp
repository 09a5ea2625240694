#pragma once

// Test-only reference computations. Nothing here calls into the library's
// numerical code paths.

#include <cstddef>
#include <vector>

namespace oracle {

/// Standard normal CDF evaluated with 50-digit erfc, rounded to double.
double phi(double z);

/// |Phi(z) - p| computed entirely in 50-digit arithmetic.
double phi_residual(double z, double p);

/// Quantile by bisection on the 50-digit CDF.
double quantile(double p);

/// |quantile(a + eps clamped) - quantile(b + eps clamped)| with the clamp
/// and the quantile done independently of the library.
double separation(double rate_a, double rate_b, double epsilon);

struct DenseBox {
  std::vector<double> max;
  std::vector<double> min;
};

/// Elementwise extremes of dense rows.
DenseBox dense_box(const std::vector<std::vector<double>>& rows);

/// Nonzero and inside the box on every coordinate.
bool dense_inside(const DenseBox& box, const std::vector<double>& v);

}  // namespace oracle

#pragma once

#include <functional>

namespace fdnoma::numerics {

/// E1(z) = int_z^inf e^-t / t dt for z > 0. Power series for z <= 1,
/// continued fraction (modified Lentz) above. Underflows to 0 for very
/// large z. Throws std::domain_error for z <= 0.
double exp_integral_e1(double z);

/// e^z E1(z), finite for all z > 0 (approaches 1/z for large z).
double scaled_exp_integral_e1(double z);

using Integrand = std::function<double(double)>;

struct QuadOptions {
  double rel_tol = 1e-8;
  double abs_tol = 0.0;
  int max_subdivisions = 4000;
};

/// Globally adaptive 15-point Gauss-Kronrod quadrature on [lo, hi]. The
/// interval with the largest error estimate is bisected until the summed
/// error drops below max(rel_tol |I|, abs_tol). Throws QuadratureError
/// (carrying the best estimate) when the subdivision budget runs out.
double quad_finite(const Integrand& f, double lo, double hi, const QuadOptions& options = {});

/// int_0^inf f(x) dx through x = t / (1 - t) mapped onto quad_finite.
double quad_semi_infinite(const Integrand& f, const QuadOptions& options = {});

}  // namespace fdnoma::numerics

#include "fdnoma/numerics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "fdnoma/error.hpp"

namespace fdnoma::numerics {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// -gamma - ln z + sum_{k>=1} (-1)^{k+1} z^k / (k k!)
double e1_series(double z) {
  double sum = 0.0;
  double term = 1.0;  // (-1)^{k+1} z^k / k!
  for (int k = 1; k < 200; ++k) {
    term *= (k == 1 ? z : -z / k);
    const double contribution = term / k;
    sum += contribution;
    if (std::abs(contribution) < kEps * std::abs(sum)) break;
  }
  return -std::numbers::egamma - std::log(z) + sum;
}

// e^z E1(z) by the continued fraction 1/(z+1- 1/(z+3- 4/(z+5- ...))).
double e1_scaled_continued_fraction(double z) {
  constexpr double kTiny = 1e-300;
  double b = z + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double delta = c * d;
    h *= delta;
    if (std::abs(delta - 1.0) < kEps) return h;
  }
  throw NumericalError("exp_integral_e1: continued fraction did not converge");
}

void check_domain(double z) {
  if (!(z > 0.0)) {
    std::ostringstream os;
    os << "exp_integral_e1: argument must be positive (got " << z << ")";
    throw std::domain_error(os.str());
  }
}

struct Segment {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate_segment(const Integrand& f, double lo, double hi) {
  using Rule = boost::math::quadrature::gauss_kronrod<double, 15>;
  double error = 0.0;
  bool finite = true;
  auto guarded = [&](double x) {
    const double y = f(x);
    if (!std::isfinite(y)) finite = false;
    return y;
  };
  const double value = Rule::integrate(guarded, lo, hi, 0, 0.0, &error);
  if (!finite) {
    std::ostringstream os;
    os << "quadrature: integrand is not finite on [" << lo << ", " << hi << "]";
    throw NumericalError(os.str());
  }
  // Boost reports the error of the rule on [-1, 1] when it does not
  // recurse; rescale to the segment.
  return {lo, hi, value, error * 0.5 * (hi - lo)};
}

}  // namespace

double exp_integral_e1(double z) {
  check_domain(z);
  if (z <= 1.0) return e1_series(z);
  if (z > 745.0) return 0.0;
  return e1_scaled_continued_fraction(z) * std::exp(-z);
}

double scaled_exp_integral_e1(double z) {
  check_domain(z);
  if (z <= 1.0) return std::exp(z) * e1_series(z);
  return e1_scaled_continued_fraction(z);
}

double quad_finite(const Integrand& f, double lo, double hi, const QuadOptions& options) {
  if (!(lo < hi)) {
    std::ostringstream os;
    os << "quad_finite: empty interval [" << lo << ", " << hi << "]";
    throw std::invalid_argument(os.str());
  }

  std::priority_queue<Segment> pending;
  const Segment whole = evaluate_segment(f, lo, hi);
  pending.push(whole);
  double total = whole.value;
  double total_error = whole.error;

  auto converged = [&] {
    const double target = std::max({options.rel_tol * std::abs(total), options.abs_tol,
                                    std::numeric_limits<double>::min()});
    return total_error <= target;
  };

  int segments = 1;
  while (!converged()) {
    if (segments >= options.max_subdivisions) {
      std::ostringstream os;
      os << "quad_finite: no convergence on [" << lo << ", " << hi << "] after " << segments
         << " subdivisions (estimate " << total << ", error " << total_error << ")";
      throw QuadratureError(os.str(), total, total_error);
    }
    const Segment worst = pending.top();
    pending.pop();
    const double mid = 0.5 * (worst.lo + worst.hi);
    const Segment left = evaluate_segment(f, worst.lo, mid);
    const Segment right = evaluate_segment(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    pending.push(left);
    pending.push(right);
    ++segments;

    // Re-sum from scratch now and then; the running totals drift otherwise.
    if (segments % 64 == 0) {
      auto copy = pending;
      total = 0.0;
      total_error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        total_error += copy.top().error;
        copy.pop();
      }
    }
  }
  return total;
}

double quad_semi_infinite(const Integrand& f, const QuadOptions& options) {
  auto mapped = [&f](double t) {
    const double one_minus = 1.0 - t;
    const double x = t / one_minus;
    if (!std::isfinite(x)) return 0.0;
    const double y = f(x);
    if (y == 0.0) return 0.0;
    return y / (one_minus * one_minus);
  };
  return quad_finite(mapped, 0.0, 1.0, options);
}

}  // namespace fdnoma::numerics

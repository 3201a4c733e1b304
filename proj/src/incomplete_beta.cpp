#include <cmath>
#include <limits>

#include "gmd/errors.hpp"
#include "gmd/estimate.hpp"

namespace gmd {

namespace {

// Continued fraction for I_t(u, v) / front factor, modified Lentz.
double beta_continued_fraction(double t, double u, double v) {
  constexpr int kMaxIter = 10000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = u + v;
  const double qap = u + 1.0;
  const double qam = u - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * t / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIter; ++m) {
    const double md = static_cast<double>(m);
    const double m2 = 2.0 * md;
    double aa = md * (v - md) * t / ((qam + m2) * (u + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(u + md) * (qab + md) * t / ((u + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) return h;
  }
  throw NumericalError("incomplete beta continued fraction did not converge");
}

}  // namespace

double regularized_incomplete_beta(double t, double u, double v) {
  if (!(t >= 0.0 && t <= 1.0) || !(u > 0.0) || !(v > 0.0) || !std::isfinite(u) ||
      !std::isfinite(v)) {
    throw ArgumentError("incomplete beta needs t in [0,1] and u, v > 0");
  }
  if (t == 0.0) return 0.0;
  if (t == 1.0) return 1.0;

  const double log_front = std::lgamma(u + v) - std::lgamma(u) - std::lgamma(v) +
                           u * std::log(t) + v * std::log1p(-t);
  const double front = std::exp(log_front);
  if (t <= u / (u + v)) return front * beta_continued_fraction(t, u, v) / u;
  return 1.0 - front * beta_continued_fraction(1.0 - t, v, u) / v;
}

double correction_factor(const ScaleModel& model) {
  switch (model.family) {
    case ScaleModel::Family::Normal:
      return std::sqrt(M_PI) / 2.0;
    case ScaleModel::Family::Exponential:
      return 1.0;
    case ScaleModel::Family::Gamma: {
      const double k = model.shape;
      if (!(k > 0.0) || !std::isfinite(k)) {
        throw ArgumentError("gamma shape must be finite and positive");
      }
      return 1.0 / (std::sqrt(k) * (2.0 - 4.0 * regularized_incomplete_beta(0.5, k + 1.0, k)));
    }
  }
  throw ArgumentError("unknown scale model");
}

}  // namespace gmd

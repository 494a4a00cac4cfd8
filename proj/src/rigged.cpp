#include "cvdesigns/rigged.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace cvd {

namespace {

constexpr double kTwoPi = 2.0 * M_PI;

struct Ranges {
  double theta_lo, theta_hi;
};

Ranges theta_range(RiggedFamily f) {
  switch (f) {
    case RiggedFamily::KerredPhase:
      return {-M_PI, M_PI};
    case RiggedFamily::Cos:
      return {0.0, M_PI};
    case RiggedFamily::Sin:
      return {-M_PI / 2.0, M_PI / 2.0};
    case RiggedFamily::Rotated:
      return {-M_PI, M_PI};
  }
  throw std::invalid_argument("unknown family");
}

int delta(int a, int b) { return a == b ? 1 : 0; }

}  // namespace

RiggedDesignId rigged_design_id(RiggedFamily family, RiggedConvention convention) {
  RiggedDesignId id;
  id.family = family;
  const Ranges r = theta_range(family);
  id.theta_range = {r.theta_lo, r.theta_hi};
  id.phi_range = {-M_PI, M_PI};
  switch (family) {
    case RiggedFamily::KerredPhase:
      id.fock_prefactor = 0.5;
      id.integral_prefactor = 0.5;
      id.alpha1 = M_PI + 0.5;
      break;
    case RiggedFamily::Cos:
    case RiggedFamily::Sin:
      id.fock_prefactor = 0.25;
      id.integral_prefactor = 0.25;
      id.alpha1 = (2.0 * M_PI + 1.0) / 4.0;
      break;
    case RiggedFamily::Rotated:
      id.fock_prefactor = 0.25;
      id.integral_prefactor = 2.0 / (M_PI * M_PI);
      id.alpha1 = 0.25 + 2.0;
      break;
  }
  id.alpha2 = 1.0;
  if (convention == RiggedConvention::Probability) {
    // rescale the whole measure by 1/alpha1 so the design resolves the
    // identity at t = 1 and can be sampled
    id.fock_prefactor /= id.alpha1;
    id.integral_prefactor /= id.alpha1;
    id.alpha2 /= id.alpha1;
    id.alpha1 = 1.0;
  }
  return id;
}

Complex rigged_coefficient(const RiggedStateSpec& spec, int n) {
  if (n < 0) throw std::invalid_argument("rigged_coefficient: n >= 0");
  const double s = (spec.sign == PhaseSign::Plus) ? 1.0 : -1.0;
  const double np1 = n + 1.0;
  switch (spec.family) {
    case RiggedFamily::KerredPhase:
      return std::exp(Complex(0.0, s * (spec.theta * n + spec.phi * n * static_cast<double>(n)))) /
             std::sqrt(kTwoPi);
    case RiggedFamily::Cos:
      return std::sqrt(2.0 / M_PI) * std::exp(Complex(0.0, spec.phi * n * static_cast<double>(n))) *
             std::sin(np1 * spec.theta);
    case RiggedFamily::Sin:
      return (std::exp(Complex(0.0, np1 * spec.theta)) -
              std::exp(Complex(0.0, -np1 * (spec.theta - M_PI)))) *
             std::exp(Complex(0.0, spec.phi * n * static_cast<double>(n))) / std::sqrt(kTwoPi);
    case RiggedFamily::Rotated:
      return (std::exp(Complex(0.0, np1 * spec.theta)) -
              std::exp(Complex(0.0, -np1 * (spec.theta - spec.gamma)))) *
             std::exp(Complex(0.0, spec.phi * n * static_cast<double>(n))) / std::sqrt(8.0);
  }
  throw std::invalid_argument("unknown family");
}

double rigged2_exact_element(RiggedFamily family, int a, int b, int c, int d) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("rigged2_exact_element: indices >= 0");
  const int pair2 = delta(a, c) * delta(b, d) + delta(a, d) * delta(b, c);
  const int d4 = delta(a, b) * delta(a, c) * delta(a, d);
  switch (family) {
    case RiggedFamily::KerredPhase:
      return pair2 - d4;
    case RiggedFamily::Cos:
    case RiggedFamily::Sin:
      return 2.0 * pair2 - d4;
    case RiggedFamily::Rotated:
      return (M_PI * M_PI / 8.0) * (2.0 * pair2 - d4);
  }
  throw std::invalid_argument("unknown family");
}

double rigged1_exact_element(RiggedFamily family, int a, int b) {
  if (a < 0 || b < 0) throw std::invalid_argument("rigged1_exact_element: indices >= 0");
  if (a != b) return 0.0;
  return (family == RiggedFamily::Rotated) ? M_PI * M_PI : kTwoPi;
}

int rigged_default_grid(int max_index) { return 4 * max_index * max_index + 1; }

Complex rigged2_quadrature_element(RiggedFamily family, int a, int b, int c, int d, int grid_points,
                                   double gamma, PhaseSign sign) {
  if (a < 0 || b < 0 || c < 0 || d < 0) throw std::invalid_argument("rigged2_quadrature_element: indices >= 0");
  // Alias guard.  The phi factor is a single Fourier mode of frequency
  // a^2+b^2-c^2-d^2 over a full period; the theta factor is a trig
  // polynomial whose frequency never exceeds a+b+c+d+4 (and is effectively
  // halved for the half-period cos/sin windows).
  const long phi_freq = std::abs(static_cast<long>(a) * a + static_cast<long>(b) * b -
                                 static_cast<long>(c) * c - static_cast<long>(d) * d);
  const long theta_freq = a + b + c + d + 4;
  long needed = std::max(phi_freq, theta_freq);
  if (family == RiggedFamily::Cos || family == RiggedFamily::Sin)
    needed = std::max(phi_freq, (theta_freq + 1) / 2);
  if (grid_points <= needed)
    throw std::invalid_argument("rigged2_quadrature_element: grid too coarse for the tuple's frequencies");

  const Ranges r = theta_range(family);
  const double theta_len = r.theta_hi - r.theta_lo;
  const double dtheta = theta_len / grid_points;
  const double dphi = kTwoPi / grid_points;

  RiggedStateSpec spec;
  spec.family = family;
  spec.gamma = gamma;
  spec.sign = sign;
  spec.phi = 0.0;

  Complex s_theta = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    spec.theta = r.theta_lo + k * dtheta;
    s_theta += rigged_coefficient(spec, a) * rigged_coefficient(spec, b) *
               std::conj(rigged_coefficient(spec, c)) * std::conj(rigged_coefficient(spec, d));
  }
  s_theta *= dtheta;

  const double sgn = (family == RiggedFamily::KerredPhase && sign == PhaseSign::Minus) ? -1.0 : 1.0;
  const double g = sgn * static_cast<double>(static_cast<long>(a) * a + static_cast<long>(b) * b -
                                             static_cast<long>(c) * c - static_cast<long>(d) * d);
  Complex s_phi = 0.0;
  for (int k = 0; k < grid_points; ++k) {
    const double phi = -M_PI + k * dphi;
    s_phi += std::exp(Complex(0.0, g * phi));
  }
  s_phi *= dphi;
  // the theta factor was evaluated at phi = 0 above, so the full integrand
  // is exactly (theta factor) * e^{i g phi} and the tensor rule separates
  return s_theta * s_phi;
}

double verify_rigged_design(RiggedFamily family, int t, int truncation_dim, RiggedConvention convention) {
  if (t != 1 && t != 2) throw std::invalid_argument("verify_rigged_design: t in {1, 2}");
  const int D = truncation_dim;
  tensor_side(D, t);  // cap guard
  const RiggedDesignId id = rigged_design_id(family, convention);
  double max_err = 0.0;
  if (t == 1) {
    for (int a = 0; a < D; ++a)
      for (int b = 0; b < D; ++b) {
        const double assembled =
            id.fock_prefactor * delta(a, b) + id.integral_prefactor * rigged1_exact_element(family, a, b);
        max_err = std::max(max_err, std::abs(assembled - id.alpha1 * delta(a, b)));
      }
    return max_err;
  }
  for (int a = 0; a < D; ++a)
    for (int b = 0; b < D; ++b)
      for (int c = 0; c < D; ++c)
        for (int d = 0; d < D; ++d) {
          const int d4 = delta(a, b) * delta(a, c) * delta(a, d);
          const double assembled =
              id.fock_prefactor * d4 + id.integral_prefactor * rigged2_exact_element(family, a, b, c, d);
          const double pi2 = 0.5 * (delta(a, c) * delta(b, d) + delta(a, d) * delta(b, c));
          max_err = std::max(max_err, std::abs(assembled - id.alpha2 * pi2));
        }
  return max_err;
}

}  // namespace cvd

#pragma once

#include <complex>
#include <utility>

#include "cvdesigns/fock_core.hpp"

namespace cvd {

enum class RiggedFamily { KerredPhase, Cos, Sin, Rotated };

// Sign of the Kerred phase exponent e^{s i (theta n + phi n^2)}.  The two
// choices are complex conjugates of each other and every design identity is
// invariant under the flip.
enum class PhaseSign { Plus, Minus };

// One member of a non-normalizable state family, identified by its angles.
struct RiggedStateSpec {
  RiggedFamily family = RiggedFamily::KerredPhase;
  double theta = 0.0;
  double phi = 0.0;
  double gamma = 0.0;  // used by Rotated only
  PhaseSign sign = PhaseSign::Plus;
};

// Measure normalization for the assembled design.
//  Appendix:    Pi_2 = pre sum_n (nn)^2 + pre Int (chi chi)^2, alpha_2 = 1.
//  Probability: the same rescaled so that alpha_1 = 1 (the sampling form).
enum class RiggedConvention { Appendix, Probability };

struct RiggedDesignId {
  RiggedFamily family;
  bool includes_fock = true;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double fock_prefactor = 0.0;
  double integral_prefactor = 0.0;
  std::pair<double, double> theta_range;
  std::pair<double, double> phi_range;
};

RiggedDesignId rigged_design_id(RiggedFamily family, RiggedConvention convention);

// c_n(theta, phi) of the family, including its fixed normalization:
//   KerredPhase: (2 pi)^{-1/2} e^{s i(theta n + phi n^2)}
//   Cos:         sqrt(2/pi) e^{i phi n^2} sin((n+1) theta)
//   Sin:         (2 pi)^{-1/2} e^{i phi n^2} (e^{i(n+1)theta} - e^{-i(n+1)(theta-pi)})
//   Rotated:     8^{-1/2}    e^{i phi n^2} (e^{i(n+1)theta} - e^{-i(n+1)(theta-gamma)})
Complex rigged_coefficient(const RiggedStateSpec& spec, int n);

// Closed form of Int <a|chi><b|chi><chi|c><chi|d> over the family's stated
// (theta, phi) ranges, by Kronecker-delta/Diophantine reduction:
//   phase:   d_ac d_bd + d_ad d_bc - d4
//   cos/sin: 2(d_ac d_bd + d_ad d_bc) - d4
//   rotated: (pi^2/8) (2(d_ac d_bd + d_ad d_bc) - d4)
// where d4 = 1 iff a = b = c = d.
double rigged2_exact_element(RiggedFamily family, int a, int b, int c, int d);

// Closed form of Int <a|chi><chi|b>: 2 pi d_ab (phase/cos/sin),
// pi^2 d_ab (rotated).
double rigged1_exact_element(RiggedFamily family, int a, int b);

// Tensor-product uniform quadrature of the same double integral with
// grid_points abscissas per axis.  The integrand separates into a theta
// factor and a phi Fourier mode, and the rule is exact once grid_points
// exceeds the per-axis frequency bound; below the bound this throws.
Complex rigged2_quadrature_element(RiggedFamily family, int a, int b, int c, int d, int grid_points,
                                   double gamma = M_PI, PhaseSign sign = PhaseSign::Plus);

// Per-axis abscissa count that makes the quadrature exact for all tuples
// with indices <= max_index.
int rigged_default_grid(int max_index);

// Assembles prefactor_fock sum_{n<D} (|n><n|)^{ot t} + prefactor_int *
// (exact integral elements) on all Fock indices < D and returns the max
// element deviation from alpha_t Pi_t.
double verify_rigged_design(RiggedFamily family, int t, int truncation_dim,
                            RiggedConvention convention = RiggedConvention::Appendix);

}  // namespace cvd

#pragma once

#include "cvdesigns/classical_designs.hpp"
#include "cvdesigns/fock_core.hpp"

namespace cvd {

// Pure state on a truncated space.
struct StateVector {
  TruncatedSpace space;
  Vector amps;

  StateVector(TruncatedSpace s, Vector a, bool require_normalized = true);
  double norm() const { return amps.norm(); }
};

// Weighted set of pure states with weights summing to 1.
struct CPDesign {
  TruncatedSpace space;
  std::vector<Vector> states;
  std::vector<double> weights;

  explicit CPDesign(TruncatedSpace s) : space(s) {}
  size_t size() const { return weights.size(); }
  void validate() const;
};

// Combine a simplex t-design on Delta^{d-1} with a torus t-design carrying d
// angle coordinates (coordinate j <-> basis level j) into states
// |p,phi> = sum_j sqrt(p_j) e^{i phi_j} |j>.  States that coincide up to a
// global phase (boundary points of the simplex) are merged by summing
// weights.
CPDesign cp_from_simplex_torus(const WeightedPointSet& simplex, const WeightedPointSet& torus, int t);

// Computational basis states plus the p^2 phase states
// |q1,q2> = (m+1)^{-1/2} sum_j e^{2 pi i (q1 j + q2 j^2)/p} |j>, with
// m = d-1 and p the smallest prime > max(2, m).  A 2-design; reduces to a
// complete MUB set when d is prime.
CPDesign construction1_mub_design(int d);

// Uniformly weighted 2-design of p^2 d states built from the Hammer-Stroud
// simplex design and the prime torus design.
CPDesign construction2_uniform_design(int d);

// Largest |eigenvalue| of sum_w (psi psi)^{ot t} - Pi_t / Tr Pi_t.
double verify_cp_design(const CPDesign& design, int t);

// Born-rule projection to the simplex; coincident probability vectors are
// merged (per-coordinate tolerance merge_tol).
WeightedPointSet born_project(const CPDesign& design, double merge_tol = 1e-10);

// Extremal points of the slice of Delta^{d-1} with mean occupation
// sum_j j q_j = N; d-1 points, each satisfying the constraint exactly.
std::vector<Eigen::VectorXd> constrained_extremal_points(int d, double N);

// First moment of states with <n> = 1, as a unit-trace diagonal operator:
// (1 - H_{d-1}/(d-1)) |0><0| + (1/(d-1)) sum_{k>=1} (1/k) |k><k|.
ComplexOperator constrained_first_moment(int d);

// True if |<a|b>| > 1 - tol, i.e. equal as rays in CP^{d-1}.
bool same_ray(const Vector& a, const Vector& b, double tol = 1e-10);

}  // namespace cvd

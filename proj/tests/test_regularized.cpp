#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvdesigns/regularized.hpp"
#include "cvdesigns/rigged.hpp"

using namespace cvd;

TEST_CASE("regularized projector") {
  SUBCASE("identity regularizer reproduces Pi_2") {
    const TruncatedSpace space(4);
    const auto reg = Regularizer::diagonal(Eigen::VectorXd::Ones(4), space);
    const auto pi = symmetric_projector(space, 2);
    CHECK(max_abs_diff(regularized_projector(reg, 2).mat, pi.mat) < 1e-14);
  }
  SUBCASE("hard cutoff embeds the d-dimensional projector") {
    const TruncatedSpace space(5);
    const auto reg = Regularizer::hard(3, space);
    const auto pid = regularized_projector(reg, 2);
    CHECK(pid.mat.trace().real() == doctest::Approx(symmetric_projector_trace(3, 2)));
    CHECK(regularized_projector_trace(reg, 2) == doctest::Approx(6.0));  // C(4,2)
    CHECK(pid.is_hermitian());
  }
  SUBCASE("soft cutoff trace identity 2 Tr Pi_2 = (Tr R^2)^2 + Tr R^4") {
    const double beta = 0.5;
    const TruncatedSpace space(25);
    // compare the dense trace against truncated geometric sums
    Eigen::VectorXd diag(25);
    for (int n = 0; n < 25; ++n) diag[n] = std::exp(-beta * n);
    const auto reg_trunc = Regularizer::diagonal(diag, space);
    const auto dense = regularized_projector(reg_trunc, 2);
    double tr2 = 0.0, tr4 = 0.0;
    for (int n = 0; n < 25; ++n) {
      tr2 += std::exp(-2.0 * beta * n);
      tr4 += std::exp(-4.0 * beta * n);
    }
    CHECK(2.0 * dense.mat.trace().real() == doctest::Approx(tr2 * tr2 + tr4).epsilon(1e-12));
    // the closed-form soft trace agrees with the truncated one up to the tail
    const auto reg = Regularizer::soft(beta, space);
    CHECK(regularized_projector_trace(reg, 2) ==
          doctest::Approx(dense.mat.trace().real()).epsilon(1e-9));
  }
}

TEST_CASE("regularized Kerred design") {
  SUBCASE("weights follow the closed form and sum to one") {
    const double beta = 0.5;
    const auto ens = regularized_kerred_design(beta, 40);
    const double w0_expected = 4.0 * std::pow(std::sinh(beta), 2) * std::cosh(beta) / std::exp(3.0 * beta);
    CHECK(ens.fock_weights[0] == doctest::Approx(w0_expected));
    const double w3_expected = w0_expected / std::exp(4.0 * beta * 3);
    CHECK(ens.fock_weights[3] == doctest::Approx(w3_expected));
    CHECK(ens.phase_density ==
          doctest::Approx(std::cosh(beta) / (std::exp(beta) * 4.0 * M_PI * M_PI)));
    CHECK(ens.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("phase coherent state mean energy is coth(beta)/2 - 1/2") {
    const double beta = 0.7;
    // <n> of the normalized state sqrt(1-e^{-2b}) sum e^{-b n + ...}|n>
    const double q = std::exp(-2.0 * beta);
    double norm = 0.0, energy = 0.0;
    for (int n = 0; n < 200; ++n) {
      norm += std::pow(q, n);
      energy += n * std::pow(q, n);
    }
    CHECK(energy / norm == doctest::Approx(0.5 / std::tanh(beta) - 0.5).epsilon(1e-10));
  }
  SUBCASE("second moment matches Pi_2^R / Tr Pi_2^R") {
    CHECK(regularized_second_moment_error(regularized_kerred_design(0.5, 24)) < 1e-12);
    CHECK(regularized_second_moment_error(regularized_kerred_design(1.0, 16)) < 1e-12);
  }
}

TEST_CASE("frame potential") {
  SUBCASE("kerred ensemble saturates the bound") {
    for (double beta : {0.5, 1.0}) {
      const auto ens = regularized_kerred_design(beta, 24);
      const auto reg = Regularizer::soft(beta, TruncatedSpace(24));
      const double v = frame_potential(ens, 2);
      const double bound = frame_potential_bound(reg, 2);
      CHECK(v == doctest::Approx(bound).epsilon(1e-8));
    }
  }
  SUBCASE("a weight perturbation pushes strictly above the bound") {
    const auto ens = regularized_kerred_design(0.5, 24);
    const auto reg = Regularizer::soft(0.5, TruncatedSpace(24));
    const auto bumped = perturb_fock_weight(ens, 2, 0.01);
    CHECK(frame_potential(bumped, 2) > frame_potential_bound(reg, 2) + 1e-3);
  }
  SUBCASE("single state has V = 1 under the identity regularizer") {
    WeightedPointSet states;
    states.kind = WeightedPointSet::Kind::State;
    Vector psi = Vector::Zero(3);
    psi[1] = 1.0;
    states.state_points.push_back(psi);
    states.weights.push_back(1.0);
    const auto reg = Regularizer::diagonal(Eigen::VectorXd::Ones(3), TruncatedSpace(3));
    CHECK(frame_potential(states, reg, 2) == doctest::Approx(1.0));
    CHECK(frame_potential(states, reg, 7) == doctest::Approx(1.0));
  }
  SUBCASE("two orthogonal states sit strictly above the t = 2 bound") {
    WeightedPointSet states;
    states.kind = WeightedPointSet::Kind::State;
    for (int i = 0; i < 2; ++i) {
      Vector psi = Vector::Zero(2);
      psi[i] = 1.0;
      states.state_points.push_back(psi);
      states.weights.push_back(0.5);
    }
    const auto reg = Regularizer::diagonal(Eigen::VectorXd::Ones(2), TruncatedSpace(2));
    CHECK(frame_potential(states, reg, 2) == doctest::Approx(0.5));
    CHECK(frame_potential_bound(reg, 2) == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("bound values") {
    CHECK(frame_potential_bound(Regularizer::diagonal(Eigen::VectorXd::Ones(2), TruncatedSpace(2)), 2) ==
          doctest::Approx(1.0 / 3.0));
    CHECK(frame_potential_bound(Regularizer::hard(1, TruncatedSpace(4)), 2) == doctest::Approx(1.0));
    const double beta = 0.3;
    const double t2 = 1.0 / (1.0 - std::exp(-2.0 * beta));
    const double t4 = 1.0 / (1.0 - std::exp(-4.0 * beta));
    CHECK(frame_potential_bound(Regularizer::soft(beta, TruncatedSpace(10)), 2) ==
          doctest::Approx(2.0 / (t2 * t2 + t4)));
  }
  SUBCASE("support violation for singular regularizers") {
    WeightedPointSet states;
    states.kind = WeightedPointSet::Kind::State;
    Vector psi = Vector::Zero(3);
    psi[2] = 1.0;
    states.state_points.push_back(psi);
    states.weights.push_back(1.0);
    const auto reg = Regularizer::hard(2, TruncatedSpace(3));
    CHECK_THROWS_AS(frame_potential(states, reg, 2), std::domain_error);
  }
}

TEST_CASE("first-moment deviation identity") {
  SUBCASE("empirical equals predicted") {
    for (double beta : {0.25, 0.5, 1.0}) {
      const auto ens = regularized_kerred_design(beta, 30);
      const auto [empirical, predicted] = reduced_moment_deviation(ens);
      CHECK((empirical - predicted).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("relative deviation from the exact 1-design is 1/(2 Tr R^2)") {
    for (double beta : {0.25, 0.5, 1.0}) {
      const auto ens = regularized_kerred_design(beta, 30);
      const double tr2 = 1.0 / (1.0 - std::exp(-2.0 * beta));
      CHECK(reduced_moment_relative_deviation(ens) == doctest::Approx(0.5 / tr2).epsilon(1e-10));
    }
  }
  SUBCASE("identity regularizer limit: finite-dimensional consistency") {
    // ((d) I + I)/(d(d+1)) = I/d when R = I on C^d
    const int d = 7;
    const double lhs = (d + 1.0) / (d * (d + 1.0));
    CHECK(lhs == doctest::Approx(1.0 / d));
  }
}

TEST_CASE("soft cutoff maps rigged states into L2, power-law does not reach Schwartz") {
  // e^{-beta n} tames the flat phase-state amplitudes
  double soft_norm = 0.0;
  for (int n = 0; n < 4000; ++n) soft_norm += std::exp(-0.1 * n);
  CHECK(std::isfinite(soft_norm));
  // (1+n)^{-2} gives a normalizable vector whose high moments diverge:
  // partial sums of <n^6> keep growing with the truncation
  auto partial = [](int D) {
    double num = 0.0, den = 0.0;
    for (int n = 0; n < D; ++n) {
      const double a2 = std::pow(1.0 + n, -4.0);
      num += std::pow(static_cast<double>(n), 6.0) * a2;
      den += a2;
    }
    return num / den;
  };
  CHECK(partial(2000) > 2.0 * partial(1000));
  CHECK(partial(4000) > 2.0 * partial(2000));
}

TEST_CASE("displaced Fock coefficients") {
  CHECK(displaced_fock_coefficients(0)[0] == doctest::Approx(1.0));
  const auto c1 = displaced_fock_coefficients(1);
  CHECK(c1[0] == doctest::Approx(0.5));
  CHECK(c1[1] == doctest::Approx(0.5));
  const auto c2 = displaced_fock_coefficients(2);
  CHECK(c2[0] == doctest::Approx(3.0 / 8.0));
  CHECK(c2[1] == doctest::Approx(1.0 / 4.0));
  CHECK(c2[2] == doctest::Approx(3.0 / 8.0));
  SUBCASE("rows sum to one") {
    for (int l : {0, 1, 2, 5, 11, 40}) {
      CHECK(displaced_fock_coefficients(l).sum() == doctest::Approx(1.0).epsilon(1e-12));
    }
  }
  SUBCASE("matches the beam-splitter matrix elements") {
    const int D = 12;
    const Matrix u = beam_splitter_unitary(D);
    for (int l : {0, 1, 2}) {
      const auto c = displaced_fock_coefficients(l);
      for (int n = 0; n <= l; ++n) {
        const long row = static_cast<long>(2 * l - n) * D + n;
        const long col = static_cast<long>(l) * D + l;
        CHECK(std::norm(u(row, col)) == doctest::Approx(c[n]).epsilon(1e-10));
      }
    }
  }
  CHECK_THROWS_AS(displaced_fock_coefficients(41), std::domain_error);
}

TEST_CASE("displaced Fock weights") {
  CHECK(displaced_fock_weights(0)[0] == doctest::Approx(1.0));
  const auto b1 = displaced_fock_weights(1);
  CHECK(b1[1] == doctest::Approx(2.0));
  CHECK(b1[0] == doctest::Approx(0.0));
  SUBCASE("substitution identity for ell_max <= 6, with negative entries") {
    for (int lm = 1; lm <= 6; ++lm) {
      const auto b = displaced_fock_weights(lm);
      bool has_negative = false;
      for (int n = 0; n <= lm; ++n) {
        double acc = 0.0;
        for (int l = n; l <= lm; ++l) acc += b[l] * displaced_fock_coefficients(l)[n];
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-10));
        if (b[n] < 0.0) has_negative = true;
      }
      CHECK(has_negative);
    }
  }
}

TEST_CASE("beam splitter unitary") {
  const int D = 10;
  const Matrix u = beam_splitter_unitary(D);
  CHECK((u * u.adjoint() - Matrix::Identity(D * D, D * D)).cwiseAbs().maxCoeff() < 1e-10);
  SUBCASE("partial trace of U |ll><ll| U^dag is diagonal on even Fock states <= 2l") {
    const int l = 2;
    const long col = static_cast<long>(l) * D + l;
    Matrix m2 = Matrix::Zero(D, D);
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k) {
        Complex s = 0.0;
        for (int i = 0; i < D; ++i)
          s += u(static_cast<long>(i) * D + j, col) * std::conj(u(static_cast<long>(i) * D + k, col));
        m2(j, k) = s;
      }
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k) {
        if (j == k && j % 2 == 0 && j <= 2 * l) continue;
        CHECK(std::abs(m2(j, k)) < 1e-10);
      }
  }
}

TEST_CASE("displaced Fock design verification") {
  CHECK(verify_displaced_fock_design(0, 12) < 1e-10);
  CHECK(verify_displaced_fock_design(1, 12) < 1e-9);
  CHECK(verify_displaced_fock_design(2, 16) < 1e-8);
}

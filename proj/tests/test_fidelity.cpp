#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cvdesigns/fidelity.hpp"
#include "cvdesigns/rng.hpp"

using namespace cvd;

TEST_CASE("loss channel Kraus structure") {
  SUBCASE("kappa = 1 is the identity channel") {
    const auto ch = loss_kraus(1.0, 6, 6);
    CHECK(max_abs_diff(ch.kraus[0], Matrix::Identity(6, 6)) == 0.0);
    for (int i = 1; i < 6; ++i) CHECK(ch.kraus[i].cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("kappa = 0 maps every Fock state to vacuum") {
    const auto ch = loss_kraus(0.0, 6, 6);
    Matrix rho = Matrix::Zero(6, 6);
    rho(2, 2) = 1.0;
    const auto out = apply_channel(ch, ComplexOperator(TruncatedSpace(6), 1, rho));
    Matrix vac = Matrix::Zero(6, 6);
    vac(0, 0) = 1.0;
    CHECK(max_abs_diff(out.mat, vac) < 1e-14);
  }
  SUBCASE("matrix element <0|K_1|1> = sqrt(1-kappa^2)") {
    const double kappa = 0.3;
    const auto ch = loss_kraus(kappa, 5, 5);
    CHECK(ch.kraus[1](0, 1).real() == doctest::Approx(std::sqrt(1.0 - kappa * kappa)));
  }
  SUBCASE("completeness on protected levels") {
    const auto ch = loss_kraus(0.7, 12, 12);
    Matrix sum = Matrix::Zero(12, 12);
    for (const auto& k : ch.kraus) sum += k.adjoint() * k;
    for (int n = 0; n < 12; ++n) CHECK(sum(n, n).real() == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("stripes match the dense matrices") {
    const auto ch = loss_kraus(0.55, 10, 10);
    const auto st = loss_stripes(0.55, 10, 10);
    for (int i = 0; i < 10; ++i)
      for (int m = 0; m + i < 10; ++m)
        CHECK(ch.kraus[i](m, m + i).real() == doctest::Approx(st.stripe[i][m]));
  }
}

TEST_CASE("TMSV and thermal state") {
  const TruncatedSpace space(40);
  SUBCASE("hard cutoff gives a maximally entangled state") {
    const auto reg = Regularizer::hard(4, space);
    const Vector phi = tmsv_state(reg, 40);
    for (int n = 0; n < 4; ++n)
      CHECK(std::abs(phi[static_cast<long>(n) * 40 + n]) == doctest::Approx(0.5));
    CHECK(phi.norm() == doctest::Approx(1.0));
  }
  SUBCASE("soft cutoff Schmidt coefficients follow tanh powers of the squeezing") {
    const double beta = 0.5;
    const auto reg = Regularizer::soft(beta, space);
    const Vector phi = tmsv_state(reg, 40);
    const double r = tmsv_squeezing(beta);
    CHECK(std::tanh(r) == doctest::Approx(std::exp(-beta / 2.0)));
    // lambda_n = tanh^n r / cosh r on the untruncated state
    for (int n : {0, 1, 5}) {
      const double expect = std::pow(std::tanh(r), n) / std::cosh(r);
      CHECK(std::abs(phi[static_cast<long>(n) * 40 + n]) == doctest::Approx(expect).epsilon(1e-8));
    }
  }
  SUBCASE("partial trace identity Tr_2 |phi><phi| = rho_R") {
    const double beta = 0.5;
    const auto reg = Regularizer::soft(beta, TruncatedSpace(30));
    const Vector phi = tmsv_state(reg, 30);
    const ComplexOperator op(TruncatedSpace(30), 2, phi * phi.adjoint());
    const auto reduced = partial_trace(op, {0});
    CHECK(max_abs_diff(reduced.mat, thermal_state(reg).mat) < 1e-10);
  }
}

TEST_CASE("effective dimension") {
  CHECK(effective_dimension(Regularizer::hard(5, TruncatedSpace(10))) == doctest::Approx(5.0));
  const double nbar = 4.0;
  const double beta = std::log(1.0 + 1.0 / nbar);
  const auto reg = Regularizer::soft(beta, TruncatedSpace(10));
  CHECK(effective_dimension(reg) == doctest::Approx(2.0 * nbar + 1.0));
  SUBCASE("soft case equals 2 <n>_thermal + 1") {
    const int D = 400;
    double tr = 0.0, energy = 0.0;
    for (int n = 0; n < D; ++n) {
      tr += std::exp(-beta * n);
      energy += n * std::exp(-beta * n);
    }
    CHECK(effective_dimension(reg) == doctest::Approx(2.0 * energy / tr + 1.0).epsilon(1e-8));
  }
  Eigen::VectorXd two = Eigen::VectorXd::Zero(5);
  two[0] = two[1] = 1.0;
  CHECK(effective_dimension(Regularizer::diagonal(two, TruncatedSpace(5))) == doctest::Approx(2.0));
}

TEST_CASE("entanglement fidelity") {
  const int D = 120;
  SUBCASE("identity channel gives 1") {
    const auto reg = Regularizer::soft(0.4, TruncatedSpace(D));
    CHECK(entanglement_fidelity(loss_stripes(1.0, D, D), reg) == doctest::Approx(1.0).epsilon(1e-10));
  }
  SUBCASE("soft closed form at nbar = 4, kappa = 0.5") {
    const double nbar = 4.0, kappa = 0.5;
    const double beta = std::log(1.0 + 1.0 / nbar);
    const auto reg = Regularizer::soft(beta, TruncatedSpace(D));
    const auto ch = loss_stripes(kappa, D, D);
    CHECK(loss_fe_soft(nbar, kappa) == doctest::Approx(1.0 / 9.0));
    CHECK(entanglement_fidelity(ch, reg) == doctest::Approx(1.0 / 9.0).epsilon(1e-8));
    CHECK(entanglement_fidelity_two_mode(ch, reg) == doctest::Approx(1.0 / 9.0).epsilon(1e-8));
  }
  SUBCASE("hard closed form at d = 5, kappa = 0.5") {
    const auto reg = Regularizer::hard(5, TruncatedSpace(D));
    const auto ch = loss_stripes(0.5, D, D);
    const double expect = std::pow(1.0 - std::pow(0.5, 5), 2) / (0.25 * 25.0);
    CHECK(loss_fe_hard(5, 0.5) == doctest::Approx(expect));
    CHECK(expect == doctest::Approx(0.15015625));
    CHECK(entanglement_fidelity(ch, reg) == doctest::Approx(expect).epsilon(1e-10));
  }
  SUBCASE("dense-Kraus path agrees at small D") {
    const auto reg = Regularizer::soft(0.5, TruncatedSpace(30));
    const auto dense = loss_kraus(0.6, 30, 30);
    const auto stripes = loss_stripes(0.6, 30, 30);
    CHECK(entanglement_fidelity(dense, reg) ==
          doctest::Approx(entanglement_fidelity(stripes, reg)).epsilon(1e-12));
  }
}

TEST_CASE("average fidelities") {
  const int D = 160;
  const double nbar = 4.0, kappa = 0.5;
  const double beta = std::log(1.0 + 1.0 / nbar);
  const auto ch = loss_stripes(kappa, D, D);
  SUBCASE("F2 closed form value at nbar = 4, kappa = 0.5 is 1/4") {
    CHECK(loss_f2_soft_halfbeta(nbar, kappa) == doctest::Approx(0.25));
  }
  SUBCASE("relation and design paths agree with the closed forms") {
    const auto half = Regularizer::soft(beta / 2.0, TruncatedSpace(D));
    CHECK(avg_fidelity_2(ch, half, FidelityMethod::Relation) ==
          doctest::Approx(loss_f2_soft_halfbeta(nbar, kappa)).epsilon(1e-7));
    CHECK(avg_fidelity_2(ch, half, FidelityMethod::DesignExpectation) ==
          doctest::Approx(loss_f2_soft_halfbeta(nbar, kappa)).epsilon(1e-7));
    const auto soft = Regularizer::soft(beta, TruncatedSpace(D));
    CHECK(avg_fidelity_1(ch, soft, FidelityMethod::Relation) ==
          doctest::Approx(loss_f1_soft(nbar, kappa)).epsilon(1e-7));
    CHECK(avg_fidelity_1(ch, soft, FidelityMethod::DesignExpectation) ==
          doctest::Approx(loss_f1_soft(nbar, kappa)).epsilon(1e-7));
  }
  SUBCASE("hard cutoff closed form at kappa = 0") {
    CHECK(loss_f12_hard(4.0, 0.0) == doctest::Approx(0.2));
    const auto hard = Regularizer::hard(5, TruncatedSpace(D));
    const auto ch0 = loss_stripes(0.0, D, D);
    CHECK(avg_fidelity_2(ch0, hard, FidelityMethod::Relation) == doctest::Approx(0.2).epsilon(1e-10));
    CHECK(avg_fidelity_2(ch0, hard, FidelityMethod::DesignExpectation) ==
          doctest::Approx(0.2).epsilon(1e-10));
    CHECK(avg_fidelity_1(ch0, hard, FidelityMethod::DesignExpectation) ==
          doctest::Approx(avg_fidelity_2(ch0, hard, FidelityMethod::DesignExpectation)));
  }
  SUBCASE("loss is trace preserving on the protected subspace") {
    const auto hard = Regularizer::hard(5, TruncatedSpace(D));
    // Tr(L(P_d/d) P_d) = 1
    double acc = 0.0;
    for (int i = 0; i < D; ++i)
      for (int m = 0; m + i < 5; ++m) acc += ch.stripe[i][m] * ch.stripe[i][m] / 5.0;
    CHECK(acc == doctest::Approx(1.0).epsilon(1e-12));
    (void)hard;
  }
}

TEST_CASE("coherent-state average fidelity") {
  CHECK(coherent_fidelity(4.0, 1.0) == doctest::Approx(1.0));
  CHECK(coherent_fidelity(4.0, 0.0) == doctest::Approx(0.2));
  CHECK(coherent_fidelity(4.0, 0.5) == doctest::Approx(0.5));
  SUBCASE("Monte Carlo agrees within 1e-3") {
    for (double kappa : {0.0, 0.5, 0.9}) {
      const double mc = coherent_fidelity_mc(4.0, kappa, 32, 100000, 7);
      CHECK(std::abs(mc - coherent_fidelity(4.0, kappa)) < 1e-3);
    }
  }
}

TEST_CASE("moment identities for random operators") {
  const int D = 24;
  StreamRng rng(19);
  Matrix a(D, D), b(D, D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      a(i, j) = Complex(rng.normal(), rng.normal());
      b(i, j) = Complex(rng.normal(), rng.normal());
    }
  a = 0.5 * (a + a.adjoint()).eval();
  b = 0.5 * (b + b.adjoint()).eval();
  const auto rep = moment_identities_check(0.5, D, a, b);
  CHECK(rep.operator_deviation < 1e-8);
  CHECK(rep.scalar_deviation < 1e-8);
  SUBCASE("A = B = I reduces to normalization") {
    const Matrix eye = Matrix::Identity(D, D);
    const auto rep_id = moment_identities_check(0.5, D, eye, eye);
    CHECK(rep_id.scalar_deviation < 1e-10);
  }
}

TEST_CASE("loss curve") {
  const std::vector<double> kappas = {0.0, 0.5, 0.9, 1.0};
  const auto reports = loss_curve(4.0, kappas, 120, 120, 20000, 3);
  REQUIRE(reports.size() == 4);
  SUBCASE("kappa = 0 coincidence of the entanglement fidelities") {
    CHECK(reports[0].fe_soft == doctest::Approx(0.04));
    CHECK(reports[0].fe_hard == doctest::Approx(0.04));
  }
  SUBCASE("kappa = 1 sends every fidelity to 1") {
    const auto& r = reports[3];
    for (double v : {r.fe_soft, r.fe_hard, r.f1_soft, r.f2_soft_halfbeta, r.f12_hard, r.f_coh})
      CHECK(v == doctest::Approx(1.0));
  }
  SUBCASE("analytic and numeric twins agree") {
    for (const auto& r : reports) {
      CHECK(std::abs(r.fe_soft - r.fe_soft_numeric) < 1e-6);
      CHECK(std::abs(r.fe_hard - r.fe_hard_numeric) < 1e-6);
      CHECK(std::abs(r.f1_soft - r.f1_soft_numeric) < 1e-6);
      CHECK(std::abs(r.f2_soft_halfbeta - r.f2_soft_halfbeta_numeric) < 1e-6);
      CHECK(std::abs(r.f12_hard - r.f12_hard_numeric) < 1e-6);
      CHECK(std::abs(r.f_coh - r.f_coh_numeric) < 1e-3);
    }
  }
  SUBCASE("curve ordering near unit transmissivity") {
    const auto& r = reports[2];  // kappa = 0.9
    CHECK(r.f_coh == doctest::Approx(1.0 / 1.04));
    CHECK(r.fe_soft == doctest::Approx(1.0 / 1.96));
    CHECK(r.f_coh > r.fe_soft);
    CHECK(r.f_coh > r.f2_soft_halfbeta);
  }
  SUBCASE("fidelities are monotone in kappa") {
    for (size_t i = 1; i < reports.size(); ++i) {
      CHECK(reports[i].fe_soft >= reports[i - 1].fe_soft - 1e-12);
      CHECK(reports[i].fe_hard >= reports[i - 1].fe_hard - 1e-12);
      CHECK(reports[i].f1_soft >= reports[i - 1].f1_soft - 1e-12);
      CHECK(reports[i].f2_soft_halfbeta >= reports[i - 1].f2_soft_halfbeta - 1e-12);
      CHECK(reports[i].f12_hard >= reports[i - 1].f12_hard - 1e-12);
      CHECK(reports[i].f_coh >= reports[i - 1].f_coh - 1e-12);
    }
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cvdesigns/json_io.hpp"

using namespace cvd;

TEST_CASE("point set round trip preserves verification") {
  // one property-style round trip per kind instead of a field-by-field matrix
  SUBCASE("simplex") {
    const auto ens = simplex_extremal_centroid_2design(3);
    const auto back = point_set_from_json(point_set_to_json(ens));
    CHECK(back.kind == WeightedPointSet::Kind::Simplex);
    CHECK(verify_simplex_design(back, 2) < 1e-12);
  }
  SUBCASE("torus") {
    const auto ens = torus_prime_2design(3);
    const auto back = point_set_from_json(point_set_to_json(ens));
    CHECK(verify_torus_design(back, 2) < 1e-12);
  }
  SUBCASE("state kind") {
    WeightedPointSet states;
    states.kind = WeightedPointSet::Kind::State;
    Vector v(2);
    v[0] = Complex(0.6, 0.0);
    v[1] = Complex(0.0, 0.8);
    states.state_points.push_back(v);
    states.weights.push_back(1.0);
    const auto back = point_set_from_json(point_set_to_json(states));
    CHECK((back.state_points[0] - v).norm() < 1e-15);
  }
}

TEST_CASE("cp design round trip") {
  const auto design = construction1_mub_design(3);
  const auto back = cp_design_from_json(cp_design_to_json(design));
  CHECK(verify_cp_design(back, 2) < 1e-10);
  CHECK(back.space.dim == 3);
}

TEST_CASE("regularizer round trip") {
  const auto soft = regularizer_from_json(regularizer_to_json(Regularizer::soft(0.5, TruncatedSpace(8))));
  CHECK(soft.kind == Regularizer::Kind::SoftEnergy);
  CHECK(soft.beta == doctest::Approx(0.5));
  const auto hard = regularizer_from_json(regularizer_to_json(Regularizer::hard(3, TruncatedSpace(8))));
  CHECK(hard.cutoff == 3);
  Eigen::VectorXd diag(3);
  diag << 1.0, 0.0, 0.25;
  const auto custom =
      regularizer_from_json(regularizer_to_json(Regularizer::diagonal(diag, TruncatedSpace(3))));
  CHECK(custom.custom[2] == doctest::Approx(0.25));
}

TEST_CASE("ensemble descriptor round trip") {
  const auto ens = regularized_kerred_design(0.5, 16);
  const auto back = ensemble_from_json(ensemble_to_json(ens));
  CHECK(back.beta == doctest::Approx(ens.beta));
  CHECK(back.fock_weights.size() == ens.fock_weights.size());
  CHECK(back.phase_density == doctest::Approx(ens.phase_density));
  CHECK_FALSE(back.signed_weights);
}

TEST_CASE("state parsing") {
  SUBCASE("pure") {
    const auto rho = state_from_json(R"({"kind":"pure","dim":2,"amps":[1,0,0,0]})");
    CHECK(rho.mat(0, 0).real() == doctest::Approx(1.0));
  }
  SUBCASE("coherent has unit trace") {
    const auto rho = state_from_json(R"({"kind":"coherent","dim":12,"alpha":[1.0,0.0]})");
    CHECK(rho.mat.trace().real() == doctest::Approx(1.0));
  }
  SUBCASE("thermal") {
    const auto rho = state_from_json(R"({"kind":"thermal","dim":16,"beta":0.5})");
    CHECK(rho.mat.trace().real() == doctest::Approx(1.0));
    CHECK(rho.mat(1, 1).real() < rho.mat(0, 0).real());
  }
  SUBCASE("unknown kind throws") {
    CHECK_THROWS_AS(state_from_json(R"({"kind":"weird","dim":2})"), std::invalid_argument);
  }
}

TEST_CASE("observable parsing") {
  const auto obs = observables_from_json(
      R"([{"id":"O0","form":"flip_pair","a":0,"b":1},
          {"id":"O1","form":"flip_pair_plus_diag","a":0,"b":1,"c":2},
          {"id":"O2","form":"diagonal","entries":[1,0,2]}])");
  REQUIRE(obs.size() == 3);
  CHECK(obs[0].id == "O0");
  CHECK(obs[0].obs.form == Observable::Form::FlipPair);
  CHECK(obs[1].obs.c == 2);
  CHECK(obs[2].obs.diag[2] == doctest::Approx(2.0));
}

#pragma once

#include <string>
#include <vector>

#include "cvdesigns/classical_designs.hpp"
#include "cvdesigns/cp_designs.hpp"
#include "cvdesigns/fock_core.hpp"
#include "cvdesigns/regularized.hpp"
#include "cvdesigns/shadows.hpp"

namespace cvd {

// WeightedPointSet <-> {"kind": "simplex"|"torus"|"state",
//                       "points": [[...]], "weights": [...]}
// State-kind points are interleaved [re, im, re, im, ...].
std::string point_set_to_json(const WeightedPointSet& set);
WeightedPointSet point_set_from_json(const std::string& text);

// CPDesign <-> {"dim": d, "states": [[re, im, ...], ...], "weights": [...]}
std::string cp_design_to_json(const CPDesign& design);
CPDesign cp_design_from_json(const std::string& text);

// Regularizer <-> {"kind": "soft"|"hard"|"custom", "dim": D, ...}
std::string regularizer_to_json(const Regularizer& reg);
Regularizer regularizer_from_json(const std::string& text);

// RegularizedEnsemble descriptor with its regularizer and signed flag.
std::string ensemble_to_json(const RegularizedEnsemble& ens);
RegularizedEnsemble ensemble_from_json(const std::string& text);

// Input state for the shadows CLI:
//   {"kind": "pure", "dim": D, "amps": [re, im, ...]}
//   {"kind": "coherent", "dim": D, "alpha": [re, im]}
//   {"kind": "thermal", "dim": D, "beta": b}
//   {"kind": "mixed", "dim": D, "rho": [re, im, ...]}   (row-major)
ComplexOperator state_from_json(const std::string& text);

// Observable list for the shadows CLI:
//   [{"id": "O0", "form": "flip_pair", "a": 0, "b": 1},
//    {"id": "O1", "form": "flip_pair_plus_diag", "a": 0, "b": 1, "c": 2},
//    {"id": "O2", "form": "diagonal", "entries": [...]}]
struct NamedObservable {
  std::string id;
  Observable obs;
};
std::vector<NamedObservable> observables_from_json(const std::string& text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace cvd

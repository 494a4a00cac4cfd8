#include "cvdesigns/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace cvd {

using nlohmann::json;

namespace {

json vector_to_json(const Eigen::VectorXd& v) {
  json arr = json::array();
  for (long i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

json cvector_to_json(const Vector& v) {
  json arr = json::array();
  for (long i = 0; i < v.size(); ++i) {
    arr.push_back(v[i].real());
    arr.push_back(v[i].imag());
  }
  return arr;
}

Eigen::VectorXd vector_from_json(const json& arr) {
  Eigen::VectorXd v(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
  return v;
}

Vector cvector_from_json(const json& arr) {
  if (arr.size() % 2 != 0) throw std::invalid_argument("json: interleaved complex array has odd length");
  Vector v(arr.size() / 2);
  for (long i = 0; i < v.size(); ++i)
    v[i] = Complex(arr[2 * i].get<double>(), arr[2 * i + 1].get<double>());
  return v;
}

}  // namespace

std::string point_set_to_json(const WeightedPointSet& set) {
  json j;
  switch (set.kind) {
    case WeightedPointSet::Kind::Simplex:
      j["kind"] = "simplex";
      break;
    case WeightedPointSet::Kind::Torus:
      j["kind"] = "torus";
      break;
    case WeightedPointSet::Kind::State:
      j["kind"] = "state";
      break;
  }
  json pts = json::array();
  if (set.kind == WeightedPointSet::Kind::State)
    for (const auto& s : set.state_points) pts.push_back(cvector_to_json(s));
  else
    for (const auto& p : set.points) pts.push_back(vector_to_json(p));
  j["points"] = pts;
  j["weights"] = set.weights;
  return j.dump(2);
}

WeightedPointSet point_set_from_json(const std::string& text) {
  const json j = json::parse(text);
  WeightedPointSet set;
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "simplex")
    set.kind = WeightedPointSet::Kind::Simplex;
  else if (kind == "torus")
    set.kind = WeightedPointSet::Kind::Torus;
  else if (kind == "state")
    set.kind = WeightedPointSet::Kind::State;
  else
    throw std::invalid_argument("point_set_from_json: unknown kind " + kind);
  for (const auto& p : j.at("points")) {
    if (set.kind == WeightedPointSet::Kind::State)
      set.state_points.push_back(cvector_from_json(p));
    else
      set.points.push_back(vector_from_json(p));
  }
  set.weights = j.at("weights").get<std::vector<double>>();
  set.validate();
  return set;
}

std::string cp_design_to_json(const CPDesign& design) {
  json j;
  j["dim"] = design.space.dim;
  json states = json::array();
  for (const auto& s : design.states) states.push_back(cvector_to_json(s));
  j["states"] = states;
  j["weights"] = design.weights;
  return j.dump(2);
}

CPDesign cp_design_from_json(const std::string& text) {
  const json j = json::parse(text);
  CPDesign design{TruncatedSpace(j.at("dim").get<int>())};
  for (const auto& s : j.at("states")) design.states.push_back(cvector_from_json(s));
  design.weights = j.at("weights").get<std::vector<double>>();
  design.validate();
  return design;
}

std::string regularizer_to_json(const Regularizer& reg) {
  json j;
  j["dim"] = reg.space.dim;
  switch (reg.kind) {
    case Regularizer::Kind::SoftEnergy:
      j["kind"] = "soft";
      j["beta"] = reg.beta;
      break;
    case Regularizer::Kind::HardCutoff:
      j["kind"] = "hard";
      j["d"] = reg.cutoff;
      break;
    case Regularizer::Kind::CustomDiagonal:
      j["kind"] = "custom";
      j["entries"] = std::vector<double>(reg.custom.data(), reg.custom.data() + reg.custom.size());
      break;
  }
  return j.dump(2);
}

Regularizer regularizer_from_json(const std::string& text) {
  const json j = json::parse(text);
  const TruncatedSpace space(j.at("dim").get<int>());
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "soft") return Regularizer::soft(j.at("beta").get<double>(), space);
  if (kind == "hard") return Regularizer::hard(j.at("d").get<int>(), space);
  if (kind == "custom") return Regularizer::diagonal(vector_from_json(j.at("entries")), space);
  throw std::invalid_argument("regularizer_from_json: unknown kind " + kind);
}

std::string ensemble_to_json(const RegularizedEnsemble& ens) {
  json j;
  j["beta"] = ens.beta;
  j["dim"] = ens.dim;
  j["grid_theta"] = ens.grid_theta;
  j["grid_phi"] = ens.grid_phi;
  j["fock_weights"] = ens.fock_weights;
  j["phase_density"] = ens.phase_density;
  j["signed"] = ens.signed_weights;
  j["regularizer"] = json::parse(regularizer_to_json(Regularizer::soft(ens.beta, TruncatedSpace(ens.dim))));
  return j.dump(2);
}

RegularizedEnsemble ensemble_from_json(const std::string& text) {
  const json j = json::parse(text);
  RegularizedEnsemble ens;
  ens.beta = j.at("beta").get<double>();
  ens.dim = j.at("dim").get<int>();
  ens.grid_theta = j.at("grid_theta").get<int>();
  ens.grid_phi = j.at("grid_phi").get<int>();
  ens.fock_weights = j.at("fock_weights").get<std::vector<double>>();
  ens.phase_density = j.at("phase_density").get<double>();
  ens.signed_weights = j.value("signed", false);
  return ens;
}

ComplexOperator state_from_json(const std::string& text) {
  const json j = json::parse(text);
  const int dim = j.at("dim").get<int>();
  const TruncatedSpace space(dim);
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "pure") {
    Vector amps = cvector_from_json(j.at("amps"));
    if (amps.size() != dim) throw std::invalid_argument("state_from_json: amps length mismatch");
    amps.normalize();
    Matrix rho = amps * amps.adjoint();
    return ComplexOperator(space, 1, std::move(rho));
  }
  if (kind == "coherent") {
    const auto a = j.at("alpha");
    const Complex alpha(a.at(0).get<double>(), a.at(1).get<double>());
    Vector v(dim);
    v[0] = 1.0;
    for (int n = 1; n < dim; ++n) v[n] = v[n - 1] * alpha / std::sqrt(static_cast<double>(n));
    v.normalize();
    Matrix rho = v * v.adjoint();
    return ComplexOperator(space, 1, std::move(rho));
  }
  if (kind == "thermal") {
    const double beta = j.at("beta").get<double>();
    Matrix rho = Matrix::Zero(dim, dim);
    double tr = 0.0;
    for (int n = 0; n < dim; ++n) tr += std::exp(-beta * n);
    for (int n = 0; n < dim; ++n) rho(n, n) = std::exp(-beta * n) / tr;
    return ComplexOperator(space, 1, std::move(rho));
  }
  if (kind == "mixed") {
    Vector flat = cvector_from_json(j.at("rho"));
    if (flat.size() != static_cast<long>(dim) * dim)
      throw std::invalid_argument("state_from_json: rho length mismatch");
    Matrix rho(dim, dim);
    for (int r = 0; r < dim; ++r)
      for (int c = 0; c < dim; ++c) rho(r, c) = flat[static_cast<long>(r) * dim + c];
    return ComplexOperator(space, 1, std::move(rho));
  }
  throw std::invalid_argument("state_from_json: unknown kind " + kind);
}

std::vector<NamedObservable> observables_from_json(const std::string& text) {
  const json j = json::parse(text);
  std::vector<NamedObservable> out;
  for (const auto& item : j) {
    NamedObservable named;
    named.id = item.at("id").get<std::string>();
    const std::string form = item.at("form").get<std::string>();
    if (form == "flip_pair") {
      named.obs = Observable::flip_pair(item.at("a").get<int>(), item.at("b").get<int>());
    } else if (form == "flip_pair_plus_diag") {
      named.obs = Observable::flip_pair_plus_diag(item.at("a").get<int>(), item.at("b").get<int>(),
                                                  item.at("c").get<int>());
    } else if (form == "diagonal") {
      named.obs = Observable::make_diagonal(vector_from_json(item.at("entries")));
    } else {
      throw std::invalid_argument("observables_from_json: unknown form " + form);
    }
    out.push_back(std::move(named));
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace cvd

// Command-line front end: build and verify designs, run rigged and
// regularized identity checks, execute shadow experiments, and generate
// loss-channel fidelity curves (CSV plus a simple SVG rendering).

#include <CLI11.hpp>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "cvdesigns/classical_designs.hpp"
#include "cvdesigns/cp_designs.hpp"
#include "cvdesigns/fidelity.hpp"
#include "cvdesigns/json_io.hpp"
#include "cvdesigns/regularized.hpp"
#include "cvdesigns/rigged.hpp"
#include "cvdesigns/rng.hpp"
#include "cvdesigns/shadows.hpp"

using namespace cvd;

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

int worker_count() {
  if (const char* env = std::getenv("CVDESIGNS_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  return 1;
}

RiggedFamily parse_family(const std::string& name) {
  if (name == "phase") return RiggedFamily::KerredPhase;
  if (name == "cos") return RiggedFamily::Cos;
  if (name == "sin") return RiggedFamily::Sin;
  if (name == "rotated") return RiggedFamily::Rotated;
  throw CLI::ValidationError("--family", "unknown family " + name);
}

// Exact estimator range of Tr(rho_hat O) over all POVM outcomes on a
// truncation, used to instantiate the Hoeffding plan per observable.
std::pair<double, double> estimator_range(const Observable& obs, int dim) {
  switch (obs.form) {
    case Observable::Form::FlipPair:
      return flip_pair_estimator_range();
    case Observable::Form::FlipPairPlusDiag:
      return flip_pair_plus_diag_estimator_range();
    case Observable::Form::Diagonal: {
      const double tr = obs.trace(dim);
      double lo = tr / (2.0 * M_PI) - tr, hi = lo;  // the constant phase-branch value
      for (int n = 0; n < dim; ++n) {
        const double onn = n < obs.diag.size() ? obs.diag[n] : 0.0;
        const double v = (2.0 * M_PI + 1.0) * onn - tr;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      return {lo, hi};
    }
    case Observable::Form::Dense: {
      // loose but safe: |<theta|O|theta>| <= sum |O_nm| / 2pi
      const double tr = obs.trace(dim);
      double asum = 0.0, dmin = 0.0, dmax = 0.0;
      for (long n = 0; n < obs.dense.rows(); ++n) {
        dmin = std::min(dmin, obs.dense(n, n).real());
        dmax = std::max(dmax, obs.dense(n, n).real());
        for (long m = 0; m < obs.dense.cols(); ++m) asum += std::abs(obs.dense(n, m));
      }
      const double phase = (2.0 * M_PI + 1.0) * asum / (2.0 * M_PI);
      const double lo = std::min((2.0 * M_PI + 1.0) * dmin - tr, -phase - tr);
      const double hi = std::max((2.0 * M_PI + 1.0) * dmax - tr, phase - tr);
      return {lo, hi};
    }
  }
  throw std::logic_error("estimator_range: unreachable");
}

void write_svg_curve(const std::string& path, const std::vector<FidelityReport>& reports) {
  // two panels: reference-mode entanglement fidelities, then the averages
  const int w = 420, h = 300, margin = 45;
  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << 2 * w << "' height='" << h << "'>\n";
  auto polyline = [&](int panel, auto getter, const char* color) {
    svg << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='";
    for (const auto& r : reports) {
      const double px = panel * w + margin + r.kappa * (w - 2 * margin);
      const double py = h - margin - getter(r) * (h - 2 * margin);
      svg << fmt(px) << "," << fmt(py) << " ";
    }
    svg << "'/>\n";
  };
  for (int panel = 0; panel < 2; ++panel) {
    svg << "<rect x='" << panel * w + margin << "' y='" << margin << "' width='" << w - 2 * margin
        << "' height='" << h - 2 * margin << "' fill='none' stroke='black'/>\n";
    svg << "<text x='" << panel * w + w / 2 << "' y='" << h - 10
        << "' font-size='12' text-anchor='middle'>transmissivity</text>\n";
  }
  polyline(0, [](const FidelityReport& r) { return r.fe_soft; }, "#1f77b4");
  polyline(0, [](const FidelityReport& r) { return r.fe_hard; }, "#d62728");
  polyline(1, [](const FidelityReport& r) { return r.f1_soft; }, "#1f77b4");
  polyline(1, [](const FidelityReport& r) { return r.f2_soft_halfbeta; }, "#2ca02c");
  polyline(1, [](const FidelityReport& r) { return r.f12_hard; }, "#d62728");
  polyline(1, [](const FidelityReport& r) { return r.f_coh; }, "#9467bd");
  svg << "</svg>\n";
  write_text_file(path, svg.str());
}

int cmd_designs_build(const std::string& kind, int m, int d, int t, const std::string& out) {
  std::string payload;
  if (kind == "simplex-ext-centroid") {
    payload = point_set_to_json(simplex_extremal_centroid_2design(m));
  } else if (kind == "simplex-hammer-stroud") {
    payload = point_set_to_json(simplex_hammer_stroud_2design(m));
  } else if (kind == "simplex-extremal") {
    payload = point_set_to_json(simplex_extremal_1design(m));
  } else if (kind == "torus-product") {
    payload = point_set_to_json(torus_product_tdesign(m, t));
  } else if (kind == "torus-prime") {
    payload = point_set_to_json(torus_prime_2design(m));
  } else if (kind == "torus-cycle") {
    payload = point_set_to_json(torus_cycle_1design(m));
  } else if (kind == "cp-mub") {
    payload = cp_design_to_json(construction1_mub_design(d));
  } else if (kind == "cp-uniform") {
    payload = cp_design_to_json(construction2_uniform_design(d));
  } else if (kind == "cp-product") {
    payload = cp_design_to_json(
        cp_from_simplex_torus(simplex_extremal_centroid_2design(d - 1), torus_prime_2design(d), 2));
  } else {
    std::fprintf(stderr, "unknown design kind %s\n", kind.c_str());
    return 2;
  }
  write_text_file(out, payload);
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_designs_verify(const std::string& in, int t, double tol) {
  const std::string text = read_text_file(in);
  double err = 0.0;
  if (text.find("\"states\"") != std::string::npos) {
    err = verify_cp_design(cp_design_from_json(text), t);
  } else {
    const auto set = point_set_from_json(text);
    err = set.kind == WeightedPointSet::Kind::Simplex ? verify_simplex_design(set, t)
                                                      : verify_torus_design(set, t);
  }
  std::printf("max error at t=%d: %s (%s tol %s)\n", t, fmt(err).c_str(),
              err <= tol ? "PASS" : "FAIL", fmt(tol).c_str());
  return err <= tol ? 0 : 1;
}

int cmd_designs_project(const std::string& in, const std::string& out) {
  const auto design = cp_design_from_json(read_text_file(in));
  write_text_file(out, point_set_to_json(born_project(design)));
  std::printf("wrote %s\n", out.c_str());
  return 0;
}

int cmd_rigged_check(const std::string& family_name, int t, int dim, const std::string& convention,
                     double tol, const std::string& out) {
  const RiggedFamily family = parse_family(family_name);
  const auto conv = convention == "probability" ? RiggedConvention::Probability
                                                : RiggedConvention::Appendix;
  const double err = verify_rigged_design(family, t, dim, conv);
  if (!out.empty()) {
    std::ostringstream table;
    table << "# rigged check family=" << family_name << " t=" << t << " D=" << dim
          << " convention=" << convention << "\n";
    const auto id = rigged_design_id(family, conv);
    if (t == 2) {
      table << "a,b,c,d,assembled,target\n";
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b)
          for (int c = 0; c < dim; ++c)
            for (int d = 0; d < dim; ++d) {
              const double d4 = (a == b && a == c && a == d) ? 1.0 : 0.0;
              const double assembled = id.fock_prefactor * d4 +
                                       id.integral_prefactor * rigged2_exact_element(family, a, b, c, d);
              const double pi2 =
                  0.5 * ((a == c && b == d ? 1.0 : 0.0) + (a == d && b == c ? 1.0 : 0.0));
              table << a << "," << b << "," << c << "," << d << "," << fmt(assembled) << ","
                    << fmt(id.alpha2 * pi2) << "\n";
            }
    }
    write_text_file(out, table.str());
  }
  std::printf("%s max element error %s (tol %s)\n", err <= tol ? "PASS" : "FAIL", fmt(err).c_str(),
              fmt(tol).c_str());
  return err <= tol ? 0 : 1;
}

int cmd_regularized_check(double beta, int dim, double tol) {
  const auto ens = regularized_kerred_design(beta, dim);
  const double err = regularized_second_moment_error(ens);
  const double weight_defect = std::abs(ens.total_weight() - 1.0);
  std::printf("second moment error %s, weight defect %s: %s (tol %s)\n", fmt(err).c_str(),
              fmt(weight_defect).c_str(), err <= tol ? "PASS" : "FAIL", fmt(tol).c_str());
  return err <= tol ? 0 : 1;
}

int cmd_regularized_frame_potential(double beta, int dim, double tol) {
  const auto ens = regularized_kerred_design(beta, dim);
  const double v = frame_potential(ens, 2);
  const double bound = frame_potential_bound(Regularizer::soft(beta, TruncatedSpace(dim)), 2);
  std::printf("V_2 = %s, bound 1/TrPi2 = %s, gap %s: %s\n", fmt(v).c_str(), fmt(bound).c_str(),
              fmt(v - bound).c_str(), std::abs(v - bound) <= tol ? "PASS" : "FAIL");
  return std::abs(v - bound) <= tol ? 0 : 1;
}

int cmd_regularized_displaced_fock(int ell_max, int dim, double tol) {
  const double err = verify_displaced_fock_design(ell_max, dim);
  const auto b = displaced_fock_weights(ell_max);
  std::ostringstream weights;
  for (int l = 0; l <= ell_max; ++l) weights << (l ? "," : "") << fmt(b[l]);
  std::printf("b = [%s], max element error %s: %s (tol %s)\n", weights.str().c_str(),
              fmt(err).c_str(), err <= tol ? "PASS" : "FAIL", fmt(tol).c_str());
  return err <= tol ? 0 : 1;
}

int cmd_shadows_run(const std::string& state_path, const std::string& obs_path, double epsilon,
                    double delta, std::uint64_t seed, int groups, const std::string& out) {
  const ComplexOperator rho = state_from_json(read_text_file(state_path));
  const auto observables = observables_from_json(read_text_file(obs_path));
  if (observables.empty()) {
    std::fprintf(stderr, "no observables\n");
    return 2;
  }
  const int dim = rho.space.dim;
  double span = 0.0;
  double c_used = 0.0, d_used = 1.0;
  for (const auto& named : observables) {
    const auto [c, d] = estimator_range(named.obs, dim);
    if (d - c > span) {
      span = d - c;
      c_used = c;
      d_used = d;
    }
  }
  const auto plan = hoeffding_plan(static_cast<int>(observables.size()), delta, epsilon, c_used, d_used);
  const long total = plan.N * groups;

  // sampling is sharded over worker streams; the shard layout depends only
  // on the configuration, so output is deterministic for a fixed seed
  const int threads = worker_count();
  ShadowSampler sampler(rho);
  std::vector<ShadowRecord> records(total);
  {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w]() {
        StreamRng rng(seed, static_cast<std::uint64_t>(w));
        for (long i = w; i < total; i += threads) records[i] = sampler.sample(rng);
      });
    }
    for (auto& th : pool) th.join();
  }
  std::vector<std::vector<ShadowRecord>> grouped(groups);
  for (int g = 0; g < groups; ++g)
    grouped[g].assign(records.begin() + g * plan.N, records.begin() + (g + 1) * plan.N);

  std::ostringstream csv;
  csv << "# cvdesigns shadows run state=" << state_path << " observables=" << obs_path
      << " epsilon=" << fmt(epsilon) << " delta=" << fmt(delta) << " seed=" << seed
      << " N=" << plan.N << " K=" << groups << " c=" << fmt(c_used) << " d=" << fmt(d_used)
      << " threads=" << threads << "\n";
  csv << "observable_id,true_value,estimate,abs_error,N,K,seed\n";
  bool all_within = true;
  for (const auto& named : observables) {
    const double truth = (rho.mat * named.obs.to_matrix(dim)).trace().real();
    const double estimate = median_of_means(grouped, named.obs, dim);
    const double err = std::abs(estimate - truth);
    all_within = all_within && err <= epsilon;
    csv << named.id << "," << fmt(truth) << "," << fmt(estimate) << "," << fmt(err) << "," << plan.N
        << "," << groups << "," << seed << "\n";
  }
  write_text_file(out, csv.str());
  std::printf("wrote %s (N=%ld, K=%d)%s\n", out.c_str(), plan.N, groups,
              all_within ? "" : " [some errors above epsilon]");
  return 0;
}

int cmd_fidelity_loss_curve(double nbar, int steps, int dim, int i_max, long mc_samples,
                            std::uint64_t seed, const std::string& out, const std::string& svg,
                            double tol) {
  std::vector<double> kappas;
  for (int i = 0; i < steps; ++i) kappas.push_back(static_cast<double>(i) / (steps - 1));
  const auto reports = loss_curve(nbar, kappas, dim, i_max, mc_samples, seed);
  std::ostringstream csv;
  csv << "# cvdesigns fidelity loss-curve nbar=" << fmt(nbar) << " steps=" << steps << " D=" << dim
      << " i_max=" << i_max << " mc_samples=" << mc_samples << " seed=" << seed << "\n";
  csv << "kappa,Fe_soft,Fe_hard,F1_soft,F2_soft_halfbeta,F12_hard,F_coh,"
         "Fe_soft_numeric,Fe_hard_numeric,F1_soft_numeric,F2_soft_halfbeta_numeric,"
         "F12_hard_numeric,F_coh_numeric,truncation_tail\n";
  double worst = 0.0;
  for (const auto& r : reports) {
    csv << fmt(r.kappa) << "," << fmt(r.fe_soft) << "," << fmt(r.fe_hard) << "," << fmt(r.f1_soft)
        << "," << fmt(r.f2_soft_halfbeta) << "," << fmt(r.f12_hard) << "," << fmt(r.f_coh) << ","
        << fmt(r.fe_soft_numeric) << "," << fmt(r.fe_hard_numeric) << "," << fmt(r.f1_soft_numeric)
        << "," << fmt(r.f2_soft_halfbeta_numeric) << "," << fmt(r.f12_hard_numeric) << ","
        << fmt(r.f_coh_numeric) << "," << fmt(r.truncation_tail) << "\n";
    worst = std::max({worst, std::abs(r.fe_soft - r.fe_soft_numeric),
                      std::abs(r.fe_hard - r.fe_hard_numeric), std::abs(r.f1_soft - r.f1_soft_numeric),
                      std::abs(r.f2_soft_halfbeta - r.f2_soft_halfbeta_numeric),
                      std::abs(r.f12_hard - r.f12_hard_numeric)});
  }
  write_text_file(out, csv.str());
  if (!svg.empty()) write_svg_curve(svg, reports);
  std::printf("wrote %s, worst analytic-vs-numeric gap %s: %s (tol %s)\n", out.c_str(),
              fmt(worst).c_str(), worst <= tol ? "PASS" : "FAIL", fmt(tol).c_str());
  return worst <= tol ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"truncated Fock-space state designs, CV shadows, and loss-channel fidelities"};
  app.require_subcommand(1);

  // designs
  auto* designs = app.add_subcommand("designs", "build/verify/project classical and CP designs");
  designs->require_subcommand(1);
  std::string kind = "cp-mub", file_in, file_out = "design.json";
  int m = 2, d = 3, t = 2;
  double tol = 1e-10;
  auto* build = designs->add_subcommand("build", "construct a design and write JSON");
  build->add_option("--kind", kind,
                    "simplex-ext-centroid|simplex-hammer-stroud|simplex-extremal|torus-product|"
                    "torus-prime|torus-cycle|cp-mub|cp-uniform|cp-product");
  build->add_option("--m", m, "simplex/torus dimension");
  build->add_option("--d", d, "Hilbert-space dimension for CP designs");
  build->add_option("--t", t, "design order for torus-product");
  build->add_option("--out", file_out, "output JSON path");
  auto* verify = designs->add_subcommand("verify", "verify a design file");
  verify->add_option("--in", file_in, "design JSON")->required();
  verify->add_option("--t", t, "order to verify");
  verify->add_option("--tol", tol, "pass tolerance");
  auto* project = designs->add_subcommand("project", "Born-project a CP design to the simplex");
  project->add_option("--in", file_in, "CP design JSON")->required();
  project->add_option("--out", file_out, "output JSON path");

  // rigged
  auto* rigged = app.add_subcommand("rigged", "rigged design identity checks");
  rigged->require_subcommand(1);
  std::string family = "phase", convention = "appendix", table_out;
  int dim = 8;
  double rig_tol = 1e-12;
  auto* rcheck = rigged->add_subcommand("check", "verify the assembled design against alpha_t Pi_t");
  rcheck->add_option("--family", family, "phase|cos|sin|rotated");
  rcheck->add_option("--t", t, "1 or 2");
  rcheck->add_option("--D", dim, "Fock truncation");
  rcheck->add_option("--convention", convention, "appendix|probability");
  rcheck->add_option("--tol", rig_tol, "pass tolerance");
  rcheck->add_option("--out", table_out, "optional per-element table path");

  // regularized
  auto* reg = app.add_subcommand("regularized", "soft-regularized design checks");
  reg->require_subcommand(1);
  double beta = 0.5;
  int reg_dim = 60, ell_max = 2;
  double reg_tol = 1e-8, fp_tol = 1e-6, df_tol = 1e-8;
  auto* rc = reg->add_subcommand("check", "second moment vs Pi_2^(R)/Tr");
  rc->add_option("--beta", beta, "soft cutoff strength");
  rc->add_option("--D", reg_dim, "Fock truncation");
  rc->add_option("--tol", reg_tol, "pass tolerance");
  auto* fp = reg->add_subcommand("frame-potential", "frame potential vs the 1/TrPi2 bound");
  fp->add_option("--beta", beta, "soft cutoff strength");
  fp->add_option("--D", reg_dim, "Fock truncation");
  fp->add_option("--tol", fp_tol, "pass tolerance");
  auto* df = reg->add_subcommand("displaced-fock", "negative-weight displaced-Fock design");
  df->add_option("--ell-max", ell_max, "largest Fock seed");
  df->add_option("--D", reg_dim, "per-mode truncation");
  df->add_option("--tol", df_tol, "pass tolerance");

  // shadows
  auto* shadows = app.add_subcommand("shadows", "CV shadow tomography");
  shadows->require_subcommand(1);
  std::string state_path, obs_path, csv_out = "results.csv";
  double epsilon = 0.1, delta = 0.05;
  std::uint64_t seed = 1;
  int groups = 1;
  auto* run = shadows->add_subcommand("run", "sample shadows and estimate observables");
  run->add_option("--state", state_path, "state JSON")->required();
  run->add_option("--observables", obs_path, "observables JSON")->required();
  run->add_option("--epsilon", epsilon, "target accuracy");
  run->add_option("--delta", delta, "failure probability");
  run->add_option("--seed", seed, "RNG seed");
  run->add_option("--K", groups, "median-of-means groups");
  run->add_option("--out", csv_out, "output CSV path");

  // fidelity
  auto* fidelity = app.add_subcommand("fidelity", "loss-channel fidelity curves");
  fidelity->require_subcommand(1);
  double nbar = 4.0;
  int steps = 21, fdim = 200, i_max = 200;
  long mc_samples = 100000;
  std::string svg_out;
  double fid_tol = 1e-6;
  auto* curve = fidelity->add_subcommand("loss-curve", "analytic vs numeric fidelities on a kappa grid");
  curve->add_option("--nbar", nbar, "mean occupation scale");
  curve->add_option("--kappa-steps", steps, "grid size on [0,1]");
  curve->add_option("--D", fdim, "Fock truncation for Kraus sums");
  curve->add_option("--i-max", i_max, "Kraus index cutoff");
  curve->add_option("--mc-samples", mc_samples, "coherent MC sample count");
  curve->add_option("--seed", seed, "RNG seed");
  curve->add_option("--out", csv_out, "output CSV path");
  curve->add_option("--svg", svg_out, "optional SVG plot path");
  curve->add_option("--tol", fid_tol, "analytic-vs-numeric tolerance (MC excluded)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) return cmd_designs_build(kind, m, d, t, file_out);
    if (verify->parsed()) return cmd_designs_verify(file_in, t, tol);
    if (project->parsed()) return cmd_designs_project(file_in, file_out);
    if (rcheck->parsed()) return cmd_rigged_check(family, t, dim, convention, rig_tol, table_out);
    if (rc->parsed()) return cmd_regularized_check(beta, reg_dim, reg_tol);
    if (fp->parsed()) return cmd_regularized_frame_potential(beta, reg_dim, fp_tol);
    if (df->parsed()) return cmd_regularized_displaced_fock(ell_max, reg_dim, df_tol);
    if (run->parsed())
      return cmd_shadows_run(state_path, obs_path, epsilon, delta, seed, groups, csv_out);
    if (curve->parsed())
      return cmd_fidelity_loss_curve(nbar, steps, fdim, i_max, mc_samples, seed, csv_out, svg_out,
                                     fid_tol);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 0;
}

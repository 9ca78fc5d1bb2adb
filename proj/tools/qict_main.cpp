// qict: construct, classify, and simulate informationally complete quantum
// measurements from the command line.
//
// Exit codes: 0 success/consistent, 1 statistical soft fail, 2 usage or
// parse failure, 3 invalid input, 4 theorem-consistency violation.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "qict/io.hpp"
#include "qict/lie.hpp"
#include "qict/measurements.hpp"
#include "qict/rng.hpp"
#include "qict/sim.hpp"
#include "qict/tomo.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitSoftFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInvalidInput = 3;
constexpr int kExitInconsistent = 4;

struct InvalidInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// QICT_TOLERANCE overrides the pass/fail tolerance applied when validating
// measurement files on ingestion (default 1e-8). Classifier thresholds are
// fixed and unaffected.
double ingest_tolerance() {
  const char* env = std::getenv("QICT_TOLERANCE");
  if (env == nullptr) return qict::tol::verdict;
  try {
    return std::stod(env);
  } catch (const std::exception&) {
    throw InvalidInput("QICT_TOLERANCE is not a number: " + std::string(env));
  }
}

qict::Povm load_validated_povm(const std::string& path) {
  qict::Povm p = qict::load_povm(path);
  qict::ValidationReport rep = qict::validate(p, ingest_tolerance());
  if (!rep.passed) {
    throw InvalidInput("measurement in " + path + " is not a valid POVM: " + rep.describe());
  }
  return p;
}

std::vector<double> random_spectrum(int d, std::uint64_t seed) {
  auto rng = qict::seeded_rng(seed, 0xD1CE);
  std::exponential_distribution<double> expo(1.0);
  std::vector<double> spec(d);
  double sum = 0.0;
  for (double& v : spec) {
    v = expo(rng);
    sum += v;
  }
  for (double& v : spec) v /= sum;
  return spec;
}

qict::DensityState make_state(int d, const std::string& kind, const std::string& state_file,
                              std::uint64_t seed) {
  if (kind == "pure") return qict::haar_state_pure(d, seed);
  if (kind == "mixed") return qict::haar_state_with_spectrum(d, random_spectrum(d, seed), seed);
  if (kind == "file") {
    if (state_file.empty()) throw std::invalid_argument("--state file requires --state-file");
    try {
      qict::DensityState rho = qict::load_density(state_file);
      if (rho.dim() != d) throw InvalidInput("state dimension does not match measurement");
      return rho;
    } catch (const std::invalid_argument& e) {
      throw InvalidInput(e.what());  // bad state content is an input problem, not usage
    }
  }
  throw std::invalid_argument("unknown state kind: " + kind);
}

int cmd_construct(const std::string& family, int dim, double x, std::uint64_t seed,
                  const std::string& fiducial_path, const std::string& out) {
  std::optional<qict::Povm> p;
  if (family == "sic") {
    std::optional<qict::CVector> fid;
    if (!fiducial_path.empty()) {
      auto [fd, v] = qict::load_fiducial(fiducial_path);
      if (fd != dim) throw InvalidInput("fiducial dimension does not match --dim");
      fid = v;
    }
    p = qict::sic_rank_one(dim, fid);
  } else if (family == "gen-sic-depol") {
    std::optional<qict::CVector> fid;
    if (!fiducial_path.empty()) {
      auto [fd, v] = qict::load_fiducial(fiducial_path);
      if (fd != dim) throw InvalidInput("fiducial dimension does not match --dim");
      fid = v;
    }
    p = qict::generalized_sic_depolarized(qict::sic_rank_one(dim, fid), x);
  } else if (family == "gen-sic-simplex") {
    p = qict::generalized_sic_simplex(dim, seed);
  } else if (family == "mub") {
    p = qict::mub_complete(dim);
  } else if (family == "cube") {
    if (dim != 2) throw std::invalid_argument("cube measurement is qubit-only (--dim 2)");
    p = qict::cube_qubit();
  } else if (family == "random") {
    p = qict::random_minimal_ic(dim, seed);
  } else {
    throw std::invalid_argument("unknown family: " + family);
  }

  qict::save_povm(*p, out);
  qict::PurityReport purity = qict::purity_report(*p);
  auto [lo, hi] = std::minmax_element(purity.per_outcome.begin(), purity.per_outcome.end());
  std::cout << "wrote " << p->label << " (" << p->size() << " outcomes, dim " << p->dim()
            << ") to " << out << "\n";
  std::cout << "average purity: " << purity.average << "\n";
  std::cout << "outcome purity range: [" << *lo << ", " << *hi << "]\n";
  return kExitOk;
}

void print_diagnostics(const qict::TomoDiagnostics& diag) {
  auto yn = [](bool b) { return b ? "true" : "false"; };
  std::cout << "dim / outcomes     : " << diag.dim << " / " << diag.n_outcomes << "\n";
  std::cout << "ic                 : " << yn(diag.is_ic) << "\n";
  std::cout << "minimal            : " << yn(diag.is_minimal) << "\n";
  std::cout << "tight_ic           : " << yn(diag.is_tight_ic) << "  (alpha " << diag.tight_alpha
            << ", beta " << diag.tight_beta << ")\n";
  std::cout << "generalized_sic    : " << yn(diag.is_generalized_sic) << "  (alpha "
            << diag.gen_alpha << ", zeta " << diag.gen_zeta << ")\n";
  std::cout << "quasi_balanced     : " << yn(diag.is_quasi_balanced)
            << (diag.quasi_balance_sampled ? "  [sampled, empirical]" : "") << "\n";
  std::cout << "balanced           : " << yn(diag.is_balanced) << "\n";
  std::cout << "average purity     : " << diag.average_purity << "\n";
  std::cout << "residuals:\n";
  for (const auto& [name, value] : diag.residuals) {
    std::cout << "  " << name << " = " << value << "\n";
  }
}

int cmd_classify(const std::string& in, bool as_json, std::uint64_t seed) {
  qict::Povm p = load_validated_povm(in);
  qict::TomoDiagnostics diag = qict::classify(p, seed);
  if (as_json) {
    std::cout << qict::diagnostics_to_json(diag).dump(2) << "\n";
  } else {
    print_diagnostics(diag);
  }
  return kExitOk;
}

int cmd_mse(const std::string& in, const std::string& state, const std::string& state_file,
            std::uint64_t seed, bool as_json) {
  qict::Povm p = load_validated_povm(in);
  qict::DensityState rho = make_state(p.dim(), state, state_file, seed);
  qict::ReconstructionSet theta = qict::canonical_reconstruction(p);
  double canonical = qict::scaled_mse(p, theta, rho);
  double optimal = qict::optimal_mse(p, rho);
  double orbit = qict::average_scaled_mse(p, theta, rho.purity());
  if (as_json) {
    qict::json j;
    j["state_purity"] = rho.purity();
    j["canonical_scaled_mse"] = canonical;
    j["optimal_scaled_mse"] = optimal;
    j["orbit_average_canonical"] = orbit;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << "state purity                    : " << rho.purity() << "\n";
    std::cout << "canonical scaled MSE            : " << canonical << "\n";
    std::cout << "optimal (Cramer-Rao) scaled MSE : " << optimal << "\n";
    std::cout << "orbit average (canonical)       : " << orbit << "\n";
  }
  return kExitOk;
}

int cmd_simulate(const std::string& in, const std::string& state, const std::string& state_file,
                 std::int64_t shots, int reps, std::uint64_t seed, bool optimal, bool as_csv,
                 bool as_json) {
  qict::Povm p = load_validated_povm(in);
  qict::DensityState rho = make_state(p.dim(), state, state_file, seed);
  qict::Experiment e(p, rho, shots, reps, seed);
  qict::SimResult result =
      qict::run(e, optimal ? qict::Reconstruction::optimal : qict::Reconstruction::canonical);
  if (as_json) {
    std::cout << qict::sim_result_to_json(result, e).dump(2) << "\n";
  } else if (as_csv) {
    std::cout << qict::sweep_csv_header() << "\n";
    std::cout << qict::sweep_csv_row(p.dim(), p.label, qict::purity_report(p).average, shots,
                                     reps, result)
              << "\n";
  } else {
    std::cout << "analytic scaled MSE : " << result.analytic << "\n";
    std::cout << "empirical           : " << result.empirical << " +/- " << result.std_error
              << "  (N=" << shots << ", R=" << reps << ")\n";
  }
  bool ok = result.within(3.0);
  if (!as_json && !as_csv) {
    std::cout << "within 3 sigma      : " << (ok ? "yes" : "NO") << "\n";
  }
  return ok ? kExitOk : kExitSoftFail;
}

int cmd_sweep(const std::string& family, int dim, double from, double to, int steps,
              std::int64_t shots, int reps, std::uint64_t seed, const std::string& out) {
  if (steps < 1) throw std::invalid_argument("--steps must be at least 1");
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!out.empty()) {
    file.open(out);
    if (!file) throw InvalidInput("cannot write " + out);
    os = &file;
  }
  *os << qict::sweep_csv_header() << "\n";
  qict::DensityState rho = qict::haar_state_pure(dim, seed);
  for (int s = 0; s < steps; ++s) {
    double value = steps == 1 ? from : from + (to - from) * s / (steps - 1.0);
    std::optional<qict::Povm> p;
    if (family == "gen-sic-depol") {
      p = qict::generalized_sic_depolarized(qict::sic_rank_one(dim), value);
    } else if (family == "random") {
      // value is the target average purity of a depolarized random IC.
      p = qict::depolarize_to_purity(qict::random_minimal_ic(dim, seed), value);
    } else {
      throw std::invalid_argument("sweep supports families gen-sic-depol and random");
    }
    qict::Experiment e(*p, rho, shots, reps, seed + static_cast<std::uint64_t>(s));
    qict::SimResult result = qict::run(e);
    *os << qict::sweep_csv_row(dim, p->label, qict::purity_report(*p).average, shots, reps,
                               result)
        << "\n";
  }
  return kExitOk;
}

int cmd_lie_check(const std::string& in, bool as_json, const std::string& tensor_out) {
  qict::Povm p = load_validated_povm(in);
  qict::StructureTensor tensor;
  try {
    tensor = qict::structure_constants(p.outcomes);
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());  // non-minimal or rank-deficient measurement
  }
  qict::AntisymmetryReport rep = qict::antisymmetry_violation(tensor);
  if (!tensor_out.empty()) {
    std::ofstream f(tensor_out);
    if (!f) throw InvalidInput("cannot write " + tensor_out);
    f << qict::structure_tensor_to_json(tensor).dump() << "\n";
  }
  if (as_json) {
    std::cout << qict::antisymmetry_report_to_json(rep).dump(2) << "\n";
  } else {
    std::cout << "max antisymmetry violation : " << rep.max_violation << "\n";
    std::cout << "hermiticity defect         : " << rep.hermiticity_defect << "\n";
    std::cout << "completely antisymmetric   : " << (rep.antisymmetric ? "true" : "false")
              << "\n";
  }
  return kExitOk;
}

int cmd_audit(const std::string& in, int theorem, double purity, std::uint64_t seed) {
  qict::Povm p = load_validated_povm(in);
  try {
    if (theorem == 1) {
      qict::Theorem1Audit audit = qict::theorem1_audit(p, purity);
      std::cout << qict::theorem1_audit_to_json(audit).dump(2) << "\n";
      return audit.consistent ? kExitOk : kExitInconsistent;
    }
    if (theorem == 2) {
      if (p.size() != p.dim() * p.dim()) {
        throw InvalidInput("theorem 2 audit needs a minimal measurement (d^2 outcomes)");
      }
      qict::TomoDiagnostics diag = qict::classify(p, seed);
      if (!diag.is_ic) throw InvalidInput("theorem 2 audit needs an IC measurement");
      qict::json j;
      j["balanced"] = diag.is_balanced;
      j["generalized_sic"] = diag.is_generalized_sic;
      j["gen_sic_residual"] = diag.residuals.at("generalized_sic");
      j["quasi_balance_residual"] = diag.residuals.at("quasi_balance");
      j["tight_ic_residual"] = diag.residuals.at("tight_ic");
      j["consistent"] = diag.theorem2_consistent;
      std::cout << j.dump(2) << "\n";
      return diag.theorem2_consistent ? kExitOk : kExitInconsistent;
    }
    if (theorem == 4) {
      qict::Theorem4Audit audit = qict::theorem4_audit(p);
      std::cout << qict::theorem4_audit_to_json(audit).dump(2) << "\n";
      return audit.consistent ? kExitOk : kExitInconsistent;
    }
  } catch (const std::invalid_argument& e) {
    throw InvalidInput(e.what());  // theorem-inappropriate measurement
  }
  throw std::invalid_argument("supported theorems: 1, 2, 4");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"informationally complete quantum measurement toolkit"};
  app.require_subcommand(1);

  // construct
  auto* construct = app.add_subcommand("construct", "build a measurement and write it to JSON");
  std::string family, fiducial_path, out;
  int dim = 2;
  double x = 1.0;
  std::uint64_t seed = 1;
  construct->add_option("--family", family,
                        "sic | gen-sic-depol | gen-sic-simplex | mub | cube | random")
      ->required();
  construct->add_option("--dim", dim, "Hilbert-space dimension")->required();
  construct->add_option("--x", x, "depolarization weight in (0,1] for gen-sic-depol");
  construct->add_option("--seed", seed, "RNG seed");
  construct->add_option("--fiducial", fiducial_path, "fiducial JSON file for SIC families");
  construct->add_option("--out", out, "output measurement file")->required();

  // classify
  auto* classify_cmd = app.add_subcommand("classify", "run the classification ladder on a file");
  std::string cls_in;
  bool cls_json = false;
  std::uint64_t cls_seed = 0x51c5eedULL;
  classify_cmd->add_option("--in", cls_in, "measurement file")->required();
  classify_cmd->add_flag("--json", cls_json, "machine-readable output");
  classify_cmd->add_option("--seed", cls_seed, "seed for the sampled quasi-balance probe");

  // mse
  auto* mse_cmd = app.add_subcommand("mse", "evaluate analytic scaled-MSE formulas");
  std::string mse_in, mse_state = "pure", mse_state_file;
  std::uint64_t mse_seed = 1;
  bool mse_json = false;
  mse_cmd->add_option("--in", mse_in, "measurement file")->required();
  mse_cmd->add_option("--state", mse_state, "pure | mixed | file");
  mse_cmd->add_option("--state-file", mse_state_file, "density-matrix JSON when --state file");
  mse_cmd->add_option("--seed", mse_seed, "state-sampling seed");
  mse_cmd->add_flag("--json", mse_json, "machine-readable output");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo tomography experiment");
  std::string sim_in, sim_state = "pure", sim_state_file;
  std::int64_t shots = 100000;
  int reps = 100;
  std::uint64_t sim_seed = 1;
  bool sim_optimal = false, sim_csv = false, sim_json = false;
  sim_cmd->add_option("--in", sim_in, "measurement file")->required();
  sim_cmd->add_option("--state", sim_state, "pure | mixed | file");
  sim_cmd->add_option("--state-file", sim_state_file, "density-matrix JSON when --state file");
  sim_cmd->add_option("--shots", shots, "measurements per repetition (N)")->required();
  sim_cmd->add_option("--reps", reps, "repetitions (R)")->required();
  sim_cmd->add_option("--seed", sim_seed, "RNG seed");
  sim_cmd->add_flag("--optimal", sim_optimal, "use the optimal reconstruction at the true state");
  sim_cmd->add_flag("--csv", sim_csv, "emit one sweep-format CSV row");
  sim_cmd->add_flag("--json", sim_json, "machine-readable output");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "grid sweep, CSV output");
  std::string sweep_family = "gen-sic-depol", sweep_out;
  int sweep_dim = 2, sweep_steps = 5, sweep_reps = 50;
  double sweep_from = 0.2, sweep_to = 1.0;
  std::int64_t sweep_shots = 10000;
  std::uint64_t sweep_seed = 1;
  sweep_cmd->add_option("--family", sweep_family, "gen-sic-depol (x grid) | random (purity grid)");
  sweep_cmd->add_option("--dim", sweep_dim, "Hilbert-space dimension");
  sweep_cmd->add_option("--from", sweep_from, "grid start")->required();
  sweep_cmd->add_option("--to", sweep_to, "grid end")->required();
  sweep_cmd->add_option("--steps", sweep_steps, "grid points");
  sweep_cmd->add_option("--shots", sweep_shots, "N per grid point");
  sweep_cmd->add_option("--reps", sweep_reps, "R per grid point");
  sweep_cmd->add_option("--seed", sweep_seed, "RNG seed");
  sweep_cmd->add_option("--out", sweep_out, "CSV file (stdout when omitted)");

  // lie-check
  auto* lie_cmd = app.add_subcommand("lie-check", "structure constants and antisymmetry");
  std::string lie_in, lie_tensor_out;
  bool lie_json = false;
  lie_cmd->add_option("--in", lie_in, "measurement file")->required();
  lie_cmd->add_flag("--json", lie_json, "machine-readable output");
  lie_cmd->add_option("--tensor-out", lie_tensor_out, "write the full structure tensor JSON");

  // audit
  auto* audit_cmd = app.add_subcommand("audit", "theorem consistency audits");
  std::string audit_in;
  int audit_theorem = 0;
  double audit_purity = 1.0;
  std::uint64_t audit_seed = 0x51c5eedULL;
  audit_cmd->add_option("--in", audit_in, "measurement file")->required();
  audit_cmd->add_option("--theorem", audit_theorem, "1 | 2 | 4")->required();
  audit_cmd->add_option("--purity", audit_purity, "state purity for theorem 1 (default pure)");
  audit_cmd->add_option("--seed", audit_seed, "seed for sampled verdicts");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*construct) return cmd_construct(family, dim, x, seed, fiducial_path, out);
    if (*classify_cmd) return cmd_classify(cls_in, cls_json, cls_seed);
    if (*mse_cmd) return cmd_mse(mse_in, mse_state, mse_state_file, mse_seed, mse_json);
    if (*sim_cmd) {
      return cmd_simulate(sim_in, sim_state, sim_state_file, shots, reps, sim_seed, sim_optimal,
                          sim_csv, sim_json);
    }
    if (*sweep_cmd) {
      return cmd_sweep(sweep_family, sweep_dim, sweep_from, sweep_to, sweep_steps, sweep_shots,
                       sweep_reps, sweep_seed, sweep_out);
    }
    if (*lie_cmd) return cmd_lie_check(lie_in, lie_json, lie_tensor_out);
    if (*audit_cmd) return cmd_audit(audit_in, audit_theorem, audit_purity, audit_seed);
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "qict: parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qict::ParseError& e) {
    std::cerr << "qict: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvalidInput& e) {
    std::cerr << "qict: " << e.what() << "\n";
    return kExitInvalidInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "qict: " << e.what() << "\n";
    return kExitUsage;  // inconsistent flag values
  } catch (const std::exception& e) {
    std::cerr << "qict: " << e.what() << "\n";
    return kExitInvalidInput;
  }
  return kExitUsage;
}

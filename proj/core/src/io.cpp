#include "qict/io.hpp"

#include <fstream>
#include <sstream>

namespace qict {

namespace {

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      row.push_back(json::array({m(r, c).real(), m(r, c).imag()}));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j, int d) {
  if (!j.is_array() || static_cast<int>(j.size()) != d) {
    throw std::invalid_argument("matrix entry: expected " + std::to_string(d) + " rows");
  }
  Matrix m(d, d);
  for (int r = 0; r < d; ++r) {
    const json& row = j.at(r);
    if (!row.is_array() || static_cast<int>(row.size()) != d) {
      throw std::invalid_argument("matrix entry: expected " + std::to_string(d) + " columns");
    }
    for (int c = 0; c < d; ++c) {
      const json& e = row.at(c);
      if (!e.is_array() || e.size() != 2) {
        throw std::invalid_argument("matrix entry: expected [re, im] pairs");
      }
      m(r, c) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
    }
  }
  return m;
}

json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  json j;
  in >> j;
  return j;
}

}  // namespace

json povm_to_json(const Povm& p) {
  json j;
  j["dim"] = p.dim();
  j["label"] = p.label;
  json outcomes = json::array();
  for (const auto& op : p.outcomes) outcomes.push_back(matrix_to_json(op.matrix()));
  j["outcomes"] = std::move(outcomes);
  return j;
}

Povm povm_from_json(const json& j) {
  int d = j.at("dim").get<int>();
  if (d < 1) throw std::invalid_argument("povm: dim must be positive");
  std::string label = j.value("label", "");
  const json& outcomes = j.at("outcomes");
  if (!outcomes.is_array() || outcomes.empty()) {
    throw std::invalid_argument("povm: outcomes must be a non-empty array");
  }
  std::vector<Operator> ops;
  ops.reserve(outcomes.size());
  for (const json& o : outcomes) ops.emplace_back(matrix_from_json(o, d));
  return Povm(std::move(ops), std::move(label));
}

void save_povm(const Povm& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << povm_to_json(p).dump(2) << "\n";
}

Povm load_povm(const std::string& path) { return povm_from_json(parse_file(path)); }

std::pair<int, CVector> fiducial_from_json(const json& j) {
  int d = j.at("dim").get<int>();
  const json& f = j.at("fiducial");
  if (!f.is_array() || static_cast<int>(f.size()) != d) {
    throw std::invalid_argument("fiducial: expected " + std::to_string(d) + " entries");
  }
  CVector v(d);
  for (int i = 0; i < d; ++i) {
    const json& e = f.at(i);
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("fiducial: expected [re, im] pairs");
    }
    v(i) = Complex(e.at(0).get<double>(), e.at(1).get<double>());
  }
  return {d, v};
}

std::pair<int, CVector> load_fiducial(const std::string& path) {
  return fiducial_from_json(parse_file(path));
}

json density_to_json(const DensityState& rho) {
  json j;
  j["dim"] = rho.dim();
  j["rho"] = matrix_to_json(rho.matrix());
  return j;
}

DensityState density_from_json(const json& j) {
  int d = j.at("dim").get<int>();
  return DensityState(matrix_from_json(j.at("rho"), d));
}

DensityState load_density(const std::string& path) { return density_from_json(parse_file(path)); }

json purity_report_to_json(const PurityReport& rep) {
  json j;
  j["per_outcome"] = rep.per_outcome;
  j["average"] = rep.average;
  if (rep.weighted) j["weighted"] = *rep.weighted;
  return j;
}

json diagnostics_to_json(const TomoDiagnostics& diag) {
  json j;
  j["dim"] = diag.dim;
  j["n_outcomes"] = diag.n_outcomes;
  j["is_ic"] = diag.is_ic;
  j["is_minimal"] = diag.is_minimal;
  j["is_tight_ic"] = diag.is_tight_ic;
  j["tight_alpha"] = diag.tight_alpha;
  j["tight_beta"] = diag.tight_beta;
  j["is_generalized_sic"] = diag.is_generalized_sic;
  j["gen_alpha"] = diag.gen_alpha;
  j["gen_zeta"] = diag.gen_zeta;
  j["is_quasi_balanced"] = diag.is_quasi_balanced;
  j["quasi_balance_sampled"] = diag.quasi_balance_sampled;
  j["is_balanced"] = diag.is_balanced;
  j["average_purity"] = diag.average_purity;
  j["theorem2_consistent"] = diag.theorem2_consistent;
  j["lemma4_consistent"] = diag.lemma4_consistent;
  j["residuals"] = diag.residuals;
  return j;
}

json structure_tensor_to_json(const StructureTensor& t) {
  json j;
  j["shape"] = json::array({t.n, t.n, t.n});
  json entries = json::array();
  for (const Complex& c : t.entries) entries.push_back(json::array({c.real(), c.imag()}));
  j["entries"] = std::move(entries);
  return j;
}

json antisymmetry_report_to_json(const AntisymmetryReport& rep) {
  json j;
  j["max_violation"] = rep.max_violation;
  j["hermiticity_defect"] = rep.hermiticity_defect;
  j["antisymmetric"] = rep.antisymmetric;
  return j;
}

json theorem1_audit_to_json(const Theorem1Audit& audit) {
  json j;
  j["average_mse"] = audit.average_mse;
  j["bound"] = audit.bound;
  j["gap"] = audit.gap;
  j["outcome_purity"] = audit.outcome_purity;
  j["tight_ic"] = audit.tight_ic;
  j["saturated"] = audit.saturated;
  j["consistent"] = audit.consistent;
  return j;
}

json theorem4_audit_to_json(const Theorem4Audit& audit) {
  json j;
  j["antisymmetry_violation"] = audit.antisymmetry_violation;
  j["gen_sic_residual"] = audit.gen_sic_residual;
  j["antisymmetric"] = audit.antisymmetric;
  j["generalized_sic"] = audit.generalized_sic;
  j["consistent"] = audit.consistent;
  return j;
}

json sim_result_to_json(const SimResult& result, const Experiment& e) {
  json j;
  j["experiment"] = {{"dim", e.povm.dim()},
                     {"label", e.povm.label},
                     {"n_outcomes", e.povm.size()},
                     {"state_purity", e.rho.purity()},
                     {"shots", e.shots},
                     {"repetitions", e.repetitions},
                     {"seed", e.seed}};
  j["empirical"] = result.empirical;
  j["std_error"] = result.std_error;
  j["analytic"] = result.analytic;
  j["per_repetition"] = result.per_repetition;
  // The empirical value sits an O(1/N) finite-sample term away from the
  // asymptotic analytic value; reported, never corrected.
  j["finite_sample_bias"] = "O(1/N)";
  return j;
}

std::string sweep_csv_header() { return "d,label,purity,N,R,empirical,stderr,analytic"; }

std::string sweep_csv_row(int d, const std::string& label, double purity, std::int64_t shots,
                          int reps, const SimResult& result) {
  std::ostringstream os;
  os.precision(17);
  os << d << ',' << label << ',' << purity << ',' << shots << ',' << reps << ','
     << result.empirical << ',' << result.std_error << ',' << result.analytic;
  return os.str();
}

}  // namespace qict

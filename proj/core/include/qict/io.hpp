#ifndef QICT_IO_HPP
#define QICT_IO_HPP

#include <string>
#include <utility>

#include "json.hpp"

#include "qict/lie.hpp"
#include "qict/measurements.hpp"
#include "qict/sim.hpp"
#include "qict/tomo.hpp"

namespace qict {

using nlohmann::json;

/// A file could not be opened or read (distinct from semantically invalid
/// content, which surfaces as std::invalid_argument).
struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Measurement files:
//   { "dim": d, "label": "...", "outcomes": [ [[ [re,im] x d ] x d rows] x n ] }
// Fiducial files:
//   { "dim": d, "fiducial": [ [re,im] x d ] }
// All floats are decimal at full round-trip precision.

json povm_to_json(const Povm& p);
Povm povm_from_json(const json& j);

void save_povm(const Povm& p, const std::string& path);
Povm load_povm(const std::string& path);

std::pair<int, CVector> fiducial_from_json(const json& j);
std::pair<int, CVector> load_fiducial(const std::string& path);

json density_to_json(const DensityState& rho);
DensityState density_from_json(const json& j);
DensityState load_density(const std::string& path);

json purity_report_to_json(const PurityReport& rep);
json diagnostics_to_json(const TomoDiagnostics& diag);
json structure_tensor_to_json(const StructureTensor& t);
json antisymmetry_report_to_json(const AntisymmetryReport& rep);
json theorem1_audit_to_json(const Theorem1Audit& audit);
json theorem4_audit_to_json(const Theorem4Audit& audit);

/// SimResult plus the experiment echo.
json sim_result_to_json(const SimResult& result, const Experiment& e);

/// Fixed sweep CSV columns: d,label,purity,N,R,empirical,stderr,analytic
std::string sweep_csv_header();
std::string sweep_csv_row(int d, const std::string& label, double purity, std::int64_t shots,
                          int reps, const SimResult& result);

}  // namespace qict

#endif

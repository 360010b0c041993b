#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "gkpwalk/analysis.hpp"
#include "gkpwalk/optics.hpp"
#include "gkpwalk/walk.hpp"

namespace gkpwalk {

using json = nlohmann::json;

// State file schema, shared by every module and the CLI:
//   { "sigma2": number,
//     "terms":  [ { "re": .., "im": .., "x": .., "p": .. }, ... ],
//     "meta":   { free-form provenance } }

json state_to_json(const CoherentSuperposition& state, json meta = json::object());

// Throws schema_error on missing/ill-typed fields or non-finite numbers.
CoherentSuperposition state_from_json(const json& doc);

void save_state(const std::filesystem::path& path, const CoherentSuperposition& state,
                json meta = json::object());
CoherentSuperposition load_state(const std::filesystem::path& path);

json hybrid_to_json(const HybridState& state);
HybridState hybrid_from_json(const json& doc);

// Walk trace document: run parameters, the final kept state, and one record
// {step, success_prob, kept_norm2, rejected_norm2} per step.
json walk_result_to_json(const WalkResult& result, int half_steps, double w, Axis axis);

// Interferometer trace document: {params, steps: [...states inline...], final}.
json protocol_trace_to_json(const ProtocolTrace& trace);

json envelope_fit_to_json(const EnvelopeFit& fit);
json equivalence_report_to_json(const EquivalenceReport& report);

// CSV exports (deterministic %.17g formatting).
void write_wigner_csv(std::ostream& os, const WignerGrid& grid);
json wigner_grid_to_json(const WignerGrid& grid);
void write_density_csv(std::ostream& os, const DensityCurve& curve);

std::string axis_name(Axis axis);
Axis axis_from_name(const std::string& name);  // throws invalid_parameter_error

// Reads/writes whole files; failures raise io_error (distinct from schema
// validation, which raises schema_error).
std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& content);
json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const json& doc);

}  // namespace gkpwalk

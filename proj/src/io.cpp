#include "gkpwalk/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace gkpwalk {

namespace {

double require_finite_number(const json& doc, const char* field) {
    if (!doc.contains(field) || !doc[field].is_number()) {
        throw schema_error(std::string("state document: missing numeric field '") +
                           field + "'");
    }
    const double v = doc[field].get<double>();
    if (!std::isfinite(v)) {
        throw schema_error(std::string("state document: field '") + field +
                           "' is not finite");
    }
    return v;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

json state_to_json(const CoherentSuperposition& state, json meta) {
    json terms = json::array();
    for (const GaussianTerm& t : state.terms()) {
        terms.push_back({{"re", t.amplitude.real()},
                         {"im", t.amplitude.imag()},
                         {"x", t.center.x},
                         {"p", t.center.p}});
    }
    return json{{"sigma2", state.sigma2()}, {"terms", std::move(terms)},
                {"meta", std::move(meta)}};
}

CoherentSuperposition state_from_json(const json& doc) {
    if (!doc.is_object()) {
        throw schema_error("state document must be a JSON object");
    }
    const double sigma2 = require_finite_number(doc, "sigma2");
    if (sigma2 <= 0.0) {
        throw schema_error("state document: sigma2 must be positive");
    }
    if (!doc.contains("terms") || !doc["terms"].is_array()) {
        throw schema_error("state document: missing 'terms' array");
    }
    std::vector<GaussianTerm> terms;
    terms.reserve(doc["terms"].size());
    for (const json& t : doc["terms"]) {
        terms.push_back(GaussianTerm{
            Complex{require_finite_number(t, "re"), require_finite_number(t, "im")},
            PhasePoint{require_finite_number(t, "x"), require_finite_number(t, "p")}});
    }
    return CoherentSuperposition(sigma2, std::move(terms));
}

void save_state(const std::filesystem::path& path, const CoherentSuperposition& state,
                json meta) {
    save_json_file(path, state_to_json(state, std::move(meta)));
}

CoherentSuperposition load_state(const std::filesystem::path& path) {
    return state_from_json(load_json_file(path));
}

json hybrid_to_json(const HybridState& state) {
    return json{{"branch_h", state_to_json(state.branch_h)},
                {"branch_v", state_to_json(state.branch_v)}};
}

HybridState hybrid_from_json(const json& doc) {
    if (!doc.is_object() || !doc.contains("branch_h") || !doc.contains("branch_v")) {
        throw schema_error("hybrid document: missing branch_h/branch_v");
    }
    return HybridState{state_from_json(doc["branch_h"]), state_from_json(doc["branch_v"])};
}

json walk_result_to_json(const WalkResult& result, int half_steps, double w, Axis axis) {
    json trace = json::array();
    for (const WalkStepTrace& t : result.step_traces) {
        trace.push_back({{"step", t.step},
                         {"success_prob", t.success_prob},
                         {"kept_norm2", t.kept_norm2},
                         {"rejected_norm2", t.rejected_norm2}});
    }
    return json{{"params",
                 {{"half_steps", half_steps},
                  {"w", w},
                  {"axis", axis_name(axis)},
                  {"sigma2", result.kept.sigma2()}}},
                {"success_probability", result.success_probability},
                {"final", state_to_json(result.kept)},
                {"trace", std::move(trace)}};
}

json protocol_trace_to_json(const ProtocolTrace& trace) {
    json steps = json::array();
    for (const SagnacStepRecord& rec : trace.steps) {
        steps.push_back({{"step", rec.step},
                         {"after_r_minus", hybrid_to_json(rec.after_r_minus)},
                         {"after_kick", hybrid_to_json(rec.after_kick)},
                         {"after_r_plus", hybrid_to_json(rec.after_r_plus)},
                         {"detector_port", hybrid_to_json(rec.detector_port)},
                         {"kept_port", hybrid_to_json(rec.kept_port)},
                         {"success_prob", rec.success_prob},
                         {"detector_norm2", rec.detector_norm2},
                         {"kept_norm2", rec.kept_norm2},
                         {"recombine_discard_norm2", rec.recombine_discard_norm2},
                         {"mirror", rec.mirror_mode == MirrorMode::transmit
                                        ? "transmit"
                                        : "reflect"}});
    }
    return json{{"params",
                 {{"half_steps", trace.half_steps},
                  {"w", trace.w},
                  {"sigma2", trace.sigma2}}},
                {"success_probability", trace.success_probability},
                {"steps", std::move(steps)},
                {"final", hybrid_to_json(trace.final_output)}};
}

json envelope_fit_to_json(const EnvelopeFit& fit) {
    return json{{"kappa_hat", fit.kappa_hat},
                {"residual", fit.residual},
                {"n_points", fit.n_points}};
}

json equivalence_report_to_json(const EquivalenceReport& report) {
    json checks = json::array();
    for (const EquivalenceCheck& c : report.checks) {
        checks.push_back({{"name", c.name}, {"fidelity", c.fidelity}, {"pass", c.pass}});
    }
    return json{{"half_steps", report.half_steps},
                {"w", report.w},
                {"checks", std::move(checks)},
                {"pass", report.pass}};
}

void write_wigner_csv(std::ostream& os, const WignerGrid& grid) {
    os << "x,p,w\n";
    for (int ix = 0; ix < grid.grid.nx; ++ix) {
        const std::string xs = fmt17(grid.x_at(ix));
        for (int ip = 0; ip < grid.grid.np; ++ip) {
            os << xs << ',' << fmt17(grid.p_at(ip)) << ','
               << fmt17(grid.value_at(ix, ip)) << '\n';
        }
    }
}

json wigner_grid_to_json(const WignerGrid& grid) {
    return json{{"x_min", grid.grid.x_min}, {"x_max", grid.grid.x_max},
                {"nx", grid.grid.nx},       {"p_min", grid.grid.p_min},
                {"p_max", grid.grid.p_max}, {"np", grid.grid.np},
                {"values", grid.values}};
}

void write_density_csv(std::ostream& os, const DensityCurve& curve) {
    os << "coord,density\n";
    for (const auto& [coord, density] : curve.samples) {
        os << fmt17(coord) << ',' << fmt17(density) << '\n';
    }
}

std::string axis_name(Axis axis) {
    return axis == Axis::position ? "position" : "momentum";
}

Axis axis_from_name(const std::string& name) {
    if (name == "position") return Axis::position;
    if (name == "momentum") return Axis::momentum;
    throw invalid_parameter_error("axis must be 'position' or 'momentum'");
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw io_error("cannot open for reading: " + path.string());
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw io_error("read failed: " + path.string());
    }
    return buf.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::error_code ec;
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw io_error("cannot open for writing: " + path.string());
    }
    out << content;
    out.flush();
    if (!out) {
        throw io_error("write failed: " + path.string());
    }
}

json load_json_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded()) {
        throw schema_error("not valid JSON: " + path.string());
    }
    return doc;
}

void save_json_file(const std::filesystem::path& path, const json& doc) {
    write_text_file(path, doc.dump(2) + "\n");
}

}  // namespace gkpwalk

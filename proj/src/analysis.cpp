#include "gkpwalk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

#include "gkpwalk/optics.hpp"
#include "gkpwalk/walk.hpp"

namespace gkpwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kPiHalf = 1.57079632679489661923;
constexpr double kFidelityTol = 1e-12;

void check_grid(const GridSpec& grid) {
    if (grid.nx < 2 || grid.np < 2 || !(grid.x_max > grid.x_min) ||
        !(grid.p_max > grid.p_min)) {
        throw invalid_parameter_error("degenerate grid spec");
    }
}

// Chunked parallel loop over [0, count) with deterministic per-index work.
void parallel_for(int count, const std::function<void(int)>& body) {
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const int workers = static_cast<int>(std::min<unsigned>(hw, 16));
    if (workers <= 1 || count < 4 * workers) {
        for (int i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int t = 0; t < workers; ++t) {
        pool.emplace_back([&, t]() {
            for (int i = t; i < count; i += workers) body(i);
        });
    }
    for (std::thread& th : pool) th.join();
}

}  // namespace

double fidelity(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    const double na2 = norm_squared(a);
    const double nb2 = norm_squared(b);
    if (na2 <= 0.0 || nb2 <= 0.0) {
        throw zero_norm_error("fidelity: zero-norm input");
    }
    const double f = std::norm(inner_product(a, b)) / (na2 * nb2);
    return std::clamp(f, 0.0, 1.0);
}

GridSpec default_grid_for(const CoherentSuperposition& state, int points_per_axis) {
    if (points_per_axis < 2) {
        throw invalid_parameter_error("grid needs at least 2 points per axis");
    }
    const double margin = 6.0 * std::sqrt(state.sigma2());
    double x_extent = margin;
    double p_extent = margin;
    for (const GaussianTerm& t : state.terms()) {
        x_extent = std::max(x_extent, std::abs(t.center.x) + margin);
        p_extent = std::max(p_extent, std::abs(t.center.p) + margin);
    }
    return GridSpec{-x_extent, x_extent, points_per_axis,
                    -p_extent, p_extent, points_per_axis};
}

double WignerGrid::x_at(int ix) const {
    return grid.x_min + (grid.x_max - grid.x_min) * ix / (grid.nx - 1);
}

double WignerGrid::p_at(int ip) const {
    return grid.p_min + (grid.p_max - grid.p_min) * ip / (grid.np - 1);
}

Complex wigner_cross_kernel(PhasePoint a, PhasePoint b, double x, double p,
                            double sigma2) {
    const double gx = 2.0 * x - a.x - b.x;
    const double gp = 2.0 * p - a.p - b.p;
    const double log_mod = -gx * gx / (8.0 * sigma2) - 0.5 * sigma2 * gp * gp;
    if (log_mod < -745.0) {
        return Complex{0.0, 0.0};
    }
    const double phi =
        0.5 * (a.x * a.p - b.x * b.p) + (b.p - a.p) * x - 0.5 * gp * (b.x - a.x);
    return std::polar(std::exp(log_mod) / kPi, phi);
}

double wigner_at(const CoherentSuperposition& state, double x, double p) {
    const auto& terms = state.terms();
    const double s2 = state.sigma2();
    double value = 0.0;
    for (std::size_t i = 0; i < terms.size(); ++i) {
        const Complex wii = wigner_cross_kernel(terms[i].center, terms[i].center, x, p, s2);
        value += std::norm(terms[i].amplitude) * wii.real();
        for (std::size_t j = i + 1; j < terms.size(); ++j) {
            // W_ji = conj(W_ij): fold each pair into twice the real part.
            const Complex wij = wigner_cross_kernel(terms[i].center, terms[j].center, x, p, s2);
            value += 2.0 * (std::conj(terms[i].amplitude) * terms[j].amplitude * wij).real();
        }
    }
    return value;
}

WignerGrid wigner_grid(const CoherentSuperposition& state, const GridSpec& grid) {
    check_grid(grid);
    WignerGrid out;
    out.grid = grid;
    out.values.assign(static_cast<std::size_t>(grid.nx) * grid.np, 0.0);
    parallel_for(grid.nx, [&](int ix) {
        const double x = out.x_at(ix);
        for (int ip = 0; ip < grid.np; ++ip) {
            out.values[static_cast<std::size_t>(ix) * grid.np + ip] =
                wigner_at(state, x, out.p_at(ip));
        }
    });
    return out;
}

DensityCurve quadrature_density(const CoherentSuperposition& state, Axis quadrature,
                                std::span<const double> coordinates) {
    DensityCurve curve;
    curve.quadrature = quadrature;
    curve.samples.reserve(coordinates.size());
    for (double c : coordinates) {
        curve.samples.emplace_back(c, std::norm(wavefunction_at(state, c, quadrature)));
    }
    return curve;
}

EnvelopeFit fit_envelope(const CoherentSuperposition& state, double w, Axis axis) {
    if (!std::isfinite(w) || w <= 0.0) {
        throw invalid_parameter_error("fit_envelope: w must be positive");
    }
    double max_amp = 0.0;
    for (const GaussianTerm& t : state.terms()) {
        max_amp = std::max(max_amp, std::abs(t.amplitude));
    }
    const double cutoff = 1e-10 * max_amp;

    std::vector<double> u;  // (2 r w)^2
    std::vector<double> y;  // log |amplitude|
    for (const GaussianTerm& t : state.terms()) {
        const double along = axis == Axis::position ? t.center.x : t.center.p;
        const double off = axis == Axis::position ? t.center.p : t.center.x;
        const double r = std::round(along / (2.0 * w));
        if (std::abs(along - 2.0 * w * r) > 1e-6 || std::abs(off) > 1e-6) {
            throw invalid_parameter_error(
                "fit_envelope: term centers must lie on the 2w lattice along the axis");
        }
        const double amp = std::abs(t.amplitude);
        if (amp <= cutoff) continue;
        u.push_back(along * along);
        y.push_back(std::log(amp));
    }
    if (u.size() < 3) {
        throw insufficient_data_error("fit_envelope: fewer than 3 usable teeth");
    }

    // Ordinary least squares for y = b0 + b1 u; kappa^2 = -2 b1.
    const double n = static_cast<double>(u.size());
    double su = 0.0, sy = 0.0, suu = 0.0, suy = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        su += u[i];
        sy += y[i];
        suu += u[i] * u[i];
        suy += u[i] * y[i];
    }
    const double det = n * suu - su * su;
    if (det <= 0.0) {
        throw insufficient_data_error("fit_envelope: degenerate tooth layout");
    }
    const double b1 = (n * suy - su * sy) / det;
    const double b0 = (sy - b1 * su) / n;
    if (b1 >= 0.0) {
        throw insufficient_data_error("fit_envelope: weights do not decay with |r|");
    }

    double ss = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double r = y[i] - (b0 + b1 * u[i]);
        ss += r * r;
    }
    EnvelopeFit fit;
    fit.kappa_hat = std::sqrt(-2.0 * b1);
    fit.residual = std::sqrt(ss / n);
    fit.n_points = static_cast<int>(u.size());
    return fit;
}

Complex stabilizer_expectation(const CoherentSuperposition& state, PhasePoint spacing) {
    return inner_product(state, displace(state, spacing));
}

EquivalenceReport equivalence_report(int half_steps, double w, double sigma2) {
    if (sigma2 != kSymmetricVacuumSigma2) {
        throw asymmetric_vacuum_error("equivalence_report requires sigma2 = 1/2");
    }
    const CoherentSuperposition vac = make_vacuum(sigma2);

    WalkConfig pos_cfg;
    pos_cfg.half_steps = half_steps;
    pos_cfg.w = w;
    pos_cfg.axis = Axis::position;
    pos_cfg.input = vac;
    WalkConfig mom_cfg = pos_cfg;
    mom_cfg.axis = Axis::momentum;

    const CoherentSuperposition pos_out = run_walk(pos_cfg).kept;
    const CoherentSuperposition mom_out = run_walk(mom_cfg).kept;

    EquivalenceReport report;
    report.half_steps = half_steps;
    report.w = w;

    auto add = [&report](std::string name, double f) {
        report.checks.push_back(EquivalenceCheck{std::move(name), f, f >= 1.0 - kFidelityTol});
    };

    add("rotate_position_output_matches_momentum",
        fidelity(rotate(pos_out, kPiHalf), mom_out));
    add("rotate_momentum_output_matches_position",
        fidelity(rotate(mom_out, -kPiHalf), pos_out));
    add("lens_conjugated_momentum_comb_matches_position",
        fidelity(apply_fourier_lens(
                     binomial_state_direct(half_steps, w, Axis::momentum,
                                           apply_fourier_lens(vac, LensDirection::inverse)),
                     LensDirection::forward),
                 binomial_state_direct(half_steps, w, Axis::position, vac)));
    add("interferometer_matches_momentum_walk",
        fidelity(run_sagnac_protocol(half_steps, w, vac).final_output.branch_v, mom_out));

    report.pass = std::all_of(report.checks.begin(), report.checks.end(),
                              [](const EquivalenceCheck& c) { return c.pass; });
    return report;
}

}  // namespace gkpwalk

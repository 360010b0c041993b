#include "gkpwalk/phase_space.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace gkpwalk {

namespace {

constexpr double kPi = 3.14159265358979323846;

bool finite(double v) { return std::isfinite(v); }

bool finite(PhasePoint c) { return finite(c.x) && finite(c.p); }

bool finite(Complex z) { return finite(z.real()) && finite(z.imag()); }

void check_point(PhasePoint c) {
    if (!finite(c)) {
        throw invalid_parameter_error("phase-space point must be finite");
    }
}

// Below exp(-745) the overlap modulus underflows to zero; skip the trig in
// that regime.
constexpr double kLogUnderflow = -745.0;

}  // namespace

void CoherentSuperposition::check_sigma2(double s2) {
    if (!std::isfinite(s2) || s2 <= 0.0) {
        throw invalid_parameter_error("sigma2 must be finite and positive");
    }
}

CoherentSuperposition make_vacuum(double sigma2) {
    return CoherentSuperposition(sigma2, {GaussianTerm{Complex{1.0, 0.0}, PhasePoint{}}});
}

CoherentSuperposition make_wavepacket(double sigma2, PhasePoint center) {
    check_point(center);
    const Complex amp = std::exp(Complex{0.0, center.x * center.p / 2.0});
    return CoherentSuperposition(sigma2, {GaussianTerm{amp, center}});
}

CoherentSuperposition superpose(
    const std::vector<std::pair<Complex, CoherentSuperposition>>& parts) {
    if (parts.empty()) {
        return CoherentSuperposition{};
    }
    const double s2 = parts.front().second.sigma2();
    std::size_t total = 0;
    for (const auto& [coeff, state] : parts) {
        if (state.sigma2() != s2) {
            throw incompatible_width_error("superpose: states must share sigma2");
        }
        if (!finite(coeff)) {
            throw invalid_parameter_error("superpose: coefficient must be finite");
        }
        total += state.size();
    }
    std::vector<GaussianTerm> terms;
    terms.reserve(total);
    for (const auto& [coeff, state] : parts) {
        for (const GaussianTerm& t : state.terms()) {
            terms.push_back(GaussianTerm{coeff * t.amplitude, t.center});
        }
    }
    return CoherentSuperposition(s2, std::move(terms));
}

CoherentSuperposition displace(const CoherentSuperposition& state, PhasePoint delta) {
    check_point(delta);
    std::vector<GaussianTerm> terms;
    terms.reserve(state.size());
    for (const GaussianTerm& t : state.terms()) {
        const double phase = 0.5 * (delta.p * t.center.x - delta.x * t.center.p);
        terms.push_back(GaussianTerm{
            t.amplitude * std::exp(Complex{0.0, phase}),
            PhasePoint{t.center.x + delta.x, t.center.p + delta.p}});
    }
    return CoherentSuperposition(state.sigma2(), std::move(terms));
}

CoherentSuperposition rotate(const CoherentSuperposition& state, double theta) {
    if (state.sigma2() != kSymmetricVacuumSigma2) {
        throw asymmetric_vacuum_error(
            "rotate requires the symmetric vacuum sigma2 = 1/2");
    }
    if (!std::isfinite(theta)) {
        throw invalid_parameter_error("rotation angle must be finite");
    }
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Complex vac_phase = std::exp(Complex{0.0, -theta / 2.0});
    std::vector<GaussianTerm> terms;
    terms.reserve(state.size());
    for (const GaussianTerm& t : state.terms()) {
        terms.push_back(GaussianTerm{
            t.amplitude * vac_phase,
            PhasePoint{t.center.x * c + t.center.p * s,
                       -t.center.x * s + t.center.p * c}});
    }
    return CoherentSuperposition(state.sigma2(), std::move(terms));
}

Complex gaussian_overlap(PhasePoint a, PhasePoint b, double sigma2) {
    const double dx = a.x - b.x;
    const double dp = a.p - b.p;
    const double log_mod = -dx * dx / (8.0 * sigma2) - 0.5 * sigma2 * dp * dp;
    if (log_mod < kLogUnderflow) {
        return Complex{0.0, 0.0};
    }
    const double phase = 0.5 * (a.x * b.p - a.p * b.x);
    return std::polar(std::exp(log_mod), phase);
}

Complex inner_product(const CoherentSuperposition& a, const CoherentSuperposition& b) {
    if (a.sigma2() != b.sigma2()) {
        throw incompatible_width_error("inner_product: states must share sigma2");
    }
    Complex sum{0.0, 0.0};
    for (const GaussianTerm& ta : a.terms()) {
        const Complex ca = std::conj(ta.amplitude);
        for (const GaussianTerm& tb : b.terms()) {
            sum += ca * tb.amplitude * gaussian_overlap(ta.center, tb.center, a.sigma2());
        }
    }
    return sum;
}

double norm_squared(const CoherentSuperposition& state) {
    // Clamp round-off from nearly-cancelling Gram sums.
    return std::max(0.0, inner_product(state, state).real());
}

double norm(const CoherentSuperposition& state) {
    return std::sqrt(norm_squared(state));
}

CoherentSuperposition normalize(const CoherentSuperposition& state) {
    const double n = norm(state);
    if (n < 1e-150) {
        throw zero_norm_error("normalize: state has (near-)zero norm");
    }
    std::vector<GaussianTerm> terms = state.terms();
    for (GaussianTerm& t : terms) {
        t.amplitude /= n;
    }
    return CoherentSuperposition(state.sigma2(), std::move(terms));
}

CoherentSuperposition merge_terms(const CoherentSuperposition& state, double center_tol) {
    if (!std::isfinite(center_tol) || center_tol < 0.0) {
        throw invalid_parameter_error("merge_terms: center_tol must be >= 0");
    }
    std::vector<std::size_t> order(state.size());
    std::iota(order.begin(), order.end(), 0);
    const auto& in = state.terms();
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        if (in[i].center.x != in[j].center.x) return in[i].center.x < in[j].center.x;
        return in[i].center.p < in[j].center.p;
    });

    // Clusters keep the first-seen center; x is nondecreasing over cluster
    // representatives, so only a suffix window can be within tolerance.
    std::vector<GaussianTerm> merged;
    merged.reserve(state.size());
    for (std::size_t idx : order) {
        const GaussianTerm& t = in[idx];
        bool absorbed = false;
        for (std::size_t k = merged.size(); k-- > 0;) {
            if (merged[k].center.x < t.center.x - center_tol) {
                break;
            }
            const double dx = merged[k].center.x - t.center.x;
            const double dp = merged[k].center.p - t.center.p;
            if (dx * dx + dp * dp <= center_tol * center_tol) {
                merged[k].amplitude += t.amplitude;
                absorbed = true;
                break;
            }
        }
        if (!absorbed) {
            merged.push_back(t);
        }
    }

    std::erase_if(merged, [](const GaussianTerm& t) {
        return t.amplitude == Complex{0.0, 0.0};
    });

    double max_amp = 0.0;
    for (const GaussianTerm& t : merged) {
        max_amp = std::max(max_amp, std::abs(t.amplitude));
    }
    const double threshold = kAmplitudePruneRel * max_amp;

    // Pruning a set S changes the norm by at most sum_{i in S} |c_i| (each
    // wavepacket has unit norm), so a budget of 1e-13 * norm keeps both the
    // relative norm change and the fidelity deficit below 1e-12.
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (std::abs(merged[i].amplitude) < threshold) {
            candidates.push_back(i);
        }
    }
    if (!candidates.empty()) {
        CoherentSuperposition merged_state(state.sigma2(), merged);
        const double budget = 1e-13 * norm(merged_state);
        std::sort(candidates.begin(), candidates.end(), [&](std::size_t i, std::size_t j) {
            return std::abs(merged[i].amplitude) < std::abs(merged[j].amplitude);
        });
        std::vector<bool> drop(merged.size(), false);
        double spent = 0.0;
        for (std::size_t i : candidates) {
            const double cost = std::abs(merged[i].amplitude);
            if (spent + cost <= budget) {
                spent += cost;
                drop[i] = true;
            } else {
                break;
            }
        }
        std::vector<GaussianTerm> kept;
        kept.reserve(merged.size());
        for (std::size_t i = 0; i < merged.size(); ++i) {
            if (!drop[i]) kept.push_back(merged[i]);
        }
        merged = std::move(kept);
    }

    return CoherentSuperposition(state.sigma2(), std::move(merged));
}

Complex wavefunction_at(const CoherentSuperposition& state, double coordinate,
                        Axis quadrature) {
    if (!std::isfinite(coordinate)) {
        throw invalid_parameter_error("wavefunction coordinate must be finite");
    }
    const double s2 = state.sigma2();
    Complex sum{0.0, 0.0};
    if (quadrature == Axis::position) {
        const double prefactor = std::pow(2.0 * kPi * s2, -0.25);
        for (const GaussianTerm& t : state.terms()) {
            const double u = coordinate - t.center.x;
            const double log_mod = -u * u / (4.0 * s2);
            if (log_mod < kLogUnderflow) continue;
            const double phase = -0.5 * t.center.x * t.center.p + t.center.p * coordinate;
            sum += t.amplitude * std::polar(prefactor * std::exp(log_mod), phase);
        }
    } else {
        const double prefactor = std::pow(2.0 * s2 / kPi, 0.25);
        for (const GaussianTerm& t : state.terms()) {
            const double k = coordinate - t.center.p;
            const double log_mod = -s2 * k * k;
            if (log_mod < kLogUnderflow) continue;
            const double phase = 0.5 * t.center.x * t.center.p - t.center.x * coordinate;
            sum += t.amplitude * std::polar(prefactor * std::exp(log_mod), phase);
        }
    }
    return sum;
}

}  // namespace gkpwalk

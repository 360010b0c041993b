#pragma once

#include <complex>
#include <utility>
#include <vector>

#include "gkpwalk/errors.hpp"

namespace gkpwalk {

using Complex = std::complex<double>;

// Phase-space axis / quadrature label, shared by the walk protocol and the
// analysis routines.
enum class Axis { position, momentum };

// Natural units, hbar = 1, [x,p] = i.
//
// Conventions used throughout (fixed once, validated by the quadrature and
// Fock-basis oracles in the test suite):
//
//   D(x0,p0) = exp(-i x0 p + i p0 x)            (Weyl displacement)
//   (D(x0,p0) psi)(x) = e^{-i x0 p0 / 2} e^{i p0 x} psi(x - x0)
//   D(a) D(b) = exp(i (a_p b_x - a_x b_p) / 2) D(a + b)
//   R(theta) = exp(-i theta (x^2 + p^2) / 2)
//   R(theta) D(c)|vac> = e^{-i theta/2} D(c') |vac>,
//       c' = (c_x cos t + c_p sin t, -c_x sin t + c_p cos t)
//
// Every state is a finite superposition of equal-width displaced vacua
// amplitude * D(center)|vac>. The phase bookkeeping lives entirely in the
// amplitudes; centers carry no implicit phase.

struct PhasePoint {
    double x = 0.0;
    double p = 0.0;
};

// One complex-weighted displaced vacuum wavepacket: amplitude * D(center)|vac>.
struct GaussianTerm {
    Complex amplitude{0.0, 0.0};
    PhasePoint center{};
};

// Default vacuum width: symmetric vacuum of the harmonic oscillator.
inline constexpr double kSymmetricVacuumSigma2 = 0.5;

// Centers closer than this (Euclidean, natural units) are treated as the
// same lattice site. Walk lattices are exact multiples of the kick size, so
// the tolerance only absorbs float drift.
inline constexpr double kDefaultMergeTol = 1e-9;

// Relative amplitude threshold below which a term is a candidate for pruning.
inline constexpr double kAmplitudePruneRel = 1e-15;

// Finite superposition of displaced vacuum wavepackets sharing one width.
// An empty term list is the zero vector. Value type; all operations below
// are pure functions, so instances are safely shareable across threads.
class CoherentSuperposition {
  public:
    CoherentSuperposition() = default;

    explicit CoherentSuperposition(double sigma2) : sigma2_(sigma2) {
        check_sigma2(sigma2);
    }

    CoherentSuperposition(double sigma2, std::vector<GaussianTerm> terms)
        : sigma2_(sigma2), terms_(std::move(terms)) {
        check_sigma2(sigma2);
    }

    double sigma2() const { return sigma2_; }
    const std::vector<GaussianTerm>& terms() const { return terms_; }
    std::size_t size() const { return terms_.size(); }
    bool empty() const { return terms_.empty(); }

  private:
    static void check_sigma2(double s2);

    double sigma2_ = kSymmetricVacuumSigma2;
    std::vector<GaussianTerm> terms_;
};

// Vacuum state of width sigma2: single term, amplitude 1, center (0,0).
CoherentSuperposition make_vacuum(double sigma2);

// Textbook Gaussian wavepacket whose position wavefunction is
// (2 pi s2)^{-1/4} exp(-(x-c_x)^2/(4 s2) + i c_p x), i.e. the plane-phase
// object e^{i c_x c_p / 2} D(center)|vac>. This is the only place the
// e^{i r s / 2} conversion phase enters; everything else works with plain
// D(center)|vac> terms.
CoherentSuperposition make_wavepacket(double sigma2, PhasePoint center);

// Linear combination sum_k coefficient_k * state_k. Term lists concatenate
// with amplitudes scaled; the result is NOT normalized.
CoherentSuperposition superpose(
    const std::vector<std::pair<Complex, CoherentSuperposition>>& parts);

// D(delta) applied termwise: amplitude picks up the Weyl phase
// exp(i (delta_p c_x - delta_x c_p) / 2), center shifts by delta. Unitary.
CoherentSuperposition displace(const CoherentSuperposition& state, PhasePoint delta);

// R(theta) = exp(-i theta (x^2+p^2)/2). Requires the symmetric vacuum
// (sigma2 = 1/2); throws asymmetric_vacuum_error otherwise, since rotation
// does not keep a squeezed vacuum inside the equal-width family.
CoherentSuperposition rotate(const CoherentSuperposition& state, double theta);

// Closed-form overlap <D(a)vac | D(b)vac> of two equal-width displaced vacua:
//   exp(i (a_x b_p - a_p b_x)/2) exp(-(a_x-b_x)^2/(8 s2)) exp(-s2 (a_p-b_p)^2/2)
Complex gaussian_overlap(PhasePoint a, PhasePoint b, double sigma2);

// Gram sum <a|b> = sum_ij conj(c_i) d_j <G_i|G_j>. Conjugate-symmetric,
// Cauchy-Schwarz bounded. Throws incompatible_width_error on sigma2 mismatch.
Complex inner_product(const CoherentSuperposition& a, const CoherentSuperposition& b);

double norm_squared(const CoherentSuperposition& state);

// sqrt of the real part of <s|s>, with tiny negative round-off (Gram sums of
// nearly-cancelling terms) clamped to zero.
double norm(const CoherentSuperposition& state);

// Scales amplitudes by 1/norm. Throws zero_norm_error on (near-)zero vectors.
CoherentSuperposition normalize(const CoherentSuperposition& state);

// Sums terms whose centers coincide within center_tol (Euclidean) and drops
// negligible amplitudes, but only when the total dropped weight keeps the
// relative norm change below 1e-12. The represented vector is unchanged up
// to that tolerance. Output is sorted by center (x, then p).
CoherentSuperposition merge_terms(const CoherentSuperposition& state,
                                  double center_tol = kDefaultMergeTol);

// Position- or momentum-space wavefunction at a single coordinate.
//   position:  sum_i c_i e^{-i x_i p_i/2} e^{i p_i x} psi_sigma(x - x_i)
//   momentum:  sum_i c_i e^{+i x_i p_i/2} e^{-i x_i p} psit_sigma(p - p_i)
// with psi_sigma(u) = (2 pi s2)^{-1/4} e^{-u^2/(4 s2)} and its Fourier dual
// psit_sigma(k) = (2 s2 / pi)^{1/4} e^{-s2 k^2}.
Complex wavefunction_at(const CoherentSuperposition& state, double coordinate,
                        Axis quadrature);

}  // namespace gkpwalk

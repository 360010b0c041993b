#pragma once

// Independent numerical ground truth for the closed-form algebra in the
// library. Everything here evaluates wavefunctions and integrals directly
// from the defining formulas and never calls the code paths it checks.

#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "gkpwalk/phase_space.hpp"

namespace gkpwalk::oracle {

// Composite Simpson on [a, b], starting at 2^14 intervals and doubling until
// two successive refinements agree to 1e-10 (absolute, both components).
std::complex<double> simpson(const std::function<std::complex<double>(double)>& f,
                             double a, double b);

// Position wavefunction of a term list, written out from the displaced
// Gaussian formula (independent of wavefunction_at).
std::complex<double> position_wavefunction(const CoherentSuperposition& state, double x);

// Integration half-width covering all Gaussian mass of both states.
double integration_limit(const CoherentSuperposition& a, const CoherentSuperposition& b);

// <a|b> by quadrature of the explicit wavefunctions.
std::complex<double> inner_product(const CoherentSuperposition& a,
                                   const CoherentSuperposition& b);

// Wigner transform W(x,p) = (1/pi) Int conj(psi(x+y)) psi(x-y) e^{2ipy} dy
// by quadrature.
double wigner(const CoherentSuperposition& state, double x, double p);

// <bra| e^{-i theta (x^2+p^2)/2} |state> via a Hermite-basis expansion: both
// states are projected onto harmonic eigenfunctions by quadrature and the
// eigenphases e^{-i theta (n + 1/2)} are applied mode by mode. Requires
// sigma2 = 1/2 on both states.
std::complex<double> rotated_overlap(const CoherentSuperposition& bra,
                                     const CoherentSuperposition& state, double theta,
                                     int n_max = 140);

// Binomial row C(2N, k)/2^{2N} for k = 0..2N via Pascal's triangle, exact in
// doubles for 2N <= 40 (all entries below 2^53).
std::vector<double> pascal_weights(int half_steps);

// Random test states: 1..max_terms terms, centers in [-2.5, 2.5]^2,
// amplitudes in the unit disk.
CoherentSuperposition random_state(std::mt19937& rng, int max_terms, double sigma2);

}  // namespace gkpwalk::oracle

#pragma once

#include <string>
#include <vector>

#include "gkpwalk/walk.hpp"

namespace gkpwalk {

// Element-level model of the looping interferometer: one traversal applies
// R- (polarization mix), the slanted-mirror momentum kick, the beam-splitter
// recombination, R+, and the post-selecting beam splitter, realizing one walk
// step per pass. All elements are lossless.
//
// Fixed conventions (the physical phase freedoms are pinned once and tested):
//   * slant kick: the clockwise |H> path gets D(0,+w), the |V> path D(0,-w);
//   * the |V> path picks up a reflection sign at the recombination;
//   * the post-selecting splitter sends |H> to the detector and keeps |V> in
//     the loop.
// Under these the detector carries the antisymmetric kick combination and the
// loop keeps the symmetric one, so 2N passes reproduce the momentum-axis walk
// output amplitude for amplitude.

enum class RotatorKind { minus, plus };
enum class LensDirection { forward, inverse };
enum class MirrorMode { reflect, transmit };

struct OpticalElement {
    enum class Kind {
        pbs,
        pol_rotator_minus,
        pol_rotator_plus,
        slant_mirror,
        switchable_mirror,
        fourier_lens,
    };
    Kind kind;
    std::string label;
    double w = 0.0;                                    // slant_mirror
    MirrorMode mirror_mode = MirrorMode::reflect;      // switchable_mirror
    LensDirection direction = LensDirection::forward;  // fourier_lens
};

// The labeled element list of the standard walking module, loop order.
std::vector<OpticalElement> standard_sagnac_elements(double w);

// R- := |-><H| + |+><V|  and  R+ := |+><H| + |-><V| on the coin.
HybridState apply_pol_rotator(const HybridState& state, RotatorKind which);

// Slanted-mirror momentum kick: D(0,+w) on |H>, D(0,-w) on |V>.
HybridState apply_slant_kick(const HybridState& state, double w);

// Recombination at the splitter: the reflected |V> path picks up a sign.
// The second output port is exactly empty for ideal elements (the two paths
// arrive with orthogonal polarizations), which run_sagnac_protocol records.
HybridState apply_pbs_recombine(const HybridState& state);

struct PbsSplit {
    HybridState detector_port;  // |H>-tagged
    HybridState kept_port;      // |V>-tagged, continues the loop
};

// Post-selecting split: |H> transmits to the detector, |V> reflects into the
// loop. Norm^2 is conserved across the two ports.
PbsSplit apply_pbs_postselect(const HybridState& state);

// Applies a single one-port element (rotators, kick, recombine, lens on the
// walker branches). The post-selecting pbs has two outputs; use
// apply_pbs_postselect for it.
HybridState apply_element(const HybridState& state, const OpticalElement& element);

struct SagnacStepRecord {
    int step = 0;
    HybridState after_r_minus;
    HybridState after_kick;
    HybridState after_r_plus;  // recombination sign already applied
    HybridState detector_port;
    HybridState kept_port;
    double success_prob = 0.0;
    double detector_norm2 = 0.0;
    double kept_norm2 = 0.0;
    double recombine_discard_norm2 = 0.0;  // identically zero for ideal elements
    MirrorMode mirror_mode = MirrorMode::reflect;
};

struct ProtocolTrace {
    int half_steps = 0;
    double w = 0.0;
    double sigma2 = kSymmetricVacuumSigma2;
    std::vector<SagnacStepRecord> steps;
    HybridState final_output;  // coin |V>, emitted through the transparent mirror
    double success_probability = 0.0;
};

// 2N traversals of the loop on input (walker) x |V>. The switchable mirror
// reflects for steps 1..2N-1 and transmits at step 2N; the final walker
// branch equals the momentum-axis run_walk output.
ProtocolTrace run_sagnac_protocol(int half_steps, double w,
                                  const CoherentSuperposition& input);

// Ideal lens between conjugate planes: forward = rotate by -pi/2 (the inverse
// Fourier rotation), inverse = rotate by +pi/2. Requires sigma2 = 1/2.
CoherentSuperposition apply_fourier_lens(const CoherentSuperposition& state,
                                         LensDirection direction);

}  // namespace gkpwalk

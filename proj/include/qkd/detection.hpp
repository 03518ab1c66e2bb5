#pragma once

#include <array>

#include "qkd/events.hpp"
#include "qkd/system_model.hpp"

namespace qkd {

/// One detection outcome of a pulse at Bob's two-detector stage.
/// detector and cause are meaningful only when kind == Single.
struct DetectionOutcome {
    OutcomeKind kind{OutcomeKind::NoDetection};
    int detector{0}; ///< 1 or 2
    Cause cause{Cause::RealCount};
};

/// Distribution over the six possible detection outcomes of one pulse:
/// no click, single click on detector j caused by a real or dark avalanche,
/// or a double click.
struct OutcomeDistribution {
    double no_detection{};
    std::array<double, 2> single_real{}; ///< indexed by detector - 1
    std::array<double, 2> single_dark{};
    double double_detection{};

    double probability(const DetectionOutcome& outcome) const;
    double sum() const;
};

/// Probability that i photons at the detector entrance trigger an avalanche:
/// 1 - exp(-p_a * eta * i).
double real_count_probability(int photons, const Detector& detector);

/// Probability of a dark avalanche within one gate: 1 - exp(-p_a * N_d).
double dark_count_probability(const Detector& detector);

/// Full outcome distribution for m photons arriving at Bob, with the signal
/// routed toward signal_detector (1 or 2) and each photon misrouted with
/// probability e_det. Real and dark processes per detector are independent;
/// a detector clicks when either fires. A single click counts as RealCount
/// whenever the real avalanche fired, else DarkCount.
OutcomeDistribution outcome_distribution(int m, int signal_detector, double e_det,
                                         const Detector& d1, const Detector& d2);

} // namespace qkd

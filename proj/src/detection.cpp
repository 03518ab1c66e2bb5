#include "qkd/detection.hpp"

#include <cmath>
#include <stdexcept>

#include "qkd/transmission.hpp"

namespace qkd {

double OutcomeDistribution::probability(const DetectionOutcome& outcome) const {
    switch (outcome.kind) {
        case OutcomeKind::NoDetection:
            return no_detection;
        case OutcomeKind::Double:
            return double_detection;
        case OutcomeKind::Single:
            if (outcome.detector != 1 && outcome.detector != 2) {
                throw std::domain_error("single-detection outcome needs detector 1 or 2");
            }
            return outcome.cause == Cause::RealCount ? single_real[outcome.detector - 1]
                                                     : single_dark[outcome.detector - 1];
    }
    return 0.0;
}

double OutcomeDistribution::sum() const {
    return no_detection + single_real[0] + single_dark[0] + single_real[1] + single_dark[1] +
           double_detection;
}

double real_count_probability(int photons, const Detector& detector) {
    if (photons < 0) {
        throw std::domain_error("photon count must be >= 0");
    }
    if (photons == 0) {
        return 0.0;
    }
    return -std::expm1(-detector.avalanche_prob * detector.efficiency *
                       static_cast<double>(photons));
}

double dark_count_probability(const Detector& detector) {
    return -std::expm1(-detector.avalanche_prob * detector.dark_carriers);
}

OutcomeDistribution outcome_distribution(int m, int signal_detector, double e_det,
                                         const Detector& d1, const Detector& d2) {
    if (m < 0) {
        throw std::domain_error("arriving photon count must be >= 0");
    }
    if (signal_detector != 1 && signal_detector != 2) {
        throw std::domain_error("signal detector must be 1 or 2");
    }
    if (!(e_det >= 0.0 && e_det <= 0.5)) {
        throw std::domain_error("optical error probability must lie in [0,0.5]");
    }

    const double p_dark1 = dark_count_probability(d1);
    const double p_dark2 = dark_count_probability(d2);

    OutcomeDistribution dist;
    // Sum over the number of photons routed to the signal detector.
    for (int k = 0; k <= m; ++k) {
        const double weight = binomial_transmission(m, k, 1.0 - e_det);
        if (weight == 0.0) {
            continue;
        }
        const int i1 = signal_detector == 1 ? k : m - k;
        const int i2 = m - i1;
        const double p_real1 = real_count_probability(i1, d1);
        const double p_real2 = real_count_probability(i2, d2);
        const double quiet1 = (1.0 - p_real1) * (1.0 - p_dark1);
        const double quiet2 = (1.0 - p_real2) * (1.0 - p_dark2);

        dist.no_detection += weight * quiet1 * quiet2;
        dist.double_detection += weight * (1.0 - quiet1) * (1.0 - quiet2);
        dist.single_real[0] += weight * p_real1 * quiet2;
        dist.single_dark[0] += weight * (1.0 - p_real1) * p_dark1 * quiet2;
        dist.single_real[1] += weight * quiet1 * p_real2;
        dist.single_dark[1] += weight * quiet1 * (1.0 - p_real2) * p_dark2;
    }
    return dist;
}

} // namespace qkd

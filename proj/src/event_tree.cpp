#include "qkd/event_tree.hpp"

#include <cinttypes>
#include <cstdint>
#include <cstdio>
#include <ostream>

#include "qkd/errors.hpp"
#include "qkd/transmission.hpp"

namespace qkd {

namespace {

// FNV-1a over a canonical field dump; stable across runs and platforms.
class Digest {
  public:
    void add(double value) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%.17g;", value);
        for (const char* p = buf; *p != '\0'; ++p) {
            hash_ ^= static_cast<std::uint64_t>(static_cast<unsigned char>(*p));
            hash_ *= 0x100000001b3ull;
        }
    }

    std::string str() const {
        char buf[20];
        std::snprintf(buf, sizeof(buf), "%016" PRIx64, hash_);
        return buf;
    }

  private:
    std::uint64_t hash_ = 0xcbf29ce484222325ull;
};

std::string config_digest(const SystemConfig& c) {
    Digest d;
    d.add(c.source.pulse_energy_j);
    d.add(c.source.wavelength_m);
    d.add(c.source.pulse_rate_hz);
    d.add(c.path.channel_atten_db_per_km);
    d.add(c.path.channel_length_km);
    d.add(c.path.extra_loss_db);
    d.add(c.path.voa_alice_db);
    d.add(c.path.voa_bob_db);
    for (const Detector* det : {&c.detector1, &c.detector2}) {
        d.add(det->efficiency);
        d.add(det->dark_carriers);
        d.add(det->avalanche_prob);
    }
    for (double p : c.protocol.alice_state_probs) {
        d.add(p);
    }
    for (double p : c.protocol.bob_basis_probs) {
        d.add(p);
    }
    d.add(c.protocol.sifting_ratio_override.value_or(-1.0));
    d.add(c.protocol.optical_error_prob);
    d.add(c.engine.mu_override.value_or(-1.0));
    d.add(c.engine.n_max ? static_cast<double>(*c.engine.n_max) : -1.0);
    d.add(c.engine.tail_tol);
    d.add(c.engine.mu_composition == MuComposition::OneWay ? 0.0 : 1.0);
    return d.str();
}

struct PathContext {
    const SystemConfig* config;
    double p_cb;
    double e_det;
    bool aggregate_real; // lumped mode collapses the two detectors
};

// Emits every leaf of one (n, m) path. base_prob already contains
// p_n(mu) * p_m(n). The signal lands on either detector with probability
// 1/2 (Alice's bit is uniform), so outcome probabilities average the two
// routings; for m = 0 the two coincide and the dark pair splits half/half.
void emit_path_leaves(const PathContext& ctx, int n, int m, double base_prob,
                      std::vector<LeafEvent>& leaves) {
    const double correct_prob = base_prob * ctx.p_cb;

    const OutcomeDistribution sig1 =
        outcome_distribution(m, 1, ctx.e_det, ctx.config->detector1, ctx.config->detector2);
    const OutcomeDistribution sig2 =
        m == 0 ? sig1
               : outcome_distribution(m, 2, ctx.e_det, ctx.config->detector1, ctx.config->detector2);

    leaves.push_back({n, m, Basis::Correct, OutcomeKind::NoDetection, std::nullopt, std::nullopt,
                      Bit::None, correct_prob * 0.5 * (sig1.no_detection + sig2.no_detection),
                      Subgroup::Discard});

    if (m >= 1) {
        if (ctx.aggregate_real) {
            const double hit = 0.5 * (sig1.single_real[0] + sig2.single_real[1]);
            const double miss = 0.5 * (sig1.single_real[1] + sig2.single_real[0]);
            leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, std::nullopt,
                              Cause::RealCount, Bit::Correct, correct_prob * hit,
                              Subgroup::BitReal});
            leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, std::nullopt,
                              Cause::RealCount, Bit::Error, correct_prob * miss,
                              Subgroup::ErrReal});
        } else {
            for (int det = 1; det <= 2; ++det) {
                const double when_signal =
                    (det == 1 ? sig1 : sig2).single_real[det - 1]; // click on the signal detector
                const double when_other = (det == 1 ? sig2 : sig1).single_real[det - 1];
                leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, det,
                                  Cause::RealCount, Bit::Correct,
                                  correct_prob * 0.5 * when_signal, Subgroup::BitReal});
                leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, det,
                                  Cause::RealCount, Bit::Error, correct_prob * 0.5 * when_other,
                                  Subgroup::ErrReal});
            }
        }
    }

    // Dark pair, detector-aggregated: a dark click on the detector that
    // encodes Alice's bit reads correct, on the opposite detector it reads
    // as an error.
    const double dark_hit = 0.5 * (sig1.single_dark[0] + sig2.single_dark[1]);
    const double dark_miss = 0.5 * (sig1.single_dark[1] + sig2.single_dark[0]);
    leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, std::nullopt, Cause::DarkCount,
                      Bit::Correct, correct_prob * dark_hit, Subgroup::BitDark});
    leaves.push_back({n, m, Basis::Correct, OutcomeKind::Single, std::nullopt, Cause::DarkCount,
                      Bit::Error, correct_prob * dark_miss, Subgroup::ErrDark});

    leaves.push_back({n, m, Basis::Correct, OutcomeKind::Double, std::nullopt, std::nullopt,
                      Bit::None, correct_prob * 0.5 * (sig1.double_detection + sig2.double_detection),
                      Subgroup::Discard});

    leaves.push_back({n, m, Basis::Incorrect, std::nullopt, std::nullopt, std::nullopt, Bit::None,
                      base_prob * (1.0 - ctx.p_cb), Subgroup::Discard});
}

EventTree build_from_generation(const SystemConfig& config,
                                const std::vector<std::pair<int, double>>& generation,
                                double tail_mass, TreeMode mode, double mu) {
    EventTree tree;
    tree.mode = mode;
    tree.mu = mu;
    tree.tail_discard = tail_mass;
    tree.config_digest = config_digest(config);
    tree.p_qc = channel_survival_probability(config);
    tree.p_cb = correct_basis_probability(config.protocol);

    const PathContext ctx{&config, tree.p_cb, config.protocol.optical_error_prob,
                          mode == TreeMode::Lumped};

    for (const auto& [n, p_n] : generation) {
        for (int m = 0; m <= n; ++m) {
            const double p_m = binomial_transmission(n, m, tree.p_qc);
            emit_path_leaves(ctx, n, m, p_n * p_m, tree.leaves);
        }
    }
    return tree;
}

} // namespace

double EventTree::total_probability() const {
    double sum = tail_discard;
    for (const LeafEvent& leaf : leaves) {
        sum += leaf.prob;
    }
    return sum;
}

EventTree build_tree(const SystemConfig& config, TreeMode mode) {
    validate(config);
    const double mu = mean_photon_number(config);
    if (mode == TreeMode::Lumped) {
        const ThreeBranch branch = lumped_three_branch(mu);
        // The two-plus lump transmits and detects as a two-photon pulse.
        return build_from_generation(
            config, {{0, branch.p0}, {1, branch.p1}, {2, branch.p2plus}}, 0.0, mode, mu);
    }
    const PhotonNumberDistribution dist =
        config.engine.n_max ? truncated_distribution_fixed(mu, *config.engine.n_max)
                            : truncated_distribution(mu, config.engine.tail_tol);
    std::vector<std::pair<int, double>> generation;
    generation.reserve(dist.probs.size());
    for (int n = 0; n <= dist.n_max(); ++n) {
        generation.emplace_back(n, dist.probs[n]);
    }
    return build_from_generation(config, generation, dist.tail_mass, mode, mu);
}

EventTree build_tree(const SystemConfig& config, const PhotonNumberDistribution& generation) {
    validate(config);
    std::vector<std::pair<int, double>> branches;
    branches.reserve(generation.probs.size());
    for (int n = 0; n <= generation.n_max(); ++n) {
        branches.emplace_back(n, generation.probs[n]);
    }
    return build_from_generation(config, branches, generation.tail_mass, TreeMode::Exact,
                                 generation.mu);
}

SubgroupSums subgroup_sums(const EventTree& tree) {
    SubgroupSums sums;
    for (const LeafEvent& leaf : tree.leaves) {
        switch (leaf.subgroup) {
            case Subgroup::ErrDark: sums.err_dark += leaf.prob; break;
            case Subgroup::BitDark: sums.bit_dark += leaf.prob; break;
            case Subgroup::ErrReal: sums.err_real += leaf.prob; break;
            case Subgroup::BitReal: sums.bit_real += leaf.prob; break;
            case Subgroup::Discard: break;
        }
    }
    return sums;
}

std::size_t classified_leaf_count(const EventTree& tree) {
    std::size_t count = 0;
    for (const LeafEvent& leaf : tree.leaves) {
        if (leaf.subgroup != Subgroup::Discard) {
            ++count;
        }
    }
    return count;
}

void dump_tree(const EventTree& tree, std::ostream& out) {
    out << "n\tm\tbasis\toutcome\tdetector\tcause\tbit\tsubgroup\tprob\n";
    char prob[32];
    for (const LeafEvent& leaf : tree.leaves) {
        std::snprintf(prob, sizeof(prob), "%.10g", leaf.prob);
        out << leaf.n << '\t' << leaf.m << '\t' << to_string(leaf.basis) << '\t'
            << (leaf.outcome ? to_string(*leaf.outcome) : "-") << '\t';
        if (leaf.detector) {
            out << *leaf.detector;
        } else {
            out << '-';
        }
        out << '\t' << (leaf.cause ? to_string(*leaf.cause) : "-") << '\t' << to_string(leaf.bit)
            << '\t' << to_string(leaf.subgroup) << '\t' << prob << '\n';
    }
    std::snprintf(prob, sizeof(prob), "%.10g", tree.tail_discard);
    out << "tail\t-\t-\t-\t-\t-\t-\tdiscard\t" << prob << '\n';
}

} // namespace qkd

#include "qkd/monte_carlo.hpp"

#include <cmath>
#include <random>
#include <thread>
#include <vector>

#include "qkd/detection.hpp"
#include "qkd/errors.hpp"
#include "qkd/events.hpp"
#include "qkd/transmission.hpp"

namespace qkd {

namespace {

constexpr std::uint64_t kBlockSize = 1u << 16;

// All sampling goes through uniform doubles built from raw generator words,
// so streams do not depend on the standard library's distribution
// implementations.
class BlockRng {
  public:
    BlockRng(std::uint64_t seed, std::uint64_t block) : gen_(mix(seed, block)) {}

    double uniform01() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    bool bernoulli(double p) { return uniform01() < p; }

    // Inversion sampling; adequate for the mean photon numbers a link-budget
    // model sees. The cap guards against degenerate cumulative sums.
    int poisson(double mu) {
        if (mu <= 0.0) {
            return 0;
        }
        const double u = uniform01();
        double term = std::exp(-mu);
        double cumulative = term;
        int n = 0;
        while (u >= cumulative && n < 100000) {
            ++n;
            term *= mu / static_cast<double>(n);
            cumulative += term;
        }
        return n;
    }

    int binomial(int trials, double p) {
        int hits = 0;
        for (int i = 0; i < trials; ++i) {
            if (bernoulli(p)) {
                ++hits;
            }
        }
        return hits;
    }

  private:
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t block) {
        // splitmix64 over the (seed, block) pair
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (block + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::mt19937_64 gen_;
};

struct Tally {
    std::uint64_t err_dark = 0;
    std::uint64_t bit_dark = 0;
    std::uint64_t err_real = 0;
    std::uint64_t bit_real = 0;
    std::uint64_t no_detection = 0;
    std::uint64_t double_click = 0;
    std::uint64_t wrong_basis = 0;

    void merge(const Tally& other) {
        err_dark += other.err_dark;
        bit_dark += other.bit_dark;
        err_real += other.err_real;
        bit_real += other.bit_real;
        no_detection += other.no_detection;
        double_click += other.double_click;
        wrong_basis += other.wrong_basis;
    }
};

struct PulseModel {
    double mu;
    double p_qc;
    double p_cb;
    double e_det;
    double p_dark1;
    double p_dark2;
    double eta_pa1; // avalanche_prob * efficiency per detector
    double eta_pa2;
};

void run_block(const PulseModel& model, std::uint64_t count, BlockRng& rng, Tally& tally) {
    for (std::uint64_t pulse = 0; pulse < count; ++pulse) {
        const int n = rng.poisson(model.mu);
        const int m = rng.binomial(n, model.p_qc);

        if (!rng.bernoulli(model.p_cb)) {
            ++tally.wrong_basis;
            continue;
        }

        // Alice's bit decides which detector encodes "correct".
        const int signal = rng.bernoulli(0.5) ? 1 : 2;
        const int toward_signal = rng.binomial(m, 1.0 - model.e_det);
        const int i1 = signal == 1 ? toward_signal : m - toward_signal;
        const int i2 = m - i1;

        const bool real1 = i1 > 0 && rng.bernoulli(-std::expm1(-model.eta_pa1 * i1));
        const bool dark1 = rng.bernoulli(model.p_dark1);
        const bool real2 = i2 > 0 && rng.bernoulli(-std::expm1(-model.eta_pa2 * i2));
        const bool dark2 = rng.bernoulli(model.p_dark2);

        const bool click1 = real1 || dark1;
        const bool click2 = real2 || dark2;
        if (!click1 && !click2) {
            ++tally.no_detection;
            continue;
        }
        if (click1 && click2) {
            ++tally.double_click;
            continue;
        }

        const int fired = click1 ? 1 : 2;
        const Cause cause = (fired == 1 ? real1 : real2) ? Cause::RealCount : Cause::DarkCount;
        switch (classify_single(cause, fired == signal)) {
            case Subgroup::ErrDark: ++tally.err_dark; break;
            case Subgroup::BitDark: ++tally.bit_dark; break;
            case Subgroup::ErrReal: ++tally.err_real; break;
            case Subgroup::BitReal: ++tally.bit_real; break;
            case Subgroup::Discard: break; // unreachable for singles
        }
    }
}

} // namespace

SimulationResult simulate(const SystemConfig& config, std::uint64_t pulses, std::uint64_t seed,
                          unsigned threads) {
    validate(config);
    if (pulses == 0) {
        throw ConfigError("pulse count must be > 0");
    }

    PulseModel model{};
    model.mu = mean_photon_number(config);
    model.p_qc = channel_survival_probability(config);
    model.p_cb = correct_basis_probability(config.protocol);
    model.e_det = config.protocol.optical_error_prob;
    model.p_dark1 = dark_count_probability(config.detector1);
    model.p_dark2 = dark_count_probability(config.detector2);
    model.eta_pa1 = config.detector1.avalanche_prob * config.detector1.efficiency;
    model.eta_pa2 = config.detector2.avalanche_prob * config.detector2.efficiency;

    const std::uint64_t block_count = (pulses + kBlockSize - 1) / kBlockSize;
    if (threads == 0) {
        const unsigned hw = std::thread::hardware_concurrency();
        threads = hw == 0 ? 1 : hw;
    }
    if (threads > block_count) {
        threads = static_cast<unsigned>(block_count);
    }

    std::vector<Tally> per_worker(threads);
    auto worker = [&](unsigned worker_index) {
        for (std::uint64_t block = worker_index; block < block_count; block += threads) {
            const std::uint64_t begin = block * kBlockSize;
            const std::uint64_t count = std::min<std::uint64_t>(kBlockSize, pulses - begin);
            BlockRng rng(seed, block);
            run_block(model, count, rng, per_worker[worker_index]);
        }
    };

    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(threads);
        for (unsigned t = 0; t < threads; ++t) {
            pool.emplace_back(worker, t);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    Tally total;
    for (const Tally& t : per_worker) {
        total.merge(t);
    }

    SimulationResult result;
    result.pulses = pulses;
    result.seed = seed;
    result.err_dark = total.err_dark;
    result.bit_dark = total.bit_dark;
    result.err_real = total.err_real;
    result.bit_real = total.bit_real;
    result.discard_no_detection = total.no_detection;
    result.discard_double = total.double_click;
    result.discard_wrong_basis = total.wrong_basis;
    return result;
}

StandardErrors estimate_standard_errors(const SimulationResult& result) {
    StandardErrors se;
    const double p = result.p_sigma_hat();
    se.p_sigma = result.pulses == 0
                     ? 0.0
                     : std::sqrt(p * (1.0 - p) / static_cast<double>(result.pulses));
    if (const auto q = result.qber_hat()) {
        se.qber = std::sqrt(*q * (1.0 - *q) / static_cast<double>(result.sifted_bits()));
    }
    return se;
}

} // namespace qkd

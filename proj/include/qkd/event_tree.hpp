#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qkd/detection.hpp"
#include "qkd/events.hpp"
#include "qkd/photon_statistics.hpp"
#include "qkd/system_model.hpp"

namespace qkd {

/// Exact mode expands the truncated photon-number distribution; Lumped mode
/// reproduces the three-branch generation split (zero / one / two-plus
/// photons, the lump treated as a two-photon pulse) with detector-aggregated
/// single-count leaves.
enum class TreeMode { Exact, Lumped };

/// One terminal event: the path through generation (n), transmission (m),
/// basis comparison, detection outcome and bit correctness, with its
/// probability and subgroup classification.
///
/// outcome is empty for wrong-basis leaves (discarded before detection is
/// interpreted). detector is empty for detector-aggregated single leaves:
/// dark pairs in both modes, real pairs in lumped mode.
struct LeafEvent {
    int n{};
    int m{};
    Basis basis{Basis::Correct};
    std::optional<OutcomeKind> outcome;
    std::optional<int> detector;
    std::optional<Cause> cause;
    Bit bit{Bit::None};
    double prob{};
    Subgroup subgroup{Subgroup::Discard};
};

/// Probability mass per sifted-bit subgroup.
struct SubgroupSums {
    double err_dark{};
    double bit_dark{};
    double err_real{};
    double bit_real{};

    double total() const { return err_dark + bit_dark + err_real + bit_real; }
};

/// Flat enumeration of every terminal event plus the photon-number
/// truncation remainder. Leaves are ordered by (n, m, basis, outcome,
/// detector, cause, bit).
struct EventTree {
    std::vector<LeafEvent> leaves;
    double tail_discard{};
    std::string config_digest;
    TreeMode mode{TreeMode::Exact};
    double mu{};
    double p_qc{};
    double p_cb{};

    double total_probability() const;
};

/// Builds the full event tree for a validated configuration.
EventTree build_tree(const SystemConfig& config, TreeMode mode = TreeMode::Exact);

/// Builds the tree from caller-supplied photon-number statistics (exact-mode
/// enumeration); entry point for alternative source models.
EventTree build_tree(const SystemConfig& config, const PhotonNumberDistribution& generation);

/// Sums classified leaf probabilities by subgroup; Discard and tail mass
/// are excluded.
SubgroupSums subgroup_sums(const EventTree& tree);

/// Number of non-discard leaves. Lumped mode yields 18; exact mode yields
/// 4 * (#paths with m >= 1) + 2 * (#paths).
std::size_t classified_leaf_count(const EventTree& tree);

/// Writes the tree as tab-separated text, one leaf per line.
void dump_tree(const EventTree& tree, std::ostream& out);

} // namespace qkd

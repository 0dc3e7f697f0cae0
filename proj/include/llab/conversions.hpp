#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "llab/dimensions.hpp"
#include "llab/hypothesis.hpp"

namespace llab {

// An extremal dimension value: the largest threshold dimension among
// classes of Littlestone dimension <= arg (t_of_d), or the converse
// (d_of_t). The generic bound 2^(arg+1)-1 is always valid; exact values
// are returned only when they can be certified at desk scale (a verified
// witness class meeting the theoretical ceiling), otherwise the exact mode
// reports out_of_budget.
struct DimensionBound {
    enum class Kind { t_of_d, d_of_t };

    Kind kind = Kind::t_of_d;
    uint32_t arg = 0;
    uint32_t value = 0;
    bool exact = false;
    bool out_of_budget = false;
};

DimensionBound dim_bound(DimensionBound::Kind kind, uint32_t arg, bool exact);

// Functions on an ordered sub-domain that are inconsistent with every
// collected non-realizable sample. Contains every restriction of a member
// of the source class to the sub-domain. Member bit i = value on
// sub_domain[i].
struct InducedFiniteClass {
    std::vector<Point> sub_domain;  // sorted, unique
    FiniteClass members;            // over positions 0..|sub_domain|-1
};

// Samples must only mention points of sub_domain; self-contradictory
// samples exclude nothing.
InducedFiniteClass induced_class_from_samples(std::vector<Point> sub_domain,
                                              const std::vector<Sample>& nonrealizable);

// Per-call enumeration counters, shared with the returned oracle.
struct ConversionStats {
    uint64_t calls = 0;
    uint64_t trees_enumerated = 0;
    uint64_t sequences_enumerated = 0;
    uint64_t samples_collected = 0;
    uint64_t induced_members = 0;
    uint64_t verified_outputs = 0;
};

struct ThresholdConversion {
    ThresholdOracle oracle;
    std::shared_ptr<ConversionStats> stats;
};

struct LeafConversion {
    LeafOracle oracle;
    std::shared_ptr<ConversionStats> stats;
};

// Converts a depth-(d+1) leaf oracle into an arity-(t_bound+1) threshold
// oracle: enumerate all trees labeled from the input sequence's points, run
// the oracle on each, build the induced class from the collected samples,
// and return the first threshold index it cannot realize. `verify`, when
// given, checks every emitted sample against the class and throws
// oracle_fault on violations; a missing threshold index throws bound_fault
// (t_bound was below the extremal value).
ThresholdConversion leaf_to_threshold_oracle(LeafOracle a, std::vector<Point> h_domain,
                                             uint32_t t_bound,
                                             std::optional<FiniteClass> verify = std::nullopt);

// The reverse direction: run the threshold oracle on every (arity)-length
// sequence over the tree's label set (repeats included), build the induced
// class, and exhibit a leaf it cannot realize.
LeafConversion threshold_to_leaf_oracle(ThresholdOracle w, uint32_t d_bound,
                                        std::optional<FiniteClass> verify = std::nullopt);

struct SplitResult {
    Bit bit = 0;          // b with total A_b, certifying eldim(h^x_b) <= d-1
    LeafOracle reduced;   // depth d = a.depth - 1
    uint64_t compositions_tried = 0;
};

// The oracle-splitting construction: for candidate bit c, A_c answers a
// depth-d tree by pairing it with every depth-d tree over the universe on
// the other side of a root labeled x, and forwarding `a`'s answer when it
// points into the c side. Totality over the finite universe is decided by
// exhaustion; if both candidates fail, `a` answered inconsistently and an
// oracle_fault carries the offending pair.
SplitResult split_oracle(const LeafOracle& a, Point x, std::vector<Point> universe,
                         std::optional<FiniteClass> verify = std::nullopt);

// Composed tree (x, left, right): root labeled x, 0-subtree left, 1-subtree
// right. Both subtrees must share a depth.
LittlestoneTree compose_tree(Point x, const LittlestoneTree& left, const LittlestoneTree& right);

}  // namespace llab

#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "llab/dimensions.hpp"
#include "llab/hypothesis.hpp"
#include "llab/learners.hpp"

namespace llab {

// Outcome of an adversarial run. Replaying `sample` through run_game with
// the same learner and budget reproduces exactly `mistakes_forced` mistakes.
struct ForcingResult {
    Sample sample;
    uint64_t mistakes_forced = 0;
    std::optional<Hypothesis> target;        // the function played against /
                                             // a witness consistent with sample
    std::vector<Prediction> predictions;     // one per appended round
    std::optional<Point> diverged_at;        // learner diverged probing here
    bool early_stop = false;                 // induced hypothesis reached target

    nlohmann::json to_json() const;
};

// Repeatedly appends the smallest point where the learner's current induced
// hypothesis disagrees with f, labeling it f(x); each appended pair is a
// mistake by construction. Stops after k rounds, on agreement (the learner's
// hypothesis now equals f), or on divergence.
ForcingResult force_against_function(const BudgetedLearner& l, const Hypothesis& f,
                                     uint64_t k, uint64_t budget);

// Builds a depth-ldim(h) tree all of whose leaves are realizable (the
// witness extracted from the dimension recursion), then walks it against
// the learner, always taking the edge that contradicts the prediction.
// The returned sample is h-realizable and carries >= ldim(h) mistakes for
// every learner honoring its own predictions.
ForcingResult shattered_tree_adversary(const FiniteClass& h, const BudgetedLearner& l,
                                       uint64_t budget);

// Builds the tree used by shattered_tree_adversary: every leaf realizable,
// depth ldim(h). Exposed for tests and the CLI.
LittlestoneTree shattered_tree(const FiniteClass& h);

struct ExtractionResult {
    std::optional<LeafAddress> leaf;      // present iff the walk completed
    Sample sample;                        // path walked so far
    std::optional<Point> diverged_at;     // node label the learner hung on
    std::optional<uint32_t> diverged_level;

    nlohmann::json to_json() const;
};

// The tree walk that turns a total learner claiming <= d mistakes into a
// non-realizable leaf of a depth-(d+1) tree: query the learner at each node
// and follow the edge opposite to its prediction. Divergence is returned as
// a witness that the learner is not total.
ExtractionResult extract_nonrealizable_leaf(const BudgetedLearner& l,
                                            const LittlestoneTree& t, uint64_t budget);

}  // namespace llab

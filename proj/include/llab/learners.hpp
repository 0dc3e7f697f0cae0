#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "llab/dimensions.hpp"
#include "llab/hypothesis.hpp"

namespace llab {

// Outcome of one prediction. Budgets are counted in learner-defined abstract
// steps (shipped learners charge one step per version-space element
// scanned); running out of budget models divergence of a partial machine.
struct Prediction {
    enum class Kind { bit, diverged };

    Kind kind = Kind::bit;
    Bit value = 0;        // meaningful when kind == bit
    uint64_t steps = 0;   // steps spent; equals the budget when diverged

    bool diverged() const { return kind == Kind::diverged; }

    static Prediction of(Bit b, uint64_t steps) { return {Kind::bit, b, steps}; }
    static Prediction divergence(uint64_t budget) { return {Kind::diverged, 0, budget}; }
};

// A prediction procedure charged per step. Deterministic, and monotone in
// the budget: once it answers b at budget k it answers b at any budget >= k.
struct BudgetedLearner {
    std::string name;
    std::function<Prediction(const Sample&, Point, uint64_t)> predict;
};

struct Round {
    Point x;
    Prediction predicted;
    Bit truth;
};

struct GameTranscript {
    std::string learner;
    std::vector<Round> rounds;
    uint64_t mistakes = 0;
    std::optional<size_t> diverged_at;  // round index; later rounds absent

    nlohmann::json to_json() const;
};

// Feeds the pairs of s one at a time: query on (prefix, x_i), record the
// prediction, reveal y_i. Stops early on divergence; divergence is data.
GameTranscript run_game(const BudgetedLearner& l, const Sample& s, uint64_t budget_per_round);

// Standard Optimal Algorithm on an explicit finite class: predict the bit
// whose version-space restriction has the larger Littlestone dimension
// (ties -> 0); on a non-realizable history predict 0. Makes at most ldim(h)
// mistakes on every h-realizable sample. Charges one step per hypothesis
// scanned, so any budget >= |h| is sufficient.
BudgetedLearner soa(const FiniteClass& h);

// Total learner with at most 1 mistake for classes with ldim(h) <= 1: play
// the lone consistent function when the version space is a singleton,
// otherwise predict away from the bit whose restriction pins the class
// down. Construction error when ldim(h) > 1 or h is empty.
BudgetedLearner eldim1_learner(const FiniteClass& h);

// Baselines. constant ignores everything; majority votes over the history
// labels (ties -> 0) and charges |S|+1 steps.
BudgetedLearner constant_learner(Bit b);
BudgetedLearner majority_history_learner();
// Never answers; spends the whole budget on every query.
BudgetedLearner diverging_learner();

// A learner that is told an upper bound N on every point it will see.
struct BoundedLearner {
    std::string name;
    std::function<BudgetedLearner(uint32_t)> build;
};

// The class H_N of all functions on {0..N} inconsistent with every sample
// the leaf oracle indicates on trees labeled from {0..N}. Contains the
// restriction of every function the oracle is valid for, and its ldim is at
// most the oracle's depth - 1.
FiniteClass bounded_regime_class(const LeafOracle& a, uint32_t bound);

// Builds soa(H_N) for each bound N. Mistake bound: the oracle's depth - 1.
BoundedLearner bounded_regime_learner(const LeafOracle& a);

struct InducedResult {
    std::optional<Hypothesis> hypothesis;  // present iff no divergence
    std::optional<Point> diverged_at;      // first diverging point otherwise
};

// Evaluates l(s, x) for every x < domain_size: the learner's hypothesis
// after the sample s, or the first point where it diverges.
InducedResult induced_hypothesis(const BudgetedLearner& l, const Sample& s,
                                 uint32_t domain_size, uint64_t budget);

// Enumeration/materialization cap, overridable via LLAB_ENUM_CAP.
uint64_t enum_cap();

}  // namespace llab

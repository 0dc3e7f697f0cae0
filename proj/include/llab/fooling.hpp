#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "llab/hypothesis.hpp"
#include "llab/learners.hpp"

namespace llab {

// One forbidden value combination: functions matching every pair of
// `forbid` are excluded from the represented class.
struct ForbiddenCylinder {
    Sample forbid;
    std::string origin;  // "first-type" | "block-i-equality" | "block-i-value"
};

// The desk-scale model of an effectively closed class: the class is
// everything avoiding the emitted cylinders, and it only shrinks as
// cylinders are appended.
class RestrictionStream {
  public:
    void append(Sample forbid, std::string origin);
    const std::vector<ForbiddenCylinder>& emitted() const { return emitted_; }

    // True iff f matches no emitted cylinder (pairs on points beyond f's
    // length cannot match).
    bool admits(const Hypothesis& f) const;

    std::string to_jsonl() const;
    static RestrictionStream from_jsonl(std::istream& in);

  private:
    std::vector<ForbiddenCylinder> emitted_;
};

// 1 iff every total function consistent with c.sample matches some member
// of `forbidden`; brute force over all assignments on the union of
// supports. support_cap guards the 2^support enumeration.
Bit cylinder_in_union(const Cylinder& c, const std::vector<Cylinder>& forbidden,
                      uint32_t support_cap = 20);

// All canonical samples over `support` whose cylinders lie inside the union
// of the stream's forbidden cylinders. Canonical samples assign each
// support point one of {absent, 0, 1, both}; the "both" state is the
// canonical self-contradictory sample, whose empty cylinder is always
// contained. Monotone in stream growth.
std::vector<Sample> enumerate_nonrealizable(const RestrictionStream& stream,
                                            const std::vector<Point>& support,
                                            uint32_t support_cap = 8);

// State of the per-learner iteration loop after it finishes.
struct FoolingState {
    std::vector<Point> block_points;
    uint32_t iterations = 0;         // n
    std::vector<Point> anchors;      // x_1..x_n
    std::vector<Bit> bits;           // b_1..b_n
    std::vector<uint32_t> run_lengths;  // k_1..k_n
    Sample current_sample;           // S_n

    enum class Phase { probing, halted_with, diverged } phase = Phase::probing;
    Bit last_output = 0;             // valid when phase == halted_with
    Point pending_query = 0;         // anchor of the last probe
    uint64_t fuel_spent_last_probe = 0;
    uint32_t restrictions_last_probe = 0;
};

struct FoolingVerdict {
    enum class Kind { diverged_on_realizable, forced_mistakes };

    Kind kind = Kind::forced_mistakes;
    std::string learner;

    // diverged_on_realizable: the learner hung on (sample, point) although
    // sample is realizable for the restriction class (see witnesses).
    Sample sample;
    Point point = 0;

    // forced_mistakes: every prediction differed from the witness function.
    uint64_t mistakes = 0;
    std::vector<Point> anchor_sequence;
    std::vector<Prediction> predictions;

    // Explicit members of the restriction class backing the verdict: two
    // constant-tail extensions for the diverged case, the step function for
    // the forced case. Defined over the materialized prefix.
    std::vector<Hypothesis> witnesses;

    nlohmann::json to_json() const;
};

struct FoolOutcome {
    FoolingVerdict verdict;
    RestrictionStream stream;
    FoolingState state;
};

// The single-learner diagonalization block: probe the learner at the next
// anchor with `fuel_per_probe` steps, emitting one tail-equality restriction
// per step spent; a divergence verdict carries the two constant-tail
// witnesses, a halt flips the predicted bit into a value restriction and a
// forced mistake. After max_iterations the remaining materialized tail is
// tied together (the next probe's equality listing runs forever in the full
// construction) so the block contributes at most two functions.
// Block points must all be < kMaxDomain and sized at least
// fuel_per_probe * max_iterations + 1.
FoolOutcome fool_single(const BudgetedLearner& l, std::vector<Point> block,
                        uint64_t fuel_per_probe, uint32_t max_iterations);

struct FoolManyOutcome {
    std::vector<FoolingVerdict> verdicts;
    RestrictionStream stream;
    std::vector<FoolingState> states;
    uint32_t prefix_size = 0;
    uint32_t blocks = 0;
};

// Round-robin blocks (point j of block i is (i-1) + j*|learners|, blocks
// 1-based), first-type restrictions forbidding two 1s in different blocks
// across the materialized prefix, and per-block runs whose second-type
// restrictions are weakened with "... and f(y)=1" for every y in the block.
// Each verdict's witness is extended by 0 outside its own block and
// validated against the full stream.
FoolManyOutcome fool_many(const std::vector<BudgetedLearner>& learners,
                          uint32_t points_per_block, uint64_t fuel_per_probe,
                          uint32_t max_iterations);

struct Certificate {
    bool ok = false;
    int ldim_value = 0;
    uint32_t blocks = 0;
    bool has_all_zero = false;
    FiniteClass materialized;  // over {0..prefix_size-1}
    std::vector<std::vector<Hypothesis>> per_block;  // functions with a 1 in block i
    std::optional<std::string> failure;
    std::vector<Hypothesis> counterexample;

    nlohmann::json to_json() const;
};

// Materializes the class defined by the stream on {0..prefix_size-1} by
// backtracking, checks the {all-0} + per-block decomposition (at most two
// functions with a 1 per block, blocks inferred from origins and the
// round-robin layout), and verifies ldim <= 2.
Certificate certify_ldim_le_2(const RestrictionStream& stream, uint32_t prefix_size);

}  // namespace llab

#include "llab/adversary.hpp"

#include <algorithm>

namespace llab {

namespace {

nlohmann::json prediction_json(const Prediction& p) {
    if (p.diverged()) return {{"outcome", "diverged"}, {"steps", p.steps}};
    return {{"outcome", static_cast<int>(p.value)}, {"steps", p.steps}};
}

}  // namespace

nlohmann::json ForcingResult::to_json() const {
    nlohmann::json j{{"sample", sample_to_json(sample)},
                     {"mistakes_forced", mistakes_forced},
                     {"early_stop", early_stop}};
    if (target) j["target"] = target->to_string();
    if (diverged_at) j["diverged_at"] = *diverged_at;
    nlohmann::json preds = nlohmann::json::array();
    for (const Prediction& p : predictions) preds.push_back(prediction_json(p));
    j["predictions"] = preds;
    return j;
}

nlohmann::json ExtractionResult::to_json() const {
    nlohmann::json j{{"sample", sample_to_json(sample)}};
    if (leaf) j["leaf"] = leaf->to_string();
    if (diverged_at) {
        j["diverged_at"] = *diverged_at;
        j["diverged_level"] = *diverged_level;
    }
    return j;
}

ForcingResult force_against_function(const BudgetedLearner& l, const Hypothesis& f,
                                     uint64_t k, uint64_t budget) {
    ForcingResult r;
    r.target = f;
    for (uint64_t round = 0; round < k; ++round) {
        bool disagreed = false;
        for (Point x = 0; x < f.length; ++x) {
            Prediction p = l.predict(r.sample, x, budget);
            if (p.diverged()) {
                r.diverged_at = x;
                return r;
            }
            if (p.value != f(x)) {
                r.sample.push_back({x, f(x)});
                r.predictions.push_back(p);
                ++r.mistakes_forced;
                disagreed = true;
                break;
            }
        }
        if (!disagreed) {
            r.early_stop = true;  // induced hypothesis coincides with f
            return r;
        }
    }
    return r;
}

namespace {

// Labels a complete depth-`target` subtree under BFS node `node` so that
// every leaf below stays realizable: pick the smallest point whose two
// restrictions both still allow depth-(target-1) shattering.
void build_shattered(const FiniteClass& v, uint32_t target, LittlestoneTree& t, uint32_t node) {
    if (target == 0) return;
    for (Point x = 0; x < v.domain_size(); ++x) {
        FiniteClass v0 = restrict_class(v, x, 0);
        if (v0.empty()) continue;
        FiniteClass v1 = restrict_class(v, x, 1);
        if (v1.empty()) continue;
        if (ldim(v0) < static_cast<int>(target) - 1 || ldim(v1) < static_cast<int>(target) - 1)
            continue;
        t.labels[node] = x;
        build_shattered(v0, target - 1, t, 2 * node + 1);
        build_shattered(v1, target - 1, t, 2 * node + 2);
        return;
    }
    throw structural_error("no shattering point found; ldim witness broke");
}

}  // namespace

LittlestoneTree shattered_tree(const FiniteClass& h) {
    const int d = ldim(h);
    if (d <= 0) throw config_error("shattered_tree needs ldim >= 1");
    LittlestoneTree t{static_cast<uint32_t>(d), {}};
    t.labels.resize(t.num_internal());
    build_shattered(h, t.depth, t, 0);
    return t;
}

ForcingResult shattered_tree_adversary(const FiniteClass& h, const BudgetedLearner& l,
                                       uint64_t budget) {
    const int d = ldim(h);
    if (d < 0) throw config_error("shattered_tree_adversary needs a nonempty class");
    ForcingResult r;
    if (d == 0) {
        r.target = h.hypothesis(0);
        return r;  // empty walk
    }
    const LittlestoneTree t = shattered_tree(h);
    uint32_t node = 0;
    for (uint32_t level = 0; level < t.depth; ++level) {
        const Point x = t.labels[node];
        Prediction p = l.predict(r.sample, x, budget);
        if (p.diverged()) {
            r.diverged_at = x;
            return r;
        }
        const Bit e = static_cast<Bit>(1 - p.value);
        r.sample.push_back({x, e});
        r.predictions.push_back(p);
        ++r.mistakes_forced;
        node = 2 * node + 1 + e;
    }
    // Every leaf of the shattered tree is realizable; record a witness.
    for (size_t i = 0; i < h.size(); ++i)
        if (consistent(h.hypothesis(i), r.sample)) {
            r.target = h.hypothesis(i);
            break;
        }
    if (!r.target) throw structural_error("shattered tree leaf not realizable; witness broke");
    return r;
}

ExtractionResult extract_nonrealizable_leaf(const BudgetedLearner& l,
                                            const LittlestoneTree& t, uint64_t budget) {
    t.validate();
    ExtractionResult r;
    uint32_t node = 0;
    uint32_t path = 0;
    for (uint32_t level = 0; level < t.depth; ++level) {
        const Point x = t.labels[node];
        Prediction p = l.predict(r.sample, x, budget);
        if (p.diverged()) {
            r.diverged_at = x;
            r.diverged_level = level;
            return r;
        }
        const Bit e = static_cast<Bit>(1 - p.value);  // contradict the prediction
        r.sample.push_back({x, e});
        path = (path << 1) | e;
        node = 2 * node + 1 + e;
    }
    r.leaf = LeafAddress{t.depth, path};
    return r;
}

}  // namespace llab

#include "llab/learners.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

#include "llab/kernels.hpp"

namespace llab {

uint64_t enum_cap() {
    static const uint64_t cap = [] {
        if (const char* env = std::getenv("LLAB_ENUM_CAP")) {
            const uint64_t v = std::strtoull(env, nullptr, 10);
            if (v > 0) return v;
        }
        return uint64_t{10'000'000};
    }();
    return cap;
}

nlohmann::json GameTranscript::to_json() const {
    nlohmann::json rs = nlohmann::json::array();
    for (const Round& r : rounds) {
        const std::string pred =
            r.predicted.diverged() ? "diverged" : std::string(1, '0' + r.predicted.value);
        rs.push_back({r.x, pred, r.truth});
    }
    nlohmann::json j{{"learner", learner}, {"rounds", rs}, {"mistakes", mistakes}};
    if (diverged_at) j["diverged_at"] = *diverged_at;
    return j;
}

GameTranscript run_game(const BudgetedLearner& l, const Sample& s, uint64_t budget_per_round) {
    GameTranscript t;
    t.learner = l.name;
    for (size_t i = 0; i < s.size(); ++i) {
        Sample prefix(s.begin(), s.begin() + static_cast<ptrdiff_t>(i));
        Prediction p = l.predict(prefix, s[i].x, budget_per_round);
        t.rounds.push_back({s[i].x, p, s[i].y});
        if (p.diverged()) {
            t.diverged_at = i;
            break;
        }
        if (p.value != s[i].y) ++t.mistakes;
    }
    return t;
}

namespace {

// Shared SOA-style rule. `cautious` switches between predicting toward the
// larger-dimension side (soa) and away from the pinned side (eldim1); the
// two agree everywhere except on ties.
struct VersionSpaceLearner {
    std::shared_ptr<MaskLdim> eng;       // |h| <= 64
    std::shared_ptr<FiniteClass> cls;    // general fallback
    bool cautious = false;

    Prediction operator()(const Sample& s, Point x, uint64_t budget) const {
        const size_t sz = eng ? eng->base().size() : cls->size();
        if (budget < sz) return Prediction::divergence(budget);
        if (eng) {
            const uint64_t v = eng->consistent_members(eng->all(), s);
            if (x >= eng->base().domain_size())
                throw domain_error("query point " + std::to_string(x) + " outside domain");
            if (!v) return Prediction::of(0, sz);
            const int l0 = eng->ldim(eng->restrict_members(v, x, 0));
            const int l1 = eng->ldim(eng->restrict_members(v, x, 1));
            return Prediction::of(pick(l0, l1), sz);
        }
        auto m = compile_sample(s, cls->domain_size());
        if (x >= cls->domain_size())
            throw domain_error("query point " + std::to_string(x) + " outside domain");
        std::vector<uint64_t> v;
        if (m) {
            v.resize(cls->size());
            v.resize(kernels::filter_match(cls->words(), m->mask, m->want, v.data()));
        }
        if (v.empty()) return Prediction::of(0, sz);
        std::vector<uint64_t> side(v.size());
        const uint64_t bit = 1ull << x;
        side.resize(kernels::filter_match(v, bit, 0, side.data()));
        const int l0 = ldim(FiniteClass(cls->domain_size(), side));
        side.resize(v.size());
        side.resize(kernels::filter_match(v, bit, bit, side.data()));
        const int l1 = ldim(FiniteClass(cls->domain_size(), side));
        return Prediction::of(pick(l0, l1), sz);
    }

    Bit pick(int l0, int l1) const {
        if (cautious) {
            // b = side with the smaller dimension; predict the other bit so a
            // mistake lands in a version space of dimension <= 0.
            return l1 < l0 ? 0 : 1;
        }
        return l1 > l0 ? 1 : 0;
    }
};

BudgetedLearner make_version_space_learner(const FiniteClass& h, bool cautious,
                                           std::string name) {
    VersionSpaceLearner impl;
    impl.cautious = cautious;
    if (h.size() <= 64)
        impl.eng = std::make_shared<MaskLdim>(h);
    else
        impl.cls = std::make_shared<FiniteClass>(h);
    return BudgetedLearner{std::move(name), impl};
}

}  // namespace

BudgetedLearner soa(const FiniteClass& h) {
    if (h.empty()) throw config_error("soa requires a nonempty class");
    return make_version_space_learner(h, false, "soa");
}

BudgetedLearner eldim1_learner(const FiniteClass& h) {
    if (h.empty()) throw config_error("eldim1_learner requires a nonempty class");
    if (ldim(h) > 1)
        throw config_error("eldim1_learner requires ldim <= 1, class has ldim " +
                           std::to_string(ldim(h)));
    return make_version_space_learner(h, true, "eldim1");
}

BudgetedLearner constant_learner(Bit b) {
    return {b ? "constant1" : "constant0",
            [b](const Sample&, Point, uint64_t budget) {
                if (budget < 1) return Prediction::divergence(budget);
                return Prediction::of(b, 1);
            }};
}

BudgetedLearner majority_history_learner() {
    return {"majority", [](const Sample& s, Point, uint64_t budget) {
                if (budget < s.size() + 1) return Prediction::divergence(budget);
                size_t ones = 0;
                for (const auto& [x, y] : s) ones += y;
                return Prediction::of(static_cast<Bit>(2 * ones > s.size()), s.size() + 1);
            }};
}

BudgetedLearner diverging_learner() {
    return {"diverging",
            [](const Sample&, Point, uint64_t budget) { return Prediction::divergence(budget); }};
}

FiniteClass bounded_regime_class(const LeafOracle& a, uint32_t bound) {
    const uint32_t domain = bound + 1;
    if (domain > kMaxDomain)
        throw resource_guard("bound exceeds max domain " + std::to_string(kMaxDomain));
    const auto total = tree_count(a.depth, domain);
    if (!total || *total > enum_cap())
        throw resource_guard("tree enumeration for bound " + std::to_string(bound) +
                             " exceeds the enumeration cap");
    if ((1ull << domain) > enum_cap())
        throw resource_guard("H_N materialization exceeds the enumeration cap");

    std::vector<Point> labels(domain);
    for (Point x = 0; x < domain; ++x) labels[x] = x;

    // Samples indicated by the oracle, deduplicated in compiled form.
    // Self-contradictory samples exclude nothing.
    std::set<std::pair<uint64_t, uint64_t>> seen;
    std::vector<SampleMask> constraints;
    TreeStream stream(a.depth, labels);
    LittlestoneTree t;
    while (stream.next(t)) {
        const Sample s = leaf_sample(t, a.answer(t));
        if (auto m = compile_sample(s, domain))
            if (seen.insert({m->mask, m->want}).second) constraints.push_back(*m);
    }

    std::vector<uint64_t> h_n(1ull << domain);
    for (uint64_t f = 0; f < h_n.size(); ++f) h_n[f] = f;
    for (const SampleMask& m : constraints)
        h_n.resize(kernels::filter_nonmatch(h_n, m.mask, m.want, h_n.data()));
    if (h_n.empty())
        throw oracle_fault("every function on the bound is excluded; the leaf oracle must "
                           "have returned realizable leaves",
                           {{"bound", bound}});
    return FiniteClass(domain, std::move(h_n));
}

BoundedLearner bounded_regime_learner(const LeafOracle& a) {
    LeafOracle oracle = a;
    return {"bounded(" + a.name + ")", [oracle](uint32_t bound) -> BudgetedLearner {
                BudgetedLearner inner = soa(bounded_regime_class(oracle, bound));
                inner.name = "bounded_soa(N=" + std::to_string(bound) + ")";
                return inner;
            }};
}

InducedResult induced_hypothesis(const BudgetedLearner& l, const Sample& s,
                                 uint32_t domain_size, uint64_t budget) {
    if (domain_size > kMaxDomain)
        throw config_error("domain_size exceeds max domain " + std::to_string(kMaxDomain));
    Hypothesis h{0, domain_size};
    for (Point x = 0; x < domain_size; ++x) {
        Prediction p = l.predict(s, x, budget);
        if (p.diverged()) return {std::nullopt, x};
        h.bits |= static_cast<uint64_t>(p.value) << x;
    }
    return {h, std::nullopt};
}

}  // namespace llab

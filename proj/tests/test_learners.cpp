#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "llab/learners.hpp"
#include "llab/rng.hpp"

using namespace llab;

namespace {

FiniteClass cls(uint32_t domain, std::initializer_list<const char*> strs) {
    std::vector<uint64_t> hyps;
    for (const char* s : strs) hyps.push_back(Hypothesis::from_string(s).bits);
    return FiniteClass(domain, std::move(hyps));
}

FiniteClass random_class(Rng& rng, uint32_t domain, size_t size) {
    std::set<uint64_t> set;
    size = std::min<size_t>(size, 1ull << domain);
    while (set.size() < size) set.insert(rng.below(1ull << domain));
    return FiniteClass(domain, {set.begin(), set.end()});
}

constexpr uint64_t kBudget = 1 << 16;

}  // namespace

TEST_CASE("soa: tie predicts 0, then locks on") {
    const FiniteClass h = cls(3, {"000", "111"});
    const BudgetedLearner l = soa(h);

    const Prediction first = l.predict({}, 1, kBudget);
    REQUIRE_FALSE(first.diverged());
    CHECK(first.value == 0);  // both restrictions have ldim 0

    const Prediction after = l.predict({{1, 1}}, 0, kBudget);
    CHECK(after.value == 1);  // version space is {111}

    const GameTranscript t = run_game(l, {{0, 1}, {1, 1}, {2, 1}}, kBudget);
    CHECK(t.mistakes <= 1);
}

TEST_CASE("soa: singleton plays its function") {
    const FiniteClass h = cls(3, {"010"});
    const BudgetedLearner l = soa(h);
    for (Point x = 0; x < 3; ++x)
        CHECK(l.predict({}, x, kBudget).value == (x == 1 ? 1 : 0));
    const GameTranscript t = run_game(l, {{0, 0}, {1, 1}, {2, 0}, {1, 1}}, kBudget);
    CHECK(t.mistakes == 0);
}

TEST_CASE("soa: never exceeds ldim on the full class") {
    const FiniteClass h = FiniteClass::full(3);
    const BudgetedLearner l = soa(h);
    Rng rng(21);
    uint64_t worst = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Sample s;
        const uint64_t f = rng.below(8);
        for (int i = 0; i < 6; ++i) {
            const Point x = static_cast<Point>(rng.below(3));
            s.push_back({x, static_cast<Bit>((f >> x) & 1)});
        }
        worst = std::max(worst, run_game(l, s, kBudget).mistakes);
    }
    CHECK(worst <= 3);
}

TEST_CASE("soa on non-realizable history predicts 0") {
    const FiniteClass h = cls(2, {"01", "10"});
    const BudgetedLearner l = soa(h);
    const Prediction p = l.predict({{0, 0}, {1, 0}}, 0, kBudget);  // kills both members
    REQUIRE_FALSE(p.diverged());
    CHECK(p.value == 0);
}

TEST_CASE("soa requires a nonempty class; queries must be in-domain") {
    CHECK_THROWS_AS(soa(FiniteClass(2, {})), config_error);
    const BudgetedLearner l = soa(cls(2, {"01"}));
    CHECK_THROWS_AS(l.predict({}, 5, kBudget), domain_error);
}

TEST_CASE("budget exhaustion models divergence") {
    const FiniteClass h = cls(3, {"000", "111"});
    const BudgetedLearner l = soa(h);
    const Prediction p = l.predict({}, 0, 1);  // |h| = 2 steps needed
    CHECK(p.diverged());
    CHECK(p.steps == 1);
}

TEST_CASE("run_game: divergence is data") {
    const GameTranscript empty = run_game(constant_learner(0), {}, 100);
    CHECK(empty.rounds.empty());
    CHECK(empty.mistakes == 0);

    const GameTranscript hung = run_game(diverging_learner(), {{0, 1}}, 100);
    REQUIRE(hung.diverged_at.has_value());
    CHECK(*hung.diverged_at == 0);
    CHECK(hung.rounds.size() == 1);
    CHECK(hung.mistakes == 0);
}

TEST_CASE("budget monotonicity of shipped learners") {
    Rng rng(22);
    for (int trial = 0; trial < 30; ++trial) {
        const uint32_t domain = 1 + rng.below(3);
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(6));
        std::vector<BudgetedLearner> roster{soa(h), constant_learner(1),
                                            majority_history_learner()};
        if (ldim(h) <= 1) roster.push_back(eldim1_learner(h));
        Sample s;
        for (size_t i = 0, len = rng.below(4); i < len; ++i)
            s.push_back({static_cast<Point>(rng.below(domain)), static_cast<Bit>(rng.below(2))});
        const Point x = static_cast<Point>(rng.below(domain));
        for (const BudgetedLearner& l : roster) {
            const Prediction lo = l.predict(s, x, kBudget);
            const Prediction hi = l.predict(s, x, 2 * kBudget);
            REQUIRE_FALSE(lo.diverged());
            CHECK(lo.value == hi.value);
        }
    }
}

TEST_CASE("eldim1: at most one mistake on realizable samples") {
    const FiniteClass h = cls(3, {"000", "111"});
    const BudgetedLearner l = eldim1_learner(h);
    Rng rng(23);
    for (int trial = 0; trial < 100; ++trial) {
        Sample s;
        const uint64_t f = rng.coin() ? 0b111 : 0;
        for (int i = 0; i < 5; ++i) {
            const Point x = static_cast<Point>(rng.below(3));
            s.push_back({x, static_cast<Bit>((f >> x) & 1)});
        }
        CHECK(run_game(l, s, kBudget).mistakes <= 1);
    }
}

TEST_CASE("eldim1: singleton plays perfectly, precondition enforced") {
    const BudgetedLearner l = eldim1_learner(cls(2, {"10"}));
    CHECK(run_game(l, {{0, 1}, {1, 0}}, kBudget).mistakes == 0);
    CHECK_THROWS_AS(eldim1_learner(FiniteClass::full(2)), config_error);  // ldim 2
    CHECK_THROWS_AS(eldim1_learner(FiniteClass(2, {})), config_error);
}

TEST_CASE("induced_hypothesis") {
    const FiniteClass h = cls(3, {"000", "111"});
    const InducedResult r = induced_hypothesis(soa(h), {{0, 1}}, 3, kBudget);
    REQUIRE(r.hypothesis.has_value());
    CHECK(r.hypothesis->to_string() == "111");

    const InducedResult empty = induced_hypothesis(constant_learner(0), {}, 0, kBudget);
    REQUIRE(empty.hypothesis.has_value());
    CHECK(empty.hypothesis->length == 0);

    const InducedResult hung = induced_hypothesis(diverging_learner(), {}, 3, kBudget);
    CHECK_FALSE(hung.hypothesis.has_value());
    REQUIRE(hung.diverged_at.has_value());
    CHECK(*hung.diverged_at == 0);
}

TEST_CASE("bounded regime: H_N structure and mistake bound") {
    const FiniteClass h = cls(3, {"000", "111"});
    const LeafOracle a = brute_leaf_oracle(h, 2);
    const FiniteClass h_n = bounded_regime_class(a, 2);

    CHECK(ldim(h_n) <= 1);
    for (size_t i = 0; i < h.size(); ++i) {
        const uint64_t restriction = h.words()[i] & 0b111;
        CHECK(std::binary_search(h_n.words().begin(), h_n.words().end(), restriction));
    }

    const BudgetedLearner l = bounded_regime_learner(a).build(2);
    Rng rng(24);
    for (int trial = 0; trial < 100; ++trial) {
        Sample s;
        const uint64_t f = rng.coin() ? 0b111 : 0;
        for (int i = 0; i < 5; ++i) {
            const Point x = static_cast<Point>(rng.below(3));
            s.push_back({x, static_cast<Bit>((f >> x) & 1)});
        }
        CHECK(run_game(l, s, kBudget).mistakes <= 1);
    }
}

TEST_CASE("bounded regime: singleton gives zero mistakes") {
    const FiniteClass h = cls(2, {"10"});
    const BudgetedLearner l = bounded_regime_learner(brute_leaf_oracle(h, 1)).build(1);
    CHECK(run_game(l, {{0, 1}, {1, 0}, {0, 1}}, kBudget).mistakes == 0);
}

TEST_CASE("bounded regime: resource guard on absurd bounds") {
    const FiniteClass h = cls(2, {"10"});
    const LeafOracle a = brute_leaf_oracle(h, 1);
    CHECK_THROWS_AS(bounded_regime_learner(a).build(50), resource_guard);
}

TEST_CASE("transcript json shape") {
    const GameTranscript t = run_game(constant_learner(0), {{2, 1}, {0, 0}}, 10);
    const nlohmann::json j = t.to_json();
    CHECK(j["mistakes"] == 1);
    CHECK(j["rounds"][0][0] == 2);
    CHECK(j["rounds"][0][1] == "0");
    CHECK(j["rounds"][0][2] == 1);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "llab/dimensions.hpp"
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

}  // namespace

TEST_CASE("leaf_sample reads the path") {
    LittlestoneTree d1{1, {5}};
    CHECK(leaf_sample(d1, LeafAddress::from_string("0")) == Sample{{5, 0}});

    LittlestoneTree d2{2, {3, 4, 7}};
    CHECK(leaf_sample(d2, LeafAddress::from_string("10")) == Sample{{3, 1}, {7, 0}});

    LittlestoneTree rep{2, {3, 3, 3}};
    CHECK(leaf_sample(rep, LeafAddress::from_string("01")) == Sample{{3, 0}, {3, 1}});

    CHECK_THROWS_AS(leaf_sample(d2, LeafAddress::from_string("1")), structural_error);
}

TEST_CASE("leaf address order is lexicographic") {
    CHECK(LeafAddress::from_string("01").path == 1);
    CHECK(LeafAddress::from_string("10").path == 2);
    CHECK(LeafAddress{2, 2}.to_string() == "10");
    // numeric order of path == string order
    CHECK(LeafAddress::from_string("011").path < LeafAddress::from_string("100").path);
}

TEST_CASE("enumerate_trees: counts and uniqueness") {
    {
        TreeStream s(1, {4});
        LittlestoneTree t;
        int n = 0;
        while (s.next(t)) ++n;
        CHECK(n == 1);
    }
    {
        TreeStream s(2, {0, 1});
        LittlestoneTree t;
        std::set<std::vector<Point>> seen;
        while (s.next(t)) seen.insert(t.labels);
        CHECK(seen.size() == 8);  // 2^3 label tuples
    }
    CHECK(tree_count(3, 4) == 4ull * 4 * 4 * 4 * 4 * 4 * 4);  // n^7
    CHECK(tree_count(2, 3) == 27);
    CHECK_FALSE(tree_count(5, 100).has_value());  // overflow
}

TEST_CASE("enumerate_trees: breadth-first lexicographic order") {
    TreeStream s(2, {1, 9});
    LittlestoneTree t;
    REQUIRE(s.next(t));
    CHECK(t.labels == std::vector<Point>{1, 1, 1});
    REQUIRE(s.next(t));
    CHECK(t.labels == std::vector<Point>{1, 1, 9});
    REQUIRE(s.next(t));
    CHECK(t.labels == std::vector<Point>{1, 9, 1});
}

TEST_CASE("ldim: examples") {
    CHECK(ldim(cls(3, {"010"})) == 0);
    CHECK(ldim(FiniteClass::full(3)) == 3);
    CHECK(ldim(cls(3, {"000", "111"})) == 1);
    CHECK(ldim(FiniteClass(3, {})) == -1);
    CHECK(ldim_nonneg(FiniteClass(3, {})) == 0);
}

TEST_CASE("ldim_by_trees: examples") {
    CHECK(ldim_by_trees(cls(3, {"000", "111"}), 3).value == 1);
    CHECK(ldim_by_trees(cls(1, {"0"}), 1).value == 0);
    CHECK(ldim_by_trees(FiniteClass::full(2), 3).value == 2);
    const Budgeted over = ldim_by_trees(FiniteClass::full(3), 2);
    CHECK(over.out_of_budget);
    CHECK(over.value == 2);
}

TEST_CASE("ldim_by_trees agrees with the literal stream transcription") {
    Rng rng(11);
    for (uint32_t domain = 1; domain <= 2; ++domain) {
        const uint32_t subsets = 1u << (1u << domain);
        for (uint32_t mask = 0; mask < subsets; ++mask) {
            std::vector<uint64_t> hyps;
            for (uint64_t f = 0; f < (1ull << domain); ++f)
                if (mask & (1u << f)) hyps.push_back(f);
            const FiniteClass h(domain, std::move(hyps));
            const Budgeted fast = ldim_by_trees(h, domain);
            const Budgeted slow = ldim_by_tree_stream(h, domain);
            CHECK(fast.value == slow.value);
            CHECK(fast.out_of_budget == slow.out_of_budget);
        }
    }
    for (int trial = 0; trial < 10; ++trial) {
        const FiniteClass h = random_class(rng, 3, 1 + rng.below(6));
        CHECK(ldim_by_trees(h, 3).value == ldim_by_tree_stream(h, 3).value);
    }
}

TEST_CASE("ldim restriction drop (every point splits the dimension down)") {
    Rng rng(12);
    for (int trial = 0; trial < 40; ++trial) {
        const FiniteClass h = random_class(rng, 1 + rng.below(4), 2 + rng.below(10));
        const int d = ldim(h);
        if (d < 1) continue;
        for (Point x = 0; x < h.domain_size(); ++x) {
            const int l0 = ldim(restrict_class(h, x, 0));
            const int l1 = ldim(restrict_class(h, x, 1));
            CHECK(std::min(l0, l1) < d);
        }
    }
}

TEST_CASE("ldim is monotone under subclass") {
    Rng rng(13);
    for (int trial = 0; trial < 40; ++trial) {
        const uint32_t domain = 1 + rng.below(4);
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(12));
        std::vector<uint64_t> sub;
        for (uint64_t w : h.words())
            if (rng.coin()) sub.push_back(w);
        CHECK(ldim(FiniteClass(domain, std::move(sub))) <= ldim(h));
    }
}

TEST_CASE("threshold_sample") {
    const ThresholdSequence seq{{5, 7, 9}};
    CHECK(threshold_sample(seq, 2) == Sample{{5, 0}, {7, 1}, {9, 1}});
    CHECK(threshold_sample(seq, 1) == Sample{{5, 1}, {7, 1}, {9, 1}});
    CHECK(threshold_sample({{5, 5}}, 2) == Sample{{5, 0}, {5, 1}});
    CHECK_THROWS_AS(threshold_sample(seq, 4), structural_error);
    CHECK_THROWS_AS(threshold_sample(seq, 0), structural_error);
}

TEST_CASE("tdim: examples") {
    const FiniteClass thresholds = cls(3, {"111", "011", "001"});
    const TdimResult t = tdim(thresholds, 3);
    CHECK(t.value == 3);
    CHECK(t.witness == std::vector<Point>{0, 1, 2});
    CHECK_FALSE(t.out_of_budget);

    CHECK(tdim(cls(3, {"010"}), 3).value == 1);
    CHECK(tdim(cls(3, {"000"}), 3).value == 0);
    CHECK(tdim(FiniteClass(3, {}), 3).value == 0);
}

TEST_CASE("tdim budget semantics") {
    const FiniteClass thresholds = cls(3, {"111", "011", "001"});
    const TdimResult capped = tdim(thresholds, 2);
    CHECK(capped.value == 2);
    CHECK(capped.out_of_budget);  // hit the cap below the domain size
}

TEST_CASE("tdim distinct-point restriction is a lemma, not an assumption") {
    // Any sequence with a repeated point has a self-contradictory threshold,
    // so no repeated sequence can beat the distinct-point maximum.
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        const uint32_t domain = 2 + rng.below(2);
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(10));
        const int best = tdim(h, domain).value;
        for (int probe = 0; probe < 50; ++probe) {
            const size_t len = 2 + rng.below(3);
            ThresholdSequence seq;
            for (size_t i = 0; i < len; ++i)
                seq.points.push_back(static_cast<Point>(rng.below(domain)));
            std::set<Point> distinct(seq.points.begin(), seq.points.end());
            if (distinct.size() == seq.points.size()) continue;
            bool all = true;
            for (uint32_t i = 1; i <= len && all; ++i)
                all = realizable(h, threshold_sample(seq, i));
            CHECK_FALSE(all);  // repeated points always break some threshold
        }
        CHECK(best >= 0);
    }
}

TEST_CASE("brute_leaf_oracle: first dead leaf in order") {
    {
        const LeafOracle a = brute_leaf_oracle(cls(1, {"0"}), 1);
        CHECK(a.answer(LittlestoneTree{1, {0}}).to_string() == "1");
    }
    {
        const LeafOracle a = brute_leaf_oracle(cls(2, {"00", "11"}), 2);
        CHECK(a.answer(LittlestoneTree{2, {0, 1, 1}}).to_string() == "01");
    }
    {
        const LeafOracle a = brute_leaf_oracle(FiniteClass::full(2), 2);
        bool faulted = false;
        LittlestoneTree shattering{2, {0, 1, 1}};
        try {
            a.answer(shattering);
        } catch (const oracle_fault&) {
            faulted = true;
        }
        CHECK(faulted);  // ldim = 2: depth-2 oracle breaks its contract
    }
}

TEST_CASE("brute_leaf_oracle output is never realizable (exhaustive small scale)") {
    Rng rng(15);
    for (int trial = 0; trial < 20; ++trial) {
        const uint32_t domain = 1 + rng.below(3);
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(5));
        const uint32_t depth = static_cast<uint32_t>(ldim(h)) + 1;
        const LeafOracle a = brute_leaf_oracle(h, depth);
        std::vector<Point> labels;
        for (Point x = 0; x < domain; ++x) labels.push_back(x);
        TreeStream stream(depth, labels);
        LittlestoneTree t;
        while (stream.next(t)) {
            const LeafAddress leaf = a.answer(t);
            CHECK_FALSE(realizable(h, leaf_sample(t, leaf)));
        }
    }
}

TEST_CASE("brute_threshold_oracle") {
    {
        const ThresholdOracle w = brute_threshold_oracle(cls(3, {"111", "011", "001"}), 4);
        const uint32_t i = w.answer({{0, 1, 2, 2}});
        CHECK(i == 4);  // threshold 4 carries (2,0)(2,1)
    }
    {
        const ThresholdOracle w = brute_threshold_oracle(cls(1, {"0"}), 1);
        CHECK(w.answer({{0}}) == 1);
    }
    {
        const ThresholdOracle w = brute_threshold_oracle(cls(3, {"111", "011", "001"}), 3);
        bool faulted = false;
        try {
            w.answer({{0, 1, 2}});
        } catch (const oracle_fault&) {
            faulted = true;
        }
        CHECK(faulted);  // all three thresholds realizable at arity <= tdim
    }
}

TEST_CASE("tree json round trip") {
    const LittlestoneTree t{2, {3, 4, 7}};
    const LittlestoneTree back = LittlestoneTree::from_json(t.to_json());
    CHECK(back.depth == t.depth);
    CHECK(back.labels == t.labels);
    CHECK_THROWS_AS(
        LittlestoneTree::from_json(nlohmann::json::parse(R"({"label": 1, "zero": "leaf"})")),
        parse_error);
    // ragged tree: one child is a leaf, the other a deeper node
    CHECK_THROWS_AS(LittlestoneTree::from_json(nlohmann::json::parse(
                        R"({"label":1,"zero":"leaf","one":{"label":2,"zero":"leaf","one":"leaf"}})")),
                    parse_error);
}

TEST_CASE("thresholds floor-log inequalities on a corpus") {
    Rng rng(16);
    for (int trial = 0; trial < 60; ++trial) {
        const uint32_t domain = 1 + rng.below(5);
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(16));
        const int d = ldim(h);
        const int t = tdim(h, domain).value;
        if (d >= 1) {
            int fl = 0;
            while ((2 << fl) <= d) ++fl;
            CHECK(fl <= t);
        }
        if (t >= 1) {
            int fl = 0;
            while ((2 << fl) <= t) ++fl;
            CHECK(fl <= d);
        }
    }
}

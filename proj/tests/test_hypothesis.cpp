#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "llab/hypothesis.hpp"
#include "llab/rng.hpp"

using namespace llab;

namespace {

FiniteClass cls(uint32_t domain, std::initializer_list<const char*> strs) {
    std::vector<uint64_t> hyps;
    for (const char* s : strs) hyps.push_back(Hypothesis::from_string(s).bits);
    return FiniteClass(domain, std::move(hyps));
}

}  // namespace

TEST_CASE("consistent: direct read-off") {
    const Hypothesis f = Hypothesis::from_string("010");
    CHECK(consistent(f, {{1, 1}}) == 1);
    CHECK(consistent(f, {{1, 1}, {2, 1}}) == 0);
    CHECK(consistent(f, {}) == 1);
    CHECK_THROWS_AS(consistent(f, {{3, 0}}), domain_error);
}

TEST_CASE("realizable: witness or nothing") {
    const FiniteClass h = cls(3, {"000", "111"});
    CHECK(realizable(h, {{0, 1}, {2, 1}}) == 1);
    CHECK(realizable(h, {{0, 1}, {2, 0}}) == 0);
    CHECK(realizable(FiniteClass(3, {}), {}) == 0);  // empty class realizes nothing
    CHECK_THROWS_AS(realizable(h, {{7, 1}}), domain_error);
}

TEST_CASE("restrict: filter by value") {
    const FiniteClass h = cls(3, {"000", "111", "101"});
    CHECK(restrict_class(h, 1, 0) == cls(3, {"000", "101"}));
    CHECK(restrict_class(cls(3, {"000", "111"}), 0, 1) == cls(3, {"111"}));
    CHECK(restrict_class(restrict_class(h, 1, 0), 1, 1).empty());
    CHECK_THROWS_AS(restrict_class(h, 3, 0), domain_error);
}

TEST_CASE("restriction pair partitions the class") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const uint32_t domain = 1 + rng.below(4);
        std::vector<uint64_t> hyps;
        for (uint64_t f = 0; f < (1ull << domain); ++f)
            if (rng.coin()) hyps.push_back(f);
        const FiniteClass h(domain, std::move(hyps));
        for (Point x = 0; x < domain; ++x) {
            const FiniteClass h0 = restrict_class(h, x, 0);
            const FiniteClass h1 = restrict_class(h, x, 1);
            CHECK(h0.size() + h1.size() == h.size());
            for (size_t i = 0; i < h0.size(); ++i)
                CHECK(h0.hypothesis(i)(x) == 0);
            for (size_t i = 0; i < h1.size(); ++i)
                CHECK(h1.hypothesis(i)(x) == 1);
        }
    }
}

TEST_CASE("realizable equals OR of member consistency") {
    Rng rng(8);
    for (int trial = 0; trial < 60; ++trial) {
        const uint32_t domain = 1 + rng.below(4);
        std::vector<uint64_t> hyps;
        for (uint64_t f = 0; f < (1ull << domain); ++f)
            if (rng.coin()) hyps.push_back(f);
        const FiniteClass h(domain, std::move(hyps));
        Sample s;
        for (size_t i = 0, len = rng.below(5); i < len; ++i)
            s.push_back({static_cast<Point>(rng.below(domain)), static_cast<Bit>(rng.below(2))});
        Bit any = 0;
        for (size_t i = 0; i < h.size(); ++i) any |= consistent(h.hypothesis(i), s);
        CHECK(realizable(h, s) == any);
    }
}

TEST_CASE("consistency is prefix-monotone") {
    Rng rng(9);
    for (int trial = 0; trial < 60; ++trial) {
        const uint32_t domain = 1 + rng.below(5);
        const Hypothesis f{rng.below(1ull << domain), domain};
        Sample s;
        for (size_t i = 0, len = 1 + rng.below(5); i < len; ++i)
            s.push_back({static_cast<Point>(rng.below(domain)), static_cast<Bit>(rng.below(2))});
        if (consistent(f, s)) {
            Sample prefix(s.begin(), s.end() - 1);
            CHECK(consistent(f, prefix) == 1);
        }
    }
}

TEST_CASE("duplicate point with equal bits is equi-realizable with dedup") {
    const FiniteClass h = cls(2, {"01", "10"});
    const Sample dup{{0, 0}, {1, 1}, {0, 0}};
    const Sample dedup{{0, 0}, {1, 1}};
    CHECK(realizable(h, dup) == realizable(h, dedup));
}

TEST_CASE("cylinder_nonempty_within") {
    CHECK(cylinder_nonempty_within({{{0, 1}, {0, 0}}}, 2) == 0);
    CHECK(cylinder_nonempty_within({{{0, 1}}}, 2) == 1);
    CHECK(cylinder_nonempty_within({{}}, 1) == 1);
}

TEST_CASE("class json round trip and validation") {
    const FiniteClass h = cls(3, {"010", "111"});
    CHECK(FiniteClass::from_json(h.to_json()) == h);

    CHECK_THROWS_AS(FiniteClass::from_json(nlohmann::json::parse(
                        R"({"domain_size": 2, "hypotheses": ["01", "01"]})")),
                    parse_error);
    CHECK_THROWS_AS(FiniteClass::from_json(nlohmann::json::parse(
                        R"({"domain_size": 2, "hypotheses": ["012"]})")),
                    parse_error);
    CHECK_THROWS_AS(FiniteClass::from_json(nlohmann::json::parse(
                        R"({"domain_size": 3, "hypotheses": ["01"]})")),
                    parse_error);
    CHECK_THROWS_AS(FiniteClass::from_json(nlohmann::json::parse("[1,2]")), parse_error);
}

TEST_CASE("sample json round trip") {
    const Sample s{{0, 1}, {5, 0}, {0, 1}};
    CHECK(sample_from_json(sample_to_json(s)) == s);
    CHECK_THROWS_AS(sample_from_json(nlohmann::json::parse("[[0, 2]]")), parse_error);
    CHECK_THROWS_AS(sample_from_json(nlohmann::json::parse("[[0]]")), parse_error);
}

TEST_CASE("hypothesis string order: character i is point i") {
    const Hypothesis f = Hypothesis::from_string("100");
    CHECK(f(0) == 1);
    CHECK(f(1) == 0);
    CHECK(f.to_string() == "100");
}

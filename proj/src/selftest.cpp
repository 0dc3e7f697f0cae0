#include "llab/selftest.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <functional>
#include <map>
#include <ostream>
#include <set>

#include "llab/adversary.hpp"
#include "llab/conversions.hpp"
#include "llab/dimensions.hpp"
#include "llab/fooling.hpp"
#include "llab/hypothesis.hpp"
#include "llab/learners.hpp"
#include "llab/rng.hpp"

namespace llab::selftest {

namespace {

constexpr uint64_t kBudget = 1u << 20;

struct Check {
    bool ok = true;
    uint64_t count = 0;
    std::string detail;

    void expect(bool cond, const std::string& msg) {
        ++count;
        if (!cond && ok) {
            ok = false;
            detail = msg;
        }
    }
};

FiniteClass subset_class(uint32_t domain, uint32_t member_mask) {
    std::vector<uint64_t> hyps;
    for (uint64_t f = 0; f < (1ull << domain); ++f)
        if (member_mask & (1u << f)) hyps.push_back(f);
    return FiniteClass(domain, std::move(hyps));
}

FiniteClass random_class(Rng& rng, uint32_t domain, size_t size) {
    const uint64_t limit = 1ull << domain;
    size = std::min<size_t>(size, limit);
    std::set<uint64_t> set;
    while (set.size() < size) set.insert(rng.below(limit));
    return FiniteClass(domain, {set.begin(), set.end()});
}

FiniteClass random_class_where(Rng& rng, uint32_t domain, size_t max_size,
                               const std::function<bool(const FiniteClass&)>& pred) {
    while (true) {
        const size_t size = 1 + rng.below(max_size);
        FiniteClass h = random_class(rng, domain, size);
        if (pred(h)) return h;
    }
}

Sample random_realizable_sample(Rng& rng, const FiniteClass& h, size_t len) {
    const Hypothesis f = h.hypothesis(rng.below(h.size()));
    Sample s;
    for (size_t i = 0; i < len; ++i) {
        const Point x = static_cast<Point>(rng.below(h.domain_size()));
        s.push_back({x, f(x)});
    }
    return s;
}

std::vector<Point> domain_points(const FiniteClass& h) {
    std::vector<Point> pts(h.domain_size());
    for (Point x = 0; x < h.domain_size(); ++x) pts[x] = x;
    return pts;
}

LittlestoneTree random_tree(Rng& rng, uint32_t depth, const std::vector<Point>& labels) {
    LittlestoneTree t{depth, {}};
    t.labels.resize(t.num_internal());
    for (Point& l : t.labels) l = labels[rng.below(labels.size())];
    return t;
}

int floor_log2(int v) { return std::bit_width(static_cast<unsigned>(v)) - 1; }

// Worst-case mistake count of `l` over every realizability_class-realizable
// sample with points <= max_point and length <= max_len, exhaustively.
// Predictions are cached on (version space of version_class, query point),
// which is exact for the version-space learners under test.
uint64_t worst_mistakes_exhaustive(const FiniteClass& realizability_class,
                                   const FiniteClass& version_class, const BudgetedLearner& l,
                                   Point max_point, size_t max_len, Check& check) {
    MaskLdim real_eng(realizability_class);
    MaskLdim ver_eng(version_class);
    std::map<std::pair<uint64_t, Point>, Prediction> pred_cache;
    uint64_t worst = 0;

    std::function<void(Sample&, uint64_t, uint64_t, uint64_t)> dfs =
        [&](Sample& s, uint64_t real_mask, uint64_t ver_mask, uint64_t mistakes) {
            worst = std::max(worst, mistakes);
            if (s.size() >= max_len) return;
            for (Point x = 0; x <= max_point; ++x) {
                auto it = pred_cache.find({ver_mask, x});
                if (it == pred_cache.end())
                    it = pred_cache.emplace(std::pair{ver_mask, x}, l.predict(s, x, kBudget))
                             .first;
                const Prediction p = it->second;
                check.expect(!p.diverged(), "learner diverged inside exhaustive game check");
                if (p.diverged()) return;
                for (Bit y : {Bit{0}, Bit{1}}) {
                    const uint64_t next_real = real_eng.restrict_members(real_mask, x, y);
                    if (!next_real) continue;  // extension not realizable
                    s.push_back({x, y});
                    const uint64_t next_ver =
                        x < version_class.domain_size()
                            ? ver_eng.restrict_members(ver_mask, x, y)
                            : ver_mask;
                    dfs(s, next_real, next_ver, mistakes + (p.value != y ? 1 : 0));
                    s.pop_back();
                }
            }
        };
    Sample s;
    dfs(s, real_eng.all(), ver_eng.all(), 0);
    return worst;
}

// ---------------------------------------------------------------------------
// 1. ldim recursion == tree-definition oracle

CriterionResult c1(bool quick) {
    Check check;
    const uint32_t max_exhaustive_domain = quick ? 2 : 3;
    for (uint32_t domain = 1; domain <= max_exhaustive_domain; ++domain) {
        const uint32_t subsets = 1u << (1u << domain);
        for (uint32_t mask = 0; mask < subsets; ++mask) {
            const FiniteClass h = subset_class(domain, mask);
            const Budgeted r = ldim_by_trees(h, domain);
            check.expect(!r.out_of_budget && r.value == ldim(h),
                         "ldim mismatch on exhaustive class, domain " + std::to_string(domain) +
                             " mask " + std::to_string(mask));
        }
    }
    Rng rng(0xC1);
    const int randoms = quick ? 40 : 500;
    const uint32_t domain = 4;
    for (int i = 0; i < randoms; ++i) {
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(quick ? 8 : 12));
        const Budgeted r = ldim_by_trees(h, domain);
        check.expect(!r.out_of_budget && r.value == ldim(h),
                     "ldim mismatch on random class #" + std::to_string(i));
    }
    return {1, "dimension-oracle equivalence", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 2. Logarithmic inequalities between the dimensions

CriterionResult c2(bool quick) {
    Check check;
    Rng rng(0xC2);
    const int n = quick ? 150 : 1000;
    for (int i = 0; i < n; ++i) {
        const uint32_t domain = 1 + static_cast<uint32_t>(rng.below(6));
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(64));
        const int d = ldim(h);
        const TdimResult t = tdim(h, h.domain_size());
        check.expect(!t.out_of_budget, "tdim unexpectedly out of budget");
        if (d >= 1)
            check.expect(floor_log2(d) <= t.value,
                         "floor(log2 ldim) > tdim on random class #" + std::to_string(i));
        if (t.value >= 1)
            check.expect(floor_log2(t.value) <= d,
                         "floor(log2 tdim) > ldim on random class #" + std::to_string(i));
    }
    return {2, "threshold/Littlestone inequalities", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 3. Optimal mistake bound, both directions

void c3_adversary_checks(const FiniteClass& h, Check& check) {
    const int d = ldim(h);
    const std::vector<BudgetedLearner> roster{soa(h), constant_learner(0), constant_learner(1),
                                              majority_history_learner()};
    for (const BudgetedLearner& l : roster) {
        const ForcingResult r = shattered_tree_adversary(h, l, kBudget);
        check.expect(!r.diverged_at, "total learner diverged against the adversary");
        check.expect(realizable(h, r.sample), "adversary sample not realizable");
        check.expect(r.mistakes_forced >= static_cast<uint64_t>(d),
                     "adversary forced fewer than ldim mistakes vs " + l.name);
        if (l.name == "soa")
            check.expect(r.mistakes_forced == static_cast<uint64_t>(d),
                         "adversary vs soa did not force exactly ldim mistakes");
        // Replaying the forced sample reproduces the recorded mistakes.
        const GameTranscript replay = run_game(l, r.sample, kBudget);
        check.expect(replay.mistakes == r.mistakes_forced, "forcing replay mismatch");
    }
}

CriterionResult c3(bool quick) {
    Check check;
    const uint32_t max_domain = quick ? 2 : 3;
    const size_t max_len = quick ? 3 : 4;
    for (uint32_t domain = 1; domain <= max_domain; ++domain) {
        const uint32_t subsets = 1u << (1u << domain);
        for (uint32_t mask = 1; mask < subsets; ++mask) {
            const FiniteClass h = subset_class(domain, mask);
            const int d = ldim(h);
            const uint64_t worst = worst_mistakes_exhaustive(h, h, soa(h), domain - 1,
                                                             max_len, check);
            check.expect(worst <= static_cast<uint64_t>(d),
                         "soa exceeded ldim mistakes, domain " + std::to_string(domain) +
                             " mask " + std::to_string(mask));
            c3_adversary_checks(h, check);
        }
    }
    Rng rng(0xC3);
    const int randoms = quick ? 6 : 40;
    for (int i = 0; i < randoms; ++i) {
        const uint32_t domain = 4 + static_cast<uint32_t>(rng.below(3));
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(32));
        const int d = ldim(h);
        const BudgetedLearner l = soa(h);
        for (int j = 0; j < (quick ? 25 : 200); ++j) {
            const Sample s = random_realizable_sample(rng, h, 1 + rng.below(6));
            const GameTranscript t = run_game(l, s, kBudget);
            check.expect(!t.diverged_at.has_value(), "soa diverged");
            check.expect(t.mistakes <= static_cast<uint64_t>(d),
                         "soa exceeded ldim mistakes on random sample");
        }
        c3_adversary_checks(h, check);
    }
    return {3, "optimal mistake bound, both directions", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 4. Leaf extraction from a total learner

CriterionResult c4(bool quick) {
    Check check;
    Rng rng(0xC4);
    const int n = quick ? 40 : 200;
    for (int i = 0; i < n; ++i) {
        const uint32_t domain = 2 + static_cast<uint32_t>(rng.below(3));
        const FiniteClass h = random_class(rng, domain, 1 + rng.below(1u << domain));
        const uint32_t depth = static_cast<uint32_t>(ldim(h)) + 1;
        const LittlestoneTree t = random_tree(rng, depth, domain_points(h));
        const ExtractionResult r = extract_nonrealizable_leaf(soa(h), t, kBudget);
        check.expect(r.leaf.has_value(), "extraction diverged against a total learner");
        if (r.leaf)
            check.expect(!realizable(h, leaf_sample(t, *r.leaf)),
                         "extracted leaf is realizable on pair #" + std::to_string(i));
    }
    return {4, "non-realizable leaf extraction", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 5. Oracle conversions, both directions plus roundtrip

CriterionResult c5(bool quick) {
    Check check;
    Rng rng(0xC5);
    const int n = quick ? 12 : 100;
    for (int i = 0; i < n; ++i) {
        const uint32_t domain = 2 + static_cast<uint32_t>(rng.below(3));
        const FiniteClass h = random_class_where(
            rng, domain, 1ull << domain, [&](const FiniteClass& c) {
                return ldim(c) <= 2 && tdim(c, c.domain_size()).value <= 3;
            });
        const uint32_t d = static_cast<uint32_t>(ldim(h));
        const uint32_t t_bound = (1u << (d + 1)) - 1;  // bound mode t_d

        try {
            auto conv =
                leaf_to_threshold_oracle(brute_leaf_oracle(h, d + 1), domain_points(h),
                                         t_bound, h);
            for (int call = 0; call < 2; ++call) {
                ThresholdSequence seq;
                for (uint32_t j = 0; j < t_bound + 1; ++j)
                    seq.points.push_back(static_cast<Point>(rng.below(domain)));
                const uint32_t idx = conv.oracle.answer(seq);
                check.expect(!realizable(h, threshold_sample(seq, idx)),
                             "converted threshold oracle output realizable");
            }

            const uint32_t t = static_cast<uint32_t>(tdim(h, h.domain_size()).value);
            const uint32_t d_bound = (1u << (t + 1)) - 1;  // bound mode d_t
            auto back =
                threshold_to_leaf_oracle(brute_threshold_oracle(h, t + 1), d_bound, h);
            const LittlestoneTree tree = random_tree(rng, d_bound + 1, domain_points(h));
            const LeafAddress leaf = back.oracle.answer(tree);
            check.expect(!realizable(h, leaf_sample(tree, leaf)),
                         "converted leaf oracle output realizable");

            if (d <= 1) {  // roundtrip at desk scale
                const uint32_t rt_d_bound = (1u << (t_bound + 1)) - 1;
                auto rt = threshold_to_leaf_oracle(conv.oracle, rt_d_bound, h);
                const LittlestoneTree rt_tree =
                    random_tree(rng, rt_d_bound + 1, domain_points(h));
                const LeafAddress rt_leaf = rt.oracle.answer(rt_tree);
                check.expect(!realizable(h, leaf_sample(rt_tree, rt_leaf)),
                             "roundtrip oracle output realizable");
            }
        } catch (const error& e) {
            check.expect(false, std::string("conversion fault: ") + e.what());
        }
    }
    return {5, "oracle conversions", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 6. Oracle splitting

CriterionResult c6(bool quick) {
    Check check;
    Rng rng(0xC6);
    const int n = quick ? 15 : 100;
    for (int i = 0; i < n; ++i) {
        const uint32_t domain = quick ? 3 : 2 + static_cast<uint32_t>(rng.below(3));
        const FiniteClass h =
            random_class_where(rng, domain, 1ull << domain, [](const FiniteClass& c) {
                const int d = ldim(c);
                return d >= 1 && d <= 2;
            });
        const uint32_t d = static_cast<uint32_t>(ldim(h));
        for (Point x = 0; x < h.domain_size(); ++x) {
            try {
                const SplitResult r =
                    split_oracle(brute_leaf_oracle(h, d + 1), x, domain_points(h), h);
                const FiniteClass restricted = restrict_class(h, x, r.bit);
                check.expect(ldim(restricted) < static_cast<int>(d),
                             "split bit does not reduce ldim");
                TreeStream stream(d, domain_points(h));
                LittlestoneTree t;
                while (stream.next(t)) {
                    const LeafAddress leaf = r.reduced.answer(t);
                    check.expect(!realizable(restricted, leaf_sample(t, leaf)),
                                 "reduced oracle output realizable");
                }
            } catch (const error& e) {
                check.expect(false, std::string("split fault: ") + e.what());
            }
        }
    }
    return {6, "oracle splitting", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 7. Bounded regime

CriterionResult c7(bool quick) {
    Check check;
    Rng rng(0xC7);
    const int n = quick ? 8 : 50;
    for (int i = 0; i < n; ++i) {
        const FiniteClass h = random_class_where(rng, 4, 16, [](const FiniteClass& c) {
            return ldim(c) <= 2;
        });
        const uint32_t d = static_cast<uint32_t>(ldim(h));
        const uint32_t bound = 1 + static_cast<uint32_t>(rng.below(quick ? 2 : 3));
        const LeafOracle a = brute_leaf_oracle(h, d + 1);
        FiniteClass h_n = bounded_regime_class(a, bound);
        check.expect(ldim(h_n) <= static_cast<int>(d), "ldim(H_N) exceeds d");
        for (size_t m = 0; m < h.size(); ++m) {
            const uint64_t restriction = h.words()[m] & ((1ull << (bound + 1)) - 1);
            check.expect(std::binary_search(h_n.words().begin(), h_n.words().end(),
                                            restriction),
                         "H_N is missing a member restriction");
        }
        const BudgetedLearner l = bounded_regime_learner(a).build(bound);
        const uint64_t worst =
            worst_mistakes_exhaustive(h, h_n, l, bound, quick ? 4 : 6, check);
        check.expect(worst <= d, "bounded-regime learner exceeded d mistakes (worst " +
                                     std::to_string(worst) + ", d " + std::to_string(d) + ")");
    }
    return {7, "bounded regime", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 8. Diagonalization and the ldim <= 2 certificate

void c8_forced_checks(const BudgetedLearner& l, uint32_t iterations, uint64_t fuel,
                      const std::vector<Point>& block, Check& check) {
    const FoolOutcome out = fool_single(l, block, fuel, iterations);
    check.expect(out.verdict.kind == FoolingVerdict::Kind::forced_mistakes,
                 l.name + ": expected forced_mistakes verdict");
    check.expect(out.verdict.mistakes == iterations, l.name + ": wrong forced mistake count");
    check.expect(out.verdict.witnesses.size() == 1, l.name + ": expected one witness");
    const Hypothesis& w = out.verdict.witnesses.front();
    check.expect(out.stream.admits(w), l.name + ": witness violates the stream");
    // Replay the anchors with the witness labels: every round is a mistake.
    Sample replay_sample;
    for (Point x : out.verdict.anchor_sequence) replay_sample.push_back({x, w(x)});
    const GameTranscript replay = run_game(l, replay_sample, fuel);
    check.expect(replay.mistakes == iterations, l.name + ": replay mistake count differs");
    check.expect(!replay.diverged_at.has_value(), l.name + ": replay diverged");
}

CriterionResult c8(bool quick) {
    Check check;
    const uint32_t iterations = quick ? 3 : 5;
    const uint64_t fuel = quick ? 6 : 8;
    std::vector<Point> block(quick ? 24 : 48);
    for (size_t j = 0; j < block.size(); ++j) block[j] = static_cast<Point>(j);

    c8_forced_checks(constant_learner(0), iterations, fuel, block, check);
    c8_forced_checks(constant_learner(1), iterations, fuel, block, check);
    c8_forced_checks(majority_history_learner(), iterations, fuel, block, check);

    // constant-0 is countered with b = 1 every iteration.
    {
        const FoolOutcome out = fool_single(constant_learner(0), block, fuel, iterations);
        for (Bit b : out.state.bits) check.expect(b == 1, "constant-0 counter-bit is not 1");
    }

    // A fuel-exhausting learner is fooled by divergence on the empty sample,
    // with one equality restriction listed per fuel step.
    {
        const FoolOutcome out = fool_single(diverging_learner(), block, fuel, iterations);
        check.expect(out.verdict.kind == FoolingVerdict::Kind::diverged_on_realizable,
                     "diverging learner: expected divergence verdict");
        check.expect(out.verdict.sample.empty(), "divergence sample should be empty");
        check.expect(out.verdict.point == block.front(), "divergence point should be x_1");
        check.expect(out.state.restrictions_last_probe == fuel,
                     "expected one equality restriction per fuel step");
        check.expect(out.verdict.witnesses.size() == 2, "expected two constant-tail witnesses");
        for (const Hypothesis& w : out.verdict.witnesses) {
            check.expect(out.stream.admits(w), "divergence witness violates the stream");
            check.expect(consistent(w, out.verdict.sample) == 1,
                         "divergence witness inconsistent with the sample");
        }
    }

    // fool_many over three learners, then certify the combined stream.
    {
        const uint32_t per_block = quick ? 10 : 20;
        const uint32_t many_iters = quick ? 2 : 3;
        const uint64_t many_fuel = quick ? 4 : 6;
        const std::vector<BudgetedLearner> roster{constant_learner(0), constant_learner(1),
                                                  majority_history_learner()};
        const FoolManyOutcome out = fool_many(roster, per_block, many_fuel, many_iters);
        check.expect(out.prefix_size >= (quick ? 30u : 60u), "prefix too small");
        for (const FoolingVerdict& v : out.verdicts) {
            check.expect(v.kind == FoolingVerdict::Kind::forced_mistakes,
                         v.learner + ": expected forced verdict in fool_many");
            check.expect(v.mistakes == many_iters, v.learner + ": wrong mistakes in fool_many");
            for (const Hypothesis& w : v.witnesses)
                check.expect(out.stream.admits(w),
                             v.learner + ": witness violates the combined stream");
        }
        const Certificate cert = certify_ldim_le_2(out.stream, out.prefix_size);
        check.expect(cert.ok, std::string("certificate failed: ") +
                                  (cert.failure ? *cert.failure : "unknown"));
        check.expect(cert.ldim_value <= 2, "materialized class ldim exceeds 2");
        check.expect(cert.blocks == 3, "certificate inferred wrong block count");
        for (const auto& fns : cert.per_block)
            check.expect(fns.size() <= 2, "block contributes more than two functions");
    }
    return {8, "diagonalization and certificate", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 9. Cylinder containment vs. inclusion-exclusion counting

namespace {

struct Compiled {
    uint64_t mask = 0, want = 0;
    bool conflict = false;
};

Compiled compile_over(const Sample& s, const std::vector<Point>& support) {
    Compiled c;
    for (const auto& [x, y] : s) {
        const auto it = std::lower_bound(support.begin(), support.end(), x);
        const uint64_t bit = 1ull << (it - support.begin());
        const uint64_t val = y ? bit : 0;
        if ((c.mask & bit) && (c.want & bit) != val) c.conflict = true;
        c.mask |= bit;
        c.want |= val;
    }
    return c;
}

// |cyl(c) ∩ (∪_j cyl(F_j))| counted by inclusion-exclusion over the
// forbidden list; the independent route for cylinder_in_union.
uint64_t covered_count_ie(const std::vector<Point>& support, const Sample& c,
                          const std::vector<Sample>& forbidden) {
    const Compiled base = compile_over(c, support);
    if (base.conflict) return 0;
    std::vector<Compiled> fs;
    for (const Sample& f : forbidden) {
        const Compiled cf = compile_over(f, support);
        if (!cf.conflict) fs.push_back(cf);
    }
    int64_t total = 0;
    for (uint64_t sub = 1; sub < (1ull << fs.size()); ++sub) {
        uint64_t mask = base.mask, want = base.want;
        bool conflict = false;
        for (size_t j = 0; j < fs.size() && !conflict; ++j) {
            if (!(sub & (1ull << j))) continue;
            if ((mask & fs[j].mask & (want ^ fs[j].want)) != 0) conflict = true;
            mask |= fs[j].mask;
            want |= fs[j].want;
        }
        if (conflict) continue;
        const uint64_t free = support.size() - static_cast<size_t>(std::popcount(mask));
        const int64_t term = static_cast<int64_t>(1ull << free);
        total += (std::popcount(sub) % 2 == 1) ? term : -term;
    }
    return static_cast<uint64_t>(total);
}

}  // namespace

CriterionResult c9(bool quick) {
    Check check;
    Rng rng(0xC9);
    const int n = quick ? 150 : 1000;
    for (int i = 0; i < n; ++i) {
        const size_t support_size = 3 + rng.below(quick ? 6 : 10);
        std::set<Point> pts;
        while (pts.size() < support_size) pts.insert(static_cast<Point>(rng.below(16)));
        const std::vector<Point> support(pts.begin(), pts.end());

        Sample c;
        for (Point p : support) {
            const uint64_t state = rng.below(3);
            if (state) c.push_back({p, static_cast<Bit>(state - 1)});
        }
        if (rng.below(8) == 0 && !c.empty()) c.push_back({c[0].x, static_cast<Bit>(1 - c[0].y)});

        std::vector<Cylinder> forbidden;
        std::vector<Sample> forbidden_samples;
        const size_t nf = 1 + rng.below(quick ? 6 : 10);
        for (size_t j = 0; j < nf; ++j) {
            Sample f;
            const size_t pairs = 1 + rng.below(4);
            for (size_t k = 0; k < pairs; ++k)
                f.push_back({support[rng.below(support.size())],
                             static_cast<Bit>(rng.below(2))});
            forbidden.push_back({f});
            forbidden_samples.push_back(f);
        }

        const Bit fast = cylinder_in_union({c}, forbidden, 20);
        const Compiled base = compile_over(c, support);
        const uint64_t cyl_size =
            base.conflict
                ? 0
                : 1ull << (support.size() - static_cast<size_t>(std::popcount(base.mask)));
        const uint64_t covered = covered_count_ie(support, c, forbidden_samples);
        const Bit slow = (covered == cyl_size) ? 1 : 0;
        check.expect(fast == slow,
                     "cylinder_in_union disagrees with inclusion-exclusion on #" +
                         std::to_string(i));
    }
    return {9, "cylinder union containment", check.ok, 0, check.detail};
}

// ---------------------------------------------------------------------------
// 10. One-mistake learner for ldim <= 1

CriterionResult c10(bool quick) {
    Check check;
    Rng rng(0xCA);
    const int n = quick ? 20 : 100;
    for (int i = 0; i < n; ++i) {
        const uint32_t domain = 2 + static_cast<uint32_t>(rng.below(quick ? 2 : 4));
        const FiniteClass h = random_class_where(rng, domain, 4, [](const FiniteClass& c) {
            return ldim(c) <= 1;
        });
        const BudgetedLearner l = eldim1_learner(h);
        const uint64_t worst =
            worst_mistakes_exhaustive(h, h, l, domain - 1, quick ? 4 : 5, check);
        check.expect(worst <= 1, "eldim1 learner exceeded one mistake (worst " +
                                     std::to_string(worst) + ")");
    }
    return {10, "one-mistake learner", check.ok, 0, check.detail};
}

}  // namespace

std::vector<CriterionResult> run_all(bool quick) {
    std::vector<CriterionResult (*)(bool)> runners{c1, c2, c3, c4, c5, c6, c7, c8, c9, c10};
    std::vector<CriterionResult> results;
    for (auto* runner : runners) {
        const auto start = std::chrono::steady_clock::now();
        CriterionResult r = runner(quick);
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                        .count();
        results.push_back(std::move(r));
    }
    return results;
}

int run_and_print(bool quick, std::ostream& out) {
    int failures = 0;
    for (const CriterionResult& r : run_all(quick)) {
        out << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id << ": " << r.name
            << " (" << r.seconds << "s)";
        if (!r.pass) out << " -- " << r.detail;
        out << "\n";
        failures += r.pass ? 0 : 1;
    }
    out << (failures ? "FAILED" : "OK") << " (" << (quick ? "quick" : "full") << " scale)\n";
    return failures;
}

}  // namespace llab::selftest

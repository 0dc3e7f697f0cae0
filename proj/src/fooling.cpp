#include "llab/fooling.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <sstream>

#include "llab/dimensions.hpp"

namespace llab {

// ---------------------------------------------------------------------------
// RestrictionStream

void RestrictionStream::append(Sample forbid, std::string origin) {
    emitted_.push_back({std::move(forbid), std::move(origin)});
}

bool RestrictionStream::admits(const Hypothesis& f) const {
    for (const ForbiddenCylinder& c : emitted_) {
        bool matches = true;  // an empty combination forbids every function
        for (const auto& [x, y] : c.forbid)
            if (x >= f.length || f(x) != y) {
                matches = false;
                break;
            }
        if (matches) return false;
    }
    return true;
}

std::string RestrictionStream::to_jsonl() const {
    std::string out;
    for (const ForbiddenCylinder& c : emitted_) {
        nlohmann::json j{{"forbid", sample_to_json(c.forbid)}, {"origin", c.origin}};
        out += j.dump();
        out += '\n';
    }
    return out;
}

RestrictionStream RestrictionStream::from_jsonl(std::istream& in) {
    RestrictionStream s;
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            throw parse_error("stream line " + std::to_string(lineno) + ": " + e.what());
        }
        if (!j.is_object() || !j.contains("forbid") || !j.contains("origin") ||
            !j["origin"].is_string())
            throw parse_error("stream line " + std::to_string(lineno) +
                              ": expected {\"forbid\": [[x,b],...], \"origin\": \"...\"}");
        s.append(sample_from_json(j["forbid"]), j["origin"].get<std::string>());
    }
    return s;
}

// ---------------------------------------------------------------------------
// Prop 2.4 finite core

namespace {

struct PositionalCylinder {
    uint64_t mask = 0;
    uint64_t want = 0;
};

// Compiles a sample over the positions of `support`; nullopt when the
// sample conflicts with itself (empty cylinder) or mentions a point outside
// the support (if allow_outside, such samples are reported via `outside`).
std::optional<PositionalCylinder> compile_positional(const Sample& s,
                                                     const std::vector<Point>& support,
                                                     bool* outside = nullptr) {
    PositionalCylinder c;
    for (const auto& [x, y] : s) {
        const auto it = std::lower_bound(support.begin(), support.end(), x);
        if (it == support.end() || *it != x) {
            if (outside) {
                *outside = true;
                return std::nullopt;
            }
            throw domain_error("point " + std::to_string(x) + " outside the support");
        }
        const uint64_t bit = 1ull << (it - support.begin());
        const uint64_t val = y ? bit : 0;
        if ((c.mask & bit) && (c.want & bit) != val) return std::nullopt;
        c.mask |= bit;
        c.want |= val;
    }
    return c;
}

std::vector<Point> sorted_support(const Cylinder& c, const std::vector<Cylinder>& forbidden) {
    std::vector<Point> support;
    for (const auto& [x, y] : c.sample) support.push_back(x);
    for (const Cylinder& f : forbidden)
        for (const auto& [x, y] : f.sample) support.push_back(x);
    std::sort(support.begin(), support.end());
    support.erase(std::unique(support.begin(), support.end()), support.end());
    return support;
}

}  // namespace

Bit cylinder_in_union(const Cylinder& c, const std::vector<Cylinder>& forbidden,
                      uint32_t support_cap) {
    const std::vector<Point> support = sorted_support(c, forbidden);
    if (support.size() > support_cap)
        throw resource_guard("combined support of " + std::to_string(support.size()) +
                             " points exceeds the cap of " + std::to_string(support_cap));
    const auto base = compile_positional(c.sample, support);
    if (!base) return 1;  // empty cylinder is a subset of anything

    std::vector<PositionalCylinder> covers;
    for (const Cylinder& f : forbidden)
        if (auto pc = compile_positional(f.sample, support)) covers.push_back(*pc);

    // A forbidden cylinder over these positions covers assignment g iff
    // (g & mask) == want; functions outside the support are unconstrained
    // on both sides, so assignments on the union decide containment.
    const uint64_t total = 1ull << support.size();
    for (uint64_t g = 0; g < total; ++g) {
        if ((g & base->mask) != base->want) continue;
        bool covered = false;
        for (const PositionalCylinder& pc : covers)
            if ((g & pc.mask) == pc.want) {
                covered = true;
                break;
            }
        if (!covered) return 0;
    }
    return 1;
}

std::vector<Sample> enumerate_nonrealizable(const RestrictionStream& stream,
                                            const std::vector<Point>& support,
                                            uint32_t support_cap) {
    std::vector<Point> pts = support;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() > support_cap)
        throw resource_guard("support of " + std::to_string(pts.size()) +
                             " points exceeds the cap of " + std::to_string(support_cap));

    std::vector<Cylinder> forbidden;
    for (const ForbiddenCylinder& c : stream.emitted()) forbidden.push_back({c.forbid});

    // Per-point states: absent, fixed 0, fixed 1, both bits (the canonical
    // conflicting sample). First point most significant in the odometer.
    std::vector<Sample> out;
    std::vector<uint32_t> state(pts.size(), 0);
    while (true) {
        Sample s;
        for (size_t i = 0; i < pts.size(); ++i) {
            switch (state[i]) {
                case 0: break;
                case 1: s.push_back({pts[i], 0}); break;
                case 2: s.push_back({pts[i], 1}); break;
                case 3:
                    s.push_back({pts[i], 0});
                    s.push_back({pts[i], 1});
                    break;
            }
        }
        if (cylinder_in_union({s}, forbidden, std::max(support_cap, 20u)))
            out.push_back(std::move(s));
        size_t p = state.size();
        while (p > 0 && ++state[p - 1] == 4) state[--p] = 0;
        if (p == 0) break;
    }
    return out;
}

// ---------------------------------------------------------------------------
// The diagonalization block

namespace {

using EmitFn = std::function<void(Sample, bool /*is_value*/)>;

struct BlockRun {
    FoolingVerdict verdict;
    FoolingState state;
};

// Values on block positions: run_lengths paint the intervals, then a
// constant tail from position `tail_from`.
Hypothesis block_witness(const std::vector<Point>& block, const std::vector<Bit>& bits,
                         const std::vector<uint32_t>& run_lengths, size_t tail_from,
                         Bit tail, uint32_t domain) {
    Hypothesis f{0, domain};
    size_t pos = 0;
    for (size_t m = 0; m < bits.size(); ++m)
        for (uint32_t j = 0; j < run_lengths[m]; ++j, ++pos)
            if (bits[m]) f.bits |= 1ull << block[pos];
    if (tail)
        for (size_t j = tail_from; j < block.size(); ++j) f.bits |= 1ull << block[j];
    return f;
}

BlockRun run_block(const BudgetedLearner& l, const std::vector<Point>& block,
                   uint64_t fuel_per_probe, uint32_t max_iterations, uint32_t domain,
                   const EmitFn& emit) {
    if (fuel_per_probe == 0) throw config_error("fool: fuel_per_probe must be >= 1");
    if (max_iterations == 0) throw config_error("fool: max_iterations must be >= 1");
    if (block.size() < fuel_per_probe * max_iterations + 1)
        throw config_error("fool: block of " + std::to_string(block.size()) +
                           " points is too small for " + std::to_string(max_iterations) +
                           " probes at fuel " + std::to_string(fuel_per_probe));
    for (Point p : block)
        if (p >= domain) throw config_error("fool: block point outside the materialized prefix");

    BlockRun r;
    r.state.block_points = block;
    r.verdict.learner = l.name;
    size_t idx = 0;  // block position of the pending anchor x_{n+1}

    for (uint32_t iter = 0; iter < max_iterations; ++iter) {
        if (idx >= block.size())
            throw config_error("fool: materialized block exhausted before iteration " +
                               std::to_string(iter + 1));
        const Point anchor = block[idx];
        r.state.pending_query = anchor;
        const Prediction p = l.predict(r.state.current_sample, anchor, fuel_per_probe);

        // One tail-equality restriction per step the probe consumed:
        // f(anchor) = f(anchor + k - 1) in block-position arithmetic.
        uint32_t emitted = 0;
        const uint64_t steps = p.diverged() ? fuel_per_probe : std::min(p.steps, fuel_per_probe);
        for (uint64_t k = 2; k <= steps + 1; ++k) {
            const size_t partner = idx + static_cast<size_t>(k) - 1;
            if (partner >= block.size()) break;  // prefix exhausted
            emit(Sample{{anchor, 0}, {block[partner], 1}}, false);
            emit(Sample{{anchor, 1}, {block[partner], 0}}, false);
            ++emitted;
        }
        r.state.fuel_spent_last_probe = steps;
        r.state.restrictions_last_probe = emitted;

        if (p.diverged()) {
            r.state.phase = FoolingState::Phase::diverged;
            r.verdict.kind = FoolingVerdict::Kind::diverged_on_realizable;
            r.verdict.sample = r.state.current_sample;
            r.verdict.point = anchor;
            for (Bit tail : {Bit{0}, Bit{1}})
                r.verdict.witnesses.push_back(block_witness(
                    block, r.state.bits, r.state.run_lengths, idx, tail, domain));
            return r;
        }

        const Bit b = static_cast<Bit>(1 - p.value);
        emit(Sample{{anchor, p.value}}, true);  // forbid the predicted value
        r.verdict.predictions.push_back(p);
        r.state.anchors.push_back(anchor);
        r.state.bits.push_back(b);
        r.state.run_lengths.push_back(emitted + 1);  // k_{n+1} = restrictions + 1
        r.state.current_sample.push_back({anchor, b});
        r.state.iterations = iter + 1;
        r.state.phase = FoolingState::Phase::halted_with;
        r.state.last_output = p.value;
        idx += emitted + 1;
    }

    // Close the block: the (n+1)-st probe's equality listing runs forever in
    // the unbounded construction, so tie the whole remaining materialized
    // tail together. The class on the block then has exactly the interval
    // structure plus a constant tail.
    if (idx < block.size()) {
        const Point anchor = block[idx];
        for (size_t partner = idx + 1; partner < block.size(); ++partner) {
            emit(Sample{{anchor, 0}, {block[partner], 1}}, false);
            emit(Sample{{anchor, 1}, {block[partner], 0}}, false);
        }
    }

    r.verdict.kind = FoolingVerdict::Kind::forced_mistakes;
    r.verdict.mistakes = max_iterations;
    r.verdict.anchor_sequence = r.state.anchors;
    r.verdict.witnesses.push_back(
        block_witness(block, r.state.bits, r.state.run_lengths, idx, 0, domain));
    return r;
}

void validate_witnesses(const FoolingVerdict& v, const RestrictionStream& stream) {
    for (const Hypothesis& w : v.witnesses) {
        if (!stream.admits(w))
            throw structural_error("fooling witness violates the restriction stream");
        if (!consistent(w, v.sample))
            throw structural_error("fooling witness inconsistent with the probe sample");
    }
    if (v.kind == FoolingVerdict::Kind::forced_mistakes) {
        const Hypothesis& w = v.witnesses.front();
        for (size_t m = 0; m < v.anchor_sequence.size(); ++m)
            if (v.predictions[m].value == w(v.anchor_sequence[m]))
                throw structural_error("fooling witness agrees with a prediction");
    }
}

}  // namespace

nlohmann::json FoolingVerdict::to_json() const {
    nlohmann::json j{{"learner", learner}};
    if (kind == Kind::diverged_on_realizable) {
        j["kind"] = "diverged_on_realizable";
        j["sample"] = sample_to_json(sample);
        j["point"] = point;
    } else {
        j["kind"] = "forced_mistakes";
        j["mistakes"] = mistakes;
        nlohmann::json seq = nlohmann::json::array();
        for (Point p : anchor_sequence) seq.push_back(p);
        j["anchor_sequence"] = seq;
        nlohmann::json preds = nlohmann::json::array();
        for (const Prediction& p : predictions)
            preds.push_back(p.diverged() ? std::string("diverged")
                                         : std::string(1, '0' + p.value));
        j["predictions"] = preds;
    }
    nlohmann::json ws = nlohmann::json::array();
    for (const Hypothesis& w : witnesses) ws.push_back(w.to_string());
    j["witnesses"] = ws;
    return j;
}

FoolOutcome fool_single(const BudgetedLearner& l, std::vector<Point> block,
                        uint64_t fuel_per_probe, uint32_t max_iterations) {
    if (block.empty()) throw config_error("fool_single: block must be nonempty");
    Point max_pt = 0;
    for (Point p : block) max_pt = std::max(max_pt, p);
    if (max_pt >= kMaxDomain)
        throw config_error("fool_single: block points must be < " + std::to_string(kMaxDomain));
    const uint32_t domain = max_pt + 1;

    FoolOutcome out;
    EmitFn emit = [&out](Sample s, bool is_value) {
        out.stream.append(std::move(s), is_value ? "block-1-value" : "block-1-equality");
    };
    BlockRun run = run_block(l, block, fuel_per_probe, max_iterations, domain, emit);
    out.verdict = std::move(run.verdict);
    out.state = std::move(run.state);
    validate_witnesses(out.verdict, out.stream);
    return out;
}

FoolManyOutcome fool_many(const std::vector<BudgetedLearner>& learners,
                          uint32_t points_per_block, uint64_t fuel_per_probe,
                          uint32_t max_iterations) {
    if (learners.empty()) throw config_error("fool_many: need at least one learner");
    const uint32_t blocks = static_cast<uint32_t>(learners.size());
    const uint32_t prefix = blocks * points_per_block;
    if (prefix == 0 || prefix > kMaxDomain)
        throw config_error("fool_many: materialized prefix must be 1.." +
                           std::to_string(kMaxDomain) + " points");

    FoolManyOutcome out;
    out.prefix_size = prefix;
    out.blocks = blocks;

    // First-type restrictions: no function may be 1 at two points of
    // different blocks. Emitted over the materialized prefix only.
    for (Point p = 0; p < prefix; ++p)
        for (Point q = p + 1; q < prefix; ++q)
            if (p % blocks != q % blocks)
                out.stream.append(Sample{{p, 1}, {q, 1}}, "first-type");

    for (uint32_t i = 0; i < blocks; ++i) {
        std::vector<Point> block(points_per_block);
        for (uint32_t j = 0; j < points_per_block; ++j) block[j] = i + j * blocks;
        const std::string tag = "block-" + std::to_string(i + 1);

        // Weakened second-type restrictions: R becomes {R and f(y)=1} for
        // every y of the block, so functions that are 0 on the whole block
        // can never violate a block restriction.
        EmitFn emit = [&out, &block, &tag](Sample s, bool is_value) {
            const std::string origin = tag + (is_value ? "-value" : "-equality");
            for (Point y : block) {
                Sample weakened = s;
                weakened.push_back({y, 1});
                out.stream.append(std::move(weakened), origin);
            }
        };
        BlockRun run =
            run_block(learners[i], block, fuel_per_probe, max_iterations, prefix, emit);
        out.states.push_back(std::move(run.state));
        out.verdicts.push_back(std::move(run.verdict));
    }

    // Witnesses are 0 outside their own block by construction (block_witness
    // only sets bits on block points); validate against the full stream.
    for (const FoolingVerdict& v : out.verdicts) validate_witnesses(v, out.stream);
    return out;
}

// ---------------------------------------------------------------------------
// Certificate

namespace {

// Backtracking materialization of the class on {0..prefix-1}: cylinders are
// checked as soon as their last point is assigned.
class Materializer {
  public:
    Materializer(const RestrictionStream& stream, uint32_t prefix) : prefix_(prefix) {
        by_last_.resize(prefix);
        for (const ForbiddenCylinder& c : stream.emitted()) {
            bool outside = false;
            auto pc = compile_positional_prefix(c.forbid, prefix, &outside);
            if (outside || !pc) continue;  // not decidable on / never matched in the prefix
            if (pc->mask == 0) {
                forbid_all_ = true;  // empty combination: nothing is admitted
                continue;
            }
            const uint32_t last = 63 - static_cast<uint32_t>(__builtin_clzll(pc->mask));
            by_last_[last].push_back(*pc);
        }
    }

    std::vector<uint64_t> run() {
        nodes_ = 0;
        found_.clear();
        if (!forbid_all_) dfs(0, 0);
        return std::move(found_);
    }

  private:
    static std::optional<PositionalCylinder> compile_positional_prefix(const Sample& s,
                                                                       uint32_t prefix,
                                                                       bool* outside) {
        PositionalCylinder c;
        for (const auto& [x, y] : s) {
            if (x >= prefix) {
                *outside = true;
                return std::nullopt;
            }
            const uint64_t bit = 1ull << x;
            const uint64_t val = y ? bit : 0;
            if ((c.mask & bit) && (c.want & bit) != val) return std::nullopt;
            c.mask |= bit;
            c.want |= val;
        }
        return c;
    }

    void dfs(uint32_t p, uint64_t f) {
        if (++nodes_ > enum_cap())
            throw resource_guard("class materialization exceeds the enumeration cap");
        if (p == prefix_) {
            found_.push_back(f);
            return;
        }
        for (uint64_t b : {uint64_t{0}, uint64_t{1}}) {
            const uint64_t g = f | (b << p);
            bool violated = false;
            for (const PositionalCylinder& c : by_last_[p])
                if ((g & c.mask) == c.want) {
                    violated = true;
                    break;
                }
            if (!violated) dfs(p + 1, g);
        }
    }

    uint32_t prefix_;
    std::vector<std::vector<PositionalCylinder>> by_last_;
    std::vector<uint64_t> found_;
    uint64_t nodes_ = 0;
    bool forbid_all_ = false;
};

}  // namespace

nlohmann::json Certificate::to_json() const {
    nlohmann::json j{{"ok", ok},
                     {"ldim", ldim_value},
                     {"blocks", blocks},
                     {"has_all_zero", has_all_zero},
                     {"class_size", materialized.size()}};
    nlohmann::json per = nlohmann::json::array();
    for (const auto& fns : per_block) {
        nlohmann::json entry = nlohmann::json::array();
        for (const Hypothesis& f : fns) entry.push_back(f.to_string());
        per.push_back(entry);
    }
    j["per_block"] = per;
    if (failure) j["failure"] = *failure;
    if (!counterexample.empty()) {
        nlohmann::json ce = nlohmann::json::array();
        for (const Hypothesis& f : counterexample) ce.push_back(f.to_string());
        j["counterexample"] = ce;
    }
    return j;
}

Certificate certify_ldim_le_2(const RestrictionStream& stream, uint32_t prefix_size) {
    if (prefix_size == 0 || prefix_size > kMaxDomain)
        throw config_error("certify: prefix size must be 1.." + std::to_string(kMaxDomain));

    Certificate cert;

    // Infer the block count from the origin tags (round-robin layout).
    uint32_t blocks = 1;
    for (const ForbiddenCylinder& c : stream.emitted()) {
        if (c.origin.rfind("block-", 0) != 0) continue;
        const size_t dash = c.origin.find('-', 6);
        if (dash == std::string::npos) continue;
        const uint32_t id =
            static_cast<uint32_t>(std::strtoul(c.origin.substr(6, dash - 6).c_str(), nullptr, 10));
        blocks = std::max(blocks, id);
    }
    cert.blocks = blocks;

    Materializer mat(stream, prefix_size);
    cert.materialized = FiniteClass(prefix_size, mat.run());
    cert.per_block.assign(blocks, {});

    for (size_t i = 0; i < cert.materialized.size(); ++i) {
        const Hypothesis f = cert.materialized.hypothesis(i);
        if (f.bits == 0) {
            cert.has_all_zero = true;
            continue;
        }
        // All 1s of a member must sit in one residue block.
        std::optional<uint32_t> home;
        bool split = false;
        for (Point x = 0; x < prefix_size; ++x) {
            if (!f(x)) continue;
            const uint32_t r = x % blocks;
            if (home && *home != r) split = true;
            home = r;
        }
        if (split) {
            cert.failure = "member has value 1 in two different blocks";
            cert.counterexample.push_back(f);
            continue;
        }
        cert.per_block[*home].push_back(f);
    }
    if (cert.failure) return cert;

    for (uint32_t i = 0; i < blocks; ++i)
        if (cert.per_block[i].size() > 2) {
            cert.failure = "block " + std::to_string(i + 1) + " contributes " +
                           std::to_string(cert.per_block[i].size()) + " functions";
            cert.counterexample = cert.per_block[i];
            return cert;
        }

    cert.ldim_value = ldim(cert.materialized);
    if (cert.ldim_value > 2) {
        cert.failure = "materialized class has ldim " + std::to_string(cert.ldim_value);
        return cert;
    }
    cert.ok = true;
    return cert;
}

}  // namespace llab

#include "llab/dimensions.hpp"

#include <algorithm>
#include <bit>

#include "llab/kernels.hpp"

namespace llab {

// ---------------------------------------------------------------------------
// Trees and addresses

void LittlestoneTree::validate() const {
    if (depth == 0 || depth > 31) throw structural_error("tree depth must be in 1..31");
    if (labels.size() != num_internal())
        throw structural_error("tree of depth " + std::to_string(depth) + " needs " +
                               std::to_string(num_internal()) + " labels, got " +
                               std::to_string(labels.size()));
}

namespace {

nlohmann::json node_to_json(const LittlestoneTree& t, uint32_t node) {
    if (node >= t.num_internal()) return "leaf";
    return {{"label", t.labels[node]},
            {"zero", node_to_json(t, 2 * node + 1)},
            {"one", node_to_json(t, 2 * node + 2)}};
}

// Fills labels breadth-first; returns the subtree depth below `j`.
uint32_t node_from_json(const nlohmann::json& j, std::vector<Point>& labels,
                        std::vector<int64_t>& at, uint32_t node) {
    if (j.is_string()) {
        if (j.get<std::string>() != "leaf") throw parse_error("tree leaves must be \"leaf\"");
        return 0;
    }
    if (!j.is_object() || !j.contains("label") || !j.contains("zero") || !j.contains("one"))
        throw parse_error("tree nodes must be {\"label\", \"zero\", \"one\"}");
    if (!j["label"].is_number_unsigned()) throw parse_error("tree labels must be naturals");
    if (node >= at.size()) at.resize(2 * at.size() + 2, -1);
    at[node] = j["label"].get<int64_t>();
    const uint32_t d0 = node_from_json(j["zero"], labels, at, 2 * node + 1);
    const uint32_t d1 = node_from_json(j["one"], labels, at, 2 * node + 2);
    if (d0 != d1) throw parse_error("tree is not complete: sibling depths differ");
    return d0 + 1;
}

}  // namespace

nlohmann::json LittlestoneTree::to_json() const {
    validate();
    return node_to_json(*this, 0);
}

LittlestoneTree LittlestoneTree::from_json(const nlohmann::json& j) {
    std::vector<Point> labels;
    std::vector<int64_t> at(1, -1);
    const uint32_t depth = node_from_json(j, labels, at, 0);
    if (depth == 0) throw parse_error("tree must have depth >= 1");
    LittlestoneTree t{depth, {}};
    t.labels.resize(t.num_internal());
    for (uint32_t i = 0; i < t.num_internal(); ++i) {
        if (i >= at.size() || at[i] < 0) throw parse_error("tree is not complete");
        t.labels[i] = static_cast<Point>(at[i]);
    }
    return t;
}

std::string LeafAddress::to_string() const {
    std::string s(depth, '0');
    for (uint32_t level = 0; level < depth; ++level)
        if (bit(level)) s[level] = '1';
    return s;
}

LeafAddress LeafAddress::from_string(const std::string& s) {
    if (s.empty() || s.size() > 31) throw structural_error("leaf address length must be 1..31");
    LeafAddress a{static_cast<uint32_t>(s.size()), 0};
    for (char c : s) {
        if (c != '0' && c != '1') throw structural_error("leaf address must be over {0,1}");
        a.path = (a.path << 1) | static_cast<uint32_t>(c == '1');
    }
    return a;
}

Sample leaf_sample(const LittlestoneTree& t, const LeafAddress& a) {
    t.validate();
    if (a.depth != t.depth)
        throw structural_error("address length " + std::to_string(a.depth) +
                               " does not match tree depth " + std::to_string(t.depth));
    Sample s;
    s.reserve(t.depth);
    uint32_t node = 0;
    for (uint32_t level = 0; level < t.depth; ++level) {
        const Bit b = a.bit(level);
        s.push_back({t.labels[node], b});
        node = 2 * node + 1 + b;
    }
    return s;
}

// ---------------------------------------------------------------------------
// Tree enumeration

TreeStream::TreeStream(uint32_t depth, std::vector<Point> labels)
    : depth_(depth), labels_(std::move(labels)) {
    if (depth_ == 0 || depth_ > 31) throw structural_error("tree depth must be in 1..31");
    std::sort(labels_.begin(), labels_.end());
    labels_.erase(std::unique(labels_.begin(), labels_.end()), labels_.end());
    if (labels_.empty()) throw config_error("enumerate_trees needs at least one label");
    idx_.assign((1u << depth_) - 1, 0);
}

void TreeStream::reset() {
    std::fill(idx_.begin(), idx_.end(), 0);
    started_ = done_ = false;
}

bool TreeStream::next(LittlestoneTree& out) {
    if (done_) return false;
    if (started_) {
        // Advance the BFS label tuple lexicographically: last position fastest.
        size_t p = idx_.size();
        while (p > 0) {
            if (++idx_[p - 1] < labels_.size()) break;
            idx_[--p] = 0;
        }
        if (p == 0) {
            done_ = true;
            return false;
        }
    }
    started_ = true;
    out.depth = depth_;
    out.labels.resize(idx_.size());
    for (size_t i = 0; i < idx_.size(); ++i) out.labels[i] = labels_[idx_[i]];
    return true;
}

std::optional<uint64_t> tree_count(uint32_t depth, size_t num_labels) {
    if (depth == 0 || depth > 31 || num_labels == 0) return std::nullopt;
    const uint64_t positions = (1ull << depth) - 1;
    uint64_t total = 1;
    for (uint64_t i = 0; i < positions; ++i) {
        if (total > UINT64_MAX / num_labels) return std::nullopt;
        total *= num_labels;
    }
    return total;
}

// ---------------------------------------------------------------------------
// MaskLdim: member-bitmask subset engine (|h| <= 64)

MaskLdim::MaskLdim(const FiniteClass& h) : h_(h) {
    if (h.size() > 64) throw config_error("MaskLdim supports at most 64 hypotheses");
    all_ = h.size() == 64 ? ~0ull : (1ull << h.size()) - 1;
    pre_.resize(h.domain_size());
    for (Point x = 0; x < h.domain_size(); ++x) {
        const uint64_t mask = 1ull << x;
        pre_[x][0] = kernels::member_mask(h.words(), mask, 0);
        pre_[x][1] = kernels::member_mask(h.words(), mask, mask);
    }
}

uint64_t MaskLdim::consistent_members(uint64_t m, const Sample& s) const {
    for (const auto& [x, y] : s) {
        if (x >= h_.domain_size())
            throw domain_error("point " + std::to_string(x) + " outside domain of size " +
                               std::to_string(h_.domain_size()));
        m &= pre_[x][y & 1];
        if (!m) break;
    }
    return m;
}

int MaskLdim::ldim(uint64_t m) {
    const int n = count(m);
    if (n == 0) return -1;
    if (n == 1) return 0;
    if (auto it = memo_.find(m); it != memo_.end()) return it->second;
    const int cap = std::bit_width(static_cast<uint64_t>(n)) - 1;  // ldim <= log2 |m|
    int best = 0;
    for (Point x = 0; x < h_.domain_size() && best < cap; ++x) {
        const uint64_t m0 = m & pre_[x][0];
        const uint64_t m1 = m & pre_[x][1];
        if (!m0 || !m1) continue;
        const int v = 1 + std::min(ldim(m0), ldim(m1));
        best = std::max(best, v);
    }
    memo_.emplace(m, static_cast<int8_t>(best));
    return best;
}

// ---------------------------------------------------------------------------
// ldim dispatch (general path for classes beyond 64 members)

namespace {

struct WordsHash {
    size_t operator()(const std::vector<uint64_t>& v) const {
        uint64_t h = 0xcbf29ce484222325ull;
        for (uint64_t w : v) {
            h ^= w;
            h *= 0x100000001b3ull;
        }
        return static_cast<size_t>(h);
    }
};

class GeneralLdim {
  public:
    explicit GeneralLdim(uint32_t domain) : domain_(domain) {}

    int run(std::vector<uint64_t> members) {
        if (members.empty()) return -1;
        if (members.size() == 1) return 0;
        if (auto it = memo_.find(members); it != memo_.end()) return it->second;
        const int cap = std::bit_width(members.size()) - 1;
        int best = 0;
        std::vector<uint64_t> side(members.size());
        for (Point x = 0; x < domain_ && best < cap; ++x) {
            const uint64_t mask = 1ull << x;
            side.resize(members.size());
            side.resize(kernels::filter_match(members, mask, 0, side.data()));
            if (side.empty() || side.size() == members.size()) continue;
            const int l0 = run(side);
            side.resize(members.size());
            side.resize(kernels::filter_match(members, mask, mask, side.data()));
            const int l1 = run(side);
            best = std::max(best, 1 + std::min(l0, l1));
        }
        memo_.emplace(std::move(members), best);
        return best;
    }

  private:
    uint32_t domain_;
    std::unordered_map<std::vector<uint64_t>, int, WordsHash> memo_;
};

}  // namespace

int ldim(const FiniteClass& h) {
    if (h.size() <= 64) {
        MaskLdim eng(h);
        return eng.ldim(eng.all());
    }
    GeneralLdim eng(h.domain_size());
    return eng.run({h.words().begin(), h.words().end()});
}

// ---------------------------------------------------------------------------
// ldim by trees

namespace {

// Searches for a depth-k tree all of whose leaves carry realizable samples.
// Label positions are assigned in BFS order; a label choice that kills a
// child constraint already dooms every completion (some leaf below it is
// dead), so only fully-alive prefixes are extended.
bool exists_fully_realizable_tree_small(MaskLdim& eng, uint32_t k,
                                        std::vector<uint64_t>& node_mask, uint32_t p) {
    const uint32_t internal = (1u << k) - 1;
    if (p == internal) return true;
    const uint64_t m = node_mask[p];
    for (Point x = 0; x < eng.base().domain_size(); ++x) {
        const uint64_t m0 = eng.restrict_members(m, x, 0);
        if (!m0) continue;
        const uint64_t m1 = eng.restrict_members(m, x, 1);
        if (!m1) continue;
        node_mask[2 * p + 1] = m0;
        node_mask[2 * p + 2] = m1;
        if (exists_fully_realizable_tree_small(eng, k, node_mask, p + 1)) return true;
    }
    return false;
}

struct PathConstraint {
    uint64_t mask = 0;
    uint64_t want = 0;
};

bool exists_fully_realizable_tree_general(const FiniteClass& h, uint32_t k,
                                          std::vector<PathConstraint>& node_c, uint32_t p) {
    const uint32_t internal = (1u << k) - 1;
    if (p == internal) return true;
    const PathConstraint c = node_c[p];
    for (Point x = 0; x < h.domain_size(); ++x) {
        const uint64_t bit = 1ull << x;
        bool alive[2];
        PathConstraint child[2];
        for (Bit b : {Bit{0}, Bit{1}}) {
            const uint64_t val = static_cast<uint64_t>(b) << x;
            if ((c.mask & bit) && (c.want & bit) != val) {
                alive[b] = false;  // contradictory path
                continue;
            }
            child[b] = {c.mask | bit, c.want | val};
            alive[b] = kernels::any_match(h.words(), child[b].mask, child[b].want);
        }
        if (!alive[0] || !alive[1]) continue;
        node_c[2 * p + 1] = child[0];
        node_c[2 * p + 2] = child[1];
        if (exists_fully_realizable_tree_general(h, k, node_c, p + 1)) return true;
    }
    return false;
}

bool every_tree_has_dead_leaf(const FiniteClass& h, uint32_t k) {
    if (h.size() <= 64) {
        MaskLdim eng(h);
        std::vector<uint64_t> node_mask((2u << k) - 1, 0);
        node_mask[0] = eng.all();
        return !exists_fully_realizable_tree_small(eng, k, node_mask, 0);
    }
    std::vector<PathConstraint> node_c((2u << k) - 1);
    node_c[0] = {};
    return !exists_fully_realizable_tree_general(h, k, node_c, 0);
}

}  // namespace

Budgeted ldim_by_trees(const FiniteClass& h, uint32_t max_d) {
    if (h.empty()) return {-1, false};
    for (uint32_t d = 0; d <= max_d; ++d)
        if (every_tree_has_dead_leaf(h, d + 1)) return {static_cast<int>(d), false};
    return {static_cast<int>(max_d), true};
}

Budgeted ldim_by_tree_stream(const FiniteClass& h, uint32_t max_d) {
    if (h.empty()) return {-1, false};
    std::vector<Point> labels(h.domain_size());
    for (Point x = 0; x < h.domain_size(); ++x) labels[x] = x;
    for (uint32_t d = 0; d <= max_d; ++d) {
        TreeStream stream(d + 1, labels);
        LittlestoneTree t;
        bool all_have_dead_leaf = true;
        while (stream.next(t)) {
            bool dead = false;
            for (uint32_t leaf = 0; leaf < t.num_leaves() && !dead; ++leaf)
                dead = !realizable(h, leaf_sample(t, LeafAddress{t.depth, leaf}));
            if (!dead) {
                all_have_dead_leaf = false;
                break;
            }
        }
        if (all_have_dead_leaf) return {static_cast<int>(d), false};
    }
    return {static_cast<int>(max_d), true};
}

// ---------------------------------------------------------------------------
// Thresholds

Sample threshold_sample(const ThresholdSequence& seq, uint32_t i) {
    const size_t t = seq.points.size();
    if (t == 0) throw structural_error("threshold sequence must be nonempty");
    if (i < 1 || i > t)
        throw structural_error("threshold index " + std::to_string(i) + " out of 1.." +
                               std::to_string(t));
    Sample s;
    s.reserve(t);
    for (size_t j = 1; j <= t; ++j)
        s.push_back({seq.points[j - 1], static_cast<Bit>(j >= i)});
    return s;
}

namespace {

struct TdimSearch {
    const FiniteClass& h;
    uint32_t max_t;
    std::vector<Point> seq;
    std::vector<SampleMask> thr;  // thr[i-1] = compiled i-th threshold of seq
    SampleMask prefix_zeros;      // (x_1,0)..(x_p,0)
    int best = 0;
    std::vector<Point> witness;
    uint64_t used = 0;

    void dfs() {
        if (static_cast<int>(seq.size()) > best) {
            best = static_cast<int>(seq.size());
            witness = seq;
        }
        if (seq.size() == max_t) return;
        for (Point x = 0; x < h.domain_size(); ++x) {
            if (used & (1ull << x)) continue;
            const uint64_t bit = 1ull << x;
            // Appending x adds (x,1) to every existing threshold and one new
            // threshold with zeros on the current prefix. All must stay
            // realizable; thresholds of extensions only get stronger, so
            // pruning here is sound.
            bool ok = true;
            for (const SampleMask& m : thr)
                if (!kernels::any_match(h.words(), m.mask | bit, m.want | bit)) {
                    ok = false;
                    break;
                }
            const SampleMask fresh{prefix_zeros.mask | bit, prefix_zeros.want | bit};
            ok = ok && kernels::any_match(h.words(), fresh.mask, fresh.want);
            if (!ok) continue;

            const SampleMask saved_zeros = prefix_zeros;
            std::vector<SampleMask> saved_thr = thr;
            for (SampleMask& m : thr) {
                m.mask |= bit;
                m.want |= bit;
            }
            thr.push_back(fresh);
            prefix_zeros.mask |= bit;
            seq.push_back(x);
            used |= bit;

            dfs();

            used &= ~bit;
            seq.pop_back();
            prefix_zeros = saved_zeros;
            thr = std::move(saved_thr);
            if (static_cast<uint32_t>(best) == max_t) return;
        }
    }
};

}  // namespace

TdimResult tdim(const FiniteClass& h, uint32_t max_t) {
    if (h.empty() || max_t == 0) return {0, false, {}};
    TdimSearch search{h, std::min(max_t, h.domain_size())};
    search.dfs();
    TdimResult r{search.best, false, std::move(search.witness)};
    // With distinct points a witness can never be longer than the domain, so
    // hitting max_t only leaves the answer open below that structural cap.
    r.out_of_budget = (static_cast<uint32_t>(r.value) == max_t && max_t < h.domain_size());
    return r;
}

// ---------------------------------------------------------------------------
// Brute-force oracles

namespace {

// First leaf (lexicographic address order) whose path sample is not
// realizable; nullopt when all leaves are realizable. Walks edges 0-first
// with an incremental constraint, so a dead prefix yields its leftmost leaf.
std::optional<LeafAddress> first_dead_leaf(const FiniteClass& h, const LittlestoneTree& t) {
    struct Frame {
        uint32_t node;
        uint32_t level;
        uint32_t path;
        PathConstraint c;
        bool dead;
    };
    std::vector<Frame> stack;
    stack.push_back({0, 0, 0, {}, false});
    while (!stack.empty()) {
        Frame f = stack.back();
        stack.pop_back();
        if (f.level == t.depth) {
            if (f.dead) return LeafAddress{t.depth, f.path};
            continue;
        }
        const Point x = t.labels[f.node];
        if (x >= h.domain_size())
            throw domain_error("tree label " + std::to_string(x) + " outside domain of size " +
                               std::to_string(h.domain_size()));
        const uint64_t bit = 1ull << x;
        for (int b = 1; b >= 0; --b) {  // push 1-edge first so 0-edge pops first
            Frame child = f;
            child.node = 2 * f.node + 1 + static_cast<uint32_t>(b);
            child.level = f.level + 1;
            child.path = (f.path << 1) | static_cast<uint32_t>(b);
            if (!child.dead) {
                const uint64_t val = static_cast<uint64_t>(b) << x;
                if ((child.c.mask & bit) && (child.c.want & bit) != val) {
                    child.dead = true;  // contradictory path sample
                } else {
                    child.c.mask |= bit;
                    child.c.want |= val;
                    child.dead = !kernels::any_match(h.words(), child.c.mask, child.c.want);
                }
            }
            stack.push_back(child);
        }
    }
    return std::nullopt;
}

}  // namespace

LeafOracle brute_leaf_oracle(const FiniteClass& h, uint32_t depth) {
    if (depth == 0) throw config_error("leaf oracle depth must be >= 1");
    FiniteClass cls = h;
    return LeafOracle{
        depth, "brute_leaf",
        [cls, depth](const LittlestoneTree& t) -> LeafAddress {
            t.validate();
            if (t.depth != depth)
                throw structural_error("oracle for depth " + std::to_string(depth) +
                                       " got a tree of depth " + std::to_string(t.depth));
            if (auto leaf = first_dead_leaf(cls, t)) return *leaf;
            throw oracle_fault("every leaf of the tree is realizable (oracle depth <= ldim)",
                               {{"tree", t.to_json()}});
        }};
}

ThresholdOracle brute_threshold_oracle(const FiniteClass& h, uint32_t arity) {
    if (arity == 0) throw config_error("threshold oracle arity must be >= 1");
    FiniteClass cls = h;
    return ThresholdOracle{
        arity, "brute_threshold",
        [cls, arity](const ThresholdSequence& seq) -> uint32_t {
            if (seq.points.size() != arity)
                throw structural_error("oracle of arity " + std::to_string(arity) +
                                       " got a sequence of length " +
                                       std::to_string(seq.points.size()));
            for (uint32_t i = 1; i <= arity; ++i)
                if (!realizable(cls, threshold_sample(seq, i))) return i;
            nlohmann::json pts = nlohmann::json::array();
            for (Point p : seq.points) pts.push_back(p);
            throw oracle_fault("every threshold on the sequence is realizable (arity <= tdim)",
                               {{"sequence", pts}});
        }};
}

}  // namespace llab

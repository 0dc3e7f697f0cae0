#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include <json.hpp>

#include "llab/hypothesis.hpp"

namespace llab {

// Complete labeled binary tree. Nodes are stored in breadth-first order,
// node i has children 2i+1 (0-edge) and 2i+2 (1-edge); indices past the
// internal count are the leaves. Labels may repeat anywhere, including
// along a path (such paths carry self-contradictory samples).
struct LittlestoneTree {
    uint32_t depth = 0;           // >= 1
    std::vector<Point> labels;    // 2^depth - 1 entries, BFS order

    uint32_t num_internal() const { return (1u << depth) - 1; }
    uint32_t num_leaves() const { return 1u << depth; }
    void validate() const;

    nlohmann::json to_json() const;  // recursive {"label", "zero", "one"} form
    static LittlestoneTree from_json(const nlohmann::json& j);
};

// Root-to-leaf edge labels. Stored so that numeric order of `path` equals
// lexicographic order of the bit string: bit(level 0) is the most
// significant bit.
struct LeafAddress {
    uint32_t depth = 0;
    uint32_t path = 0;

    Bit bit(uint32_t level) const {
        return static_cast<Bit>((path >> (depth - 1 - level)) & 1);
    }
    std::string to_string() const;
    static LeafAddress from_string(const std::string& s);

    bool operator==(const LeafAddress&) const = default;
};

// The sample written along the root->leaf path, root-first.
Sample leaf_sample(const LittlestoneTree& t, const LeafAddress& a);

// Streams every depth-`depth` tree with internal labels drawn from `labels`,
// exactly once, in lexicographic order of the BFS label tuple.
class TreeStream {
  public:
    TreeStream(uint32_t depth, std::vector<Point> labels);

    // Fills `out` (reusing its buffer) and returns true, or returns false
    // once the stream is exhausted.
    bool next(LittlestoneTree& out);
    void reset();

  private:
    uint32_t depth_;
    std::vector<Point> labels_;  // sorted, unique
    std::vector<uint32_t> idx_;
    bool started_ = false;
    bool done_ = false;
};

// |labels|^(2^depth - 1), or nullopt on uint64 overflow.
std::optional<uint64_t> tree_count(uint32_t depth, size_t num_labels);

// A budgeted integer result: exceeding the search budget is a value, not an
// error, so callers can reason about budgets.
struct Budgeted {
    int value = 0;
    bool out_of_budget = false;
};

// Littlestone dimension by the version-space recursion, memoized on the
// hypothesis subset. Empty class yields the -1 sentinel; ldim_nonneg clamps
// to the "minimal d >= 0" convention.
int ldim(const FiniteClass& h);
inline int ldim_nonneg(const FiniteClass& h) { return ldim(h) < 0 ? 0 : ldim(h); }

// Ground-truth route: the minimal d <= max_d such that every depth-(d+1)
// tree labeled from the class's domain has a non-realizable leaf. Decides
// the same universally quantified statement as scanning the whole
// enumerate_trees stream, but skips label assignments that already force a
// dead leaf. Shares the -1 sentinel for the empty class.
Budgeted ldim_by_trees(const FiniteClass& h, uint32_t max_d);

// Test-scale literal transcription: consumes the TreeStream tree by tree.
// Exponentially slower than ldim_by_trees; kept as the independent check
// that the pruned search decides the identical predicate.
Budgeted ldim_by_tree_stream(const FiniteClass& h, uint32_t max_d);

struct ThresholdSequence {
    std::vector<Point> points;  // length >= 1
};

// (x_1,0)..(x_{i-1},0)(x_i,1)..(x_t,1); i is 1-based.
Sample threshold_sample(const ThresholdSequence& seq, uint32_t i);

struct TdimResult {
    int value = 0;
    bool out_of_budget = false;       // value hit max_t below the domain size
    std::vector<Point> witness;       // a sequence realizing `value` thresholds
};

// Largest t <= max_t with some length-t sequence whose thresholds are all
// realizable. Searches sequences of distinct points only: a repeated point
// makes some threshold self-contradictory, so maximal witnesses are always
// distinct (tested as a lemma, not assumed).
TdimResult tdim(const FiniteClass& h, uint32_t max_t);

// A total procedure exhibiting non-realizable leaves in depth-`depth` trees.
struct LeafOracle {
    uint32_t depth = 0;  // d+1 for a class of effective dimension d
    std::string name;
    std::function<LeafAddress(const LittlestoneTree&)> answer;
};

// A total procedure exhibiting a non-realizable threshold index in 1..arity.
struct ThresholdOracle {
    uint32_t arity = 0;  // t+1
    std::string name;
    std::function<uint32_t(const ThresholdSequence&)> answer;
};

// Scans leaves in lexicographic address order, returns the first whose path
// sample is not realizable by h; throws oracle_fault if every leaf is
// realizable (the depth <= ldim(h) contract violation).
LeafOracle brute_leaf_oracle(const FiniteClass& h, uint32_t depth);

// Scans i = 1..arity, returns the first index whose threshold is not
// realizable by h; throws oracle_fault if all are realizable.
ThresholdOracle brute_threshold_oracle(const FiniteClass& h, uint32_t arity);

// Fast subset engine for classes with at most 64 members: version spaces
// are member bitmasks, restriction is one AND. Shared by the dimension
// search, the learners, and the adversaries.
class MaskLdim {
  public:
    explicit MaskLdim(const FiniteClass& h);  // config_error if |h| > 64

    const FiniteClass& base() const { return h_; }
    uint64_t all() const { return all_; }
    int count(uint64_t m) const { return __builtin_popcountll(m); }

    uint64_t restrict_members(uint64_t m, Point x, Bit b) const {
        return m & pre_[x][b & 1];
    }
    // Members of subset m consistent with s; conflicts collapse to 0.
    uint64_t consistent_members(uint64_t m, const Sample& s) const;

    int ldim(uint64_t m);  // -1 for the empty subset

  private:
    FiniteClass h_;
    uint64_t all_ = 0;
    std::vector<std::array<uint64_t, 2>> pre_;
    std::unordered_map<uint64_t, int8_t> memo_;
};

}  // namespace llab

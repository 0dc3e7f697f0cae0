#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "llab/errors.hpp"

namespace llab {

using Point = uint32_t;  // domain element x; < domain_size inside a class
using Bit = uint8_t;     // 0 or 1

// Domains are prefixes {0..N-1} with N <= 64 so a hypothesis packs into one
// word. Everything in this project is exact at that scale.
inline constexpr uint32_t kMaxDomain = 64;

struct LabeledPoint {
    Point x;
    Bit y;

    bool operator==(const LabeledPoint&) const = default;
};

// Ordered; the same Point may repeat, possibly with conflicting bits (such a
// sample is simply unrealizable by any function).
using Sample = std::vector<LabeledPoint>;

// A sample compiled to word form: f is consistent iff (f & mask) == want.
// No compiled form exists when the sample carries a conflict.
struct SampleMask {
    uint64_t mask = 0;
    uint64_t want = 0;
};

// Throws domain_error if any point is >= domain_size; nullopt on conflict.
std::optional<SampleMask> compile_sample(const Sample& s, uint32_t domain_size);

// A total bit function on {0..length-1}, bit x of `bits` = f(x).
struct Hypothesis {
    uint64_t bits = 0;
    uint32_t length = 0;

    Bit operator()(Point x) const { return static_cast<Bit>((bits >> x) & 1); }
    std::string to_string() const;  // character i = f(i)
    static Hypothesis from_string(const std::string& s);

    bool operator==(const Hypothesis&) const = default;
};

// A finite hypothesis class: deduplicated, sorted, may be empty. Structural
// equality of two classes over the same domain is vector equality.
class FiniteClass {
  public:
    FiniteClass() = default;
    FiniteClass(uint32_t domain_size, std::vector<uint64_t> hypotheses);

    uint32_t domain_size() const { return domain_size_; }
    size_t size() const { return hyps_.size(); }
    bool empty() const { return hyps_.empty(); }
    std::span<const uint64_t> words() const { return hyps_; }
    Hypothesis hypothesis(size_t i) const { return {hyps_[i], domain_size_}; }

    bool operator==(const FiniteClass&) const = default;

    // The full class of all 2^n functions on {0..n-1}.
    static FiniteClass full(uint32_t domain_size);

    nlohmann::json to_json() const;
    static FiniteClass from_json(const nlohmann::json& j);

  private:
    uint32_t domain_size_ = 0;
    std::vector<uint64_t> hyps_;  // sorted, unique, all < 2^domain_size_
};

// The set of all total bit functions consistent with the inducing sample.
struct Cylinder {
    Sample sample;
};

// 1 iff f(x) = y for every pair of s. Throws domain_error on points >= |f|.
Bit consistent(const Hypothesis& f, const Sample& s);

// 1 iff some member of h is consistent with s. The empty class realizes
// nothing, including the empty sample.
Bit realizable(const FiniteClass& h, const Sample& s);

// { f in h : f(x) = b }, same domain.
FiniteClass restrict_class(const FiniteClass& h, Point x, Bit b);

// 1 iff some length-domain_size function is consistent with c.sample.
Bit cylinder_nonempty_within(const Cylinder& c, uint32_t domain_size);

nlohmann::json sample_to_json(const Sample& s);
Sample sample_from_json(const nlohmann::json& j);

}  // namespace llab

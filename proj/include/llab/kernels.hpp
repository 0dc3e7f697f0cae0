#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>

namespace llab::kernels {

// Inner loops over packed hypothesis words. A hypothesis over a domain
// prefix of size n <= 64 is one uint64_t with bit x = f(x); a class is a
// sorted array of such words. Every operation below answers a question of
// the form "(h & mask) == want" across the array:
//
//   count_match   how many hypotheses are consistent with a sample
//   any_match     is a sample realizable
//   filter_match  restrict / version-space computation
//   member_mask   bit i set iff hypothesis i is consistent (n <= 64 members)
//
// Scalar versions are the reference semantics; the AVX2 versions must be
// bit-identical and are selected at runtime (see active_isa / set_isa).

enum class Isa { scalar, avx2 };

// Picks AVX2 when the CPU supports it, unless the LLAB_KERNELS environment
// variable ("scalar" or "avx2") overrides the choice.
Isa active_isa();
void set_isa(Isa isa);
const char* isa_name(Isa isa);
bool avx2_supported();

size_t count_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want);
bool any_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want);

// Writes matching (resp. non-matching) hypotheses to out, preserving order.
// out may alias hyps.data(). Returns the number written.
size_t filter_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                    uint64_t* out);
size_t filter_nonmatch(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                       uint64_t* out);

// hyps.size() <= 64.
uint64_t member_mask(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want);

namespace detail {

struct Ops {
    size_t (*count_match)(std::span<const uint64_t>, uint64_t, uint64_t);
    bool (*any_match)(std::span<const uint64_t>, uint64_t, uint64_t);
    size_t (*filter_match)(std::span<const uint64_t>, uint64_t, uint64_t, uint64_t*);
    size_t (*filter_nonmatch)(std::span<const uint64_t>, uint64_t, uint64_t, uint64_t*);
    uint64_t (*member_mask)(std::span<const uint64_t>, uint64_t, uint64_t);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // valid only when avx2_supported()

}  // namespace detail

}  // namespace llab::kernels

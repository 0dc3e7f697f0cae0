// AVX2 variants of the hypothesis-word kernels. Compiled with -mavx2 in
// its own translation unit; only reached after a runtime CPU check.

#include "llab/kernels.hpp"

#if defined(__x86_64__)

#include <immintrin.h>

namespace llab::kernels::detail {

namespace {

// Four hypotheses per vector; equality compare then movemask. The masks
// come out with 8 bits per 64-bit lane, so divide popcounts by 8.

inline uint32_t match_bits4(const uint64_t* p, __m256i vmask, __m256i vwant) {
    __m256i h = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
    __m256i eq = _mm256_cmpeq_epi64(_mm256_and_si256(h, vmask), vwant);
    return static_cast<uint32_t>(_mm256_movemask_epi8(eq));
}

size_t count_match_avx2(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vwant = _mm256_set1_epi64x(static_cast<long long>(want));
    size_t i = 0, n = 0;
    for (; i + 4 <= hyps.size(); i += 4)
        n += static_cast<size_t>(__builtin_popcount(match_bits4(hyps.data() + i, vmask, vwant))) / 8;
    for (; i < hyps.size(); ++i) n += ((hyps[i] & mask) == want);
    return n;
}

bool any_match_avx2(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vwant = _mm256_set1_epi64x(static_cast<long long>(want));
    size_t i = 0;
    for (; i + 4 <= hyps.size(); i += 4)
        if (match_bits4(hyps.data() + i, vmask, vwant)) return true;
    for (; i < hyps.size(); ++i)
        if ((hyps[i] & mask) == want) return true;
    return false;
}

size_t filter_match_avx2(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                         uint64_t* out) {
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vwant = _mm256_set1_epi64x(static_cast<long long>(want));
    size_t i = 0, n = 0;
    for (; i + 4 <= hyps.size(); i += 4) {
        uint32_t bits = match_bits4(hyps.data() + i, vmask, vwant);
        if (!bits) continue;
        for (size_t lane = 0; lane < 4; ++lane)
            if (bits & (1u << (lane * 8))) out[n++] = hyps[i + lane];
    }
    for (; i < hyps.size(); ++i)
        if ((hyps[i] & mask) == want) out[n++] = hyps[i];
    return n;
}

size_t filter_nonmatch_avx2(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                            uint64_t* out) {
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vwant = _mm256_set1_epi64x(static_cast<long long>(want));
    size_t i = 0, n = 0;
    for (; i + 4 <= hyps.size(); i += 4) {
        uint32_t bits = ~match_bits4(hyps.data() + i, vmask, vwant);
        for (size_t lane = 0; lane < 4; ++lane)
            if (bits & (1u << (lane * 8))) out[n++] = hyps[i + lane];
    }
    for (; i < hyps.size(); ++i)
        if ((hyps[i] & mask) != want) out[n++] = hyps[i];
    return n;
}

uint64_t member_mask_avx2(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    const __m256i vmask = _mm256_set1_epi64x(static_cast<long long>(mask));
    const __m256i vwant = _mm256_set1_epi64x(static_cast<long long>(want));
    uint64_t m = 0;
    size_t i = 0;
    for (; i + 4 <= hyps.size(); i += 4) {
        uint32_t bits = match_bits4(hyps.data() + i, vmask, vwant);
        uint64_t lanes = _pext_u64(bits, 0x01010101u);
        m |= lanes << i;
    }
    for (; i < hyps.size(); ++i)
        m |= static_cast<uint64_t>((hyps[i] & mask) == want) << i;
    return m;
}

}  // namespace

const Ops& avx2_ops() {
    static const Ops ops{count_match_avx2, any_match_avx2, filter_match_avx2,
                         filter_nonmatch_avx2, member_mask_avx2};
    return ops;
}

}  // namespace llab::kernels::detail

#else

namespace llab::kernels::detail {

const Ops& avx2_ops() { return scalar_ops(); }

}  // namespace llab::kernels::detail

#endif

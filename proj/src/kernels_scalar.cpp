#include "llab/kernels.hpp"

namespace llab::kernels::detail {

namespace {

size_t count_match_scalar(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    size_t n = 0;
    for (uint64_t h : hyps) n += ((h & mask) == want);
    return n;
}

bool any_match_scalar(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    for (uint64_t h : hyps)
        if ((h & mask) == want) return true;
    return false;
}

size_t filter_match_scalar(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                           uint64_t* out) {
    size_t n = 0;
    for (uint64_t h : hyps)
        if ((h & mask) == want) out[n++] = h;
    return n;
}

size_t filter_nonmatch_scalar(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                              uint64_t* out) {
    size_t n = 0;
    for (uint64_t h : hyps)
        if ((h & mask) != want) out[n++] = h;
    return n;
}

uint64_t member_mask_scalar(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    uint64_t m = 0;
    for (size_t i = 0; i < hyps.size(); ++i)
        m |= static_cast<uint64_t>((hyps[i] & mask) == want) << i;
    return m;
}

}  // namespace

const Ops& scalar_ops() {
    static const Ops ops{count_match_scalar, any_match_scalar, filter_match_scalar,
                         filter_nonmatch_scalar, member_mask_scalar};
    return ops;
}

}  // namespace llab::kernels::detail

#include "llab/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace llab::kernels {

bool avx2_supported() {
#if defined(__x86_64__)
    // member_mask uses pext, so require BMI2 alongside AVX2.
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("bmi2");
#else
    return false;
#endif
}

namespace {

Isa pick_default() {
    if (const char* env = std::getenv("LLAB_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return Isa::scalar;
        if (std::strcmp(env, "avx2") == 0 && avx2_supported()) return Isa::avx2;
        return Isa::scalar;
    }
    return avx2_supported() ? Isa::avx2 : Isa::scalar;
}

Isa g_isa = pick_default();

const detail::Ops& ops() {
    return g_isa == Isa::avx2 ? detail::avx2_ops() : detail::scalar_ops();
}

}  // namespace

Isa active_isa() { return g_isa; }

void set_isa(Isa isa) {
    g_isa = (isa == Isa::avx2 && avx2_supported()) ? Isa::avx2 : Isa::scalar;
}

const char* isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

size_t count_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    return ops().count_match(hyps, mask, want);
}

bool any_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    return ops().any_match(hyps, mask, want);
}

size_t filter_match(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                    uint64_t* out) {
    return ops().filter_match(hyps, mask, want, out);
}

size_t filter_nonmatch(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want,
                       uint64_t* out) {
    return ops().filter_nonmatch(hyps, mask, want, out);
}

uint64_t member_mask(std::span<const uint64_t> hyps, uint64_t mask, uint64_t want) {
    return ops().member_mask(hyps, mask, want);
}

}  // namespace llab::kernels

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <vector>

#include "llab/kernels.hpp"
#include "llab/rng.hpp"

using namespace llab;

TEST_CASE("scalar kernels: reference semantics") {
    const std::vector<uint64_t> hyps{0b000, 0b010, 0b011, 0b111};
    // mask selects bit 1, want expects it set
    CHECK(kernels::detail::scalar_ops().count_match(hyps, 0b010, 0b010) == 3);
    CHECK(kernels::detail::scalar_ops().any_match(hyps, 0b100, 0b100));
    CHECK_FALSE(kernels::detail::scalar_ops().any_match(hyps, 0b101, 0b100));

    std::vector<uint64_t> out(hyps.size());
    size_t n = kernels::detail::scalar_ops().filter_match(hyps, 0b010, 0b010, out.data());
    REQUIRE(n == 3);
    CHECK(out[0] == 0b010);
    CHECK(out[2] == 0b111);

    n = kernels::detail::scalar_ops().filter_nonmatch(hyps, 0b010, 0b010, out.data());
    REQUIRE(n == 1);
    CHECK(out[0] == 0b000);

    CHECK(kernels::detail::scalar_ops().member_mask(hyps, 0b001, 0b001) == 0b1100);
}

TEST_CASE("filter_match may write in place") {
    std::vector<uint64_t> hyps{1, 2, 3, 4, 5, 6, 7, 8};
    const size_t n = kernels::filter_match(hyps, 1, 1, hyps.data());
    hyps.resize(n);
    CHECK(hyps == std::vector<uint64_t>{1, 3, 5, 7});
}

TEST_CASE("avx2 kernels match scalar on random inputs") {
    if (!kernels::avx2_supported()) {
        MESSAGE("AVX2 not available; dispatch stays scalar");
        CHECK(kernels::active_isa() == kernels::Isa::scalar);
        return;
    }
    const auto& scalar = kernels::detail::scalar_ops();
    const auto& avx2 = kernels::detail::avx2_ops();
    Rng rng(42);
    for (int trial = 0; trial < 500; ++trial) {
        const size_t len = rng.below(64);
        std::vector<uint64_t> hyps(len);
        for (uint64_t& h : hyps) h = rng.next() & 0xffff;
        const uint64_t mask = rng.next() & 0xffff;
        const uint64_t want = rng.next() & mask;

        CHECK(scalar.count_match(hyps, mask, want) == avx2.count_match(hyps, mask, want));
        CHECK(scalar.any_match(hyps, mask, want) == avx2.any_match(hyps, mask, want));

        std::vector<uint64_t> a(len), b(len);
        const size_t na = scalar.filter_match(hyps, mask, want, a.data());
        const size_t nb = avx2.filter_match(hyps, mask, want, b.data());
        REQUIRE(na == nb);
        a.resize(na);
        b.resize(nb);
        CHECK(a == b);

        a.resize(len);
        b.resize(len);
        const size_t ma = scalar.filter_nonmatch(hyps, mask, want, a.data());
        const size_t mb = avx2.filter_nonmatch(hyps, mask, want, b.data());
        REQUIRE(ma == mb);
        a.resize(ma);
        b.resize(mb);
        CHECK(a == b);

        CHECK(scalar.member_mask(hyps, mask, want) == avx2.member_mask(hyps, mask, want));
    }
}

TEST_CASE("runtime isa selection") {
    const kernels::Isa original = kernels::active_isa();
    kernels::set_isa(kernels::Isa::scalar);
    CHECK(kernels::active_isa() == kernels::Isa::scalar);
    kernels::set_isa(kernels::Isa::avx2);
    if (kernels::avx2_supported())
        CHECK(kernels::active_isa() == kernels::Isa::avx2);
    else
        CHECK(kernels::active_isa() == kernels::Isa::scalar);
    kernels::set_isa(original);
}

#include <gtest/gtest.h>

#include "gt/designs.hpp"
#include "gt/errors.hpp"
#include "gt/verify.hpp"
#include "support/naive_verify.hpp"
#include "support/reference.hpp"

using namespace gt;
using namespace gt::designs;

namespace {

std::size_t max_column_intersection(const Design& D) { return naive::max_pairwise_intersection(D); }

}  // namespace

TEST(DefaultZ, ClosedForm)
{
    // d = p = 1, s = t: z = 1 - e^{-2t}
    EXPECT_NEAR(default_z(4, 1, 1, 4), 0.999664537372097, 1e-12);
    for (auto [t, d, p, s] : {std::array<std::size_t, 4>{12, 1, 1, 6}, {40, 2, 1, 9}, {100, 3, 2, 20}}) {
        const auto want = ref::default_z(t, d, p, s);
        EXPECT_LT(ref::rel_err(default_z(t, d, p, s), want), 1e-13);
    }
    EXPECT_THROW(default_z(0, 1, 1, 1), DomainError);
    EXPECT_THROW(default_z(4, 0, 1, 1), DomainError);
}

TEST(DrawMatrix, Reproducible)
{
    const auto a = draw_matrix(10, 7, 0.5, 99, 3);
    EXPECT_EQ(a, draw_matrix(10, 7, 0.5, 99, 3));
    EXPECT_NE(a, draw_matrix(10, 7, 0.5, 99, 4));
    EXPECT_NE(a, draw_matrix(10, 7, 0.5, 100, 3));
    EXPECT_EQ(a.t(), 10u);
    EXPECT_EQ(a.n(), 7u);
}

TEST(DrawMatrix, DensityFollowsZ)
{
    const auto D = draw_matrix(200, 200, 0.3, 5, 0);
    std::size_t ones = 0;
    for (std::size_t j = 0; j < D.n(); ++j)
        ones += D.column(j).count();
    const double frac = static_cast<double>(ones) / 40000.0;
    EXPECT_NEAR(frac, 0.7, 0.02);
}

TEST(DrawMatrix, ColumnsAreStreamPrefixes)
{
    // widening n keeps earlier columns: entry (i, j) depends only on j*t + i
    const auto small = draw_matrix(6, 3, 0.5, 11, 0);
    const auto big = draw_matrix(6, 9, 0.5, 11, 0);
    for (std::size_t j = 0; j < 3; ++j)
        EXPECT_EQ(small.column(j), big.column(j));
}

TEST(Sample, SingleColumn)
{
    SamplerConfig cfg;
    cfg.t = 3;
    cfg.n = 1;
    cfg.s = 3;
    cfg.z = 0.5;
    cfg.max_attempts = 20;
    cfg.seed = 2;
    const auto r = sample_design(cfg);
    EXPECT_EQ(r.design.n(), 1u);
    EXPECT_GT(r.design.column(0).count(), 0u);
    ASSERT_TRUE(r.design.meta());
}

TEST(Sample, DefaultZIsDegenerateAtSmallT)
{
    // z = 1 - e^{-16} leaves essentially all-zero columns, which never cover-free verify
    SamplerConfig cfg;
    cfg.t = 8;
    cfg.n = 5;
    cfg.s = 4;
    cfg.seed = 1;
    cfg.max_attempts = 10;
    try {
        sample_design(cfg);
        FAIL() << "expected SamplingError";
    } catch (const SamplingError& e) {
        EXPECT_EQ(e.attempt_log().size(), 10u);
    }
}

TEST(Sample, TunedZVerifies)
{
    SamplerConfig cfg;
    cfg.t = 8;
    cfg.n = 5;
    cfg.s = 4;
    cfg.seed = 1;
    cfg.z = 0.75;
    cfg.max_attempts = 200;
    const auto r = sample_design(cfg);
    EXPECT_LE(r.attempts, 200u);
    EXPECT_TRUE(naive::union_bounded(r.design, 1, 4));
    EXPECT_TRUE(naive::cover_free(r.design, 1));
    const auto again = sample_design(cfg);
    EXPECT_EQ(again.design, r.design);
    EXPECT_EQ(again.attempts, r.attempts);
}

TEST(Sample, AllReturnedDesignsVerifyNaively)
{
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        SamplerConfig cfg;
        cfg.t = 10;
        cfg.n = 6;
        cfg.d = 2;
        cfg.s = 6;
        cfg.seed = seed;
        cfg.z = 0.7;
        cfg.max_attempts = 500;
        SampleResult r{Design::identity(1), 0, 0, {}};
        try {
            r = sample_design(cfg);
        } catch (const SamplingError&) {
            continue;
        }
        EXPECT_TRUE(naive::union_bounded(r.design, 2, 6)) << seed;
        EXPECT_TRUE(naive::pd_cover_free(r.design, 1, 2)) << seed;
    }
}

TEST(Sample, Validation)
{
    SamplerConfig cfg;
    cfg.t = 4;
    cfg.n = 3;
    cfg.s = 5;
    EXPECT_THROW(sample_design(cfg), DomainError);
    cfg.s = 2;
    cfg.z = 1.0;
    EXPECT_THROW(sample_design(cfg), DomainError);
    cfg.z = 0.5;
    cfg.max_attempts = 0;
    EXPECT_THROW(sample_design(cfg), DomainError);
    cfg.max_attempts = 1;
    cfg.d = 0;
    EXPECT_THROW(sample_design(cfg), DomainError);
}

TEST(CodeToDesign, HandReduction)
{
    const auto code = gf::construct_code_with_distance(4, 2, 1, 1);
    const auto D = code_to_design(code);
    EXPECT_EQ(D.t(), 8u);
    EXPECT_EQ(D.n(), 4u);
    // codeword a*(1,0) = (a, 0): column a holds pools a and 4
    for (std::size_t a = 0; a < 4; ++a) {
        EXPECT_EQ(D.column(a).count(), 2u);
        EXPECT_TRUE(D.entry(reduction_index(0, a, 4), a));
        EXPECT_TRUE(D.entry(reduction_index(1, 0, 4), a));
    }
    EXPECT_EQ(max_column_intersection(D), 1u);
}

TEST(Explicit, DefaultK)
{
    EXPECT_EQ(explicit_default_k(1, 4, 2, 1 << 16), 1u);
    EXPECT_EQ(explicit_default_k(2, 7, 6, 1 << 16), 2u);
    EXPECT_EQ(explicit_default_k(2, 7, 6, 10), 1u);
    EXPECT_EQ(explicit_default_k(5, 4, 2, 1 << 16), 1u);
}

TEST(Explicit, DOneQFourMTwo)
{
    const auto r = build_explicit(1, 4, 2);
    EXPECT_EQ(r.code.generator, (gf::Generator{{1, 0}}));
    EXPECT_EQ(r.design.t(), 8u);
    EXPECT_EQ(r.design.n(), 4u);
    EXPECT_EQ(r.distance_target, 1u);
    EXPECT_EQ(r.lambda, 1u);
    EXPECT_EQ(max_column_intersection(r.design), 1u);
    EXPECT_TRUE(naive::cover_free(r.design, 1));
    EXPECT_TRUE(naive::union_bounded(r.design, 1, 2));
    ASSERT_TRUE(r.design.meta());
    EXPECT_EQ(r.design.meta()->s, 2u);
}

TEST(Explicit, DTwoQSevenMSix)
{
    const auto r = build_explicit(2, 7, 6);
    EXPECT_EQ(r.design.t(), 42u);
    EXPECT_EQ(r.design.n(), 49u);
    EXPECT_EQ(r.distance_target, 4u);
    EXPECT_EQ(r.lambda, 2u);
    for (std::size_t j = 0; j < r.design.n(); ++j)
        EXPECT_EQ(r.design.column(j).count(), 6u);
    EXPECT_TRUE(verify::is_cover_free(r.design, 2).holds);
    EXPECT_TRUE(verify::is_union_bounded(r.design, 2, 12).holds);
    EXPECT_TRUE(verify::pairwise_intersection_at_most(r.design, 2).holds);

    // union of two columns: 12 - intersection, so in [10, 12] = [s - lambda, s]
    const auto [lo, hi] = union_weight_range(r.design, 2);
    EXPECT_GE(lo, 10u);
    EXPECT_LE(hi, 12u);
    EXPECT_GE(lo, 12u / 2);

    const auto floor = union_floor_check(r.design, 2, r.lambda);
    EXPECT_TRUE(floor.holds);
    EXPECT_TRUE(floor.precondition_holds);
    EXPECT_EQ(floor.work, 2u * (49 * 48 / 2));  // pairs, then 2-subsets
}

TEST(Explicit, Errors)
{
    EXPECT_THROW(build_explicit(2, 5, 6), DomainError);  // q < 2d + 2
    EXPECT_THROW(build_explicit(0, 7, 6), DomainError);
    EXPECT_THROW(build_explicit(1, 4, 0), DomainError);
    EXPECT_THROW(build_explicit(1, 6, 2), DomainError);  // not a prime power
}

TEST(Explicit, ExplicitKThatCannotReachDistance)
{
    // [2, 2]_8 codes have distance at most 1 < ceil(2*2/3) = 2
    EXPECT_THROW(build_explicit(2, 8, 2, 2), ConstructionError);
}

TEST(UnionFloor, IdentityIsExact)
{
    const auto I = Design::identity(6);
    const auto r = union_floor_check(I, 3, 0);
    EXPECT_TRUE(r.holds);
    const auto [lo, hi] = union_weight_range(I, 3);
    EXPECT_EQ(lo, 3u);
    EXPECT_EQ(hi, 3u);
}

TEST(UnionFloor, SingleMemberIsItsWeight)
{
    const auto r = build_explicit(1, 4, 2);
    EXPECT_TRUE(union_floor_check(r.design, 1, r.lambda).holds);
    const auto [lo, hi] = union_weight_range(r.design, 1);
    EXPECT_EQ(lo, 2u);
    EXPECT_EQ(hi, 2u);
}

TEST(UnionFloor, PreconditionFailureNamesPair)
{
    const auto D = Design::from_column_strings({"1100", "1110", "0001"});
    const auto r = union_floor_check(D, 2, 1);
    EXPECT_FALSE(r.holds);
    EXPECT_FALSE(r.precondition_holds);
    ASSERT_TRUE(r.bad_pair);
    EXPECT_EQ(*r.bad_pair, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(UnionFloor, WorkCap)
{
    verify::VerifyOptions o;
    o.work_cap = 10;
    EXPECT_THROW(union_floor_check(Design::identity(30), 3, 0, o), WorkCapExceeded);
    o.allow_sampling = true;
    o.samples = 50;
    const auto r = union_floor_check(Design::identity(30), 3, 0, o);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(r.status, verify::Status::probable);
}

#include <gtest/gtest.h>

#include "gt/designs.hpp"
#include "gt/errors.hpp"
#include "gt/pipeline.hpp"
#include "gt/rng.hpp"
#include "gt/verify.hpp"

using namespace gt;
using namespace gt::pipeline;

namespace {

ResponseVector resp(const std::string& s) { return ResponseVector{BitVec::from_string(s)}; }

}  // namespace

TEST(DecodeCover, Examples)
{
    const auto I = Design::identity(3);
    EXPECT_EQ(decode_cover(I, resp("010")), (std::vector<std::size_t>{1}));
    EXPECT_TRUE(decode_cover(I, resp("000")).empty());
    // a zero column is covered by everything
    const auto Z = Design::from_column_strings({"100", "000"});
    EXPECT_EQ(decode_cover(Z, resp("000")), (std::vector<std::size_t>{1}));
    EXPECT_THROW(decode_cover(I, resp("01")), DomainError);
}

TEST(DecodeSeparable, Examples)
{
    EXPECT_EQ(decode_separable(Design::identity(3), resp("101"), 2), (DefectiveSet{0, 2}));
    EXPECT_EQ(decode_separable(Design::from_column_strings({"110", "011"}), resp("111"), 2), (DefectiveSet{0, 1}));
    EXPECT_TRUE(decode_separable(Design::identity(3), resp("000"), 2).empty());
}

TEST(DecodeSeparable, Errors)
{
    const auto I = Design::identity(3);
    EXPECT_THROW(decode_separable(I, resp("111"), 2), InconsistentResponse);
    EXPECT_THROW(decode_separable(I, resp("1111"), 2), DomainError);

    const auto D = Design::from_column_strings({"100", "010", "110"});
    try {
        decode_separable(D, resp("110"), 2);
        FAIL() << "expected NotSeparable";
    } catch (const NotSeparable& e) {
        EXPECT_NE(e.first(), e.second());
        const auto a = respond(D, DefectiveSet(e.first())), b = respond(D, DefectiveSet(e.second()));
        EXPECT_EQ(a.bits, b.bits);
    }
    EXPECT_THROW(decode_separable(Design::identity(60), resp(std::string(60, '0')), 4, 1000), WorkCapExceeded);
}

TEST(Decode, CoverFreeDesignsRecoverExactly)
{
    const auto ex = designs::build_explicit(2, 7, 6);
    const auto& D = ex.design;
    std::size_t checked = 0;
    for (std::size_t a = 0; a < D.n(); ++a)
        for (std::size_t b = a; b < D.n(); ++b) {
            const DefectiveSet S = a == b ? DefectiveSet{a} : DefectiveSet{a, b};
            const auto r = respond(D, S);
            EXPECT_EQ(decode_cover(D, r), S.members());
            EXPECT_EQ(decode_separable(D, r, 2), S);
            ++checked;
        }
    EXPECT_EQ(checked, 49u * 50 / 2);
}

TEST(Decode, CoverNeverDropsDefectives)
{
    SplitMix64 rng(31);
    for (int it = 0; it < 300; ++it) {
        const std::size_t t = 1 + rng.below(10), n = 1 + rng.below(12);
        std::vector<BitVec> cols(n, BitVec(t));
        for (auto& c : cols)
            for (std::size_t i = 0; i < t; ++i)
                if (rng() & 1)
                    c.set(i);
        const Design D(t, std::move(cols));
        std::vector<std::size_t> hidden;
        for (std::size_t j = 0; j < n; ++j)
            if (rng.below(4) == 0)
                hidden.push_back(j);
        const auto cand = decode_cover(D, respond(D, DefectiveSet(hidden)));
        for (auto h : hidden)
            EXPECT_TRUE(std::binary_search(cand.begin(), cand.end(), h));
    }
}

TEST(Certify, RefusesUnverifiedDesigns)
{
    const auto D = Design::from_column_strings({"100", "010", "110"});
    EXPECT_THROW(certify(D, 1, 2, 3), DomainError);
    EXPECT_THROW(certify(Design::identity(4), 1, 2, 1), DomainError);
    const auto c = certify(Design::identity(4), 1, 2, 2);
    EXPECT_EQ(c.d(), 2u);
    EXPECT_EQ(c.s(), 2u);
    EXPECT_TRUE(c.report().holds);
}

TEST(TwoStage, EmptyHidden)
{
    const auto c = certify(Design::identity(5), 1, 2, 2);
    adaptive::OracleSession s(5, {});
    const auto out = run_two_stage(c, s);
    EXPECT_TRUE(out.candidates.empty());
    EXPECT_TRUE(out.confirmed.empty());
    EXPECT_EQ(out.total_tests, 5u);
    EXPECT_EQ(out.total_yeses(), 0u);
}

TEST(TwoStage, SizeMismatch)
{
    const auto c = certify(Design::identity(5), 1, 2, 2);
    adaptive::OracleSession s(6, {});
    EXPECT_THROW(run_two_stage(c, s), DomainError);
}

TEST(TwoStage, IdentityCounts)
{
    const auto c = certify(Design::identity(6), 1, 2, 2);
    adaptive::OracleSession s(6, DefectiveSet{1, 4});
    const auto out = run_two_stage(c, s);
    EXPECT_EQ(out.confirmed, (DefectiveSet{1, 4}));
    EXPECT_EQ(out.stage1_yeses, 2u);
    EXPECT_EQ(out.stage2_yeses, 2u);
    EXPECT_EQ(out.total_tests, 8u);
}

TEST(TwoStage, ExplicitDesignExhaustive)
{
    const auto ex = designs::build_explicit(2, 7, 6);
    const auto c = certify(ex.design, 1, 2, 12);
    const auto sum = measure_two_stage(c, 2);
    EXPECT_EQ(sum.runs, 1u + 49 + 49 * 48 / 2);
    EXPECT_TRUE(sum.all_correct);
    EXPECT_LE(sum.max_candidates, 2u);    // p + d - 1
    EXPECT_LE(sum.max_stage1_yeses, 12u); // s
    EXPECT_LE(sum.max_total_yeses, 14u);  // s + d
    EXPECT_LE(sum.max_tests, 42u + 2);
    EXPECT_FALSE(sum.first_failure);
}

TEST(TwoStage, PdDesignBoundsCandidates)
{
    // a (2,1)-cover-free design: candidates stay below p + d - 1 = 2
    designs::SamplerConfig cfg;
    cfg.t = 12;
    cfg.n = 6;
    cfg.d = 1;
    cfg.p = 2;
    cfg.s = 8;
    cfg.z = 0.6;
    cfg.seed = 4;
    cfg.max_attempts = 500;
    const auto sample = designs::sample_design(cfg);
    const auto c = certify(sample.design, 2, 1, 8);
    const auto sum = measure_two_stage(c, 1);
    EXPECT_TRUE(sum.all_correct);
    EXPECT_LE(sum.max_candidates, 2u);
    EXPECT_LE(sum.max_total_yeses, 9u);
}

TEST(TwoStage, SampledModeIsDeterministic)
{
    const auto ex = designs::build_explicit(2, 7, 6);
    const auto c = certify(ex.design, 1, 2, 12);
    adaptive::MeasureMode m;
    m.exhaustive = false;
    m.trials = 200;
    m.seed = 8;
    const auto a = measure_two_stage(c, 2, m), b = measure_two_stage(c, 2, m);
    EXPECT_EQ(a.runs, 200u);
    EXPECT_EQ(a.max_total_yeses, b.max_total_yeses);
    EXPECT_EQ(a.max_candidates, b.max_candidates);
}

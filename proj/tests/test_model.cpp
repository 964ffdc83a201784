#include <gtest/gtest.h>

#include <filesystem>
#include <random>

#include "gt/errors.hpp"
#include "gt/model.hpp"
#include "gt/rng.hpp"

using namespace gt;

namespace {

Design two_cols() { return Design::from_column_strings({"110", "011"}); }

Design random_design(std::size_t t, std::size_t n, std::uint64_t seed)
{
    SplitMix64 rng(seed);
    std::vector<BitVec> cols(n, BitVec(t));
    for (auto& c : cols)
        for (std::size_t i = 0; i < t; ++i)
            if (rng() & 1)
                c.set(i);
    return Design(t, std::move(cols));
}

}  // namespace

TEST(BitVec, SetCountCover)
{
    BitVec a(130), b(130);
    a.set(0);
    a.set(129);
    b.set(129);
    EXPECT_EQ(a.count(), 2u);
    EXPECT_TRUE(a.covers(b));
    EXPECT_FALSE(b.covers(a));
    EXPECT_EQ(a.intersection_count(b), 1u);
    b |= a;
    EXPECT_EQ(a, b);
    EXPECT_EQ(BitVec::from_string(a.to_string()), a);
}

TEST(DefectiveSet, SortedAndDistinct)
{
    DefectiveSet s{4, 1, 2};
    EXPECT_EQ(s.members(), (std::vector<std::size_t>{1, 2, 4}));
    EXPECT_THROW(DefectiveSet({1, 1}), DomainError);
    EXPECT_TRUE(DefectiveSet{}.empty());
}

TEST(DefectiveSet, LabelsAreOneIndexed)
{
    const std::vector<std::size_t> lab{3, 1};
    const auto s = DefectiveSet::from_labels(lab);
    EXPECT_EQ(s.members(), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(s.labels(), (std::vector<std::size_t>{1, 3}));
    const std::vector<std::size_t> zero{0};
    EXPECT_THROW(DefectiveSet::from_labels(zero), DomainError);
}

TEST(DefectiveSet, RangeCheck)
{
    DefectiveSet s{0, 5};
    EXPECT_NO_THROW(s.check_within(6));
    EXPECT_THROW(s.check_within(5), DomainError);
}

TEST(Design, ShapeInvariants)
{
    EXPECT_THROW(Design(0, {}), DomainError);
    EXPECT_THROW(Design(3, {}), DomainError);
    EXPECT_THROW(Design(3, {BitVec(2)}), DomainError);
    const auto I = Design::identity(3);
    EXPECT_EQ(I.t(), 3u);
    EXPECT_EQ(I.n(), 3u);
    EXPECT_TRUE(I.entry(1, 1));
    EXPECT_FALSE(I.entry(0, 1));
    EXPECT_EQ(I.pool(2), (std::vector<std::size_t>{2}));
}

TEST(Design, RowsAndColumnsAgree)
{
    const auto a = Design::from_rows({"10", "11", "01"});
    EXPECT_EQ(a, two_cols());
}

TEST(Respond, IdentityEmpty)
{
    EXPECT_EQ(respond(Design::identity(3), {}).bits.to_string(), "000");
}

TEST(Respond, IdentitySingleton)
{
    EXPECT_EQ(respond(Design::identity(3), DefectiveSet{1}).bits.to_string(), "010");
}

TEST(Respond, OrOfTwoColumns)
{
    EXPECT_EQ(respond(two_cols(), DefectiveSet{0, 1}).bits.to_string(), "111");
}

TEST(Respond, OutOfRange)
{
    EXPECT_THROW(respond(Design::identity(3), DefectiveSet{3}), DomainError);
}

TEST(YesCount, Examples)
{
    EXPECT_EQ(yes_count(Design::identity(4), DefectiveSet{0, 2}), 2u);
    EXPECT_EQ(yes_count(two_cols(), DefectiveSet{0, 1}), 3u);
    EXPECT_EQ(yes_count(two_cols(), {}), 0u);
}

// monotone, OR-decomposable, popcount-consistent: all subsets of 10 items
TEST(Respond, AlgebraicProperties)
{
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto D = random_design(9, 10, seed);
        std::vector<ResponseVector> r(1u << 10);
        for (std::uint32_t m = 0; m < r.size(); ++m) {
            std::vector<std::size_t> items;
            for (std::size_t j = 0; j < 10; ++j)
                if (m >> j & 1u)
                    items.push_back(j);
            const DefectiveSet S(items);
            r[m] = respond(D, S);
            EXPECT_EQ(yes_count(D, S), r[m].weight());
            BitVec acc(9);
            for (auto j : items)
                acc |= respond(D, DefectiveSet{j}).bits;
            EXPECT_EQ(acc, r[m].bits);
        }
        for (std::uint32_t a = 0; a < r.size(); a += 7)
            for (std::uint32_t b = 0; b < r.size(); b += 5)
                if ((a & b) == a)
                    EXPECT_TRUE(r[b].bits.covers(r[a].bits));
    }
}

TEST(Transcript, Counters)
{
    Transcript tr;
    const std::vector<std::size_t> pool{0, 1};
    tr.append(pool, true);
    tr.append(pool, false);
    tr.append(pool, true);
    EXPECT_EQ(tr.tests(), 3u);
    EXPECT_EQ(tr.yeses(), 2u);
    EXPECT_EQ(tr.steps().size(), 3u);
    Transcript quiet(false);
    quiet.append(pool, true);
    EXPECT_EQ(quiet.tests(), 1u);
    EXPECT_TRUE(quiet.steps().empty());
}

TEST(DesignFormat, RoundTrip)
{
    auto D = random_design(5, 7, 9);
    D.set_meta(DesignMeta{2, 1, 4});
    const auto text = format_design(D);
    EXPECT_EQ(text.substr(0, 4), "5 7\n");
    EXPECT_NE(text.find("# d=2 p=1 s=4\n"), std::string::npos);
    EXPECT_EQ(parse_design(text), D);
}

TEST(DesignFormat, WithoutMeta)
{
    const auto D = parse_design("2 3\n101\n010\n");
    EXPECT_FALSE(D.meta());
    EXPECT_EQ(D.n(), 3u);
    EXPECT_TRUE(D.entry(0, 2));
}

TEST(DesignFormat, Rejects)
{
    EXPECT_THROW(parse_design("2 3\n101\n010"), ParseError);        // no trailing newline
    EXPECT_THROW(parse_design("2 3\n101\n0x0\n"), ParseError);      // bad character
    EXPECT_THROW(parse_design("2 3\n101\n"), ParseError);           // missing row
    EXPECT_THROW(parse_design("2 3\n1011\n010\n"), ParseError);     // long row
    EXPECT_THROW(parse_design("2 3\n101\n010\n111\n"), ParseError); // extra row
    EXPECT_THROW(parse_design("0 3\n"), ParseError);
    EXPECT_THROW(parse_design("a b\n"), ParseError);
    EXPECT_THROW(parse_design(""), ParseError);
}

TEST(DesignFormat, Files)
{
    const auto path = std::filesystem::temp_directory_path() / "gt_model_test_design.txt";
    const auto D = Design::identity(4);
    write_design_file(D, path.string());
    EXPECT_EQ(read_design_file(path.string()), D);
    std::filesystem::remove(path);
    EXPECT_THROW(read_design_file((path.string() + ".missing")), std::runtime_error);
}

#include "gt/verify.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <unordered_map>

#include "gt/combinatorics.hpp"
#include "gt/errors.hpp"
#include "gt/parallel.hpp"
#include "gt/rng.hpp"

namespace gt::verify {

namespace {

using Witness = std::vector<std::vector<std::size_t>>;

struct ScanResult {
    std::optional<Witness> witness;
    std::uint64_t work = 0;
    Status status = Status::exhaustive;
    double coverage = 1.0;
};

std::string describe_cap(const char* what, std::uint64_t total, std::uint64_t cap)
{
    return std::string(what) + ": " + std::to_string(total) + " subsets exceed the work cap " + std::to_string(cap) +
           " (enable sampling to check a random subset)";
}

/// Runs body (subset -> optional witness) over all k-subsets of [n] in colex order, or over seeded samples
/// when the count exceeds the cap and sampling is allowed.
template <typename Body>
ScanResult scan(const char* what, std::size_t n, std::size_t k, const VerifyOptions& opts, Body&& body)
{
    ScanResult out;
    const std::uint64_t total = binomial_sat(n, k);
    const std::size_t workers = opts.workers ? opts.workers : default_workers();

    if (total > opts.work_cap) {
        if (!opts.allow_sampling)
            throw WorkCapExceeded(describe_cap(what, total, opts.work_cap), static_cast<double>(total),
                                  static_cast<double>(opts.work_cap));
        SplitMix64 rng(opts.seed);
        std::vector<std::uint64_t> ranks(opts.samples);
        for (auto& r : ranks)
            r = rng.below(total);
        std::atomic<std::uint64_t> first{std::numeric_limits<std::uint64_t>::max()};
        std::vector<std::optional<Witness>> found(ranks.size());
        parallel_for(ranks.size(), workers, [&](std::size_t i) {
            if (i > first.load())
                return;
            if (auto w = body(colex_unrank(ranks[i], k))) {
                found[i] = std::move(w);
                std::uint64_t cur = first.load();
                while (i < cur && !first.compare_exchange_weak(cur, i)) {
                }
            }
        });
        const auto idx = first.load();
        if (idx != std::numeric_limits<std::uint64_t>::max()) {
            out.witness = std::move(found[idx]);
            out.work = idx + 1;
            out.status = Status::refuted;
        } else {
            out.work = ranks.size();
            out.status = Status::probable;
        }
        out.coverage = static_cast<double>(out.work) / static_cast<double>(total);
        return out;
    }

    constexpr std::uint64_t chunk = 2048;
    const std::uint64_t chunks = (total + chunk - 1) / chunk;
    std::atomic<std::uint64_t> first{std::numeric_limits<std::uint64_t>::max()};
    std::vector<std::optional<Witness>> found(chunks);
    std::vector<std::uint64_t> found_at(chunks, 0);
    parallel_for(chunks, workers, [&](std::size_t c) {
        const std::uint64_t lo = c * chunk, hi = std::min(total, lo + chunk);
        if (lo > first.load())
            return;
        auto subset = colex_unrank(lo, k);
        for (std::uint64_t r = lo; r < hi; ++r) {
            if (auto w = body(subset)) {
                found[c] = std::move(w);
                found_at[c] = r;
                std::uint64_t cur = first.load();
                while (r < cur && !first.compare_exchange_weak(cur, r)) {
                }
                return;
            }
            if (r + 1 < hi)
                next_subset(subset, n);
        }
    });
    const auto at = first.load();
    if (at != std::numeric_limits<std::uint64_t>::max()) {
        for (std::uint64_t c = 0; c < chunks; ++c)
            if (found[c] && found_at[c] == at)
                out.witness = std::move(found[c]);
        out.work = at + 1;
    } else {
        out.work = total;
    }
    return out;
}

PropertyReport finish(const char* property, ScanResult&& scan_result, Params params)
{
    PropertyReport rep;
    rep.property = property;
    rep.holds = !scan_result.witness;
    rep.witness = std::move(scan_result.witness);
    rep.work = scan_result.work;
    rep.status = scan_result.status;
    rep.coverage = scan_result.coverage;
    rep.params = params;
    return rep;
}

BitVec or_of(const Design& design, const std::vector<std::size_t>& items)
{
    return union_of(design, items);
}

bool disjoint(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b)
{
    for (auto x : a)
        if (std::find(b.begin(), b.end(), x) != b.end())
            return false;
    return true;
}

}  // namespace

std::string to_string(Status s)
{
    switch (s) {
    case Status::exhaustive:
        return "exhaustive";
    case Status::probable:
        return "probable";
    case Status::refuted:
        return "refuted";
    }
    return "?";
}

PropertyReport is_union_bounded(const Design& design, std::size_t d, std::size_t s, const VerifyOptions& opts)
{
    const std::size_t k = std::min(d, design.n());
    auto res = scan("union_bounded", design.n(), k, opts, [&](const std::vector<std::size_t>& D) -> std::optional<Witness> {
        if (or_of(design, D).count() > s)
            return Witness{D};
        return std::nullopt;
    });
    Params params;
    params.d = d;
    params.s = s;
    return finish("union_bounded", std::move(res), params);
}

PropertyReport is_cover_free(const Design& design, std::size_t d, const VerifyOptions& opts)
{
    const std::size_t n = design.n();
    const std::size_t k = std::min(d, n - 1);
    auto res = scan("cover_free", n, k, opts, [&](const std::vector<std::size_t>& Q) -> std::optional<Witness> {
        const BitVec U = or_of(design, Q);
        std::size_t qi = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (qi < Q.size() && Q[qi] == j) {
                ++qi;
                continue;
            }
            if (U.covers(design.column(j)))
                return Witness{{j}, Q};
        }
        return std::nullopt;
    });
    Params params;
    params.d = d;
    params.p = 1;
    return finish("cover_free", std::move(res), params);
}

PropertyReport is_pd_cover_free(const Design& design, std::size_t p, std::size_t d, const VerifyOptions& opts)
{
    if (p < 1)
        throw DomainError("p must be at least 1");
    Params params;
    params.d = d;
    params.p = p;
    const std::size_t n = design.n();
    if (n < p) {
        PropertyReport rep;
        rep.property = "pd_cover_free";
        rep.params = params;
        return rep;  // no p columns to cover
    }
    const std::size_t k = std::min(d, n - p);
    auto res = scan("pd_cover_free", n, k, opts, [&](const std::vector<std::size_t>& Q) -> std::optional<Witness> {
        const BitVec U = or_of(design, Q);
        // OR of p columns is covered iff each one is, so collect covered non-Q columns
        std::vector<std::size_t> covered;
        std::size_t qi = 0;
        for (std::size_t j = 0; j < n && covered.size() < p; ++j) {
            if (qi < Q.size() && Q[qi] == j) {
                ++qi;
                continue;
            }
            if (U.covers(design.column(j)))
                covered.push_back(j);
        }
        if (covered.size() >= p)
            return Witness{covered, Q};
        return std::nullopt;
    });
    return finish("pd_cover_free", std::move(res), params);
}

PropertyReport is_separable(const Design& design, std::size_t d, const VerifyOptions& opts)
{
    const std::size_t n = design.n();
    const std::size_t dmax = std::min(d, n);
    const std::uint64_t total = subsets_up_to_sat(n, dmax);
    Params params;
    params.d = d;
    PropertyReport rep;
    rep.property = "separable";
    rep.params = params;

    std::unordered_map<BitVec, std::vector<std::size_t>, BitVecHash> seen;
    auto visit = [&](const std::vector<std::size_t>& S) -> bool {
        ++rep.work;
        BitVec u = or_of(design, S);
        auto [it, inserted] = seen.try_emplace(std::move(u), S);
        if (!inserted && it->second != S) {
            rep.holds = false;
            rep.witness = Witness{it->second, S};
            return false;
        }
        return true;
    };

    if (total > opts.work_cap) {
        if (!opts.allow_sampling)
            throw WorkCapExceeded(describe_cap("separable", total, opts.work_cap), static_cast<double>(total),
                                  static_cast<double>(opts.work_cap));
        // a collision among sampled subsets is a genuine violation
        SplitMix64 rng(opts.seed);
        for (std::uint64_t i = 0; i < opts.samples; ++i) {
            std::uint64_t r = rng.below(total);
            std::size_t size = 0;
            while (r >= binomial_sat(n, size)) {
                r -= binomial_sat(n, size);
                ++size;
            }
            if (!visit(colex_unrank(r, size)))
                break;
        }
        rep.status = rep.holds ? Status::probable : Status::refuted;
        rep.coverage = static_cast<double>(seen.size()) / static_cast<double>(total);
        return rep;
    }

    seen.reserve(static_cast<std::size_t>(total));
    for (std::size_t size = 0; size <= dmax; ++size) {
        auto S = first_subset(size);
        do {
            if (!visit(S))
                return rep;
        } while (next_subset(S, n));
    }
    return rep;
}

std::pair<std::uint64_t, Status> visit_subsets(std::size_t n, std::size_t k, const VerifyOptions& opts,
                                               const std::function<bool(const std::vector<std::size_t>&)>& visit)
{
    const std::uint64_t total = binomial_sat(n, k);
    std::uint64_t work = 0;
    if (total > opts.work_cap) {
        if (!opts.allow_sampling)
            throw WorkCapExceeded(describe_cap("subset scan", total, opts.work_cap), static_cast<double>(total),
                                  static_cast<double>(opts.work_cap));
        SplitMix64 rng(opts.seed);
        for (std::uint64_t i = 0; i < opts.samples; ++i) {
            ++work;
            if (!visit(colex_unrank(rng.below(total), k)))
                return {work, Status::refuted};
        }
        return {work, Status::probable};
    }
    auto S = first_subset(k);
    do {
        ++work;
        if (!visit(S))
            break;
    } while (next_subset(S, n));
    return {work, Status::exhaustive};
}

PropertyReport pairwise_intersection_at_most(const Design& design, std::size_t lambda)
{
    PropertyReport rep;
    rep.property = "pairwise_intersection";
    rep.params.lambda = lambda;
    const std::size_t n = design.n();
    // colex order of pairs: (i, j) with j major
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
            ++rep.work;
            if (design.column(i).intersection_count(design.column(j)) > lambda) {
                rep.holds = false;
                rep.witness = Witness{{i, j}};
                return rep;
            }
        }
    }
    return rep;
}

PropertyReport verify_design(const Design& design, std::size_t p, std::size_t d, std::size_t s,
                             const VerifyOptions& opts)
{
    auto ub = is_union_bounded(design, d, s, opts);
    if (!ub.holds)
        return ub;
    auto pd = is_pd_cover_free(design, p, d, opts);
    pd.work += ub.work;
    pd.params.s = s;
    if (ub.status == Status::probable && pd.status == Status::exhaustive) {
        pd.status = Status::probable;
        pd.coverage = ub.coverage;
    }
    if (pd.holds)
        pd.property = "full";
    return pd;
}

const std::vector<std::string>& property_ids()
{
    static const std::vector<std::string> ids = {"union_bounded", "cover_free", "pd_cover_free",
                                                 "separable",     "pairwise_intersection", "full"};
    return ids;
}

PropertyReport check(const Design& design, const std::string& property, const Params& params,
                     const VerifyOptions& opts)
{
    if (property == "union_bounded")
        return is_union_bounded(design, params.d, params.s, opts);
    if (property == "cover_free")
        return is_cover_free(design, params.d, opts);
    if (property == "pd_cover_free")
        return is_pd_cover_free(design, params.p, params.d, opts);
    if (property == "separable")
        return is_separable(design, params.d, opts);
    if (property == "pairwise_intersection")
        return pairwise_intersection_at_most(design, params.lambda);
    if (property == "full")
        return verify_design(design, params.p, params.d, params.s, opts);
    throw DomainError("unknown property '" + property + "'");
}

bool replays(const Design& design, const PropertyReport& report)
{
    if (report.holds || !report.witness)
        return false;
    const auto& w = *report.witness;
    for (const auto& set : w)
        for (auto x : set)
            if (x >= design.n())
                return false;
    const auto& prop = report.property;
    if (prop == "union_bounded" && w.size() == 1)
        return w[0].size() <= report.params.d && union_of(design, w[0]).count() > report.params.s;
    if (prop == "full" && w.size() == 1)
        return w[0].size() <= report.params.d && union_of(design, w[0]).count() > report.params.s;
    if ((prop == "cover_free" || prop == "pd_cover_free" || prop == "full") && w.size() == 2) {
        const std::size_t p = std::max<std::size_t>(1, report.params.p);
        return w[0].size() == p && w[1].size() <= report.params.d && disjoint(w[0], w[1]) &&
               union_of(design, w[1]).covers(union_of(design, w[0]));
    }
    if (prop == "separable" && w.size() == 2)
        return w[0] != w[1] && w[0].size() <= report.params.d && w[1].size() <= report.params.d &&
               union_of(design, w[0]) == union_of(design, w[1]);
    if (prop == "pairwise_intersection" && w.size() == 1 && w[0].size() == 2)
        return w[0][0] != w[0][1] &&
               design.column(w[0][0]).intersection_count(design.column(w[0][1])) > report.params.lambda;
    return false;
}

std::optional<std::pair<std::size_t, std::size_t>> sperner_violation(const std::vector<BitVec>& family)
{
    for (std::size_t i = 0; i < family.size(); ++i)
        for (std::size_t j = 0; j < family.size(); ++j)
            if (i != j && family[j].covers(family[i]))
                return std::make_pair(i, j);
    return std::nullopt;
}

double lym_diagnostic(const std::vector<BitVec>& family, std::size_t ground)
{
    for (const auto& g : family)
        if (g.size() != ground)
            throw DomainError("family member length differs from the ground size");
    if (auto bad = sperner_violation(family))
        throw DomainError("not an antichain: member " + std::to_string(bad->first + 1) + " is contained in member " +
                          std::to_string(bad->second + 1));
    double sum = 0;
    for (const auto& g : family)
        sum += 1.0 / to_double(binomial(ground, g.count()));
    return sum;
}

}  // namespace gt::verify

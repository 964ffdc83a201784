#include "gt/adaptive.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include "gt/combinatorics.hpp"
#include "gt/errors.hpp"
#include "gt/parallel.hpp"
#include "gt/rng.hpp"

namespace gt::adaptive {

OracleSession::OracleSession(std::size_t n, DefectiveSet hidden, Budget budget, bool record_steps)
    : n_(n), hidden_(std::move(hidden)), mask_(n), budget_(budget), transcript_(record_steps)
{
    hidden_.check_within(n_);
    for (auto x : hidden_.members())
        mask_.set(x);
}

bool OracleSession::test(std::span<const std::size_t> pool)
{
    bool hit = false;
    for (auto item : pool) {
        if (item >= n_)
            throw DomainError("pool item outside [1.." + std::to_string(n_) + "]");
        hit = hit || mask_.test(item);
    }
    transcript_.append(pool, hit);
    return hit;
}

bool OracleSession::tests_over_budget() const noexcept
{
    return budget_.max_tests && transcript_.tests() > *budget_.max_tests;
}

bool OracleSession::yeses_over_budget() const noexcept
{
    return budget_.max_yeses && transcript_.yeses() > *budget_.max_yeses;
}

namespace {

// Smallest k with k^f * d^e >= n^e, i.e. ceil((n/d)^{e/f}).
std::size_t ceil_root(std::size_t n, std::size_t d, std::size_t e, std::size_t f)
{
    if (e == 0)
        return 1;
    const BigInt rhs = boost::multiprecision::pow(BigInt(n), static_cast<unsigned>(e));
    const BigInt dpow = boost::multiprecision::pow(BigInt(d), static_cast<unsigned>(e));
    auto fits = [&](std::size_t k) {
        return boost::multiprecision::pow(BigInt(k), static_cast<unsigned>(f)) * dpow >= rhs;
    };
    const double guess = std::pow(static_cast<double>(n) / static_cast<double>(d),
                                  static_cast<double>(e) / static_cast<double>(f));
    auto k = static_cast<std::size_t>(std::max(1.0, std::floor(guess)));
    while (k > 1 && fits(k - 1))
        --k;
    while (!fits(k))
        ++k;
    return k;
}

std::vector<std::size_t> iota_items(std::size_t n)
{
    std::vector<std::size_t> items(n);
    for (std::size_t i = 0; i < n; ++i)
        items[i] = i;
    return items;
}

}  // namespace

StagePlan plan_stages(std::size_t n, std::size_t d, std::size_t f)
{
    if (d < 1 || n < d || f < 1)
        throw DomainError("plan_stages needs n >= d >= 1 and f >= 1");
    StagePlan plan;
    plan.f = f;
    plan.k.resize(f);
    for (std::size_t i = 1; i <= f; ++i) {
        std::size_t k = ceil_root(n, d, f - i, f);
        if (i > 1)
            k = std::min(k, plan.k[i - 2]);
        plan.k[i - 1] = k;
    }
    return plan;
}

std::size_t staged_test_bound(std::size_t n, std::size_t d, std::size_t f)
{
    return f * d * ceil_root(n, d, 1, f) + f * d - 1;
}

DefectiveSet run_staged(OracleSession& session, std::size_t d, const StagePlan& plan)
{
    if (plan.k.size() != plan.f || plan.k.empty() || plan.k.back() != 1)
        throw DomainError("stage plan must end with group size 1");
    std::vector<std::size_t> space = iota_items(session.n());
    for (std::size_t stage = 0; stage < plan.f; ++stage) {
        const std::size_t k = plan.k[stage];
        std::vector<std::size_t> next;
        std::size_t positives = 0;
        for (std::size_t lo = 0; lo < space.size(); lo += k) {
            const std::size_t hi = std::min(space.size(), lo + k);
            std::span<const std::size_t> group(space.data() + lo, hi - lo);
            if (session.test(group)) {
                ++positives;
                next.insert(next.end(), group.begin(), group.end());
            }
        }
        if (positives > d)
            throw InternalFault("stage " + std::to_string(stage + 1) + " saw " + std::to_string(positives) +
                                " positive groups with at most " + std::to_string(d) + " defectives");
        space = std::move(next);
    }
    return DefectiveSet(std::move(space));
}

DefectiveSet run_hwang(OracleSession& session, std::size_t d)
{
    if (d < 1 || session.n() < d)
        throw DomainError("run_hwang needs n >= d >= 1");
    std::vector<std::size_t> rest = iota_items(session.n());
    std::vector<std::size_t> found;
    std::size_t left = d;  // bound on defectives still hidden in `rest`

    while (left > 0 && !rest.empty()) {
        const std::size_t m = rest.size();
        if (m + 2 <= 2 * left) {
            for (auto item : rest)
                if (session.test(std::span<const std::size_t>(&item, 1)))
                    found.push_back(item);
            rest.clear();
            break;
        }
        const double ratio = static_cast<double>(m - left + 1) / static_cast<double>(left);
        std::size_t alpha = 0;
        while ((std::size_t{2} << alpha) <= static_cast<std::size_t>(ratio))  // floor(log2 ratio)
            ++alpha;
        const std::size_t size = std::min(m, std::size_t{1} << alpha);

        std::span<const std::size_t> group(rest.data(), size);
        if (!session.test(group)) {
            rest.erase(rest.begin(), rest.begin() + static_cast<std::ptrdiff_t>(size));
            continue;
        }
        // Binary search inside the positive group. lo..hi is known positive;
        // halves cleared by a negative test are dropped, untested halves go back.
        std::size_t lo = 0, hi = size;
        std::vector<std::size_t> returned;
        while (hi - lo > 1) {
            const std::size_t mid = lo + (hi - lo) / 2;
            std::span<const std::size_t> half(rest.data() + lo, mid - lo);
            if (session.test(half)) {
                for (std::size_t i = mid; i < hi; ++i)
                    returned.push_back(rest[i]);
                hi = mid;
            } else {
                lo = mid;
            }
        }
        found.push_back(rest[lo]);
        std::vector<std::size_t> next;
        next.reserve(m - size + returned.size());
        std::sort(returned.begin(), returned.end());
        std::merge(returned.begin(), returned.end(), rest.begin() + static_cast<std::ptrdiff_t>(size), rest.end(),
                   std::back_inserter(next));
        rest = std::move(next);
        --left;
    }
    return DefectiveSet(std::move(found));
}

DefectiveSet run_individual(OracleSession& session)
{
    std::vector<std::size_t> found;
    for (std::size_t item = 0; item < session.n(); ++item)
        if (session.test(std::span<const std::size_t>(&item, 1)))
            found.push_back(item);
    return DefectiveSet(std::move(found));
}

std::string Strategy::name() const
{
    switch (kind) {
    case StrategyKind::individual:
        return "individual";
    case StrategyKind::staged:
        return "staged(f=" + std::to_string(plan.f) + ")";
    case StrategyKind::hwang:
        return "hwang";
    }
    return "?";
}

Strategy individual()
{
    return Strategy{StrategyKind::individual, {}};
}

Strategy staged(std::size_t n, std::size_t d, std::size_t f)
{
    return Strategy{StrategyKind::staged, plan_stages(n, d, f)};
}

Strategy hwang()
{
    return Strategy{StrategyKind::hwang, {}};
}

Strategy choose_strategy(std::size_t n, std::size_t d, std::size_t t)
{
    if (d < 1 || n < d || t < 1)
        throw DomainError("choose_strategy needs n >= d >= 1 and t >= 1");
    if (t >= n)
        return individual();
    const auto info = ceil_log2(binomial(n, d));
    if (t < info)
        throw InfeasibleError("t=" + std::to_string(t) + " is below the information bound " + std::to_string(info));
    // ceil((n/d)^{1/f}) reaches 2 by f = ceil(log2(n/d)); larger f only adds tests
    const std::size_t f_max = static_cast<std::size_t>(ceil_log2(BigInt(n))) + 1;
    for (std::size_t f = 2; f <= f_max; ++f) {
        if (3 * f * d > t)
            break;
        if (staged_test_bound(n, d, f) <= t)
            return staged(n, d, f);
    }
    return hwang();
}

DefectiveSet run(const Strategy& strategy, OracleSession& session, std::size_t d)
{
    switch (strategy.kind) {
    case StrategyKind::individual:
        return run_individual(session);
    case StrategyKind::staged:
        return run_staged(session, d, strategy.plan);
    case StrategyKind::hwang:
        return run_hwang(session, d);
    }
    throw InternalFault("unknown strategy kind");
}

RunResult run_once(const Strategy& strategy, std::size_t n, std::size_t d, const DefectiveSet& hidden)
{
    OracleSession session(n, hidden, {}, false);
    RunResult r;
    r.found = run(strategy, session, d);
    r.tests = session.transcript().tests();
    r.yeses = session.transcript().yeses();
    return r;
}

DefectiveSet hidden_set_at(std::size_t n, std::size_t d, std::uint64_t index)
{
    for (std::size_t size = 0; size <= std::min(n, d); ++size) {
        const auto count = binomial_sat(n, size);
        if (index < count)
            return DefectiveSet(colex_unrank(index, size));
        index -= count;
    }
    throw DomainError("hidden set index out of range");
}

namespace {

struct Partial {
    Measurement m;
    std::uint64_t yes_at = 0, tests_at = 0, fail_at = ~std::uint64_t{0};
};

void absorb(Partial& acc, const RunResult& r, const DefectiveSet& hidden, std::uint64_t at)
{
    ++acc.m.runs;
    if (r.found != hidden && at < acc.fail_at) {
        acc.m.all_correct = false;
        acc.m.first_failure = hidden;
        acc.fail_at = at;
    }
    if (r.yeses > acc.m.max_yes || (r.yeses == acc.m.max_yes && at < acc.yes_at)) {
        acc.m.max_yes = r.yeses;
        acc.m.worst_yes_set = hidden;
        acc.yes_at = at;
    }
    if (r.tests > acc.m.max_tests || (r.tests == acc.m.max_tests && at < acc.tests_at)) {
        acc.m.max_tests = r.tests;
        acc.m.worst_tests_set = hidden;
        acc.tests_at = at;
    }
}

void merge(Partial& into, const Partial& from)
{
    into.m.runs += from.m.runs;
    if (!from.m.all_correct && from.fail_at < into.fail_at) {
        into.m.all_correct = false;
        into.m.first_failure = from.m.first_failure;
        into.fail_at = from.fail_at;
    }
    if (from.m.runs == 0)
        return;
    if (from.m.max_yes > into.m.max_yes || (from.m.max_yes == into.m.max_yes && from.yes_at < into.yes_at)) {
        into.m.max_yes = from.m.max_yes;
        into.m.worst_yes_set = from.m.worst_yes_set;
        into.yes_at = from.yes_at;
    }
    if (from.m.max_tests > into.m.max_tests ||
        (from.m.max_tests == into.m.max_tests && from.tests_at < into.tests_at)) {
        into.m.max_tests = from.m.max_tests;
        into.m.worst_tests_set = from.m.worst_tests_set;
        into.tests_at = from.tests_at;
    }
}

}  // namespace

Measurement measure_max_yes(const Strategy& strategy, std::size_t n, std::size_t d, const MeasureMode& mode)
{
    if (d < 1 || n < d)
        throw DomainError("measure_max_yes needs n >= d >= 1");
    const std::uint64_t total = subsets_up_to_sat(n, d);
    const std::size_t workers = mode.workers ? mode.workers : default_workers();

    std::vector<std::uint64_t> indices;
    std::uint64_t count = total;
    if (mode.exhaustive) {
        if (total > mode.cap)
            throw WorkCapExceeded("exhaustive measurement over " + std::to_string(total) + " hidden sets exceeds cap " +
                                      std::to_string(mode.cap),
                                  static_cast<double>(total), static_cast<double>(mode.cap));
    } else {
        SplitMix64 rng(mode.seed);
        indices.resize(mode.trials);
        for (auto& idx : indices)
            idx = rng.below(total);
        count = indices.size();
    }

    constexpr std::uint64_t chunk = 1024;
    const std::uint64_t chunks = (count + chunk - 1) / chunk;
    std::vector<Partial> parts(chunks);
    parallel_for(chunks, workers, [&](std::size_t c) {
        Partial& acc = parts[c];
        const std::uint64_t lo = c * chunk, hi = std::min(count, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const DefectiveSet hidden = hidden_set_at(n, d, mode.exhaustive ? i : indices[i]);
            absorb(acc, run_once(strategy, n, d, hidden), hidden, i);
        }
    });

    Partial all;
    for (const auto& p : parts)
        merge(all, p);
    return all.m;
}

}  // namespace gt::adaptive

// Acceptance run: one PASS/FAIL line per criterion on stdout, details on stderr.
// Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "gt/adaptive.hpp"
#include "gt/bounds.hpp"
#include "gt/combinatorics.hpp"
#include "gt/designs.hpp"
#include "gt/errors.hpp"
#include "gt/harness.hpp"
#include "gt/pipeline.hpp"
#include "gt/verify.hpp"
#include "support/reference.hpp"

using namespace gt;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

// measured adaptive maxima, shared between criteria 1-3 and 4
struct AdaptiveRecord {
    std::string strategy;
    std::size_t n, d, max_tests, max_yes;
};
std::vector<AdaptiveRecord> g_runs;

std::vector<designs::ExplicitResult> g_explicit;

void note(const std::string& s) { std::cerr << "    " << s << '\n'; }

adaptive::Measurement measure(const adaptive::Strategy& st, std::size_t n, std::size_t d)
{
    adaptive::MeasureMode m;
    m.workers = 0;
    auto r = adaptive::measure_max_yes(st, n, d, m);
    g_runs.push_back({st.name(), n, d, r.max_tests, r.max_yes});
    return r;
}

Outcome individual_exact()
{
    Outcome o;
    std::size_t rows = 0;
    for (std::size_t n = 1; n <= 16; ++n)
        for (std::size_t d = 1; d <= 3 && d <= n; ++d) {
            const auto m = measure(adaptive::individual(), n, d);
            ++rows;
            if (m.max_yes != d || m.max_tests != n || !m.all_correct) {
                o.pass = false;
                note("individual n=" + std::to_string(n) + " d=" + std::to_string(d) +
                     " max_yes=" + std::to_string(m.max_yes) + " tests=" + std::to_string(m.max_tests));
            }
        }
    o.detail = std::to_string(rows) + " (n,d) points";
    return o;
}

Outcome staged_conformance()
{
    Outcome o;
    std::size_t runs = 0;
    for (std::size_t n : {8, 12, 16})
        for (std::size_t d : {1, 2})
            for (std::size_t f : {2, 3}) {
                const auto m = measure(adaptive::staged(n, d, f), n, d);
                runs += m.runs;
                const auto tb = adaptive::staged_test_bound(n, d, f);
                if (!m.all_correct || m.max_yes > f * d || m.max_tests > tb) {
                    o.pass = false;
                    note("staged n=" + std::to_string(n) + " d=" + std::to_string(d) + " f=" + std::to_string(f) +
                         " max_yes=" + std::to_string(m.max_yes) + " max_tests=" + std::to_string(m.max_tests) +
                         " bound=" + std::to_string(tb));
                }
            }
    o.detail = std::to_string(runs) + " runs";
    return o;
}

Outcome hwang_conformance()
{
    Outcome o;
    std::size_t runs = 0, violations = 0;
    for (std::size_t n = 1; n <= 12; ++n)
        for (std::size_t d = 1; d <= 2 && d <= n; ++d) {
            const auto m = measure(adaptive::hwang(), n, d);
            runs += m.runs;
            const auto bound = ceil_log2(binomial(n, d)) + d - 1;
            if (!m.all_correct) {
                o.pass = false;
                note("hwang wrong output at n=" + std::to_string(n) + " d=" + std::to_string(d));
            }
            if (m.max_tests > bound) {
                ++violations;
                o.pass = false;
                note("finding: hwang n=" + std::to_string(n) + " d=" + std::to_string(d) + " needs " +
                     std::to_string(m.max_tests) + " tests > bound " + std::to_string(bound) + " (hidden " +
                     std::to_string(m.worst_tests_set.size()) + " items, " +
                     std::to_string(subsets_up_to_sat(n, d)) + " possible answers)");
            }
        }
    o.detail = std::to_string(runs) + " runs, " + std::to_string(violations) + " budget violations";
    return o;
}

Outcome tree_counting()
{
    Outcome o;
    for (const auto& r : g_runs) {
        const auto floor = bounds::min_yes_exact(r.n, r.d, r.max_tests);
        if (!floor || r.max_yes < *floor) {
            o.pass = false;
            note("tree count: " + r.strategy + " n=" + std::to_string(r.n) + " d=" + std::to_string(r.d) +
                 " max_yes=" + std::to_string(r.max_yes) +
                 " floor=" + (floor ? std::to_string(*floor) : std::string("infeasible")));
        }
    }
    o.detail = std::to_string(g_runs.size()) + " measurements";
    return o;
}

Outcome explicit_construction()
{
    Outcome o;
    for (auto [d, q, m] : {std::array<std::size_t, 3>{1, 4, 2}, {2, 7, 6}}) {
        const auto r = designs::build_explicit(d, static_cast<std::uint32_t>(q), m);
        const auto& D = r.design;
        const std::size_t s = d * m;
        const std::size_t lambda = m - gf::distance_target(static_cast<double>(d) / (d + 1), m);
        const bool cf = verify::is_cover_free(D, d).holds;
        const bool ub = verify::is_union_bounded(D, d, s).holds;
        const bool pw = verify::pairwise_intersection_at_most(D, lambda).holds;
        const auto [lo, hi] = designs::union_weight_range(D, d);
        const bool sandwich = 2 * lo >= s && hi <= s;
        if (!(cf && ub && pw && sandwich)) {
            o.pass = false;
            note("explicit d=" + std::to_string(d) + " q=" + std::to_string(q) + " m=" + std::to_string(m) +
                 " cover_free=" + std::to_string(cf) + " union_bounded=" + std::to_string(ub) +
                 " pairwise=" + std::to_string(pw) + " unions=[" + std::to_string(lo) + "," + std::to_string(hi) + "]");
        }
        o.detail += (o.detail.empty() ? "" : "; ") + std::string("t=") + std::to_string(D.t()) +
                    " n=" + std::to_string(D.n()) + " unions in [" + std::to_string(lo) + "," + std::to_string(hi) + "]";
        g_explicit.push_back(r);
    }
    return o;
}

Outcome two_stage_budget()
{
    Outcome o;
    const auto r = designs::build_explicit(2, 7, 6);
    if (r.design.n() != 49)
        return {false, "explicit design has n=" + std::to_string(r.design.n())};
    const auto cert = pipeline::certify(r.design, 1, 2, 12);
    const auto sum = pipeline::measure_two_stage(cert, 2);
    o.pass = sum.all_correct && sum.max_candidates <= 2 && sum.max_total_yeses <= 14;
    o.detail = std::to_string(sum.runs) + " runs, max candidates " + std::to_string(sum.max_candidates) +
               ", max yeses " + std::to_string(sum.max_total_yeses);
    return o;
}

struct SamplerTally {
    std::size_t returned = 0, failed = 0, unverified = 0;
};

SamplerTally sampler_tally(std::size_t n, std::optional<double> z)
{
    SamplerTally tally;
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
        designs::SamplerConfig cfg;
        cfg.t = 12;
        cfg.n = n;
        cfg.d = 1;
        cfg.p = 1;
        cfg.s = 6;
        cfg.z = z;
        cfg.seed = seed;
        cfg.max_attempts = 1;
        try {
            const auto res = designs::sample_design(cfg);
            ++tally.returned;
            const bool ok = verify::is_union_bounded(res.design, 1, 6).holds &&
                            verify::is_pd_cover_free(res.design, 1, 1).holds &&
                            verify::is_cover_free(res.design, 1).holds;
            tally.unverified += !ok;
        } catch (const SamplingError&) {
            ++tally.failed;
        }
    }
    return tally;
}

Outcome sampler_soundness()
{
    bounds::BoundQuery q;
    q.n = 12;
    q.d = 1;
    q.t = 12;
    q.p = 1;
    q.s = 6;
    const double size = *bounds::cff_pd_exists(q).value;
    const auto n = static_cast<std::size_t>(std::floor(size));
    const double P = bounds::sampler_failure_bound(12, n, 1, 1, 6);

    const auto tally = sampler_tally(n, std::nullopt);
    const double frac = static_cast<double>(tally.failed) / 200.0;
    Outcome o;
    o.pass = tally.unverified == 0 && (P >= 1 || frac <= P);
    std::ostringstream ss;
    ss << std::setprecision(10) << "n=" << n << " default z=" << designs::default_z(12, 1, 1, 6) << " failures " << tally.failed
       << "/200 (" << frac << ") vs P=" << P;
    o.detail = ss.str();

    // report only: other densities, not part of the verdict
    for (double z : {0.5, 0.6, 0.7, 0.8}) {
        const auto tuned = sampler_tally(n, z);
        std::ostringstream info;
        info << "info: z=" << z << " gives failures " << tuned.failed << "/200, unverified returns " << tuned.unverified;
        note(info.str());
    }
    return o;
}

Outcome bound_cross_checks()
{
    using namespace bounds;
    Outcome o;
    std::size_t bad = 0, checks = 0;
    auto expect = [&](bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++bad;
            if (bad <= 10)
                note(what);
        }
    };

    for (std::uint64_t b = 2; b <= 64; ++b)
        for (std::uint64_t a = 1; a < b; ++a)
            expect(entropy_upper_bound(a, b) >= binary_entropy(static_cast<double>(a) / b),
                   "dominance " + std::to_string(a) + "/" + std::to_string(b));

    std::size_t grid = 0;
    for (std::uint64_t d = 1; d <= 4; ++d)
        for (std::uint64_t t = 4; t <= 40; t += 4)
            for (std::uint64_t s = 1; s <= 9; s += 2, ++grid) {
                if (s > t)
                    continue;
                const double a = *cff_pd_exists(BoundQuery{100, d, t, {}, 1, s}).value;
                const double b = *cff_exists(BoundQuery{100, d, t, {}, {}, s}).value;
                expect(std::abs(a - b) <= 1e-12 * std::max(1.0, a), "p=1 existence mismatch");
            }
    for (std::uint64_t d = 1; d <= 2; ++d)
        for (std::uint64_t n = 2 * d; n < 2 * d + 100; n += 10)
            for (std::uint64_t t = 2 * d; t < 2 * d + 100; t += 10, ++grid) {
                const auto g = twostage_yes_upper(BoundQuery{n, d, t, {}, d, {}});
                const auto c = twostage_yes_upper_pd(BoundQuery{n, d, t, {}, {}, {}});
                for (std::size_t i = 0; i < 2; ++i) {
                    const double a = g.branches[i].value, b = c.branches[i].value;
                    expect((std::isinf(a) && a == b) || std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)),
                           "p=d two-stage mismatch");
                }
            }

    double worst = 0;
    auto rel = [&](double got, const ref::Real& want) {
        const double e = ref::rel_err(got, want);
        worst = std::max(worst, e);
        expect(e <= 1e-12, "reference disagreement " + std::to_string(e));
    };
    for (int a = 1; a < 64; ++a)
        rel(binary_entropy(a / 64.0), ref::binary_entropy(ref::Real(a) / 64));
    for (std::uint64_t b = 2; b <= 64; b += 3)
        for (std::uint64_t a = 1; a < b; a += 4)
            rel(entropy_upper_bound(a, b), ref::entropy_upper(a, b));
    for (std::uint64_t n : {16u, 100u, 1000u, 5000u})
        for (std::uint64_t t = 10; t <= 80; t += 10) {
            const double y = std::floor(t / 4.0);
            rel(*adaptive_yes_lower(BoundQuery{n, 2, t, y, {}, {}}).value, ref::adaptive_lower_low(n, 2, t, y));
            if (t < n)
                rel(*adaptive_yes_upper(BoundQuery{n, 2, t, y, {}, {}}).value, ref::adaptive_upper_low(n, 2, t, y));
            rel(*nonadaptive_yes_lower(BoundQuery{n, 1, t, y, {}, {}}).value, ref::nonadaptive_lower_low(n, 1, t));
            rel(*nonadaptive_yes_lower(BoundQuery{n, 2, t, y, {}, {}}).value, ref::nonadaptive_lower_low(n, 2, t));
            rel(*nonadaptive_yes_upper(BoundQuery{n, 1, t, t - 1.0, {}, {}}).value, ref::nonadaptive_upper_wide(n, 1));
            for (std::uint64_t s = 1; s <= t; s += 9) {
                rel(*cff_pd_exists(BoundQuery{n, 2, t, {}, 3, s}).value, ref::cff_pd_exists(2, 3, s, t));
                rel(*cff_exists(BoundQuery{n, 2, t, {}, {}, s}).value, ref::cff_exists(2, s, t));
            }
            rel(*twostage_yes_upper(BoundQuery{n, 2, t, t - 1.0, 1, {}}).value, ref::twostage_high(n, 2, 1));
        }
    rel(*nonadaptive_yes_upper(BoundQuery{256, 1, 4096, 10.0, {}, {}}).value, ref::nonadaptive_upper_tall(256, 1, 4096));
    rel(*twostage_yes_upper(BoundQuery{64, 2, 400, 3.0, 2, {}}).value, ref::twostage_low(64, 2, 2, 400));
    rel(*sep_size_upper(BoundQuery{10, 1, 20, {}, {}, 4}).value, ref::sep_d1_wide(4, 20));
    rel(sampler_failure_bound(12, 35, 1, 1, 6), ref::sampler_bound(12, 35, 1, 1, 6));

    o.pass = bad == 0 && grid >= 200;
    std::ostringstream ss;
    ss << checks << " checks, p-specialization grid " << grid << ", worst relative error " << worst;
    o.detail = ss.str();
    return o;
}

Outcome decoder_equivalence()
{
    Outcome o;
    std::size_t runs = 0;
    for (const auto& r : g_explicit) {
        const auto& D = r.design;
        const std::size_t d = D.meta()->d;
        for (std::uint64_t i = 0; i < subsets_up_to_sat(D.n(), d); ++i) {
            const auto hidden = adaptive::hidden_set_at(D.n(), d, i);
            const auto resp = respond(D, hidden);
            const auto cover = pipeline::decode_cover(D, resp);
            const auto sep = pipeline::decode_separable(D, resp, d);
            ++runs;
            if (cover != hidden.members() || sep != hidden) {
                o.pass = false;
                note("decoder mismatch on a design with n=" + std::to_string(D.n()));
            }
        }
    }
    if (g_explicit.empty())
        o.pass = false;
    o.detail = std::to_string(runs) + " hidden sets";
    return o;
}

Outcome reproducibility()
{
    using namespace harness;
    std::vector<SweepSpec> specs(3);
    specs[0].kind = SweepKind::adaptive;
    specs[0].n = {20, 40};
    specs[0].d = {1, 2};
    specs[0].exhaustive = false;
    specs[0].trials = 300;
    specs[0].seed = 5;
    specs[1].kind = SweepKind::nonadaptive;
    specs[1].n = {6, 8};
    specs[1].d = {1};
    specs[1].t = {10};
    specs[1].s = {5};
    specs[1].z = 0.6;
    specs[1].max_attempts = 200;
    specs[1].seed = 7;
    specs[2].kind = SweepKind::twostage;
    specs[2].n = {8};
    specs[2].d = {1};
    specs[2].t = {12};
    specs[2].s = {6};
    specs[2].z = 0.6;
    specs[2].max_attempts = 200;
    specs[2].seed = 9;

    Outcome o;
    std::size_t bytes = 0;
    for (const auto& spec : specs) {
        std::ostringstream a, b;
        write_csv(a, spec.kind, sweep(spec));
        write_csv(b, spec.kind, sweep(spec));
        bytes += a.str().size();
        if (a.str() != b.str()) {
            o.pass = false;
            note(to_string(spec.kind) + " sweep differs between reruns");
        }
    }
    o.detail = std::to_string(specs.size()) + " sweeps, " + std::to_string(bytes) + " bytes each pass";
    return o;
}

}  // namespace

int main()
{
    struct Criterion {
        int id;
        const char* name;
        double limit_s;  // 0: no time limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "individual testing exactness", 1, individual_exact},
        {2, "staged algorithm conformance", 10, staged_conformance},
        {3, "hwang conformance", 10, hwang_conformance},
        {4, "tree-counting consistency", 0, tree_counting},
        {5, "explicit construction", 30, explicit_construction},
        {6, "two-stage budget", 60, two_stage_budget},
        {7, "sampler soundness", 60, sampler_soundness},
        {8, "bound evaluator cross-checks", 5, bound_cross_checks},
        {9, "decoder equivalence", 0, decoder_equivalence},
        {10, "reproducibility", 0, reproducibility},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        std::cerr << "[" << c.id << "] " << c.name << '\n';
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_s > 0 && secs > c.limit_s) {
            o.pass = false;
            o.detail += "; over time limit";
        }
        failures += !o.pass;
        std::printf("%s %2d %s (%.2fs): %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}

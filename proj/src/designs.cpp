#include "gt/designs.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gt/bounds.hpp"
#include "gt/errors.hpp"
#include "gt/rng.hpp"

namespace gt::designs {

double default_z(std::size_t t, std::size_t d, std::size_t p, std::size_t s)
{
    if (t == 0 || d == 0 || s == 0)
        throw DomainError("default_z: t, d and s must be positive");
    const double base = static_cast<double>(s) / (std::numbers::e * static_cast<double>(t));
    const double expo = static_cast<double>(s) * (static_cast<double>(p) / static_cast<double>(d) + 1.0);
    // 1 - base^expo underflows to exactly 1 for large s; keep the log form
    const double log_one_minus = std::log1p(-std::pow(base, expo));
    return std::exp(log_one_minus / static_cast<double>(d));
}

Design draw_matrix(std::size_t t, std::size_t n, double z, std::uint64_t seed, std::size_t attempt)
{
    if (t == 0 || n == 0)
        throw DomainError("draw_matrix: empty shape");
    const std::uint64_t key = splitmix_mix(seed + (static_cast<std::uint64_t>(attempt) + 1) * kGolden);
    std::vector<BitVec> cols(n, BitVec(t));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < t; ++i)
            if (!(unit_interval(counter_value(key, j * t + i)) < z))
                cols[j].set(i);
    return Design(t, std::move(cols));
}

SampleResult sample_design(const SamplerConfig& cfg, const verify::VerifyOptions& opts)
{
    if (cfg.d == 0 || cfg.p == 0)
        throw DomainError("sample_design: d and p must be >= 1");
    if (cfg.s == 0 || cfg.s > cfg.t)
        throw DomainError("sample_design: need 1 <= s <= t");
    if (cfg.max_attempts == 0)
        throw DomainError("sample_design: max_attempts must be >= 1");
    const double z = cfg.z ? *cfg.z : default_z(cfg.t, cfg.d, cfg.p, cfg.s);
    if (!(z > 0.0 && z < 1.0))
        throw DomainError("sample_design: z must lie in (0, 1)");

    SampleResult out{Design::identity(1), 0, z, {}};
    bounds::BoundQuery q;
    q.n = std::max<std::uint64_t>(cfg.n, cfg.d);
    q.d = cfg.d;
    q.t = cfg.t;
    q.p = cfg.p;
    q.s = cfg.s;
    const auto exists = bounds::cff_pd_exists(q);
    if (exists.value && static_cast<double>(cfg.n) > *exists.value) {
        std::ostringstream w;
        w << "warning: n=" << cfg.n << " exceeds the existence bound " << *exists.value;
        out.log.push_back(w.str());
    }

    for (std::size_t a = 0; a < cfg.max_attempts; ++a) {
        Design m = draw_matrix(cfg.t, cfg.n, z, cfg.seed, a);
        const auto rep = verify::verify_design(m, cfg.p, cfg.d, cfg.s, opts);
        out.attempts = a + 1;
        if (rep.holds && rep.status == verify::Status::exhaustive) {
            m.set_meta(DesignMeta{cfg.d, cfg.p, cfg.s});
            out.design = std::move(m);
            return out;
        }
        std::ostringstream line;
        line << "attempt " << a << ": " << rep.property << " "
             << (rep.holds ? "unconfirmed (" + verify::to_string(rep.status) + ")" : "violated");
        out.log.push_back(line.str());
    }
    throw SamplingError("sample_design: no verified design in " + std::to_string(cfg.max_attempts) + " attempts",
                        out.log);
}

Design code_to_design(const gf::LinearCode& code)
{
    const std::size_t q = code.field.q();
    const std::size_t t = code.m * q;
    const std::uint64_t n = code.size();
    std::vector<BitVec> cols;
    cols.reserve(n);
    for (std::uint64_t j = 0; j < n; ++j) {
        const auto c = code.codeword(j);
        BitVec col(t);
        for (std::size_t i = 0; i < code.m; ++i)
            col.set(reduction_index(i, c[i], q));
        cols.push_back(std::move(col));
    }
    return Design(t, std::move(cols));
}

namespace {

std::size_t target_distance(std::size_t d, std::size_t m)
{
    return (d * m + d) / (d + 1);  // ceil(dm/(d+1))
}

}  // namespace

std::size_t explicit_default_k(std::size_t d, std::uint32_t q, std::size_t m, std::uint64_t codeword_cap)
{
    const std::size_t room = m - target_distance(d, m);
    std::size_t k_cap = 0;
    for (std::uint64_t size = q; size <= codeword_cap; size *= q) {
        ++k_cap;
        if (size > codeword_cap / q)
            break;
    }
    return std::max<std::size_t>(1, std::min(room, k_cap));
}

ExplicitResult build_explicit(std::size_t d, std::uint32_t q, std::size_t m, std::optional<std::size_t> k,
                              const ExplicitOptions& opts)
{
    if (d == 0)
        throw DomainError("build_explicit: d must be >= 1");
    if (m == 0)
        throw DomainError("build_explicit: m must be >= 1");
    if (q < 2 * d + 2)
        throw DomainError("build_explicit: need q >= 2d+2");
    const std::size_t D = target_distance(d, m);

    std::optional<gf::LinearCode> code;
    if (k) {
        code = gf::construct_code_with_distance(q, m, *k, D, opts.construct);
    } else {
        for (std::size_t kk = explicit_default_k(d, q, m, opts.codeword_cap);; --kk) {
            try {
                code = gf::construct_code_with_distance(q, m, kk, D, opts.construct);
                break;
            } catch (const ConstructionError&) {
                if (kk == 1)
                    throw;
            }
        }
    }

    Design design = code_to_design(*code);
    design.set_meta(DesignMeta{d, 1, d * m});
    const std::size_t lambda = m - D;

    for (std::size_t j = 0; j < design.n(); ++j)
        if (design.column(j).count() != m)
            throw InternalFault("build_explicit: column " + std::to_string(j) + " is not m-uniform");
    auto check = [](const verify::PropertyReport& r) {
        if (!r.holds)
            throw InternalFault("build_explicit: produced design fails " + r.property);
    };
    check(verify::pairwise_intersection_at_most(design, lambda));
    check(verify::is_cover_free(design, d, opts.verify));
    check(verify::is_union_bounded(design, d, d * m, opts.verify));
    return ExplicitResult{std::move(design), std::move(*code), D, lambda};
}

UnionFloorReport union_floor_check(const Design& design, std::size_t d, std::size_t lambda,
                                   const verify::VerifyOptions& opts)
{
    UnionFloorReport out;
    const auto pairs = verify::pairwise_intersection_at_most(design, lambda);
    out.work = pairs.work;
    if (!pairs.holds) {
        const auto& w = pairs.witness->front();
        out.holds = false;
        out.precondition_holds = false;
        out.bad_pair = std::make_pair(w[0], w[1]);
        return out;
    }
    const std::size_t k = std::min(d, design.n());
    const std::size_t slack = k * (k - 1) / 2 * lambda;
    auto [work, status] = verify::visit_subsets(design.n(), k, opts, [&](const std::vector<std::size_t>& S) {
        std::size_t sum = 0;
        for (auto j : S)
            sum += design.column(j).count();
        const std::size_t floor = sum > slack ? sum - slack : 0;
        if (union_of(design, S).count() < floor) {
            out.bad_subset = S;
            return false;
        }
        return true;
    });
    out.work += work;
    out.status = status;
    out.holds = !out.bad_subset;
    return out;
}

std::pair<std::size_t, std::size_t> union_weight_range(const Design& design, std::size_t d,
                                                       const verify::VerifyOptions& opts)
{
    std::size_t lo = design.t() + 1, hi = 0;
    verify::visit_subsets(design.n(), std::min(d, design.n()), opts, [&](const std::vector<std::size_t>& S) {
        const std::size_t w = union_of(design, S).count();
        lo = std::min(lo, w);
        hi = std::max(hi, w);
        return true;
    });
    if (lo > hi)
        lo = hi;
    return {lo, hi};
}

}  // namespace gt::designs

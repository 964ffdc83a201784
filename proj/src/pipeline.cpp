#include "gt/pipeline.hpp"

#include <algorithm>

#include "gt/combinatorics.hpp"
#include "gt/errors.hpp"
#include "gt/parallel.hpp"
#include "gt/rng.hpp"

namespace gt::pipeline {

std::vector<std::size_t> decode_cover(const Design& design, const ResponseVector& response)
{
    if (response.bits.size() != design.t())
        throw DomainError("decode_cover: response has " + std::to_string(response.bits.size()) + " bits, design has " +
                          std::to_string(design.t()) + " pools");
    std::vector<std::size_t> out;
    for (std::size_t j = 0; j < design.n(); ++j)
        if (response.bits.covers(design.column(j)))
            out.push_back(j);
    return out;
}

DefectiveSet decode_separable(const Design& design, const ResponseVector& response, std::size_t d,
                              std::uint64_t work_cap)
{
    if (response.bits.size() != design.t())
        throw DomainError("decode_separable: response length does not match the design");
    const std::size_t top = std::min(d, design.n());
    const std::uint64_t total = subsets_up_to_sat(design.n(), top);
    if (total > work_cap)
        throw WorkCapExceeded("decode_separable: " + std::to_string(total) + " subsets exceed cap " +
                                  std::to_string(work_cap),
                              static_cast<double>(total), static_cast<double>(work_cap));

    // only columns inside the response can take part in a match
    const auto inside = decode_cover(design, response);
    std::optional<std::vector<std::size_t>> found;
    for (std::size_t k = 0; k <= std::min(top, inside.size()); ++k) {
        auto S = first_subset(k);
        do {
            std::vector<std::size_t> items(k);
            for (std::size_t i = 0; i < k; ++i)
                items[i] = inside[S[i]];
            if (union_of(design, items) == response.bits) {
                if (found)
                    throw NotSeparable("decode_separable: two subsets produce the same response", *found, items);
                found = std::move(items);
            }
        } while (next_subset(S, inside.size()));
    }
    if (!found)
        throw InconsistentResponse("decode_separable: no subset of at most " + std::to_string(d) +
                                   " items explains the response");
    return DefectiveSet(std::move(*found));
}

CertifiedDesign certify(Design design, std::size_t p, std::size_t d, std::size_t s, const verify::VerifyOptions& opts)
{
    verify::VerifyOptions strict = opts;
    strict.allow_sampling = false;
    auto report = verify::verify_design(design, p, d, s, strict);
    if (!report.holds)
        throw DomainError("certify: design fails " + report.property);
    return CertifiedDesign(std::move(design), p, d, s, std::move(report));
}

TwoStageOutcome run_two_stage(const CertifiedDesign& certified, adaptive::OracleSession& session)
{
    const Design& design = certified.design();
    if (session.n() != design.n())
        throw DomainError("run_two_stage: session has " + std::to_string(session.n()) + " items, design has " +
                          std::to_string(design.n()));
    TwoStageOutcome out;
    ResponseVector response{BitVec(design.t())};
    for (std::size_t i = 0; i < design.t(); ++i) {
        const auto pool = design.pool(i);
        if (session.test(pool)) {
            response.bits.set(i);
            ++out.stage1_yeses;
        }
    }
    out.candidates = decode_cover(design, response);
    std::vector<std::size_t> confirmed;
    for (auto j : out.candidates) {
        const std::size_t one[] = {j};
        if (session.test(one)) {
            confirmed.push_back(j);
            ++out.stage2_yeses;
        }
    }
    out.confirmed = DefectiveSet(std::move(confirmed));
    out.total_tests = design.t() + out.candidates.size();
    return out;
}

TwoStageSummary measure_two_stage(const CertifiedDesign& certified, std::size_t d, const adaptive::MeasureMode& mode)
{
    const std::size_t n = certified.design().n();
    if (d < 1 || n < d)
        throw DomainError("measure_two_stage needs n >= d >= 1");
    const std::uint64_t total = subsets_up_to_sat(n, d);
    std::vector<std::uint64_t> indices;
    std::uint64_t count = total;
    if (mode.exhaustive) {
        if (total > mode.cap)
            throw WorkCapExceeded("exhaustive two-stage measurement over " + std::to_string(total) +
                                      " hidden sets exceeds cap " + std::to_string(mode.cap),
                                  static_cast<double>(total), static_cast<double>(mode.cap));
    } else {
        SplitMix64 rng(mode.seed);
        indices.resize(mode.trials);
        for (auto& idx : indices)
            idx = rng.below(total);
        count = indices.size();
    }

    struct Part {
        TwoStageSummary s;
        std::uint64_t fail_at = ~std::uint64_t{0};
    };
    constexpr std::uint64_t chunk = 512;
    const std::uint64_t chunks = (count + chunk - 1) / chunk;
    std::vector<Part> parts(chunks);
    parallel_for(chunks, mode.workers ? mode.workers : default_workers(), [&](std::size_t c) {
        Part& acc = parts[c];
        const std::uint64_t lo = c * chunk, hi = std::min(count, lo + chunk);
        for (std::uint64_t i = lo; i < hi; ++i) {
            const DefectiveSet hidden = adaptive::hidden_set_at(n, d, mode.exhaustive ? i : indices[i]);
            adaptive::OracleSession session(n, hidden, {}, false);
            const auto r = run_two_stage(certified, session);
            auto& s = acc.s;
            ++s.runs;
            s.max_candidates = std::max(s.max_candidates, r.candidates.size());
            s.max_stage1_yeses = std::max(s.max_stage1_yeses, r.stage1_yeses);
            s.max_total_yeses = std::max(s.max_total_yeses, r.total_yeses());
            s.max_tests = std::max(s.max_tests, r.total_tests);
            if (r.confirmed != hidden && i < acc.fail_at) {
                s.all_correct = false;
                s.first_failure = hidden;
                acc.fail_at = i;
            }
        }
    });

    Part all;
    for (const auto& p : parts) {
        all.s.runs += p.s.runs;
        all.s.max_candidates = std::max(all.s.max_candidates, p.s.max_candidates);
        all.s.max_stage1_yeses = std::max(all.s.max_stage1_yeses, p.s.max_stage1_yeses);
        all.s.max_total_yeses = std::max(all.s.max_total_yeses, p.s.max_total_yeses);
        all.s.max_tests = std::max(all.s.max_tests, p.s.max_tests);
        if (!p.s.all_correct && p.fail_at < all.fail_at) {
            all.s.all_correct = false;
            all.s.first_failure = p.s.first_failure;
            all.fail_at = p.fail_at;
        }
    }
    return all.s;
}

}  // namespace gt::pipeline

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "gt/adaptive.hpp"
#include "gt/model.hpp"
#include "gt/verify.hpp"

namespace gt::pipeline {

/// Items whose column is covered by the response. Never drops a defective.
std::vector<std::size_t> decode_cover(const Design& design, const ResponseVector& response);

/**
 * The unique set of at most d items whose OR equals the response. Throws
 * InconsistentResponse when none exists, NotSeparable (with both sets) when
 * two do, and WorkCapExceeded when sum_{i<=d} C(n,i) passes the cap.
 */
DefectiveSet decode_separable(const Design& design, const ResponseVector& response, std::size_t d,
                              std::uint64_t work_cap = 1'000'000);

/// A design that has passed union-bounded (d, s) and (p, d)-cover-free verification.
class CertifiedDesign {
public:
    const Design& design() const noexcept { return design_; }
    std::size_t p() const noexcept { return p_; }
    std::size_t d() const noexcept { return d_; }
    std::size_t s() const noexcept { return s_; }
    const verify::PropertyReport& report() const noexcept { return report_; }

private:
    friend CertifiedDesign certify(Design, std::size_t, std::size_t, std::size_t, const verify::VerifyOptions&);
    CertifiedDesign(Design design, std::size_t p, std::size_t d, std::size_t s, verify::PropertyReport report)
        : design_(std::move(design)), p_(p), d_(d), s_(s), report_(std::move(report)) {}

    Design design_;
    std::size_t p_, d_, s_;
    verify::PropertyReport report_;
};

/// Verifies exhaustively; throws DomainError with the failing property otherwise.
CertifiedDesign certify(Design design, std::size_t p, std::size_t d, std::size_t s,
                        const verify::VerifyOptions& opts = {});

struct TwoStageOutcome {
    std::vector<std::size_t> candidates;
    DefectiveSet confirmed;
    std::size_t stage1_yeses = 0;
    std::size_t stage2_yeses = 0;
    std::size_t total_tests = 0;

    std::size_t total_yeses() const noexcept { return stage1_yeses + stage2_yeses; }
};

/// Stage 1 runs every pool of the design, stage 2 tests each candidate alone.
TwoStageOutcome run_two_stage(const CertifiedDesign& certified, adaptive::OracleSession& session);

struct TwoStageSummary {
    std::size_t runs = 0;
    std::size_t max_candidates = 0;
    std::size_t max_stage1_yeses = 0;
    std::size_t max_total_yeses = 0;
    std::size_t max_tests = 0;
    bool all_correct = true;
    std::optional<DefectiveSet> first_failure;
};

/// Two-stage runs over every hidden set of size <= d, or a seeded sample.
TwoStageSummary measure_two_stage(const CertifiedDesign& certified, std::size_t d,
                                  const adaptive::MeasureMode& mode = {});

}  // namespace gt::pipeline

#pragma once

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "gt/bitvec.hpp"

// Core domain types. Items and pools are 0-indexed here; the text formats
// and the CLI use 1-indexed labels and convert at the boundary.

namespace gt {

/// Declared parameters of a pooling design: defectives bound, surplus bound, union-size bound.
struct DesignMeta {
    std::size_t d = 1;
    std::size_t p = 1;
    std::size_t s = 0;

    friend bool operator==(const DesignMeta&, const DesignMeta&) = default;
};

/// Sorted set of distinct item indices.
class DefectiveSet {
public:
    DefectiveSet() = default;
    DefectiveSet(std::initializer_list<std::size_t> members);
    explicit DefectiveSet(std::vector<std::size_t> members);

    /// Builds from 1-indexed labels, as they appear in files and on the command line.
    static DefectiveSet from_labels(std::span<const std::size_t> labels);

    const std::vector<std::size_t>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(std::size_t item) const noexcept;

    /// Throws DomainError unless every member is < n.
    void check_within(std::size_t n) const;

    std::vector<std::size_t> labels() const;

    friend bool operator==(const DefectiveSet&, const DefectiveSet&) = default;

private:
    std::vector<std::size_t> members_;
};

/**
 * A t x n binary incidence matrix. Column j is the characteristic vector of
 * the family member F_j over the ground set of pools; item j belongs to
 * pool i iff bit i of column j is set.
 */
class Design {
public:
    Design(std::size_t t, std::vector<BitVec> columns, std::optional<DesignMeta> meta = std::nullopt);

    /// Rows as '0'/'1' strings of length n (row i = pool i membership).
    static Design from_rows(const std::vector<std::string>& rows, std::optional<DesignMeta> meta = std::nullopt);
    /// Columns as '0'/'1' strings of length t.
    static Design from_column_strings(const std::vector<std::string>& columns,
                                      std::optional<DesignMeta> meta = std::nullopt);
    static Design identity(std::size_t n);

    std::size_t t() const noexcept { return t_; }
    std::size_t n() const noexcept { return columns_.size(); }
    const BitVec& column(std::size_t j) const { return columns_.at(j); }
    const std::vector<BitVec>& columns() const noexcept { return columns_; }
    const std::optional<DesignMeta>& meta() const noexcept { return meta_; }
    void set_meta(std::optional<DesignMeta> meta) { meta_ = meta; }

    bool entry(std::size_t pool, std::size_t item) const { return columns_.at(item).test(pool); }

    /// Items contained in the given pool, ascending.
    std::vector<std::size_t> pool(std::size_t i) const;

    friend bool operator==(const Design&, const Design&) = default;

private:
    std::size_t t_;
    std::vector<BitVec> columns_;
    std::optional<DesignMeta> meta_;
};

/// Outcome bits of the t pools; the OR of the defective columns.
struct ResponseVector {
    BitVec bits;

    std::size_t weight() const noexcept { return bits.count(); }
    friend bool operator==(const ResponseVector&, const ResponseVector&) = default;
};

struct TestStep {
    std::vector<std::size_t> pool;
    bool response = false;
};

/// Ordered record of adaptive tests with running counters.
class Transcript {
public:
    explicit Transcript(bool record_steps = true) : record_steps_(record_steps) {}

    void append(std::span<const std::size_t> pool, bool response);

    std::size_t tests() const noexcept { return tests_; }
    std::size_t yeses() const noexcept { return yeses_; }
    const std::vector<TestStep>& steps() const noexcept { return steps_; }
    bool records_steps() const noexcept { return record_steps_; }

private:
    bool record_steps_;
    std::vector<TestStep> steps_;
    std::size_t tests_ = 0;
    std::size_t yeses_ = 0;
};

ResponseVector respond(const Design& design, const DefectiveSet& defectives);

std::size_t yes_count(const Design& design, const DefectiveSet& defectives);

/// OR of an arbitrary list of columns (no range check beyond at()).
BitVec union_of(const Design& design, std::span<const std::size_t> items);

// Design text format:
//   line 1: "t n"
//   optional line 2: "# d=<d> p=<p> s=<s>"
//   t lines of n characters from {0,1}
// Every line, including the last, ends with '\n'.

Design parse_design(const std::string& text);
std::string format_design(const Design& design);
Design read_design_file(const std::string& path);
void write_design_file(const Design& design, const std::string& path);

}  // namespace gt

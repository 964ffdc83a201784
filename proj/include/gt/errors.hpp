#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace gt {

/// Argument outside an operation's domain (index out of range, bad parameter).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Malformed design or code file.
class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// No correct strategy exists for the requested budget.
class InfeasibleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Violated internal contract, e.g. an oracle answer inconsistent with OR semantics.
class InternalFault : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Exhaustive enumeration would exceed the configured work cap.
class WorkCapExceeded : public std::runtime_error {
public:
    WorkCapExceeded(const std::string& what, double work, double cap)
        : std::runtime_error(what), work_(work), cap_(cap) {}

    double work() const noexcept { return work_; }
    double cap() const noexcept { return cap_; }

private:
    double work_;
    double cap_;
};

/// Linear code search did not reach the target distance.
class ConstructionError : public std::runtime_error {
public:
    ConstructionError(const std::string& what, int best_distance)
        : std::runtime_error(what), best_distance_(best_distance) {}

    int best_distance() const noexcept { return best_distance_; }

private:
    int best_distance_;
};

/// The randomized sampler used up its attempts without a verified design.
class SamplingError : public std::runtime_error {
public:
    SamplingError(const std::string& what, std::vector<std::string> attempt_log)
        : std::runtime_error(what), log_(std::move(attempt_log)) {}

    const std::vector<std::string>& attempt_log() const noexcept { return log_; }

private:
    std::vector<std::string> log_;
};

/// No subset of at most d items explains the observed response.
class InconsistentResponse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two distinct small subsets explain the same response.
class NotSeparable : public std::runtime_error {
public:
    NotSeparable(const std::string& what, std::vector<std::size_t> first, std::vector<std::size_t> second)
        : std::runtime_error(what), first_(std::move(first)), second_(std::move(second)) {}

    const std::vector<std::size_t>& first() const noexcept { return first_; }
    const std::vector<std::size_t>& second() const noexcept { return second_; }

private:
    std::vector<std::size_t> first_;
    std::vector<std::size_t> second_;
};

}  // namespace gt

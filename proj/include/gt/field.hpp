#pragma once

#include <cstdint>
#include <vector>

// GF(q) for prime powers q <= 2^16. An element is stored as the index
// sum c_i p^i of its coefficient vector in the polynomial basis modulo the
// Conway polynomial C_{p,n}; for prime q this is the residue itself.

namespace gt::gf {

using Elem = std::uint32_t;

/// Coefficients c_0..c_n (low degree first) of the Conway polynomial C_{p,n}.
/// Computed on first use and memoized; throws DomainError if p is not prime.
const std::vector<std::uint32_t>& conway_polynomial(std::uint32_t p, std::uint32_t n);

class Field {
public:
    /// Throws DomainError unless q is a prime power in [2, 65536].
    static Field make(std::uint32_t q);

    std::uint32_t q() const noexcept { return q_; }
    std::uint32_t characteristic() const noexcept { return p_; }
    std::uint32_t degree() const noexcept { return n_; }
    const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

    /// The generator of the multiplicative group used for the log tables
    /// (x for extension fields, the least primitive root for prime fields).
    Elem generator() const noexcept { return exp_[1]; }

    Elem add(Elem a, Elem b) const noexcept;
    Elem neg(Elem a) const noexcept;
    Elem sub(Elem a, Elem b) const noexcept { return add(a, neg(b)); }
    Elem mul(Elem a, Elem b) const noexcept
    {
        if (a == 0 || b == 0)
            return 0;
        return exp_[log_[a] + log_[b]];
    }
    /// Throws DomainError for a = 0.
    Elem inv(Elem a) const;
    Elem pow(Elem a, std::uint64_t e) const noexcept;

private:
    Field() = default;

    std::uint32_t q_ = 0, p_ = 0, n_ = 0;
    std::vector<std::uint32_t> modulus_;
    std::vector<Elem> exp_;           // 2(q-1) entries so log sums need no reduction
    std::vector<std::uint32_t> log_;  // log_[0] unused
};

}  // namespace gt::gf

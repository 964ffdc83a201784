#include "gt/field.hpp"

#include <map>
#include <mutex>
#include <utility>

#include "gt/errors.hpp"

namespace gt::gf {

namespace {

bool is_prime(std::uint32_t p)
{
    if (p < 2)
        return false;
    for (std::uint32_t f = 2; f * f <= p; ++f)
        if (p % f == 0)
            return false;
    return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t x)
{
    std::vector<std::uint64_t> out;
    for (std::uint64_t f = 2; f * f <= x; ++f) {
        if (x % f == 0) {
            out.push_back(f);
            while (x % f == 0)
                x /= f;
        }
    }
    if (x > 1)
        out.push_back(x);
    return out;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e)
{
    std::uint64_t r = 1;
    while (e--)
        r *= b;
    return r;
}

// Residues mod a monic polynomial f of degree n over GF(p); n coefficients, low first.
class PolyRing {
public:
    PolyRing(std::uint32_t p, const std::vector<std::uint32_t>& f) : p_(p), f_(f), n_(f.size() - 1) {}

    using Poly = std::vector<std::uint32_t>;

    Poly one() const
    {
        Poly r(n_, 0);
        return reduce_small(r, 1);
    }

    Poly x() const
    {
        Poly r(n_ + 1, 0);
        r[1] = 1;
        return reduce(r);
    }

    Poly mul(const Poly& a, const Poly& b) const
    {
        Poly prod(2 * n_ - 1, 0);
        for (std::size_t i = 0; i < n_; ++i) {
            if (a[i] == 0)
                continue;
            for (std::size_t j = 0; j < n_; ++j)
                prod[i + j] = static_cast<std::uint32_t>((prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_);
        }
        return reduce(prod);
    }

    Poly add(const Poly& a, const Poly& b) const
    {
        Poly r(n_);
        for (std::size_t i = 0; i < n_; ++i)
            r[i] = (a[i] + b[i]) % p_;
        return r;
    }

    Poly pow(Poly base, std::uint64_t e) const
    {
        Poly r = one();
        while (e) {
            if (e & 1)
                r = mul(r, base);
            base = mul(base, base);
            e >>= 1;
        }
        return r;
    }

    Poly constant(std::uint32_t c) const { return reduce_small(Poly(n_, 0), c % p_); }

    static bool is_zero(const Poly& a)
    {
        for (auto c : a)
            if (c)
                return false;
        return true;
    }

    bool is_one(const Poly& a) const { return a == one(); }

private:
    Poly reduce_small(Poly r, std::uint32_t c) const
    {
        r[0] = c;
        return r;
    }

    // Reduces a polynomial of any degree modulo f, returning n coefficients.
    Poly reduce(Poly a) const
    {
        for (std::size_t deg = a.size(); deg-- > n_;) {
            const std::uint32_t top = a[deg];
            if (top == 0)
                continue;
            a[deg] = 0;
            for (std::size_t i = 0; i < n_; ++i) {
                const std::uint64_t sub = std::uint64_t{top} * f_[i] % p_;
                a[deg - n_ + i] = static_cast<std::uint32_t>((a[deg - n_ + i] + p_ - sub) % p_);
            }
        }
        a.resize(n_);
        return a;
    }

    std::uint32_t p_;
    std::vector<std::uint32_t> f_;
    std::size_t n_;
};

bool is_primitive(std::uint32_t p, std::uint32_t n, const std::vector<std::uint32_t>& f)
{
    if (f[0] == 0)
        return false;
    const PolyRing ring(p, f);
    const std::uint64_t order = ipow(p, n) - 1;
    const auto x = ring.x();
    if (!ring.is_one(ring.pow(x, order)))
        return false;
    for (auto r : prime_factors(order))
        if (ring.is_one(ring.pow(x, order / r)))
            return false;
    return true;
}

std::recursive_mutex conway_mutex;
std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<std::uint32_t>> conway_memo;

}  // namespace

const std::vector<std::uint32_t>& conway_polynomial(std::uint32_t p, std::uint32_t n)
{
    if (!is_prime(p))
        throw DomainError("characteristic " + std::to_string(p) + " is not prime");
    if (n < 1 || n > 16 || ipow(p, n) > 65536)
        throw DomainError("field order outside supported range");

    std::lock_guard lock(conway_mutex);
    if (auto it = conway_memo.find({p, n}); it != conway_memo.end())
        return it->second;

    std::vector<std::pair<std::uint32_t, std::vector<std::uint32_t>>> subfields;
    for (std::uint32_t m = 1; m < n; ++m)
        if (n % m == 0)
            subfields.emplace_back(m, conway_polynomial(p, m));

    // Candidates f = x^n + sum_i (-1)^{n-i} a_i x^i in lexicographic order of (a_{n-1}, ..., a_0).
    const std::uint64_t total = ipow(p, n);
    std::vector<std::uint32_t> f(n + 1, 0);
    f[n] = 1;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::uint64_t rest = idx;
        for (std::uint32_t i = 0; i < n; ++i) {  // a_0 is the least significant digit
            const auto a = static_cast<std::uint32_t>(rest % p);
            rest /= p;
            f[i] = ((n - i) % 2 == 0) ? a : (p - a) % p;
        }
        if (!is_primitive(p, n, f))
            continue;
        const PolyRing ring(p, f);
        bool compatible = true;
        for (const auto& [m, cm] : subfields) {
            const auto y = ring.pow(ring.x(), (total - 1) / (ipow(p, m) - 1));
            auto acc = ring.constant(0);
            for (std::size_t i = cm.size(); i-- > 0;)
                acc = ring.add(ring.mul(acc, y), ring.constant(cm[i]));
            if (!PolyRing::is_zero(acc)) {
                compatible = false;
                break;
            }
        }
        if (compatible)
            return conway_memo.emplace(std::make_pair(p, n), f).first->second;
    }
    throw InternalFault("no Conway polynomial found");
}

Field Field::make(std::uint32_t q)
{
    if (q < 2 || q > 65536)
        throw DomainError("field order must lie in [2, 65536]");
    std::uint32_t p = 2;
    while (q % p != 0)
        ++p;
    std::uint32_t n = 0;
    for (std::uint32_t r = q; r > 1; r /= p) {
        if (r % p != 0)
            throw DomainError(std::to_string(q) + " is not a prime power");
        ++n;
    }

    Field F;
    F.q_ = q;
    F.p_ = p;
    F.n_ = n;
    F.modulus_ = conway_polynomial(p, n);

    F.exp_.assign(2 * (q - 1), 0);
    F.log_.assign(q, 0);
    // walk powers of x as coefficient vectors
    std::vector<std::uint32_t> cur(n, 0);
    cur[0] = 1;
    for (std::uint32_t e = 0; e < q - 1; ++e) {
        Elem idx = 0;
        for (std::uint32_t i = n; i-- > 0;)
            idx = idx * p + cur[i];
        F.exp_[e] = idx;
        F.log_[idx] = e;
        // cur *= x mod f
        const std::uint32_t top = cur[n - 1];
        for (std::uint32_t i = n - 1; i > 0; --i)
            cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::uint32_t i = 0; i < n; ++i)
            cur[i] = static_cast<std::uint32_t>((cur[i] + p - std::uint64_t{top} * F.modulus_[i] % p) % p);
    }
    for (std::uint32_t e = q - 1; e < 2 * (q - 1); ++e)
        F.exp_[e] = F.exp_[e - (q - 1)];
    return F;
}

Elem Field::add(Elem a, Elem b) const noexcept
{
    if (p_ == 2)
        return a ^ b;
    if (n_ == 1)
        return (a + b) % p_;
    Elem r = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        r += ((a % p_ + b % p_) % p_) * scale;
        a /= p_;
        b /= p_;
        scale *= p_;
    }
    return r;
}

Elem Field::neg(Elem a) const noexcept
{
    if (p_ == 2)
        return a;
    Elem r = 0, scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
        r += ((p_ - a % p_) % p_) * scale;
        a /= p_;
        scale *= p_;
    }
    return r;
}

Elem Field::inv(Elem a) const
{
    if (a == 0)
        throw DomainError("zero has no inverse");
    return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t e) const noexcept
{
    if (e == 0)
        return 1;
    if (a == 0)
        return 0;
    return exp_[static_cast<std::uint64_t>(log_[a]) * (e % (q_ - 1)) % (q_ - 1)];
}

}  // namespace gt::gf

#include "gt/codes.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <sstream>

#include "gt/combinatorics.hpp"
#include "gt/errors.hpp"
#include "gt/parallel.hpp"

namespace gt::gf {

namespace {

constexpr std::uint64_t kCodewordCap = std::uint64_t{1} << 20;

std::uint64_t checked_size(std::uint32_t q, std::size_t k)
{
    std::uint64_t size = 1;
    for (std::size_t i = 0; i < k; ++i) {
        size *= q;
        if (size > kCodewordCap)
            throw DomainError("q^k exceeds the exhaustive verification cap 2^20");
    }
    return size;
}

std::vector<Elem> digits(std::uint64_t index, std::uint32_t q, std::size_t k)
{
    std::vector<Elem> u(k);
    for (std::size_t i = 0; i < k; ++i) {
        u[i] = static_cast<Elem>(index % q);
        index /= q;
    }
    return u;
}

Elem inner(const Field& F, const std::vector<Elem>& u, const std::vector<Elem>& col)
{
    Elem acc = 0;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc = F.add(acc, F.mul(u[i], col[i]));
    return acc;
}

// Projective messages: last nonzero digit is 1. Grouped by that position r,
// group r holds q^r messages whose lower digits spell v.
struct Projective {
    std::vector<std::vector<Elem>> msgs;
};

Projective projective_messages(std::uint32_t q, std::size_t k)
{
    Projective P;
    std::uint64_t group = 1;
    for (std::size_t r = 0; r < k; ++r) {
        for (std::uint64_t v = 0; v < group; ++v) {
            auto u = digits(v, q, k);
            u[r] = 1;
            P.msgs.push_back(std::move(u));
        }
        group *= q;
    }
    return P;
}

Generator greedy_generator(const Field& F, std::size_t m, std::size_t k, std::size_t D)
{
    const std::uint32_t q = F.q();
    // T[U][b] = q^{m-U} * sum_{j < b} C(U,j) (q-1)^j: scaled probability that U
    // uniform coordinates contribute fewer than b nonzeros.
    std::vector<std::vector<BigInt>> T(m + 1, std::vector<BigInt>(D + 2, 0));
    for (std::size_t U = 0; U <= m; ++U) {
        const BigInt scale = boost::multiprecision::pow(BigInt(q), static_cast<unsigned>(m - U));
        BigInt acc = 0;
        BigInt qpow = 1;
        for (std::size_t b = 1; b <= D + 1; ++b) {
            const std::size_t j = b - 1;
            if (j <= U) {
                acc += binomial(U, j) * qpow;
                qpow *= (q - 1);
            }
            T[U][b] = acc * scale;
        }
    }
    auto lookup = [&](std::size_t U, std::ptrdiff_t b) -> const BigInt& {
        static const BigInt zero = 0;
        if (b <= 0)
            return zero;
        return T[U][static_cast<std::size_t>(b)];
    };

    Generator G(k, std::vector<Elem>(m, 0));
    std::vector<std::vector<std::size_t>> w(k);
    std::vector<std::vector<std::vector<Elem>>> group(k);
    {
        std::uint64_t size = 1;
        for (std::size_t r = 0; r < k; ++r) {
            w[r].assign(size, 0);
            for (std::uint64_t v = 0; v < size; ++v)
                group[r].push_back(digits(v, q, r));
            size *= q;
        }
    }

    std::vector<BigInt> delta(q);
    for (std::size_t c = 0; c < m; ++c) {
        const std::size_t U = m - c - 1;
        for (std::size_t r = 0; r < k; ++r) {
            const auto& msgs = group[r];
            std::vector<Elem> partial(msgs.size());
            for (auto& x : delta)
                x = 0;
            for (std::size_t v = 0; v < msgs.size(); ++v) {
                Elem acc = 0;
                for (std::size_t i = 0; i < r; ++i)
                    acc = F.add(acc, F.mul(msgs[v][i], G[i][c]));
                partial[v] = acc;
                const auto b = static_cast<std::ptrdiff_t>(D) - static_cast<std::ptrdiff_t>(w[r][v]);
                // coordinate is zero exactly when a = -partial
                delta[F.neg(acc)] += lookup(U, b) - lookup(U, b - 1);
            }
            // the common part (every coordinate nonzero) is the same for all a
            Elem best = 0;
            for (Elem a = 1; a < q; ++a)
                if (delta[a] < delta[best])
                    best = a;
            G[r][c] = best;
            for (std::size_t v = 0; v < msgs.size(); ++v)
                if (F.add(partial[v], best) != 0)
                    ++w[r][v];
        }
    }
    return G;
}

struct SearchState {
    const Field& F;
    std::size_t m, k, D;
    std::uint64_t cap;
    std::uint64_t nodes = 0;
    std::size_t best = 0;
    std::vector<std::vector<Elem>> msgs;
    std::vector<std::vector<Elem>> cols;  // nonzero column vectors, by index
    std::vector<std::size_t> weight;
    std::vector<std::size_t> chosen;
    bool found = false;
    bool exhausted_budget = false;
};

void dfs(SearchState& S, std::size_t depth, std::size_t from)
{
    if (S.found || S.exhausted_budget)
        return;
    if (++S.nodes > S.cap) {
        S.exhausted_budget = true;
        return;
    }
    if (depth == S.m) {
        const auto dist = *std::min_element(S.weight.begin(), S.weight.end());
        S.best = std::max(S.best, dist);
        if (dist >= S.D)
            S.found = true;
        return;
    }
    const std::size_t remaining = S.m - depth;
    for (std::size_t ci = from; ci < S.cols.size() && !S.found && !S.exhausted_budget; ++ci) {
        const auto& col = S.cols[ci];
        std::vector<std::size_t> hit;
        bool ok = true;
        for (std::size_t u = 0; u < S.msgs.size(); ++u) {
            const bool nz = inner(S.F, S.msgs[u], col) != 0;
            if (nz)
                hit.push_back(u);
            if (S.weight[u] + (nz ? 1 : 0) + (remaining - 1) < S.D)
                ok = false;
        }
        if (!ok)
            continue;
        for (auto u : hit)
            ++S.weight[u];
        S.chosen.push_back(ci);
        dfs(S, depth + 1, ci);
        if (S.found)
            return;
        S.chosen.pop_back();
        for (auto u : hit)
            --S.weight[u];
    }
}

}  // namespace

double qary_entropy(double q, double x)
{
    if (!(x > 0 && x < 1))
        throw DomainError("q-ary entropy needs 0 < x < 1");
    if (q < 2)
        throw DomainError("q-ary entropy needs q >= 2");
    const double lq = std::log(q);
    return x * std::log((q - 1) / x) / lq + (1 - x) * std::log(1 / (1 - x)) / lq;
}

std::size_t gv_dimension(std::uint32_t q, std::size_t m, double delta)
{
    // the closed end gives H_q = 1, hence dimension 0
    if (!(delta > 0 && delta <= 1 - 1.0 / q))
        throw DomainError("delta must lie in (0, 1 - 1/q]");
    const double k = std::floor((1 - qary_entropy(q, delta)) * static_cast<double>(m) + 1e-12);
    return static_cast<std::size_t>(std::max(0.0, k));
}

std::size_t distance_target(double delta, std::size_t m)
{
    if (!(delta >= 0 && delta <= 1))
        throw DomainError("delta must lie in [0, 1]");
    return static_cast<std::size_t>(std::ceil(delta * static_cast<double>(m) - 1e-9));
}

std::uint64_t LinearCode::size() const
{
    std::uint64_t s = 1;
    for (std::size_t i = 0; i < k; ++i)
        s *= field.q();
    return s;
}

std::vector<Elem> LinearCode::codeword(std::uint64_t index) const
{
    const auto u = digits(index, field.q(), k);
    std::vector<Elem> w(m, 0);
    for (std::size_t j = 0; j < m; ++j)
        for (std::size_t i = 0; i < k; ++i)
            w[j] = field.add(w[j], field.mul(u[i], generator[i][j]));
    return w;
}

std::size_t minimum_distance(const Field& F, const Generator& G, std::size_t m)
{
    const std::size_t k = G.size();
    const std::uint64_t total = checked_size(F.q(), k);
    if (total < 2)
        return m;
    constexpr std::uint64_t chunk = 4096;
    const std::uint64_t chunks = (total - 1 + chunk - 1) / chunk;
    std::vector<std::size_t> best(chunks, m);
    parallel_for(chunks, default_workers(), [&](std::size_t c) {
        std::vector<Elem> word(m);
        const std::uint64_t lo = 1 + c * chunk, hi = std::min(total, lo + chunk);
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            const auto u = digits(idx, F.q(), k);
            std::size_t weight = 0;
            for (std::size_t j = 0; j < m; ++j) {
                Elem acc = 0;
                for (std::size_t i = 0; i < k; ++i)
                    acc = F.add(acc, F.mul(u[i], G[i][j]));
                weight += acc != 0;
            }
            best[c] = std::min(best[c], weight);
        }
    });
    return *std::min_element(best.begin(), best.end());
}

LinearCode construct_code(std::uint32_t q, std::size_t m, std::size_t k, double delta, const ConstructOptions& opts)
{
    return construct_code_with_distance(q, m, k, distance_target(delta, m), opts);
}

LinearCode construct_code_with_distance(std::uint32_t q, std::size_t m, std::size_t k, std::size_t D,
                                        const ConstructOptions& opts)
{
    if (m < 1 || k < 1)
        throw DomainError("code needs m >= 1 and k >= 1");
    if (D > m)
        throw DomainError("distance target exceeds the length");
    checked_size(q, k);
    const Field F = Field::make(q);

    LinearCode code{F, m, k, greedy_generator(F, m, k, D), 0};
    code.min_dist = minimum_distance(F, code.generator, m);
    if (code.min_dist >= D)
        return code;

    std::size_t best = code.min_dist;
    if (D <= m - k + 1) {  // otherwise ruled out by the Singleton bound
        SearchState S{F, m, k, D, opts.node_cap, 0, 0, {}, {}, {}, {}, false, false};
        S.msgs = projective_messages(q, k).msgs;
        const std::uint64_t total = checked_size(q, k);
        for (std::uint64_t idx = 1; idx < total; ++idx)
            S.cols.push_back(digits(idx, q, k));
        S.weight.assign(S.msgs.size(), 0);
        dfs(S, 0, 0);
        best = std::max(best, S.best);
        if (S.found) {
            Generator G(k, std::vector<Elem>(m));
            for (std::size_t j = 0; j < m; ++j)
                for (std::size_t i = 0; i < k; ++i)
                    G[i][j] = S.cols[S.chosen[j]][i];
            const auto dist = minimum_distance(F, G, m);
            if (dist < D)
                throw InternalFault("column search result failed verification");
            return LinearCode{F, m, k, std::move(G), dist};
        }
    }
    throw ConstructionError("no [" + std::to_string(m) + "," + std::to_string(k) + "," + std::to_string(D) + "]_" +
                                std::to_string(q) + " code found; best distance " + std::to_string(best),
                            static_cast<int>(best));
}

std::string format_code(const LinearCode& code)
{
    std::ostringstream out;
    out << code.field.q() << ' ' << code.m << ' ' << code.k << ' ' << code.min_dist << '\n';
    for (const auto& row : code.generator) {
        for (std::size_t j = 0; j < row.size(); ++j)
            out << (j ? " " : "") << row[j];
        out << '\n';
    }
    return out.str();
}

LinearCode parse_code(const std::string& text)
{
    std::istringstream in(text);
    std::uint64_t q = 0, m = 0, k = 0, dist = 0;
    if (!(in >> q >> m >> k >> dist))
        throw ParseError("code header must be 'q m k dist'");
    if (q < 2 || q > 65536 || m < 1 || k < 1)
        throw ParseError("code header out of range");
    Field F = Field::make(static_cast<std::uint32_t>(q));
    Generator G(k, std::vector<Elem>(m));
    for (auto& row : G)
        for (auto& x : row) {
            std::uint64_t v;
            if (!(in >> v))
                throw ParseError("generator matrix truncated");
            if (v >= q)
                throw ParseError("field element " + std::to_string(v) + " out of range");
            x = static_cast<Elem>(v);
        }
    std::string extra;
    if (in >> extra)
        throw ParseError("trailing data after generator matrix");
    const auto actual = minimum_distance(F, G, m);
    if (actual != dist)
        throw ParseError("declared distance " + std::to_string(dist) + " but the code has " + std::to_string(actual));
    return LinearCode{std::move(F), m, k, std::move(G), actual};
}

}  // namespace gt::gf

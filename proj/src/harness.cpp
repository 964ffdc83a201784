#include "gt/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "gt/adaptive.hpp"
#include "gt/bounds.hpp"
#include "gt/combinatorics.hpp"
#include "gt/designs.hpp"
#include "gt/errors.hpp"
#include "gt/parallel.hpp"
#include "gt/pipeline.hpp"

namespace gt::harness {

using nlohmann::json;

std::string to_string(SweepKind k)
{
    switch (k) {
    case SweepKind::adaptive: return "adaptive";
    case SweepKind::nonadaptive: return "nonadaptive";
    case SweepKind::twostage: return "twostage";
    }
    return "?";
}

SweepKind sweep_kind_from(const std::string& s)
{
    if (s == "adaptive")
        return SweepKind::adaptive;
    if (s == "nonadaptive")
        return SweepKind::nonadaptive;
    if (s == "twostage")
        return SweepKind::twostage;
    throw DomainError("unknown sweep kind '" + s + "'");
}

std::string to_string(CheckKind k)
{
    switch (k) {
    case CheckKind::upper: return "upper";
    case CheckKind::lower: return "lower";
    case CheckKind::info: return "info";
    }
    return "?";
}

namespace {

CheckKind check_kind_from(const std::string& s)
{
    if (s == "upper")
        return CheckKind::upper;
    if (s == "lower")
        return CheckKind::lower;
    if (s == "info")
        return CheckKind::info;
    throw ParseError("unknown check kind '" + s + "'");
}

std::string trim(std::string s)
{
    const auto ws = " \t\r\n";
    const auto a = s.find_first_not_of(ws);
    if (a == std::string::npos)
        return {};
    return s.substr(a, s.find_last_not_of(ws) - a + 1);
}

std::uint64_t parse_u64(const std::string& key, const std::string& v)
{
    std::uint64_t x = 0;
    const auto* end = v.data() + v.size();
    auto [ptr, ec] = std::from_chars(v.data(), end, x);
    if (ec != std::errc{} || ptr != end)
        throw DomainError("setting '" + key + "': expected a non-negative integer, got '" + v + "'");
    return x;
}

}  // namespace

std::vector<std::uint64_t> parse_list(const std::string& key, const std::string& value)
{
    std::vector<std::uint64_t> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            continue;
        if (auto dots = item.find(".."); dots != std::string::npos) {
            const auto lo = parse_u64(key, trim(item.substr(0, dots)));
            const auto hi = parse_u64(key, trim(item.substr(dots + 2)));
            if (hi < lo || hi - lo > 100000)
                throw DomainError("setting '" + key + "': bad range '" + item + "'");
            for (auto x = lo; x <= hi; ++x)
                out.push_back(x);
        } else {
            out.push_back(parse_u64(key, item));
        }
    }
    return out;
}

void apply_setting(SweepSpec& spec, const std::string& key, const std::string& value)
{
    if (key == "kind")
        spec.kind = sweep_kind_from(value);
    else if (key == "n")
        spec.n = parse_list(key, value);
    else if (key == "d")
        spec.d = parse_list(key, value);
    else if (key == "t")
        spec.t = parse_list(key, value);
    else if (key == "p")
        spec.p = parse_list(key, value);
    else if (key == "s")
        spec.s = parse_list(key, value);
    else if (key == "f")
        spec.f = parse_list(key, value);
    else if (key == "strategy") {
        if (value != "auto" && value != "individual" && value != "staged" && value != "hwang")
            throw DomainError("unknown strategy '" + value + "'");
        spec.strategy = value;
    } else if (key == "mode") {
        if (value != "exhaustive" && value != "sampled")
            throw DomainError("mode must be exhaustive or sampled");
        spec.exhaustive = value == "exhaustive";
    } else if (key == "seed")
        spec.seed = parse_u64(key, value);
    else if (key == "trials")
        spec.trials = parse_u64(key, value);
    else if (key == "measure_cap")
        spec.measure_cap = parse_u64(key, value);
    else if (key == "work_cap")
        spec.work_cap = parse_u64(key, value);
    else if (key == "max_attempts")
        spec.max_attempts = parse_u64(key, value);
    else if (key == "workers")
        spec.workers = parse_u64(key, value);
    else if (key == "z") {
        try {
            std::size_t used = 0;
            spec.z = std::stod(value, &used);
            if (used != value.size())
                throw std::invalid_argument(value);
        } catch (const std::logic_error&) {
            throw DomainError("setting 'z': not a number '" + value + "'");
        }
    } else
        throw DomainError("unknown setting '" + key + "'");
}

std::vector<std::pair<std::string, std::string>> parse_config(const std::string& text)
{
    std::vector<std::pair<std::string, std::string>> out;
    std::stringstream ss(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (auto hash = line.find('#'); hash != std::string::npos)
            line.erase(hash);
        line = trim(line);
        if (line.empty() || line.front() == '[')
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (value.size() >= 2 && (value.front() == '"' || value.front() == '\'') && value.back() == value.front())
            value = value.substr(1, value.size() - 2);
        // TOML arrays: [1, 2, 3]
        if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
            value = value.substr(1, value.size() - 2);
        out.emplace_back(std::move(key), std::move(value));
    }
    return out;
}

std::optional<bool> evaluate_flag(CheckKind kind, double measured, std::optional<double> bound)
{
    if (!bound || kind == CheckKind::info || std::isnan(*bound))
        return std::nullopt;
    if (kind == CheckKind::upper)
        return measured <= *bound;
    if (std::isinf(*bound) && *bound > 0)
        return std::nullopt;
    return measured >= *bound;
}

bool ConformanceRow::pass() const
{
    if (status == "skipped")
        return true;
    if (status != "ok" || !correct)
        return false;
    return std::none_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass == std::optional<bool>(false); });
}

double round12(double x)
{
    if (!std::isfinite(x))
        return x;
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string format_number(double x)
{
    if (std::isinf(x))
        return x > 0 ? "+inf" : "-inf";
    if (std::isnan(x))
        return "nan";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

struct CheckSpec {
    const char* name;
    CheckKind kind;
    const char* measured_key;
};

const std::vector<const char*>& measured_keys(SweepKind kind)
{
    static const std::vector<const char*> adaptive = {"max_tests", "max_yes"};
    static const std::vector<const char*> nonadaptive = {"attempts", "max_yes"};
    static const std::vector<const char*> twostage = {"attempts", "max_candidates", "max_stage1_yes", "max_tests",
                                                      "max_yes"};
    switch (kind) {
    case SweepKind::adaptive: return adaptive;
    case SweepKind::nonadaptive: return nonadaptive;
    case SweepKind::twostage: return twostage;
    }
    return adaptive;
}

const std::vector<CheckSpec>& check_specs(SweepKind kind)
{
    static const std::vector<CheckSpec> adaptive = {
        {"yes_budget", CheckKind::upper, "max_yes"},
        {"test_budget", CheckKind::upper, "max_tests"},
        {"t_budget", CheckKind::upper, "max_tests"},
        {"tree_count", CheckKind::lower, "max_yes"},
        {"adaptive_lower", CheckKind::lower, "max_yes"},
        {"adaptive_upper", CheckKind::info, "max_yes"},
    };
    static const std::vector<CheckSpec> nonadaptive = {
        {"union_bound", CheckKind::upper, "max_yes"},
        {"nonadaptive_lower", CheckKind::lower, "max_yes"},
        {"nonadaptive_upper", CheckKind::info, "max_yes"},
        {"existence_n", CheckKind::info, "n"},
        {"failure_bound", CheckKind::info, "attempts"},
    };
    static const std::vector<CheckSpec> twostage = {
        {"candidates", CheckKind::upper, "max_candidates"},
        {"stage1_yes", CheckKind::upper, "max_stage1_yes"},
        {"total_yes", CheckKind::upper, "max_yes"},
        {"twostage_upper", CheckKind::info, "max_yes"},
    };
    switch (kind) {
    case SweepKind::adaptive: return adaptive;
    case SweepKind::nonadaptive: return nonadaptive;
    case SweepKind::twostage: return twostage;
    }
    return adaptive;
}

const char* const kParams[] = {"n", "d", "t", "p", "s", "f"};

struct Point {
    std::map<std::string, std::optional<std::uint64_t>> params;
};

std::vector<Point> grid(const SweepSpec& spec)
{
    auto axis = [](const std::vector<std::uint64_t>& v) {
        std::vector<std::optional<std::uint64_t>> out(v.begin(), v.end());
        if (out.empty())
            out.push_back(std::nullopt);
        return out;
    };
    const std::vector<std::optional<std::uint64_t>> unset{std::nullopt};
    const bool adaptive = spec.kind == SweepKind::adaptive;
    const auto ts = axis(spec.t);
    const auto ps = adaptive ? unset : axis(spec.p);
    const auto ss = adaptive ? unset : axis(spec.s);
    const auto fs = adaptive && spec.strategy == "staged" ? axis(spec.f) : unset;

    std::vector<Point> out;
    for (auto n : spec.n)
        for (auto d : spec.d)
            for (const auto& t : ts)
                for (const auto& p : ps)
                    for (const auto& s : ss)
                        for (const auto& f : fs)
                            out.push_back({{{"n", n}, {"d", d}, {"t", t}, {"p", p}, {"s", s}, {"f", f}}});
    return out;
}

void add_check(ConformanceRow& row, const CheckSpec& cs, std::optional<double> bound)
{
    Check c{cs.name, cs.kind, cs.measured_key, std::nullopt, std::nullopt};
    if (bound)
        c.bound = round12(*bound);
    double measured = 0;
    if (auto it = row.measured.find(cs.measured_key); it != row.measured.end())
        measured = static_cast<double>(it->second);
    else if (auto pt = row.params.find(cs.measured_key); pt != row.params.end() && pt->second)
        measured = static_cast<double>(*pt->second);
    c.pass = evaluate_flag(c.kind, measured, c.bound);
    row.checks.push_back(std::move(c));
}

void fill_na(ConformanceRow& row, SweepKind kind)
{
    row.checks.clear();
    for (const auto& cs : check_specs(kind))
        row.checks.push_back(Check{cs.name, cs.kind, cs.measured_key, std::nullopt, std::nullopt});
}

adaptive::MeasureMode measure_mode(const SweepSpec& spec, std::uint64_t seed, std::size_t workers)
{
    adaptive::MeasureMode m;
    m.exhaustive = spec.exhaustive;
    m.seed = seed;
    m.trials = spec.trials;
    m.cap = spec.measure_cap;
    m.workers = workers;
    return m;
}

void run_adaptive(const SweepSpec& spec, ConformanceRow& row, std::size_t inner_workers)
{
    const std::uint64_t n = *row.params["n"], d = *row.params["d"];
    const auto t = row.params["t"];
    const auto f = row.params["f"];
    if (d < 1 || d > n) {
        row.status = "skipped";
        row.note = "needs 1 <= d <= n";
        return;
    }
    adaptive::Strategy strat;
    if (spec.strategy == "individual") {
        strat = adaptive::individual();
    } else if (spec.strategy == "hwang") {
        strat = adaptive::hwang();
    } else if (spec.strategy == "staged") {
        if (!f || *f < 1) {
            row.status = "skipped";
            row.note = "staged needs f >= 1";
            return;
        }
        strat = adaptive::staged(n, d, *f);
    } else {
        if (!t) {
            row.status = "skipped";
            row.note = "auto strategy needs t";
            return;
        }
        try {
            strat = adaptive::choose_strategy(n, d, *t);
        } catch (const InfeasibleError& e) {
            row.status = "skipped";
            row.note = e.what();
            return;
        }
    }
    row.strategy = strat.name();

    const auto m = adaptive::measure_max_yes(strat, n, d, measure_mode(spec, spec.seed + row.index, inner_workers));
    row.runs = m.runs;
    row.correct = m.all_correct;
    if (m.first_failure)
        row.note = "wrong output for hidden set of size " + std::to_string(m.first_failure->size());
    row.measured["max_tests"] = m.max_tests;
    row.measured["max_yes"] = m.max_yes;

    const auto& cs = check_specs(SweepKind::adaptive);
    std::optional<double> yes_budget, test_budget;
    switch (strat.kind) {
    case adaptive::StrategyKind::individual:
        yes_budget = static_cast<double>(d);
        test_budget = static_cast<double>(n);
        break;
    case adaptive::StrategyKind::staged:
        yes_budget = static_cast<double>(strat.plan.f * d);
        test_budget = static_cast<double>(adaptive::staged_test_bound(n, d, strat.plan.f));
        break;
    case adaptive::StrategyKind::hwang:
        test_budget = static_cast<double>(ceil_log2(binomial(n, d)) + d - 1);
        break;
    }
    add_check(row, cs[0], yes_budget);
    add_check(row, cs[1], test_budget);
    add_check(row, cs[2], t ? std::optional<double>(static_cast<double>(*t)) : std::nullopt);

    bounds::BoundQuery q;
    q.n = n;
    q.d = d;
    q.t = std::max<std::uint64_t>(m.max_tests, 1);
    q.y = static_cast<double>(m.max_yes);
    const auto exact = bounds::min_yes_exact(n, d, q.t);
    add_check(row, cs[3], exact ? static_cast<double>(*exact) : std::numeric_limits<double>::infinity());
    add_check(row, cs[4], bounds::adaptive_yes_lower(q).value);
    add_check(row, cs[5], bounds::adaptive_yes_upper(q).value);
}

struct SampledPoint {
    std::uint64_t n, d, t, p, s;
};

std::optional<SampledPoint> sampled_point(ConformanceRow& row)
{
    const auto t = row.params["t"];
    if (!t) {
        row.status = "skipped";
        row.note = "needs t";
        return std::nullopt;
    }
    if (!row.params["p"])
        row.params["p"] = 1;
    if (!row.params["s"])
        row.params["s"] = *t;
    SampledPoint pt{*row.params["n"], *row.params["d"], *t, *row.params["p"], *row.params["s"]};
    if (pt.d < 1 || pt.p < 1 || pt.d > pt.n || pt.s < 1 || pt.s > pt.t) {
        row.status = "skipped";
        row.note = "needs 1 <= d <= n, p >= 1, 1 <= s <= t";
        return std::nullopt;
    }
    return pt;
}

designs::SampleResult sample_for(const SweepSpec& spec, const SampledPoint& pt, const ConformanceRow& row,
                                 std::size_t inner_workers)
{
    designs::SamplerConfig cfg;
    cfg.t = pt.t;
    cfg.n = pt.n;
    cfg.d = pt.d;
    cfg.p = pt.p;
    cfg.s = pt.s;
    cfg.z = spec.z;
    cfg.seed = spec.seed + row.index;
    cfg.max_attempts = spec.max_attempts;
    verify::VerifyOptions vo;
    vo.work_cap = spec.work_cap;
    vo.workers = inner_workers;
    return designs::sample_design(cfg, vo);
}

void run_nonadaptive(const SweepSpec& spec, ConformanceRow& row, std::size_t inner_workers)
{
    const auto pt = sampled_point(row);
    if (!pt)
        return;
    row.strategy = "sampled-cff";
    const auto sample = sample_for(spec, *pt, row, inner_workers);
    row.measured["attempts"] = sample.attempts;

    // max yes_count over hidden sets of size <= d is the largest d-union
    verify::VerifyOptions vo;
    vo.work_cap = spec.work_cap;
    const auto [lo, hi] = designs::union_weight_range(sample.design, pt->d, vo);
    (void)lo;
    row.runs = subsets_up_to_sat(pt->n, pt->d);
    row.correct = true;
    row.measured["max_yes"] = hi;

    const auto& cs = check_specs(SweepKind::nonadaptive);
    bounds::BoundQuery q;
    q.n = pt->n;
    q.d = pt->d;
    q.t = pt->t;
    q.y = static_cast<double>(hi);
    q.p = pt->p;
    q.s = pt->s;
    add_check(row, cs[0], static_cast<double>(pt->s));
    add_check(row, cs[1], bounds::nonadaptive_yes_lower(q).value);
    add_check(row, cs[2], bounds::nonadaptive_yes_upper(q).value);
    add_check(row, cs[3], bounds::cff_pd_exists(q).value);
    add_check(row, cs[4], bounds::sampler_failure_bound(pt->t, pt->n, pt->d, pt->p, pt->s));
}

void run_twostage(const SweepSpec& spec, ConformanceRow& row, std::size_t inner_workers)
{
    const auto pt = sampled_point(row);
    if (!pt)
        return;
    row.strategy = "two-stage";
    auto sample = sample_for(spec, *pt, row, inner_workers);
    row.measured["attempts"] = sample.attempts;
    verify::VerifyOptions vo;
    vo.work_cap = spec.work_cap;
    vo.workers = inner_workers;
    const auto cert = pipeline::certify(std::move(sample.design), pt->p, pt->d, pt->s, vo);
    const auto sum = pipeline::measure_two_stage(cert, pt->d, measure_mode(spec, spec.seed + row.index, inner_workers));
    row.runs = sum.runs;
    row.correct = sum.all_correct;
    row.measured["max_candidates"] = sum.max_candidates;
    row.measured["max_stage1_yes"] = sum.max_stage1_yeses;
    row.measured["max_tests"] = sum.max_tests;
    row.measured["max_yes"] = sum.max_total_yeses;

    const auto& cs = check_specs(SweepKind::twostage);
    add_check(row, cs[0], static_cast<double>(pt->p + pt->d - 1));
    add_check(row, cs[1], static_cast<double>(pt->s));
    add_check(row, cs[2], static_cast<double>(pt->s + pt->d));
    std::optional<double> theorem;
    bounds::BoundQuery q;
    q.n = pt->n;
    q.d = pt->d;
    q.t = std::max<std::uint64_t>(sum.max_tests, 1);
    q.y = static_cast<double>(sum.max_total_yeses);
    q.p = pt->p;
    try {
        theorem = bounds::twostage_yes_upper(q).value;
    } catch (const DomainError&) {
    }
    add_check(row, cs[3], theorem);
}

}  // namespace

Table sweep(const SweepSpec& spec)
{
    const auto points = grid(spec);
    Table table(points.size());
    const std::size_t workers = spec.workers ? spec.workers : default_workers();
    const std::size_t inner = points.size() > 1 ? 1 : workers;
    parallel_for(points.size(), std::min(workers, std::max<std::size_t>(points.size(), 1)), [&](std::size_t i) {
        ConformanceRow& row = table[i];
        row.index = i;
        row.params = points[i].params;
        try {
            switch (spec.kind) {
            case SweepKind::adaptive: run_adaptive(spec, row, inner); break;
            case SweepKind::nonadaptive: run_nonadaptive(spec, row, inner); break;
            case SweepKind::twostage: run_twostage(spec, row, inner); break;
            }
        } catch (const std::exception& e) {
            row.status = "error";
            row.correct = false;
            row.note = e.what();
            row.measured.clear();
        }
        if (row.status != "ok")
            fill_na(row, spec.kind);
        for (const char* key : measured_keys(spec.kind))
            row.measured.try_emplace(key, 0);
    });
    return table;
}

std::vector<std::string> csv_header(SweepKind kind)
{
    std::vector<std::string> h(std::begin(kParams), std::end(kParams));
    for (const char* s : {"strategy", "status", "runs", "correct"})
        h.emplace_back(s);
    for (const char* k : measured_keys(kind))
        h.emplace_back(k);
    for (const auto& cs : check_specs(kind)) {
        h.push_back(std::string(cs.name) + "_bound");
        h.push_back(std::string(cs.name) + "_pass");
    }
    h.emplace_back("pass");
    h.emplace_back("note");
    return h;
}

namespace {

std::string csv_field(std::string s)
{
    std::replace_if(s.begin(), s.end(), [](char c) { return c == ',' || c == '\n' || c == '\r' || c == '"'; }, ';');
    return s;
}

std::string flag_text(const std::optional<bool>& f)
{
    return f ? (*f ? "pass" : "fail") : "n/a";
}

}  // namespace

void write_csv(std::ostream& os, SweepKind kind, const Table& table)
{
    const auto header = csv_header(kind);
    for (std::size_t i = 0; i < header.size(); ++i)
        os << (i ? "," : "") << header[i];
    os << '\n';
    for (const auto& row : table) {
        std::vector<std::string> f;
        for (const char* p : kParams) {
            auto it = row.params.find(p);
            f.push_back(it != row.params.end() && it->second ? std::to_string(*it->second) : "");
        }
        f.push_back(csv_field(row.strategy));
        f.push_back(row.status);
        f.push_back(std::to_string(row.runs));
        f.push_back(row.correct ? "true" : "false");
        for (const char* k : measured_keys(kind)) {
            auto it = row.measured.find(k);
            f.push_back(it != row.measured.end() ? std::to_string(it->second) : "");
        }
        for (const auto& cs : check_specs(kind)) {
            auto it = std::find_if(row.checks.begin(), row.checks.end(), [&](const Check& c) { return c.name == cs.name; });
            if (it == row.checks.end()) {
                f.emplace_back("");
                f.emplace_back("n/a");
                continue;
            }
            f.push_back(it->bound ? format_number(*it->bound) : "");
            f.push_back(flag_text(it->pass));
        }
        f.push_back(row.pass() ? "true" : "false");
        f.push_back(csv_field(row.note));
        for (std::size_t i = 0; i < f.size(); ++i)
            os << (i ? "," : "") << f[i];
        os << '\n';
    }
}

namespace {

json number_json(double x)
{
    if (std::isinf(x))
        return x > 0 ? "+inf" : "-inf";
    return round12(x);
}

double number_from(const json& j)
{
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "+inf")
            return std::numeric_limits<double>::infinity();
        if (s == "-inf")
            return -std::numeric_limits<double>::infinity();
        throw ParseError("bad number '" + s + "'");
    }
    return j.get<double>();
}

}  // namespace

std::string table_to_json(const Table& table)
{
    json arr = json::array();
    for (const auto& row : table) {
        json params = json::object();
        for (const auto& [k, v] : row.params)
            params[k] = v ? json(*v) : json(nullptr);
        json checks = json::array();
        for (const auto& c : row.checks)
            checks.push_back({{"name", c.name},
                              {"kind", to_string(c.kind)},
                              {"measured_key", c.measured_key},
                              {"bound", c.bound ? number_json(*c.bound) : json(nullptr)},
                              {"pass", c.pass ? json(*c.pass) : json(nullptr)}});
        arr.push_back({{"index", row.index},
                       {"params", params},
                       {"strategy", row.strategy},
                       {"status", row.status},
                       {"note", row.note},
                       {"runs", row.runs},
                       {"correct", row.correct},
                       {"measured", row.measured},
                       {"checks", checks},
                       {"pass", row.pass()}});
    }
    return arr.dump(2) + "\n";
}

Table table_from_json(const std::string& text)
{
    Table out;
    try {
        const json arr = json::parse(text);
        for (const auto& j : arr) {
            ConformanceRow row;
            row.index = j.at("index").get<std::size_t>();
            for (const auto& [k, v] : j.at("params").items())
                row.params[k] = v.is_null() ? std::nullopt : std::optional<std::uint64_t>(v.get<std::uint64_t>());
            row.strategy = j.at("strategy").get<std::string>();
            row.status = j.at("status").get<std::string>();
            row.note = j.at("note").get<std::string>();
            row.runs = j.at("runs").get<std::uint64_t>();
            row.correct = j.at("correct").get<bool>();
            row.measured = j.at("measured").get<std::map<std::string, std::uint64_t>>();
            for (const auto& c : j.at("checks")) {
                Check ch;
                ch.name = c.at("name").get<std::string>();
                ch.kind = check_kind_from(c.at("kind").get<std::string>());
                ch.measured_key = c.at("measured_key").get<std::string>();
                if (!c.at("bound").is_null())
                    ch.bound = number_from(c.at("bound"));
                if (!c.at("pass").is_null())
                    ch.pass = c.at("pass").get<bool>();
                row.checks.push_back(std::move(ch));
            }
            out.push_back(std::move(row));
        }
    } catch (const json::exception& e) {
        throw ParseError(std::string("conformance table: ") + e.what());
    }
    return out;
}

int exit_code(const Table& table)
{
    return std::all_of(table.begin(), table.end(), [](const ConformanceRow& r) { return r.pass(); }) ? 0 : 2;
}

}  // namespace gt::harness

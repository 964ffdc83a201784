// gt: command-line front end. JSON goes to stdout unless --out is given.
// Exit codes: 0 all checks pass, 2 conformance failure, 1 usage or runtime error.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "gt/adaptive.hpp"
#include "gt/bounds.hpp"
#include "gt/combinatorics.hpp"
#include "gt/designs.hpp"
#include "gt/errors.hpp"
#include "gt/harness.hpp"
#include "gt/model.hpp"
#include "gt/pipeline.hpp"
#include "gt/verify.hpp"

using nlohmann::json;
using namespace gt;

namespace {

json num(double x)
{
    if (std::isinf(x))
        return x > 0 ? "+inf" : "-inf";
    return harness::round12(x);
}

json opt_num(const std::optional<double>& x)
{
    return x ? num(*x) : json(nullptr);
}

json labels(const std::vector<std::size_t>& items)
{
    json a = json::array();
    for (auto i : items)
        a.push_back(i + 1);
    return a;
}

json to_json(const bounds::BoundReport& r)
{
    json in = {{"n", r.inputs.n}, {"d", r.inputs.d}, {"t", r.inputs.t}};
    in["y"] = opt_num(r.inputs.y);
    in["p"] = r.inputs.p ? json(*r.inputs.p) : json(nullptr);
    in["s"] = r.inputs.s ? json(*r.inputs.s) : json(nullptr);
    json br = json::array();
    for (const auto& b : r.branches)
        br.push_back({{"label", b.label}, {"value", num(b.value)}});
    return {{"theorem_id", r.theorem_id}, {"value", opt_num(r.value)}, {"case", r.case_taken}, {"inputs", in},
            {"branches", br}};
}

json to_json(const verify::PropertyReport& r)
{
    json w = nullptr;
    if (r.witness) {
        w = json::array();
        for (const auto& set : *r.witness)
            w.push_back(labels(set));
    }
    return {{"property", r.property},
            {"holds", r.holds},
            {"witness", w},
            {"work", r.work},
            {"status", verify::to_string(r.status)},
            {"coverage", num(r.coverage)},
            {"params", {{"d", r.params.d}, {"p", r.params.p}, {"s", r.params.s}, {"lambda", r.params.lambda}}}};
}

void emit(const std::string& text, const std::string& out)
{
    if (out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(out, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + out + " for writing");
    f << text;
    if (!f)
        throw std::runtime_error("write to " + out + " failed");
}

void emit(const json& j, const std::string& out)
{
    emit(j.dump(2) + "\n", out);
}

std::string read_text(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

std::vector<std::size_t> item_labels(const std::string& text)
{
    const auto v = harness::parse_list("hidden", text);
    return {v.begin(), v.end()};
}

verify::VerifyOptions verify_opts(bool sample, std::uint64_t seed, std::uint64_t cap)
{
    verify::VerifyOptions o;
    o.allow_sampling = sample;
    o.seed = seed;
    o.work_cap = cap;
    return o;
}

adaptive::MeasureMode measure_mode(const std::string& mode, std::uint64_t seed, std::size_t trials)
{
    if (mode != "exhaustive" && mode != "sampled")
        throw DomainError("--mode must be exhaustive or sampled");
    adaptive::MeasureMode m;
    m.exhaustive = mode == "exhaustive";
    m.seed = seed;
    m.trials = trials;
    return m;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"group testing with a budget on positive answers"};
    app.require_subcommand(1);
    std::string out;

    // bounds
    auto* b = app.add_subcommand("bounds", "evaluate closed-form bounds");
    std::string b_id = "all";
    std::uint64_t b_n = 1, b_d = 1, b_t = 1;
    std::optional<double> b_y;
    std::optional<std::uint64_t> b_p, b_s;
    b->add_option("--id", b_id, "theorem id, or all");
    b->add_option("--n", b_n)->required();
    b->add_option("--d", b_d)->required();
    b->add_option("--t", b_t)->required();
    b->add_option("--y", b_y);
    b->add_option("--p", b_p);
    b->add_option("--s", b_s);
    b->add_option("--out", out);

    // adaptive
    auto* a = app.add_subcommand("adaptive", "run or measure an adaptive strategy");
    std::uint64_t a_n = 1, a_d = 1;
    std::optional<std::uint64_t> a_t, a_f;
    std::string a_strategy = "auto", a_mode = "exhaustive", a_hidden;
    std::uint64_t a_seed = 0;
    std::size_t a_trials = 1000;
    a->add_option("--n", a_n)->required();
    a->add_option("--d", a_d)->required();
    a->add_option("--t", a_t, "test budget (auto strategy)");
    a->add_option("--strategy", a_strategy)->check(CLI::IsMember({"auto", "individual", "staged", "hwang"}));
    a->add_option("--f", a_f, "stages for the staged strategy");
    a->add_option("--hidden", a_hidden, "comma-separated 1-indexed defectives; single run");
    a->add_option("--mode", a_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    a->add_option("--seed", a_seed);
    a->add_option("--trials", a_trials);
    a->add_option("--out", out);

    // design
    auto* dsg = app.add_subcommand("design", "generate or verify pooling designs");
    dsg->require_subcommand(1);
    auto* gr = dsg->add_subcommand("gen-random", "sample a union-bounded (p,d)-cover-free design");
    designs::SamplerConfig g_cfg;
    gr->add_option("--t", g_cfg.t)->required();
    gr->add_option("--n", g_cfg.n)->required();
    gr->add_option("--d", g_cfg.d)->required();
    gr->add_option("--p", g_cfg.p);
    gr->add_option("--s", g_cfg.s)->required();
    gr->add_option("--seed", g_cfg.seed);
    gr->add_option("--z", g_cfg.z);
    gr->add_option("--max-attempts", g_cfg.max_attempts);
    gr->add_option("--out", out);

    auto* ge = dsg->add_subcommand("gen-explicit", "code-based d-cover-free design");
    std::size_t e_d = 1, e_m = 1;
    std::uint32_t e_q = 4;
    std::optional<std::size_t> e_k;
    ge->add_option("--d", e_d)->required();
    ge->add_option("--q", e_q)->required();
    ge->add_option("--m", e_m)->required();
    ge->add_option("--k", e_k, "code dimension (default: largest under the codeword cap)");
    ge->add_option("--out", out);

    auto* dv = dsg->add_subcommand("verify", "check a combinatorial property");
    std::string v_file, v_prop;
    verify::Params v_params;
    bool v_sample = false;
    std::uint64_t v_seed = 0, v_cap = 1'000'000;
    dv->add_option("--file", v_file)->required();
    dv->add_option("--property", v_prop)->required()->check(CLI::IsMember(verify::property_ids()));
    dv->add_option("--p", v_params.p);
    dv->add_option("--d", v_params.d);
    dv->add_option("--s", v_params.s);
    dv->add_option("--lambda", v_params.lambda);
    dv->add_flag("--sample", v_sample, "sample beyond the work cap");
    dv->add_option("--seed", v_seed);
    dv->add_option("--work-cap", v_cap);
    dv->add_option("--out", out);

    // nonadaptive
    auto* na = app.add_subcommand("nonadaptive", "decode responses of a non-adaptive design");
    std::string na_file, na_hidden;
    std::optional<std::size_t> na_d;
    na->add_option("--design", na_file)->required();
    na->add_option("--d", na_d, "defectives bound (default: design header)");
    na->add_option("--hidden", na_hidden, "comma-separated 1-indexed defectives; single decode");
    na->add_option("--out", out);

    // twostage
    auto* ts = app.add_subcommand("twostage", "cover-free first stage plus individual confirmation");
    std::string ts_file, ts_mode = "exhaustive";
    std::size_t ts_n = 0, ts_d = 1, ts_p = 1;
    std::optional<std::size_t> ts_s;
    std::uint64_t ts_seed = 0;
    std::size_t ts_trials = 1000;
    ts->add_option("--design", ts_file)->required();
    ts->add_option("--n", ts_n)->required();
    ts->add_option("--d", ts_d)->required();
    ts->add_option("--p", ts_p);
    ts->add_option("--s", ts_s, "union bound (default: design header, else t)");
    ts->add_option("--mode", ts_mode)->check(CLI::IsMember({"exhaustive", "sampled"}));
    ts->add_option("--seed", ts_seed);
    ts->add_option("--trials", ts_trials);
    ts->add_option("--out", out);

    // sweep
    auto* sw = app.add_subcommand("sweep", "grid sweep with bound conformance");
    std::string sw_config, sw_csv;
    std::vector<std::pair<std::string, std::string>> sw_flags;
    sw->add_option("--config", sw_config, "key=value file; flags override it");
    sw->add_option("--csv", sw_csv, "also write the CSV table here");
    for (const char* key : {"kind", "n", "d", "t", "p", "s", "f", "strategy", "mode", "seed", "trials", "measure-cap",
                            "work-cap", "max-attempts", "z", "workers"}) {
        std::string name = key;
        sw->add_option_function<std::string>(
            "--" + name,
            [&sw_flags, name](const std::string& v) {
                std::string k = name;
                std::replace(k.begin(), k.end(), '-', '_');
                sw_flags.emplace_back(k, v);
            },
            "");
    }
    sw->add_option("--out", out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (b->parsed()) {
            bounds::BoundQuery q{b_n, b_d, b_t, b_y, b_p, b_s};
            if (b_id == "all") {
                json arr = json::array();
                for (const auto& id : bounds::theorem_ids()) {
                    try {
                        arr.push_back(to_json(bounds::evaluate(id, q)));
                    } catch (const DomainError& e) {
                        arr.push_back({{"theorem_id", id}, {"error", e.what()}});
                    }
                }
                emit(arr, out);
            } else {
                emit(to_json(bounds::evaluate(b_id, q)), out);
            }
            return 0;
        }

        if (a->parsed()) {
            if (!a_hidden.empty()) {
                const auto lab = item_labels(a_hidden);
                const auto hidden = DefectiveSet::from_labels(lab);
                adaptive::Strategy strat;
                if (a_strategy == "individual")
                    strat = adaptive::individual();
                else if (a_strategy == "hwang")
                    strat = adaptive::hwang();
                else if (a_strategy == "staged")
                    strat = adaptive::staged(a_n, a_d, a_f.value_or(2));
                else if (a_t)
                    strat = adaptive::choose_strategy(a_n, a_d, *a_t);
                else
                    throw DomainError("--strategy auto needs --t");
                adaptive::OracleSession session(a_n, hidden);
                const auto found = adaptive::run(strat, session, a_d);
                const bool within_budget = !a_t || session.transcript().tests() <= *a_t;
                json steps = json::array();
                for (const auto& st : session.transcript().steps())
                    steps.push_back({{"pool", labels(st.pool)}, {"response", st.response}});
                emit(json{{"strategy", strat.name()},
                          {"hidden", labels(hidden.members())},
                          {"found", labels(found.members())},
                          {"correct", found == hidden},
                          {"tests", session.transcript().tests()},
                          {"yeses", session.transcript().yeses()},
                          {"over_budget", !within_budget},
                          {"steps", steps}},
                     out);
                return found == hidden && within_budget ? 0 : 2;
            }
            harness::SweepSpec spec;
            spec.kind = harness::SweepKind::adaptive;
            spec.n = {a_n};
            spec.d = {a_d};
            if (a_t)
                spec.t = {*a_t};
            spec.strategy = a_strategy;
            if (a_strategy == "staged")
                spec.f = {a_f.value_or(2)};
            spec.exhaustive = a_mode == "exhaustive";
            spec.seed = a_seed;
            spec.trials = a_trials;
            const auto table = harness::sweep(spec);
            emit(json::parse(harness::table_to_json(table)).at(0), out);
            return harness::exit_code(table);
        }

        if (gr->parsed()) {
            const auto res = designs::sample_design(g_cfg);
            for (const auto& line : res.log)
                std::cerr << line << '\n';
            std::cerr << "verified after " << res.attempts << " attempt(s), z=" << res.z << '\n';
            emit(format_design(res.design), out);
            return 0;
        }

        if (ge->parsed()) {
            const auto res = designs::build_explicit(e_d, e_q, e_m, e_k);
            std::cerr << "code [" << res.code.m << "," << res.code.k << "," << res.code.min_dist << "]_" << e_q
                      << ", lambda=" << res.lambda << '\n';
            emit(format_design(res.design), out);
            return 0;
        }

        if (dv->parsed()) {
            const auto design = read_design_file(v_file);
            if (design.meta()) {
                if (!dv->count("--d"))
                    v_params.d = design.meta()->d;
                if (!dv->count("--p"))
                    v_params.p = design.meta()->p;
                if (!dv->count("--s"))
                    v_params.s = design.meta()->s;
            }
            const auto rep = verify::check(design, v_prop, v_params, verify_opts(v_sample, v_seed, v_cap));
            emit(to_json(rep), out);
            return rep.holds ? 0 : 2;
        }

        if (na->parsed()) {
            const auto design = read_design_file(na_file);
            const std::size_t d = na_d ? *na_d : (design.meta() ? design.meta()->d : 1);
            if (!na_hidden.empty()) {
                const auto lab = item_labels(na_hidden);
                const auto hidden = DefectiveSet::from_labels(lab);
                hidden.check_within(design.n());
                const auto resp = respond(design, hidden);
                const auto cover = pipeline::decode_cover(design, resp);
                json j = {{"hidden", labels(hidden.members())},
                          {"response", resp.bits.to_string()},
                          {"yeses", resp.weight()},
                          {"decode_cover", labels(cover)}};
                bool ok = cover == hidden.members();
                try {
                    const auto sep = pipeline::decode_separable(design, resp, d);
                    j["decode_separable"] = labels(sep.members());
                    ok = ok && sep == hidden;
                } catch (const std::exception& e) {
                    j["decode_separable"] = nullptr;
                    j["decode_separable_error"] = e.what();
                    ok = false;
                }
                j["correct"] = ok;
                emit(j, out);
                return ok ? 0 : 2;
            }
            // every hidden set of size <= d
            const std::uint64_t total = subsets_up_to_sat(design.n(), d);
            std::size_t max_yes = 0, wrong = 0;
            for (std::uint64_t i = 0; i < total; ++i) {
                const auto hidden = adaptive::hidden_set_at(design.n(), d, i);
                const auto resp = respond(design, hidden);
                max_yes = std::max(max_yes, resp.weight());
                if (pipeline::decode_cover(design, resp) != hidden.members())
                    ++wrong;
            }
            bounds::BoundQuery q;
            q.n = design.n();
            q.d = d;
            q.t = design.t();
            q.y = static_cast<double>(max_yes);
            json j = {{"t", design.t()},
                      {"n", design.n()},
                      {"d", d},
                      {"hidden_sets", total},
                      {"max_yes", max_yes},
                      {"decode_cover_failures", wrong},
                      {"nonadaptive_yes_lower", opt_num(bounds::nonadaptive_yes_lower(q).value)},
                      {"nonadaptive_yes_upper", opt_num(bounds::nonadaptive_yes_upper(q).value)}};
            bool ok = wrong == 0;
            if (design.meta()) {
                j["declared_s"] = design.meta()->s;
                ok = ok && max_yes <= design.meta()->s;
            }
            j["pass"] = ok;
            emit(j, out);
            return ok ? 0 : 2;
        }

        if (ts->parsed()) {
            auto design = read_design_file(ts_file);
            if (design.n() != ts_n)
                throw DomainError("--n " + std::to_string(ts_n) + " does not match the design's " +
                                  std::to_string(design.n()) + " columns");
            const std::size_t s = ts_s ? *ts_s : (design.meta() ? design.meta()->s : design.t());
            const std::size_t t1 = design.t();
            const auto cert = pipeline::certify(std::move(design), ts_p, ts_d, s);
            const auto sum = pipeline::measure_two_stage(cert, ts_d, measure_mode(ts_mode, ts_seed, ts_trials));
            const bool ok = sum.all_correct && sum.max_candidates <= ts_p + ts_d - 1 && sum.max_stage1_yeses <= s &&
                            sum.max_total_yeses <= s + ts_d;
            emit(json{{"t1", t1},
                      {"n", ts_n},
                      {"d", ts_d},
                      {"p", ts_p},
                      {"s", s},
                      {"runs", sum.runs},
                      {"all_correct", sum.all_correct},
                      {"max_candidates", sum.max_candidates},
                      {"max_stage1_yeses", sum.max_stage1_yeses},
                      {"max_total_yeses", sum.max_total_yeses},
                      {"max_tests", sum.max_tests},
                      {"candidate_bound", ts_p + ts_d - 1},
                      {"yes_bound", s + ts_d},
                      {"pass", ok}},
                 out);
            return ok ? 0 : 2;
        }

        if (sw->parsed()) {
            harness::SweepSpec spec;
            if (!sw_config.empty())
                for (const auto& [k, v] : harness::parse_config(read_text(sw_config)))
                    harness::apply_setting(spec, k, v);
            for (const auto& [k, v] : sw_flags)
                harness::apply_setting(spec, k, v);
            const auto table = harness::sweep(spec);
            if (!sw_csv.empty()) {
                std::ostringstream csv;
                harness::write_csv(csv, spec.kind, table);
                emit(csv.str(), sw_csv);
            }
            emit(harness::table_to_json(table), out);
            return harness::exit_code(table);
        }
    } catch (const SamplingError& e) {
        std::cerr << "gt: " << e.what() << '\n';
        for (const auto& line : e.attempt_log())
            std::cerr << "  " << line << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "gt: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

#include "redsched/redsched.h"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parallel.hpp"
#include "redsched/algorithms.hpp"
#include "redsched/greedy_bi.hpp"
#include "redsched/greedy_uni.hpp"
#include "redsched/seglab.hpp"

struct rs_schedule {
    redsched::Schedule sched;
};

namespace {

using namespace redsched;

thread_local std::string t_error;

char* dup_cstr(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (out != nullptr) std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

int give(char** slot, const std::string& text) {
    if (slot == nullptr) return RS_OK;
    char* copy = dup_cstr(text);
    if (copy == nullptr) {
        t_error = "out of memory";
        return RS_ERR_INVALID;
    }
    *slot = copy;
    return RS_OK;
}

template <class F>
int guarded(F&& f) {
    t_error.clear();
    try {
        return f();
    } catch (const std::exception& e) {
        t_error = e.what();
        return RS_ERR_INVALID;
    }
}

std::string fmt_double(double v) {
    char buf[64];
    auto res =
        std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
    return std::string(buf, res.ptr);
}

std::string fmt_rat(const Rat& r, bool as_float) {
    return as_float ? fmt_double(r.to_double()) : r.str();
}

Rat parse_nonneg(const char* text, const char* what) {
    if (text == nullptr)
        throw std::invalid_argument(std::string(what) + ": missing value");
    Rat r = Rat::parse(text);
    if (r < Rat(0))
        throw std::invalid_argument(std::string(what) + ": must be >= 0");
    return r;
}

MachineParams to_params(const rs_params* par) {
    if (par == nullptr) throw std::invalid_argument("params: null");
    MachineParams mp;
    mp.alpha = parse_nonneg(par->alpha, "alpha");
    mp.beta = parse_nonneg(par->beta, "beta");
    mp.gamma = parse_nonneg(par->gamma, "gamma");
    mp.p = par->p;
    if (mp.p < 2) throw std::invalid_argument("p: must be >= 2");
    return mp;
}

std::string required(const char* text, const char* what) {
    if (text == nullptr)
        throw std::invalid_argument(std::string(what) + ": missing value");
    return text;
}

PortModel to_model(const char* model) {
    std::string name = required(model, "model");
    if (name == "uni") return PortModel::Unidirectional;
    if (name == "bi") return PortModel::Bidirectional;
    throw std::invalid_argument("model: expected \"uni\" or \"bi\", got \"" +
                                name + "\"");
}

Algorithm to_algorithm(const std::string& name) {
    if (name == "binomial") return Algorithm::Binomial;
    if (name == "pipeline") return Algorithm::Pipeline;
    if (name == "binary") return Algorithm::Binary;
    if (name == "bigreedy" || name == "bi-greedy") return Algorithm::BiGreedy;
    if (name == "butterfly") return Algorithm::Butterfly;
    throw std::invalid_argument("algorithm: unknown name \"" + name + "\"");
}

SegmentPlan to_plan(std::int64_t m, std::int64_t s, const int64_t* sizes,
                    size_t count) {
    if (sizes != nullptr) {
        if (count == 0) throw std::invalid_argument("plan: empty");
        SegmentPlan plan;
        plan.sizes.assign(sizes, sizes + count);
        for (std::int64_t sz : plan.sizes)
            if (sz < 1)
                throw std::invalid_argument("plan: sizes must be positive");
        return plan;
    }
    if (m < 1) throw std::invalid_argument("m: must be >= 1");
    return SegmentPlan::equi(m, s > 0 ? s : m);
}

// ---------------------------------------------------------------------------
// time table

struct TableRow {
    std::string name;
    std::optional<Rat> time;
    std::optional<OptimalSegment> opt;
    std::string note;
};

Rat row_time(PortModel model, Algorithm a, const MachineParams& mp,
             const MessageSpec& ms, std::string* note) {
    if (model == PortModel::Unidirectional) return uni_time(a, mp, ms);
    BiTime bt = bi_time(a, mp, ms);
    if (bt.lower_bound_only) *note = "lower-bound-only";
    return bt.time;
}

std::optional<OptimalSegment> row_opt(PortModel model, Algorithm a,
                                      const MachineParams& mp,
                                      std::int64_t m) {
    bool has_opt = a == Algorithm::Pipeline || a == Algorithm::Binary ||
                   (model == PortModel::Bidirectional && a == Algorithm::BiGreedy);
    if (!has_opt) return std::nullopt;
    return model == PortModel::Unidirectional ? uni_sopt_topt(a, mp, m)
                                              : bi_sopt_topt(a, mp, m);
}

std::vector<TableRow> build_table(PortModel model, const MachineParams& mp,
                                  std::int64_t m, std::int64_t s,
                                  const char* algorithm) {
    std::vector<Algorithm> algos;
    if (algorithm != nullptr) {
        Algorithm a = to_algorithm(algorithm);
        bool bi_only = a == Algorithm::BiGreedy || a == Algorithm::Butterfly;
        if (bi_only && model == PortModel::Unidirectional)
            throw std::invalid_argument(
                "algorithm: two-port only, use model \"bi\"");
        algos = {a};
    } else if (model == PortModel::Unidirectional) {
        algos = {Algorithm::Binomial, Algorithm::Pipeline, Algorithm::Binary};
    } else {
        algos = {Algorithm::Binomial, Algorithm::Pipeline, Algorithm::Binary,
                 Algorithm::BiGreedy, Algorithm::Butterfly};
    }
    MessageSpec ms{m, s > 0 ? s : m};
    std::vector<TableRow> rows;
    for (Algorithm a : algos) {
        TableRow row;
        row.name = algorithm_name(a);
        try {
            row.time = row_time(model, a, mp, ms, &row.note);
            row.opt = row_opt(model, a, mp, m);
        } catch (const std::domain_error&) {
            if (algorithm != nullptr) throw;
            continue;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string table_csv(const std::vector<TableRow>& rows,
                      const MachineParams& mp, std::int64_t m, bool as_float) {
    std::string out = "algorithm,time,s_opt,t_opt,note\n";
    for (const TableRow& row : rows) {
        out += row.name + ',' + fmt_rat(*row.time, as_float) + ',';
        if (row.opt) out += fmt_double(row.opt->s_opt);
        out += ',';
        if (row.opt) out += fmt_double(row.opt->t_opt);
        out += ',' + row.note + '\n';
    }
    out += "reference," + fmt_rat(reference_line(mp, m), as_float) + ",,,\n";
    LowerBounds lb = reduce_lower_bounds(mp, m);
    out += "lower_latency," + fmt_rat(lb.latency, as_float) + ",,,\n";
    out += "lower_bandwidth," + fmt_rat(lb.bandwidth, as_float) + ",,,\n";
    out += "lower_computation," + fmt_rat(lb.computation, as_float) + ",,,\n";
    return out;
}

nlohmann::ordered_json rat_json(const Rat& r, bool as_float) {
    if (as_float) return r.to_double();
    return r.str();
}

std::string table_json(const std::vector<TableRow>& rows, PortModel model,
                       const MachineParams& mp, std::int64_t m, std::int64_t s,
                       bool as_float) {
    nlohmann::ordered_json doc;
    doc["model"] = model == PortModel::Unidirectional ? "uni" : "bi";
    doc["p"] = mp.p;
    doc["alpha"] = rat_json(mp.alpha, as_float);
    doc["beta"] = rat_json(mp.beta, as_float);
    doc["gamma"] = rat_json(mp.gamma, as_float);
    doc["m"] = m;
    if (s > 0)
        doc["s"] = s;
    else
        doc["s"] = nullptr;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const TableRow& row : rows) {
        nlohmann::ordered_json r;
        r["algorithm"] = row.name;
        r["time"] = rat_json(*row.time, as_float);
        if (row.opt) {
            r["s_opt"] = row.opt->s_opt;
            r["t_opt"] = row.opt->t_opt;
        } else {
            r["s_opt"] = nullptr;
            r["t_opt"] = nullptr;
        }
        if (!row.note.empty()) r["note"] = row.note;
        doc["rows"].push_back(std::move(r));
    }
    doc["reference_line"] = rat_json(reference_line(mp, m), as_float);
    LowerBounds lb = reduce_lower_bounds(mp, m);
    doc["lower_bounds"] = {{"latency", rat_json(lb.latency, as_float)},
                           {"bandwidth", rat_json(lb.bandwidth, as_float)},
                           {"computation", rat_json(lb.computation, as_float)}};
    return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// verification suite

std::vector<SegmentPlan> oracle_plans() {
    std::vector<SegmentPlan> plans;
    for (std::int64_t a = 1; a <= 3; ++a) {
        plans.push_back(SegmentPlan{{a}});
        for (std::int64_t b = 1; b <= 3; ++b) {
            plans.push_back(SegmentPlan{{a, b}});
            for (std::int64_t c = 1; c <= 3; ++c)
                plans.push_back(SegmentPlan{{a, b, c}});
        }
    }
    return plans;
}

std::string plan_str(const SegmentPlan& plan) {
    std::string out = "(";
    for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
        if (i != 0) out += ',';
        out += std::to_string(plan.sizes[i]);
    }
    return out + ")";
}

std::string point_str(const MachineParams& mp, const SegmentPlan& plan) {
    return "p=" + std::to_string(mp.p) + " alpha=" + mp.alpha.str() +
           " beta=" + mp.beta.str() + " gamma=" + mp.gamma.str() + " plan=" +
           plan_str(plan);
}

// Structure, port feasibility, reduction correctness, and for one-port
// schedules the in-order validity rules; returns the first problem.
std::string schedule_problems(const Schedule& sched) {
    try {
        check_structure(sched);
    } catch (const std::invalid_argument& e) {
        return std::string("structure: ") + e.what();
    }
    try {
        simulate(sched);
    } catch (const std::runtime_error& e) {
        return std::string("port rules: ") + e.what();
    }
    CorrectnessResult corr = check_correctness(sched);
    if (!corr.ok) return "correctness: " + corr.detail;
    if (sched.model == PortModel::Unidirectional) {
        ValidationResult val = validate_uni(sched);
        if (!val.valid)
            return "in-order validity: rule " + val.rule + " at event " +
                   std::to_string(val.event_index) + ": " + val.message;
    }
    return "";
}

struct VerifyPart {
    std::string label;
    std::int64_t cases = 0;
    std::vector<std::string> failures;
};

VerifyPart verify_oracle(std::int64_t max_p) {
    VerifyPart part;
    part.label = "one-port greedy vs exhaustive search";
    std::vector<SegmentPlan> plans = oracle_plans();
    struct Case {
        MachineParams mp;
        const SegmentPlan* plan;
    };
    std::vector<Case> cases;
    for (std::int64_t p = 2; p <= max_p; ++p)
        for (const SegmentPlan& plan : plans)
            for (std::int64_t a = 0; a <= 2; ++a)
                for (std::int64_t b = 0; b <= 2; ++b) {
                    if (a + b == 0) continue;
                    for (std::int64_t g = 0; g <= 2; ++g)
                        cases.push_back(
                            {MachineParams{Rat(a), Rat(b), Rat(g), p}, &plan});
                }
    std::vector<std::string> problems(cases.size());
    detail::parallel_for_index(cases.size(), [&](std::size_t i) {
        const MachineParams& mp = cases[i].mp;
        const SegmentPlan& plan = *cases[i].plan;
        Rat got = uni_greedy_time(mp, plan);
        Rat want = brute_force_min_time(mp, plan);
        if (got != want) {
            problems[i] = point_str(mp, plan) + ": greedy " + got.str() +
                          " != exhaustive minimum " + want.str();
            return;
        }
        Schedule sched = uni_greedy_schedule(mp, plan);
        std::string bad = schedule_problems(sched);
        if (!bad.empty()) {
            problems[i] = point_str(mp, plan) + ": " + bad;
            return;
        }
        Rat completion = simulate(sched).completion;
        if (completion != got)
            problems[i] = point_str(mp, plan) + ": simulated completion " +
                          completion.str() + " != greedy time " + got.str();
    });
    part.cases = static_cast<std::int64_t>(cases.size());
    for (std::string& msg : problems)
        if (!msg.empty()) part.failures.push_back(std::move(msg));
    return part;
}

VerifyPart verify_families() {
    VerifyPart part;
    part.label = "generator schedule safety";
    struct Item {
        Schedule sched;
        std::string what;
    };
    std::vector<Item> items;
    for (std::int64_t p : {2, 3, 5, 8, 16, 31})
        for (std::int64_t m : {1, 5}) {
            MachineParams mp{Rat(2), Rat(1), Rat(1), p};
            items.push_back({schedule_binomial(mp, m),
                             "binomial p=" + std::to_string(p) +
                                 " m=" + std::to_string(m)});
        }
    for (std::int64_t p : {4, 7, 16})
        for (SegmentPlan plan :
             {SegmentPlan{{1, 1, 1, 1}}, SegmentPlan{{3, 2, 1}}}) {
            MachineParams mp{Rat(1), Rat(1), Rat(1), p};
            items.push_back({schedule_pipeline(mp, plan),
                             "pipeline p=" + std::to_string(p) + " plan=" +
                                 plan_str(plan)});
        }
    for (std::int64_t p : {5, 15})
        for (SegmentPlan plan :
             {SegmentPlan{{1, 1, 1, 1, 1}}, SegmentPlan{{2, 1}}}) {
            MachineParams mp{Rat(1), Rat(1), Rat(1), p};
            items.push_back({uni_greedy_schedule(mp, plan),
                             "unigreedy p=" + std::to_string(p) + " plan=" +
                                 plan_str(plan)});
        }
    for (std::int64_t p : {5, 16})
        for (SegmentPlan plan :
             {SegmentPlan{{1, 1, 1, 1, 1}}, SegmentPlan{{2, 2}}}) {
            MachineParams mp{Rat(1), Rat(1), Rat(1), p};
            items.push_back({bi_greedy_schedule(mp, plan),
                             "bigreedy p=" + std::to_string(p) + " plan=" +
                                 plan_str(plan)});
        }
    part.cases = static_cast<std::int64_t>(items.size());
    for (const Item& item : items) {
        std::string bad = schedule_problems(item.sched);
        if (!bad.empty()) part.failures.push_back(item.what + ": " + bad);
    }
    return part;
}

VerifyPart verify_conjecture() {
    VerifyPart part;
    part.label = "two-port greedy round count";
    ConjectureReport rep = check_round_conjecture(
        2, 64, 1, 10, {{1, 0}, {2, 1}, {3, 1}, {5, 2}});
    part.cases = rep.cases;
    for (const ConjectureMismatch& mm : rep.mismatches)
        part.failures.push_back(
            "p=" + std::to_string(mm.p) + " q=" + std::to_string(mm.q) +
            " comm=" + std::to_string(mm.comm) + " comp=" +
            std::to_string(mm.comp) + ": completion " + mm.got.str() +
            " != (ceil(log2 p)+q-1)(comm+comp) = " + mm.want.str());
    return part;
}

}  // namespace

extern "C" {

const char* rs_last_error(void) { return t_error.c_str(); }

void rs_string_free(char* s) { std::free(s); }

const char* rs_version(void) { return "1.0.0"; }

int rs_time(const char* model, const char* algorithm, const rs_params* par,
            int64_t m, int64_t s, int as_float, char** out) {
    return guarded([&]() -> int {
        PortModel pm = to_model(model);
        Algorithm a = to_algorithm(required(algorithm, "algorithm"));
        MachineParams mp = to_params(par);
        if (m < 1) throw std::invalid_argument("m: must be >= 1");
        MessageSpec ms{m, s > 0 ? s : m};
        Rat t;
        if (pm == PortModel::Unidirectional) {
            if (a == Algorithm::BiGreedy || a == Algorithm::Butterfly)
                throw std::invalid_argument(
                    "algorithm: two-port only, use model \"bi\"");
            t = uni_time(a, mp, ms);
        } else {
            t = bi_time(a, mp, ms).time;
        }
        return give(out, fmt_rat(t, as_float != 0));
    });
}

int rs_time_table(const char* model, const char* algorithm,
                  const rs_params* par, int64_t m, int64_t s,
                  const char* format, int as_float, char** out) {
    return guarded([&]() -> int {
        PortModel pm = to_model(model);
        MachineParams mp = to_params(par);
        if (m < 1) throw std::invalid_argument("m: must be >= 1");
        std::string fmt = format == nullptr ? "csv" : format;
        std::vector<TableRow> rows = build_table(pm, mp, m, s, algorithm);
        if (fmt == "csv")
            return give(out, table_csv(rows, mp, m, as_float != 0));
        if (fmt == "json")
            return give(out, table_json(rows, pm, mp, m, s, as_float != 0));
        throw std::invalid_argument("format: expected \"csv\" or \"json\"");
    });
}

int rs_schedule_build(const char* algorithm, const rs_params* par, int64_t m,
                      int64_t s, const int64_t* sizes, size_t count,
                      rs_schedule** out) {
    return guarded([&]() -> int {
        if (out == nullptr) throw std::invalid_argument("out: null");
        std::string name = required(algorithm, "algorithm");
        MachineParams mp = to_params(par);
        SegmentPlan plan = to_plan(m, s, sizes, count);
        Schedule sched;
        if (name == "binomial") {
            if (plan.count() != 1)
                throw std::invalid_argument(
                    "binomial: does not segment, give a single-segment plan");
            sched = schedule_binomial(mp, plan.sizes[0]);
        } else if (name == "pipeline") {
            sched = schedule_pipeline(mp, plan);
        } else if (name == "unigreedy" || name == "uni-greedy") {
            sched = uni_greedy_schedule(mp, plan);
        } else if (name == "bigreedy" || name == "bi-greedy") {
            sched = bi_greedy_schedule(mp, plan);
        } else {
            throw std::invalid_argument(
                "algorithm: expected binomial, pipeline, unigreedy, or "
                "bigreedy, got \"" +
                name + "\"");
        }
        *out = new rs_schedule{std::move(sched)};
        return RS_OK;
    });
}

int rs_schedule_parse(const char* json, rs_schedule** out) {
    return guarded([&]() -> int {
        if (out == nullptr) throw std::invalid_argument("out: null");
        Schedule sched = parse_json(required(json, "json"));
        *out = new rs_schedule{std::move(sched)};
        return RS_OK;
    });
}

void rs_schedule_free(rs_schedule* s) { delete s; }

int rs_schedule_completion(const rs_schedule* s, int as_float, char** out) {
    return guarded([&]() -> int {
        if (s == nullptr) throw std::invalid_argument("schedule: null");
        Rat completion = simulate(s->sched).completion;
        return give(out, fmt_rat(completion, as_float != 0));
    });
}

int rs_schedule_event_count(const rs_schedule* s, int64_t* out) {
    return guarded([&]() -> int {
        if (s == nullptr) throw std::invalid_argument("schedule: null");
        if (out == nullptr) throw std::invalid_argument("out: null");
        *out = static_cast<int64_t>(s->sched.events.size());
        return RS_OK;
    });
}

int rs_schedule_emit(const rs_schedule* s, const char* format, char** out) {
    return guarded([&]() -> int {
        if (s == nullptr) throw std::invalid_argument("schedule: null");
        std::string fmt = required(format, "format");
        if (fmt == "json") return give(out, emit_json(s->sched));
        if (fmt == "csv") return give(out, emit_csv(s->sched));
        if (fmt == "svg") return give(out, emit_svg_gantt(s->sched));
        throw std::invalid_argument(
            "format: expected \"json\", \"csv\", or \"svg\"");
    });
}

int rs_schedule_check(const rs_schedule* s, char** report) {
    return guarded([&]() -> int {
        if (s == nullptr) throw std::invalid_argument("schedule: null");
        std::string bad = schedule_problems(s->sched);
        if (bad.empty()) {
            Rat completion = simulate(s->sched).completion;
            return give(report,
                        "ok: " + std::to_string(s->sched.events.size()) +
                            " events, completion " + completion.str() + "\n");
        }
        int rc = give(report, bad + "\n");
        if (rc != RS_OK) return rc;
        t_error = bad;
        return RS_ERR_VERIFY;
    });
}

int rs_report_sweep(const char* model, const rs_params* par, int64_t m_max,
                    const char* search, char** out) {
    return guarded([&]() -> int {
        PortModel pm = to_model(model);
        MachineParams mp = to_params(par);
        if (m_max <= 0) m_max = std::int64_t{1} << 20;
        EquiSearch es = EquiSearch::PowTwoPlusFormula;
        if (search != nullptr) {
            std::string name = search;
            if (name == "exhaustive")
                es = EquiSearch::Exhaustive;
            else if (name != "pow2")
                throw std::invalid_argument(
                    "search: expected \"exhaustive\" or \"pow2\"");
        }
        std::vector<std::int64_t> ms;
        for (std::int64_t m = 1; m <= m_max; m *= 2) ms.push_back(m);
        std::vector<StandardsRecord> recs(ms.size());
        detail::parallel_for_index(ms.size(), [&](std::size_t i) {
            recs[i] =
                ratio_vs_standards(mp, ms[i], pm, GreedyVariant::Eager, es);
        });
        std::string csv = pm == PortModel::Unidirectional
                              ? "m,binomial,pipeline,binary,greedy,"
                                "greedy_segment_size,ratio\n"
                              : "m,binomial,pipeline,binary,butterfly,greedy,"
                                "greedy_segment_size,ratio\n";
        for (const StandardsRecord& rec : recs) {
            csv += std::to_string(rec.m) + ',' + fmt_double(rec.time_binomial) +
                   ',' + fmt_double(rec.time_pipeline) + ',' +
                   fmt_double(rec.time_binary) + ',';
            if (pm == PortModel::Bidirectional)
                csv += fmt_double(*rec.time_butterfly) + ',';
            csv += fmt_double(rec.time_greedy) + ',' +
                   std::to_string(rec.greedy_segment_size) + ',' +
                   fmt_double(rec.ratio) + '\n';
        }
        return give(out, csv);
    });
}

int rs_report_regionmap(const char* mode, const rs_params* par, int64_t p_max,
                        int64_t m_max, char** out) {
    return guarded([&]() -> int {
        std::string name = required(mode, "mode");
        if (name == "standards-uni") {
            MachineParams base = to_params(par);
            if (p_max <= 0) p_max = 1024;
            if (m_max <= 0) m_max = std::int64_t{1} << 20;
            if (p_max < 4)
                throw std::invalid_argument(
                    "p: one-port region map needs p >= 4");
            std::string csv = "p,m,binomial,pipeline,binary,label\n";
            for (std::int64_t p = 4; p <= p_max; p *= 2) {
                MachineParams mp = base;
                mp.p = p;
                for (std::int64_t m = 1; m <= m_max; m *= 2) {
                    double binomial =
                        uni_time(Algorithm::Binomial, mp, MessageSpec{m, m})
                            .to_double();
                    double pipeline =
                        uni_sopt_topt(Algorithm::Pipeline, mp, m).t_opt;
                    double binary =
                        uni_sopt_topt(Algorithm::Binary, mp, m).t_opt;
                    const char* label = "binomial";
                    double best = binomial;
                    if (pipeline < best) {
                        best = pipeline;
                        label = "pipeline";
                    }
                    if (binary < best) label = "binary";
                    csv += std::to_string(p) + ',' + std::to_string(m) + ',' +
                           fmt_double(binomial) + ',' + fmt_double(pipeline) +
                           ',' + fmt_double(binary) + ',' + label + '\n';
                }
            }
            return give(out, csv);
        }
        if (name == "butterfly-bi") {
            Rat alpha = parse_nonneg(par == nullptr ? nullptr : par->alpha,
                                     "alpha");
            if (p_max <= 0) p_max = 1024;
            if (m_max <= 0) m_max = 1'000'000;
            if (p_max < 4)
                throw std::invalid_argument(
                    "p: butterfly threshold needs p >= 4");
            std::vector<std::int64_t> ps;
            for (std::int64_t p = 8; p <= p_max; p *= 2) ps.push_back(p);
            if (ps.empty() || ps.back() != p_max) ps.push_back(p_max);
            std::string csv = "p,beta_over_gamma,exists,witness_m\n";
            for (std::int64_t p : ps)
                for (std::int64_t k = 4; k <= 32; ++k) {
                    MachineParams mp{alpha, Rat(k, 4), Rat(1), p};
                    ButterflyWitness w =
                        butterfly_beats_bigreedy(mp, 1, m_max);
                    csv += std::to_string(p) + ',' + Rat(k, 4).str() + ',' +
                           (w.exists ? '1' : '0') + ',';
                    if (w.witness_m) csv += std::to_string(*w.witness_m);
                    csv += '\n';
                }
            return give(out, csv);
        }
        throw std::invalid_argument(
            "mode: expected \"standards-uni\" or \"butterfly-bi\"");
    });
}

int rs_report_unequal(const char* scheduler, const char* alpha,
                      const char* gamma, int64_t p_max, int64_t m,
                      int as_float, char** csv_out, char** summary_json_out) {
    return guarded([&]() -> int {
        LabScheduler sched = LabScheduler::GreedyEager;
        if (scheduler != nullptr) {
            std::string name = scheduler;
            if (name == "pipeline")
                sched = LabScheduler::Pipeline;
            else if (name == "greedy-inorder")
                sched = LabScheduler::GreedyInOrder;
            else if (name != "greedy")
                throw std::invalid_argument(
                    "scheduler: expected \"greedy\", \"greedy-inorder\", or "
                    "\"pipeline\"");
        }
        ExperimentGrid grid = default_unequal_grid();
        if (alpha != nullptr) {
            Rat a = parse_nonneg(alpha, "alpha");
            if (!a.is_integer())
                throw std::invalid_argument("alpha: grid values are integers");
            grid.alphas = {a.num()};
        }
        if (gamma != nullptr) {
            Rat g = parse_nonneg(gamma, "gamma");
            if (!g.is_integer())
                throw std::invalid_argument("gamma: grid values are integers");
            grid.gammas = {g.num()};
        }
        if (p_max > 0) {
            std::erase_if(grid.ps,
                          [&](std::int64_t p) { return p > p_max; });
            if (grid.ps.empty())
                throw std::invalid_argument(
                    "p: no grid processor count is <= the given maximum");
        }
        if (m > 0) grid.m = m;
        std::vector<ExperimentRecord> recs = unequal_experiment(grid, sched);
        if (csv_out != nullptr) {
            int rc = give(csv_out, experiment_csv(recs, as_float != 0));
            if (rc != RS_OK) return rc;
        }
        if (summary_json_out != nullptr) {
            int rc = give(summary_json_out, summary_json(summarize(recs)));
            if (rc != RS_OK) return rc;
        }
        return RS_OK;
    });
}

int rs_verify(int64_t oracle_max_p, char** report_out) {
    return guarded([&]() -> int {
        if (oracle_max_p <= 0) oracle_max_p = 4;
        if (oracle_max_p < 2 || oracle_max_p > 6)
            throw std::invalid_argument(
                "oracle-max-p: exhaustive search supports p in [2, 6]");
        std::vector<VerifyPart> parts;
        parts.push_back(verify_oracle(oracle_max_p));
        parts.push_back(verify_families());
        parts.push_back(verify_conjecture());
        std::ostringstream report;
        bool ok = true;
        for (const VerifyPart& part : parts) {
            report << part.label << ": " << part.cases << " cases, ";
            if (part.failures.empty()) {
                report << "all hold\n";
                continue;
            }
            ok = false;
            report << part.failures.size() << " counterexamples\n";
            for (const std::string& msg : part.failures)
                report << "  " << msg << "\n";
        }
        report << (ok ? "VERIFY PASS\n" : "VERIFY FAIL\n");
        int rc = give(report_out, report.str());
        if (rc != RS_OK) return rc;
        if (!ok) {
            t_error = "verification found counterexamples";
            return RS_ERR_VERIFY;
        }
        return RS_OK;
    });
}

}  // extern "C"

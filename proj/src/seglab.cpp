#include "redsched/seglab.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "redsched/algorithms.hpp"
#include "parallel.hpp"

namespace redsched {

namespace {

// Orders plans by part count, then lexicographically descending.
bool plan_order(const std::vector<std::int64_t>& a,
                const std::vector<std::int64_t>& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a > b;
}

void gen_compositions(std::int64_t remaining, std::vector<std::int64_t>& cur,
                      std::vector<SegmentPlan>& out) {
    if (remaining == 0) {
        out.push_back(SegmentPlan{cur});
        return;
    }
    for (std::int64_t first = remaining; first >= 1; --first) {
        cur.push_back(first);
        gen_compositions(remaining - first, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::int64_t composition_count(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("compositions: m must be positive");
    if (m > 62) throw std::invalid_argument("compositions: count overflows");
    return std::int64_t{1} << (m - 1);
}

std::vector<SegmentPlan> compositions(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("compositions: m must be positive");
    if (m > 20)
        throw std::invalid_argument(
            "compositions: m = " + std::to_string(m) + " would enumerate 2^" +
            std::to_string(m - 1) + " plans; limit is m <= 20");
    std::vector<SegmentPlan> out;
    out.reserve(static_cast<std::size_t>(composition_count(m)));
    std::vector<std::int64_t> cur;
    gen_compositions(m, cur, out);
    std::sort(out.begin(), out.end(),
              [](const SegmentPlan& a, const SegmentPlan& b) {
                  return plan_order(a.sizes, b.sizes);
              });
    return out;
}

std::vector<SegmentPlan> equi_plans(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("equi_plans: m must be positive");
    std::vector<SegmentPlan> out;
    for (std::int64_t s = 1; s <= m; ++s) {
        SegmentPlan plan = SegmentPlan::equi(m, s);
        if (out.empty() || !(out.back() == plan)) out.push_back(std::move(plan));
    }
    return out;
}

std::vector<SegmentPlan> equi_plans_by_count(std::int64_t m) {
    if (m < 1) throw std::invalid_argument("equi_plans: m must be positive");
    std::vector<SegmentPlan> out;
    std::set<std::int64_t> seen;
    for (std::int64_t q = m; q >= 1; --q) {
        std::int64_t s = (m + q - 1) / q;
        if (seen.insert(s).second) out.push_back(SegmentPlan::equi(m, s));
    }
    return out;
}

Rat lab_plan_time(const MachineParams& mp, const SegmentPlan& plan,
                  LabScheduler sched) {
    switch (sched) {
        case LabScheduler::GreedyInOrder:
            return uni_greedy_time(mp, plan, GreedyVariant::InOrder);
        case LabScheduler::GreedyEager:
            return uni_greedy_time(mp, plan, GreedyVariant::Eager);
        case LabScheduler::Pipeline:
            return pipeline_time(mp, plan);
        case LabScheduler::BiGreedyRounds: {
            if (plan.count() < 1)
                throw std::invalid_argument("two-port rounds: empty plan");
            std::int64_t s = plan.sizes[0];
            if (!(plan == SegmentPlan::equi(plan.total(), s)))
                throw std::invalid_argument(
                    "two-port rounds price equi-shaped plans only");
            return bi_time(Algorithm::BiGreedy, mp,
                           MessageSpec{plan.total(), s})
                .time;
        }
    }
    throw std::logic_error("unknown scheduler");
}

namespace {

std::vector<std::int64_t> equi_search_sizes(const MachineParams& mp,
                                            std::int64_t m, EquiSearch search,
                                            LabScheduler sched) {
    std::set<std::int64_t> sizes;
    if (search == EquiSearch::Exhaustive) {
        if (m > 1024)
            throw std::invalid_argument(
                "exhaustive equi sweep limited to m <= 1024; use the "
                "power-of-two search");
        for (std::int64_t s = 1; s <= m; ++s) sizes.insert(s);
        return {sizes.begin(), sizes.end()};
    }
    sizes.insert(1);
    sizes.insert(m);
    for (std::int64_t s = 1; s <= m && s > 0; s *= 2) sizes.insert(s);
    if (mp.p > 3) {
        if (sched == LabScheduler::BiGreedyRounds) {
            for (std::int64_t c :
                 bi_sopt_topt(Algorithm::BiGreedy, mp, m).candidates)
                sizes.insert(c);
        } else {
            for (std::int64_t c :
                 uni_sopt_topt(Algorithm::Pipeline, mp, m).candidates)
                sizes.insert(c);
            for (std::int64_t c :
                 uni_sopt_topt(Algorithm::Binary, mp, m).candidates)
                sizes.insert(c);
        }
    }
    return {sizes.begin(), sizes.end()};
}

EquiBest best_equi_over(const MachineParams& mp,
                        const std::vector<std::int64_t>& sizes, std::int64_t m,
                        LabScheduler sched) {
    EquiBest best;
    bool have = false;
    for (std::int64_t s : sizes) {
        SegmentPlan plan = SegmentPlan::equi(m, s);
        Rat t = lab_plan_time(mp, plan, sched);
        if (!have || t < best.time || (t == best.time && s > best.segment_size)) {
            best = EquiBest{std::move(plan), t, s};
            have = true;
        }
    }
    return best;
}

}  // namespace

EquiBest best_equi_greedy(const MachineParams& mp, std::int64_t m,
                          EquiSearch search, LabScheduler sched) {
    if (m < 1) throw std::invalid_argument("best_equi: m must be positive");
    return best_equi_over(mp, equi_search_sizes(mp, m, search, sched), m,
                          sched);
}

namespace {

// One greedy segment in value space from a sorted state: repeatedly pair
// the two smallest values, the pair starting at the larger one (t); the
// sender is busy until t + comm, the receiver until t + comm + comp.
// Receiver completions are generated in nondecreasing order, so a two-way
// merge of the incoming state and the generated values replaces a heap.
struct GreedyStepper {
    bool hold_back;
    Rat alpha, unit;  // unit = beta + gamma

    using State = std::vector<Rat>;

    void step(const MachineParams& mp, const State& state, std::int64_t s,
              State& next, Rat& completion) const {
        Rat comm = comm_time(mp, s);
        Rat comp = comp_time(mp, s);
        std::size_t p = state.size();
        std::vector<Rat> gen, exited;
        gen.reserve(p);
        exited.reserve(p);
        std::size_t i = 0, j = 0;
        auto take = [&]() -> const Rat& {
            if (i < p && (j >= gen.size() || !(gen[j] < state[i])))
                return state[i++];
            return gen[j++];
        };
        Rat t;
        for (std::size_t pairs = p - 1; pairs > 0; --pairs) {
            take();
            t = take();
            exited.push_back(t + comm);
            gen.push_back(t + comm + comp);
        }
        completion = gen.back();
        next.clear();
        next.reserve(p);
        for (Rat& x : exited)
            next.push_back(hold_back ? max(std::move(x), t) : std::move(x));
        next.push_back(completion);
    }

    Rat bound(const State& state, std::int64_t remaining) const {
        return state.back() + alpha + unit * Rat(remaining);
    }
};

// One pipeline segment over the chain p-1 -> ... -> 0; the state is each
// port's next idle time, and a transfer starts once the upstream value is
// combined and both endpoints are free.
struct PipelineStepper {
    Rat alpha, unit;

    using State = std::vector<Rat>;

    void step(const MachineParams& mp, const State& state, std::int64_t s,
              State& next, Rat& completion) const {
        Rat comm = comm_time(mp, s);
        Rat comp = comp_time(mp, s);
        next = state;
        Rat ready(0);
        for (std::size_t k = next.size() - 1; k >= 1; --k) {
            Rat start = max(ready, max(next[k], next[k - 1]));
            next[k] = start + comm;
            ready = start + comm + comp;
            next[k - 1] = ready;
        }
        completion = next[0];
    }

    Rat bound(const State& state, std::int64_t remaining) const {
        return max(state[0], state[1]) + alpha + unit * Rat(remaining);
    }
};

template <class Stepper>
struct OverallSearch {
    const MachineParams& mp;
    const Stepper& stepper;
    Rat best;
    bool have_best = false;
    std::vector<std::vector<std::int64_t>> ties;
    std::vector<std::int64_t> prefix;

    void run(const typename Stepper::State& state, std::int64_t remaining) {
        if (have_best && stepper.bound(state, remaining) > best) return;
        typename Stepper::State next;
        Rat completion;
        for (std::int64_t s = remaining; s >= 1; --s) {
            stepper.step(mp, state, s, next, completion);
            prefix.push_back(s);
            if (s == remaining) {
                if (!have_best || completion < best) {
                    best = completion;
                    have_best = true;
                    ties.clear();
                    ties.push_back(prefix);
                } else if (completion == best) {
                    ties.push_back(prefix);
                }
            } else {
                run(next, remaining - s);
            }
            prefix.pop_back();
        }
    }
};

template <class Stepper>
OverallBest search_overall(const MachineParams& mp, std::int64_t m,
                           const Stepper& stepper,
                           typename Stepper::State initial, std::size_t cap) {
    OverallSearch<Stepper> search{mp, stepper, Rat(0), false, {}, {}};
    search.run(initial, m);
    std::sort(search.ties.begin(), search.ties.end(), plan_order);
    OverallBest out;
    out.time = search.best;
    out.optima_count = static_cast<std::int64_t>(search.ties.size());
    std::size_t keep = std::min(cap, search.ties.size());
    out.plans.reserve(keep);
    for (std::size_t i = 0; i < keep; ++i)
        out.plans.push_back(SegmentPlan{std::move(search.ties[i])});
    return out;
}

}  // namespace

OverallBest best_overall_greedy(const MachineParams& mp, std::int64_t m,
                                LabScheduler sched, std::size_t cap) {
    if (m < 1) throw std::invalid_argument("best_overall: m must be positive");
    if (m > 14)
        throw std::invalid_argument(
            "best_overall: m = " + std::to_string(m) + " would search 2^" +
            std::to_string(m - 1) + " compositions; limit is m <= 14");
    if (mp.p < 2)
        throw std::invalid_argument("best_overall: p must be at least 2");
    Rat unit = mp.beta + mp.gamma;
    switch (sched) {
        case LabScheduler::GreedyInOrder:
        case LabScheduler::GreedyEager: {
            GreedyStepper stepper{sched == LabScheduler::GreedyInOrder,
                                  mp.alpha, unit};
            std::vector<Rat> initial(static_cast<std::size_t>(mp.p), Rat(0));
            return search_overall(mp, m, stepper, std::move(initial), cap);
        }
        case LabScheduler::Pipeline: {
            PipelineStepper stepper{mp.alpha, unit};
            std::vector<Rat> initial(static_cast<std::size_t>(mp.p), Rat(0));
            return search_overall(mp, m, stepper, std::move(initial), cap);
        }
        case LabScheduler::BiGreedyRounds:
            throw std::invalid_argument(
                "best_overall: the two-port round model prices equi-shaped "
                "plans only");
    }
    throw std::logic_error("unknown scheduler");
}

ExperimentGrid default_unequal_grid() {
    ExperimentGrid grid;
    for (std::int64_t a = 0; a <= 10; ++a) grid.alphas.push_back(a);
    for (std::int64_t a = 20; a <= 100; a += 10) grid.alphas.push_back(a);
    for (std::int64_t a = 200; a <= 1000; a += 100) grid.alphas.push_back(a);
    grid.gammas = {0, 1};
    for (std::int64_t p = 4; p <= 1024; p *= 2) grid.ps.push_back(p);
    for (std::int64_t p = 6; p <= 1536; p *= 2) grid.ps.push_back(p);
    std::sort(grid.ps.begin(), grid.ps.end());
    return grid;
}

std::vector<ExperimentRecord> unequal_experiment(const ExperimentGrid& grid,
                                                 LabScheduler sched) {
    ExperimentGrid g = grid;
    std::sort(g.alphas.begin(), g.alphas.end());
    std::sort(g.gammas.begin(), g.gammas.end());
    std::sort(g.ps.begin(), g.ps.end());
    std::vector<ExperimentRecord> records;
    records.resize(g.alphas.size() * g.gammas.size() * g.ps.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        std::size_t rest = i;
        ExperimentRecord& rec = records[i];
        rec.p = g.ps[rest % g.ps.size()];
        rest /= g.ps.size();
        rec.gamma = g.gammas[rest % g.gammas.size()];
        rec.alpha = g.alphas[rest / g.gammas.size()];
        rec.beta = g.beta;
        rec.m = g.m;
    }
    std::vector<std::int64_t> sweep_sizes, count_sizes;
    for (const SegmentPlan& plan : equi_plans(g.m))
        sweep_sizes.push_back(plan.sizes[0]);
    for (const SegmentPlan& plan : equi_plans_by_count(g.m))
        count_sizes.push_back(plan.sizes[0]);
    std::sort(count_sizes.begin(), count_sizes.end());
    detail::parallel_for_index(records.size(), [&](std::size_t i) {
        ExperimentRecord& rec = records[i];
        MachineParams mp{Rat(rec.alpha), Rat(rec.beta), Rat(rec.gamma), rec.p};
        rec.equi_sweep = best_equi_over(mp, sweep_sizes, g.m, sched);
        rec.equi_by_count = best_equi_over(mp, count_sizes, g.m, sched);
        rec.overall = best_overall_greedy(mp, g.m, sched);
        rec.ratio = rec.equi_sweep.time / rec.overall.time;
        rec.ratio_by_count = rec.equi_by_count.time / rec.overall.time;
        rec.equi_shape_optimal = rec.ratio == Rat(1);
    });
    return records;
}

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records) {
    ExperimentSummary s;
    s.points = static_cast<std::int64_t>(records.size());
    double sum = 0.0;
    for (const ExperimentRecord& rec : records) {
        if (rec.equi_shape_optimal) continue;
        ++s.unequal_count;
        if (rec.alpha > 0) ++s.unequal_alpha_positive;
        double r = rec.ratio_by_count.to_double();
        s.max_ratio = std::max(s.max_ratio, r);
        sum += r - 1.0;
    }
    if (s.unequal_count > 0)
        s.mean_improvement = sum / static_cast<double>(s.unequal_count);
    return s;
}

StandardsRecord ratio_vs_standards(const MachineParams& mp, std::int64_t m,
                                   PortModel model, GreedyVariant variant,
                                   EquiSearch search) {
    if (m < 1)
        throw std::invalid_argument("ratio_vs_standards: m must be positive");
    StandardsRecord rec;
    rec.m = m;
    rec.model = model;
    LabScheduler sched;
    if (model == PortModel::Unidirectional) {
        sched = variant == GreedyVariant::Eager ? LabScheduler::GreedyEager
                                                : LabScheduler::GreedyInOrder;
        rec.time_binomial =
            uni_time(Algorithm::Binomial, mp, MessageSpec{m, m}).to_double();
        rec.time_pipeline = uni_sopt_topt(Algorithm::Pipeline, mp, m).t_opt;
        rec.time_binary = uni_sopt_topt(Algorithm::Binary, mp, m).t_opt;
    } else {
        sched = LabScheduler::BiGreedyRounds;
        rec.time_binomial =
            bi_time(Algorithm::Binomial, mp, MessageSpec{m, m}).time.to_double();
        rec.time_pipeline = bi_sopt_topt(Algorithm::Pipeline, mp, m).t_opt;
        rec.time_binary = bi_sopt_topt(Algorithm::Binary, mp, m).t_opt;
        rec.time_butterfly =
            bi_time(Algorithm::Butterfly, mp, MessageSpec{m, m}).time.to_double();
    }
    EquiBest greedy = best_equi_greedy(mp, m, search, sched);
    rec.time_greedy = greedy.time.to_double();
    rec.greedy_segment_size = greedy.segment_size;
    double standards =
        std::min(rec.time_binomial, std::min(rec.time_pipeline, rec.time_binary));
    if (rec.time_butterfly) standards = std::min(standards, *rec.time_butterfly);
    rec.ratio = standards / rec.time_greedy;
    return rec;
}

namespace {

std::string plan_text(const SegmentPlan& plan) {
    std::string out;
    for (std::size_t i = 0; i < plan.sizes.size(); ++i) {
        if (i) out += '-';
        out += std::to_string(plan.sizes[i]);
    }
    return out;
}

std::string rat_text(const Rat& r, bool as_float) {
    if (!as_float) return r.str();
    std::ostringstream os;
    os.precision(12);
    os << r.to_double();
    return os.str();
}

}  // namespace

std::string experiment_csv(const std::vector<ExperimentRecord>& records,
                           bool as_float) {
    std::string out =
        "p,alpha,beta,gamma,m,ratio,ratio_by_count,equi_shape_optimal,"
        "best_time,optima_count,equi_sweep_size,equi_sweep_time,"
        "equi_by_count_size,equi_by_count_time,equi_sweep_plan,"
        "equi_by_count_plan,optimal_plans\n";
    for (const ExperimentRecord& rec : records) {
        out += std::to_string(rec.p) + ',' + std::to_string(rec.alpha) + ',' +
               std::to_string(rec.beta) + ',' + std::to_string(rec.gamma) +
               ',' + std::to_string(rec.m) + ',';
        out += rat_text(rec.ratio, as_float) + ',' +
               rat_text(rec.ratio_by_count, as_float) + ',';
        out += rec.equi_shape_optimal ? "1," : "0,";
        out += rat_text(rec.overall.time, as_float) + ',' +
               std::to_string(rec.overall.optima_count) + ',';
        out += std::to_string(rec.equi_sweep.segment_size) + ',' +
               rat_text(rec.equi_sweep.time, as_float) + ',';
        out += std::to_string(rec.equi_by_count.segment_size) + ',' +
               rat_text(rec.equi_by_count.time, as_float) + ',';
        out += plan_text(rec.equi_sweep.plan) + ',' +
               plan_text(rec.equi_by_count.plan) + ',';
        for (std::size_t i = 0; i < rec.overall.plans.size(); ++i) {
            if (i) out += ';';
            out += plan_text(rec.overall.plans[i]);
        }
        out += '\n';
    }
    return out;
}

std::string summary_json(const ExperimentSummary& s) {
    nlohmann::json j;
    j["points"] = s.points;
    j["unequal_count"] = s.unequal_count;
    j["unequal_count_alpha_positive"] = s.unequal_alpha_positive;
    j["max_ratio"] = s.max_ratio;
    j["mean_improvement"] = s.mean_improvement;
    return j.dump(2) + "\n";
}

}  // namespace redsched

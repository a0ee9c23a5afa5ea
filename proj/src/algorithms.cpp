#include "redsched/algorithms.hpp"

#include <algorithm>
#include <numeric>

namespace redsched {

Schedule schedule_binomial(const MachineParams& mp, std::int64_t m) {
    Schedule s;
    s.p = mp.p;
    s.plan.sizes = {m};
    s.params = mp;
    s.model = PortModel::Unidirectional;

    Rat comm = comm_time(mp, m);
    Rat comp = comp_time(mp, m);
    Rat round_start;
    std::vector<std::int64_t> active(mp.p);
    std::iota(active.begin(), active.end(), 0);
    while (active.size() > 1) {
        std::size_t n = active.size();
        std::size_t pairs = n / 2;
        for (std::size_t i = 0; i < pairs; ++i)
            s.events.push_back(Event{1, active[n - 1 - i], active[i],
                                     round_start, comm, comp});
        active.resize(n - pairs);
        round_start += comm + comp;
    }
    return s;
}

Schedule schedule_pipeline(const MachineParams& mp, const SegmentPlan& plan) {
    if (plan.count() < 1 || plan.total() < 1)
        throw std::invalid_argument("pipeline: empty plan");
    Schedule s;
    s.p = mp.p;
    s.plan = plan;
    s.params = mp;
    s.model = PortModel::Unidirectional;

    std::int64_t q = plan.count();
    // port_free[k]: when processor k's port is idle again; ready: when the
    // value for the current segment is combined at the sending node.
    std::vector<Rat> port_free(mp.p);
    std::vector<Rat> ready(mp.p);
    for (std::int64_t j = 1; j <= q; ++j) {
        Rat comm = comm_time(mp, plan.sizes[j - 1]);
        Rat comp = comp_time(mp, plan.sizes[j - 1]);
        ready[mp.p - 1] = Rat(0);
        for (std::int64_t k = mp.p - 1; k >= 1; --k) {
            Rat start = max(ready[k], max(port_free[k], port_free[k - 1]));
            s.events.push_back(Event{j, k, k - 1, start, comm, comp});
            port_free[k] = start + comm;
            port_free[k - 1] = start + comm + comp;
            ready[k - 1] = start + comm + comp;
        }
    }
    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const Event& a, const Event& b) {
                         return a.start < b.start;
                     });
    return s;
}

Rat pipeline_time(const MachineParams& mp, const SegmentPlan& plan) {
    if (plan.count() < 1 || plan.total() < 1)
        throw std::invalid_argument("pipeline: empty plan");
    if (mp.p < 2) throw std::invalid_argument("pipeline: p must be at least 2");
    std::int64_t q = plan.count();
    bool all_equal = std::all_of(
        plan.sizes.begin(), plan.sizes.end(),
        [&](std::int64_t sz) { return sz == plan.sizes[0]; });
    if (all_equal) {
        Rat comm = comm_time(mp, plan.sizes[0]);
        Rat comp = comp_time(mp, plan.sizes[0]);
        // With two processors there is no relay hop: segments serialize at
        // comm + comp instead of the steady-state shift of 2*comm + comp.
        if (mp.p == 2) return Rat(q) * (comm + comp);
        return Rat(mp.p - 1) * (comm + comp) +
               Rat(q - 1) * (Rat(2) * comm + comp);
    }
    std::vector<Rat> port_free(static_cast<std::size_t>(mp.p));
    std::vector<Rat> ready(static_cast<std::size_t>(mp.p));
    for (std::int64_t j = 1; j <= q; ++j) {
        Rat comm = comm_time(mp, plan.sizes[j - 1]);
        Rat comp = comp_time(mp, plan.sizes[j - 1]);
        ready[static_cast<std::size_t>(mp.p - 1)] = Rat(0);
        for (std::int64_t k = mp.p - 1; k >= 1; --k) {
            auto ku = static_cast<std::size_t>(k);
            Rat start = max(ready[ku], max(port_free[ku], port_free[ku - 1]));
            port_free[ku] = start + comm;
            port_free[ku - 1] = start + comm + comp;
            ready[ku - 1] = start + comm + comp;
        }
    }
    return port_free[0];
}

}  // namespace redsched

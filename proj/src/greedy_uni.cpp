#include "redsched/greedy_uni.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

namespace redsched {

namespace {

void check_inputs(const MachineParams& mp, const SegmentPlan& plan) {
    if (mp.p < 2) throw std::invalid_argument("greedy: p must be at least 2");
    if (plan.count() < 1) throw std::invalid_argument("greedy: empty plan");
    for (std::int64_t sz : plan.sizes)
        if (sz < 1) throw std::invalid_argument("greedy: segment size < 1");
    if (mp.alpha < Rat(0) || mp.beta < Rat(0) || mp.gamma < Rat(0))
        throw std::invalid_argument("greedy: negative rate");
}

}  // namespace

Schedule uni_greedy_schedule(const MachineParams& mp,
                             const SegmentPlan& plan) {
    check_inputs(mp, plan);
    Schedule s;
    s.p = mp.p;
    s.plan = plan;
    s.params = mp;
    s.model = PortModel::Unidirectional;

    // (state, id); ids are unique so a plain set keeps the order P(X).
    std::set<std::pair<Rat, std::int64_t>> active;
    for (std::int64_t i = 0; i < mp.p; ++i) active.emplace(Rat(0), i);
    std::vector<std::pair<std::int64_t, Rat>> exited;
    exited.reserve(static_cast<std::size_t>(mp.p));

    for (std::int64_t j = 1; j <= plan.count(); ++j) {
        Rat comm = comm_time(mp, plan.sizes[j - 1]);
        Rat comp = comp_time(mp, plan.sizes[j - 1]);
        exited.clear();
        Rat t_last;
        while (active.size() > 1) {
            auto it = active.begin();
            auto [x1, g1] = *it;
            auto [x2, g2] = *std::next(it);
            Rat t = x2;
            std::int64_t snd = g1, rcv = g2;
            if (snd == 0) std::swap(snd, rcv);
            s.events.push_back(Event{j, snd, rcv, t, comm, comp});
            active.erase(active.begin());
            active.erase(active.begin());
            exited.emplace_back(snd, t + comm);
            active.emplace(t + comm + comp, rcv);
            t_last = t;
        }
        // Processors idle since before the last start advance to it.
        for (const auto& [id, x] : exited)
            active.emplace(max(x, t_last), id);
    }
    return s;
}

Rat uni_greedy_time(const MachineParams& mp, const SegmentPlan& plan) {
    return uni_greedy_time(mp, plan, GreedyVariant::InOrder);
}

Rat uni_greedy_time(const MachineParams& mp, const SegmentPlan& plan,
                    GreedyVariant variant) {
    check_inputs(mp, plan);
    bool hold_back = variant == GreedyVariant::InOrder;
    std::int64_t p = mp.p;
    std::int64_t q = plan.count();
    bool equi = std::all_of(plan.sizes.begin(), plan.sizes.end(),
                            [&](std::int64_t sz) { return sz == plan.sizes[0]; });

    // Pairing depends only on the multiset of states, so events reduce to a
    // min-heap of values: pop the two smallest, re-insert the receiver.
    auto by_greater = std::greater<Rat>{};
    std::vector<Rat> heap(static_cast<std::size_t>(p), Rat(0));
    std::vector<Rat> exited;
    exited.reserve(static_cast<std::size_t>(p));
    std::vector<Rat> prev_boundary;
    Rat prev_survivor;
    bool have_prev = false;
    Rat survivor;

    for (std::int64_t k = 1; k <= q; ++k) {
        if (equi && q > k) {
            std::vector<Rat> boundary = heap;
            std::sort(boundary.begin(), boundary.end());
            if (have_prev) {
                Rat delta = boundary[0] - prev_boundary[0];
                bool uniform = true;
                for (std::size_t i = 1; i < boundary.size(); ++i)
                    if (boundary[i] - prev_boundary[i] != delta) {
                        uniform = false;
                        break;
                    }
                // One segment shifts every state by the same amount, so the
                // remainder of the plan repeats that shift.
                if (uniform) return prev_survivor + Rat(q - k + 1) * delta;
            }
            prev_boundary = std::move(boundary);
        }

        Rat comm = comm_time(mp, plan.sizes[k - 1]);
        Rat comp = comp_time(mp, plan.sizes[k - 1]);
        std::make_heap(heap.begin(), heap.end(), by_greater);
        exited.clear();
        Rat t;
        while (heap.size() > 1) {
            std::pop_heap(heap.begin(), heap.end(), by_greater);
            heap.pop_back();
            t = heap.front();
            std::pop_heap(heap.begin(), heap.end(), by_greater);
            heap.back() = t + comm + comp;
            std::push_heap(heap.begin(), heap.end(), by_greater);
            exited.push_back(t + comm);
        }
        survivor = heap[0];
        if (equi && q > k) {
            prev_survivor = survivor;
            have_prev = true;
        }
        if (k < q) {
            heap.resize(1);
            heap[0] = survivor;
            for (const Rat& x : exited)
                heap.push_back(hold_back ? max(x, t) : x);
        }
    }
    return survivor;
}

namespace {

struct OracleSearch {
    std::int64_t p;
    std::vector<Rat> comm, comp, tail;
    std::int64_t max_nodes;
    std::int64_t nodes = 0;
    Rat best;
    bool have_best = false;

    Rat lower_bound(const std::vector<Rat>& x, const std::vector<char>& in,
                    std::size_t k) const {
        Rat lo = x[0];
        for (std::int64_t i = 1; i < p; ++i)
            if (in[static_cast<std::size_t>(i)])
                lo = max(lo, x[static_cast<std::size_t>(i)] + comm[k] + comp[k]);
        return lo + tail[k + 1];
    }

    void dfs(std::vector<Rat>& x, std::vector<char>& in, std::size_t k) {
        if (++nodes > max_nodes)
            throw std::runtime_error("brute force: node budget exhausted");
        if (have_best && !(lower_bound(x, in, k) < best)) return;

        std::int64_t remaining = std::count(in.begin(), in.end(), char(1));
        if (remaining == 1) {
            if (k + 1 == comm.size()) {
                if (!have_best || x[0] < best) {
                    best = x[0];
                    have_best = true;
                }
                return;
            }
            std::vector<char> all(in.size(), 1);
            dfs(x, all, k + 1);
            return;
        }

        struct Move {
            Rat t, xa, xb;
            std::int64_t a, b;
        };
        std::vector<Move> moves;
        for (std::int64_t a = 1; a < p; ++a) {
            if (!in[static_cast<std::size_t>(a)]) continue;
            for (std::int64_t b = 0; b < p; ++b) {
                if (b == a || !in[static_cast<std::size_t>(b)]) continue;
                const Rat& xa = x[static_cast<std::size_t>(a)];
                const Rat& xb = x[static_cast<std::size_t>(b)];
                moves.push_back(Move{max(xa, xb), xa, xb, a, b});
            }
        }
        std::sort(moves.begin(), moves.end(), [](const Move& l, const Move& r) {
            return std::tie(l.t, l.xa, l.xb) < std::tie(r.t, r.xa, r.xb);
        });

        std::vector<std::tuple<Rat, Rat, bool>> seen;
        for (const Move& mv : moves) {
            // Two moves with equal participant states and the same
            // root-involvement lead to interchangeable futures.
            std::tuple<Rat, Rat, bool> key{mv.xa, mv.xb, mv.b == 0};
            if (std::find(seen.begin(), seen.end(), key) != seen.end())
                continue;
            seen.push_back(key);

            std::vector<Rat> nx = x;
            std::vector<char> ni = in;
            nx[static_cast<std::size_t>(mv.a)] = mv.t + comm[k];
            nx[static_cast<std::size_t>(mv.b)] = mv.t + comm[k] + comp[k];
            ni[static_cast<std::size_t>(mv.a)] = 0;
            for (std::int64_t i = 0; i < p; ++i)
                if (i != mv.a && i != mv.b &&
                    nx[static_cast<std::size_t>(i)] < mv.t)
                    nx[static_cast<std::size_t>(i)] = mv.t;
            dfs(nx, ni, k);
        }
    }
};

}  // namespace

Rat brute_force_min_time(const MachineParams& mp, const SegmentPlan& plan,
                         const OracleLimits& limits) {
    check_inputs(mp, plan);
    if (mp.p > 6)
        throw std::invalid_argument("brute force: p is limited to 6");
    if (plan.count() > 3)
        throw std::invalid_argument("brute force: at most three segments");

    OracleSearch search;
    search.p = mp.p;
    search.max_nodes = limits.max_nodes;
    std::size_t q = static_cast<std::size_t>(plan.count());
    search.comm.reserve(q);
    search.comp.reserve(q);
    for (std::int64_t sz : plan.sizes) {
        search.comm.push_back(comm_time(mp, sz));
        search.comp.push_back(comp_time(mp, sz));
    }
    search.tail.assign(q + 1, Rat(0));
    for (std::size_t j = q; j-- > 0;)
        search.tail[j] = search.tail[j + 1] + search.comm[j] + search.comp[j];

    std::vector<Rat> x(static_cast<std::size_t>(mp.p), Rat(0));
    std::vector<char> in(static_cast<std::size_t>(mp.p), 1);
    search.dfs(x, in, 0);
    return search.best;
}

}  // namespace redsched

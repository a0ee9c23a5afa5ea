#include "redsched/greedy_bi.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace redsched {

namespace {

std::int64_t lcm_checked(std::int64_t a, std::int64_t b) {
    __int128 v = static_cast<__int128>(a) / std::gcd(a, b) * b;
    if (v > INT64_MAX)
        throw std::overflow_error("duration scale factor overflows");
    return static_cast<std::int64_t>(v);
}

}  // namespace

std::int64_t discrete_time_scale(const MachineParams& mp) {
    return lcm_checked(lcm_checked(mp.alpha.den(), mp.beta.den()),
                       mp.gamma.den());
}

MachineParams scale_rates(const MachineParams& mp, std::int64_t factor) {
    if (factor < 1) throw std::invalid_argument("scale factor must be >= 1");
    Rat f(factor);
    return MachineParams{mp.alpha * f, mp.beta * f, mp.gamma * f, mp.p};
}

Schedule bi_greedy_schedule(const MachineParams& mp, const SegmentPlan& plan) {
    if (mp.p < 2) throw std::invalid_argument("bi-greedy: p must be at least 2");
    if (plan.count() < 1) throw std::invalid_argument("bi-greedy: empty plan");
    if (mp.alpha < Rat(0) || mp.beta < Rat(0) || mp.gamma < Rat(0))
        throw std::invalid_argument("bi-greedy: negative rate");

    std::int64_t p = mp.p;
    std::int64_t q = plan.count();
    std::vector<std::int64_t> tc(static_cast<std::size_t>(q));
    std::vector<std::int64_t> tg(static_cast<std::size_t>(q));
    for (std::int64_t j = 0; j < q; ++j) {
        Rat comm = comm_time(mp, plan.sizes[static_cast<std::size_t>(j)]);
        Rat comp = comp_time(mp, plan.sizes[static_cast<std::size_t>(j)]);
        if (!comm.is_integer() || !comp.is_integer())
            throw std::invalid_argument(
                "bi-greedy runs on integer time steps; scale the rates "
                "(see discrete_time_scale)");
        tc[static_cast<std::size_t>(j)] = comm.num();
        tg[static_cast<std::size_t>(j)] = comp.num();
        if (tc[static_cast<std::size_t>(j)] < 1)
            throw std::invalid_argument(
                "bi-greedy: communication time must be at least one step");
    }

    Schedule out;
    out.p = p;
    out.plan = plan;
    out.params = mp;
    out.model = PortModel::Bidirectional;

    std::vector<std::int64_t> S(static_cast<std::size_t>(p), 0);
    std::vector<std::int64_t> R(static_cast<std::size_t>(p), 0);
    std::vector<std::int64_t> C1(static_cast<std::size_t>(p), 0);
    std::vector<std::int64_t> C2(static_cast<std::size_t>(p), 0);
    // finished-send time per (processor, segment); root row holds the time
    // of the segment's final computation instead
    std::vector<std::int64_t> M(static_cast<std::size_t>(p * q), 0);
    auto fin = [&](std::int64_t i, std::int64_t j) -> std::int64_t& {
        return M[static_cast<std::size_t>(i * q + j - 1)];
    };

    std::int64_t round_max = 0;
    for (std::int64_t j = 0; j < q; ++j)
        round_max = std::max(round_max, tc[static_cast<std::size_t>(j)] +
                                            tg[static_cast<std::size_t>(j)]);
    const std::int64_t t_bound = (ceil_log2(p) + q) * round_max * 4;

    std::vector<std::int64_t> send, recv, free_procs;
    std::int64_t unfinished_root = q;
    for (std::int64_t t = 0; unfinished_root > 0; ++t) {
        if (t > t_bound)
            throw std::runtime_error("bi-greedy did not terminate in time");
        std::int64_t j = 0;
        while (fin(0, j + 1) != 0) ++j;  // first segment the root still owes

        while (true) {
            ++j;
            std::int64_t d = tc[static_cast<std::size_t>(j - 1)];
            std::int64_t g = tg[static_cast<std::size_t>(j - 1)];

            send.clear();
            recv.clear();
            free_procs.clear();
            for (std::int64_t i = 0; i < p; ++i) {
                std::size_t ui = static_cast<std::size_t>(i);
                if (fin(i, j) != 0) continue;
                // communication may not overlap the pending computation
                bool comm_blocked =
                    std::max(t, C1[ui]) < std::min(t + d, C2[ui]);
                if (comm_blocked) continue;
                bool can_send = i != 0 && S[ui] <= t;
                // receiving ends with a computation, which must not overlap
                // a send still in flight
                bool can_recv = R[ui] <= t && (g == 0 || S[ui] <= t + d);
                if (can_send && can_recv)
                    free_procs.push_back(i);
                else if (can_send)
                    send.push_back(i);
                else if (can_recv)
                    recv.push_back(i);
            }

            std::int64_t s = static_cast<std::int64_t>(send.size());
            std::int64_t r = static_cast<std::int64_t>(recv.size());
            std::int64_t f = static_cast<std::int64_t>(free_procs.size());
            auto take_front = [&](std::vector<std::int64_t>& dst,
                                  std::int64_t n) {
                dst.insert(dst.end(), free_procs.begin(),
                           free_procs.begin() + n);
            };
            auto take_back = [&](std::vector<std::int64_t>& dst,
                                 std::int64_t n) {
                dst.insert(dst.end(), free_procs.end() - n, free_procs.end());
            };
            if (s == r) {
                std::int64_t y = f / 2;
                take_back(send, y);
                take_front(recv, y);
            } else if (s < r) {
                std::int64_t y = r - s;
                std::int64_t m = std::min(f, y);
                std::int64_t x = (f - m) / 2;
                if (m > 0) take_back(send, m + x);
                if (x > 0) take_front(recv, x);
            } else {
                std::int64_t y = s - r;
                std::int64_t m = std::min(f, y);
                std::int64_t x = (f - m) / 2;
                if (m > 0) take_front(recv, m + x);
                if (x > 0) take_back(send, x);
            }
            std::sort(send.begin(), send.end());
            std::sort(recv.begin(), recv.end());
            std::size_t l = std::min(send.size(), recv.size());

            for (std::size_t k = 0; k < l; ++k) {
                std::int64_t a = send[k];
                std::int64_t b = recv[k];
                out.events.push_back(Event{j, a, b, Rat(t), Rat(d), Rat(g)});
                fin(a, j) = t + d;
                S[static_cast<std::size_t>(a)] = t + d;
                R[static_cast<std::size_t>(b)] = t + d + g;
                C1[static_cast<std::size_t>(b)] = t + d;
                C2[static_cast<std::size_t>(b)] = t + d + g;
            }

            std::int64_t open = 0;
            for (std::int64_t i = 0; i < p; ++i)
                if (fin(i, j) == 0) ++open;
            if (open == 1) {
                std::int64_t last = 0;
                for (std::int64_t i = 1; i < p; ++i)
                    last = std::max(last, fin(i, j));
                fin(0, j) = last + g;
                --unfinished_root;
            }

            std::int64_t ports = 0;
            for (std::int64_t i = 0; i < p; ++i) {
                if (S[static_cast<std::size_t>(i)] <= t) ++ports;
                if (R[static_cast<std::size_t>(i)] <= t) ++ports;
            }
            if (ports < 2 || j >= q) break;
        }
    }
    return out;
}

ConjectureReport check_round_conjecture(
    std::int64_t p_lo, std::int64_t p_hi, std::int64_t q_lo, std::int64_t q_hi,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& costs) {
    ConjectureReport report;
    for (const auto& [comm, comp] : costs) {
        for (std::int64_t p = p_lo; p <= p_hi; ++p) {
            for (std::int64_t q = q_lo; q <= q_hi; ++q) {
                MachineParams mp{Rat(comm), Rat(0), Rat(comp), p};
                Schedule s = bi_greedy_schedule(mp, SegmentPlan::equi(q, 1));
                Rat got = simulate(s).completion;
                Rat want = Rat(ceil_log2(p) + q - 1) * Rat(comm + comp);
                ++report.cases;
                if (got != want)
                    report.mismatches.push_back(
                        ConjectureMismatch{p, q, comm, comp, got, want});
            }
        }
    }
    return report;
}

}  // namespace redsched

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "redsched/cost_model.hpp"
#include "redsched/rational.hpp"
#include "redsched/schedule_core.hpp"

namespace redsched {

// Discrete-time port-filling scheduler for the bidirectional model. Each
// time step fills as many send/receive port pairs as possible, giving
// priority to the lowest unfinished segment; a processor may receive a
// segment before it has sent a smaller one. Requires every per-segment
// communication and computation time to be a nonnegative integer (with
// communication at least 1); scale the rates first if they are not.
Schedule bi_greedy_schedule(const MachineParams& mp, const SegmentPlan& plan);

// Smallest factor that turns alpha, beta, and gamma into integers, making
// every derived duration integral.
std::int64_t discrete_time_scale(const MachineParams& mp);

// Multiplies the three rates by a factor, leaving p untouched. Completion
// times scale by the same factor.
MachineParams scale_rates(const MachineParams& mp, std::int64_t factor);

struct ConjectureMismatch {
    std::int64_t p, q, comm, comp;
    Rat got, want;
};

struct ConjectureReport {
    std::int64_t cases = 0;
    std::vector<ConjectureMismatch> mismatches;
};

// Simulates bi-greedy over the grid and compares every completion with
// (ceil(log2 p) + q - 1) * (comm + comp), the round count of a reversed
// optimal broadcast. Mismatches are reported, not thrown.
ConjectureReport check_round_conjecture(
    std::int64_t p_lo, std::int64_t p_hi, std::int64_t q_lo, std::int64_t q_hi,
    const std::vector<std::pair<std::int64_t, std::int64_t>>& costs);

}  // namespace redsched

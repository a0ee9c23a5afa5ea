#pragma once

#include <cstdint>

#include "redsched/cost_model.hpp"
#include "redsched/rational.hpp"
#include "redsched/schedule_core.hpp"

namespace redsched {

// Greedy scheduler for the unidirectional port model. Segments are processed
// in order; within a segment the two processors with the smallest completion
// states are paired, the smaller one sending to the larger, and the pair
// starts as soon as the receiver is free. Ties break toward the lower
// processor id, and the root swaps into the receiving role when it would
// otherwise be selected to send.
Schedule uni_greedy_schedule(const MachineParams& mp, const SegmentPlan& plan);

// Completion time of uni_greedy_schedule without materializing events.
// Equi-segment plans detect the steady per-segment shift and extrapolate,
// so very long plans stay cheap.
Rat uni_greedy_time(const MachineParams& mp, const SegmentPlan& plan);

// InOrder matches uni_greedy_schedule: a processor that finished sending a
// segment waits out the segment's remaining pair starts before rejoining.
// Eager drops the wait — a sender is available again the moment its
// transfer ends — which lets later segments overlap earlier ones.  Eager
// runs never finish later than in-order runs on the same plan.
enum class GreedyVariant { InOrder, Eager };

Rat uni_greedy_time(const MachineParams& mp, const SegmentPlan& plan,
                    GreedyVariant variant);

struct OracleLimits {
    std::int64_t max_nodes = 20'000'000;
};

// Exhaustive minimum completion over all schedules that reduce segments in
// order: any sender/receiver pair may be chosen at each step, started as
// soon as both are free. Exponential; restricted to p <= 6 and at most
// three segments. Throws when the node budget is exhausted.
Rat brute_force_min_time(const MachineParams& mp, const SegmentPlan& plan,
                         const OracleLimits& limits = {});

}  // namespace redsched

#pragma once

#include "redsched/schedule_core.hpp"

namespace redsched {

// Round-synchronized binomial-tree reduction on the whole message (no
// segmentation): each round the upper half of the surviving ids sends to
// the lower half, highest sender to lowest receiver; round r starts when
// round r-1's receivers finish combining.  Simulates to exactly
// ceil(log2 p) * (alpha + beta*m + gamma*m).
Schedule schedule_binomial(const MachineParams& mp, std::int64_t m);

// Chain pipeline p-1 -> p-2 -> ... -> 0.  Every node handles segments in
// order, alternating receive and forward, and each transfer starts as soon
// as the data is combined and both one-port endpoints are idle.  Completion
// can beat the closed-form upper bound.
Schedule schedule_pipeline(const MachineParams& mp, const SegmentPlan& plan);

// Completion time of schedule_pipeline without materializing events.
// All-equal plans settle into a fixed per-segment shift of 2*comm + comp
// and are evaluated in closed form.
Rat pipeline_time(const MachineParams& mp, const SegmentPlan& plan);

}  // namespace redsched

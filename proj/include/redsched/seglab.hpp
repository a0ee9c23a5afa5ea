#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redsched/cost_model.hpp"
#include "redsched/greedy_uni.hpp"
#include "redsched/rational.hpp"
#include "redsched/schedule_core.hpp"

namespace redsched {

// Segmentation search: equi-segment sweeps, full composition enumeration,
// the unequal-segmentation grid experiment, and ratio curves against the
// closed-form standard algorithms.

// 2^{m-1}, the number of ordered compositions of m.
std::int64_t composition_count(std::int64_t m);

// Every ordered composition of m, by part count and then lexicographically
// descending within a count: m=3 gives (3),(2,1),(1,2),(1,1,1).
// Refuses m outside [1,20]; the error message carries the count estimate.
std::vector<SegmentPlan> compositions(std::int64_t m);

// Equi-shaped plans (s,...,s,r) with 0 < r <= s, enumerated by segment
// size s = 1..m, deduplicated.
std::vector<SegmentPlan> equi_plans(std::int64_t m);

// The same shapes enumerated by segment count q = 1..m with s = ceil(m/q).
// A strictly smaller family: m=10 yields sizes {10,5,4,3,2,1} only.  This
// is the sweep the reference experiment tables were computed with.
std::vector<SegmentPlan> equi_plans_by_count(std::int64_t m);

// Which scheduler prices a plan in the searches below.
enum class LabScheduler {
    GreedyInOrder,   // uni_greedy_time, InOrder variant
    GreedyEager,     // uni_greedy_time, Eager variant
    Pipeline,        // pipeline_time
    BiGreedyRounds,  // two-port greedy round count (equi plans only)
};

Rat lab_plan_time(const MachineParams& mp, const SegmentPlan& plan,
                  LabScheduler sched);

enum class EquiSearch {
    Exhaustive,         // every s = 1..m (refused for m > 1024)
    PowTwoPlusFormula,  // {2^i <= m} + {1, m} + clamped optimal-size neighbors
};

struct EquiBest {
    SegmentPlan plan;
    Rat time;
    std::int64_t segment_size = 0;
};

// Best equi plan under the scheduler; ties go to the larger segment size.
EquiBest best_equi_greedy(const MachineParams& mp, std::int64_t m,
                          EquiSearch search = EquiSearch::Exhaustive,
                          LabScheduler sched = LabScheduler::GreedyEager);

struct OverallBest {
    // Optimal plans by part count and then lexicographically descending,
    // truncated to the cap; optima_count is the untruncated tie count.
    std::vector<SegmentPlan> plans;
    Rat time;
    std::int64_t optima_count = 0;
};

// Minimum time over all 2^{m-1} compositions, with the full argmin set.
// Shares work across plans with a common prefix and prunes subtrees whose
// best possible completion already exceeds the incumbent.  Refuses m > 14.
OverallBest best_overall_greedy(const MachineParams& mp, std::int64_t m,
                                LabScheduler sched = LabScheduler::GreedyEager,
                                std::size_t cap = 32);

struct ExperimentGrid {
    std::vector<std::int64_t> alphas;
    std::vector<std::int64_t> gammas;
    std::vector<std::int64_t> ps;
    std::int64_t beta = 1;
    std::int64_t m = 10;
};

// 29 alpha values (0..10, 20..100 by 10, 200..1000 by 100), gamma in {0,1},
// p in {2^n : n=2..10} and {3*2^n : n=1..9}; beta=1, m=10.  1044 points.
ExperimentGrid default_unequal_grid();

struct ExperimentRecord {
    std::int64_t p = 0, alpha = 0, beta = 1, gamma = 0, m = 0;
    EquiBest equi_sweep;     // best over sizes s = 1..m
    EquiBest equi_by_count;  // best over counts q = 1..m
    OverallBest overall;
    Rat ratio;               // equi_sweep.time / overall.time
    Rat ratio_by_count;      // equi_by_count.time / overall.time
    // True when some optimal plan is equi-shaped; equivalent to ratio == 1.
    bool equi_shape_optimal = false;
};

// One record per grid point, ordered by (alpha, gamma, p) ascending.
std::vector<ExperimentRecord> unequal_experiment(
    const ExperimentGrid& grid,
    LabScheduler sched = LabScheduler::GreedyEager);

struct ExperimentSummary {
    std::int64_t points = 0;
    // Points whose optimal set contains no equi-shaped plan (ratio > 1).
    std::int64_t unequal_count = 0;
    std::int64_t unequal_alpha_positive = 0;
    // Statistics of the by-count ratios over those points, matching how the
    // reference tables report improvements; zero when no point qualifies.
    double max_ratio = 0.0;
    double mean_improvement = 0.0;
};

ExperimentSummary summarize(const std::vector<ExperimentRecord>& records);

struct StandardsRecord {
    std::int64_t m = 0;
    PortModel model = PortModel::Unidirectional;
    double time_binomial = 0.0;
    double time_pipeline = 0.0;  // closed form at its real-valued optimum
    double time_binary = 0.0;    // closed form at its real-valued optimum
    std::optional<double> time_butterfly;  // two-port model only
    double time_greedy = 0.0;
    std::int64_t greedy_segment_size = 0;
    double ratio = 0.0;  // min standard time / greedy best-equi time
};

// Best standard algorithm versus the greedy best equi plan (power-of-two
// and formula-neighbor candidates by default).  The two-port model prices
// greedy by its round count and adds butterfly to the standards; `variant`
// selects the one-port greedy dynamics and is ignored for two-port.
StandardsRecord ratio_vs_standards(
    const MachineParams& mp, std::int64_t m, PortModel model,
    GreedyVariant variant = GreedyVariant::Eager,
    EquiSearch search = EquiSearch::PowTwoPlusFormula);

// One CSV row per record, ordered as produced; rationals exact "n/d" by
// default or decimal with as_float.
std::string experiment_csv(const std::vector<ExperimentRecord>& records,
                           bool as_float = false);

std::string summary_json(const ExperimentSummary& s);

}  // namespace redsched

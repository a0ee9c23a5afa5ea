#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "redsched/rational.hpp"

namespace redsched {

// Machine model: point-to-point transfer of s units costs alpha + beta*s,
// combining two s-unit operands costs gamma*s.  Communication and
// computation never overlap on a processor.
struct MachineParams {
    Rat alpha, beta, gamma;
    std::int64_t p = 2;

    friend bool operator==(const MachineParams&, const MachineParams&) =
        default;
};

// Message of m units cut into q = ceil(m/s) segments of size s (closed-form
// evaluation prices every segment at s, so results are upper bounds when
// s does not divide m).
struct MessageSpec {
    std::int64_t m = 1;
    std::int64_t s = 1;
};

enum class Algorithm { Binomial, Pipeline, Binary, BiGreedy, Butterfly };

const char* algorithm_name(Algorithm a);

struct LowerBounds {
    Rat latency, bandwidth, computation;
};

// Real-valued optimum of a closed-form time over the segment size.  When the
// formula degenerates (zero denominator or beta+gamma = 0) `degenerate` is
// set, s_opt falls back to m and t_opt to the time at a single segment of
// size m.  `candidates` are the integer sizes worth probing in a sweep.
struct OptimalSegment {
    double s_opt = 0.0;
    double t_opt = 0.0;
    bool degenerate = false;
    std::vector<std::int64_t> candidates;
};

struct BiTime {
    Rat time;
    // Butterfly with p not a power of two: the closed form only bounds the
    // achievable time from below.
    bool lower_bound_only = false;
};

struct ButterflyWitness {
    bool exists = false;
    std::optional<std::int64_t> witness_m;
};

std::int64_t ceil_log2(std::int64_t v);
std::int64_t segment_count(std::int64_t m, std::int64_t s);

Rat comm_time(const MachineParams& mp, std::int64_t s);
Rat comp_time(const MachineParams& mp, std::int64_t s);
// alpha + beta*s + gamma*s, the cost of one communicate-then-combine round.
Rat round_time(const MachineParams& mp, std::int64_t s);

// One-port systems (send xor receive).  Binomial ignores s; pipeline and
// binary require p > 3.
Rat uni_time(Algorithm a, const MachineParams& mp, const MessageSpec& ms);
OptimalSegment uni_sopt_topt(Algorithm a, const MachineParams& mp,
                             std::int64_t m);

// Two-port systems (simultaneous send + receive).  Butterfly ignores s.
BiTime bi_time(Algorithm a, const MachineParams& mp, const MessageSpec& ms);
OptimalSegment bi_sopt_topt(Algorithm a, const MachineParams& mp,
                            std::int64_t m);

// Bounds no reduction algorithm can beat (the bandwidth term is 2m*beta for
// p >= 3, m*beta for p = 2).
LowerBounds reduce_lower_bounds(const MachineParams& mp, std::int64_t m);
// Per-algorithm structural bounds; valid for p > 2.
LowerBounds algorithm_lower_bounds(Algorithm a, const MachineParams& mp,
                                   std::int64_t m);
// Sum of the three reduce lower-bound terms with the two-port bandwidth m*beta.
Rat reference_line(const MachineParams& mp, std::int64_t m);

// Scans integer m in [m_lo, m_hi] for bi_time(butterfly) < T_opt(bigreedy),
// and solves the same inequality analytically as a quadratic in sqrt(m);
// `exists` is true when either method finds a witness, `witness_m` is the
// first scanned hit.
ButterflyWitness butterfly_beats_bigreedy(const MachineParams& mp,
                                          std::int64_t m_lo,
                                          std::int64_t m_hi);

// Critical beta/gamma ratio below which some message size makes butterfly
// beat bi-greedy; independent of alpha.
double butterfly_threshold_ratio(std::int64_t p);
Rat butterfly_threshold_exact(std::int64_t p);
// Same threshold found by bisecting the ratio and numerically minimizing the
// time difference over sqrt(m) at the given alpha.
double butterfly_threshold_scan(std::int64_t p, double alpha);

}  // namespace redsched

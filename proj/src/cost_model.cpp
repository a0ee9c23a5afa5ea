#include "redsched/cost_model.hpp"

#include <algorithm>
#include <cmath>

namespace redsched {

namespace {

void check_params(const MachineParams& mp) {
    if (mp.p < 2) throw std::invalid_argument("machine: p must be >= 2");
    if (mp.alpha < Rat(0) || mp.beta < Rat(0) || mp.gamma < Rat(0))
        throw std::invalid_argument("machine: rates must be nonnegative");
}

void check_size(std::int64_t s) {
    if (s < 1) throw std::invalid_argument("segment size must be >= 1");
}

void check_spec(const MessageSpec& ms) {
    if (ms.m < 1) throw std::invalid_argument("message size must be >= 1");
    check_size(ms.s);
}

bool is_pow2(std::int64_t v) { return v >= 1 && (v & (v - 1)) == 0; }

std::vector<std::int64_t> clamped_candidates(double s_opt, std::int64_t m) {
    auto clamp = [m](std::int64_t v) { return std::clamp<std::int64_t>(v, 1, m); };
    std::vector<std::int64_t> c{
        clamp(static_cast<std::int64_t>(std::floor(s_opt))),
        clamp(static_cast<std::int64_t>(std::ceil(s_opt))), 1, m};
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

// Optimum of k*(alpha + (beta+gamma)s) + w*m/s*(beta+gamma)-style forms:
// rounds(s) = base + extra*(q-1) with q = ceil(m/s) and every round costing
// alpha + (beta+gamma)s.  Real relaxation q = m/s gives
// s_opt = sqrt(extra*m*alpha / (denom*(beta+gamma))) with denom = base-extra,
// T_opt = scale*[sqrt(denom*alpha) + sqrt(extra*m*(beta+gamma))]^2 — callers
// pass the per-table constants instead.
struct SoptSpec {
    Rat denom;      // coefficient of alpha under the first square root
    Rat bw_factor;  // multiplies m*(beta+gamma) under the second square root
    Rat scale;      // leading factor on T_opt
};

template <class TimeAtOneSegment>
OptimalSegment optimal_from(const MachineParams& mp, std::int64_t m,
                            const SoptSpec& spec,
                            TimeAtOneSegment time_at_one_segment) {
    Rat bg = mp.beta + mp.gamma;
    OptimalSegment out;
    if (bg.is_zero() || spec.denom.is_zero()) {
        out.degenerate = true;
        out.s_opt = static_cast<double>(m);
        out.t_opt = time_at_one_segment().to_double();
        out.candidates = clamped_candidates(out.s_opt, m);
        return out;
    }
    double a = mp.alpha.to_double();
    double d = spec.denom.to_double();
    double f = spec.bw_factor.to_double();
    double g = bg.to_double();
    out.s_opt = std::sqrt(f * static_cast<double>(m) * a / (d * g));
    double root = std::sqrt(d * a) + std::sqrt(f * static_cast<double>(m) * g);
    out.t_opt = spec.scale.to_double() * root * root;
    out.candidates = clamped_candidates(out.s_opt, m);
    return out;
}

}  // namespace

const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Binomial: return "binomial";
        case Algorithm::Pipeline: return "pipeline";
        case Algorithm::Binary: return "binary";
        case Algorithm::BiGreedy: return "bigreedy";
        case Algorithm::Butterfly: return "butterfly";
    }
    return "?";
}

std::int64_t ceil_log2(std::int64_t v) {
    if (v < 1) throw std::invalid_argument("ceil_log2: argument must be >= 1");
    std::int64_t k = 0;
    while ((static_cast<std::int64_t>(1) << k) < v) ++k;
    return k;
}

std::int64_t segment_count(std::int64_t m, std::int64_t s) {
    check_size(s);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    return (m + s - 1) / s;
}

Rat comm_time(const MachineParams& mp, std::int64_t s) {
    check_params(mp);
    check_size(s);
    return mp.alpha + mp.beta * Rat(s);
}

Rat comp_time(const MachineParams& mp, std::int64_t s) {
    check_params(mp);
    check_size(s);
    return mp.gamma * Rat(s);
}

Rat round_time(const MachineParams& mp, std::int64_t s) {
    check_params(mp);
    check_size(s);
    return mp.alpha + (mp.beta + mp.gamma) * Rat(s);
}

Rat uni_time(Algorithm a, const MachineParams& mp, const MessageSpec& ms) {
    check_params(mp);
    check_spec(ms);
    std::int64_t q = segment_count(ms.m, ms.s);
    switch (a) {
        case Algorithm::Binomial:
            return Rat(ceil_log2(mp.p)) * round_time(mp, ms.m);
        case Algorithm::Pipeline: {
            if (mp.p <= 3) throw std::domain_error("pipeline requires p > 3");
            Rat r = round_time(mp, ms.s);
            return Rat(mp.p - 1) * r + Rat(2 * (q - 1)) * r;
        }
        case Algorithm::Binary: {
            if (mp.p <= 3) throw std::domain_error("binary requires p > 3");
            std::int64_t n = ceil_log2(mp.p + 1);
            Rat r = round_time(mp, ms.s);
            return Rat(2 * (n - 1)) * r + Rat(4 * (q - 1)) * r;
        }
        default:
            throw std::domain_error(
                "one-port time is defined for binomial, pipeline, binary");
    }
}

OptimalSegment uni_sopt_topt(Algorithm a, const MachineParams& mp,
                             std::int64_t m) {
    check_params(mp);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    if (mp.p <= 3) throw std::domain_error("segment optimum requires p > 3");
    SoptSpec spec;
    spec.bw_factor = Rat(2);
    switch (a) {
        case Algorithm::Pipeline:
            spec.denom = Rat(mp.p - 3);
            spec.scale = Rat(1);
            break;
        case Algorithm::Binary:
            spec.denom = Rat(ceil_log2(mp.p + 1) - 3);
            spec.scale = Rat(2);
            break;
        default:
            throw std::domain_error(
                "one-port segment optimum is defined for pipeline, binary");
    }
    return optimal_from(mp, m, spec, [&] { return uni_time(a, mp, MessageSpec{m, m}); });
}

BiTime bi_time(Algorithm a, const MachineParams& mp, const MessageSpec& ms) {
    check_params(mp);
    check_spec(ms);
    if (mp.p <= 3) throw std::domain_error("two-port time requires p > 3");
    std::int64_t q = segment_count(ms.m, ms.s);
    std::int64_t l = ceil_log2(mp.p);
    BiTime out;
    switch (a) {
        case Algorithm::Binomial:
            out.time = Rat(l) * round_time(mp, ms.m);
            return out;
        case Algorithm::Pipeline:
            out.time = Rat(mp.p + q - 2) * round_time(mp, ms.s);
            return out;
        case Algorithm::Binary:
            out.time = Rat(2 * (ceil_log2(mp.p + 1) + q - 1)) *
                       round_time(mp, ms.s);
            return out;
        case Algorithm::BiGreedy:
            out.time = Rat(l + q - 1) * round_time(mp, ms.s);
            return out;
        case Algorithm::Butterfly: {
            Rat frac(mp.p - 1, mp.p);
            out.time = Rat(2 * l) * mp.alpha +
                       Rat(2) * frac * mp.beta * Rat(ms.m) +
                       frac * mp.gamma * Rat(ms.m);
            out.lower_bound_only = !is_pow2(mp.p);
            return out;
        }
    }
    throw std::domain_error("unknown algorithm");
}

OptimalSegment bi_sopt_topt(Algorithm a, const MachineParams& mp,
                            std::int64_t m) {
    check_params(mp);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    SoptSpec spec;
    spec.bw_factor = Rat(1);
    Rat q1_rounds;
    switch (a) {
        case Algorithm::Pipeline:
            spec.denom = Rat(mp.p - 2);
            spec.scale = Rat(1);
            q1_rounds = Rat(mp.p - 1);
            break;
        case Algorithm::Binary:
            spec.denom = Rat(ceil_log2(mp.p + 1) - 2);
            spec.scale = Rat(2);
            q1_rounds = Rat(2 * ceil_log2(mp.p + 1));
            break;
        case Algorithm::BiGreedy:
            spec.denom = Rat(ceil_log2(mp.p) - 1);
            spec.scale = Rat(1);
            q1_rounds = Rat(ceil_log2(mp.p));
            break;
        default:
            throw std::domain_error(
                "two-port segment optimum is defined for pipeline, binary, "
                "bigreedy");
    }
    // A vanishing denominator reports a degenerate optimum even below the
    // closed forms' p > 3 validity range.
    if (!spec.denom.is_zero() && mp.p <= 3)
        throw std::domain_error("segment optimum requires p > 3");
    return optimal_from(mp, m, spec,
                        [&] { return q1_rounds * round_time(mp, m); });
}

LowerBounds reduce_lower_bounds(const MachineParams& mp, std::int64_t m) {
    check_params(mp);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    LowerBounds lb;
    lb.latency = Rat(ceil_log2(mp.p)) * mp.alpha;
    lb.bandwidth = Rat(mp.p >= 3 ? 2 * m : m) * mp.beta;
    lb.computation = Rat(mp.p - 1, mp.p) * Rat(m) * mp.gamma;
    return lb;
}

LowerBounds algorithm_lower_bounds(Algorithm a, const MachineParams& mp,
                                   std::int64_t m) {
    check_params(mp);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    if (mp.p <= 2)
        throw std::domain_error("structural lower bounds require p > 2");
    LowerBounds lb;
    switch (a) {
        case Algorithm::Binomial: {
            Rat l{ceil_log2(mp.p)};
            lb.latency = l * mp.alpha;
            lb.bandwidth = l * Rat(m) * mp.beta;
            lb.computation = l * Rat(m) * mp.gamma;
            return lb;
        }
        case Algorithm::Pipeline:
            lb.latency = Rat(mp.p - 1) * mp.alpha;
            lb.bandwidth = Rat(mp.p + 2 * m - 3) * mp.beta;
            lb.computation = Rat(mp.p + 2 * m - 3) * mp.gamma;
            return lb;
        case Algorithm::Binary: {
            std::int64_t n = ceil_log2(mp.p + 1);
            lb.latency = Rat(2 * (n - 1)) * mp.alpha;
            lb.bandwidth = Rat(2 * (n + 2 * m - 3)) * mp.beta;
            lb.computation = Rat(2 * (n + 2 * m - 3)) * mp.gamma;
            return lb;
        }
        default:
            throw std::domain_error(
                "structural bounds are defined for binomial, pipeline, "
                "binary");
    }
}

Rat reference_line(const MachineParams& mp, std::int64_t m) {
    check_params(mp);
    if (m < 1) throw std::invalid_argument("message size must be >= 1");
    return Rat(ceil_log2(mp.p)) * mp.alpha + Rat(m) * mp.beta +
           Rat(mp.p - 1, mp.p) * Rat(m) * mp.gamma;
}

namespace {

// Difference butterfly(m) - T_opt_bigreedy(m) as a quadratic A*u^2 - B*u + C
// in u = sqrt(m): A = (beta*(p-2) - gamma)/p, B = 2*sqrt((L-1)(beta+gamma)
// *alpha), C = (L+1)*alpha.  A witness exists iff the quadratic dips below
// zero for some u > 0.
struct WitnessQuadratic {
    Rat a, c, b_sq;  // b_sq = B^2, kept squared to stay rational
};

WitnessQuadratic witness_quadratic(const MachineParams& mp) {
    std::int64_t l = ceil_log2(mp.p);
    WitnessQuadratic w;
    w.a = (mp.beta * Rat(mp.p - 2) - mp.gamma) / Rat(mp.p);
    w.c = Rat(l + 1) * mp.alpha;
    w.b_sq = Rat(4 * (l - 1)) * (mp.beta + mp.gamma) * mp.alpha;
    return w;
}

bool witness_exists_analytic(const MachineParams& mp) {
    WitnessQuadratic w = witness_quadratic(mp);
    if (w.a < Rat(0)) return true;
    if (w.a.is_zero()) return w.b_sq > Rat(0);
    return w.b_sq > Rat(4) * w.a * w.c;
}

}  // namespace

ButterflyWitness butterfly_beats_bigreedy(const MachineParams& mp,
                                          std::int64_t m_lo,
                                          std::int64_t m_hi) {
    check_params(mp);
    if (mp.p <= 3) throw std::domain_error("witness search requires p > 3");
    if ((mp.beta + mp.gamma).is_zero())
        throw std::domain_error("witness search requires beta + gamma > 0");
    if (m_lo < 1 || m_lo > m_hi)
        throw std::invalid_argument("witness search: empty message range");

    ButterflyWitness out;
    out.exists = witness_exists_analytic(mp);

    std::int64_t l = ceil_log2(mp.p);
    double d1 = (Rat(l - 1) * mp.alpha).to_double();
    double bg = (mp.beta + mp.gamma).to_double();
    double fly_a = (Rat(2 * l) * mp.alpha).to_double();
    double fly_m =
        (Rat(mp.p - 1, mp.p) * (Rat(2) * mp.beta + mp.gamma)).to_double();

    std::int64_t lo = m_lo, hi = m_hi;
    WitnessQuadratic w = witness_quadratic(mp);
    if (w.a > Rat(0) && hi - lo > 1000000) {
        // Convex in sqrt(m): only a window around the root interval (or the
        // vertex, when there are no real roots) can contain witnesses.
        double a = w.a.to_double(), c = w.c.to_double();
        double b = std::sqrt(w.b_sq.to_double());
        double disc = b * b - 4 * a * c;
        double u1 = disc > 0 ? (b - std::sqrt(disc)) / (2 * a) : b / (2 * a);
        double u2 = disc > 0 ? (b + std::sqrt(disc)) / (2 * a) : b / (2 * a);
        auto to_m = [](double v) {
            return static_cast<std::int64_t>(
                std::clamp(v, 0.0, 9.0e18));
        };
        lo = std::max(lo, to_m(u1 * u1 - 500000.0));
        hi = std::min(hi, to_m(u2 * u2 + 500000.0));
    }
    for (std::int64_t m = lo; m <= hi; ++m) {
        double fly = fly_a + fly_m * static_cast<double>(m);
        double root = std::sqrt(d1) + std::sqrt(bg * static_cast<double>(m));
        if (fly < root * root) {
            out.exists = true;
            out.witness_m = m;
            break;
        }
    }
    return out;
}

Rat butterfly_threshold_exact(std::int64_t p) {
    if (p <= 3) throw std::domain_error("butterfly threshold requires p > 3");
    std::int64_t l = ceil_log2(p);
    return Rat(p * (l - 1) + l + 1, 2 * (p - l - 1));
}

double butterfly_threshold_ratio(std::int64_t p) {
    return butterfly_threshold_exact(p).to_double();
}

double butterfly_threshold_scan(std::int64_t p, double alpha) {
    if (p <= 3) throw std::domain_error("butterfly threshold requires p > 3");
    if (alpha <= 0) throw std::invalid_argument("threshold scan needs alpha > 0");
    std::int64_t l = ceil_log2(p);

    // gamma fixed to 1, beta = r; witness exists iff the quadratic in u
    // attains a negative value, found by ternary search (it is convex).
    auto exists_at = [&](double r) {
        double a = (r * static_cast<double>(p - 2) - 1.0) / static_cast<double>(p);
        double b = 2.0 * std::sqrt(static_cast<double>(l - 1) * (r + 1.0) * alpha);
        double c = static_cast<double>(l + 1) * alpha;
        auto delta = [&](double u) { return a * u * u - b * u + c; };
        if (a <= 0.0) return true;
        double u_hi = 1.0;
        for (int i = 0; i < 200 && delta(u_hi) <= delta(u_hi / 2); ++i)
            u_hi *= 2.0;
        double lo = 0.0, hi = u_hi;
        for (int i = 0; i < 300; ++i) {
            double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
            if (delta(m1) < delta(m2))
                hi = m2;
            else
                lo = m1;
        }
        return delta((lo + hi) / 2.0) < 0.0;
    };

    double lo = 1e-9, hi = 8.0;
    while (exists_at(hi) && hi < 1e9) hi *= 2.0;
    for (int i = 0; i < 200; ++i) {
        double mid = (lo + hi) / 2.0;
        if (exists_at(mid))
            lo = mid;
        else
            hi = mid;
    }
    return (lo + hi) / 2.0;
}

}  // namespace redsched

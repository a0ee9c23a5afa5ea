#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "redsched/cost_model.hpp"

using namespace redsched;

namespace {

MachineParams params(std::int64_t a, std::int64_t b, std::int64_t g,
                     std::int64_t p) {
    return MachineParams{Rat(a), Rat(b), Rat(g), p};
}

}  // namespace

TEST_CASE("point-to-point and compute costs") {
    CHECK(comm_time(params(10, 1, 0, 4), 5) == Rat(15));
    CHECK(comm_time(params(0, 0, 0, 4), 7) == Rat(0));
    CHECK(comm_time(params(2, 3, 0, 4), 4) == Rat(14));
    CHECK(comp_time(params(0, 0, 1, 4), 10) == Rat(10));
    CHECK(comp_time(params(0, 0, 0, 4), 10) == Rat(0));
    CHECK(comp_time(params(0, 0, 2, 4), 3) == Rat(6));
    CHECK_THROWS_AS(comm_time(params(1, 1, 1, 4), 0), std::invalid_argument);
    CHECK_THROWS_AS(comp_time(params(1, 1, 1, 4), -1), std::invalid_argument);
    CHECK_THROWS_AS(comm_time(params(1, 1, 1, 1), 1), std::invalid_argument);
    CHECK_THROWS_AS(
        comm_time(MachineParams{Rat(-1), Rat(0), Rat(0), 4}, 1),
        std::invalid_argument);
}

TEST_CASE("ceil_log2 and segment_count") {
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(64) == 6);
    CHECK(ceil_log2(65) == 7);
    CHECK(segment_count(10, 3) == 4);
    CHECK(segment_count(9, 3) == 3);
    CHECK(segment_count(1, 5) == 1);
}

TEST_CASE("one-port times") {
    CHECK(uni_time(Algorithm::Binomial, params(10, 1, 0, 64),
                   MessageSpec{100, 100}) == Rat(660));
    CHECK(uni_time(Algorithm::Pipeline, params(1, 1, 0, 4),
                   MessageSpec{8, 8}) == Rat(27));
    CHECK(uni_time(Algorithm::Binary, params(1, 1, 1, 7),
                   MessageSpec{4, 2}) == Rat(40));
    // Binomial prices the whole message regardless of s.
    CHECK(uni_time(Algorithm::Binomial, params(10, 1, 0, 64),
                   MessageSpec{100, 10}) == Rat(660));
    CHECK_THROWS_AS(uni_time(Algorithm::Pipeline, params(1, 1, 0, 3),
                             MessageSpec{8, 8}),
                    std::domain_error);
    CHECK_THROWS_AS(uni_time(Algorithm::Binary, params(1, 1, 0, 2),
                             MessageSpec{8, 8}),
                    std::domain_error);
    CHECK_THROWS_AS(uni_time(Algorithm::Butterfly, params(1, 1, 0, 8),
                             MessageSpec{8, 8}),
                    std::domain_error);
}

TEST_CASE("one-port segment optimum") {
    OptimalSegment o =
        uni_sopt_topt(Algorithm::Pipeline, params(10, 1, 0, 64), 16384);
    CHECK(!o.degenerate);
    CHECK(o.s_opt == doctest::Approx(73.292587).epsilon(1e-6));
    CHECK(o.t_opt == doctest::Approx(42319.695589).epsilon(1e-9));
    // The optimum is the time formula at the real-valued s_opt.
    double q = 16384.0 / o.s_opt;
    double round = 10.0 + o.s_opt;
    CHECK(o.t_opt == doctest::Approx(63 * round + 2 * (q - 1) * round)
                         .epsilon(1e-9));
    CHECK(o.candidates == std::vector<std::int64_t>{1, 73, 74, 16384});

    OptimalSegment zero_latency =
        uni_sopt_topt(Algorithm::Pipeline, params(0, 1, 1, 64), 100);
    CHECK(zero_latency.s_opt == doctest::Approx(0.0));
    CHECK(zero_latency.t_opt == doctest::Approx(2 * 100 * 2).epsilon(1e-12));
    CHECK(zero_latency.candidates.front() == 1);

    // p = 7 makes the binary denominator vanish.
    OptimalSegment degen =
        uni_sopt_topt(Algorithm::Binary, params(10, 1, 1, 7), 100);
    CHECK(degen.degenerate);
    CHECK(degen.s_opt == doctest::Approx(100.0));
    CHECK(degen.t_opt ==
          uni_time(Algorithm::Binary, params(10, 1, 1, 7), MessageSpec{100, 100})
              .to_double());

    OptimalSegment lat_only =
        uni_sopt_topt(Algorithm::Pipeline, params(10, 0, 0, 64), 100);
    CHECK(lat_only.degenerate);
    CHECK(lat_only.t_opt == doctest::Approx(63 * 10.0));

    CHECK_THROWS_AS(uni_sopt_topt(Algorithm::Pipeline, params(1, 1, 0, 3), 8),
                    std::domain_error);
}

TEST_CASE("two-port times") {
    CHECK(bi_time(Algorithm::BiGreedy, params(1, 1, 1, 16), MessageSpec{5, 1})
              .time == Rat(24));
    CHECK(bi_time(Algorithm::Butterfly, params(1, 1, 0, 4), MessageSpec{8, 8})
              .time == Rat(16));
    CHECK(bi_time(Algorithm::Pipeline, params(1, 1, 1, 8), MessageSpec{6, 3})
              .time == Rat(56));
    CHECK(bi_time(Algorithm::Binomial, params(1, 1, 1, 16), MessageSpec{5, 5})
              .time == Rat(4 * 11));
    CHECK(bi_time(Algorithm::Binary, params(1, 1, 1, 8), MessageSpec{6, 3})
              .time == Rat(2 * (4 + 2 - 1) * 7));

    CHECK_FALSE(bi_time(Algorithm::Butterfly, params(1, 1, 0, 4),
                        MessageSpec{8, 8})
                    .lower_bound_only);
    CHECK(bi_time(Algorithm::Butterfly, params(1, 1, 0, 6), MessageSpec{8, 8})
              .lower_bound_only);
    CHECK_FALSE(bi_time(Algorithm::Pipeline, params(1, 1, 0, 6),
                        MessageSpec{8, 8})
                    .lower_bound_only);
    CHECK_THROWS_AS(
        bi_time(Algorithm::BiGreedy, params(1, 1, 1, 3), MessageSpec{5, 1}),
        std::domain_error);
}

TEST_CASE("two-port segment optimum") {
    OptimalSegment o =
        bi_sopt_topt(Algorithm::BiGreedy, params(50000, 6, 1, 64), 1000000);
    CHECK(o.s_opt == doctest::Approx(37796.4473).epsilon(1e-6));
    CHECK(o.t_opt == doctest::Approx(9895751.3111).epsilon(1e-6));

    OptimalSegment pipe =
        bi_sopt_topt(Algorithm::Pipeline, params(4, 1, 0, 10), 100);
    CHECK(pipe.s_opt == doctest::Approx(std::sqrt(50.0)).epsilon(1e-9));

    // At p = 2 the bigreedy denominator vanishes before the p > 3 guard.
    OptimalSegment two = bi_sopt_topt(Algorithm::BiGreedy, params(1, 1, 1, 2), 8);
    CHECK(two.degenerate);
    CHECK(two.t_opt == doctest::Approx(17.0));
    CHECK_THROWS_AS(bi_sopt_topt(Algorithm::BiGreedy, params(1, 1, 1, 3), 8),
                    std::domain_error);

    OptimalSegment degen =
        bi_sopt_topt(Algorithm::Binary, params(10, 0, 0, 8), 100);
    CHECK(degen.degenerate);
    CHECK(degen.t_opt == doctest::Approx(2 * (4 + 1 - 1) * 10.0));
}

TEST_CASE("reduce lower bounds") {
    CHECK(reduce_lower_bounds(params(0, 1, 0, 3), 5).bandwidth == Rat(10));
    CHECK(reduce_lower_bounds(params(0, 1, 0, 2), 5).bandwidth == Rat(5));
    CHECK(reduce_lower_bounds(params(0, 0, 1, 8), 8).computation == Rat(7));
    CHECK(reduce_lower_bounds(params(3, 0, 0, 16), 1).latency == Rat(12));
}

TEST_CASE("per-algorithm lower bounds") {
    LowerBounds pipe =
        algorithm_lower_bounds(Algorithm::Pipeline, params(1, 1, 0, 10), 4);
    CHECK(pipe.latency == Rat(9));
    CHECK(pipe.bandwidth == Rat(15));

    LowerBounds bin =
        algorithm_lower_bounds(Algorithm::Binary, params(1, 1, 0, 7), 1);
    CHECK(bin.latency == Rat(4));
    CHECK(bin.bandwidth == Rat(4));

    LowerBounds bino =
        algorithm_lower_bounds(Algorithm::Binomial, params(1, 1, 1, 4), 3);
    CHECK(bino.latency == Rat(2));
    CHECK(bino.bandwidth == Rat(6));
    CHECK(bino.computation == Rat(6));

    CHECK_THROWS_AS(
        algorithm_lower_bounds(Algorithm::Pipeline, params(1, 1, 0, 2), 4),
        std::domain_error);
}

TEST_CASE("reference line") {
    CHECK(reference_line(params(50000, 6, 1, 64), 1000) == Rat(2455875, 8));
    MachineParams one = params(1, 1, 1, 2);
    CHECK(reference_line(one, 1) == Rat(5, 2));
    CHECK(reference_line(params(0, 1, 0, 8), 9) == Rat(9));
}

TEST_CASE("time formulas respect reduce lower bounds") {
    for (std::int64_t p : {4, 5, 8, 13, 64})
        for (std::int64_t m : {1, 4, 16, 100})
            for (std::int64_t s : {1, 3, 16}) {
                if (s > m) continue;
                MachineParams mp = params(3, 2, 1, p);
                LowerBounds lb = reduce_lower_bounds(mp, m);
                for (Algorithm a : {Algorithm::Binomial, Algorithm::Pipeline,
                                    Algorithm::Binary}) {
                    Rat t = uni_time(a, mp, MessageSpec{m, s});
                    CHECK(t >= lb.latency);
                    CHECK(t >= lb.bandwidth);
                    CHECK(t >= lb.computation);
                }
                Rat two_port_bw = Rat(m) * mp.beta;
                for (Algorithm a :
                     {Algorithm::Binomial, Algorithm::Pipeline,
                      Algorithm::Binary, Algorithm::BiGreedy,
                      Algorithm::Butterfly}) {
                    Rat t = bi_time(a, mp, MessageSpec{m, s}).time;
                    CHECK(t >= lb.latency);
                    CHECK(t >= two_port_bw);
                    CHECK(t >= lb.computation);
                }
            }
}

TEST_CASE("single-segment structure") {
    for (std::int64_t p : {4, 7, 32}) {
        MachineParams mp = params(2, 3, 1, p);
        std::int64_t m = 9;
        CHECK(uni_time(Algorithm::Pipeline, mp, MessageSpec{m, m}) ==
              Rat(p - 1) * round_time(mp, m));
        CHECK(uni_time(Algorithm::Binary, mp, MessageSpec{m, m}) ==
              Rat(2 * (ceil_log2(p + 1) - 1)) * round_time(mp, m));
        CHECK(bi_time(Algorithm::BiGreedy, mp, MessageSpec{m, m}).time ==
              bi_time(Algorithm::Binomial, mp, MessageSpec{m, m}).time);
    }
}

TEST_CASE("optimum matches formula at real s_opt") {
    for (std::int64_t p : {5, 10, 64}) {
        MachineParams mp = params(7, 2, 1, p);
        std::int64_t m = 5000;
        OptimalSegment o = uni_sopt_topt(Algorithm::Pipeline, mp, m);
        double r = 7 + 3 * o.s_opt;
        double t = (p - 1) * r + 2 * (m / o.s_opt - 1) * r;
        CHECK(o.t_opt == doctest::Approx(t).epsilon(1e-9));

        OptimalSegment b = bi_sopt_topt(Algorithm::BiGreedy, mp, m);
        double rb = 7 + 3 * b.s_opt;
        double tb = (ceil_log2(p) + m / b.s_opt - 1) * rb;
        CHECK(b.t_opt == doctest::Approx(tb).epsilon(1e-9));
    }
}

TEST_CASE("butterfly witness search") {
    MachineParams fig8 = params(50000, 6, 1, 64);
    ButterflyWitness w = butterfly_beats_bigreedy(fig8, 1, 100000000);
    CHECK_FALSE(w.exists);
    CHECK_FALSE(w.witness_m.has_value());

    MachineParams close{Rat(1), Rat(4), Rat(1), 1000};
    ButterflyWitness w2 = butterfly_beats_bigreedy(close, 1, 1000000);
    CHECK(w2.exists);
    REQUIRE(w2.witness_m.has_value());
    CHECK(*w2.witness_m == 3);

    MachineParams far{Rat(1), Rat(6), Rat(1), 1000};
    CHECK_FALSE(butterfly_beats_bigreedy(far, 1, 1000000).exists);

    // Same verdicts at a different alpha.
    MachineParams close_big{Rat(1000), Rat(4), Rat(1), 1000};
    CHECK(butterfly_beats_bigreedy(close_big, 1, 100000000).exists);

    CHECK_THROWS_AS(butterfly_beats_bigreedy(fig8, 5, 4),
                    std::invalid_argument);
    CHECK_THROWS_AS(butterfly_beats_bigreedy(params(1, 0, 0, 64), 1, 10),
                    std::domain_error);
}

TEST_CASE("butterfly threshold ratio") {
    CHECK(butterfly_threshold_exact(1000) == Rat(9011, 1978));
    CHECK(butterfly_threshold_exact(64) == Rat(109, 38));
    CHECK(butterfly_threshold_ratio(1000) ==
          doctest::Approx(4.555611729).epsilon(1e-9));
    CHECK(butterfly_threshold_ratio(64) ==
          doctest::Approx(2.868421053).epsilon(1e-9));
    CHECK(butterfly_threshold_ratio(1000) > 4.0);
    CHECK(butterfly_threshold_ratio(1000) < 5.0);

    for (std::int64_t p : {4, 64, 1000}) {
        double exact = butterfly_threshold_ratio(p);
        for (double alpha : {1.0, 10.0, 10000.0}) {
            double scanned = butterfly_threshold_scan(p, alpha);
            CHECK(std::abs(scanned - exact) / exact < 1e-6);
        }
    }

    // Just below the threshold a witness exists, just above none does.
    for (std::int64_t p : {4, 64, 1000}) {
        Rat r = butterfly_threshold_exact(p);
        Rat eps(1, 1000);
        MachineParams below{Rat(3), r - eps, Rat(1), p};
        MachineParams above{Rat(3), r + eps, Rat(1), p};
        CHECK(butterfly_beats_bigreedy(below, 1, 1000000).exists);
        CHECK_FALSE(butterfly_beats_bigreedy(above, 1, 1000000).exists);
    }
}

TEST_CASE("algorithm names") {
    CHECK(std::string(algorithm_name(Algorithm::Binomial)) == "binomial");
    CHECK(std::string(algorithm_name(Algorithm::BiGreedy)) == "bigreedy");
    CHECK(std::string(algorithm_name(Algorithm::Butterfly)) == "butterfly");
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <array>
#include <vector>

#include "redsched/algorithms.hpp"
#include "redsched/greedy_uni.hpp"

using namespace redsched;

namespace {

MachineParams params(std::int64_t a, std::int64_t b, std::int64_t g,
                     std::int64_t p) {
    return MachineParams{Rat(a), Rat(b), Rat(g), p};
}

SegmentPlan plan_of(std::vector<std::int64_t> sizes) {
    SegmentPlan pl;
    pl.sizes = std::move(sizes);
    return pl;
}

}  // namespace

TEST_CASE("two processors run segments back to back") {
    MachineParams mp = params(3, 2, 1, 2);
    SegmentPlan pl = plan_of({4, 1, 2});
    // per segment: comm + comp = (3 + 2s) + s
    Rat want = Rat(3 + 8 + 4) + Rat(3 + 2 + 1) + Rat(3 + 4 + 2);
    CHECK(uni_greedy_time(mp, pl) == want);
    CHECK(brute_force_min_time(mp, pl) == want);
    Schedule s = uni_greedy_schedule(mp, pl);
    CHECK(s.events.size() == 3);
    CHECK(simulate(s).completion == want);
}

TEST_CASE("single segment on four processors takes two rounds") {
    MachineParams mp = params(1, 1, 1, 4);
    CHECK(uni_greedy_time(mp, plan_of({1})) == Rat(6));
}

TEST_CASE("two unit segments on three processors hit the bandwidth bound") {
    MachineParams mp = params(0, 1, 0, 3);
    CHECK(uni_greedy_time(mp, plan_of({1, 1})) == Rat(4));
    CHECK(brute_force_min_time(mp, plan_of({1, 1})) == Rat(4));
}

TEST_CASE("one segment reproduces the binomial closed form") {
    for (std::int64_t p = 2; p <= 128; ++p) {
        MachineParams mp = params(3, 2, 1, p);
        Rat want = Rat(ceil_log2(p)) * Rat(3 + 2 * 7 + 1 * 7);
        CHECK(uni_greedy_time(mp, plan_of({7})) == want);
    }
    for (std::int64_t p : {200, 511, 512}) {
        MachineParams mp = params(10, 1, 0, p);
        CHECK(uni_greedy_time(mp, plan_of({1})) ==
              Rat(ceil_log2(p)) * Rat(11));
        CHECK(uni_greedy_time(mp, plan_of({1})) ==
              uni_time(Algorithm::Binomial, mp, MessageSpec{1, 1}));
    }
}

TEST_CASE("fifteen processors, five unit segments, comm 2 comp 1") {
    MachineParams mp = params(2, 0, 1, 15);
    SegmentPlan pl = plan_of({1, 1, 1, 1, 1});
    CHECK(uni_greedy_time(mp, pl) == Rat(56));

    Schedule s = uni_greedy_schedule(mp, pl);
    CHECK(s.events.size() == 14 * 5);
    SimulationResult sim = simulate(s);
    CHECK(sim.completion == Rat(56));
    CHECK(validate_uni(s).valid);
    CHECK(check_correctness(s).ok);

    // anchor a few events of the generated layout
    CHECK(s.events.front().sender == 1);
    CHECK(s.events.front().receiver == 0);
    CHECK(s.events.front().start == Rat(0));
    const Event& last = s.events.back();
    CHECK(last.segment == 5);
    CHECK(last.sender == 13);
    CHECK(last.receiver == 0);
    CHECK(last.start == Rat(53));
}

TEST_CASE("fast path agrees with the generated schedule") {
    std::vector<std::vector<std::int64_t>> plans = {
        {1}, {3}, {1, 2}, {2, 2}, {1, 1, 1}, {4, 1, 3}};
    std::vector<MachineParams> cost = {
        params(1, 1, 1, 0), params(2, 0, 1, 0), params(0, 1, 0, 0),
        params(3, 2, 0, 0),
        MachineParams{Rat(1, 2), Rat(1, 3), Rat(1, 4), 0}};
    for (std::int64_t p : {2, 3, 5, 8, 13, 16}) {
        for (const auto& sizes : plans) {
            for (MachineParams mp : cost) {
                mp.p = p;
                SegmentPlan pl = plan_of(sizes);
                Schedule s = uni_greedy_schedule(mp, pl);
                SimulationResult sim = simulate(s);
                CHECK(uni_greedy_time(mp, pl) == sim.completion);
                ValidationResult v = validate_uni(s);
                INFO(v.message);
                CHECK(v.valid);
                CHECK(check_correctness(s).ok);
            }
        }
    }
}

TEST_CASE("steady-state extrapolation matches direct simulation") {
    // nine segments is past the lock-in point, so these exercise the shift
    {
        MachineParams mp = params(2, 0, 1, 15);
        SegmentPlan pl = SegmentPlan::equi(9, 1);
        CHECK(uni_greedy_time(mp, pl) == Rat(100));
        CHECK(simulate(uni_greedy_schedule(mp, pl)).completion == Rat(100));
    }
    {
        MachineParams mp = params(4, 0, 3, 33);
        SegmentPlan pl = SegmentPlan::equi(9, 1);
        CHECK(uni_greedy_time(mp, pl) == Rat(322));
        CHECK(simulate(uni_greedy_schedule(mp, pl)).completion == Rat(322));
    }
    {
        MachineParams mp{Rat(1, 3), Rat(0), Rat(2, 7), 5};
        SegmentPlan pl = SegmentPlan::equi(9, 1);
        CHECK(uni_greedy_time(mp, pl) == Rat(247, 21));
        CHECK(simulate(uni_greedy_schedule(mp, pl)).completion ==
              Rat(247, 21));
    }
}

TEST_CASE("a million-segment plan stays cheap") {
    MachineParams mp = params(7, 0, 3, 1024);
    SegmentPlan pl = SegmentPlan::equi(1 << 20, 1);
    CHECK(uni_greedy_time(mp, pl) == Rat(104857600));
}

TEST_CASE("appending a segment never helps") {
    for (std::int64_t p : {2, 3, 6, 9}) {
        MachineParams mp = params(2, 1, 1, p);
        std::vector<std::int64_t> sizes;
        Rat prev(-1);
        for (std::int64_t sz : {2, 1, 3, 1}) {
            sizes.push_back(sz);
            Rat t = uni_greedy_time(mp, plan_of(sizes));
            CHECK(t > prev);
            prev = t;
        }
    }
}

TEST_CASE("exhaustive search never beats greedy on small instances") {
    std::vector<std::vector<std::int64_t>> plans = {
        {1}, {2}, {1, 1}, {2, 1}, {1, 2}};
    std::vector<std::array<std::int64_t, 3>> triples = {
        {1, 0, 0}, {0, 1, 0}, {1, 1, 1}, {2, 1, 1}, {0, 1, 2}};
    for (std::int64_t p : {2, 3, 4}) {
        for (const auto& sizes : plans) {
            for (const auto& [a, b, g] : triples) {
                MachineParams mp = params(a, b, g, p);
                SegmentPlan pl = plan_of(sizes);
                CHECK(brute_force_min_time(mp, pl) == uni_greedy_time(mp, pl));
            }
        }
    }
    MachineParams mp = params(1, 1, 1, 5);
    CHECK(brute_force_min_time(mp, plan_of({2, 1})) == Rat(21));
    CHECK(uni_greedy_time(mp, plan_of({2, 1})) == Rat(21));
}

TEST_CASE("oracle guards its domain and budget") {
    CHECK_THROWS_AS(brute_force_min_time(params(1, 1, 1, 7), plan_of({1})),
                    std::invalid_argument);
    CHECK_THROWS_AS(
        brute_force_min_time(params(1, 1, 1, 4), plan_of({1, 1, 1, 1})),
        std::invalid_argument);
    OracleLimits tight;
    tight.max_nodes = 10;
    CHECK_THROWS_AS(brute_force_min_time(params(1, 1, 1, 5),
                                         plan_of({2, 1}), tight),
                    std::runtime_error);
}

TEST_CASE("relaxing segment order can beat greedy by one") {
    // p=15, five unit segments, comm 2, comp 1: keep the greedy schedule for
    // segments 1-4 and rebuild segment 5 around idle processors. Processor 1
    // joins segment 5 before it has sent segment 4, which the validator must
    // flag, yet the schedule stays port-feasible and completes one early.
    MachineParams mp = params(2, 0, 1, 15);
    SegmentPlan pl = plan_of({1, 1, 1, 1, 1});
    Rat greedy = uni_greedy_time(mp, pl);

    Schedule s = uni_greedy_schedule(mp, pl);
    std::vector<Event> events;
    for (const Event& e : s.events)
        if (e.segment <= 4) events.push_back(e);

    struct Tail {
        std::int64_t from, to, start;
    };
    const Tail tail[] = {{1, 14, 29}, {3, 4, 36},  {7, 8, 36},  {11, 12, 38},
                         {5, 6, 39},  {9, 10, 41}, {14, 12, 41}, {4, 6, 42},
                         {12, 13, 44}, {8, 10, 44}, {2, 0, 45},  {10, 13, 47},
                         {6, 0, 48},  {13, 0, 52}};
    for (const Tail& t : tail)
        events.push_back(Event{5, t.from, t.to, Rat(t.start), Rat(2), Rat(1)});
    std::sort(events.begin(), events.end(),
              [](const Event& a, const Event& b) {
                  return std::tie(a.start, a.segment, a.sender) <
                         std::tie(b.start, b.segment, b.sender);
              });
    s.events = events;

    SimulationResult sim = simulate(s);
    CHECK(sim.completion == greedy - Rat(1));
    CHECK(check_correctness(s).ok);

    ValidationResult v = validate_uni(s);
    CHECK_FALSE(v.valid);
    CHECK(v.rule == "in-order");
    std::size_t idx = 0;
    for (std::size_t i = 0; i < s.events.size(); ++i)
        if (s.events[i].segment == 5 && s.events[i].sender == 1) idx = i;
    CHECK(v.event_index == idx);
    CHECK(v.message.find("sender 1") != std::string::npos);
}

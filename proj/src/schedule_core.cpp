#include "redsched/schedule_core.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace redsched {

std::int64_t SegmentPlan::total() const {
    std::int64_t m = 0;
    for (std::int64_t s : sizes) m += s;
    return m;
}

SegmentPlan SegmentPlan::equi(std::int64_t m, std::int64_t s) {
    if (m < 1) throw std::invalid_argument("plan: message size must be >= 1");
    if (s < 1 || s > m)
        throw std::invalid_argument("plan: segment size must be in [1, m]");
    SegmentPlan plan;
    for (std::int64_t left = m; left > 0; left -= s)
        plan.sizes.push_back(std::min(s, left));
    return plan;
}

const char* port_model_name(PortModel m) {
    return m == PortModel::Unidirectional ? "unidirectional" : "bidirectional";
}

PortModel parse_port_model(const std::string& name) {
    if (name == "uni" || name == "unidirectional")
        return PortModel::Unidirectional;
    if (name == "bi" || name == "bidirectional")
        return PortModel::Bidirectional;
    throw std::invalid_argument("unknown port model '" + name + "'");
}

namespace {

std::string at_event(std::size_t i) {
    return "event " + std::to_string(i) + ": ";
}

}  // namespace

void check_structure(const Schedule& s) {
    if (s.p < 2) throw std::invalid_argument("schedule: p must be >= 2");
    if (s.params.p != s.p)
        throw std::invalid_argument("schedule: params.p differs from p");
    if (s.params.alpha < Rat(0) || s.params.beta < Rat(0) ||
        s.params.gamma < Rat(0))
        throw std::invalid_argument("schedule: rates must be nonnegative");
    std::int64_t q = s.plan.count();
    if (q < 1) throw std::invalid_argument("schedule: empty plan");
    for (std::int64_t size : s.plan.sizes)
        if (size < 1)
            throw std::invalid_argument("schedule: segment sizes must be >= 1");

    // sends[j-1][g] = how often g appears as sender for segment j.
    std::vector<std::vector<std::int64_t>> sends(
        q, std::vector<std::int64_t>(s.p, 0));
    const Rat* prev_start = nullptr;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const Event& e = s.events[i];
        if (e.segment < 1 || e.segment > q)
            throw std::invalid_argument(at_event(i) + "segment out of range");
        if (e.sender < 0 || e.sender >= s.p || e.receiver < 0 ||
            e.receiver >= s.p)
            throw std::invalid_argument(at_event(i) + "processor id out of range");
        if (e.sender == e.receiver)
            throw std::invalid_argument(at_event(i) + "sender equals receiver");
        if (e.sender == 0)
            throw std::invalid_argument(at_event(i) + "root cannot send");
        if (e.start < Rat(0))
            throw std::invalid_argument(at_event(i) + "negative start time");
        std::int64_t size = s.plan.sizes[e.segment - 1];
        if (e.comm != comm_time(s.params, size) ||
            e.comp != comp_time(s.params, size))
            throw std::invalid_argument(
                at_event(i) + "durations disagree with the cost model");
        if (prev_start && e.start < *prev_start)
            throw std::invalid_argument(at_event(i) + "events not sorted by start");
        prev_start = &e.start;
        ++sends[e.segment - 1][e.sender];
    }
    for (std::int64_t j = 0; j < q; ++j) {
        for (std::int64_t g = 1; g < s.p; ++g)
            if (sends[j][g] != 1)
                throw std::invalid_argument(
                    "segment " + std::to_string(j + 1) + ": processor " +
                    std::to_string(g) + " sends " +
                    std::to_string(sends[j][g]) + " times (want once)");
        if (sends[j][0] != 0)
            throw std::invalid_argument("segment " + std::to_string(j + 1) +
                                        ": root appears as sender");
    }
}

ValidationResult validate_uni(const Schedule& s) {
    auto fail = [](std::size_t i, const char* rule, std::string msg) {
        ValidationResult r;
        r.valid = false;
        r.event_index = i;
        r.rule = rule;
        r.message = std::move(msg);
        return r;
    };

    if (s.model != PortModel::Unidirectional)
        return fail(0, "structure", "not a one-port schedule");
    std::int64_t q = s.plan.count();
    if (s.p < 2 || q < 1 || s.params.p != s.p)
        return fail(0, "structure", "malformed schedule header");

    std::vector<Rat> state(s.p);
    // sent[g*q + (j-1)]: g has been reduced for segment j.
    std::vector<char> sent(static_cast<std::size_t>(s.p) * q, 0);
    std::vector<std::int64_t> done(q, 0);  // events applied per segment
    auto is_sent = [&](std::int64_t g, std::int64_t j) {
        return sent[static_cast<std::size_t>(g) * q + j - 1] != 0;
    };

    const Rat* prev_start = nullptr;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const Event& e = s.events[i];
        std::int64_t j = e.segment;
        if (j < 1 || j > q || e.sender < 0 || e.sender >= s.p ||
            e.receiver < 0 || e.receiver >= s.p || e.sender == e.receiver ||
            e.start < Rat(0))
            return fail(i, "structure", "malformed event");
        if (e.comm != comm_time(s.params, s.plan.sizes[j - 1]) ||
            e.comp != comp_time(s.params, s.plan.sizes[j - 1]))
            return fail(i, "structure",
                        "durations disagree with the cost model");
        if (prev_start && e.start < *prev_start)
            return fail(i, "structure", "events not sorted by start");
        prev_start = &e.start;

        if (e.sender == 0) return fail(i, "ii", "root appears as sender");
        if (is_sent(e.sender, j))
            return fail(i, "duplicate-send",
                        "processor " + std::to_string(e.sender) +
                            " already sent segment " + std::to_string(j));
        if (e.receiver != 0 && is_sent(e.receiver, j))
            return fail(i, "after-reduced",
                        "processor " + std::to_string(e.receiver) +
                            " rejoins segment " + std::to_string(j) +
                            " after being reduced for it");
        for (std::int64_t k = 1; k < j; ++k) {
            if (!is_sent(e.sender, k))
                return fail(i, "in-order",
                            "sender " + std::to_string(e.sender) +
                                " has not been reduced for segment " +
                                std::to_string(k));
            if (e.receiver != 0 && !is_sent(e.receiver, k))
                return fail(i, "in-order",
                            "receiver " + std::to_string(e.receiver) +
                                " has not been reduced for segment " +
                                std::to_string(k));
            if (e.receiver == 0 && done[k - 1] != s.p - 1)
                return fail(i, "in-order",
                            "root receives segment " + std::to_string(j) +
                                " before segment " + std::to_string(k) +
                                " is complete");
        }

        if (state[e.sender] > e.start)
            return fail(i, "i",
                        "sender busy until " + state[e.sender].str());
        if (state[e.receiver] > e.start)
            return fail(i, "i",
                        "receiver busy until " + state[e.receiver].str());

        // Second-smallest state among processors still active in segment j.
        Rat lo1, lo2;
        bool have1 = false, have2 = false;
        for (std::int64_t g = 0; g < s.p; ++g) {
            if (g != 0 && is_sent(g, j)) continue;
            const Rat& x = state[g];
            if (!have1 || x < lo1) {
                if (have1) {
                    lo2 = lo1;
                    have2 = true;
                }
                lo1 = x;
                have1 = true;
            } else if (!have2 || x < lo2) {
                lo2 = x;
                have2 = true;
            }
        }
        if (have2 && e.start < lo2)
            return fail(i, "iii",
                        "start below the second-smallest active state " +
                            lo2.str());

        state[e.sender] = e.start + e.comm;
        state[e.receiver] = e.start + e.comm + e.comp;
        sent[static_cast<std::size_t>(e.sender) * q + j - 1] = 1;
        ++done[j - 1];
        for (std::int64_t g = 0; g < s.p; ++g)
            if (g != e.sender && g != e.receiver && state[g] < e.start)
                state[g] = e.start;
    }

    for (std::int64_t j = 1; j <= q; ++j)
        if (done[j - 1] != s.p - 1)
            return fail(s.events.empty() ? 0 : s.events.size() - 1,
                        "structure",
                        "segment " + std::to_string(j) + " has " +
                            std::to_string(done[j - 1]) + " events (want " +
                            std::to_string(s.p - 1) + ")");
    return ValidationResult{};
}

namespace {

const char* kind_name(BusyInterval::Kind k) {
    switch (k) {
        case BusyInterval::Kind::Send: return "send";
        case BusyInterval::Kind::Recv: return "recv";
        case BusyInterval::Kind::Compute: return "compute";
    }
    return "?";
}

bool kinds_conflict(PortModel model, BusyInterval::Kind a,
                    BusyInterval::Kind b) {
    if (model == PortModel::Unidirectional) return true;
    if (a == BusyInterval::Kind::Compute || b == BusyInterval::Kind::Compute)
        return a == b ? false : true;
    return a == b;
}

}  // namespace

SimulationResult simulate(const Schedule& s) {
    check_structure(s);
    SimulationResult result;
    result.proc_timeline.resize(s.p);
    result.per_segment_finish.assign(s.plan.sizes.size(), Rat(0));

    for (const Event& e : s.events) {
        Rat recv_end = e.recv_end();
        Rat busy_end = e.busy_end();
        if (e.comm > Rat(0)) {
            result.proc_timeline[e.sender].push_back(
                {e.start, recv_end, BusyInterval::Kind::Send, e.segment,
                 e.receiver});
            result.proc_timeline[e.receiver].push_back(
                {e.start, recv_end, BusyInterval::Kind::Recv, e.segment,
                 e.sender});
        }
        if (e.comp > Rat(0))
            result.proc_timeline[e.receiver].push_back(
                {recv_end, busy_end, BusyInterval::Kind::Compute, e.segment,
                 -1});
        if (e.receiver == 0) {
            Rat& fin = result.per_segment_finish[e.segment - 1];
            fin = max(fin, busy_end);
        }
    }

    for (std::int64_t g = 0; g < s.p; ++g) {
        auto& tl = result.proc_timeline[g];
        std::sort(tl.begin(), tl.end(), [](const BusyInterval& a,
                                           const BusyInterval& b) {
            if (a.start != b.start) return a.start < b.start;
            if (a.end != b.end) return a.end < b.end;
            return static_cast<int>(a.kind) < static_cast<int>(b.kind);
        });
        for (std::size_t i = 0; i < tl.size(); ++i)
            for (std::size_t k = i + 1; k < tl.size(); ++k) {
                if (tl[k].start >= tl[i].end) break;
                if (kinds_conflict(s.model, tl[i].kind, tl[k].kind))
                    throw std::runtime_error(
                        "port violation on processor " + std::to_string(g) +
                        " at " + tl[k].start.str() + ": " +
                        kind_name(tl[i].kind) + " overlaps " +
                        kind_name(tl[k].kind));
            }
    }

    Rat completion;
    for (const BusyInterval& b : result.proc_timeline[0])
        completion = max(completion, b.end);
    result.completion = completion;
    return result;
}

namespace {

// Contribution sets as packed bit rows: row g*q + (j-1), p bits each.
class ContributionTable {
public:
    ContributionTable(std::int64_t p, std::int64_t q)
        : p_(p), q_(q), words_((p + 63) / 64),
          bits_(static_cast<std::size_t>(p) * q * words_, 0) {
        for (std::int64_t g = 0; g < p; ++g)
            for (std::int64_t j = 1; j <= q; ++j)
                row(g, j)[g / 64] = 1ULL << (g % 64);
    }

    std::uint64_t* row(std::int64_t g, std::int64_t j) {
        return bits_.data() +
               (static_cast<std::size_t>(g) * q_ + (j - 1)) * words_;
    }

    bool disjoint(const std::uint64_t* a, const std::uint64_t* b) const {
        for (std::int64_t w = 0; w < words_; ++w)
            if (a[w] & b[w]) return false;
        return true;
    }

    void merge(std::uint64_t* dst, const std::uint64_t* src) const {
        for (std::int64_t w = 0; w < words_; ++w) dst[w] |= src[w];
    }

    bool full(const std::uint64_t* a) const {
        for (std::int64_t g = 0; g < p_; ++g)
            if (!(a[g / 64] & (1ULL << (g % 64)))) return false;
        return true;
    }

    std::int64_t words() const { return words_; }

private:
    std::int64_t p_, q_, words_;
    std::vector<std::uint64_t> bits_;
};

}  // namespace

CorrectnessResult check_correctness(const Schedule& s) {
    // Light structural checks only: a schedule with duplicate or missing
    // sends must produce a false verdict here, not a structural error.
    if (s.p < 2) throw std::invalid_argument("schedule: p must be >= 2");
    std::int64_t q = s.plan.count();
    if (q < 1) throw std::invalid_argument("schedule: empty plan");
    const Rat* prev_start = nullptr;
    for (std::size_t i = 0; i < s.events.size(); ++i) {
        const Event& e = s.events[i];
        if (e.segment < 1 || e.segment > q || e.sender < 0 ||
            e.sender >= s.p || e.receiver < 0 || e.receiver >= s.p ||
            e.sender == e.receiver)
            throw std::invalid_argument(at_event(i) + "malformed event");
        if (prev_start && e.start < *prev_start)
            throw std::invalid_argument(at_event(i) +
                                        "events not sorted by start");
        prev_start = &e.start;
    }
    ContributionTable table(s.p, q);

    // Events sharing a start time all read their sender's set as of the
    // group start, so the verdict cannot depend on their relative order.
    std::vector<std::uint64_t> snapshots;
    std::size_t i = 0;
    while (i < s.events.size()) {
        std::size_t lo = i;
        while (i < s.events.size() && s.events[i].start == s.events[lo].start)
            ++i;
        snapshots.clear();
        for (std::size_t k = lo; k < i; ++k) {
            const std::uint64_t* src =
                table.row(s.events[k].sender, s.events[k].segment);
            snapshots.insert(snapshots.end(), src, src + table.words());
        }
        for (std::size_t k = lo; k < i; ++k) {
            const Event& e = s.events[k];
            const std::uint64_t* src = snapshots.data() + (k - lo) * table.words();
            std::uint64_t* dst = table.row(e.receiver, e.segment);
            if (!table.disjoint(src, dst))
                return {false,
                        "duplicate contribution: processor " +
                            std::to_string(e.receiver) +
                            " already holds part of what " +
                            std::to_string(e.sender) + " sent for segment " +
                            std::to_string(e.segment)};
            table.merge(dst, src);
        }
    }
    for (std::int64_t j = 1; j <= q; ++j)
        if (!table.full(table.row(0, j)))
            return {false, "root is missing contributions for segment " +
                               std::to_string(j)};
    return {};
}

}  // namespace redsched

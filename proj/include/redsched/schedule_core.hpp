#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redsched/cost_model.hpp"
#include "redsched/rational.hpp"

namespace redsched {

// Ordered segment sizes s_1..s_q, all positive.
struct SegmentPlan {
    std::vector<std::int64_t> sizes;

    std::int64_t total() const;
    std::int64_t count() const { return static_cast<std::int64_t>(sizes.size()); }

    // m units cut into ceil(m/s) segments of size s, the last one possibly
    // smaller.
    static SegmentPlan equi(std::int64_t m, std::int64_t s);

    friend bool operator==(const SegmentPlan&, const SegmentPlan&) = default;
};

enum class PortModel { Unidirectional, Bidirectional };

const char* port_model_name(PortModel m);
PortModel parse_port_model(const std::string& name);

// One send/receive pair: processor `sender` transfers its accumulated value
// for segment `segment` (1-based) to `receiver`, starting at `start`.  The
// transfer occupies both ends for `comm`; the receiver then combines for
// `comp`.
struct Event {
    std::int64_t segment = 1;
    std::int64_t sender = 0;
    std::int64_t receiver = 0;
    Rat start;
    Rat comm;
    Rat comp;

    Rat recv_end() const { return start + comm; }
    Rat busy_end() const { return start + comm + comp; }

    friend bool operator==(const Event&, const Event&) = default;
};

struct Schedule {
    std::int64_t p = 2;
    SegmentPlan plan;
    MachineParams params;
    PortModel model = PortModel::Unidirectional;
    std::vector<Event> events;  // nondecreasing start

    friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Throws std::invalid_argument unless: p >= 2 and matches params.p; plan
// nonempty with positive sizes; events sorted by start with in-range ids,
// sender != receiver, sender != 0, start >= 0, comm/comp equal to the cost
// model's values for the event's segment; per segment exactly p-1 events
// with each non-root processor sending exactly once.
void check_structure(const Schedule& s);

struct ValidationResult {
    bool valid = true;
    std::size_t event_index = 0;  // meaningful when !valid
    std::string rule;             // "structure", "i", "ii", "iii",
                                  // "in-order", "duplicate-send",
                                  // "after-reduced"
    std::string message;
};

// Replays a one-port schedule against the validity rules of the in-order
// schedule class: per event at time t, (i) both participants' states are
// <= t, (ii) the sender is not the root, (iii) t is at least the
// second-smallest state among processors not yet reduced for that segment;
// participants must be reduced for every earlier segment (the root instead
// must have completed every earlier segment); each non-root sends each
// segment exactly once and never reappears in it; after each event every
// bystander's state below t is raised to t.  Reports the first violation.
ValidationResult validate_uni(const Schedule& s);

struct BusyInterval {
    enum class Kind { Send, Recv, Compute };
    Rat start;
    Rat end;
    Kind kind = Kind::Send;
    std::int64_t segment = 1;
    std::int64_t peer = -1;  // other endpoint; -1 for compute

    friend bool operator==(const BusyInterval&, const BusyInterval&) = default;
};

struct SimulationResult {
    Rat completion;
    std::vector<std::vector<BusyInterval>> proc_timeline;
    std::vector<Rat> per_segment_finish;  // index = segment-1; time the
                                          // root finishes combining it
};

// Expands events into per-processor busy intervals and enforces the port
// rules: one-port processors never hold two overlapping intervals;
// two-port processors may overlap a send with a receive but never two
// sends, two receives, or a computation with any communication.  Throws
// std::runtime_error naming the processor and time on violation.
SimulationResult simulate(const Schedule& s);

struct CorrectnessResult {
    bool ok = true;
    std::string detail;
};

// Replays which original contributions each processor has accumulated per
// segment; a reduction is correct when every merge is disjoint and the root
// ends up holding all p contributions for every segment.  Equal-start
// events are applied from a common snapshot so any valid reordering gives
// the same verdict.
CorrectnessResult check_correctness(const Schedule& s);

enum class EmitFormat { Json, Csv, SvgGantt };

std::string emit(const Schedule& s, EmitFormat format);
std::string emit_json(const Schedule& s);
std::string emit_csv(const Schedule& s);
std::string emit_svg_gantt(const Schedule& s);

// Inverse of emit_json; throws std::invalid_argument on malformed input.
Schedule parse_json(const std::string& text);

}  // namespace redsched

#include <json.hpp>

#include <cmath>
#include <iomanip>
#include <sstream>

#include "redsched/schedule_core.hpp"

namespace redsched {

namespace {

using nlohmann::json;

json rat_to_json(const Rat& r) {
    if (r.is_integer()) return r.num();
    return r.str();
}

Rat rat_from_json(const json& v, const char* field) {
    if (v.is_number_integer()) return Rat(v.get<std::int64_t>());
    if (v.is_string()) return Rat::parse(v.get<std::string>());
    throw std::invalid_argument(std::string("schedule json: ") + field +
                                " must be an integer or a rational string");
}

}  // namespace

std::string emit_json(const Schedule& s) {
    json doc;
    doc["p"] = s.p;
    doc["plan"] = s.plan.sizes;
    doc["params"] = {{"alpha", rat_to_json(s.params.alpha)},
                     {"beta", rat_to_json(s.params.beta)},
                     {"gamma", rat_to_json(s.params.gamma)}};
    doc["model"] = port_model_name(s.model);
    json events = json::array();
    for (const Event& e : s.events)
        events.push_back({{"seg", e.segment},
                          {"from", e.sender},
                          {"to", e.receiver},
                          {"start", rat_to_json(e.start)}});
    doc["events"] = std::move(events);
    return doc.dump(2) + "\n";
}

Schedule parse_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("schedule json: ") + e.what());
    }
    try {
        Schedule s;
        s.p = doc.at("p").get<std::int64_t>();
        s.plan.sizes = doc.at("plan").get<std::vector<std::int64_t>>();
        const json& params = doc.at("params");
        s.params.alpha = rat_from_json(params.at("alpha"), "alpha");
        s.params.beta = rat_from_json(params.at("beta"), "beta");
        s.params.gamma = rat_from_json(params.at("gamma"), "gamma");
        s.params.p = s.p;
        s.model = parse_port_model(doc.at("model").get<std::string>());
        for (const json& ev : doc.at("events")) {
            Event e;
            e.segment = ev.at("seg").get<std::int64_t>();
            e.sender = ev.at("from").get<std::int64_t>();
            e.receiver = ev.at("to").get<std::int64_t>();
            e.start = rat_from_json(ev.at("start"), "start");
            if (e.segment < 1 ||
                e.segment > static_cast<std::int64_t>(s.plan.sizes.size()))
                throw std::invalid_argument(
                    "schedule json: event segment out of range");
            std::int64_t size = s.plan.sizes[e.segment - 1];
            e.comm = comm_time(s.params, size);
            e.comp = comp_time(s.params, size);
            s.events.push_back(std::move(e));
        }
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("schedule json: ") + e.what());
    }
}

std::string emit_csv(const Schedule& s) {
    std::ostringstream out;
    out << "seg,from,to,start,comm,comp\n";
    for (const Event& e : s.events)
        out << e.segment << ',' << e.sender << ',' << e.receiver << ','
            << e.start.str() << ',' << e.comm.str() << ',' << e.comp.str()
            << '\n';
    return out.str();
}

namespace {

struct Rgb {
    int r, g, b;
};

// Distinct segment hues; computation rectangles use the darkened variant.
constexpr Rgb kPalette[] = {
    {78, 121, 167}, {242, 142, 43},  {225, 87, 89},  {118, 183, 178},
    {89, 161, 79},  {237, 201, 72},  {176, 122, 161}, {255, 157, 167},
    {156, 117, 95}, {186, 176, 172},
};

std::string hex_color(Rgb c, double scale) {
    auto channel = [scale](int v) {
        int scaled = static_cast<int>(std::lround(v * scale));
        return std::clamp(scaled, 0, 255);
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02x%02x%02x", channel(c.r),
                  channel(c.g), channel(c.b));
    return buf;
}

std::string segment_color(std::int64_t segment, bool compute) {
    const Rgb& c =
        kPalette[(segment - 1) % (sizeof kPalette / sizeof kPalette[0])];
    return hex_color(c, compute ? 0.55 : 1.0);
}

std::string fmt(double v) {
    std::ostringstream out;
    out << std::setprecision(6) << v;
    return out.str();
}

}  // namespace

std::string emit_svg_gantt(const Schedule& s) {
    SimulationResult sim = simulate(s);
    const double lane_h = 18.0, lane_gap = 4.0, left = 46.0, top = 24.0;
    const double chart_w = 960.0, bottom = 30.0;
    double span = sim.completion.to_double();
    if (span <= 0.0) span = 1.0;
    double scale = chart_w / span;
    double height =
        top + s.p * (lane_h + lane_gap) + bottom;
    double width = left + chart_w + 20.0;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
        << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width)
        << ' ' << fmt(height) << "\">\n";
    out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::int64_t g = 0; g < s.p; ++g) {
        double y = top + g * (lane_h + lane_gap);
        out << "  <text x=\"" << fmt(left - 8) << "\" y=\""
            << fmt(y + lane_h * 0.72) << "\" font-size=\"11\" "
               "font-family=\"sans-serif\" text-anchor=\"end\">p"
            << g << "</text>\n";
        out << "  <line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y + lane_h)
            << "\" x2=\"" << fmt(left + chart_w) << "\" y2=\""
            << fmt(y + lane_h) << "\" stroke=\"#dddddd\"/>\n";
        for (const BusyInterval& b : sim.proc_timeline[g]) {
            double x = left + b.start.to_double() * scale;
            double w = (b.end - b.start).to_double() * scale;
            bool compute = b.kind == BusyInterval::Kind::Compute;
            out << "  <rect x=\"" << fmt(x) << "\" y=\"" << fmt(y)
                << "\" width=\"" << fmt(w) << "\" height=\"" << fmt(lane_h)
                << "\" fill=\"" << segment_color(b.segment, compute)
                << "\" stroke=\"#333333\" stroke-width=\"0.4\"><title>seg "
                << b.segment << ' '
                << (compute ? "compute"
                            : b.kind == BusyInterval::Kind::Send ? "send"
                                                                 : "recv")
                << " [" << b.start.str() << ", " << b.end.str()
                << ")</title></rect>\n";
        }
    }

    double axis_y = top + s.p * (lane_h + lane_gap) + 12.0;
    out << "  <line x1=\"" << fmt(left) << "\" y1=\"" << fmt(axis_y - 10)
        << "\" x2=\"" << fmt(left + chart_w) << "\" y2=\"" << fmt(axis_y - 10)
        << "\" stroke=\"#888888\"/>\n";
    for (int tick = 0; tick <= 4; ++tick) {
        double t = span * tick / 4.0;
        out << "  <text x=\"" << fmt(left + t * scale) << "\" y=\""
            << fmt(axis_y) << "\" font-size=\"10\" font-family=\"sans-serif\" "
               "text-anchor=\"middle\">"
            << fmt(t) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string emit(const Schedule& s, EmitFormat format) {
    switch (format) {
        case EmitFormat::Json: return emit_json(s);
        case EmitFormat::Csv: return emit_csv(s);
        case EmitFormat::SvgGantt: return emit_svg_gantt(s);
    }
    throw std::invalid_argument("unsupported emit format");
}

}  // namespace redsched

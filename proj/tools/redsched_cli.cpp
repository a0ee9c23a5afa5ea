// Command-line front end for the reduction-schedule library.  All library
// work happens behind the C API in redsched/redsched.h; this file only
// parses flags, routes them, and moves text between the library, stdout,
// and files.
//
// Exit codes: 0 success, 1 verification failure, 2 invalid input.

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "redsched/redsched.h"

namespace {

// Adopts a malloc'd string from the library.
std::string take(char* s) {
    std::string text = s == nullptr ? std::string() : std::string(s);
    rs_string_free(s);
    return text;
}

int exit_code(int status) {
    if (status == RS_OK) return 0;
    return status == RS_ERR_VERIFY ? 1 : 2;
}

int complain(int status) {
    std::cerr << "error: " << rs_last_error() << '\n';
    return exit_code(status);
}

bool write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.flush();
    return static_cast<bool>(out);
}

// Prints to stdout, or writes to `path` when one was given.
int deliver(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    if (!write_file(path, text)) {
        std::cerr << "error: cannot write " << path << '\n';
        return 2;
    }
    return 0;
}

bool parse_plan(const std::string& text, std::vector<std::int64_t>& sizes) {
    std::stringstream stream(text);
    std::string token;
    while (std::getline(stream, token, ',')) {
        try {
            std::size_t used = 0;
            long long value = std::stoll(token, &used);
            if (used != token.size()) return false;
            sizes.push_back(value);
        } catch (const std::exception&) {
            return false;
        }
    }
    return !sizes.empty();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"reduction-collective schedule laboratory"};
    app.set_version_flag("--version", rs_version());
    app.set_config("--config", "",
                   "key=value config file; command-line flags take "
                   "precedence, subcommand keys go in a [subcommand] section");
    app.require_subcommand(1);

    std::string model = "uni";
    std::string alpha = "0";
    std::string beta = "0";
    std::string gamma = "0";
    std::int64_t p = 0;
    std::int64_t m = 0;
    std::int64_t s = 0;
    std::string plan_text;
    std::string out_path;
    std::string format;
    std::string search = "pow2";
    std::string algorithm;
    std::string mode;
    std::int64_t oracle_max_p = 4;
    bool as_float = false;

    auto machine = [&] {
        rs_params par;
        par.alpha = alpha.c_str();
        par.beta = beta.c_str();
        par.gamma = gamma.c_str();
        par.p = p;
        return par;
    };

    int rc = 0;

    // ------------------------------------------------------------------ time
    CLI::App* time_cmd = app.add_subcommand(
        "time", "closed-form times, optimal segment sizes, and lower bounds "
                "at one machine point");
    time_cmd->add_option("algorithm", algorithm,
                         "one of binomial, pipeline, binary, bigreedy, "
                         "butterfly; all defined rows when omitted");
    time_cmd->add_option("--model", model, "port model: uni or bi")
        ->capture_default_str();
    time_cmd->add_option("-p,--p", p, "processor count")->required();
    time_cmd->add_option("-m,--m", m, "message size")->required();
    time_cmd->add_option("-s,--s", s,
                         "segment size; a single segment when omitted");
    time_cmd->add_option("--alpha", alpha, "latency, rational like 10 or 1/2")
        ->capture_default_str();
    time_cmd->add_option("--beta", beta, "per-unit transfer cost")
        ->capture_default_str();
    time_cmd->add_option("--gamma", gamma, "per-unit computation cost")
        ->capture_default_str();
    time_cmd->add_option("--format", format, "csv or json (default csv)");
    time_cmd->add_option("--out", out_path, "write here instead of stdout");
    time_cmd->add_flag("--float", as_float,
                       "decimal output instead of exact rationals");
    time_cmd->callback([&] {
        rs_params par = machine();
        const char* algo = algorithm.empty() ? nullptr : algorithm.c_str();
        std::string fmt = format.empty() ? "csv" : format;
        char* out = nullptr;
        int st = rs_time_table(model.c_str(), algo, &par, m, s, fmt.c_str(),
                               as_float ? 1 : 0, &out);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        rc = deliver(take(out), out_path);
    });

    // -------------------------------------------------------------- schedule
    CLI::App* sched_cmd = app.add_subcommand(
        "schedule", "generate one event-level schedule and print its "
                    "completion time");
    sched_cmd
        ->add_option("algorithm", algorithm,
                     "binomial, pipeline, unigreedy, or bigreedy")
        ->required();
    sched_cmd->add_option("-p,--p", p, "processor count")->required();
    sched_cmd->add_option("-m,--m", m,
                          "message size, cut into equi-segments by -s");
    CLI::Option* s_opt =
        sched_cmd->add_option("-s,--s", s,
                              "segment size; a single segment when omitted");
    sched_cmd
        ->add_option("--plan", plan_text,
                     "explicit comma-separated segment sizes, e.g. 3,2,1")
        ->excludes(s_opt);
    sched_cmd->add_option("--alpha", alpha, "latency, rational like 10 or 1/2")
        ->capture_default_str();
    sched_cmd->add_option("--beta", beta, "per-unit transfer cost")
        ->capture_default_str();
    sched_cmd->add_option("--gamma", gamma, "per-unit computation cost")
        ->capture_default_str();
    sched_cmd->add_option(
        "--format", format,
        "emit the schedule as json, csv, or svg; with --out the document "
        "goes to that file, otherwise to stdout");
    sched_cmd->add_option(
        "--out", out_path,
        "output path; without --format writes <out>.json and <out>.svg");
    sched_cmd->add_flag("--float", as_float,
                        "decimal output instead of exact rationals");
    sched_cmd->callback([&] {
        std::vector<std::int64_t> sizes;
        if (!plan_text.empty() && !parse_plan(plan_text, sizes)) {
            std::cerr << "error: plan: expected comma-separated integers\n";
            rc = 2;
            return;
        }
        if (sizes.empty() && m <= 0) {
            std::cerr << "error: message: give -m (plus optional -s) or "
                         "--plan\n";
            rc = 2;
            return;
        }
        rs_params par = machine();
        rs_schedule* sched = nullptr;
        int st = rs_schedule_build(algorithm.c_str(), &par, m, s,
                                   sizes.empty() ? nullptr : sizes.data(),
                                   sizes.size(), &sched);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        if (!out_path.empty()) {
            std::vector<std::pair<std::string, std::string>> jobs;
            if (!format.empty()) {
                jobs.emplace_back(format, out_path);
            } else {
                jobs.emplace_back("json", out_path + ".json");
                jobs.emplace_back("svg", out_path + ".svg");
            }
            for (const auto& [fmt, path] : jobs) {
                char* doc = nullptr;
                st = rs_schedule_emit(sched, fmt.c_str(), &doc);
                if (st != RS_OK) {
                    rc = complain(st);
                    rs_schedule_free(sched);
                    return;
                }
                if ((rc = deliver(take(doc), path)) != 0) {
                    rs_schedule_free(sched);
                    return;
                }
            }
        } else if (!format.empty()) {
            char* doc = nullptr;
            st = rs_schedule_emit(sched, format.c_str(), &doc);
            if (st != RS_OK) {
                rc = complain(st);
                rs_schedule_free(sched);
                return;
            }
            rc = deliver(take(doc), "");
            rs_schedule_free(sched);
            return;
        }
        char* completion = nullptr;
        st = rs_schedule_completion(sched, as_float ? 1 : 0, &completion);
        rs_schedule_free(sched);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        std::cout << "completion " << take(completion) << '\n';
    });

    // ----------------------------------------------------------------- sweep
    CLI::App* sweep_cmd = app.add_subcommand(
        "sweep", "CSV of standard-algorithm versus greedy times over "
                 "power-of-two message sizes");
    sweep_cmd->add_option("--model", model, "port model: uni or bi")
        ->capture_default_str();
    sweep_cmd->add_option("-p,--p", p, "processor count")->required();
    sweep_cmd->add_option("-m,--m", m,
                          "largest message size (default 2^20)");
    sweep_cmd->add_option("--alpha", alpha, "latency, rational like 10 or 1/2")
        ->capture_default_str();
    sweep_cmd->add_option("--beta", beta, "per-unit transfer cost")
        ->capture_default_str();
    sweep_cmd->add_option("--gamma", gamma, "per-unit computation cost")
        ->capture_default_str();
    sweep_cmd
        ->add_option("--search", search,
                     "equi-segment search: pow2 or exhaustive (m <= 1024)")
        ->capture_default_str();
    sweep_cmd->add_option("--out", out_path, "write here instead of stdout");
    sweep_cmd->callback([&] {
        rs_params par = machine();
        char* out = nullptr;
        int st = rs_report_sweep(model.c_str(), &par, m, search.c_str(), &out);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        rc = deliver(take(out), out_path);
    });

    // ------------------------------------------------------------- regionmap
    CLI::App* region_cmd = app.add_subcommand(
        "regionmap", "CSV map of which algorithm wins across a parameter "
                     "grid");
    region_cmd
        ->add_option("mode", mode, "standards-uni or butterfly-bi")
        ->required();
    region_cmd->add_option("-p,--p", p, "largest processor count");
    region_cmd->add_option("-m,--m", m, "largest message size");
    region_cmd
        ->add_option("--alpha", alpha, "latency, rational like 10 or 1/2")
        ->capture_default_str();
    region_cmd->add_option("--beta", beta,
                           "per-unit transfer cost (standards-uni only)")
        ->capture_default_str();
    region_cmd->add_option("--gamma", gamma,
                           "per-unit computation cost (standards-uni only)")
        ->capture_default_str();
    region_cmd->add_option("--out", out_path, "write here instead of stdout");
    region_cmd->callback([&] {
        rs_params par = machine();
        char* out = nullptr;
        int st = rs_report_regionmap(mode.c_str(), &par, p, m, &out);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        rc = deliver(take(out), out_path);
    });

    // --------------------------------------------------------------- unequal
    CLI::App* uneq_cmd = app.add_subcommand(
        "unequal", "unequal-segmentation experiment; JSON summary on stdout");
    CLI::Option* uneq_alpha = uneq_cmd->add_option(
        "--alpha", alpha, "restrict the grid to one integer latency");
    CLI::Option* uneq_gamma = uneq_cmd->add_option(
        "--gamma", gamma, "restrict the grid to one integer computation "
                          "cost");
    uneq_cmd->add_option("-p,--p", p,
                         "drop grid processor counts above this");
    uneq_cmd->add_option("-m,--m", m, "message size (default 10)");
    uneq_cmd->add_option("--out", out_path, "write the per-point CSV here");
    uneq_cmd->add_flag("--float", as_float,
                       "decimal CSV columns instead of exact rationals");
    uneq_cmd->callback([&] {
        const char* a = uneq_alpha->count() > 0 ? alpha.c_str() : nullptr;
        const char* g = uneq_gamma->count() > 0 ? gamma.c_str() : nullptr;
        char* csv = nullptr;
        char* summary = nullptr;
        int st = rs_report_unequal(nullptr, a, g, p, m, as_float ? 1 : 0,
                                   out_path.empty() ? nullptr : &csv,
                                   &summary);
        if (st != RS_OK) {
            rc = complain(st);
            return;
        }
        if (!out_path.empty() &&
            (rc = deliver(take(csv), out_path)) != 0) {
            rs_string_free(summary);
            return;
        }
        std::string text = take(summary);
        std::cout << text;
        if (text.empty() || text.back() != '\n') std::cout << '\n';
    });

    // ---------------------------------------------------------------- verify
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "exhaustive oracle and property suites; exit 0 iff all "
                  "hold");
    verify_cmd
        ->add_option("--oracle-max-p", oracle_max_p,
                     "largest processor count for the exhaustive oracle "
                     "(2..6)")
        ->capture_default_str();
    verify_cmd->add_option("--out", out_path,
                           "also write the report to this file");
    verify_cmd->callback([&] {
        char* report = nullptr;
        int st = rs_verify(oracle_max_p, &report);
        std::string text = take(report);
        if (st == RS_ERR_INVALID) {
            rc = complain(st);
            return;
        }
        std::cout << text;
        if (!out_path.empty() && !write_file(out_path, text)) {
            std::cerr << "error: cannot write " << out_path << '\n';
            rc = 2;
            return;
        }
        rc = exit_code(st);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    return rc;
}

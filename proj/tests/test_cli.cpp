// End-to-end checks of the command-line tool.  Expects the binary path as
// argv[1]; runs it with popen and inspects stdout, stderr, exit codes, and
// written files.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <sys/wait.h>

namespace {

int failures = 0;

void check_impl(bool ok, const std::string& what, int line) {
    if (!ok) {
        ++failures;
        std::cout << "FAIL line " << line << ": " << what << "\n";
    }
}

#define CHECK(cond) check_impl(static_cast<bool>(cond), #cond, __LINE__)
#define CHECK_MSG(cond, msg) check_impl(static_cast<bool>(cond), msg, __LINE__)

std::string g_bin;

struct RunResult {
    int code = -1;
    std::string out;
    std::string err;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

RunResult run(const std::string& args) {
    const std::string err_path = "cli_tmp_stderr.txt";
    std::string cmd = '"' + g_bin + "\" " + args + " 2>" + err_path;
    RunResult r;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
    int status = pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.err = slurp(err_path);
    std::remove(err_path.c_str());
    return r;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

std::size_t line_count(const std::string& text) {
    std::size_t lines = 0;
    for (char c : text)
        if (c == '\n') ++lines;
    return lines;
}

void test_time() {
    RunResult r = run("time --model uni -p 64 -m 100 --alpha 10 --beta 1 "
                      "--gamma 0");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "algorithm,time,s_opt,t_opt,note"));
    CHECK(contains(r.out, "binomial,660,"));
    CHECK(contains(r.out, "lower_latency,60,"));

    r = run("time --model bi -p 16 -m 5 -s 1 --alpha 1 --beta 1 --gamma 1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "bigreedy,24,"));
    CHECK(contains(r.out, "butterfly,353/16,"));

    r = run("time --model uni -p 64 -m 100 --alpha 10 --beta 1 --gamma 0 "
            "--format json");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"model\": \"uni\""));
    CHECK(contains(r.out, "\"time\": \"660\""));

    // The pipeline closed form has no value at p = 2: named row -> domain
    // error; the all-rows table just skips it.
    r = run("time pipeline -p 2 -m 4 --alpha 1 --beta 1 --gamma 1");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "error:"));
    r = run("time -p 2 -m 4 --alpha 1 --beta 1 --gamma 1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "binomial,"));
    CHECK(!contains(r.out, "pipeline,"));

    r = run("time -p 4 -m 2 --alpha ten");
    CHECK(r.code == 2);
    r = run("time -m 4");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "--p"));
}

void test_schedule() {
    RunResult r =
        run("schedule unigreedy -p 15 -m 5 -s 1 --alpha 2 --gamma 1");
    CHECK(r.code == 0);
    CHECK(r.out == "completion 56\n");

    r = run("schedule bigreedy -p 16 -m 5 -s 1 --alpha 2 --gamma 1");
    CHECK(r.code == 0);
    CHECK(r.out == "completion 24\n");

    r = run("schedule binomial -p 2 -m 1 --alpha 1 --beta 1 --gamma 1");
    CHECK(r.code == 0);
    CHECK(r.out == "completion 3\n");

    // One Gantt lane per processor; each of the five segments gets a color.
    r = run("schedule unigreedy -p 15 -m 5 -s 1 --alpha 2 --gamma 1 "
            "--format svg");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "<svg"));
    CHECK(contains(r.out, "p14"));
    CHECK(!contains(r.out, "p15"));

    r = run("schedule unigreedy -p 15 -m 5 -s 1 --alpha 2 --gamma 1 "
            "--out cli_tmp_fig");
    CHECK(r.code == 0);
    CHECK(r.out == "completion 56\n");
    std::string json = slurp("cli_tmp_fig.json");
    std::string svg = slurp("cli_tmp_fig.svg");
    CHECK(contains(json, "\"events\""));
    CHECK(contains(svg, "<svg"));
    std::remove("cli_tmp_fig.json");
    std::remove("cli_tmp_fig.svg");

    r = run("schedule unigreedy -p 5 --plan 2,1 --alpha 1 --beta 1 "
            "--gamma 1");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "completion "));

    r = run("schedule unigreedy -p 5 --plan 2,x --alpha 1");
    CHECK(r.code == 2);
    r = run("schedule unigreedy -p 5 --alpha 1");
    CHECK(r.code == 2);
    CHECK(contains(r.err, "--plan"));
    r = run("schedule unigreedy -p 5 -s 2 --plan 2,1");
    CHECK(r.code == 2);
    r = run("schedule quantum -p 5 -m 2");
    CHECK(r.code == 2);
}

void test_sweep() {
    RunResult r = run("sweep --model uni -p 64 --alpha 10 --beta 1 "
                      "--gamma 0 -m 64");
    CHECK(r.code == 0);
    CHECK(line_count(r.out) == 8);
    CHECK(contains(r.out,
                   "m,binomial,pipeline,binary,greedy,greedy_segment_size,"
                   "ratio"));
    CHECK(contains(r.out, "\n1,66,"));
    CHECK(contains(r.out, "\n32,252,"));
    CHECK(contains(r.out, ",234,16,1.07692307692\n"));

    r = run("sweep --model uni -p 64 --alpha 10 --beta 1 --gamma 0 -m 64 "
            "--search exhaustive");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\n32,252,"));

    r = run("sweep --model uni -p 64 --alpha 10 -m 2048 --search exhaustive");
    CHECK(r.code == 2);
    r = run("sweep --model uni -p 64 --alpha 10 -m 64 --search random");
    CHECK(r.code == 2);
}

void test_regionmap() {
    RunResult r = run("regionmap standards-uni --alpha 10 --beta 1 "
                      "--gamma 0 -p 64 -m 32");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p,m,binomial,pipeline,binary,label"));
    CHECK(contains(r.out, "\n64,16,156,"));
    CHECK(contains(r.out, ",binomial\n"));

    r = run("regionmap standards-uni --alpha 10 --beta 1 --gamma 0 -p 64 "
            "-m 1048576");
    CHECK(r.code == 0);
    std::size_t row = r.out.find("\n64,1048576,");
    CHECK(row != std::string::npos);
    std::size_t eol = r.out.find('\n', row + 1);
    CHECK(contains(r.out.substr(row, eol - row), ",pipeline"));

    r = run("regionmap butterfly-bi --alpha 10 -p 1000 -m 1000000");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "p,beta_over_gamma,exists,witness_m"));
    CHECK(contains(r.out, "\n1000,9/2,1,"));
    CHECK(contains(r.out, "\n1000,19/4,0,"));

    r = run("regionmap mercator -p 64");
    CHECK(r.code == 2);
}

void test_unequal() {
    RunResult r = run("unequal --alpha 0 --gamma 1 -p 12 --out "
                      "cli_tmp_uneq.csv");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "\"max_ratio\": 1.0731707317073171"));
    CHECK(contains(r.out, "\"points\": 4"));
    CHECK(contains(r.out, "\"unequal_count\": 2"));
    std::string csv = slurp("cli_tmp_uneq.csv");
    CHECK(line_count(csv) == 5);
    CHECK(contains(csv, "\n8,0,1,1,10,37/35,"));
    CHECK(contains(csv, "\n12,0,1,1,10,44/41,"));
    std::remove("cli_tmp_uneq.csv");

    r = run("unequal --alpha 1/2 -p 12");
    CHECK(r.code == 2);
    r = run("unequal -p 3");
    CHECK(r.code == 2);
}

void test_verify() {
    RunResult r = run("verify --oracle-max-p 2");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "one-port greedy vs exhaustive search: 936 cases, "
                          "all hold"));
    CHECK(contains(r.out, "VERIFY PASS"));

    r = run("verify --oracle-max-p 7");
    CHECK(r.code == 2);
}

void test_config_and_misc() {
    std::ofstream("cli_tmp.cfg") << "[time]\np=64\nm=100\nalpha=10\nbeta=1\n"
                                    "gamma=0\nmodel=uni\n";
    RunResult r = run("--config cli_tmp.cfg time");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "binomial,660,"));

    // Command-line flags override config values.
    r = run("--config cli_tmp.cfg time -m 50");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "binomial,360,"));
    std::remove("cli_tmp.cfg");

    r = run("--help");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "time"));
    CHECK(contains(r.out, "verify"));

    r = run("--version");
    CHECK(r.code == 0);
    CHECK(contains(r.out, "1.0.0"));

    r = run("navigate -p 4");
    CHECK(r.code == 2);
    r = run("");
    CHECK(r.code == 2);
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cout << "usage: test_cli <path-to-binary>\n";
        return 2;
    }
    g_bin = argv[1];
    test_time();
    test_schedule();
    test_sweep();
    test_regionmap();
    test_unequal();
    test_verify();
    test_config_and_misc();
    if (failures != 0) {
        std::cout << failures << " check(s) failed\n";
        return 1;
    }
    std::cout << "all command-line checks passed\n";
    return 0;
}

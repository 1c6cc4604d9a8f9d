#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

fs::path scratch_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / "slag_cli_test";
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

RunResult run_raw(const std::string& cmdline) {
    const fs::path out = scratch_dir() / "stdout.txt";
    const std::string cmd =
        cmdline + " > " + out.string() + " 2> " + (scratch_dir() / "stderr.txt").string();
    const int status = std::system(cmd.c_str());
    RunResult r;
    r.exit_code = WEXITSTATUS(status);
    std::ifstream is(out);
    std::ostringstream ss;
    ss << is.rdbuf();
    r.out = ss.str();
    return r;
}

RunResult run(const std::string& args) { return run_raw(std::string(SLAG_CLI_PATH) + " " + args); }

void write_text(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

}  // namespace

TEST_CASE("phase command") {
    const RunResult ok = run("phase --n 3 --theta 0");
    CHECK(ok.exit_code == 0);
    CHECK(ok.out.find("class subcritical") != std::string::npos);
    CHECK(ok.out.find("theta 0.78539816339744828") != std::string::npos);
    CHECK(ok.out.find("rotated_phase -1.9634954084936207") != std::string::npos);

    CHECK(run("phase --n 3 --theta 2.0").exit_code == 2);
    CHECK(run("phase --n 4 --theta -1.0").out.find("subcritical") != std::string::npos);
    CHECK(run("phase --badflag 1").exit_code == 2);
}

TEST_CASE("verify command") {
    const fs::path spec = scratch_dir() / "pog.json";
    write_text(spec, R"({"variant":"PogorelovSL","M":2})");
    const RunResult r = run("verify --spec " + spec.string() + " --probes 200");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"equation\":\"det_one\"") != std::string::npos);

    // identical inputs produce byte-identical output
    const RunResult again = run("verify --spec " + spec.string() + " --probes 200");
    CHECK(again.out == r.out);

    // CSV format carries the pinned header
    const RunResult csv = run("verify --spec " + spec.string() + " --probes 50 --format csv");
    CHECK(csv.out.rfind("equation,max_residual,probes,h\n", 0) == 0);

    const fs::path bad = scratch_dir() / "bad.json";
    write_text(bad, "{not json");
    CHECK(run("verify --spec " + bad.string()).exit_code == 1);
    CHECK(run("verify --spec " + (scratch_dir() / "missing.json").string()).exit_code == 1);
}

TEST_CASE("sweep command") {
    const fs::path csv = scratch_dir() / "sweep.csv";
    const RunResult r = run("sweep --m 1:3 --theta 0.5 --n 3 -o " + csv.string());
    CHECK(r.exit_code == 0);
    std::ifstream is(csv);
    std::string header;
    std::getline(is, header);
    CHECK(header == "M,L,lambda1,chain_k,volume,ratio");
    int rows = 0;
    std::string line;
    while (std::getline(is, line))
        if (!line.empty()) ++rows;
    CHECK(rows == 3);

    // stdout mode
    const RunResult direct = run("sweep --m 2:2 --theta 0.5 --n 3");
    CHECK(direct.exit_code == 0);
    CHECK(direct.out.rfind("M,L,lambda1,chain_k,volume,ratio\n", 0) == 0);

    // empty range is a validation error
    CHECK(run("sweep --m 5:1 --theta 0.5 --n 3").exit_code == 2);
}

TEST_CASE("chain command") {
    const fs::path curve = scratch_dir() / "line.json";
    write_text(curve, R"({"vertices":[[0,0],[1,0]]})");
    const RunResult r = run("chain --curve " + curve.string() + " --r 0.1");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"k\":4") != std::string::npos);
    CHECK(run("chain --curve " + curve.string() + " --r -1").exit_code == 2);
}

TEST_CASE("rotate and legendre commands") {
    // 1d quadratic grid file
    const fs::path grid = scratch_dir() / "u.gf";
    {
        std::ostringstream os;
        const int n = 33;
        os << "2";
        const double h = 2.0 / (n - 1);
        os << " " << h << " " << h << " " << n << " " << n << " -1 1 -1 1\n";
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                const double x = -1.0 + i * h, y = -1.0 + j * h;
                os << 0.5 * (x * x + y * y) << '\n';
            }
        write_text(grid, os.str());
    }
    const RunResult rot = run("rotate --grid " + grid.string() + " --n 2 --theta 0.7853981633974483");
    CHECK(rot.exit_code == 0);
    CHECK(rot.out.find("\"params\"") != std::string::npos);
    CHECK(rot.out.find("\"ubar\"") != std::string::npos);

    const RunResult leg = run("legendre --grid " + grid.string() + " --involution");
    CHECK(leg.exit_code == 0);
    CHECK(leg.out.rfind("sup_error ", 0) == 0);

    // conjugate at explicit queries
    const fs::path queries = scratch_dir() / "queries.json";
    write_text(queries, "[[0.5,0.0],[0.0,0.25]]");
    const RunResult conj = run("legendre --grid " + grid.string() + " --queries " + queries.string());
    CHECK(conj.exit_code == 0);
    CHECK(conj.out.find("\"values\":[0.125,0.03125]") != std::string::npos);

    CHECK(run("rotate --grid " + (scratch_dir() / "none.gf").string() + " --n 2 --theta 0.5").exit_code == 1);
    // dimension mismatch between --n and the grid
    CHECK(run("rotate --grid " + grid.string() + " --n 3 --theta 0.5").exit_code == 2);
}

TEST_CASE("outputs are byte-identical at any worker count") {
    const fs::path grid = scratch_dir() / "u.gf";
    const std::string base = std::string(SLAG_CLI_PATH) + " legendre --grid " + grid.string() + " --involution";
    const RunResult one = run_raw("env SLAG_THREADS=1 " + base);
    const RunResult many = run_raw("env SLAG_THREADS=7 " + base);
    CHECK(one.exit_code == 0);
    CHECK(one.out == many.out);

    const std::string sweep = std::string(SLAG_CLI_PATH) + " sweep --m 1:2 --theta 0.5 --n 3";
    const RunResult s1 = run_raw("env SLAG_THREADS=2 " + sweep);
    const RunResult s2 = run_raw("env SLAG_THREADS=5 " + sweep);
    CHECK(s1.out == s2.out);
}

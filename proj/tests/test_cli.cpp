#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <sys/wait.h>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::path("cli_scratch");

int run(const std::string& args, const fs::path& log) {
    std::string cmd = std::string(CLI_BIN) + " " + args + " >" + log.string() + " 2>&1";
    int rc = std::system(cmd.c_str());
    REQUIRE(rc != -1);
    REQUIRE(WIFEXITED(rc));
    return WEXITSTATUS(rc);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path fresh(const std::string& name) {
    fs::path dir = kRoot / name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    out << content;
}

// Every file the manifest lists exists; every file on disk except the
// manifest itself is listed.
void check_manifest(const fs::path& dir, const std::string& command) {
    auto j = nlohmann::json::parse(slurp(dir / "manifest.json"));
    CHECK(j["command"] == command);
    CHECK(j["tool_version"] == "0.1.0");
    CHECK(j["config_hash"].get<std::string>().size() == 16);
    CHECK(j["wall_clock_utc"].get<std::string>().size() == 20);
    CHECK(j["solver"].contains("tol"));

    std::set<std::string> listed;
    for (const auto& f : j["files"]) listed.insert(f.get<std::string>());
    std::set<std::string> on_disk;
    for (const auto& e : fs::recursive_directory_iterator(dir)) {
        if (!e.is_regular_file()) continue;
        std::string rel = fs::relative(e.path(), dir).generic_string();
        if (rel != "manifest.json") on_disk.insert(rel);
    }
    CHECK(listed == on_disk);
}

} // namespace

TEST_CASE("usage errors exit with code 1") {
    fs::path dir = fresh("usage");
    CHECK(run("", dir / "noargs.log") == 1);
    CHECK(run("solve", dir / "noconfig.log") == 1);
    CHECK(run("solve " + (dir / "missing.cfg").string(), dir / "badpath.log") == 1);
    CHECK(run("frobnicate", dir / "badcmd.log") == 1);
    CHECK(run("--help", dir / "help.log") == 0);

    write_file(dir / "bad.cfg", "no.such.key = 1\n");
    CHECK(run("solve " + (dir / "bad.cfg").string(), dir / "badkey.log") == 1);
    std::string log = slurp(dir / "badkey.log");
    CHECK(log.find("no.such.key") != std::string::npos);
}

TEST_CASE("solve writes trajectory, report, and a complete manifest") {
    fs::path dir = fresh("solve");
    write_file(dir / "run.cfg", "");  // pure defaults
    fs::path out = dir / "out";
    int code = run("solve " + (dir / "run.cfg").string() + " --out " + out.string(),
                   dir / "solve.log");
    CHECK(code == 0);
    CHECK(fs::exists(out / "trajectory.csv"));
    CHECK(fs::exists(out / "report.txt"));
    check_manifest(out, "solve");

    std::string report = slurp(out / "report.txt");
    CHECK(report.find("status: converged") != std::string::npos);
    CHECK(report.find("scenario: optimal") != std::string::npos);
    CHECK(report.find("scc_usd_per_tco2 2015:") != std::string::npos);

    std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.substr(0, 4) == "year");
    CHECK(csv.find("2015,") != std::string::npos);
    CHECK(csv.find("2510,") != std::string::npos);
}

TEST_CASE("repeated runs are byte-identical apart from the manifest clock") {
    fs::path dir = fresh("golden");
    write_file(dir / "run.cfg", "solver.seed = 3\n");
    fs::path out1 = dir / "one", out2 = dir / "two";
    std::string cfg = (dir / "run.cfg").string();
    CHECK(run("solve " + cfg + " --out " + out1.string(), dir / "a.log") == 0);
    CHECK(run("solve " + cfg + " --out " + out2.string(), dir / "b.log") == 0);
    CHECK(slurp(out1 / "trajectory.csv") == slurp(out2 / "trajectory.csv"));
    CHECK(slurp(out1 / "report.txt") == slurp(out2 / "report.txt"));
}

TEST_CASE("scenario flag switches the run mode") {
    fs::path dir = fresh("scenario");
    write_file(dir / "run.cfg", "");
    fs::path out = dir / "out";
    CHECK(run("solve " + (dir / "run.cfg").string() +
                  " --scenario fixed-controls --out " + out.string(),
              dir / "fixed.log") == 0);
    std::string report = slurp(out / "report.txt");
    CHECK(report.find("scenario: fixed-controls") != std::string::npos);
    CHECK(report.find("iterations: 0") != std::string::npos);

    CHECK(run("solve " + (dir / "run.cfg").string() + " --scenario warp --out " +
                  out.string(),
              dir / "warp.log") == 1);
}

TEST_CASE("an unsolvable damage coefficient exits 2 with an infeasible report") {
    fs::path dir = fresh("infeasible");
    write_file(dir / "run.cfg", "damage.a = 0.19236\n");
    fs::path out = dir / "out";
    int code = run("solve " + (dir / "run.cfg").string() + " --out " + out.string(),
                   dir / "inf.log");
    CHECK(code == 2);
    std::string report = slurp(out / "report.txt");
    CHECK(report.find("status: infeasible") != std::string::npos);
    check_manifest(out, "solve");
}

TEST_CASE("sweep emits summary, per-run outputs, and the three overlay figures") {
    fs::path dir = fresh("sweep");
    write_file(dir / "run.cfg", "grid.periods = 40\n");
    fs::path out = dir / "out";
    int code = run("sweep " + (dir / "run.cfg").string() +
                       " --a-values 0.00236,0.05 --out " + out.string(),
                   dir / "sweep.log");
    CHECK(code == 0);
    std::string summary = slurp(out / "summary.csv");
    CHECK(summary.find("a,status,") == 0);
    CHECK(summary.find("0.00236,converged") != std::string::npos);
    CHECK(summary.find("0.05,converged") != std::string::npos);
    CHECK(summary.find("\n\n") == std::string::npos);  // no blank rows
    CHECK(summary.back() == '\n');
    for (const char* f : {"fig4.svg", "fig5.svg", "fig6.svg"})
        CHECK(fs::exists(out / f));
    for (const char* sub : {"a_0.00236", "a_0.05"}) {
        CHECK(fs::exists(out / sub / "trajectory.csv"));
        CHECK(fs::exists(out / sub / "report.txt"));
    }
    check_manifest(out, "sweep");

    CHECK(run("sweep " + (dir / "run.cfg").string() + " --a-values , --out " +
                  out.string(),
              dir / "empty.log") == 1);
}

TEST_CASE("figures: deterministic SVGs, subset selection, unknown id rejected") {
    fs::path dir = fresh("figures");
    fs::path out1 = dir / "one", out2 = dir / "two", out3 = dir / "sub";
    CHECK(run("figures --out " + out1.string(), dir / "f1.log") == 0);
    CHECK(run("figures --out " + out2.string(), dir / "f2.log") == 0);
    for (const char* f : {"fig1.svg", "fig2.svg", "fig3.svg"}) {
        CHECK(fs::exists(out1 / f));
        CHECK(slurp(out1 / f) == slurp(out2 / f));
        CHECK(slurp(out1 / f).find("<svg") != std::string::npos);
    }
    check_manifest(out1, "figures");

    CHECK(run("figures --which fig2 --out " + out3.string(), dir / "f3.log") == 0);
    CHECK(fs::exists(out3 / "fig2.svg"));
    CHECK_FALSE(fs::exists(out3 / "fig1.svg"));
    check_manifest(out3, "figures");

    CHECK(run("figures --which fig9 --out " + (dir / "none").string(),
              dir / "f9.log") == 1);
}

TEST_CASE("ramsey and regress write their analyses") {
    fs::path dir = fresh("analysis");
    fs::path ram = dir / "ram", reg = dir / "reg";
    CHECK(run("ramsey --out " + ram.string(), dir / "ram.log") == 0);
    std::string rt = slurp(ram / "ramsey.txt");
    CHECK(rt.find("k_star: 40.506733") != std::string::npos);
    CHECK(rt.find("vanishing=yes") != std::string::npos);
    CHECK(rt.find("vanishing=no") != std::string::npos);
    CHECK(fs::exists(ram / "phase_portrait.svg"));
    check_manifest(ram, "ramsey");

    CHECK(run("regress --out " + reg.string(), dir / "reg.log") == 0);
    std::string gt = slurp(reg / "regress.txt");
    CHECK(gt.find("variant unweighted-through-origin") != std::string::npos);
    CHECK(gt.find("larger than the model coefficient") != std::string::npos);
    CHECK(fs::exists(reg / "fig3.svg"));
    check_manifest(reg, "regress");
}

TEST_CASE("the output directory falls back to the environment default") {
    fs::path dir = fresh("envout");
    fs::path out = fs::absolute(dir / "from_env");
    setenv("DICE_OUT", out.string().c_str(), 1);
    int code = run("figures --which fig2", dir / "env.log");
    unsetenv("DICE_OUT");
    CHECK(code == 0);
    CHECK(fs::exists(out / "fig2.svg"));
}

TEST_CASE("solver overrides reach the engine") {
    fs::path dir = fresh("overrides");
    write_file(dir / "run.cfg", "");
    fs::path out = dir / "out";
    CHECK(run("solve " + (dir / "run.cfg").string() +
                  " --periods 40 --solver-tol 1e-5 --seed 9 --out " + out.string(),
              dir / "ov.log") == 0);
    std::string csv = slurp(out / "trajectory.csv");
    CHECK(csv.find("2210,") != std::string::npos);   // 40 periods end at 2210
    CHECK(csv.find("2215,") == std::string::npos);
    auto j = nlohmann::json::parse(slurp(out / "manifest.json"));
    CHECK(j["solver"]["tol"] == 1e-5);
    CHECK(j["solver"]["seed"] == 9);
}

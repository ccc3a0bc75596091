// End-to-end checks of the command-line surface: exit codes, diagnostics,
// file schemas. Usage: qdc_cli_integration <cli-binary> <pulse-dir>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

int g_failures = 0;
std::string g_cli;
fs::path g_work;

void check(bool ok, const std::string& what) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what.c_str());
    if (!ok) ++g_failures;
}

struct RunResult {
    int exit_code;
    std::string output;  // stdout + stderr
};

RunResult run(const std::string& args) {
    const fs::path log = g_work / "cmd.log";
    const std::string cmd = "\"" + g_cli + "\" " + args + " > \"" + log.string() + "\" 2>&1";
    const int status = std::system(cmd.c_str());
    const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    std::ifstream in(log);
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return {code, text};
}

std::vector<std::string> csv_lines(const fs::path& p) {
    std::ifstream in(p);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

double csv_p(const std::string& row) {
    const size_t comma = row.rfind(',');
    return std::stod(row.substr(comma + 1));
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::fprintf(stderr, "usage: %s <cli-binary> <pulse-dir>\n", argv[0]);
        return 2;
    }
    g_cli = argv[1];
    const fs::path pulses = argv[2];
    g_work = fs::temp_directory_path() / "qdc_cli_integration";
    std::error_code ec;
    fs::remove_all(g_work, ec);
    fs::create_directories(g_work);

    // verify: the golden file passes against its documented class and fails
    // against the textbook CNOT
    {
        const auto pass = run("verify \"" + (pulses / "cnot_hc.pul").string() + "\" --target cnot");
        check(pass.exit_code == 0 && pass.output.find("PASS") != std::string::npos,
              "verify golden file against cnot -> exit 0, PASS");

        const auto fail =
            run("verify \"" + (pulses / "cnot_hc.pul").string() + "\" --target cnot-ideal");
        check(fail.exit_code == 1 && fail.output.find("FAIL") != std::string::npos,
              "verify golden file against cnot-ideal -> exit 1, FAIL");

        const auto ch = run("verify \"" + (pulses / "cnot_hc.pul").string() + "\" --target ch");
        check(ch.exit_code == 1, "verify golden file against ch -> exit 1");
    }

    // verify: bad files produce located diagnostics and exit 2
    {
        const fs::path bad = g_work / "bad.pul";
        std::ofstream(bad) << "rot Q y 90\n";
        const auto r = run("verify \"" + bad.string() + "\" --target identity");
        check(r.exit_code == 2, "parse failure -> exit 2");
        check(r.output.find("line 1, column 5") != std::string::npos &&
                  r.output.find("unknown spin label 'Q'") != std::string::npos,
              "diagnostic names the token and its location");

        const fs::path empty = g_work / "empty.pul";
        std::ofstream(empty) << "# nothing here\n";
        const auto e = run("verify \"" + empty.string() + "\" --target identity");
        check(e.exit_code == 0, "empty sequence verifies against the identity");
    }

    // sweep: row counts, flat alpha = 0 series, amplitude at alpha = pi
    {
        const fs::path out = g_work / "sweep";
        const auto r = run("sweep --alphas 0,pi --thetas 17 --out \"" + out.string() + "\"");
        check(r.exit_code == 0, "sweep exits 0");
        const auto lines = csv_lines(out / "results.csv");
        check(lines.size() == 35 && lines[0] == "alpha_rad,theta_rad,level,p",
              "CSV has the fixed header and 34 rows");
        bool flat = true;
        for (size_t i = 1; i <= 17; ++i) flat = flat && std::abs(csv_p(lines[i])) < 1e-12;
        check(flat, "alpha = 0 series is flat at zero");

        const json fits = json::parse(std::ifstream(out / "fits.json"));
        check(fits.size() == 2 && std::abs(fits[1]["amplitude"].get<double>() - 0.5) < 1e-9,
              "alpha = pi fit amplitude is 0.5");
        check(fs::exists(out / "plot.svg") && fs::exists(out / "manifest.json"),
              "plot and manifest written");
    }

    // sweep: pulse level reproduces gate level row by row
    {
        const fs::path gate_out = g_work / "gate", pulse_out = g_work / "pulse";
        run("sweep --alphas pi/2 --thetas 9 --level gate --out \"" + gate_out.string() + "\"");
        run("sweep --alphas pi/2 --thetas 9 --level pulse --out \"" + pulse_out.string() + "\"");
        const auto a = csv_lines(gate_out / "results.csv"), b = csv_lines(pulse_out / "results.csv");
        bool close = a.size() == b.size();
        for (size_t i = 1; close && i < a.size(); ++i)
            close = std::abs(csv_p(a[i]) - csv_p(b[i])) <= 1e-9;
        check(close, "pulse-level sweep matches gate-level sweep per row");
    }

    // tomo: JSON reloads with unit trace and the quarter/half diagonal
    {
        const fs::path out = g_work / "tomo";
        const auto r = run("tomo --alpha pi/2 --theta 0 --out \"" + out.string() + "\"");
        check(r.exit_code == 0, "tomo exits 0");
        const json t = json::parse(std::ifstream(out / "tomo.json"));
        double trace = 0.0;
        for (int i = 0; i < 4; ++i) trace += t["deviation_matrix"]["real"][i][i].get<double>();
        check(std::abs(trace - 1.0) < 1e-9, "reloaded tomogram has unit trace");
        const std::vector<double> want{0.25, 0.25, 0.5, 0.0};
        bool diag_ok = true;
        for (int i = 0; i < 4; ++i)
            diag_ok = diag_ok &&
                      std::abs(t["deviation_matrix"]["real"][i][i].get<double>() - want[i]) < 1e-10;
        check(diag_ok, "diagonal is (0.25, 0.25, 0.5, 0)");
        double worst_off = 0.0;
        for (int r2 = 0; r2 < 2; ++r2)
            for (int c = 2; c < 4; ++c)
                worst_off = std::max(worst_off,
                                     std::abs(t["deviation_matrix"]["real"][r2][c].get<double>()));
        check(worst_off < 1e-10, "off-diagonal ancilla blocks are empty");
    }

    // usage errors exit 2
    {
        check(run("sweep --no-such-flag").exit_code == 2, "unknown flag -> exit 2");
        check(run("verify").exit_code == 2, "missing required argument -> exit 2");
        check(run("tomo --alpha bogus --theta 0").exit_code == 2, "malformed angle -> exit 2");
        check(run("").exit_code == 2, "missing subcommand -> exit 2");
    }

    if (g_failures == 0) {
        std::printf("all CLI integration checks passed\n");
        return 0;
    }
    std::printf("%d CLI integration checks FAILED\n", g_failures);
    return 1;
}

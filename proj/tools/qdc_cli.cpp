// Command-line front end: fringe sweeps, pulse-file verification, tomograms,
// and closed-form state inspection. Exit codes: 0 success, 1 domain failure
// (verification or fit), 2 usage or parse errors.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qdc/angle_expr.hpp"
#include "qdc/experiment.hpp"
#include "qdc/pulse_parser.hpp"
#include "qdc/report.hpp"

namespace fs = std::filesystem;
using qdc::json;

namespace {

struct GlobalOpts {
    double j_coupling = 215.1;
    double epsilon = 1e-5;
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string format = "csv";
};

// A grid flag is either a bare integer count (evenly spaced points over
// [0, span]) or a comma-separated list of angle expressions.
std::vector<double> parse_grid(const std::string& text, double span) {
    if (!text.empty() && text.find_first_not_of("0123456789") == std::string::npos) {
        const int n = std::stoi(text);
        if (n < 1) throw std::invalid_argument("grid count must be at least 1");
        std::vector<double> grid;
        for (int i = 0; i < n; ++i)
            grid.push_back(n == 1 ? 0.0 : span * i / (n - 1));
        return grid;
    }
    std::vector<double> grid;
    size_t pos = 0;
    while (pos <= text.size()) {
        const size_t comma = text.find(',', pos);
        const std::string tok =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        grid.push_back(qdc::parse_angle_expr(tok));
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    if (grid.empty()) throw std::invalid_argument("empty angle grid");
    return grid;
}

json grid_json(const std::vector<double>& g) {
    json arr = json::array();
    for (double v : g) arr.push_back(v);
    return arr;
}

struct DephaseOpts {
    std::string mode = "ideal";
    int samples = 8;
    bool no_refocus = false;
    double gyro_ratio = 0.2514;

    qdc::DephaseSpec spec() const {
        qdc::DephaseSpec s;
        s.mode = mode == "ideal" ? qdc::DephaseSpec::Mode::Ideal : qdc::DephaseSpec::Mode::Gradient;
        s.samples = samples;
        s.refocus = !no_refocus;
        s.gyro_ratio = gyro_ratio;
        return s;
    }
};

void add_dephase_flags(CLI::App* cmd, DephaseOpts& d) {
    cmd->add_option("--dephase", d.mode, "Measurement emulation: ideal | gradient")
        ->check(CLI::IsMember({"ideal", "gradient"}))
        ->capture_default_str();
    cmd->add_option("--samples", d.samples, "Gradient phase samples (gradient mode)")
        ->check(CLI::Range(2, 4096))
        ->capture_default_str();
    cmd->add_flag("--no-refocus", d.no_refocus,
                  "Drop the refocusing pi pulse between the two gradients");
    cmd->add_option("--gyro-ratio", d.gyro_ratio,
                    "System/ancilla gradient phase ratio (gradient mode)")
        ->capture_default_str();
}

int run_sweep_cmd(const GlobalOpts& g, const std::string& alphas_text,
                  const std::string& thetas_text, const std::string& level_text,
                  const DephaseOpts& deph, double noise_sigma) {
    const qdc::SpinSystem sys(g.j_coupling, g.epsilon);
    const auto alphas = parse_grid(alphas_text, qdc::kPi);
    const auto thetas = parse_grid(thetas_text, 2.0 * qdc::kPi);
    const auto level = level_text == "pulse" ? qdc::CircuitLevel::Pulse : qdc::CircuitLevel::Gate;

    auto records = qdc::run_sweep(alphas, thetas, level, deph.spec(), sys);
    records = qdc::apply_noise(std::move(records), noise_sigma, g.seed);

    json fits = json::array();
    for (double a : alphas) {
        std::vector<std::pair<double, double>> pts;
        for (const auto& r : records)
            if (r.alpha == a) pts.emplace_back(r.theta, r.p);
        const qdc::FringeFit fit = qdc::fit_cosine(pts);
        fits.push_back(qdc::fit_json(a, fit));
        std::cout << "alpha=" << qdc::format_number(a) << "  offset=" << qdc::format_number(fit.offset)
                  << "  amplitude=" << qdc::format_number(fit.amplitude)
                  << "  phase=" << qdc::format_number(fit.phase)
                  << "  rms=" << qdc::format_number(fit.rms_residual) << "\n";
    }

    fs::create_directories(g.out_dir);
    std::vector<std::string> outputs;
    if (g.format == "json") {
        qdc::write_text_file(fs::path(g.out_dir) / "results.json",
                             qdc::records_json(records, level).dump(2) + "\n");
        outputs.push_back("results.json");
    } else {
        qdc::write_text_file(fs::path(g.out_dir) / "results.csv", qdc::sweep_csv(records, level));
        outputs.push_back("results.csv");
    }
    qdc::write_text_file(fs::path(g.out_dir) / "fits.json", fits.dump(2) + "\n");
    outputs.push_back("fits.json");
    qdc::write_text_file(fs::path(g.out_dir) / "plot.svg", qdc::sweep_svg(records));
    outputs.push_back("plot.svg");

    json manifest = qdc::make_manifest("sweep", sys, g.seed);
    manifest["alphas_rad"] = grid_json(alphas);
    manifest["thetas_rad"] = grid_json(thetas);
    manifest["level"] = qdc::to_string(level);
    manifest["dephase"] = qdc::dephase_json(deph.spec());
    manifest["noise_sigma"] = noise_sigma;
    manifest["outputs"] = outputs;
    qdc::write_text_file(fs::path(g.out_dir) / "manifest.json", manifest.dump(2) + "\n");

    std::cout << records.size() << " sweep points written to " << g.out_dir << "\n";
    return 0;
}

qdc::Mat4 named_target(const std::string& name) {
    if (name == "cnot") return qdc::nmr_cnot_reference();
    if (name == "cnot-ideal") return qdc::ideal_cnot();
    if (name == "ch") return qdc::ideal_controlled_hadamard();
    if (name == "identity") return qdc::Mat4::identity();
    if (name == "pseudo-h") return qdc::on_system(qdc::rotation(qdc::Axis::PlusY, qdc::kPi / 2.0));
    if (name == "pi-x") return qdc::on_system(qdc::rotation(qdc::Axis::PlusX, qdc::kPi));
    throw std::invalid_argument("unknown target gate '" + name + "'");
}

int run_verify_cmd(const GlobalOpts& g, const std::string& file, const std::string& target,
                   double tol) {
    const qdc::SpinSystem sys(g.j_coupling, g.epsilon);
    qdc::PulseSequence seq;
    try {
        seq = qdc::parse_sequence(qdc::read_text_file(file), fs::path(file).stem().string());
    } catch (const qdc::ParseError& e) {
        std::cerr << file << ": " << e.what() << "\n";
        return 2;
    }

    const auto report = qdc::verify_sequence(seq, named_target(target), sys, tol);
    std::cout << "sequence:   " << file << " (" << seq.events.size() << " events)\n"
              << "target:     " << target << "\n"
              << "distance:   " << qdc::format_number(report.distance) << " (tolerance "
              << qdc::format_number(report.tolerance) << ")\n"
              << "best phase: " << qdc::format_number(std::arg(report.best_phase) / qdc::kPi)
              << " pi\n"
              << "|<i|U|j>|^2:\n";
    for (int r = 0; r < 4; ++r) {
        std::cout << " ";
        for (int c = 0; c < 4; ++c)
            std::cout << "  " << qdc::format_fixed(report.transition_probabilities[r][c], 4);
        std::cout << "\n";
    }
    std::cout << (report.pass ? "PASS" : "FAIL") << "\n";
    return report.pass ? 0 : 1;
}

int run_tomo_cmd(const GlobalOpts& g, const std::string& alpha_text, const std::string& theta_text,
                 const std::string& level_text, const DephaseOpts& deph) {
    const qdc::SpinSystem sys(g.j_coupling, g.epsilon);
    qdc::DelayedChoiceConfig cfg;
    cfg.alpha = qdc::parse_angle_expr(alpha_text);
    cfg.theta = qdc::parse_angle_expr(theta_text);
    cfg.level = level_text == "pulse" ? qdc::CircuitLevel::Pulse : qdc::CircuitLevel::Gate;
    cfg.dephase = deph.spec();

    const qdc::DeviationMatrix measured = qdc::run_circuit(cfg, sys);
    const qdc::PauliExpectations expectations = qdc::measure_expectations(measured);
    const qdc::DeviationMatrix rec = qdc::reconstruct(expectations);

    fs::create_directories(g.out_dir);
    json out = {{"alpha_rad", cfg.alpha},
                {"theta_rad", cfg.theta},
                {"level", qdc::to_string(cfg.level)},
                {"dephase", qdc::dephase_json(cfg.dephase)},
                {"expectations", qdc::expectations_json(expectations)},
                {"deviation_matrix", qdc::matrix_json(rec.matrix())},
                {"trace", rec.matrix().trace().real()},
                {"min_eigenvalue", rec.min_eigenvalue()}};
    qdc::write_text_file(fs::path(g.out_dir) / "tomo.json", out.dump(2) + "\n");
    qdc::write_text_file(
        fs::path(g.out_dir) / "tomo.svg",
        qdc::tomo_svg(rec.matrix(), "Re(&#916;&#961;), &#945; = " + qdc::svg::angle_label(cfg.alpha) +
                                        ", &#952; = " + qdc::svg::angle_label(cfg.theta)));

    json manifest = qdc::make_manifest("tomo", sys, g.seed);
    manifest["alpha_rad"] = cfg.alpha;
    manifest["theta_rad"] = cfg.theta;
    manifest["level"] = qdc::to_string(cfg.level);
    manifest["dephase"] = qdc::dephase_json(cfg.dephase);
    manifest["outputs"] = {"tomo.json", "tomo.svg"};
    qdc::write_text_file(fs::path(g.out_dir) / "manifest.json", manifest.dump(2) + "\n");

    std::cout << "diagonal:";
    for (int i = 0; i < 4; ++i) std::cout << " " << qdc::format_number(rec.matrix()(i, i).real());
    std::cout << "\nmin eigenvalue: " << qdc::format_number(rec.min_eigenvalue()) << "\n"
              << "tomogram written to " << g.out_dir << "\n";
    return 0;
}

int run_show_state_cmd(const GlobalOpts& g, const std::string& alpha_text,
                       const std::string& theta_text) {
    const double alpha = qdc::parse_angle_expr(alpha_text);
    const double theta = qdc::parse_angle_expr(theta_text);
    const qdc::Vec4 ket = qdc::ideal_final_state(alpha, theta);
    const qdc::DeviationMatrix dephased = qdc::expected_dephased_deviation(alpha, theta);
    const double p = qdc::detection_probability(dephased);

    if (g.format == "json") {
        json amp = json::array();
        for (const qdc::cplx& a : ket) amp.push_back({{"re", a.real()}, {"im", a.imag()}});
        const json out = {{"alpha_rad", alpha},
                          {"theta_rad", theta},
                          {"state", amp},
                          {"dephased_deviation", qdc::matrix_json(dephased.matrix())},
                          {"detection_probability", p}};
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    static const char* basis[4] = {"|00>", "|01>", "|10>", "|11>"};
    std::cout << "pre-measurement state (alpha=" << qdc::format_number(alpha)
              << ", theta=" << qdc::format_number(theta) << "):\n";
    for (int i = 0; i < 4; ++i)
        std::cout << "  " << basis[i] << "  " << qdc::format_fixed(ket[i].real(), 6) << " "
                  << (ket[i].imag() < 0 ? "- " : "+ ")
                  << qdc::format_fixed(std::abs(ket[i].imag()), 6) << "i\n";
    std::cout << "dephased deviation matrix:\n";
    for (int r = 0; r < 4; ++r) {
        std::cout << " ";
        for (int c = 0; c < 4; ++c) {
            const qdc::cplx v = dephased.matrix()(r, c);
            std::cout << "  " << qdc::format_fixed(v.real(), 4)
                      << (v.imag() < 0 ? "-" : "+") << qdc::format_fixed(std::abs(v.imag()), 4)
                      << "i";
        }
        std::cout << "\n";
    }
    std::cout << "detection probability Tr(dev |10><10|) = " << qdc::format_number(p) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-spin simulator of the quantum delayed-choice interferometer"};
    app.require_subcommand(1);
    app.set_config("--config", "", "Key-value config file mirroring the flags (flags win)");

    GlobalOpts g;
    app.add_option("--j-coupling", g.j_coupling, "Scalar coupling J in Hz")->capture_default_str();
    app.add_option("--epsilon", g.epsilon, "Magnetic/thermal energy ratio")->capture_default_str();
    app.add_option("--seed", g.seed, "Seed for noise injection")->capture_default_str();
    app.add_option("--out", g.out_dir, "Output directory")->capture_default_str();
    app.add_option("--format", g.format, "Record output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();

    auto* sweep = app.add_subcommand(
        "sweep", "Sweep (alpha, theta), fit fringes, write CSV/JSON/SVG");
    sweep->fallthrough();
    std::string alphas = "0,pi/4,pi/2,3pi/4,pi";
    std::string thetas = "17";
    std::string sweep_level = "gate";
    DephaseOpts sweep_deph;
    double noise_sigma = 0.0;
    sweep->add_option("--alphas", alphas,
                      "Ancilla angles: count or comma-separated pi expressions")
        ->capture_default_str();
    sweep->add_option("--thetas", thetas,
                      "Path phases: count (even grid over [0, 2pi]) or comma list")
        ->capture_default_str();
    sweep->add_option("--level", sweep_level, "Circuit realization: gate | pulse")
        ->check(CLI::IsMember({"gate", "pulse"}))
        ->capture_default_str();
    add_dephase_flags(sweep, sweep_deph);
    sweep->add_option("--noise", noise_sigma, "Gaussian noise sigma on p (demo realism)")
        ->check(CLI::NonNegativeNumber)
        ->capture_default_str();

    auto* verify = app.add_subcommand("verify", "Check a pulse file against a named gate");
    verify->fallthrough();
    std::string pulse_file;
    std::string target = "cnot";
    double tol = 1e-9;
    verify->add_option("file", pulse_file, "Pulse program file")->required();
    verify->add_option("--target", target,
                       "Target gate: cnot (the sequence's documented equivalence class, a CNOT "
                       "preceded by a 180-degree z on the system) | cnot-ideal | ch | identity | "
                       "pseudo-h | pi-x")
        ->check(CLI::IsMember({"cnot", "cnot-ideal", "ch", "identity", "pseudo-h", "pi-x"}))
        ->capture_default_str();
    verify->add_option("--tol", tol, "Pass threshold on the global-phase distance")
        ->capture_default_str();

    auto* tomo = app.add_subcommand("tomo", "Tomograph the post-measurement deviation matrix");
    tomo->fallthrough();
    std::string tomo_alpha, tomo_theta;
    std::string tomo_level = "gate";
    DephaseOpts tomo_deph;
    tomo->add_option("--alpha", tomo_alpha, "Ancilla angle (pi expression or float)")->required();
    tomo->add_option("--theta", tomo_theta, "Path phase (pi expression or float)")->required();
    tomo->add_option("--level", tomo_level, "Circuit realization: gate | pulse")
        ->check(CLI::IsMember({"gate", "pulse"}))
        ->capture_default_str();
    add_dephase_flags(tomo, tomo_deph);

    auto* show = app.add_subcommand("show-state",
                                    "Print the closed-form state and deviation matrix");
    show->fallthrough();
    std::string show_alpha, show_theta;
    show->add_option("--alpha", show_alpha, "Ancilla angle")->required();
    show->add_option("--theta", show_theta, "Path phase")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (sweep->parsed())
            return run_sweep_cmd(g, alphas, thetas, sweep_level, sweep_deph, noise_sigma);
        if (verify->parsed()) return run_verify_cmd(g, pulse_file, target, tol);
        if (tomo->parsed()) return run_tomo_cmd(g, tomo_alpha, tomo_theta, tomo_level, tomo_deph);
        if (show->parsed()) return run_show_state_cmd(g, show_alpha, show_theta);
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

#include <catch2/catch_amalgamated.hpp>

#include "qdc/angle_expr.hpp"
#include "qdc/report.hpp"

using namespace qdc;

TEST_CASE("angle expressions") {
    CHECK(parse_angle_expr("pi") == Catch::Approx(kPi));
    CHECK(parse_angle_expr("pi/2") == Catch::Approx(kPi / 2));
    CHECK(parse_angle_expr("3pi/4") == Catch::Approx(3 * kPi / 4));
    CHECK(parse_angle_expr("2*pi") == Catch::Approx(2 * kPi));
    CHECK(parse_angle_expr("-pi/8") == Catch::Approx(-kPi / 8));
    CHECK(parse_angle_expr("0.75") == 0.75);
    CHECK(parse_angle_expr("1e-3") == 1e-3);
    CHECK(parse_angle_expr(" PI / 2 ") == Catch::Approx(kPi / 2));
    CHECK(parse_angle_expr("0") == 0.0);

    CHECK_THROWS_AS(parse_angle_expr(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_expr("pie"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_expr("pi/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_expr("2x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_angle_expr("pi*2"), std::invalid_argument);
}

TEST_CASE("number formatting round-trips") {
    for (double v : {0.1, 1.0 / 3.0, kPi, 2.5e-17, -0.25, 12345.678}) {
        const std::string s = format_number(v);
        CHECK(std::stod(s) == v);
    }
    CHECK(format_number(0.25) == "0.25");
    CHECK(format_number(0.0) == "0");
}

TEST_CASE("sweep CSV schema") {
    const std::vector<DetectionRecord> records{{0.0, 0.0, 0.0}, {0.0, 0.5, 0.25}, {kPi, 0.5, 1.0}};
    const std::string csv = sweep_csv(records, CircuitLevel::Gate);

    CHECK(csv.rfind("alpha_rad,theta_rad,level,p\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);  // header + 3 rows
    CHECK(csv.find("0,0.5,gate,0.25\n") != std::string::npos);
    CHECK(csv.find("gate") != std::string::npos);

    const std::string pulse_csv = sweep_csv(records, CircuitLevel::Pulse);
    CHECK(pulse_csv.find(",pulse,") != std::string::npos);
}

TEST_CASE("fit and record JSON use snake_case keys") {
    FringeFit f;
    f.offset = 0.5;
    f.amplitude = 0.25;
    f.phase = 0.0;
    f.rms_residual = 1e-13;
    const json obj = fit_json(kPi / 2, f);
    CHECK(obj.contains("alpha_rad"));
    CHECK(obj.contains("offset"));
    CHECK(obj.contains("amplitude"));
    CHECK(obj.contains("phase_rad"));
    CHECK(obj.contains("rms_residual"));

    const json arr = records_json({{0.0, 1.0, 0.5}}, CircuitLevel::Pulse);
    REQUIRE(arr.size() == 1);
    CHECK(arr[0]["level"] == "pulse");
    CHECK(arr[0]["p"] == 0.5);
}

TEST_CASE("matrix JSON round-trip") {
    const Mat4 m = expected_dephased_deviation(kPi / 2, 1.1).matrix();
    const Mat4 back = matrix_from_json(matrix_json(m));
    CHECK(max_abs_diff(m, back) == 0.0);

    // through a dump/parse cycle the trace still lands on 1
    const json reparsed = json::parse(matrix_json(m).dump(2));
    CHECK(matrix_from_json(reparsed).trace().real() == Catch::Approx(1.0).margin(1e-9));
}

TEST_CASE("manifest carries the config echo") {
    const json m = make_manifest("sweep", SpinSystem(215.1, 1e-5), 42);
    CHECK(m["tool"] == "qdc");
    CHECK(m["command"] == "sweep");
    CHECK(m["j_coupling_hz"] == 215.1);
    CHECK(m["epsilon"] == 1e-5);
    CHECK(m["seed"] == 42);
    CHECK(m.contains("generated_utc"));
    CHECK(m["version"] == kToolVersion);

    const json d = dephase_json(DephaseSpec::gradient(8));
    CHECK(d["mode"] == "gradient");
    CHECK(d["samples"] == 8);
    CHECK(d["refocus"] == true);
    CHECK(dephase_json(DephaseSpec::ideal())["mode"] == "ideal");
}

TEST_CASE("SVG outputs are self-contained") {
    const SpinSystem sys;
    std::vector<double> thetas;
    for (int i = 0; i < 17; ++i) thetas.push_back(2.0 * kPi * i / 16.0);
    const auto records = run_sweep({0.0, kPi / 2, kPi}, thetas, CircuitLevel::Gate,
                                   DephaseSpec::ideal(), sys);

    const std::string plot = sweep_svg(records);
    CHECK(plot.rfind("<svg", 0) == 0);
    CHECK(plot.find("</svg>") != std::string::npos);
    // one polyline per alpha series
    size_t count = 0, pos = 0;
    while ((pos = plot.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 9;
    }
    CHECK(count == 3);
    // no external references
    CHECK(plot.find("href") == std::string::npos);
    CHECK(plot.find("<image") == std::string::npos);

    const std::string bars =
        tomo_svg(expected_dephased_deviation(kPi / 2, 0.0).matrix(), "test panel");
    CHECK(bars.rfind("<svg", 0) == 0);
    CHECK(bars.find("</svg>") != std::string::npos);
    CHECK(bars.find("test panel") != std::string::npos);
    CHECK(bars.find("href") == std::string::npos);

    // identical inputs render identical bytes
    CHECK(sweep_svg(records) == plot);
}

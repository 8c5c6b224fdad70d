#include "optosync/config.hpp"
#include "optosync/io.hpp"
#include "optosync/svg.hpp"

#include "xml_check.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>

using namespace optosync;
using nlohmann::json;

namespace fs = std::filesystem;

TEST_CASE("effective config round-trips exactly") {
    RunConfig cfg;
    cfg.scenario = Scenario::sweep_spbar;
    cfg.params.E = 10.5;
    cfg.integrator.dt = 0.02;
    cfg.lyapunov.theta0 = M_PI_2;
    cfg.workers = 3;
    cfg.note = "round trip";
    const json echoed = cfg.to_json();
    const RunConfig back = RunConfig::from_json(echoed);
    CHECK(back.to_json() == echoed);
    CHECK(back.to_json().dump() == echoed.dump());
}

TEST_CASE("missing scenario is named in the diagnostic") {
    CHECK_THROWS_WITH_AS(RunConfig::from_json(json::object()), doctest::Contains("scenario"),
                         ConfigError);
    CHECK_THROWS_WITH_AS(RunConfig::from_json(json{{"scenario", ""}}),
                         doctest::Contains("scenario"), ConfigError);
}

TEST_CASE("unknown and ill-typed fields are rejected") {
    json j{{"scenario", "simulate"}, {"paramz", json::object()}};
    CHECK_THROWS_WITH_AS(RunConfig::from_json(j), doctest::Contains("paramz"), ConfigError);

    json bad_type{{"scenario", "simulate"}, {"params", {{"kappa", "fast"}}}};
    CHECK_THROWS_WITH_AS(RunConfig::from_json(bad_type), doctest::Contains("params.kappa"),
                         ConfigError);

    json bad_value{{"scenario", "simulate"}, {"params", {{"kappa", -1.0}}}};
    CHECK_THROWS_AS(RunConfig::from_json(bad_value), ConfigError);

    json bad_gate{{"scenario", "logic"}, {"logic", {{"gate", "NAND"}}}};
    CHECK_THROWS_WITH_AS(RunConfig::from_json(bad_gate), doctest::Contains("gate"), ConfigError);
}

TEST_CASE("file errors carry the path") {
    CHECK_THROWS_WITH_AS(RunConfig::from_file("/nonexistent/config.json"),
                         doctest::Contains("/nonexistent/config.json"), ConfigError);

    const fs::path bad = fs::temp_directory_path() / "optosync_bad_config.json";
    std::ofstream(bad) << "{ not json";
    CHECK_THROWS_WITH_AS(RunConfig::from_file(bad.string()),
                         doctest::Contains("optosync_bad_config"), ConfigError);
    fs::remove(bad);
}

TEST_CASE("shipped presets parse against the schema") {
#ifdef OPTOSYNC_PRESET_DIR
    int seen = 0;
    for (const auto& entry : fs::directory_iterator(OPTOSYNC_PRESET_DIR)) {
        if (entry.path().extension() != ".json") continue;
        CHECK_NOTHROW(RunConfig::from_file(entry.path().string()));
        ++seen;
    }
    CHECK(seen >= 5);
#endif
}

TEST_CASE("trajectory CSV layout") {
    Trajectory traj;
    traj.times = {0.0, 0.5};
    MeanState s;
    s.A1 = Complex{1.25, -0.5};
    s.B2 = Complex{0.1, 0.2};
    traj.means = {s, s};
    traj.covs = {CovState::vacuum(), CovState::vacuum()};

    const std::string csv = trajectory_csv(traj);
    const std::string header = csv.substr(0, csv.find('\n'));
    CHECK(header.substr(0, 45) == "t,re_a1,im_a1,re_a2,im_a2,re_b1,im_b1,re_b2,i");
    CHECK(header.find(",c11,c12") != std::string::npos);
    CHECK(header.find(",c88") != std::string::npos);
    // 1 header + 2 rows + trailing newline
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    // 9 state columns + 36 upper-triangle entries
    CHECK(std::count(header.begin(), header.end(), ',') == 44);
    CHECK(csv.find("1.25") != std::string::npos);

    Trajectory bare = traj;
    bare.covs.clear();
    const std::string csv2 = trajectory_csv(bare);
    const std::string header2 = csv2.substr(0, csv2.find('\n'));
    CHECK(std::count(header2.begin(), header2.end(), ',') == 8);
}

TEST_CASE("measure and phase CSV headers") {
    MeasureSeries m;
    m.times = {1.0};
    m.theta = {0.1};
    m.sc_prime = {0.9};
    m.sp_prime = {0.8};
    m.mean_q_minus = {0.0};
    m.mean_p_minus = {0.0};
    CHECK(measures_csv(m).substr(0, 52) ==
          "t,theta,sc_prime,sp_prime,mean_q_minus,mean_p_minus\n");

    PhaseSeries p;
    p.times = {1.0};
    p.theta = {0.1};
    p.phi1 = {0.2};
    p.phi2 = {0.1};
    CHECK(phase_csv(p).substr(0, 17) == "t,theta,phi1,phi2");
}

TEST_CASE("sweep CSV and metadata") {
    SweepField field;
    field.grid = GridSpec{0.0, 0.004, 2, 0.0, 0.16, 2};
    field.kind = "lyapunov";
    field.values = {0.1, -0.2, std::nan(""), -0.4};
    field.status = {CellStatus::ok, CellStatus::marginal, CellStatus::divergent, CellStatus::ok};

    const std::string csv = sweep_csv(field);
    CHECK(csv.substr(0, 23) == "mu,lambda,value,status\n");
    CHECK(csv.find("nan,divergent") != std::string::npos);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 5);

    RunConfig cfg;
    const json meta = sweep_metadata(field, cfg);
    CHECK(meta.at("cells").at("divergent") == 1);
    CHECK(meta.at("cells").at("marginal") == 1);
    CHECK(meta.at("divergent_cells").size() == 1);
    CHECK(meta.at("grid").at("mu_steps") == 2);
    CHECK(meta.contains("config"));
    CHECK(meta.contains("tool_version"));
    // the embedded config re-parses to the same effective config
    CHECK(RunConfig::from_json(meta.at("config")).to_json() == cfg.to_json());
}

TEST_CASE("lyapunov and logic JSON shapes") {
    LyapunovResult r;
    r.exponent = -0.5;
    r.std_error = 0.01;
    r.segments = 42;
    r.classification = SyncClass::sync;
    const json j = lyapunov_result_json(r);
    CHECK(j.at("exponent") == -0.5);
    CHECK(j.at("stderr") == 0.01);
    CHECK(j.at("classification") == "sync");

    LogicTable t;
    t.mu_on = 0.004;
    t.lambda_on = 0.16;
    t.gate = "AND";
    t.corners = {r, r, r, r};
    const json lj = logic_table_json(t);
    CHECK(lj.at("gate") == "AND");
    CHECK(lj.at("corners").size() == 4);
    CHECK(lj.at("corners")[3].at("mu") == 0.004);
}

TEST_CASE("format_double round-trips") {
    for (double v : {0.1, -0.0, 1e-300, 12345.6789, 2.0 / 3.0}) {
        CHECK(std::stod(format_double(v)) == v);
    }
    CHECK(format_double(std::nan("")) == "nan");
}

TEST_CASE("meta sidecar lands next to the csv") {
    const fs::path dir = fs::temp_directory_path() / "optosync_io_test";
    fs::create_directories(dir);
    const fs::path csv = dir / "trajectory.csv";
    write_text_file(csv, "t\n0\n");
    RunConfig cfg;
    write_meta_sidecar(csv, cfg);
    const fs::path sidecar = dir / "trajectory.meta.json";
    REQUIRE(fs::exists(sidecar));
    std::ifstream in(sidecar);
    json meta = json::parse(in);
    CHECK(meta.contains("config"));
    fs::remove_all(dir);
}

TEST_CASE("svg documents are well-formed and self-contained") {
    SweepField field;
    field.grid = GridSpec{0.0, 0.01, 3, 0.0, 0.2, 4};
    field.kind = "lyapunov";
    field.values = {0.1, -0.2, 0.3, -0.4, 0.5, -0.6, std::nan(""), 0.8, -0.9, 0.1, -0.2, 0.3};
    field.status.assign(12, CellStatus::ok);
    field.status[6] = CellStatus::divergent;
    field.status[2] = CellStatus::marginal;

    for (HeatmapStyle style : {HeatmapStyle::sign, HeatmapStyle::continuous}) {
        const std::string svg = render_heatmap(field, style, "field");
        std::string why;
        CHECK_MESSAGE(xml_check::well_formed(svg, &why), why);
        CHECK_FALSE(xml_check::has_external_reference(svg));
        CHECK(svg.substr(0, 5) == "<?xml");
        CHECK(svg.find("</svg>") != std::string::npos);
    }

    const std::vector<double> xs{0.0, 1.0, 2.0, 3.0};
    const std::vector<double> ys{0.5, -0.25, 0.75, 0.1};
    const std::vector<double> y2{1.5, 1.25, 1.75, 1.1};
    const std::string svg =
        render_series({Series{"a", xs, ys}, Series{"b", xs, y2}}, "t", "theta", "phase error");
    std::string why;
    CHECK_MESSAGE(xml_check::well_formed(svg, &why), why);
    CHECK_FALSE(xml_check::has_external_reference(svg));
    CHECK(svg.find("polyline") != std::string::npos);

    // single filled cell with legend
    SweepField tiny;
    tiny.grid = GridSpec{0.004, 0.004, 1, 0.16, 0.16, 1};
    tiny.kind = "lyapunov";
    tiny.values = {-0.5};
    tiny.status = {CellStatus::ok};
    const std::string one = render_heatmap(tiny, HeatmapStyle::sign);
    CHECK(xml_check::well_formed(one));
    CHECK(one.find("exponent") != std::string::npos);
}

TEST_CASE("scenario names round-trip") {
    for (Scenario s : {Scenario::simulate, Scenario::sweep_lyapunov, Scenario::sweep_spbar,
                       Scenario::logic, Scenario::calibrate_drive, Scenario::fig5})
        CHECK(scenario_from_string(to_string(s)) == s);
    CHECK_THROWS_AS(scenario_from_string("unknown"), ConfigError);
}

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "gmhd/checkpoint.hpp"
#include "gmhd/config.hpp"
#include "gmhd/diagnostics.hpp"
#include "gmhd/initial_conditions.hpp"
#include "gmhd/runner.hpp"
#include "test_support.hpp"

using namespace gmhd;
using namespace testsup;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / "gmhd_unit" / name;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(bool(in));
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void spit(const fs::path& p, const std::string& bytes) {
    std::ofstream out(p, std::ios::binary);
    REQUIRE(bool(out));
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

double coeff_gap(const ScalarField& a, const ScalarField& b) {
    return max_abs_diff(spectral_values(a), spectral_values(b));
}

}  // namespace

TEST_CASE("empty config text yields the documented defaults") {
    const auto cfg = parse_config_text("");
    CHECK(cfg.params.nu == 1.0);
    CHECK(cfg.params.eta == 1.0);
    CHECK(cfg.params.alpha == 1.0);
    CHECK(cfg.params.beta == 1.0);
    CHECK(cfg.params.n == 64);
    CHECK(cfg.policy.dt_mode == DtMode::Fixed);
    CHECK(cfg.policy.dt_fixed == 1e-3);
    CHECK(cfg.policy.t_end == 5.0);
    CHECK(cfg.sample_interval == 0.05);
    CHECK(cfg.output_dir == "out");
    CHECK(cfg.checkpoint_interval == 0.0);
    CHECK(cfg.resume.empty());
    CHECK(std::holds_alternative<OrszagTangIC>(cfg.ic));
}

TEST_CASE("every documented key lands in the right slot") {
    const auto cfg = parse_config_text(
        "# full example\n"
        "nu = 0.01\n"
        "eta = 0.02\n"
        "alpha = 0.4\n"
        "beta = 1.0   # trailing comment\n"
        "n = 128\n"
        "dt_mode = cfl\n"
        "dt = 5e-4\n"
        "cfl_number = 0.25\n"
        "t_end = 2.5\n"
        "max_steps = 1234\n"
        "sample_interval = 0.1\n"
        "output_dir = results/run1\n"
        "checkpoint_interval = 0.5\n"
        "resume = old/checkpoint_10.bin\n"
        "ic = single_mode\n"
        "ic.axis = 1\n"
        "ic.wavenumber = 3\n"
        "ic.amplitude = 0.5\n"
        "ic.target = b\n");
    CHECK(cfg.params.nu == 0.01);
    CHECK(cfg.params.eta == 0.02);
    CHECK(cfg.params.alpha == 0.4);
    CHECK(cfg.params.n == 128);
    CHECK(cfg.policy.dt_mode == DtMode::CflAdaptive);
    CHECK(cfg.policy.dt_fixed == 5e-4);
    CHECK(cfg.policy.cfl_number == 0.25);
    CHECK(cfg.policy.t_end == 2.5);
    CHECK(cfg.policy.max_steps == 1234);
    CHECK(cfg.sample_interval == 0.1);
    CHECK(cfg.output_dir == "results/run1");
    CHECK(cfg.checkpoint_interval == 0.5);
    CHECK(cfg.resume == "old/checkpoint_10.bin");
    const auto& sm = std::get<SingleModeIC>(cfg.ic);
    CHECK(sm.axis == 1);
    CHECK(sm.wavenumber == 3);
    CHECK(sm.amplitude == 0.5);
    CHECK(sm.target == 'b');

    const auto rnd = parse_config_text(
        "ic = random_smooth\nic.seed = 42\nic.spectral_slope = 1.5\nic.cutoff = 6\n");
    const auto& rs = std::get<RandomSmoothIC>(rnd.ic);
    CHECK(rs.seed == 42);
    CHECK(rs.spectral_slope == 1.5);
    CHECK(rs.cutoff == 6);
}

TEST_CASE("config rejections") {
    CHECK_THROWS_AS(parse_config_text("mystery = 1\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("nu\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("nu = \n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("nu = fast\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("n = 64.5\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("ic = vortex_sheet\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("ic = single_mode\nic.target = x\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("dt_mode = adaptive\n"), BadSpecError);
    // ic parameters for a kind that was not selected
    CHECK_THROWS_AS(parse_config_text("ic = orszag_tang\nic.seed = 1\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("ic = single_mode\nic.cutoff = 4\n"), BadSpecError);
    // validation failures surface through the same error type
    CHECK_THROWS_AS(parse_config_text("sample_interval = 10\nt_end = 1\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("nu = -1\n"), BadSpecError);
    CHECK_THROWS_AS(parse_config_text("n = 20\n"), BadSpecError);
}

TEST_CASE("config files are read verbatim and missing files are IO errors") {
    const auto dir = fresh_dir("config_file");
    spit(dir / "run.cfg", "nu = 0.5\nt_end = 1\n");
    const auto cfg = parse_config_file((dir / "run.cfg").string());
    CHECK(cfg.params.nu == 0.5);
    CHECK_THROWS_AS(parse_config_file((dir / "absent.cfg").string()), IoError);
}

TEST_CASE("Orszag-Tang initial state matches its closed form") {
    auto g = make_grid(32);
    const auto s = make_initial_condition(OrszagTangIC{}, g);
    CHECK(s.time() == 0.0);
    auto w_ref = field_of(g, [](double x, double y) { return std::cos(x) + std::cos(y); });
    auto j_ref = field_of(g, [](double x, double y) { return 2.0 * std::cos(2.0 * x) + std::cos(y); });
    CHECK(coeff_gap(s.w(), w_ref) < 1e-14);
    CHECK(coeff_gap(s.j(), j_ref) < 1e-14);
    CHECK(total_energy(s) == doctest::Approx(8.0 * pi * pi).epsilon(1e-13));
}

TEST_CASE("single-mode initial state places the requested mode") {
    auto g = make_grid(16);
    const auto s = make_initial_condition(SingleModeIC{}, g);
    auto w_ref = field_of(g, [](double x, double) { return std::cos(x); });
    CHECK(coeff_gap(s.w(), w_ref) < 1e-15);
    CHECK(sobolev_norm(s.b(), 0.0) == 0.0);

    const auto v = make_initial_velocity_state(SingleModeIC{}, g);
    auto u2_ref = field_of(g, [](double x, double) { return std::sin(x); });
    CHECK(coeff_gap(v.u.y, u2_ref) < 1e-15);
    CHECK(sobolev_norm(v.u.x, 0.0) == 0.0);

    SingleModeIC b_mode;
    b_mode.axis = 1;
    b_mode.wavenumber = 3;
    b_mode.amplitude = 0.5;
    b_mode.target = 'b';
    const auto sb = make_initial_condition(b_mode, g);
    // b = (0.5 sin 3y, 0), so j = -d2 b1 = -1.5 cos 3y
    auto j_ref = field_of(g, [](double, double y) { return -1.5 * std::cos(3.0 * y); });
    CHECK(coeff_gap(sb.j(), j_ref) < 1e-14);
    CHECK(sobolev_norm(sb.w(), 0.0) == 0.0);
}

TEST_CASE("single-mode validation") {
    auto g = make_grid(16);
    SingleModeIC ic;
    ic.axis = 3;
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
    ic = SingleModeIC{};
    ic.wavenumber = 0;
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
    ic.wavenumber = 6;  // retained band on n = 16 ends at 5
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
    ic = SingleModeIC{};
    ic.target = 'w';
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
    ic = SingleModeIC{};
    ic.amplitude = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
}

TEST_CASE("random initial state is seeded and divergence-free") {
    auto g = make_grid(32);
    RandomSmoothIC ic;
    ic.seed = 7;
    ic.cutoff = 6;
    const auto a = make_initial_velocity_state(ic, g);
    const auto b = make_initial_velocity_state(ic, g);
    CHECK(coeff_gap(a.u.x, b.u.x) == 0.0);
    CHECK(coeff_gap(a.u.y, b.u.y) == 0.0);
    CHECK(coeff_gap(a.b.x, b.b.x) == 0.0);
    CHECK(coeff_gap(a.b.y, b.b.y) == 0.0);

    ic.seed = 8;
    const auto c = make_initial_velocity_state(ic, g);
    CHECK(coeff_gap(a.u.x, c.u.x) > 1e-6);
    // u and b are independent draws
    CHECK(coeff_gap(a.u.x, a.b.x) > 1e-6);

    const auto s = make_initial_condition(ic, g);
    CHECK(sobolev_norm(divergence(s.u()), 0.0) < 1e-12);
    CHECK(sobolev_norm(divergence(s.b()), 0.0) < 1e-12);

    ic.cutoff = 11;  // retained band on n = 32 ends at 10
    CHECK_THROWS_AS(make_initial_condition(ic, g), BadSpecError);
}

TEST_CASE("checkpoint round trip is bit exact") {
    const auto dir = fresh_dir("checkpoint_rt");
    auto g = make_grid(32);
    SimParams p;
    p.nu = 0.125;
    p.eta = 0.25;
    p.alpha = 0.5;
    p.beta = 1.25;
    p.n = 32;
    auto s0 = make_initial_condition(OrszagTangIC{}, g);
    const IfRk4Stepper stepper(g, p);
    auto s = stepper.step(stepper.step(s0, 1e-3), 1e-3);

    const auto path = (dir / "state.bin").string();
    save_checkpoint(s, p, path);
    const auto loaded = load_checkpoint(path);

    CHECK(loaded.state.time() == s.time());
    CHECK(loaded.params.nu == p.nu);
    CHECK(loaded.params.eta == p.eta);
    CHECK(loaded.params.alpha == p.alpha);
    CHECK(loaded.params.beta == p.beta);
    CHECK(loaded.params.n == p.n);
    CHECK(coeff_gap(loaded.state.w(), s.w()) == 0.0);
    CHECK(coeff_gap(loaded.state.j(), s.j()) == 0.0);
}

TEST_CASE("checkpoint files are fully validated before use") {
    const auto dir = fresh_dir("checkpoint_bad");
    auto g = make_grid(8);
    SimParams p;
    p.n = 8;
    const auto s = make_initial_condition(SingleModeIC{}, g);
    const auto good = (dir / "good.bin").string();
    save_checkpoint(s, p, good);
    const std::string bytes = slurp(good);

    CHECK_THROWS_AS(load_checkpoint((dir / "absent.bin").string()), IoError);

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    spit(dir / "magic.bin", bad_magic);
    CHECK_THROWS_AS(load_checkpoint((dir / "magic.bin").string()), CorruptHeaderError);

    auto bad_version = bytes;
    bad_version[6] = 2;
    spit(dir / "version.bin", bad_version);
    CHECK_THROWS_AS(load_checkpoint((dir / "version.bin").string()), VersionMismatchError);

    auto bad_n = bytes;
    bad_n[7] = 12;  // not a power of two
    spit(dir / "n.bin", bad_n);
    CHECK_THROWS_AS(load_checkpoint((dir / "n.bin").string()), CorruptHeaderError);

    spit(dir / "short.bin", bytes.substr(0, bytes.size() - 8));
    CHECK_THROWS_AS(load_checkpoint((dir / "short.bin").string()), CorruptHeaderError);

    spit(dir / "long.bin", bytes + std::string(1, '\0'));
    CHECK_THROWS_AS(load_checkpoint((dir / "long.bin").string()), CorruptHeaderError);

    spit(dir / "empty.bin", "");
    CHECK_THROWS_AS(load_checkpoint((dir / "empty.bin").string()), CorruptHeaderError);

    auto bad_params = bytes;
    bad_params[30] = static_cast<char>(0xFF);  // nu becomes -inf
    spit(dir / "params.bin", bad_params);
    CHECK_THROWS_AS(load_checkpoint((dir / "params.bin").string()), CorruptHeaderError);
}

TEST_CASE("a pure shear run follows the exact decay law") {
    const auto dir = fresh_dir("run_decay");
    RunConfig cfg;
    cfg.params.nu = 1.0;
    cfg.params.eta = 1.0;
    cfg.params.alpha = 0.5;
    cfg.params.beta = 1.0;
    cfg.params.n = 32;
    cfg.policy.dt_fixed = 1e-3;
    cfg.policy.t_end = 1.0;
    cfg.ic = SingleModeIC{};
    cfg.sample_interval = 0.05;
    cfg.output_dir = (dir / "out").string();

    const auto r = run(cfg);
    CHECK(r.steps == 1000);
    CHECK(r.final_state.time() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_FALSE(r.blowup.triggered);
    CHECK(r.blowup.reason == BlowupReason::None);
    CHECK(r.regime.source == RegimeSource::Wu22_case1);
    CHECK(r.history.size() == 21);

    const double expected = std::exp(-1.0) * pi * std::sqrt(2.0);
    CHECK(sobolev_norm(r.final_state.u(), 0.0) ==
          doctest::Approx(expected).epsilon(1e-10));
    CHECK(sobolev_norm(r.final_state.b(), 0.0) < 1e-12);

    const auto csv = lines_of(slurp(dir / "out" / "diagnostics.csv"));
    REQUIRE(csv.size() == r.history.size() + 1);
    CHECK(csv[0] == diagnostics_csv_header());
    double prev = -1.0;
    for (size_t i = 1; i < csv.size(); ++i) {
        const double t = std::stod(csv[i]);
        CHECK(t > prev);
        prev = t;
    }
    for (size_t i = 1; i < r.history.size(); ++i)
        CHECK(r.history[i].energy < r.history[i - 1].energy);
}

TEST_CASE("a zero-amplitude run stays identically zero") {
    const auto dir = fresh_dir("run_zero");
    RunConfig cfg;
    cfg.params.n = 16;
    cfg.policy.dt_fixed = 1e-2;
    cfg.policy.t_end = 0.1;
    SingleModeIC ic;
    ic.amplitude = 0.0;
    cfg.ic = ic;
    cfg.sample_interval = 0.05;
    cfg.output_dir = (dir / "out").string();
    const auto r = run(cfg);
    CHECK_FALSE(r.blowup.triggered);
    CHECK(total_energy(r.final_state) == 0.0);
}

TEST_CASE("identical runs produce identical diagnostics files") {
    const auto dir = fresh_dir("run_repeat");
    RunConfig cfg;
    cfg.params.nu = 0.01;
    cfg.params.eta = 0.01;
    cfg.params.alpha = 0.4;
    cfg.params.beta = 1.0;
    cfg.params.n = 32;
    cfg.policy.dt_fixed = 5e-3;
    cfg.policy.t_end = 0.2;
    cfg.sample_interval = 0.05;
    cfg.output_dir = (dir / "a").string();
    run(cfg);
    cfg.output_dir = (dir / "b").string();
    run(cfg);
    const auto a = slurp(dir / "a" / "diagnostics.csv");
    CHECK(a == slurp(dir / "b" / "diagnostics.csv"));
    CHECK(!a.empty());
}

TEST_CASE("resuming from a checkpoint reproduces the uninterrupted run") {
    const auto dir = fresh_dir("run_resume");
    RunConfig cfg;
    cfg.params.nu = 0.1;
    cfg.params.eta = 0.1;
    cfg.params.alpha = 0.5;
    cfg.params.beta = 1.0;
    cfg.params.n = 16;
    cfg.policy.dt_fixed = 1e-2;
    cfg.policy.t_end = 0.4;
    cfg.sample_interval = 0.1;
    cfg.checkpoint_interval = 0.2;
    cfg.output_dir = (dir / "full").string();

    const auto full = run(cfg);
    CHECK(full.steps == 40);
    const auto mid = dir / "full" / "checkpoint_20.bin";
    CHECK(fs::exists(mid));
    CHECK(fs::exists(dir / "full" / "checkpoint_40.bin"));

    RunConfig tail = cfg;
    tail.checkpoint_interval = 0.0;
    tail.resume = mid.string();
    tail.output_dir = (dir / "tail").string();
    const auto resumed = run(tail);
    CHECK(resumed.steps == 20);
    CHECK(resumed.final_state.time() == full.final_state.time());
    CHECK(coeff_gap(resumed.final_state.w(), full.final_state.w()) == 0.0);
    CHECK(coeff_gap(resumed.final_state.j(), full.final_state.j()) == 0.0);

    RunConfig wrong = tail;
    wrong.params.nu = 0.2;
    wrong.output_dir = (dir / "wrong").string();
    CHECK_THROWS_AS(run(wrong), BadSpecError);
}

TEST_CASE("sweep rows agree with direct runs and the classifier") {
    const auto dir = fresh_dir("sweep_small");
    SweepSpec spec;
    spec.alpha_values = {0.4, 0.2};
    spec.beta_values = {1.0, 1.3};
    spec.base.params.nu = 0.01;
    spec.base.params.eta = 0.01;
    spec.base.params.n = 16;
    spec.base.policy.dt_fixed = 1e-2;
    spec.base.policy.t_end = 0.05;
    spec.base.sample_interval = 0.05;
    spec.base.output_dir = (dir / "sweep").string();

    const auto rows = sweep(spec);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].alpha == 0.4);
    CHECK(rows[0].beta == 1.0);
    CHECK(rows[0].verdict == "Theorem1_1");
    CHECK(rows[1].verdict == "Wu22_case3");
    CHECK(rows[2].verdict == "Uncovered");
    CHECK(rows[3].verdict == "Theorem1_2");
    CHECK(rows[3].margin == doctest::Approx(0.1).epsilon(1e-12));
    for (const auto& row : rows) {
        CHECK_FALSE(row.failed);
        CHECK(row.blowup == "none");
        CHECK(row.wall_seconds >= 0.0);
    }
    for (int ia = 0; ia < 2; ++ia)
        for (int ib = 0; ib < 2; ++ib)
            CHECK(fs::exists(dir / "sweep" /
                             ("pair_" + std::to_string(ia) + "_" + std::to_string(ib)) /
                             "diagnostics.csv"));

    RunConfig direct = spec.base;
    direct.params.alpha = 0.4;
    direct.params.beta = 1.0;
    direct.output_dir = (dir / "direct").string();
    const auto r = run(direct);
    double max_X = 0.0;
    for (const auto& rec : r.history) max_X = std::max(max_X, rec.X);
    CHECK(rows[0].max_X == max_X);
}

TEST_CASE("sweep output does not depend on the parallelism level") {
    const auto dir = fresh_dir("sweep_par");
    SweepSpec spec;
    spec.alpha_values = {0.5, 0.2, 0.0};
    spec.beta_values = {1.0, 1.2};
    spec.base.params.nu = 0.01;
    spec.base.params.eta = 0.01;
    spec.base.params.n = 16;
    spec.base.policy.dt_fixed = 1e-2;
    spec.base.policy.t_end = 0.05;
    spec.base.sample_interval = 0.05;

    spec.max_parallel = 1;
    spec.base.output_dir = (dir / "serial").string();
    const auto serial = sweep(spec);
    spec.max_parallel = 4;
    spec.base.output_dir = (dir / "parallel").string();
    const auto parallel = sweep(spec);

    REQUIRE(serial.size() == parallel.size());
    for (size_t i = 0; i < serial.size(); ++i) {
        CHECK(serial[i].alpha == parallel[i].alpha);
        CHECK(serial[i].beta == parallel[i].beta);
        CHECK(serial[i].verdict == parallel[i].verdict);
        CHECK(serial[i].margin == parallel[i].margin);
        CHECK(serial[i].max_X == parallel[i].max_X);
        CHECK(serial[i].max_Y == parallel[i].max_Y);
        CHECK(serial[i].blowup == parallel[i].blowup);
        CHECK(serial[i].failed == parallel[i].failed);
    }

    const auto csv = sweep_summary_csv(serial);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == serial.size() + 1);
    CHECK(lines[0] == sweep_summary_header());
    CHECK(lines[0] == "alpha,beta,verdict,margin,max_X,max_Y,blowup,wall_seconds");
    CHECK(lines[1].find("Wu22_case1") != std::string::npos);
}

TEST_CASE("GMHD2D_THREADS caps sweep parallelism") {
    const char* old = std::getenv("GMHD2D_THREADS");
    const std::string saved = old ? old : "";

    unsetenv("GMHD2D_THREADS");
    CHECK(effective_parallelism(4) == 4);
    setenv("GMHD2D_THREADS", "2", 1);
    CHECK(effective_parallelism(4) == 2);
    CHECK(effective_parallelism(1) == 1);
    setenv("GMHD2D_THREADS", "0", 1);
    CHECK(effective_parallelism(4) == 1);
    setenv("GMHD2D_THREADS", "16", 1);
    CHECK(effective_parallelism(4) == 4);

    if (old)
        setenv("GMHD2D_THREADS", saved.c_str(), 1);
    else
        unsetenv("GMHD2D_THREADS");
}

TEST_CASE("sweep spec validation") {
    SweepSpec spec;
    spec.beta_values = {1.0};
    CHECK_THROWS_AS(spec.validate(), BadSpecError);
    spec.alpha_values = {0.5};
    spec.max_parallel = 0;
    CHECK_THROWS_AS(spec.validate(), BadSpecError);
    spec.max_parallel = 2;
    spec.base.output_dir.clear();
    CHECK_THROWS_AS(spec.validate(), BadSpecError);
}

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "netevolve/experiments.hpp"

using namespace netevolve;
using doctest::Approx;

namespace {

std::vector<GenerationRecord> constant_records(int n, double rel, double cst) {
    std::vector<GenerationRecord> records(n);
    for (int i = 0; i < n; ++i) {
        records[i].generation = i + 1;
        records[i].best.reliability = rel;
        records[i].best.cost = cst;
    }
    return records;
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::filesystem::path temp_dir() {
    const auto dir =
        std::filesystem::temp_directory_path() / "netevolve_exp_test";
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("summarize of a constant series has zero spread") {
    const auto records = constant_records(150, 0.9, 100.0);
    const WindowStats stats = summarize(records, 50, 150);
    CHECK(stats.n == 101);
    CHECK(stats.mean_reliability == Approx(0.9));
    CHECK(stats.sd_reliability == Approx(0.0));
    CHECK(stats.mean_cost == Approx(100.0));
    CHECK(stats.sd_cost == Approx(0.0));
}

TEST_CASE("summarize uses the sample standard deviation") {
    // reliability = generation over window (1,5): mean 3, sd sqrt(2.5)
    auto records = constant_records(5, 0.0, 0.0);
    for (int i = 0; i < 5; ++i) {
        records[i].best.reliability = static_cast<double>(i + 1);
    }
    const WindowStats stats = summarize(records, 1, 5);
    CHECK(stats.n == 5);
    CHECK(stats.mean_reliability == Approx(3.0));
    CHECK(stats.sd_reliability == Approx(1.5811388300841898));
}

TEST_CASE("summarize windows of length one have zero sd") {
    const auto records = constant_records(10, 0.5, 7.0);
    const WindowStats stats = summarize(records, 4, 4);
    CHECK(stats.n == 1);
    CHECK(stats.sd_reliability == 0.0);
    CHECK(stats.sd_cost == 0.0);
}

TEST_CASE("summarize rejects windows outside the records") {
    const auto records = constant_records(150, 0.9, 100.0);
    CHECK_THROWS_AS(summarize(records, 0, 100), WindowOutOfRange);
    CHECK_THROWS_AS(summarize(records, 50, 151), WindowOutOfRange);
    CHECK_THROWS_AS(summarize(records, 80, 60), WindowOutOfRange);
    CHECK_THROWS_AS(summarize({}, 1, 1), WindowOutOfRange);
}

TEST_CASE("welch t-test reports no difference for identical samples") {
    SUBCASE("degenerate: zero spread") {
        const WelchResult r = welch_t_test({5.0, 0.0, 101}, {5.0, 0.0, 101});
        CHECK(r.t == 0.0);
        CHECK_FALSE(r.significant);
        CHECK(r.degenerate);
    }
    SUBCASE("identical with spread") {
        const WelchResult r = welch_t_test({5.0, 1.0, 101}, {5.0, 1.0, 101});
        CHECK(r.t == Approx(0.0));
        CHECK_FALSE(r.significant);
        CHECK_FALSE(r.degenerate);
    }
}

TEST_CASE("welch t-test separates clearly different samples") {
    // windowed cost cells: (277.4, 24.0, 101) vs (228.3, 19.2, 101)
    const WelchResult r =
        welch_t_test({277.4, 24.0, 101}, {228.3, 19.2, 101});
    CHECK(r.significant);
    CHECK(r.t > 10.0);

    // symmetry: swapping negates t and preserves the verdict
    const WelchResult s =
        welch_t_test({228.3, 19.2, 101}, {277.4, 24.0, 101});
    CHECK(s.t == Approx(-r.t));
    CHECK(s.significant == r.significant);
    CHECK(s.df == Approx(r.df));
}

TEST_CASE("welch t-test rejects tiny samples") {
    CHECK_THROWS_AS(welch_t_test({1.0, 1.0, 1}, {2.0, 1.0, 10}), Error);
}

TEST_CASE("t critical values match published tables") {
    CHECK(t_critical_value(0.95, 10) == Approx(2.2281).epsilon(5e-4));
    CHECK(t_critical_value(0.95, 30) == Approx(2.0423).epsilon(5e-4));
    CHECK(t_critical_value(0.95, 100) == Approx(1.9840).epsilon(5e-4));
    CHECK(student_t_quantile(0.5, 12.0) == Approx(0.0));
    CHECK(student_t_quantile(0.975, 10.0) == Approx(2.2281).epsilon(5e-4));
    CHECK(student_t_quantile(0.025, 10.0) == Approx(-2.2281).epsilon(5e-4));
}

TEST_CASE("presets enumerate the studied parameter grids") {
    CHECK(preset_names() ==
          std::vector<std::string>{"failure-prob", "repair-rate", "offspring"});

    const Scenario failure = make_preset("failure-prob");
    CHECK(failure.sweeps.size() == 2);
    CHECK(failure.replicates == 5);
    CHECK(failure.window_start == 50);
    CHECK(failure.window_end == 150);

    const Scenario repair = make_preset("repair-rate");
    CHECK(repair.sweeps[1].second ==
          std::vector<std::string>{"2", "10", "50"});

    const Scenario offspring = make_preset("offspring");
    CHECK(offspring.sweeps.size() == 1);
    CHECK(offspring.base.strategy == Strategy::One);

    CHECK_THROWS_AS(make_preset("bogus"), ConfigError);
}

TEST_CASE("run_scenario covers every cell and replicate deterministically") {
    Scenario s = make_preset("failure-prob");
    s.base.generations = 40;
    s.window_start = 20;
    s.window_end = 40;
    s.replicates = 2;
    s.base.network.n_clients = 8;

    const ScenarioResult a = run_scenario(s);
    CHECK(a.errors.empty());
    REQUIRE(a.summary.size() == 8);  // 4 cells x 2 replicates
    REQUIRE(a.runs.size() == 8);

    // cells are row-major over the sweeps: strategy outer, probability inner
    CHECK(a.summary[0].strategy == 1);
    CHECK(a.summary[0].param == "link_failure_prob");
    CHECK(a.summary[0].value == "0.01");
    CHECK(a.summary[2].value == "0.001");
    CHECK(a.summary[4].strategy == 2);
    CHECK(a.summary[0].cell == 0);
    CHECK(a.summary[1].cell == 0);
    CHECK(a.summary[2].cell == 1);

    // replicate seeds differ within a cell
    CHECK(a.summary[0].seed != a.summary[1].seed);

    const ScenarioResult b = run_scenario(s);
    for (std::size_t i = 0; i < a.summary.size(); ++i) {
        CHECK(a.summary[i].mean_rel == b.summary[i].mean_rel);
        CHECK(a.summary[i].sd_cost == b.summary[i].sd_cost);
        CHECK(a.summary[i].seed == b.summary[i].seed);
    }
}

TEST_CASE("parallel scenario execution matches serial execution") {
    Scenario s = make_preset("offspring");
    s.base.generations = 30;
    s.window_start = 10;
    s.window_end = 30;
    s.replicates = 2;
    s.base.network.n_clients = 8;
    s.sweeps[0].second = {"5", "10"};

    const ScenarioResult serial = run_scenario(s, 1);
    const ScenarioResult parallel = run_scenario(s, 4);
    REQUIRE(serial.summary.size() == parallel.summary.size());

    const auto dir = temp_dir();
    write_summary_csv(serial.summary, (dir / "serial.csv").string());
    write_summary_csv(parallel.summary, (dir / "parallel.csv").string());
    CHECK(read_file(dir / "serial.csv") == read_file(dir / "parallel.csv"));
}

TEST_CASE("summary statistics recompute from the emitted records") {
    Scenario s = make_preset("offspring");
    s.base.generations = 30;
    s.window_start = 10;
    s.window_end = 30;
    s.replicates = 1;
    s.sweeps[0].second = {"5"};
    s.base.network.n_clients = 8;

    const ScenarioResult result = run_scenario(s);
    REQUIRE(result.summary.size() == 1);
    const WindowStats stats = summarize(result.runs[0].records, 10, 30);
    CHECK(result.summary[0].mean_rel == stats.mean_reliability);
    CHECK(result.summary[0].sd_rel == stats.sd_reliability);
    CHECK(result.summary[0].mean_cost == stats.mean_cost);
    CHECK(result.summary[0].sd_cost == stats.sd_cost);
}

TEST_CASE("bad sweep values fail their cell but not the scenario") {
    Scenario s = make_preset("offspring");
    s.base.generations = 20;
    s.window_start = 10;
    s.window_end = 20;
    s.replicates = 1;
    s.base.network.n_clients = 6;
    s.sweeps[0].second = {"5", "0"};  // offspring 0 is invalid

    const ScenarioResult result = run_scenario(s);
    CHECK(result.summary.size() == 1);
    CHECK(result.errors.size() == 1);
}

TEST_CASE("csv writers emit deterministic bytes") {
    const auto dir = temp_dir();

    SUBCASE("empty input gives a header-only file") {
        write_generations_csv({}, (dir / "empty.csv").string());
        const std::string text = read_file(dir / "empty.csv");
        CHECK(text ==
              "generation,strategy,fitness,reliability,cost,redundancy,"
              "pleiotropy,ratio,utilization_nominal,utilization_effective,"
              "n_links,n_servers,n_failed_links,seed\n");

        write_summary_csv({}, (dir / "empty_summary.csv").string());
        const std::string summary = read_file(dir / "empty_summary.csv");
        CHECK(summary ==
              "scenario,cell,strategy,param,value,seed,mean_rel,sd_rel,"
              "mean_cost,sd_cost,mean_D,mean_L\n");
    }

    SUBCASE("one record gives header plus one line") {
        CellRun run;
        run.seed = 42;
        run.records = constant_records(1, 0.5, 10.0);
        write_generations_csv({run}, (dir / "one.csv").string());
        const std::string text = read_file(dir / "one.csv");
        CHECK(std::count(text.begin(), text.end(), '\n') == 2);
        CHECK(text.find("1,1,0,0.5,10,") != std::string::npos);

        write_generations_csv({run}, (dir / "one_again.csv").string());
        CHECK(text == read_file(dir / "one_again.csv"));
    }
}

TEST_CASE("plot data carries generation, reliability, cost and ratio") {
    const auto dir = temp_dir();
    auto records = constant_records(150, 0.9, 100.0);
    records[0].redundancy_pleiotropy_ratio = 1.5;
    write_plot_data(records, (dir / "plot.dat").string());
    const std::string text = read_file(dir / "plot.dat");
    CHECK(std::count(text.begin(), text.end(), '\n') == 151);
    CHECK(text.rfind("# generation reliability cost ratio\n", 0) == 0);
    CHECK(text.find("\n1 0.9 100 1.5\n") != std::string::npos);
    // pleiotropy 0 reports ratio 0
    CHECK(text.find("\n2 0.9 100 0\n") != std::string::npos);
}

TEST_CASE("scenario files describe sweeps in config syntax") {
    const auto dir = temp_dir();
    const auto path = dir / "scenario.cfg";
    {
        std::ofstream out(path);
        out << "# comparison at two repair speeds\n";
        out << "name=my-sweep\n";
        out << "replicates=3\n";
        out << "window_start=5\n";
        out << "window_end=20\n";
        out << "generations=20\n";
        out << "n_clients=6\n";
        out << "sweep.strategy=1,2\n";
        out << "sweep.repair_time=2,10\n";
    }
    const Scenario s = load_scenario(path.string());
    CHECK(s.name == "my-sweep");
    CHECK(s.replicates == 3);
    CHECK(s.window_start == 5);
    CHECK(s.window_end == 20);
    CHECK(s.base.generations == 20);
    CHECK(s.base.network.n_clients == 6);
    REQUIRE(s.sweeps.size() == 2);
    CHECK(s.sweeps[0].first == "strategy");
    CHECK(s.sweeps[1].second == std::vector<std::string>{"2", "10"});

    CHECK_THROWS_AS(load_scenario((dir / "missing.cfg").string()), IoError);
}

TEST_CASE("a default run rises to a plateau") {
    GaConfig cfg;
    cfg.master_seed = 2;
    const auto records = run(cfg);
    const WindowStats late = summarize(records, 50, 150);
    const WindowStats early = summarize(records, 1, 25);
    CHECK(late.mean_reliability > early.mean_reliability);
}

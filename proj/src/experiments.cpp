#include "netevolve/experiments.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <thread>

#include "netevolve/config.hpp"

namespace netevolve {

WindowStats summarize(const std::vector<GenerationRecord>& records, int start,
                      int end) {
    if (records.empty() || start > end || start < records.front().generation ||
        end > records.back().generation) {
        throw WindowOutOfRange("window [" + std::to_string(start) + "," +
                               std::to_string(end) +
                               "] not covered by the record range");
    }

    std::vector<double> rel;
    std::vector<double> cst;
    WindowStats stats;
    for (const GenerationRecord& rec : records) {
        if (rec.generation < start || rec.generation > end) continue;
        rel.push_back(rec.best.reliability);
        cst.push_back(rec.best.cost);
        stats.mean_redundancy += rec.best.redundancy;
        stats.mean_pleiotropy += rec.best.pleiotropy;
    }
    const int n = static_cast<int>(rel.size());
    stats.n = n;

    auto mean = [](const std::vector<double>& xs) {
        double s = 0.0;
        for (const double x : xs) s += x;
        return s / static_cast<double>(xs.size());
    };
    auto sample_sd = [](const std::vector<double>& xs, double m) {
        if (xs.size() < 2) return 0.0;
        double ss = 0.0;
        for (const double x : xs) ss += (x - m) * (x - m);
        return std::sqrt(ss / static_cast<double>(xs.size() - 1));
    };

    stats.mean_reliability = mean(rel);
    stats.sd_reliability = sample_sd(rel, stats.mean_reliability);
    stats.mean_cost = mean(cst);
    stats.sd_cost = sample_sd(cst, stats.mean_cost);
    stats.mean_redundancy /= static_cast<double>(n);
    stats.mean_pleiotropy /= static_cast<double>(n);
    return stats;
}

namespace {

// Regularized incomplete beta I_x(a, b) via the Lentz continued fraction.
double ibeta_cf(double a, double b, double x) {
    constexpr double tiny = 1e-300;
    constexpr int max_iter = 500;
    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= max_iter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-14) break;
    }
    return h;
}

double incomplete_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) -
                            std::lgamma(b) + a * std::log(x) +
                            b * std::log(1.0 - x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * ibeta_cf(a, b, x) / a;
    }
    return 1.0 - front * ibeta_cf(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
    const double x = df / (df + t * t);
    const double half_tail = 0.5 * incomplete_beta(df / 2.0, 0.5, x);
    return t >= 0.0 ? 1.0 - half_tail : half_tail;
}

}  // namespace

double student_t_quantile(double p, double df) {
    if (!(p > 0.0 && p < 1.0)) {
        throw Error("t quantile requires 0 < p < 1");
    }
    if (df <= 0.0) throw Error("t quantile requires df > 0");
    if (p == 0.5) return 0.0;
    // The CDF is monotone; bisection to 1e-12 is plenty for 1e-4 accuracy.
    double lo = p > 0.5 ? 0.0 : -1e4;
    double hi = p > 0.5 ? 1e4 : 0.0;
    for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (student_t_cdf(mid, df) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

double t_critical_value(double confidence, double df) {
    if (!(confidence > 0.0 && confidence < 1.0)) {
        throw Error("confidence must be in (0, 1)");
    }
    return student_t_quantile(1.0 - (1.0 - confidence) / 2.0, df);
}

WelchResult welch_t_test(const Sample& a, const Sample& b, double confidence) {
    if (a.n < 2 || b.n < 2) throw Error("welch_t_test requires n >= 2");
    if (a.sd < 0.0 || b.sd < 0.0) throw Error("welch_t_test requires sd >= 0");

    WelchResult result;
    const double va = a.sd * a.sd / a.n;
    const double vb = b.sd * b.sd / b.n;
    const double se2 = va + vb;
    if (se2 == 0.0) {
        // No variance on either side: either no difference at all, or an
        // exact difference of constants.
        result.df = a.n + b.n - 2;
        if (a.mean == b.mean) {
            result.degenerate = true;
            return result;
        }
        result.t = a.mean > b.mean ? std::numeric_limits<double>::infinity()
                                   : -std::numeric_limits<double>::infinity();
        result.significant = true;
        return result;
    }

    result.t = (a.mean - b.mean) / std::sqrt(se2);
    result.df = se2 * se2 /
                (va * va / (a.n - 1) + vb * vb / (b.n - 1));
    result.significant =
        std::fabs(result.t) > t_critical_value(confidence, result.df);
    return result;
}

namespace {

std::string fmt_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    return out;
}

int strategy_number(Strategy s) { return s == Strategy::One ? 1 : 2; }

// Cross product of sweep value lists, row-major in sweep order.
std::vector<std::vector<std::pair<std::string, std::string>>> expand_cells(
    const Scenario& scenario) {
    std::vector<std::vector<std::pair<std::string, std::string>>> cells;
    cells.emplace_back();
    for (const auto& [key, values] : scenario.sweeps) {
        if (values.empty()) {
            throw ConfigError(key, "sweep has no values");
        }
        std::vector<std::vector<std::pair<std::string, std::string>>> grown;
        grown.reserve(cells.size() * values.size());
        for (const auto& cell : cells) {
            for (const std::string& v : values) {
                auto next = cell;
                next.emplace_back(key, v);
                grown.push_back(std::move(next));
            }
        }
        cells = std::move(grown);
    }
    return cells;
}

// The parameter shown in the summary CSV: the last swept key besides
// strategy, falling back to strategy itself.
std::pair<std::string, std::string> display_param(
    const std::vector<std::pair<std::string, std::string>>& cell) {
    for (auto it = cell.rbegin(); it != cell.rend(); ++it) {
        if (it->first != "strategy") return *it;
    }
    if (!cell.empty()) return cell.back();
    return {"none", ""};
}

}  // namespace

ScenarioResult run_scenario(const Scenario& scenario, int threads) {
    if (scenario.replicates < 1) {
        throw ConfigError("replicates", "must be >= 1");
    }
    const auto cells = expand_cells(scenario);
    const std::size_t n_tasks = cells.size() * scenario.replicates;

    std::vector<std::optional<CellRun>> slots(n_tasks);
    std::vector<std::string> task_errors(n_tasks);

    auto work = [&](std::size_t t) {
        const int cell = static_cast<int>(t / scenario.replicates);
        const int rep = static_cast<int>(t % scenario.replicates);
        try {
            GaConfig cfg = scenario.base;
            for (const auto& [key, value] : cells[cell]) {
                apply_config_entry(cfg, key, value);
            }
            cfg.master_seed =
                derive_seed(scenario.base.master_seed, streams::scenario,
                            static_cast<std::uint64_t>(cell),
                            static_cast<std::uint64_t>(rep));
            cfg.check();

            CellRun run_result;
            run_result.cell = cell;
            run_result.replicate = rep;
            run_result.seed = cfg.master_seed;
            run_result.cfg = cfg;
            run_result.records = run(cfg);
            slots[t] = std::move(run_result);
        } catch (const std::exception& e) {
            task_errors[t] = "cell " + std::to_string(cell) + " replicate " +
                             std::to_string(rep) + ": " + e.what();
        }
    };

    if (threads <= 1) {
        for (std::size_t t = 0; t < n_tasks; ++t) work(t);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        const std::size_t n_threads =
            std::min(static_cast<std::size_t>(threads), n_tasks);
        pool.reserve(n_threads);
        for (std::size_t i = 0; i < n_threads; ++i) {
            pool.emplace_back([&] {
                for (std::size_t t = next.fetch_add(1); t < n_tasks;
                     t = next.fetch_add(1)) {
                    work(t);
                }
            });
        }
        for (std::thread& th : pool) th.join();
    }

    ScenarioResult result;
    for (std::size_t t = 0; t < n_tasks; ++t) {
        if (!task_errors[t].empty()) {
            result.errors.push_back(task_errors[t]);
            continue;
        }
        if (!slots[t]) continue;
        CellRun& run_result = *slots[t];
        try {
            const WindowStats stats = summarize(
                run_result.records, scenario.window_start, scenario.window_end);
            const auto [param, value] = display_param(cells[run_result.cell]);
            SummaryRow row;
            row.scenario = scenario.name;
            row.cell = run_result.cell;
            row.strategy = strategy_number(run_result.cfg.strategy);
            row.param = param;
            row.value = value;
            row.seed = run_result.seed;
            row.mean_rel = stats.mean_reliability;
            row.sd_rel = stats.sd_reliability;
            row.mean_cost = stats.mean_cost;
            row.sd_cost = stats.sd_cost;
            row.mean_redundancy = stats.mean_redundancy;
            row.mean_pleiotropy = stats.mean_pleiotropy;
            result.summary.push_back(std::move(row));
            result.runs.push_back(std::move(run_result));
        } catch (const std::exception& e) {
            result.errors.push_back("cell " + std::to_string(run_result.cell) +
                                    " replicate " +
                                    std::to_string(run_result.replicate) +
                                    ": " + e.what());
        }
    }
    return result;
}

Scenario make_preset(const std::string& name) {
    Scenario s;
    s.name = name;
    if (name == "failure-prob") {
        s.sweeps = {{"strategy", {"1", "2"}},
                    {"link_failure_prob", {"0.01", "0.001"}}};
    } else if (name == "repair-rate") {
        s.sweeps = {{"strategy", {"1", "2"}},
                    {"repair_time", {"2", "10", "50"}}};
    } else if (name == "offspring") {
        s.base.strategy = Strategy::One;
        s.sweeps = {{"offspring", {"10", "20", "50"}}};
    } else {
        throw ConfigError("preset", "unknown preset '" + name + "'");
    }
    return s;
}

std::vector<std::string> preset_names() {
    return {"failure-prob", "repair-rate", "offspring"};
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read scenario file '" + path + "'");

    Scenario s;
    s.name = "custom";
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto comment = line.find('#');
        if (comment != std::string::npos) line.erase(comment);
        auto strip = [](std::string v) {
            const auto b = v.find_first_not_of(" \t\r\n");
            if (b == std::string::npos) return std::string();
            const auto e = v.find_last_not_of(" \t\r\n");
            return v.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_no),
                              "expected key=value, got '" + line + "'");
        }
        const std::string key = strip(line.substr(0, eq));
        const std::string value = strip(line.substr(eq + 1));

        if (key == "name") {
            s.name = value;
        } else if (key == "replicates") {
            s.replicates = static_cast<int>(std::stoll(value));
        } else if (key == "window_start") {
            s.window_start = static_cast<int>(std::stoll(value));
        } else if (key == "window_end") {
            s.window_end = static_cast<int>(std::stoll(value));
        } else if (key.rfind("sweep.", 0) == 0) {
            const std::string param = key.substr(6);
            std::vector<std::string> values;
            std::stringstream ss(value);
            std::string item;
            while (std::getline(ss, item, ',')) {
                item = strip(item);
                if (!item.empty()) values.push_back(item);
            }
            if (values.empty()) throw ConfigError(key, "sweep has no values");
            s.sweeps.emplace_back(param, values);
        } else {
            apply_config_entry(s.base, key, value);
        }
    }
    s.base.check();
    return s;
}

void write_generations_csv(const std::vector<CellRun>& runs,
                           const std::string& path) {
    std::ofstream out = open_out(path);
    out << "generation,strategy,fitness,reliability,cost,redundancy,"
           "pleiotropy,ratio,utilization_nominal,utilization_effective,"
           "n_links,n_servers,n_failed_links,seed\n";
    for (const CellRun& run_result : runs) {
        const int strat = strategy_number(run_result.cfg.strategy);
        for (const GenerationRecord& rec : run_result.records) {
            out << rec.generation << ',' << strat << ','
                << fmt_number(rec.best.fitness) << ','
                << fmt_number(rec.best.reliability) << ','
                << fmt_number(rec.best.cost) << ','
                << fmt_number(rec.best.redundancy) << ','
                << fmt_number(rec.best.pleiotropy) << ','
                << fmt_number(rec.redundancy_pleiotropy_ratio) << ','
                << fmt_number(rec.utilization_nominal) << ','
                << fmt_number(rec.utilization_effective) << ',' << rec.n_links
                << ',' << rec.n_servers << ',' << rec.n_failed_links << ','
                << run_result.seed << '\n';
        }
    }
    if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_summary_csv(const std::vector<SummaryRow>& rows,
                       const std::string& path) {
    std::ofstream out = open_out(path);
    out << "scenario,cell,strategy,param,value,seed,mean_rel,sd_rel,"
           "mean_cost,sd_cost,mean_D,mean_L\n";
    for (const SummaryRow& row : rows) {
        out << row.scenario << ',' << row.cell << ',' << row.strategy << ','
            << row.param << ',' << row.value << ',' << row.seed << ','
            << fmt_number(row.mean_rel) << ',' << fmt_number(row.sd_rel) << ','
            << fmt_number(row.mean_cost) << ',' << fmt_number(row.sd_cost)
            << ',' << fmt_number(row.mean_redundancy) << ','
            << fmt_number(row.mean_pleiotropy) << '\n';
    }
    if (!out) throw IoError("failed while writing '" + path + "'");
}

void write_plot_data(const std::vector<GenerationRecord>& records,
                     const std::string& path) {
    std::ofstream out = open_out(path);
    out << "# generation reliability cost ratio\n";
    for (const GenerationRecord& rec : records) {
        out << rec.generation << ' ' << fmt_number(rec.best.reliability) << ' '
            << fmt_number(rec.best.cost) << ' '
            << fmt_number(rec.redundancy_pleiotropy_ratio) << '\n';
    }
    if (!out) throw IoError("failed while writing '" + path + "'");
}

}  // namespace netevolve

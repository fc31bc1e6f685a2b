#include "grainflow/errors.hpp"
#include "grainflow/scenario.hpp"
#include "grainflow/sim.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace grainflow;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitRuntime = 2;

std::string read_text_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw std::runtime_error("short write to '" + path.string() + "'");
}

void print_issues(const std::string& origin, const std::vector<ParseIssue>& issues) {
    for (const auto& issue : issues) {
        if (issue.line > 0)
            std::cerr << origin << ":" << issue.line << ": " << issue.message << "\n";
        else
            std::cerr << origin << ": " << issue.message << "\n";
    }
}

// --seed / scenario default, overridable through the environment
std::uint64_t effective_seed(std::uint64_t flag_seed) {
    if (const char* env = std::getenv("GRAINFLOW_SEED")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end == env || *end != '\0') throw ConfigError("bad GRAINFLOW_SEED value");
        return v;
    }
    return flag_seed;
}

std::optional<Scenario> load_scenario(const std::string& path, bool north_zone,
                                      std::uint64_t seed) {
    if (north_zone) return generate_north_zone(seed);
    const std::string text = read_text_file(path);
    auto parsed = parse_scenario(text);
    if (!parsed.ok()) {
        print_issues(path, parsed.issues);
        return std::nullopt;
    }
    return std::move(*parsed.scenario);
}

void write_run_outputs(const fs::path& dir, const RunResult& result) {
    fs::create_directories(dir);
    write_text_file(dir / "metrics.csv", write_metrics(result.metrics.rows));
    write_text_file(dir / "trace.log", write_trace(result.trace));
}

std::string summarize(const RunResult& result) {
    std::string out;
    out += "ticks: " + std::to_string(result.ticks_run) + "\n";
    out += "transferred: " + std::to_string(result.metrics.total_transferred) + "\n";
    out += "unmet deficit: " + std::to_string(result.final_unmet) + "\n";
    out += "messages: " + std::to_string(result.metrics.total_messages) + "\n";
    return out;
}

struct RunArgs {
    std::string scenario_path;
    bool north_zone = false;
    std::uint64_t seed = 0;
    std::int64_t max_ticks = -1;
    std::string out_dir = ".";
    std::string seeds_range;
    unsigned jobs = 1;
};

int cmd_run(const RunArgs& args) {
    if (args.north_zone == !args.scenario_path.empty()) {
        std::cerr << "run: give a scenario path or --north-zone (not both)\n";
        return kExitValidation;
    }
    const std::uint64_t base_seed = effective_seed(args.seed);
    const auto scenario = load_scenario(args.scenario_path, args.north_zone, base_seed);
    if (!scenario) return kExitValidation;
    const std::optional<Tick> ticks_override =
        args.max_ticks >= 0 ? std::optional<Tick>(args.max_ticks) : std::nullopt;

    if (args.seeds_range.empty()) {
        ProgressFn progress = [](const World& w) {
            if (w.clock % 100 == 0)
                std::fprintf(stderr, "tick %lld: unmet %lld\n",
                             static_cast<long long>(w.clock),
                             static_cast<long long>(w.metrics.unmet_deficit));
        };
        const RunResult result = run(*scenario, base_seed, ticks_override, progress);
        write_run_outputs(args.out_dir, result);
        std::cout << summarize(result);
        return kExitOk;
    }

    // seed sweep: a..b inclusive, one output directory per seed
    const auto sep = args.seeds_range.find("..");
    if (sep == std::string::npos) {
        std::cerr << "run: --seeds wants the form a..b\n";
        return kExitValidation;
    }
    const auto lo = std::strtoull(args.seeds_range.substr(0, sep).c_str(), nullptr, 10);
    const auto hi = std::strtoull(args.seeds_range.substr(sep + 2).c_str(), nullptr, 10);
    if (hi < lo) {
        std::cerr << "run: --seeds range is empty\n";
        return kExitValidation;
    }
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t k = lo; k <= hi; ++k) seeds.push_back(k);
    std::vector<std::string> summaries(seeds.size());
    std::atomic<std::size_t> cursor{0};
    std::mutex error_mutex;
    std::string first_error;
    auto worker = [&] {
        while (true) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= seeds.size()) break;
            try {
                // each sweep run is self-contained; the scenario itself stays fixed
                const RunResult result = run(*scenario, seeds[i], ticks_override);
                write_run_outputs(fs::path(args.out_dir) / ("seed-" + std::to_string(seeds[i])),
                                  result);
                summaries[i] = "seed " + std::to_string(seeds[i]) + ": ticks " +
                               std::to_string(result.ticks_run) + ", transferred " +
                               std::to_string(result.metrics.total_transferred) +
                               ", unmet " + std::to_string(result.final_unmet) + "\n";
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (first_error.empty()) first_error = e.what();
            }
        }
    };
    const unsigned n_threads = std::max(1u, std::min<unsigned>(args.jobs, seeds.size()));
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (!first_error.empty()) {
        std::cerr << "run: " << first_error << "\n";
        return kExitRuntime;
    }
    for (const auto& line : summaries) std::cout << line;
    return kExitOk;
}

int cmd_validate(const std::string& path) {
    const std::string text = read_text_file(path);
    const auto parsed = parse_scenario(text);
    if (!parsed.ok()) {
        print_issues(path, parsed.issues);
        return kExitValidation;
    }
    std::cout << path << ": ok (" << parsed.scenario->centers.size() << " centers, "
              << parsed.scenario->commodities.size() << " commodities)\n";
    return kExitOk;
}

int cmd_report(const std::string& metrics_path, const std::string& plot_dir) {
    std::vector<MetricsRow> rows;
    try {
        rows = parse_metrics(read_text_file(metrics_path));
    } catch (const ConfigError& e) {
        std::cerr << "report: " << e.what() << "\n";
        return kExitValidation;
    }
    Quantity transferred = 0;
    Money cost = 0.0;
    std::uint64_t messages = 0;
    for (const auto& r : rows) {
        transferred += r.transferred;
        cost += r.cost;
        messages += r.messages;
    }
    std::cout << "ticks: " << rows.size() << "\n";
    std::cout << "total transferred: " << transferred << "\n";
    std::cout << "total cost: " << format_double(cost) << "\n";
    std::cout << "final unmet deficit: " << (rows.empty() ? 0 : rows.back().unmet_deficit) << "\n";
    std::cout << "total messages: " << messages << "\n";
    if (!plot_dir.empty()) {
        fs::create_directories(plot_dir);
        std::string unmet, msgs;
        for (const auto& r : rows) {
            unmet += std::to_string(r.tick) + " " + std::to_string(r.unmet_deficit) + "\n";
            msgs += std::to_string(r.tick) + " " + std::to_string(r.messages) + "\n";
        }
        write_text_file(fs::path(plot_dir) / "unmet_deficit.dat", unmet);
        write_text_file(fs::path(plot_dir) / "messages.dat", msgs);
    }
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"grainflow: gravity-matched redistribution between surplus and deficit centers"};
    app.require_subcommand(1);

    RunArgs run_args;
    auto* run_cmd = app.add_subcommand("run", "simulate a scenario; writes metrics.csv + trace.log");
    run_cmd->add_option("scenario", run_args.scenario_path, "scenario file");
    run_cmd->add_flag("--north-zone", run_args.north_zone,
                      "use the built-in 54-center north-zone scenario");
    run_cmd->add_option("--seed", run_args.seed, "rng seed (GRAINFLOW_SEED overrides)");
    run_cmd->add_option("--max-ticks", run_args.max_ticks, "override the scenario tick budget");
    run_cmd->add_option("--out", run_args.out_dir, "output directory");
    run_cmd->add_option("--seeds", run_args.seeds_range,
                        "seed sweep a..b, one run per seed under out/seed-<k>");
    run_cmd->add_option("--jobs", run_args.jobs, "parallel runs for --seeds");

    std::string validate_path;
    auto* validate_cmd = app.add_subcommand("validate", "check a scenario file");
    validate_cmd->add_option("scenario", validate_path, "scenario file")->required();

    std::string metrics_path, plot_dir;
    auto* report_cmd = app.add_subcommand("report", "summarize a metrics.csv");
    report_cmd->add_option("metrics", metrics_path, "metrics.csv from a run")->required();
    report_cmd->add_option("--plot-out", plot_dir,
                           "write tick/unmet_deficit and tick/messages columns here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run_cmd->parsed()) return cmd_run(run_args);
        if (validate_cmd->parsed()) return cmd_validate(validate_path);
        if (report_cmd->parsed()) return cmd_report(metrics_path, plot_dir);
    } catch (const ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}

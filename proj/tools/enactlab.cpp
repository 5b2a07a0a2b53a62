// Command-line driver: single trials, parameter sweeps, and the windowed
// negative-valence analysis, all seeded and reproducible from the written
// manifest.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "enactlab/config.hpp"
#include "enactlab/csv.hpp"
#include "enactlab/harness.hpp"

namespace fs = std::filesystem;
using namespace enactlab;

namespace {

struct CommonFlags {
    std::string config_path;
    std::string manifest_path;
    std::map<std::string, std::string> cli_values; // raw key -> value overrides
};

// Options that mirror config-file keys are collected as strings and pushed
// through Options::apply so CLI, config file and manifest all share one
// validation path.
void add_option_key(CLI::App* cmd, CommonFlags& flags, const std::string& key,
                    const std::string& help) {
    auto* opt = cmd->add_option_function<std::string>(
        "--" + key, [&flags, key](const std::string& v) { flags.cli_values[key] = v; }, help);
    opt->type_name("VALUE");
}

Options resolve(const CommonFlags& flags, std::string* config_digest) {
    Options opts;
    if (const char* env_seed = std::getenv("ENACTLAB_SEED"))
        opts.apply("seed", env_seed);
    if (!flags.manifest_path.empty()) {
        std::ifstream in(flags.manifest_path);
        if (!in)
            throw ConfigError("cannot read manifest: " + flags.manifest_path);
        nlohmann::json m = nlohmann::json::parse(in);
        opts = options_from_json(m.at("resolved"));
    }
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path, std::ios::binary);
        if (!in)
            throw ConfigError("cannot read config file: " + flags.config_path);
        std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        *config_digest = digest_bytes(text);
        for (const auto& [key, value] : parse_config_file(text))
            opts.apply(key, value);
    }
    for (const auto& [key, value] : flags.cli_values)
        opts.apply(key, value);
    opts.validate();
    return opts;
}

std::string tick_log_name(const TrialResult& r) {
    const bool enactive = r.config.agent == AgentKind::Enactive;
    std::string param = enactive ? "d" + std::to_string(r.config.d)
                                 : "delta" + format_double(r.config.delta);
    return "ticks_" + std::string(agent_kind_name(r.config.agent)) + "_a" +
           format_double(r.config.alpha) + "_" + param + "_s" + std::to_string(r.config.seed) +
           ".csv";
}

int cmd_run(const CommonFlags& flags, const std::string& out_dir, bool dump_memory, bool trace,
            int trace_every) {
    std::string digest;
    const Options opts = resolve(flags, &digest);
    if (trace && trace_every <= 0)
        throw ConfigError("--trace-every must be positive");
    const TrialConfig cfg = opts.trial_config();

    TrialObserver obs;
    obs.trace_every = trace ? trace_every : 0;
    obs.capture_memory = dump_memory && cfg.agent == AgentKind::Enactive;

    const TrialResult result = run_trial(cfg, &obs);

    fs::create_directories(out_dir);
    write_file(out_dir + "/trials.csv", trials_csv({result}));
    write_file(out_dir + "/" + tick_log_name(result), ticks_csv(result));
    write_file(out_dir + "/manifest.json", run_manifest(opts, digest).dump(2) + "\n");
    if (obs.capture_memory)
        write_file(out_dir + "/memory.txt", obs.memory_dump);
    if (trace) {
        std::string frames;
        for (const auto& f : obs.frames)
            frames += f + "\n";
        write_file(out_dir + "/trace.txt", frames);
    }

    std::cout << agent_kind_name(cfg.agent) << " trial: gain=" << result.gain
              << " neg_valence_total=" << result.neg_valence_total << " ticks=" << result.ticks
              << " -> " << out_dir << "/trials.csv\n";
    return 0;
}

int cmd_sweep(const CommonFlags& flags, const std::string& out_dir, const std::string& grid_str,
              int n_seeds, int workers) {
    std::string digest;
    const Options opts = resolve(flags, &digest);
    if (n_seeds < 1)
        throw ConfigError("--seeds must be at least 1");
    if (workers < 1)
        throw ConfigError("--workers must be at least 1");

    const GridSpec grid = parse_grid(grid_str);
    SweepSpec spec;
    spec.alphas = grid.alphas;
    spec.ds = grid.ds;
    spec.deltas = grid.deltas;
    for (int i = 1; i <= n_seeds; ++i)
        spec.seeds.push_back(static_cast<std::uint64_t>(i));
    spec.base = opts.trial_config();

    const SweepTable table = run_sweep(spec, workers);

    fs::create_directories(out_dir);
    fs::create_directories(out_dir + "/logs");
    write_file(out_dir + "/sweep.csv", sweep_csv(table));

    std::vector<TrialResult> raw;
    for (const auto& cell : table.cells)
        for (const auto& trial : cell.trials)
            raw.push_back(trial);
    write_file(out_dir + "/trials.csv", trials_csv(raw));
    for (const auto& trial : raw)
        write_file(out_dir + "/logs/" + tick_log_name(trial), ticks_csv(trial));

    write_file(out_dir + "/manifest.json",
               sweep_manifest(opts, grid, spec.seeds, workers, table, digest).dump(2) + "\n");

    std::cout << "sweep: " << table.cells.size() << " cells x " << n_seeds << " seeds -> "
              << out_dir << "/sweep.csv\n";
    return 0;
}

int cmd_analyze(const CommonFlags& flags, const std::string& in_dir, const std::string& out_arg) {
    std::string digest;
    const Options opts = resolve(flags, &digest);

    if (!fs::is_directory(in_dir))
        throw ConfigError("--in is not a directory: " + in_dir);

    std::vector<fs::path> logs;
    for (const auto& entry : fs::directory_iterator(in_dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("ticks_", 0) == 0 &&
            name.size() > 4 && name.substr(name.size() - 4) == ".csv")
            logs.push_back(entry.path());
    }
    std::sort(logs.begin(), logs.end());
    if (logs.empty())
        throw ConfigError("no ticks_*.csv logs found in " + in_dir);

    std::vector<std::vector<double>> per_trial_values;
    for (const auto& path : logs) {
        std::ifstream in(path);
        if (!in)
            throw std::runtime_error("cannot read " + path.string());
        std::string line;
        std::getline(in, line); // header
        std::vector<double> values;
        while (std::getline(in, line)) {
            if (line.empty())
                continue;
            // tick,x,y,heading,action,value,ate_food,enaction
            std::size_t pos = 0;
            for (int comma = 0; comma < 5; ++comma)
                pos = line.find(',', pos) + 1;
            values.push_back(std::stod(line.substr(pos)));
        }
        per_trial_values.push_back(std::move(values));
    }

    WindowStats stats;
    try {
        stats = negative_valence_windows(per_trial_values, opts.window);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }

    const std::string out_dir = out_arg.empty() ? in_dir : out_arg;
    fs::create_directories(out_dir);
    write_file(out_dir + "/windows.csv", windows_csv(stats));

    std::vector<std::string> log_names;
    for (const auto& path : logs)
        log_names.push_back(path.filename().string());
    write_file(out_dir + "/windows_manifest.json",
               analyze_manifest(opts, in_dir, log_names, digest).dump(2) + "\n");

    std::cout << "analyze: " << logs.size() << " logs, " << stats.n_windows << " windows -> "
              << out_dir << "/windows.csv\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"maze-foraging workbench: enactive agent vs scoped value-iteration baseline"};
    app.set_version_flag("--version", kToolVersion);
    app.require_subcommand(1);

    CommonFlags flags;
    std::string out_dir = "out";
    bool dump_memory = false;
    bool trace = false;
    int trace_every = 100;
    std::string grid_str = default_grid();
    int n_seeds = 15;
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1)
        workers = 1;
    std::string in_dir;
    std::string analyze_out;

    const std::vector<std::string> run_keys = {
        "agent", "maze",  "alpha",        "d",            "delta",
        "seed",  "ticks", "gamma",        "vi_tolerance", "vi_max_iter",
        "window", "replenish_interval", "replenish_count", "initial_food",
        "empty_reward_override"};

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", flags.config_path, "flat key=value config file");
        cmd->add_option("--manifest", flags.manifest_path,
                        "reuse the resolved settings of a previous run's manifest");
        for (const auto& key : run_keys)
            add_option_key(cmd, flags, key, "config key '" + key + "'");
    };

    auto* run = app.add_subcommand("run", "run one trial; writes trials.csv, tick log, manifest");
    add_common(run);
    run->add_option("--out", out_dir, "output directory")->capture_default_str();
    run->add_flag("--dump-memory", dump_memory, "write the enactive interaction memory");
    run->add_flag("--trace", trace, "write ASCII maze snapshots");
    run->add_option("--trace-every", trace_every, "ticks between trace snapshots")
        ->capture_default_str();

    auto* sweep = app.add_subcommand("sweep", "parameter sweep; writes sweep.csv and raw logs");
    add_common(sweep);
    sweep->add_option("--out", out_dir, "output directory")->capture_default_str();
    sweep->add_option("--grid", grid_str, "grid spec, e.g. \"alpha=0,0.5;d=2,4;delta=2,8\"")
        ->capture_default_str();
    sweep->add_option("--seeds", n_seeds, "number of seeds (1..N)")->capture_default_str();
    sweep->add_option("--workers", workers, "parallel trial runners")->capture_default_str();

    auto* analyze =
        app.add_subcommand("analyze", "windowed negative-valence stats over tick logs");
    add_common(analyze);
    analyze->add_option("--in", in_dir, "directory with ticks_*.csv logs")->required();
    analyze->add_option("--out", analyze_out, "output directory (default: --in)");

    try {
        app.parse(argc, argv);
        if (run->parsed())
            return cmd_run(flags, out_dir, dump_memory, trace, trace_every);
        if (sweep->parsed())
            return cmd_sweep(flags, out_dir, grid_str, n_seeds, workers);
        if (analyze->parsed())
            return cmd_analyze(flags, in_dir, analyze_out);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const MazeError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

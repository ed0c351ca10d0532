#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "conflab/engine.hpp"
#include "conflab/fitness.hpp"
#include "conflab/sdt.hpp"
#include "config_json.hpp"
#include "csv.hpp"

namespace fs = std::filesystem;

namespace conflab::cli {
namespace {

constexpr int kOk = 0;
constexpr int kRuntimeError = 1;
constexpr int kInputError = 2;

unsigned sweep_threads() {
    const char* env = std::getenv("CONFLAB_THREADS");
    if (env == nullptr || *env == '\0') {
        return std::max(1u, std::thread::hardware_concurrency());
    }
    try {
        std::size_t pos = 0;
        const std::string text(env);
        const long value = std::stol(text, &pos);
        if (pos != text.size() || value < 1) throw std::invalid_argument(text);
        return static_cast<unsigned>(value);
    } catch (const std::exception&) {
        throw InputError(std::string("CONFLAB_THREADS: must be a positive integer, got '") +
                         env + "'");
    }
}

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError(path + ": cannot open file");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
}

ScenarioConfig load_config(const std::string& path,
                           const std::optional<std::uint64_t>& seed_override) {
    ScenarioConfig config = config_from_json(load_json(path));
    if (seed_override) config.seed = *seed_override;
    validate(config);
    return config;
}

void ensure_out_dir(const std::string& out) {
    std::error_code ec;
    fs::create_directories(out, ec);
    if (ec || !fs::is_directory(out)) {
        throw IoError(out + ": cannot create output directory");
    }
}

void write_lines(const std::string& path, const std::vector<std::string>& lines) {
    std::ofstream out(path);
    if (!out) throw IoError(path + ": cannot open for writing");
    for (const auto& line : lines) out << line << "\n";
    out.flush();
    if (!out) throw IoError(path + ": write failed");
}

std::vector<double> parse_grid(const std::string& spec) {
    const auto parts = split_fields([&] {
        std::string s = spec;
        std::replace(s.begin(), s.end(), ':', ',');
        return s;
    }());
    if (parts.size() != 3) {
        throw InputError("--grid: expected start:stop:step, got '" + spec + "'");
    }
    const double start = parse_double(parts[0], "--grid start");
    const double stop = parse_double(parts[1], "--grid stop");
    const double step = parse_double(parts[2], "--grid step");
    if (!(step > 0.0)) throw InputError("--grid: step must be > 0");
    if (start > stop) throw InputError("--grid: start must be <= stop");
    if (start < 0.0 || stop > 1.0) throw InputError("--grid: range must lie within [0,1]");
    std::vector<double> grid;
    for (int i = 0;; ++i) {
        const double v = start + step * i;
        if (v > stop + 1e-9) break;
        grid.push_back(std::min(v, 1.0));
    }
    return grid;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const std::optional<std::uint64_t>& seed_override) {
    const ScenarioConfig config = load_config(config_path, seed_override);
    const RunResult result = run_scenario(config);
    ensure_out_dir(out_dir);

    {
        CsvWriter csv((fs::path(out_dir) / "per_tick.csv").string(),
                      "tick,tasks_attempted,tasks_succeeded,sync,revision,map_discover,"
                      "map_apply,ground_exchange,failure,ahead_of_time,task_time,total");
        for (const TickStats& t : result.per_tick) {
            csv.row({std::to_string(t.tick), std::to_string(t.tasks_attempted),
                     std::to_string(t.tasks_succeeded), fmt(t.ledger.at(CostCategory::Sync)),
                     fmt(t.ledger.at(CostCategory::Revision)),
                     fmt(t.ledger.at(CostCategory::MapDiscover)),
                     fmt(t.ledger.at(CostCategory::MapApply)),
                     fmt(t.ledger.at(CostCategory::GroundExchange)),
                     fmt(t.ledger.at(CostCategory::Failure)), fmt(t.ledger.ahead_of_time()),
                     fmt(t.ledger.task_time()), fmt(t.ledger.total())});
        }
        csv.close((fs::path(out_dir) / "per_tick.csv").string());
    }

    std::vector<std::string> lines;
    lines.emplace_back("conflab run summary");
    for (const auto& line : config_echo(config)) lines.push_back(line);
    lines.push_back("tasks_attempted = " + std::to_string(result.tasks_attempted));
    lines.push_back("tasks_succeeded = " + std::to_string(result.tasks_succeeded));
    lines.push_back("success_rate = " + fmt(result.success_rate));
    lines.push_back("cost.ahead_of_time = " + fmt(result.totals.ahead_of_time()));
    lines.push_back("cost.task_time = " + fmt(result.totals.task_time()));
    lines.push_back("cost.total = " + fmt(result.totals.total()));
    for (CostCategory c :
         {CostCategory::Sync, CostCategory::Revision, CostCategory::MapDiscover,
          CostCategory::MapApply, CostCategory::GroundExchange, CostCategory::Failure}) {
        lines.push_back(std::string("cost.") + to_string(c) + " = " + fmt(result.totals.at(c)));
    }
    lines.push_back("final_standard_version = " + std::to_string(result.final_standard_version));
    lines.push_back("final_standard_size = " + std::to_string(result.final_standard_size));
    for (std::size_t i = 0; i < result.final_divergence.size(); ++i) {
        lines.push_back("divergence.agent_" + std::to_string(i) + " = " +
                        fmt(result.final_divergence[i]));
    }
    lines.push_back("events = " + std::to_string(result.event_log.size()));
    write_lines((fs::path(out_dir) / "summary.txt").string(), lines);
    return kOk;
}

int cmd_sweep(const std::string& config_path, const std::string& out_dir,
              const std::string& grid_spec, std::uint32_t seeds,
              const std::optional<std::uint64_t>& seed_override) {
    if (seeds == 0) throw InputError("--seeds: must be >= 1");
    const ScenarioConfig config = load_config(config_path, seed_override);
    const std::vector<double> grid = parse_grid(grid_spec);
    const std::vector<SweepPoint> points =
        sweep_shared_fraction(config, grid, seeds, sweep_threads());
    ensure_out_dir(out_dir);

    {
        CsvWriter csv((fs::path(out_dir) / "sweep.csv").string(),
                      "shared_fraction,mean_total_cost,mean_success_rate");
        for (const SweepPoint& p : points) {
            csv.row({fmt(p.shared_fraction), fmt(p.mean_total_cost), fmt(p.mean_success_rate)});
        }
        csv.close((fs::path(out_dir) / "sweep.csv").string());
    }

    std::size_t argmin = 0;
    for (std::size_t i = 1; i < points.size(); ++i) {
        if (points[i].mean_total_cost < points[argmin].mean_total_cost) argmin = i;
    }
    std::vector<std::string> lines;
    lines.emplace_back("conflab sweep summary");
    for (const auto& line : config_echo(config)) lines.push_back(line);
    lines.push_back("grid = " + grid_spec);
    lines.push_back("seeds_per_point = " + std::to_string(seeds));
    lines.push_back("points = " + std::to_string(points.size()));
    lines.push_back("argmin.shared_fraction = " + fmt(points[argmin].shared_fraction));
    lines.push_back("argmin.mean_total_cost = " + fmt(points[argmin].mean_total_cost));
    lines.push_back("argmin.mean_success_rate = " + fmt(points[argmin].mean_success_rate));
    write_lines((fs::path(out_dir) / "summary.txt").string(), lines);
    return kOk;
}

int cmd_roc(const std::string& samples_path, const std::string& out_dir,
            const std::string& criterion_name) {
    CutoffCriterion criterion = CutoffCriterion::Youden;
    if (criterion_name == "min-error") {
        criterion = CutoffCriterion::MinError;
    } else if (criterion_name != "youden") {
        throw InputError("--criterion: must be youden or min-error, got '" + criterion_name +
                         "'");
    }

    CsvReader reader(samples_path, "marker,suitable");
    if (reader.size() == 0) throw InputError(samples_path + ": no data rows");
    std::vector<LabeledSample> samples;
    samples.reserve(reader.size());
    std::uint64_t positives = 0;
    for (std::size_t i = 0; i < reader.size(); ++i) {
        const auto& row = reader.row(i);
        LabeledSample s;
        s.marker = parse_double(row[0], reader.location(i));
        if (row[1] == "1") {
            s.suitable = true;
        } else if (row[1] == "0") {
            s.suitable = false;
        } else {
            throw InputError(reader.location(i) + ": suitable must be 0 or 1, got '" + row[1] +
                             "'");
        }
        positives += s.suitable ? 1 : 0;
        samples.push_back(s);
    }

    const RocCurve curve = roc_curve(samples);
    const double pair_auc = auc_pair_count(samples);
    const double cutoff = optimal_cutoff(curve, criterion);
    ensure_out_dir(out_dir);

    {
        CsvWriter csv((fs::path(out_dir) / "roc_points.csv").string(), "cutoff,fpr,tpr");
        for (const RocPoint& p : curve.points) {
            csv.row({fmt(p.cutoff), fmt(p.fpr), fmt(p.tpr)});
        }
        csv.close((fs::path(out_dir) / "roc_points.csv").string());
    }

    std::vector<std::string> lines;
    lines.emplace_back("conflab roc summary");
    lines.push_back("samples = " + std::to_string(samples.size()));
    lines.push_back("positives = " + std::to_string(positives));
    lines.push_back("negatives = " + std::to_string(samples.size() - positives));
    lines.push_back("auc = " + fmt(curve.auc));
    lines.push_back("auc_pair_count = " + fmt(pair_auc));
    lines.push_back("criterion = " + criterion_name);
    lines.push_back("optimal_cutoff = " + fmt(cutoff));
    write_lines((fs::path(out_dir) / "summary.txt").string(), lines);
    return kOk;
}

PerformanceCurve load_curve(const std::string& path) {
    CsvReader reader(path, "bin_start,bin_end,probability");
    if (reader.size() == 0) throw InputError(path + ": no data rows");
    PerformanceCurve curve;
    for (std::size_t i = 0; i < reader.size(); ++i) {
        const auto& row = reader.row(i);
        CurveSegment seg;
        seg.begin = parse_double(row[0], reader.location(i));
        seg.end = parse_double(row[1], reader.location(i));
        seg.probability = parse_double(row[2], reader.location(i));
        if (!(seg.end > seg.begin)) {
            throw InputError(reader.location(i) + ": bin_end must exceed bin_start");
        }
        if (!(seg.probability >= 0.0 && seg.probability <= 1.0)) {
            throw InputError(reader.location(i) + ": probability must be in [0,1], got " +
                             row[2]);
        }
        if (!curve.segments.empty() && curve.segments.back().end != seg.begin) {
            throw InputError(reader.location(i) + ": bins must be contiguous");
        }
        curve.segments.push_back(seg);
    }
    curve.domain_begin = curve.segments.front().begin;
    curve.domain_end = curve.segments.back().end;
    return curve;
}

int cmd_fitness(const std::string& reference_path, const std::string& implemented_path,
                const std::string& out_dir) {
    const PerformanceCurve reference = load_curve(reference_path);
    const PerformanceCurve implemented = load_curve(implemented_path);
    const FitnessDecomposition d = fitness_decomposition(reference, implemented);
    const double pf = potential_fitness(d);
    const double rf = realized_fitness(d);
    const double fi = fidelity(d);
    ensure_out_dir(out_dir);

    {
        CsvWriter csv((fs::path(out_dir) / "fitness.csv").string(),
                      "intrinsic_if,additional_af,missing_mf,potential_pf,realized_rf,"
                      "fidelity_fi");
        csv.row({fmt(d.intrinsic_if), fmt(d.additional_af), fmt(d.missing_mf), fmt(pf), fmt(rf),
                 fmt(fi)});
        csv.close((fs::path(out_dir) / "fitness.csv").string());
    }

    std::vector<std::string> lines;
    lines.emplace_back("conflab fitness summary");
    lines.push_back("reference_area = " + fmt(reference.area()));
    lines.push_back("implemented_area = " + fmt(implemented.area()));
    lines.push_back("intrinsic_if = " + fmt(d.intrinsic_if));
    lines.push_back("additional_af = " + fmt(d.additional_af));
    lines.push_back("missing_mf = " + fmt(d.missing_mf));
    lines.push_back("potential_pf = " + fmt(pf));
    lines.push_back("realized_rf = " + fmt(rf));
    lines.push_back("fidelity_fi = " + fmt(fi));
    write_lines((fs::path(out_dir) / "summary.txt").string(), lines);
    return kOk;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"conflab: multi-agent interoperability simulator and measurement tool"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    std::string samples_path;
    std::string reference_path;
    std::string implemented_path;
    std::string grid_spec = "0:1:0.1";
    std::string criterion = "youden";
    std::uint32_t seeds = 20;
    std::uint64_t seed_override_value = 0;

    CLI::App* run = app.add_subcommand("run", "run one scenario from a config file");
    run->add_option("--config", config_path, "scenario config (JSON)")->required();
    run->add_option("--out", out_dir, "output directory")->required();
    CLI::Option* run_seed = run->add_option("--seed-override", seed_override_value,
                                            "replace the config seed");

    CLI::App* sweep = app.add_subcommand("sweep", "sweep shared_fraction over a grid");
    sweep->add_option("--config", config_path, "scenario config (JSON)")->required();
    sweep->add_option("--out", out_dir, "output directory")->required();
    sweep->add_option("--grid", grid_spec, "grid as start:stop:step (default 0:1:0.1)");
    sweep->add_option("--seeds", seeds, "seeds per grid point (default 20)");
    CLI::Option* sweep_seed = sweep->add_option("--seed-override", seed_override_value,
                                                "replace the config seed");

    CLI::App* roc = app.add_subcommand("roc", "ROC/AUC analysis of a labelled sample CSV");
    roc->add_option("samples", samples_path, "CSV with columns marker,suitable")->required();
    roc->add_option("--out", out_dir, "output directory")->required();
    roc->add_option("--criterion", criterion, "cutoff criterion: youden or min-error");

    CLI::App* fitness = app.add_subcommand("fitness", "fitness decomposition of two curves");
    fitness->add_option("reference", reference_path, "reference curve CSV")->required();
    fitness->add_option("implemented", implemented_path, "implemented curve CSV")->required();
    fitness->add_option("--out", out_dir, "output directory")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kInputError;
    }

    std::optional<std::uint64_t> seed_override;
    if (run->parsed() && run_seed->count() > 0) seed_override = seed_override_value;
    if (sweep->parsed() && sweep_seed->count() > 0) seed_override = seed_override_value;

    if (run->parsed()) return cmd_run(config_path, out_dir, seed_override);
    if (sweep->parsed()) return cmd_sweep(config_path, out_dir, grid_spec, seeds, seed_override);
    if (roc->parsed()) return cmd_roc(samples_path, out_dir, criterion);
    if (fitness->parsed()) return cmd_fitness(reference_path, implemented_path, out_dir);
    return kInputError;
}

}  // namespace
}  // namespace conflab::cli

int main(int argc, char** argv) {
    using namespace conflab;
    using namespace conflab::cli;
    try {
        return dispatch(argc, argv);
    } catch (const ConfigError& e) {
        std::cerr << "configuration error:\n";
        for (const auto& field : e.fields()) std::cerr << "  " << field << "\n";
        return kInputError;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kRuntimeError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kRuntimeError;
    }
}

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "vqcb/bench.hpp"
#include "vqcb/dataset.hpp"
#include "vqcb/errors.hpp"

namespace {

using vqcb::BenchReport;
using vqcb::StageConfig;
using vqcb::StageId;

std::vector<StageId> parse_stage_list(const std::string& csv) {
    std::vector<StageId> stages;
    std::string token;
    std::stringstream stream(csv);
    while (std::getline(stream, token, ',')) {
        if (!token.empty()) stages.push_back(vqcb::stage_from_letter(token));
    }
    if (stages.empty()) throw vqcb::ConfigError("no stages given");
    return stages;
}

std::pair<int, int> parse_qubit_range(const std::string& text) {
    const auto colon = text.find(':');
    try {
        if (colon == std::string::npos) {
            const int n = std::stoi(text);
            return {n, n};
        }
        return {std::stoi(text.substr(0, colon)), std::stoi(text.substr(colon + 1))};
    } catch (const std::exception&) {
        throw vqcb::ConfigError("qubit range must look like 2:8, got '" + text + "'");
    }
}

double median_of(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

void print_report_line(const BenchReport& r) {
    std::cout << "stage " << vqcb::stage_letter(r.stage.stage_id) << ": n_qubits="
              << r.stage.n_qubits << " depth=" << r.stage.depth << " n_params=" << r.n_params
              << " train_acc=" << r.train.accuracy << " test_acc=" << r.test.accuracy
              << " wall=" << r.wall_time_s << "s\n";
}

int cmd_run(const std::string& stage, const std::string& data, std::uint64_t data_seed,
            std::uint64_t opt_seed, int maxiter, long shots, const std::string& out_dir) {
    StageConfig cfg = vqcb::stage_config_for(vqcb::stage_from_letter(stage));
    cfg.data_seed = data_seed;
    cfg.opt_seed = opt_seed;
    cfg.optimizer.max_iterations = maxiter;
    cfg.shots = shots;

    const BenchReport report = vqcb::run_stage(cfg, data);
    print_report_line(report);
    const std::string path = vqcb::write_stage_report(report, out_dir);
    std::cout << "wrote " << path << '\n';
    return 0;
}

int cmd_sweep(const std::string& stages_csv, int opt_seeds, const std::string& data,
              std::uint64_t data_seed, int maxiter, const std::string& out_dir) {
    if (opt_seeds < 1) throw vqcb::ConfigError("--opt-seeds must be at least 1");
    const std::vector<StageId> stages = parse_stage_list(stages_csv);
    const std::vector<vqcb::EventRecord> records = vqcb::load_atlas_csv(data);

    nlohmann::json summary;
    for (StageId id : stages) {
        std::vector<double> accuracies;
        for (int seed = 0; seed < opt_seeds; ++seed) {
            StageConfig cfg = vqcb::stage_config_for(id);
            cfg.data_seed = data_seed;
            cfg.opt_seed = static_cast<std::uint64_t>(seed);
            cfg.optimizer.max_iterations = maxiter;
            const BenchReport report = vqcb::run_stage(cfg, records);
            print_report_line(report);
            vqcb::write_stage_report(report, out_dir, /*tag_opt_seed=*/true);
            accuracies.push_back(report.test.accuracy);
        }
        const std::string letter(1, vqcb::stage_letter(id));
        summary[letter] = {{"test_accuracies", accuracies},
                           {"median_test_accuracy", median_of(accuracies)}};
        std::cout << "stage " << letter << " median test_acc=" << median_of(accuracies) << '\n';
    }

    std::filesystem::create_directories(out_dir);
    const std::filesystem::path path = std::filesystem::path(out_dir) / "sweep_summary.json";
    std::ofstream out(path);
    if (!out) throw vqcb::IoError("cannot write " + path.string());
    out << summary.dump(2) << '\n';
    std::cout << "wrote " << path.string() << '\n';
    return 0;
}

int cmd_plateau(const std::string& qubits, long samples, std::uint64_t seed,
                const std::string& out_dir) {
    const auto [lo, hi] = parse_qubit_range(qubits);
    const vqcb::PlateauReport report = vqcb::run_plateau_probe(lo, hi, samples, seed);
    for (const auto& e : report.entries) {
        std::cout << "n=" << e.n_qubits << " variance=" << e.variance
                  << (e.degenerate ? " (degenerate, excluded from fit)" : "") << '\n';
    }
    std::cout << "slope of log2(variance) vs n: " << report.slope << '\n';
    const std::string path = vqcb::write_plateau_csv(report, out_dir);
    std::cout << "wrote " << path << '\n';
    return 0;
}

int cmd_ingest_check(const std::string& data) {
    const std::vector<vqcb::EventRecord> records = vqcb::load_atlas_csv(data);
    long signal = 0;
    long sentinel_cells = 0;
    for (const auto& r : records) {
        signal += r.label;
        for (double v : r.features) {
            if (v == vqcb::kSentinel) ++sentinel_cells;
        }
    }
    std::cout << "records:        " << records.size() << '\n'
              << "signal:         " << signal << '\n'
              << "background:     " << records.size() - static_cast<std::size_t>(signal) << '\n'
              << "sentinel cells: " << sentinel_cells << '\n'
              << "ingest OK\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Variational quantum classifier benchmark suite"};
    app.require_subcommand(1);

    std::string stage = "A";
    std::string stages_csv = "A,B,C";
    std::string data;
    std::string out_dir = "out";
    std::string qubits = "2:8";
    std::uint64_t data_seed = 42;
    std::uint64_t opt_seed = 0;
    std::uint64_t plateau_seed = 0;
    int maxiter = 100;
    int opt_seeds = 5;
    long shots = 0;
    long samples = 200;

    CLI::App* run = app.add_subcommand("run", "Train and evaluate one benchmark stage");
    run->add_option("--stage", stage, "Stage letter: A, B, or C")->required();
    run->add_option("--data", data, "ATLAS Higgs challenge CSV")->required();
    run->add_option("--data-seed", data_seed, "Sampling and split seed")->capture_default_str();
    run->add_option("--opt-seed", opt_seed, "Optimizer seed")->capture_default_str();
    run->add_option("--maxiter", maxiter, "Optimizer evaluation budget")->capture_default_str();
    run->add_option("--shots", shots, "Readout shots for evaluation; 0 = exact expectations")
        ->capture_default_str();
    run->add_option("--out", out_dir, "Output directory")->capture_default_str();

    CLI::App* sweep = app.add_subcommand("sweep", "Run stages across several optimizer seeds");
    sweep->add_option("--stages", stages_csv, "Comma-separated stage letters")
        ->capture_default_str();
    sweep->add_option("--opt-seeds", opt_seeds, "Number of optimizer seeds (0..N-1)")
        ->capture_default_str();
    sweep->add_option("--data", data, "ATLAS Higgs challenge CSV")->required();
    sweep->add_option("--data-seed", data_seed, "Sampling and split seed")->capture_default_str();
    sweep->add_option("--maxiter", maxiter, "Optimizer evaluation budget")->capture_default_str();
    sweep->add_option("--out", out_dir, "Output directory")->capture_default_str();

    CLI::App* plateau = app.add_subcommand("plateau", "Gradient-variance scan over circuit widths");
    plateau->add_option("--qubits", qubits, "Width range lo:hi")->capture_default_str();
    plateau->add_option("--samples", samples, "Parameter samples per width")->capture_default_str();
    plateau->add_option("--seed", plateau_seed, "Probe seed")->capture_default_str();
    plateau->add_option("--out", out_dir, "Output directory")->capture_default_str();

    CLI::App* ingest = app.add_subcommand("ingest-check", "Parse a CSV and print dataset counts");
    ingest->add_option("--data", data, "ATLAS Higgs challenge CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(stage, data, data_seed, opt_seed, maxiter, shots, out_dir);
        if (sweep->parsed())
            return cmd_sweep(stages_csv, opt_seeds, data, data_seed, maxiter, out_dir);
        if (plateau->parsed()) return cmd_plateau(qubits, samples, plateau_seed, out_dir);
        if (ingest->parsed()) return cmd_ingest_check(data);
    } catch (const vqcb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const vqcb::DataError& e) {
        std::cerr << "data error: " << e.what() << '\n';
        return 3;
    } catch (const vqcb::IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vqcb/dataset.hpp"
#include "vqcb/optimize.hpp"
#include "vqcb/preprocess.hpp"
#include "vqcb/vqc.hpp"

namespace vqcb {

enum class StageId { A, B, C };

char stage_letter(StageId id);
StageId stage_from_letter(const std::string& letter);

// One benchmark configuration: latent width, circuit depth, and every seed
// needed to reproduce the run. run_stage copies opt_seed into the optimizer
// config, so the two never drift apart.
struct StageConfig {
    StageId stage_id = StageId::A;
    int n_qubits = 4;          // PCA latent dimension = circuit width
    int depth = 1;             // ansatz entangling repetitions
    int feature_map_reps = 1;
    OptimizerConfig optimizer; // Cobyla, 100-evaluation budget by default
    std::uint64_t data_seed = 42;
    std::uint64_t opt_seed = 0;
    std::size_t per_class = 400;
    double test_fraction = 0.2;
    long shots = 0;            // 0 = exact expectations; >0 samples the readout
};

// A = narrow shallow, B = narrow deep, C = wide shallow.
StageConfig stage_config_for(StageId id);

// One test event projected onto the first two latent components.
struct ScatterRow {
    double pc1 = 0.0;
    double pc2 = 0.0;
    int true_label = 0;
    int predicted_label = 0;
};

struct BenchReport {
    StageConfig stage;
    int n_params = 0;
    Metrics train;
    Metrics test;
    std::vector<std::pair<long, double>> loss_history;
    double wall_time_s = 0.0;
    std::vector<ScatterRow> scatter;  // test partition only
};

struct PlateauEntry {
    int n_qubits = 0;
    double variance = 0.0;
    long samples = 0;
    bool degenerate = false;  // all sampled gradients exactly zero
};

struct PlateauReport {
    std::vector<PlateauEntry> entries;
    double slope = 0.0;  // least-squares slope of log2(variance) vs n
    std::uint64_t seed = 0;
};

// Full pipeline on pre-loaded records: impute -> balanced sample ->
// stratified split -> scale -> PCA -> train -> evaluate both partitions.
// Deterministic per (data_seed, opt_seed) apart from wall_time_s.
BenchReport run_stage(const StageConfig& cfg, const std::vector<EventRecord>& records);

// Convenience overload that loads the CSV first.
BenchReport run_stage(const StageConfig& cfg, const std::string& data_path);

// Gradient-variance scan: for each n in [n_lo, n_hi], encode one fixed
// input, draw `samples` uniform parameter vectors, measure the
// parameter-shift derivative of the parity expectation with respect to the
// first parameter, and record its variance. Zero-variance rows are flagged
// and left out of the slope fit.
PlateauReport run_plateau_probe(int n_lo, int n_hi, long samples, std::uint64_t seed);

// Writes report_<stage>.json and scatter_<stage>.csv into out_dir; with
// tag_opt_seed the names gain an _s<seed> suffix so sweep runs never
// collide. Returns the JSON path.
std::string write_stage_report(const BenchReport& report, const std::string& out_dir,
                               bool tag_opt_seed = false);

// Writes plateau.csv (header n,variance) into out_dir and returns its path.
std::string write_plateau_csv(const PlateauReport& report, const std::string& out_dir);

void emit_reports(const std::vector<BenchReport>& reports, const std::string& out_dir,
                  bool tag_opt_seed = false);

// Re-reads a report JSON written by write_stage_report (scatter rows live
// in the CSV and are not restored).
BenchReport load_report(const std::string& path);

}  // namespace vqcb

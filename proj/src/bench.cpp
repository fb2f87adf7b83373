#include "vqcb/bench.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "json.hpp"
#include "vqcb/circuits.hpp"
#include "vqcb/errors.hpp"
#include "vqcb/rng.hpp"
#include "vqcb/statevector.hpp"

namespace vqcb {

namespace {

using nlohmann::json;

std::vector<int> labels_of(const std::vector<EventRecord>& rows) {
    std::vector<int> labels;
    labels.reserve(rows.size());
    for (const auto& r : rows) labels.push_back(r.label);
    return labels;
}

VqcModel stage_model(const StageConfig& cfg) {
    VqcModel model;
    model.feature_map = FeatureMapSpec{cfg.n_qubits, cfg.feature_map_reps, Entanglement::Full};
    model.ansatz = AnsatzSpec{cfg.n_qubits, cfg.depth, Entanglement::Linear};
    model.theta.assign(model.ansatz.parameter_count(), 0.0);
    return model;
}

// Shot-noise variant of evaluate, used only when cfg.shots > 0.
Metrics evaluate_sampled(const VqcModel& model, const Matrix& z, const std::vector<int>& y,
                         long shots, std::mt19937_64& rng, std::vector<int>* predictions) {
    Metrics metrics;
    metrics.n_events = static_cast<long>(z.rows);
    for (std::size_t i = 0; i < z.rows; ++i) {
        std::vector<double> row(z.cols);
        for (std::size_t j = 0; j < z.cols; ++j) row[j] = z.at(i, j);
        const double p = forward_sampled(model, row, shots, rng);
        const int pred = p >= model.threshold ? 1 : 0;
        const int truth = y[i] == 1 ? 1 : 0;
        ++metrics.confusion[truth][pred];
        if (predictions) predictions->push_back(pred);
    }
    metrics.accuracy =
        static_cast<double>(metrics.confusion[0][0] + metrics.confusion[1][1]) /
        static_cast<double>(metrics.n_events);
    return metrics;
}

void read_confusion(const json& c, Metrics& m) {
    for (int t = 0; t < 2; ++t)
        for (int p = 0; p < 2; ++p) m.confusion[t][p] = c.at(t).at(p).get<long>();
}

std::string report_basename(const BenchReport& report, bool tag_opt_seed) {
    std::string base(1, stage_letter(report.stage.stage_id));
    if (tag_opt_seed) base += "_s" + std::to_string(report.stage.opt_seed);
    return base;
}

}  // namespace

char stage_letter(StageId id) {
    switch (id) {
        case StageId::A: return 'A';
        case StageId::B: return 'B';
        case StageId::C: return 'C';
    }
    throw ConfigError("unknown stage id");
}

StageId stage_from_letter(const std::string& letter) {
    if (letter == "A" || letter == "a") return StageId::A;
    if (letter == "B" || letter == "b") return StageId::B;
    if (letter == "C" || letter == "c") return StageId::C;
    throw ConfigError("stage must be A, B, or C, got '" + letter + "'");
}

StageConfig stage_config_for(StageId id) {
    StageConfig cfg;
    cfg.stage_id = id;
    switch (id) {
        case StageId::A:
            cfg.n_qubits = 4;
            cfg.depth = 1;
            break;
        case StageId::B:
            cfg.n_qubits = 4;
            cfg.depth = 2;
            break;
        case StageId::C:
            cfg.n_qubits = 8;
            cfg.depth = 1;
            break;
    }
    cfg.optimizer.method = OptMethod::Cobyla;
    cfg.optimizer.max_iterations = 100;
    return cfg;
}

BenchReport run_stage(const StageConfig& cfg, const std::vector<EventRecord>& records) {
    const auto start = std::chrono::steady_clock::now();

    const ImputeResult imputed = impute_median(records);
    const std::vector<EventRecord> sampled =
        balanced_sample(imputed.rows, cfg.per_class, cfg.data_seed);
    const SplitResult split = stratified_split(sampled, cfg.test_fraction, cfg.data_seed);

    const Matrix train_raw = features_matrix(split.train);
    const Matrix test_raw = features_matrix(split.test);
    const std::vector<int> y_train = labels_of(split.train);
    const std::vector<int> y_test = labels_of(split.test);

    // Scaler and PCA see only the training partition.
    const ScalerModel scaler = scaler_fit(train_raw);
    const Matrix train_scaled = scaler_apply(scaler, train_raw);
    const Matrix test_scaled = scaler_apply(scaler, test_raw);
    const PcaModel pca = pca_fit(train_scaled, cfg.n_qubits);
    const Matrix z_train = pca_project(pca, train_scaled);
    const Matrix z_test = pca_project(pca, test_scaled);

    OptimizerConfig opt = cfg.optimizer;
    opt.seed = cfg.opt_seed;

    const FitOutcome outcome = fit(stage_model(cfg), z_train, y_train, opt);

    BenchReport report;
    report.stage = cfg;
    report.stage.optimizer = outcome.opt.config;
    report.n_params = outcome.model.ansatz.parameter_count();
    report.loss_history = outcome.opt.loss_history;

    std::vector<int> test_predictions;
    if (cfg.shots > 0) {
        std::mt19937_64 shot_rng(cfg.opt_seed);
        report.train = evaluate_sampled(outcome.model, z_train, y_train, cfg.shots, shot_rng, nullptr);
        report.test = evaluate_sampled(outcome.model, z_test, y_test, cfg.shots, shot_rng,
                                       &test_predictions);
    } else {
        report.train = evaluate(outcome.model, z_train, y_train);
        report.test = evaluate(outcome.model, z_test, y_test);
        const std::vector<double> probs = predict_probabilities(outcome.model, z_test);
        test_predictions.reserve(probs.size());
        for (double p : probs) test_predictions.push_back(p >= outcome.model.threshold ? 1 : 0);
    }

    report.scatter.reserve(z_test.rows);
    for (std::size_t i = 0; i < z_test.rows; ++i) {
        ScatterRow row;
        row.pc1 = z_test.at(i, 0);
        row.pc2 = z_test.cols > 1 ? z_test.at(i, 1) : 0.0;
        row.true_label = y_test[i];
        row.predicted_label = test_predictions[i];
        report.scatter.push_back(row);
    }

    report.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return report;
}

BenchReport run_stage(const StageConfig& cfg, const std::string& data_path) {
    try {
        return run_stage(cfg, load_atlas_csv(data_path));
    } catch (const DataError& e) {
        throw DataError("stage " + std::string(1, stage_letter(cfg.stage_id)) + ": " + e.what());
    }
}

PlateauReport run_plateau_probe(int n_lo, int n_hi, long samples, std::uint64_t seed) {
    if (n_lo < 1 || n_hi < n_lo) throw ConfigError("qubit range must satisfy 1 <= lo <= hi");
    if (samples < 50) throw ConfigError("plateau probe needs at least 50 samples");

    PlateauReport report;
    report.seed = seed;

    for (int n = n_lo; n <= n_hi; ++n) {
        // Independent stream per width, so adding widths never reshuffles
        // the existing ones.
        std::mt19937_64 rng(seed ^ (0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(n)));

        std::vector<double> z(n);
        for (double& v : z) v = uniform_unit(rng);

        const FeatureMapSpec fm_spec{n, 1, Entanglement::Full};
        const AnsatzSpec ansatz_spec{n, 1, Entanglement::Linear};
        const Circuit symbolic = build_ansatz(ansatz_spec);
        const StateVector encoded = run_circuit(build_feature_map(fm_spec, z), init_zero_state(n));

        const auto expectation = [&](const ParamVector& theta) {
            return parity_expectation(run_circuit(bind_parameters(symbolic, theta), encoded));
        };

        const int n_params = ansatz_spec.parameter_count();
        double sum = 0.0;
        double sum_sq = 0.0;
        for (long s = 0; s < samples; ++s) {
            ParamVector theta(n_params);
            for (double& t : theta) t = uniform_range(rng, 0.0, 2.0 * std::numbers::pi);
            const double g = parameter_shift_gradient(expectation, theta, 0);
            sum += g;
            sum_sq += g * g;
        }
        const double mean = sum / static_cast<double>(samples);
        double variance = (sum_sq - static_cast<double>(samples) * mean * mean) /
                          static_cast<double>(samples - 1);
        if (variance < 0.0) variance = 0.0;  // rounding guard

        PlateauEntry entry;
        entry.n_qubits = n;
        entry.samples = samples;
        entry.degenerate = variance == 0.0;
        entry.variance = variance;
        report.entries.push_back(entry);
    }

    // Least-squares slope of log2(variance) against n over the usable rows.
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    long count = 0;
    for (const auto& e : report.entries) {
        if (e.degenerate) continue;
        const double x = static_cast<double>(e.n_qubits);
        const double y = std::log2(e.variance);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++count;
    }
    if (count >= 2) {
        const double denom = static_cast<double>(count) * sxx - sx * sx;
        report.slope = (static_cast<double>(count) * sxy - sx * sy) / denom;
    }
    return report;
}

std::string write_stage_report(const BenchReport& report, const std::string& out_dir,
                               bool tag_opt_seed) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    const std::string base = report_basename(report, tag_opt_seed);

    json j;
    j["stage"] = std::string(1, stage_letter(report.stage.stage_id));
    j["n_qubits"] = report.stage.n_qubits;
    j["reps"] = report.stage.depth;
    j["feature_map_reps"] = report.stage.feature_map_reps;
    j["n_params"] = report.n_params;
    j["train_accuracy"] = report.train.accuracy;
    j["test_accuracy"] = report.test.accuracy;
    j["confusion_matrix"] = {{report.test.confusion[0][0], report.test.confusion[0][1]},
                             {report.test.confusion[1][0], report.test.confusion[1][1]}};
    j["train_confusion_matrix"] = {{report.train.confusion[0][0], report.train.confusion[0][1]},
                                   {report.train.confusion[1][0], report.train.confusion[1][1]}};
    j["train_events"] = report.train.n_events;
    j["test_events"] = report.test.n_events;
    json history = json::array();
    for (const auto& [index, value] : report.loss_history) history.push_back({index, value});
    j["loss_history"] = history;
    j["seeds"] = {{"data", report.stage.data_seed}, {"opt", report.stage.opt_seed}};
    j["maxiter"] = report.stage.optimizer.max_iterations;
    j["shots"] = report.stage.shots;
    j["wall_time_s"] = report.wall_time_s;

    const fs::path json_path = fs::path(out_dir) / ("report_" + base + ".json");
    {
        std::ofstream out(json_path);
        if (!out) throw IoError("cannot write " + json_path.string());
        out << j.dump(2) << '\n';
    }

    const fs::path csv_path = fs::path(out_dir) / ("scatter_" + base + ".csv");
    {
        std::ofstream out(csv_path);
        if (!out) throw IoError("cannot write " + csv_path.string());
        out << "pc1,pc2,true_label,predicted_label\n";
        out.precision(17);
        for (const auto& row : report.scatter) {
            out << row.pc1 << ',' << row.pc2 << ',' << row.true_label << ','
                << row.predicted_label << '\n';
        }
    }
    return json_path.string();
}

std::string write_plateau_csv(const PlateauReport& report, const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec) throw IoError("cannot create " + out_dir + ": " + ec.message());

    const fs::path path = fs::path(out_dir) / "plateau.csv";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << "n,variance\n";
    out.precision(17);
    for (const auto& e : report.entries) out << e.n_qubits << ',' << e.variance << '\n';
    return path.string();
}

void emit_reports(const std::vector<BenchReport>& reports, const std::string& out_dir,
                  bool tag_opt_seed) {
    for (const auto& report : reports) write_stage_report(report, out_dir, tag_opt_seed);
}

BenchReport load_report(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw DataError(path + ": " + e.what());
    }

    BenchReport report;
    report.stage = stage_config_for(stage_from_letter(j.at("stage").get<std::string>()));
    report.stage.n_qubits = j.at("n_qubits").get<int>();
    report.stage.depth = j.at("reps").get<int>();
    report.stage.feature_map_reps = j.at("feature_map_reps").get<int>();
    report.stage.data_seed = j.at("seeds").at("data").get<std::uint64_t>();
    report.stage.opt_seed = j.at("seeds").at("opt").get<std::uint64_t>();
    report.stage.optimizer.max_iterations = j.at("maxiter").get<int>();
    report.stage.optimizer.seed = report.stage.opt_seed;
    report.stage.shots = j.at("shots").get<long>();
    report.n_params = j.at("n_params").get<int>();

    report.train.accuracy = j.at("train_accuracy").get<double>();
    report.train.n_events = j.at("train_events").get<long>();
    read_confusion(j.at("train_confusion_matrix"), report.train);
    report.test.accuracy = j.at("test_accuracy").get<double>();
    report.test.n_events = j.at("test_events").get<long>();
    read_confusion(j.at("confusion_matrix"), report.test);

    for (const auto& pair : j.at("loss_history")) {
        report.loss_history.emplace_back(pair.at(0).get<long>(), pair.at(1).get<double>());
    }
    report.wall_time_s = j.at("wall_time_s").get<double>();
    return report;
}

}  // namespace vqcb

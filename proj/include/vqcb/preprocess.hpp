#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace vqcb {

inline constexpr int kNumFeatures = 30;
inline constexpr double kSentinel = -999.0;

// One collision event: 30 raw physical quantities plus bookkeeping fields.
// The weight is carried through but never enters any loss.
struct EventRecord {
    long event_id = 0;
    std::array<double, kNumFeatures> features{};
    int label = 0;  // 0 = background, 1 = signal
    double weight = 0.0;
};

// Dense row-major matrix, sized for hundreds of rows by tens of columns.
struct Matrix {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data;

    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
    double at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

// Per-feature min/max fitted on training rows only.
struct ScalerModel {
    std::vector<double> min;
    std::vector<double> max;
};

// Mean vector, top-k eigenvector columns, and their eigenvalues (descending).
struct PcaModel {
    std::vector<double> mean;        // length = input cols
    Matrix components;               // input cols x k, orthonormal columns
    std::vector<double> eigenvalues; // length k, descending, non-negative
};

struct ImputeResult {
    std::vector<EventRecord> rows;
    std::array<double, kNumFeatures> medians{};
};

struct SplitResult {
    std::vector<EventRecord> train;
    std::vector<EventRecord> test;
};

// Replaces every -999.0 sentinel by the median of that feature's
// non-sentinel values (0 if the whole column is sentinel).
ImputeResult impute_median(const std::vector<EventRecord>& rows);

// Feature block of the rows as a rows x 30 matrix.
Matrix features_matrix(const std::vector<EventRecord>& rows);

ScalerModel scaler_fit(const Matrix& train);
// (x - min) / (max - min) per column; constant columns map to 0. Values are
// never clipped, so out-of-range test data lands outside [0, 1].
Matrix scaler_apply(const ScalerModel& model, const Matrix& rows);

// Sample covariance (divisor N-1) of mean-centered columns, eigendecomposed
// by a cyclic Jacobi solver. Top-k eigenpairs kept, eigenvalues descending,
// each component's largest-magnitude entry made positive.
PcaModel pca_fit(const Matrix& train, int k);
// z = (x - mean) W_k.
Matrix pca_project(const PcaModel& model, const Matrix& rows);

// Eigendecomposition of a symmetric matrix (values descending, vectors as
// columns). Exposed for reuse and direct testing.
void symmetric_eigen(const Matrix& sym, std::vector<double>& values, Matrix& vectors);

// Exactly per_class rows of each label, drawn without replacement,
// background block first. Deterministic per seed.
std::vector<EventRecord> balanced_sample(const std::vector<EventRecord>& rows,
                                         std::size_t per_class, std::uint64_t seed);

// Per-class test counts are round(class_size * test_fraction). No row lands
// in both partitions. Deterministic per seed.
SplitResult stratified_split(const std::vector<EventRecord>& rows,
                             double test_fraction, std::uint64_t seed);

// Latent-space CSV with header pc1,...,pck,label.
void write_latent_csv(const std::string& path, const Matrix& latent,
                      const std::vector<int>& labels);

}  // namespace vqcb

#include "vqcb/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <random>

#include "vqcb/errors.hpp"
#include "vqcb/rng.hpp"

namespace vqcb {

ImputeResult impute_median(const std::vector<EventRecord>& rows) {
    if (rows.empty()) throw DataError("impute_median: empty input");

    ImputeResult result;
    result.rows = rows;
    std::vector<double> column;
    column.reserve(rows.size());
    for (int f = 0; f < kNumFeatures; ++f) {
        column.clear();
        for (const auto& row : rows) {
            if (row.features[f] != kSentinel) column.push_back(row.features[f]);
        }
        double median = 0.0;
        if (!column.empty()) {
            std::sort(column.begin(), column.end());
            const std::size_t n = column.size();
            median = (n % 2 == 1) ? column[n / 2]
                                  : 0.5 * (column[n / 2 - 1] + column[n / 2]);
        }
        result.medians[f] = median;
        for (auto& row : result.rows) {
            if (row.features[f] == kSentinel) row.features[f] = median;
        }
    }
    return result;
}

Matrix features_matrix(const std::vector<EventRecord>& rows) {
    Matrix m(rows.size(), kNumFeatures);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int f = 0; f < kNumFeatures; ++f) m.at(i, f) = rows[i].features[f];
    return m;
}

ScalerModel scaler_fit(const Matrix& train) {
    if (train.rows == 0) throw DataError("scaler_fit: empty training matrix");
    ScalerModel model;
    model.min.assign(train.cols, 0.0);
    model.max.assign(train.cols, 0.0);
    for (std::size_t j = 0; j < train.cols; ++j) {
        double lo = train.at(0, j), hi = train.at(0, j);
        for (std::size_t i = 1; i < train.rows; ++i) {
            lo = std::min(lo, train.at(i, j));
            hi = std::max(hi, train.at(i, j));
        }
        model.min[j] = lo;
        model.max[j] = hi;
    }
    return model;
}

Matrix scaler_apply(const ScalerModel& model, const Matrix& rows) {
    if (rows.cols != model.min.size()) {
        throw DataError("scaler_apply: column count mismatch");
    }
    Matrix out(rows.rows, rows.cols);
    for (std::size_t j = 0; j < rows.cols; ++j) {
        const double span = model.max[j] - model.min[j];
        for (std::size_t i = 0; i < rows.rows; ++i) {
            out.at(i, j) = span > 0.0 ? (rows.at(i, j) - model.min[j]) / span : 0.0;
        }
    }
    return out;
}

void symmetric_eigen(const Matrix& sym, std::vector<double>& values, Matrix& vectors) {
    const std::size_t n = sym.rows;
    if (sym.cols != n) throw DataError("symmetric_eigen: matrix is not square");

    Matrix a = sym;
    vectors = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) vectors.at(i, i) = 1.0;

    // Cyclic Jacobi sweeps; each rotation zeroes one off-diagonal pair.
    for (int sweep = 0; sweep < 128; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a.at(p, q) * a.at(p, q);
        if (off < 1e-28) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a.at(p, q);
                if (std::abs(apq) < 1e-300) continue;
                const double tau = (a.at(q, q) - a.at(p, p)) / (2.0 * apq);
                const double t = (tau >= 0.0)
                                     ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                                     : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                for (std::size_t i = 0; i < n; ++i) {
                    const double aip = a.at(i, p), aiq = a.at(i, q);
                    a.at(i, p) = c * aip - s * aiq;
                    a.at(i, q) = s * aip + c * aiq;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double api = a.at(p, i), aqi = a.at(q, i);
                    a.at(p, i) = c * api - s * aqi;
                    a.at(q, i) = s * api + c * aqi;
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = vectors.at(i, p), viq = vectors.at(i, q);
                    vectors.at(i, p) = c * vip - s * viq;
                    vectors.at(i, q) = s * vip + c * viq;
                }
            }
        }
    }

    values.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) values[i] = a.at(i, i);

    // Sort eigenpairs by descending eigenvalue.
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return values[x] > values[y]; });

    std::vector<double> sorted_values(n);
    Matrix sorted_vectors(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_values[j] = values[order[j]];
        for (std::size_t i = 0; i < n; ++i)
            sorted_vectors.at(i, j) = vectors.at(i, order[j]);
    }
    values = std::move(sorted_values);
    vectors = std::move(sorted_vectors);
}

PcaModel pca_fit(const Matrix& train, int k) {
    if (k < 1 || static_cast<std::size_t>(k) > train.cols) {
        throw ConfigError("pca_fit: k must be in [1, " + std::to_string(train.cols) +
                          "], got " + std::to_string(k));
    }
    if (train.rows < 2) throw DataError("pca_fit: need at least 2 rows");

    const std::size_t n = train.cols;
    PcaModel model;
    model.mean.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < train.rows; ++i) sum += train.at(i, j);
        model.mean[j] = sum / static_cast<double>(train.rows);
    }

    Matrix cov(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a; b < n; ++b) {
            double sum = 0.0;
            for (std::size_t i = 0; i < train.rows; ++i) {
                sum += (train.at(i, a) - model.mean[a]) * (train.at(i, b) - model.mean[b]);
            }
            const double value = sum / static_cast<double>(train.rows - 1);
            cov.at(a, b) = value;
            cov.at(b, a) = value;
        }
    }

    std::vector<double> values;
    Matrix vectors;
    symmetric_eigen(cov, values, vectors);

    model.eigenvalues.assign(values.begin(), values.begin() + k);
    for (auto& v : model.eigenvalues) {
        if (v < 0.0 && v > -1e-10) v = 0.0;  // rounding on rank-deficient inputs
    }
    model.components = Matrix(n, static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        // Fix the sign ambiguity: largest-magnitude entry positive.
        std::size_t arg = 0;
        double best = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(vectors.at(i, j)) > best) {
                best = std::abs(vectors.at(i, j));
                arg = i;
            }
        }
        const double sign = vectors.at(arg, j) < 0.0 ? -1.0 : 1.0;
        for (std::size_t i = 0; i < n; ++i)
            model.components.at(i, j) = sign * vectors.at(i, j);
    }
    return model;
}

Matrix pca_project(const PcaModel& model, const Matrix& rows) {
    if (rows.cols != model.mean.size()) {
        throw DataError("pca_project: column count mismatch");
    }
    const std::size_t k = model.components.cols;
    Matrix out(rows.rows, k);
    for (std::size_t i = 0; i < rows.rows; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            double sum = 0.0;
            for (std::size_t f = 0; f < rows.cols; ++f) {
                sum += (rows.at(i, f) - model.mean[f]) * model.components.at(f, j);
            }
            out.at(i, j) = sum;
        }
    }
    return out;
}

std::vector<EventRecord> balanced_sample(const std::vector<EventRecord>& rows,
                                         std::size_t per_class, std::uint64_t seed) {
    std::vector<std::size_t> background, signal;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        (rows[i].label == 1 ? signal : background).push_back(i);
    }
    if (background.size() < per_class || signal.size() < per_class) {
        throw DataError("balanced_sample: need " + std::to_string(per_class) +
                        " rows per class, have " + std::to_string(background.size()) +
                        " background / " + std::to_string(signal.size()) + " signal");
    }
    std::mt19937_64 rng(seed);
    shuffle_inplace(background, rng);
    shuffle_inplace(signal, rng);
    background.resize(per_class);
    signal.resize(per_class);
    std::sort(background.begin(), background.end());
    std::sort(signal.begin(), signal.end());

    std::vector<EventRecord> out;
    out.reserve(2 * per_class);
    for (auto i : background) out.push_back(rows[i]);
    for (auto i : signal) out.push_back(rows[i]);
    return out;
}

SplitResult stratified_split(const std::vector<EventRecord>& rows,
                             double test_fraction, std::uint64_t seed) {
    if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
        throw ConfigError("stratified_split: test_fraction must be in (0, 1)");
    }
    std::vector<std::size_t> by_class[2];
    for (std::size_t i = 0; i < rows.size(); ++i) {
        by_class[rows[i].label == 1 ? 1 : 0].push_back(i);
    }

    std::mt19937_64 rng(seed);
    SplitResult split;
    for (auto& indices : by_class) {
        const std::size_t n_test = static_cast<std::size_t>(
            std::llround(static_cast<double>(indices.size()) * test_fraction));
        shuffle_inplace(indices, rng);
        std::vector<std::size_t> test_idx(indices.begin(), indices.begin() + n_test);
        std::vector<std::size_t> train_idx(indices.begin() + n_test, indices.end());
        std::sort(test_idx.begin(), test_idx.end());
        std::sort(train_idx.begin(), train_idx.end());
        for (auto i : test_idx) split.test.push_back(rows[i]);
        for (auto i : train_idx) split.train.push_back(rows[i]);
    }
    return split;
}

void write_latent_csv(const std::string& path, const Matrix& latent,
                      const std::vector<int>& labels) {
    if (latent.rows != labels.size()) {
        throw DataError("write_latent_csv: latent rows and labels disagree");
    }
    std::ofstream out(path);
    if (!out) throw DataError("write_latent_csv: cannot open " + path);
    for (std::size_t j = 0; j < latent.cols; ++j) out << "pc" << (j + 1) << ",";
    out << "label\n";
    out.precision(17);
    for (std::size_t i = 0; i < latent.rows; ++i) {
        for (std::size_t j = 0; j < latent.cols; ++j) out << latent.at(i, j) << ",";
        out << labels[i] << "\n";
    }
    if (!out) throw DataError("write_latent_csv: write failed for " + path);
}

}  // namespace vqcb

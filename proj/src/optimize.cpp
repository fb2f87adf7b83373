#include "vqcb/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "vqcb/errors.hpp"
#include "vqcb/rng.hpp"

namespace vqcb {

namespace {

double dot(const ParamVector& a, const ParamVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm(const ParamVector& a) { return std::sqrt(dot(a, a)); }

double distance(const ParamVector& a, const ParamVector& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

ParamVector resolve_initial_point(const OptimizerConfig& cfg, int arity) {
    if (cfg.initial_point) {
        if (static_cast<int>(cfg.initial_point->size()) != arity) {
            throw ConfigError("initial point has length " +
                              std::to_string(cfg.initial_point->size()) +
                              ", objective arity is " + std::to_string(arity));
        }
        return *cfg.initial_point;
    }
    std::mt19937_64 rng(cfg.seed);
    ParamVector x(arity);
    for (auto& v : x) v = uniform_range(rng, 0.0, 2.0 * std::numbers::pi);
    return x;
}

// Evaluation bookkeeping shared by the three methods: history, best point,
// budget, and the non-finite abort rule.
class Recorder {
  public:
    Recorder(ObjectiveHandle& obj, long budget, OptResult& out)
        : obj_(obj), budget_(budget), out_(out) {
        out_.best_loss = std::numeric_limits<double>::infinity();
    }

    bool can_evaluate() const { return !out_.aborted && used_ < budget_; }

    double evaluate(const ParamVector& x) {
        const double f = obj_.evaluate(x);
        out_.loss_history.emplace_back(used_, f);
        ++used_;
        out_.evaluations_used = used_;
        if (!std::isfinite(f)) {
            out_.aborted = true;
            out_.diagnostic = "objective returned a non-finite value";
            return f;
        }
        if (f < out_.best_loss) {
            out_.best_loss = f;
            out_.best_params = x;
        }
        return f;
    }

  private:
    ObjectiveHandle& obj_;
    long budget_;
    long used_ = 0;
    OptResult& out_;
};

void validate_common(const ObjectiveHandle& obj, const OptimizerConfig& cfg,
                     OptMethod expected) {
    if (cfg.method != expected) throw ConfigError("optimizer method mismatch");
    if (obj.arity() < 1) throw ConfigError("objective arity must be >= 1");
    if (cfg.max_iterations < 1) throw ConfigError("max_iterations must be >= 1");
}

// --- Cobyla helpers -------------------------------------------------------

// Solves edges^T * g = dvals for the linear-model gradient g, where row j of
// the system is (pts[j+1] - pts[0]). Returns false when the simplex is too
// flat to define a model.
bool linear_model(const std::vector<ParamVector>& pts, const std::vector<double>& vals,
                  ParamVector& g) {
    const std::size_t m = pts[0].size();
    std::vector<std::vector<double>> a(m, std::vector<double>(m + 1, 0.0));
    double scale = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < m; ++i) {
            a[j][i] = pts[j + 1][i] - pts[0][i];
            scale = std::max(scale, std::abs(a[j][i]));
        }
        a[j][m] = vals[j + 1] - vals[0];
    }
    if (scale == 0.0) return false;

    for (std::size_t col = 0; col < m; ++col) {
        std::size_t pivot = col;
        for (std::size_t row = col + 1; row < m; ++row) {
            if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
        }
        if (std::abs(a[pivot][col]) < 1e-10 * scale) return false;
        std::swap(a[col], a[pivot]);
        for (std::size_t row = col + 1; row < m; ++row) {
            const double factor = a[row][col] / a[col][col];
            for (std::size_t i = col; i <= m; ++i) a[row][i] -= factor * a[col][i];
        }
    }
    g.assign(m, 0.0);
    for (std::size_t col = m; col-- > 0;) {
        double s = a[col][m];
        for (std::size_t i = col + 1; i < m; ++i) s -= a[col][i] * g[i];
        g[col] = s / a[col][col];
    }
    return true;
}

// Unit direction orthogonal to every simplex edge except edge `skip`
// (1-based vertex index). Reseeds the simplex along its thin dimension.
ParamVector complement_direction(const std::vector<ParamVector>& pts, std::size_t skip) {
    const std::size_t m = pts[0].size();
    std::vector<ParamVector> basis;
    for (std::size_t j = 1; j < pts.size(); ++j) {
        if (j == skip) continue;
        ParamVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = pts[j][i] - pts[0][i];
        for (const auto& b : basis) {
            const double c = dot(v, b);
            for (std::size_t i = 0; i < m; ++i) v[i] -= c * b[i];
        }
        const double n = norm(v);
        if (n > 1e-12) {
            for (auto& x : v) x /= n;
            basis.push_back(std::move(v));
        }
    }
    ParamVector best;
    double best_res = -1.0;
    for (std::size_t axis = 0; axis < m; ++axis) {
        ParamVector r(m, 0.0);
        r[axis] = 1.0;
        for (const auto& b : basis) {
            const double c = dot(r, b);
            for (std::size_t i = 0; i < m; ++i) r[i] -= c * b[i];
        }
        const double res = norm(r);
        if (res > best_res) {
            best_res = res;
            best = std::move(r);
        }
    }
    if (best_res < 1e-12) {
        best.assign(m, 0.0);
        best[0] = 1.0;
        return best;
    }
    for (auto& x : best) x /= best_res;
    return best;
}

// Vertex whose edge adds the least independent direction to the simplex.
std::size_t most_dependent_vertex(const std::vector<ParamVector>& pts) {
    const std::size_t m = pts[0].size();
    std::size_t worst = 1;
    double worst_ratio = std::numeric_limits<double>::infinity();
    for (std::size_t j = 1; j < pts.size(); ++j) {
        ParamVector v(m);
        for (std::size_t i = 0; i < m; ++i) v[i] = pts[j][i] - pts[0][i];
        const double vn = norm(v);
        if (vn < 1e-300) return j;
        std::vector<ParamVector> basis;
        for (std::size_t o = 1; o < pts.size(); ++o) {
            if (o == j) continue;
            ParamVector e(m);
            for (std::size_t i = 0; i < m; ++i) e[i] = pts[o][i] - pts[0][i];
            for (const auto& b : basis) {
                const double c = dot(e, b);
                for (std::size_t i = 0; i < m; ++i) e[i] -= c * b[i];
            }
            const double en = norm(e);
            if (en > 1e-12) {
                for (auto& x : e) x /= en;
                basis.push_back(std::move(e));
            }
        }
        ParamVector r = v;
        for (const auto& b : basis) {
            const double c = dot(r, b);
            for (std::size_t i = 0; i < m; ++i) r[i] -= c * b[i];
        }
        const double ratio = norm(r) / vn;
        if (ratio < worst_ratio) {
            worst_ratio = ratio;
            worst = j;
        }
    }
    return worst;
}

}  // namespace

OptResult cobyla_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg) {
    validate_common(obj, cfg, OptMethod::Cobyla);
    const std::size_t m = static_cast<std::size_t>(obj.arity());

    OptResult result;
    result.config = cfg;
    ParamVector x0 = resolve_initial_point(cfg, obj.arity());
    result.config.initial_point = x0;
    result.best_params = x0;  // best-so-far even if no evaluation is finite

    Recorder rec(obj, cfg.max_iterations, result);
    double rho = cfg.rho_begin;

    std::vector<ParamVector> pts;
    std::vector<double> vals;
    pts.reserve(m + 1);
    vals.reserve(m + 1);

    pts.push_back(x0);
    vals.push_back(rec.evaluate(x0));
    for (std::size_t j = 0; j < m && rec.can_evaluate(); ++j) {
        ParamVector xj = x0;
        xj[j] += rho;
        vals.push_back(rec.evaluate(xj));
        pts.push_back(std::move(xj));
    }
    if (pts.size() < m + 1) return result;  // budget consumed by the simplex

    while (rec.can_evaluate() && rho >= cfg.rho_end) {
        // Keep the incumbent at vertex 0.
        std::size_t ibest = 0;
        for (std::size_t j = 1; j <= m; ++j) {
            if (vals[j] < vals[ibest]) ibest = j;
        }
        if (ibest != 0) {
            std::swap(pts[0], pts[ibest]);
            std::swap(vals[0], vals[ibest]);
        }

        std::size_t far = 1;
        double dmax = 0.0;
        for (std::size_t j = 1; j <= m; ++j) {
            const double d = distance(pts[j], pts[0]);
            if (d > dmax) {
                dmax = d;
                far = j;
            }
        }

        ParamVector g;
        const bool model_ok = linear_model(pts, vals, g);

        if (dmax > 2.1 * rho || !model_ok) {
            // Geometry step: pull the offending vertex back to radius rho
            // along the simplex's thinnest direction.
            const std::size_t jrep = (dmax > 2.1 * rho) ? far : most_dependent_vertex(pts);
            ParamVector dir = complement_direction(pts, jrep);
            if (model_ok && dot(dir, g) > 0.0) {
                for (auto& v : dir) v = -v;
            }
            ParamVector xnew = pts[0];
            for (std::size_t i = 0; i < m; ++i) xnew[i] += rho * dir[i];
            const double fnew = rec.evaluate(xnew);
            if (result.aborted) break;
            pts[jrep] = std::move(xnew);
            vals[jrep] = fnew;
            continue;
        }

        const double gnorm = norm(g);
        if (gnorm < 1e-14 * std::max(1.0, std::abs(vals[0]))) {
            rho *= 0.5;  // flat model, refine the scale
            continue;
        }

        ParamVector xnew = pts[0];
        for (std::size_t i = 0; i < m; ++i) xnew[i] -= (rho / gnorm) * g[i];
        const double fnew = rec.evaluate(xnew);
        if (result.aborted) break;

        const double actual = vals[0] - fnew;
        const double predicted = rho * gnorm;

        std::size_t jworst = 1;
        for (std::size_t j = 2; j <= m; ++j) {
            if (vals[j] > vals[jworst]) jworst = j;
        }
        if (fnew < vals[jworst]) {
            pts[jworst] = std::move(xnew);
            vals[jworst] = fnew;
        } else if (distance(xnew, pts[0]) < dmax) {
            // Failed step still refreshes geometry near the incumbent.
            pts[far] = std::move(xnew);
            vals[far] = fnew;
        }

        if (actual < 0.1 * predicted) rho *= 0.5;
    }
    return result;
}

OptResult spsa_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg) {
    validate_common(obj, cfg, OptMethod::Spsa);
    const std::size_t m = static_cast<std::size_t>(obj.arity());

    OptResult result;
    result.config = cfg;
    ParamVector x = resolve_initial_point(cfg, obj.arity());
    result.config.initial_point = x;
    result.best_params = x;  // best-so-far even if no evaluation is finite

    Recorder rec(obj, 1 + 2L * cfg.max_iterations, result);
    std::mt19937_64 rng(cfg.seed);

    rec.evaluate(x);
    if (result.aborted) return result;

    ParamVector delta(m), plus(m), minus(m);
    for (int k = 0; k < cfg.max_iterations && rec.can_evaluate(); ++k) {
        const double ak = cfg.spsa_a / std::pow(k + 1 + cfg.spsa_big_a, cfg.spsa_alpha);
        const double ck = cfg.spsa_c / std::pow(k + 1, cfg.spsa_gamma);
        for (std::size_t i = 0; i < m; ++i) {
            delta[i] = (rng() & 1) ? 1.0 : -1.0;
            plus[i] = x[i] + ck * delta[i];
            minus[i] = x[i] - ck * delta[i];
        }
        const double fplus = rec.evaluate(plus);
        if (result.aborted || !rec.can_evaluate()) break;
        const double fminus = rec.evaluate(minus);
        if (result.aborted) break;
        const double slope = (fplus - fminus) / (2.0 * ck);
        for (std::size_t i = 0; i < m; ++i) x[i] -= ak * slope * delta[i];
    }
    return result;
}

OptResult nelder_mead_minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg) {
    validate_common(obj, cfg, OptMethod::NelderMead);
    const std::size_t m = static_cast<std::size_t>(obj.arity());

    OptResult result;
    result.config = cfg;
    ParamVector x0 = resolve_initial_point(cfg, obj.arity());
    result.config.initial_point = x0;
    result.best_params = x0;  // best-so-far even if no evaluation is finite

    Recorder rec(obj, cfg.max_iterations, result);

    std::vector<ParamVector> pts;
    std::vector<double> vals;
    pts.push_back(x0);
    vals.push_back(rec.evaluate(x0));
    for (std::size_t j = 0; j < m && rec.can_evaluate(); ++j) {
        ParamVector xj = x0;
        xj[j] += (xj[j] != 0.0) ? 0.05 * xj[j] : 0.25;
        vals.push_back(rec.evaluate(xj));
        pts.push_back(std::move(xj));
    }
    if (pts.size() < m + 1) return result;

    const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;
    std::vector<std::size_t> order(m + 1);

    while (rec.can_evaluate() && !result.aborted) {
        for (std::size_t i = 0; i <= m; ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
        const std::size_t best = order[0], worst = order[m], second = order[m - 1];
        if (vals[worst] - vals[best] < 1e-14 * (1.0 + std::abs(vals[best]))) break;

        ParamVector centroid(m, 0.0);
        for (std::size_t j = 0; j <= m; ++j) {
            if (j == worst) continue;
            for (std::size_t i = 0; i < m; ++i) centroid[i] += pts[j][i];
        }
        for (auto& v : centroid) v /= static_cast<double>(m);

        auto along = [&](double t) {
            ParamVector p(m);
            for (std::size_t i = 0; i < m; ++i)
                p[i] = centroid[i] + t * (centroid[i] - pts[worst][i]);
            return p;
        };

        ParamVector xr = along(alpha);
        const double fr = rec.evaluate(xr);
        if (result.aborted || !rec.can_evaluate()) break;

        if (fr < vals[best]) {
            ParamVector xe = along(gamma);
            const double fe = rec.evaluate(xe);
            if (result.aborted) break;
            if (fe < fr) {
                pts[worst] = std::move(xe);
                vals[worst] = fe;
            } else {
                pts[worst] = std::move(xr);
                vals[worst] = fr;
            }
        } else if (fr < vals[second]) {
            pts[worst] = std::move(xr);
            vals[worst] = fr;
        } else {
            const bool outside = fr < vals[worst];
            ParamVector xc = along(outside ? beta : -beta);
            const double fc = rec.evaluate(xc);
            if (result.aborted) break;
            if (fc < std::min(fr, vals[worst])) {
                pts[worst] = std::move(xc);
                vals[worst] = fc;
            } else {
                for (std::size_t j = 0; j <= m; ++j) {
                    if (j == best || !rec.can_evaluate()) continue;
                    for (std::size_t i = 0; i < m; ++i)
                        pts[j][i] = pts[best][i] + sigma * (pts[j][i] - pts[best][i]);
                    vals[j] = rec.evaluate(pts[j]);
                    if (result.aborted) break;
                }
            }
        }
    }
    return result;
}

OptResult minimize(ObjectiveHandle& obj, const OptimizerConfig& cfg) {
    switch (cfg.method) {
        case OptMethod::Cobyla:
            return cobyla_minimize(obj, cfg);
        case OptMethod::Spsa:
            return spsa_minimize(obj, cfg);
        case OptMethod::NelderMead:
            return nelder_mead_minimize(obj, cfg);
    }
    throw ConfigError("unknown optimizer method");
}

double parameter_shift_gradient(const std::function<double(const ParamVector&)>& expectation,
                                const ParamVector& theta, int k) {
    if (k < 0 || k >= static_cast<int>(theta.size())) {
        throw StructuralError("parameter index " + std::to_string(k) +
                              " out of range for " + std::to_string(theta.size()) +
                              " parameters");
    }
    ParamVector shifted = theta;
    shifted[k] = theta[k] + std::numbers::pi / 2.0;
    const double plus = expectation(shifted);
    shifted[k] = theta[k] - std::numbers::pi / 2.0;
    const double minus = expectation(shifted);
    return 0.5 * (plus - minus);
}

}  // namespace vqcb

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coreloss/errors.hpp"
#include "coreloss/optimize.hpp"
#include "coreloss/waveform.hpp"

namespace coreloss {

/// Coefficients of the Steinmetz power law P = k * f^a * B_max^b.
struct SteinmetzCoeffs {
    double k = 0.0;  // scale
    double a = 0.0;  // frequency exponent
    double b = 0.0;  // flux exponent
    std::string material;

    void validate() const {
        if (!(k > 0.0)) throw NumericError("Steinmetz k must be positive");
        if (!std::isfinite(a) || !std::isfinite(b))
            throw NumericError("Steinmetz exponents must be finite");
    }
};

inline double se_predict(const SteinmetzCoeffs& c, double frequency, double b_max) {
    c.validate();
    if (!(frequency > 0.0)) throw NumericError("se_predict: frequency must be positive");
    if (!(b_max > 0.0)) throw NumericError("se_predict: B_max must be positive");
    return c.k * std::pow(frequency, c.a) * std::pow(b_max, c.b);
}

// ---------------------------------------------------------------------------
// SE fitting (log-domain least squares)
// ---------------------------------------------------------------------------

/// One observation for SE fitting: sine excitation summarized by (f, B_max, P).
struct LossPoint {
    double frequency = 0.0;
    double b_max = 0.0;
    double loss = 0.0;
};

struct SeFit {
    SteinmetzCoeffs coeffs;
    /// Set when the fitted exponents leave the physically expected ranges
    /// a in [1,2], b in [2,3].
    bool exponent_warning = false;
};

namespace detail {

/// Solves the 3x3 system by Gaussian elimination with partial pivoting.
inline std::array<double, 3> solve3(std::array<std::array<double, 3>, 3> m,
                                    std::array<double, 3> rhs) {
    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::fabs(m[r][col]) > std::fabs(m[pivot][col])) pivot = r;
        std::swap(m[col], m[pivot]);
        std::swap(rhs[col], rhs[pivot]);
        if (std::fabs(m[col][col]) < 1e-12)
            throw DataError("rank-deficient design: log-frequency and log-B_max columns are "
                            "collinear or constant");
        for (int r = col + 1; r < 3; ++r) {
            const double t = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= t * m[col][c];
            rhs[r] -= t * rhs[col];
        }
    }
    std::array<double, 3> x{};
    for (int r = 2; r >= 0; --r) {
        double s = rhs[r];
        for (int c = r + 1; c < 3; ++c) s -= m[r][c] * x[c];
        x[r] = s / m[r][r];
    }
    return x;
}

}  // namespace detail

/// Least-squares fit of log P = log k + a log f + b log B_max.
/// Exact on noise-free power-law data.
inline SeFit se_fit(const std::vector<LossPoint>& points) {
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : points) {
        if (!(p.frequency > 0.0) || !(p.b_max > 0.0) || !(p.loss > 0.0))
            throw DataError("se_fit: frequency, B_max and loss must all be positive");
        distinct.insert({p.frequency, p.b_max});
    }
    if (distinct.size() < 3)
        throw DataError("se_fit: need at least 3 distinct (frequency, B_max) points, got " +
                        std::to_string(distinct.size()));

    bool f_varies = false, b_varies = false;
    for (const auto& d : distinct) {
        if (d.first != distinct.begin()->first) f_varies = true;
        if (d.second != distinct.begin()->second) b_varies = true;
    }
    if (!f_varies) throw DataError("se_fit: rank-deficient design, all frequencies equal");
    if (!b_varies) throw DataError("se_fit: rank-deficient design, all B_max equal");

    // Normal equations for the design [1, log f, log B].
    std::array<std::array<double, 3>, 3> m{};
    std::array<double, 3> rhs{};
    for (const auto& p : points) {
        const std::array<double, 3> row = {1.0, std::log(p.frequency), std::log(p.b_max)};
        const double y = std::log(p.loss);
        for (int i = 0; i < 3; ++i) {
            rhs[i] += row[i] * y;
            for (int j = 0; j < 3; ++j) m[i][j] += row[i] * row[j];
        }
    }
    const auto sol = detail::solve3(m, rhs);

    SeFit fit;
    fit.coeffs.k = std::exp(sol[0]);
    fit.coeffs.a = sol[1];
    fit.coeffs.b = sol[2];
    fit.exponent_warning =
        fit.coeffs.a < 1.0 || fit.coeffs.a > 2.0 || fit.coeffs.b < 2.0 || fit.coeffs.b > 3.0;
    return fit;
}

// ---------------------------------------------------------------------------
// iGSE
// ---------------------------------------------------------------------------

inline constexpr int kKiQuadratureIntervals = 16384;

/// k_i = k / ((2*pi)^(a-1) * 2^(b-a) * integral_0^{2pi} |cos t|^a dt),
/// with the integral by composite Simpson.
inline double ki_compute(const SteinmetzCoeffs& c) {
    c.validate();
    const int n = kKiQuadratureIntervals;
    const double h = 2.0 * kPi / n;
    double s = std::pow(std::fabs(std::cos(0.0)), c.a) +
               std::pow(std::fabs(std::cos(2.0 * kPi)), c.a);
    for (int i = 1; i < n; ++i) {
        const double w = (i % 2 == 1) ? 4.0 : 2.0;
        s += w * std::pow(std::fabs(std::cos(i * h)), c.a);
    }
    const double integral = s * h / 3.0;
    return c.k / (std::pow(2.0 * kPi, c.a - 1.0) * std::pow(2.0, c.b - c.a) * integral);
}

struct IgseModel {
    SteinmetzCoeffs coeffs;
    double ki = 0.0;

    static IgseModel from_coeffs(const SteinmetzCoeffs& c) {
        IgseModel m;
        m.coeffs = c;
        m.ki = ki_compute(c);
        return m;
    }
};

/// P = k_i * dB^(b-a) * mean(|dB/dt|^a); the time integral is the trapezoidal
/// rule over one exact period, which for periodic samples reduces to the mean.
/// A constant waveform (dB = 0) yields 0 and sets the degenerate flag.
inline double igse_predict(const IgseModel& m, const FluxWaveform& w,
                           bool* degenerate = nullptr) {
    if (degenerate != nullptr) *degenerate = false;
    const double db = delta_b(w);
    if (db == 0.0) {
        if (degenerate != nullptr) *degenerate = true;
        return 0.0;
    }
    const std::vector<double> d = derivative(w);
    double mean_pow = 0.0;
    for (double x : d) mean_pow += std::pow(std::fabs(x), m.coeffs.a);
    mean_pow /= static_cast<double>(d.size());
    return m.ki * std::pow(db, m.coeffs.b - m.coeffs.a) * mean_pow;
}

/// One observation for iGSE fitting: a full waveform with its measured loss.
struct WaveformLossPoint {
    FluxWaveform waveform;
    double loss = 0.0;
};

struct IgseFit {
    IgseModel model;
    bool converged = false;   // Nelder-Mead reached its simplex tolerance
    bool degenerate = false;  // too little variation in (f, dB) to identify coefficients
    int iterations = 0;
    double objective = 0.0;   // mean squared log-error at the optimum
};

struct IgseFitOptions {
    int max_iterations = 2000;
    double simplex_tolerance = 1e-8;
};

/// Fits (k, a, b) by minimizing the mean squared log-error of igse_predict,
/// Nelder-Mead in (log k, a, b) seeded from the SE fit.
inline IgseFit igse_fit(const std::vector<WaveformLossPoint>& points,
                        const IgseFitOptions& opt = {}) {
    if (points.size() < 3) throw DataError("igse_fit: need at least 3 samples");

    struct Prepared {
        double log_db = 0.0;
        double log_loss = 0.0;
        std::vector<double> log_abs_deriv;  // zeros of dB/dt skipped
        std::size_t deriv_count = 0;
    };
    std::vector<Prepared> prep;
    prep.reserve(points.size());
    std::set<std::pair<double, double>> distinct;
    for (const auto& p : points) {
        if (!(p.loss > 0.0)) throw DataError("igse_fit: losses must be positive");
        const double db = delta_b(p.waveform);
        if (db == 0.0) throw DataError("igse_fit: degenerate constant waveform in input");
        distinct.insert({p.waveform.frequency, db});
        Prepared pr;
        pr.log_db = std::log(db);
        pr.log_loss = std::log(p.loss);
        const std::vector<double> d = derivative(p.waveform);
        pr.deriv_count = d.size();
        pr.log_abs_deriv.reserve(d.size());
        for (double x : d)
            if (x != 0.0) pr.log_abs_deriv.push_back(std::log(std::fabs(x)));
        prep.push_back(std::move(pr));
    }

    const bool degenerate = distinct.size() < 3;

    // Seed from the SE fit with B_max = dB/2; fall back to mid-range exponents
    // when that design is itself rank-deficient.
    SteinmetzCoeffs seed{1.0, 1.5, 2.5, ""};
    {
        std::vector<LossPoint> se_points;
        se_points.reserve(points.size());
        for (const auto& p : points)
            se_points.push_back({p.waveform.frequency, delta_b(p.waveform) / 2.0, p.loss});
        try {
            seed = se_fit(se_points).coeffs;
        } catch (const DataError&) {
        }
    }

    auto objective = [&prep](const std::vector<double>& theta) {
        SteinmetzCoeffs c{std::exp(theta[0]), theta[1], theta[2], ""};
        if (!std::isfinite(c.k) || std::fabs(c.a) > 20.0 || std::fabs(c.b) > 20.0) return 1e30;
        const double log_ki = std::log(ki_compute(c));
        double sse = 0.0;
        for (const auto& pr : prep) {
            double mean_pow = 0.0;
            for (double ld : pr.log_abs_deriv) mean_pow += std::exp(c.a * ld);
            mean_pow /= static_cast<double>(pr.deriv_count);
            if (!(mean_pow > 0.0)) return 1e30;
            const double log_pred =
                log_ki + (c.b - c.a) * pr.log_db + std::log(mean_pow);
            const double r = log_pred - pr.log_loss;
            sse += r * r;
        }
        return sse / static_cast<double>(prep.size());
    };

    NelderMeadOptions nm_opt;
    nm_opt.max_iterations = opt.max_iterations;
    nm_opt.simplex_tolerance = opt.simplex_tolerance;
    const NelderMeadResult nm = nelder_mead(
        objective, {std::log(seed.k), seed.a, seed.b}, {0.5, 0.1, 0.1}, nm_opt);

    IgseFit fit;
    fit.model = IgseModel::from_coeffs({std::exp(nm.x[0]), nm.x[1], nm.x[2], ""});
    fit.converged = nm.converged;
    fit.degenerate = degenerate;
    fit.iterations = nm.iterations;
    fit.objective = nm.fx;
    return fit;
}

}  // namespace coreloss

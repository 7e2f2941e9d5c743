// Copyright 2026 xcorr contributors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "xcorr/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "xcorr/error.hpp"

namespace xcorr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct LineFit {
    double intercept;
    double slope;
    double intercept_stderr;
    double slope_stderr;
    double residual_norm;
};

LineFit fit_line(const std::vector<double> &x, const std::vector<double> &y) {
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) {
        throw ConfigError("fit abscissae are all equal");
    }
    LineFit f{};
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ss += r * r;
    }
    f.residual_norm = std::sqrt(ss);
    if (x.size() > 2) {
        const double s2 = ss / (n - 2.0);
        f.slope_stderr = std::sqrt(s2 / sxx);
        f.intercept_stderr = std::sqrt(s2 * (1.0 / n + mx * mx / sxx));
    } else {
        f.slope_stderr = kNaN;
        f.intercept_stderr = kNaN;
    }
    return f;
}

struct CollapseResiduals {
    using Scalar = double;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;

    std::vector<CollapsePoint> pts;

    [[nodiscard]] int inputs() const { return 3; }
    [[nodiscard]] int values() const { return static_cast<int>(pts.size()); }

    // x = (log B, log x0, lambda)
    int operator()(const Eigen::VectorXd &x, Eigen::VectorXd &f) const {
        const double b = std::exp(x(0));
        const double x0 = std::exp(x(1));
        for (std::size_t i = 0; i < pts.size(); ++i) {
            const double scaled = pts[i].chi * std::pow(pts[i].L, -x(2));
            f(static_cast<Eigen::Index>(i)) =
                std::log1p(b * std::exp(-scaled / x0)) - std::log(pts[i].ratio);
        }
        return 0;
    }
};

} // namespace

PowerLawFit fit_power_law(std::span<const double> sizes, std::span<const double> means) {
    if (sizes.size() != means.size()) {
        throw ConfigError("sizes and means differ in length");
    }
    std::vector<double> lx;
    std::vector<double> ly;
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        if (!(means[i] > 0.0) || !(sizes[i] > 0.0)) {
            throw ConfigError("power-law fit needs positive sizes and means");
        }
        lx.push_back(std::log(sizes[i]));
        ly.push_back(std::log(means[i]));
    }
    std::vector<double> distinct = lx;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    if (distinct.size() < 4) {
        throw ConfigError("power-law fit needs at least four system sizes");
    }
    const LineFit f = fit_line(lx, ly);
    const double a = std::exp(f.intercept);
    return {-f.slope, f.slope_stderr, a, a * f.intercept_stderr, f.residual_norm};
}

ChiDecayFit fit_chi_decay(double L, std::span<const double> chis,
                          std::span<const double> ratios, double min_excess) {
    if (chis.size() != ratios.size()) {
        throw ConfigError("chi and ratio lists differ in length");
    }
    std::vector<double> x;
    std::vector<double> y;
    for (std::size_t i = 0; i < chis.size(); ++i) {
        const double excess = ratios[i] - 1.0;
        if (excess > min_excess && std::isfinite(excess)) {
            x.push_back(chis[i]);
            y.push_back(std::log(excess));
        }
    }
    if (x.size() < 2) {
        throw ConfigError("chi decay fit at L = " + std::to_string(L) +
                          " has fewer than two points above the excess threshold");
    }
    const LineFit f = fit_line(x, y);
    const double rate = -f.slope;
    return {L, rate, rate > 0.0 ? 1.0 / rate : kNaN, f.intercept, static_cast<int>(x.size()),
            f.residual_norm};
}

CollapseFit fit_collapse(std::span<const CollapsePoint> points, double min_excess) {
    std::map<double, std::vector<CollapsePoint>> by_size;
    for (const auto &pt : points) {
        by_size[pt.L].push_back(pt);
    }
    std::size_t complete = 0;
    for (const auto &[l, pts] : by_size) {
        std::vector<double> chis;
        for (const auto &pt : pts) {
            chis.push_back(pt.chi);
        }
        std::sort(chis.begin(), chis.end());
        chis.erase(std::unique(chis.begin(), chis.end()), chis.end());
        if (chis.size() >= 4) {
            ++complete;
        }
    }
    if (complete < 3) {
        throw ConfigError("collapse fit needs at least three sizes with four chi values each");
    }

    CollapseFit out{};
    std::vector<double> log_l;
    std::vector<double> log_chi_qc;
    double log_b_sum = 0.0;
    for (const auto &[l, pts] : by_size) {
        std::vector<double> chis;
        std::vector<double> ratios;
        for (const auto &pt : pts) {
            chis.push_back(pt.chi);
            ratios.push_back(pt.ratio);
        }
        try {
            const ChiDecayFit f = fit_chi_decay(l, chis, ratios, min_excess);
            out.per_size.push_back(f);
            if (f.decay_rate > 0.0) {
                log_l.push_back(std::log(l));
                log_chi_qc.push_back(std::log(f.chi_qc));
                log_b_sum += f.log_amplitude;
            }
        } catch (const ConfigError &) {
            // Sizes that converge too fast to resolve still enter the joint fit.
        }
    }

    double lambda0 = 1.0;
    double log_x0 = 0.0;
    double log_b0 = 0.0;
    if (log_l.size() >= 2) {
        const LineFit f = fit_line(log_l, log_chi_qc);
        lambda0 = f.slope;
        log_x0 = f.intercept;
        log_b0 = log_b_sum / static_cast<double>(log_l.size());
    } else if (log_l.size() == 1) {
        log_x0 = log_chi_qc.front() - lambda0 * log_l.front();
        log_b0 = log_b_sum;
    }

    CollapseResiduals fn;
    for (const auto &pt : points) {
        if (pt.ratio > 0.0 && std::isfinite(pt.ratio) && pt.L > 0.0) {
            fn.pts.push_back(pt);
        }
    }
    Eigen::VectorXd x(3);
    x << log_b0, log_x0, lambda0;
    Eigen::NumericalDiff<CollapseResiduals> diff(fn);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<CollapseResiduals>> lm(diff);
    lm.parameters.ftol = kFitTolerance;
    lm.parameters.xtol = kFitTolerance;
    lm.parameters.maxfev = kFitMaxEvaluations;
    const auto status = lm.minimize(x);
    if (status == Eigen::LevenbergMarquardtSpace::ImproperInputParameters ||
        status == Eigen::LevenbergMarquardtSpace::TooManyFunctionEvaluation ||
        !x.allFinite()) {
        throw NumericalError("collapse refinement did not converge (status " +
                             std::to_string(static_cast<int>(status)) + ")");
    }
    Eigen::VectorXd r(fn.values());
    fn(x, r);
    out.B = std::exp(x(0));
    out.x0 = std::exp(x(1));
    out.lambda = x(2);
    out.residual_norm = r.norm();
    out.evaluations = static_cast<int>(lm.nfev);
    return out;
}

} // namespace xcorr

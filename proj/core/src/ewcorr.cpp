#include "cryptonet/ewcorr.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "cryptonet/errors.hpp"
#include "cryptonet/parallel.hpp"

namespace cryptonet {

namespace {

constexpr double kClampSlack = 1e-12;
// Relative variance floor: a series whose weighted variance is below
// 1e-24 x its weighted second moment is constant up to rounding.
constexpr double kVarianceFloorRatio = 1e-24;

double clamp_corr(double rho, const char* what) {
    if (rho > 1.0) {
        if (rho > 1.0 + kClampSlack) {
            throw NumericError(fmt::format("{}: correlation {} exceeds 1 beyond rounding",
                                           what, rho));
        }
        return 1.0;
    }
    if (rho < -1.0) {
        if (rho < -1.0 - kClampSlack) {
            throw NumericError(fmt::format("{}: correlation {} exceeds -1 beyond rounding",
                                           what, rho));
        }
        return -1.0;
    }
    return rho;
}

}  // namespace

WeightVector make_weights(int window, double theta) {
    if (window < 1) throw InvalidParameter("weight window must be >= 1");
    if (!(theta > 0.0) || !std::isfinite(theta)) {
        throw InvalidParameter("theta must be positive and finite");
    }
    WeightVector w;
    w.window = window;
    w.theta = theta;
    w.weights.resize(static_cast<std::size_t>(window));
    // Long double intermediates buy exponent headroom; the oldest weights
    // can still underflow to 0 in double storage once (window-1)/theta
    // passes ~700, which only affects decay profiles far steeper than any
    // meaningful configuration.
    std::vector<long double> raw(static_cast<std::size_t>(window));
    long double total = 0.0L;
    for (int t = 1; t <= window; ++t) {
        raw[static_cast<std::size_t>(t - 1)] =
            expl(static_cast<long double>(t - window) / static_cast<long double>(theta));
        total += raw[static_cast<std::size_t>(t - 1)];
    }
    for (std::size_t t = 0; t < raw.size(); ++t) {
        w.weights[t] = static_cast<double>(raw[t] / total);
    }
    return w;
}

CenteredSeries center_series(std::span<const double> x, const WeightVector& w) {
    if (x.size() != w.weights.size()) {
        throw InvalidParameter(fmt::format("series length {} != weight window {}", x.size(),
                                           w.window));
    }
    double mean = 0.0;
    double second_moment = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t) {
        mean += w.weights[t] * x[t];
        second_moment += w.weights[t] * x[t] * x[t];
    }
    CenteredSeries out;
    out.scaled.resize(x.size());
    for (std::size_t t = 0; t < x.size(); ++t) {
        out.scaled[t] = std::sqrt(w.weights[t]) * (x[t] - mean);
        out.variance += out.scaled[t] * out.scaled[t];
    }
    out.degenerate = out.variance <= kVarianceFloorRatio * second_moment;
    return out;
}

double weighted_corr(std::span<const double> x, std::span<const double> y,
                     const WeightVector& w) {
    const CenteredSeries cx = center_series(x, w);
    const CenteredSeries cy = center_series(y, w);
    if (cx.degenerate || cy.degenerate) {
        throw ZeroVariance("weighted correlation of a constant series");
    }
    double num = 0.0;
    for (std::size_t t = 0; t < cx.scaled.size(); ++t) num += cx.scaled[t] * cy.scaled[t];
    // sqrt(var_x * var_y) rather than sd_x * sd_y keeps corr(x, x) == 1 and
    // corr(x, -x) == -1 bit-exact.
    return clamp_corr(num / std::sqrt(cx.variance * cy.variance), "weighted_corr");
}

void WeightedCorrelationMatrix::validate() const {
    const std::size_t n = symbols.size();
    if (values.rows() != n || values.cols() != n) {
        throw ValidationError("correlation matrix shape does not match symbol list");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (values(i, i) != 1.0) {
            throw ValidationError(fmt::format("diagonal entry {} is {}", i, values(i, i)));
        }
        for (std::size_t j = i + 1; j < n; ++j) {
            if (values(i, j) != values(j, i)) {
                throw ValidationError(fmt::format("asymmetry at ({}, {})", i, j));
            }
            if (!(values(i, j) >= -1.0 && values(i, j) <= 1.0)) {
                throw ValidationError(fmt::format("entry ({}, {}) = {} outside [-1, 1]", i, j,
                                                  values(i, j)));
            }
        }
    }
}

namespace {

WeightedCorrelationMatrix window_matrix(const ReturnPanel& returns, std::size_t start,
                                        int window, const WeightVector& weights) {
    const std::size_t n = returns.n_assets();
    const auto wlen = static_cast<std::size_t>(window);

    std::vector<std::size_t> included;
    std::vector<CenteredSeries> centered;
    std::vector<double> slice(wlen);
    for (std::size_t i = 0; i < n; ++i) {
        bool complete = true;
        for (std::size_t t = 0; t < wlen; ++t) {
            if (!returns.mask(i, start + t)) {
                complete = false;
                break;
            }
            slice[t] = returns.values(i, start + t);
        }
        if (!complete) continue;
        CenteredSeries c = center_series(slice, weights);
        if (c.degenerate) continue;
        included.push_back(i);
        centered.push_back(std::move(c));
    }

    WeightedCorrelationMatrix mat;
    mat.window_end_ts = returns.timestamps[start + wlen - 1];
    mat.symbols.reserve(included.size());
    for (const auto i : included) mat.symbols.push_back(returns.symbols[i]);
    const std::size_t m = included.size();
    mat.values = Matrix(m, m, 0.0);
    for (std::size_t a = 0; a < m; ++a) {
        mat.values(a, a) = 1.0;
        for (std::size_t b = a + 1; b < m; ++b) {
            double num = 0.0;
            for (std::size_t t = 0; t < wlen; ++t) {
                num += centered[a].scaled[t] * centered[b].scaled[t];
            }
            const double rho = clamp_corr(
                num / std::sqrt(centered[a].variance * centered[b].variance), "rolling_corr");
            mat.values(a, b) = rho;
            mat.values(b, a) = rho;
        }
    }
    return mat;
}

std::size_t window_count(const ReturnPanel& returns, int window, int step) {
    if (window < 1) throw InvalidParameter("window must be >= 1");
    if (step < 1) throw InvalidParameter("step must be >= 1");
    const std::size_t t_r = returns.n_obs();
    if (t_r < static_cast<std::size_t>(window)) {
        throw WindowTooLong(fmt::format("window {} exceeds {} return observations", window,
                                        t_r));
    }
    return (t_r - static_cast<std::size_t>(window)) / static_cast<std::size_t>(step) + 1;
}

}  // namespace

void rolling_corr_foreach(const ReturnPanel& returns, int window, int step, double theta,
                          const std::function<void(WeightedCorrelationMatrix&&)>& sink,
                          unsigned threads) {
    const std::size_t count = window_count(returns, window, step);
    const WeightVector weights = make_weights(window, theta);

    // Compute in bounded chunks, emit strictly in window order.
    const std::size_t chunk = 256;
    std::vector<WeightedCorrelationMatrix> slots;
    for (std::size_t base = 0; base < count; base += chunk) {
        const std::size_t batch = std::min(chunk, count - base);
        slots.assign(batch, WeightedCorrelationMatrix{});
        parallel_for_index(
            batch,
            [&](std::size_t k) {
                const std::size_t start = (base + k) * static_cast<std::size_t>(step);
                slots[k] = window_matrix(returns, start, window, weights);
            },
            threads);
        for (auto& mat : slots) sink(std::move(mat));
    }
}

std::vector<WeightedCorrelationMatrix> rolling_corr(const ReturnPanel& returns, int window,
                                                    int step, double theta, unsigned threads) {
    std::vector<WeightedCorrelationMatrix> out;
    out.reserve(window_count(returns, window, step));
    rolling_corr_foreach(
        returns, window, step, theta,
        [&](WeightedCorrelationMatrix&& mat) { out.push_back(std::move(mat)); }, threads);
    return out;
}

CorrelationSeriesBuilder::CorrelationSeriesBuilder(std::vector<std::string> focus)
    : focus_(std::move(focus)), focus_means_(focus_.size()) {}

void CorrelationSeriesBuilder::add(const WeightedCorrelationMatrix& mat) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    timestamps_.push_back(mat.window_end_ts);
    const std::size_t m = mat.symbols.size();

    double pair_sum = 0.0;
    std::size_t pair_count = 0;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            pair_sum += mat.values(i, j);
            ++pair_count;
        }
    }
    market_means_.push_back(pair_count > 0 ? pair_sum / static_cast<double>(pair_count) : nan);

    for (std::size_t f = 0; f < focus_.size(); ++f) {
        const auto it = std::find(mat.symbols.begin(), mat.symbols.end(), focus_[f]);
        if (it == mat.symbols.end() || m < 2) {
            focus_means_[f].push_back(nan);
            continue;
        }
        const auto row = static_cast<std::size_t>(it - mat.symbols.begin());
        double sum = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j != row) sum += mat.values(row, j);
        }
        focus_means_[f].push_back(sum / static_cast<double>(m - 1));
    }
}

CorrelationSeries CorrelationSeriesBuilder::finish() {
    CorrelationSeries series;
    series.timestamps = std::move(timestamps_);
    series.focus = focus_;
    series.market_mean = std::move(market_means_);
    series.per_asset_mean = Matrix(focus_.size(), series.timestamps.size(), 0.0);
    for (std::size_t f = 0; f < focus_.size(); ++f) {
        for (std::size_t w = 0; w < series.timestamps.size(); ++w) {
            series.per_asset_mean(f, w) = focus_means_[f][w];
        }
    }
    return series;
}

CorrelationSeries average_series(std::span<const WeightedCorrelationMatrix> mats,
                                 const std::vector<std::string>& focus) {
    if (mats.empty()) throw InvalidParameter("average_series needs at least one matrix");
    CorrelationSeriesBuilder builder(focus);
    for (const auto& mat : mats) builder.add(mat);
    return builder.finish();
}

}  // namespace cryptonet

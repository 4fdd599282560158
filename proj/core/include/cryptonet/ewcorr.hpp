#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "cryptonet/matrix.hpp"
#include "cryptonet/returns.hpp"

namespace cryptonet {

// Exponential-decay observation weights over a window of `window` steps:
// w_t proportional to exp((t - window) / theta) for t = 1..window, normalized
// to sum 1. The newest observation carries the largest weight.
struct WeightVector {
    std::vector<double> weights;
    double theta = 0.0;
    int window = 0;
};

WeightVector make_weights(int window, double theta);

// Weighted Pearson correlation: weighted covariance over the product of
// weighted standard deviations, with weighted means subtracted. The result
// is clamped to [-1, 1] only to absorb rounding of at most 1e-12 beyond the
// bound; identical (or negated) inputs return exactly +/-1.
//
// Throws ZeroVariance when either series is constant under the weighting.
double weighted_corr(std::span<const double> x, std::span<const double> y,
                     const WeightVector& w);

// Centered, sqrt-weight scaled view of one series; the shared kernel behind
// weighted_corr and the rolling engine.
struct CenteredSeries {
    std::vector<double> scaled;  // sqrt(w_t) * (x_t - weighted mean)
    double variance = 0.0;       // sum of scaled^2
    bool degenerate = false;     // constant under the weighting
};

CenteredSeries center_series(std::span<const double> x, const WeightVector& w);

struct WeightedCorrelationMatrix {
    std::vector<std::string> symbols;    // assets included in this window
    Matrix values;                       // N x N, symmetric, unit diagonal
    std::int64_t window_end_ts = 0;

    void validate() const;  // symmetry, unit diagonal, range (not PSD)
};

// One matrix per window position at the given step. Assets with a masked
// cell or zero weighted variance inside a window are excluded from that
// window's matrix. Output count: floor((T_r - window) / step) + 1.
std::vector<WeightedCorrelationMatrix> rolling_corr(const ReturnPanel& returns, int window,
                                                    int step, double theta,
                                                    unsigned threads = 0);

// Streaming variant: emits matrices in window order without retaining them.
void rolling_corr_foreach(const ReturnPanel& returns, int window, int step, double theta,
                          const std::function<void(WeightedCorrelationMatrix&&)>& sink,
                          unsigned threads = 0);

// Average-correlation series. Gaps (asset absent from a window, or a window
// with fewer than two assets) are NaN, never zero.
struct CorrelationSeries {
    std::vector<std::int64_t> timestamps;
    std::vector<std::string> focus;
    Matrix per_asset_mean;            // focus x W
    std::vector<double> market_mean;  // mean over all off-diagonal pairs
};

CorrelationSeries average_series(std::span<const WeightedCorrelationMatrix> mats,
                                 const std::vector<std::string>& focus);

// Incremental builder so the pipeline can stream windows through.
class CorrelationSeriesBuilder {
public:
    explicit CorrelationSeriesBuilder(std::vector<std::string> focus);

    void add(const WeightedCorrelationMatrix& mat);
    CorrelationSeries finish();

private:
    std::vector<std::string> focus_;
    std::vector<std::int64_t> timestamps_;
    std::vector<std::vector<double>> focus_means_;
    std::vector<double> market_means_;
};

}  // namespace cryptonet

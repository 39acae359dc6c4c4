// stats.hpp -- the small statistical toolbox used by tests and experiments.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

namespace cpnet {

struct MeanSe {
    double mean = 0.0;
    double se = 0.0;  // sample SD / sqrt(count)
    std::size_t count = 0;
};

inline MeanSe mean_se(const std::vector<double>& xs) {
    MeanSe r;
    r.count = xs.size();
    if (xs.empty()) return r;
    double sum = 0.0;
    for (double x : xs) sum += x;
    r.mean = sum / xs.size();
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) ss += (x - r.mean) * (x - r.mean);
        r.se = std::sqrt(ss / (xs.size() - 1)) / std::sqrt(static_cast<double>(xs.size()));
    }
    return r;
}

inline double median(std::vector<double> xs) {
    if (xs.empty()) throw std::invalid_argument("median of empty sample");
    std::sort(xs.begin(), xs.end());
    const std::size_t m = xs.size() / 2;
    return xs.size() % 2 == 1 ? xs[m] : 0.5 * (xs[m - 1] + xs[m]);
}

// sup-norm distance between the empirical CDF of a sorted sample and a
// reference CDF
inline double ks_statistic(const std::vector<double>& sorted_sample,
                           const std::function<double(double)>& cdf) {
    if (sorted_sample.empty()) throw std::invalid_argument("ks_statistic: empty sample");
    const double m = static_cast<double>(sorted_sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sorted_sample.size(); ++i) {
        const double f = cdf(sorted_sample[i]);
        d = std::max(d, std::abs(f - static_cast<double>(i + 1) / m));
        d = std::max(d, std::abs(f - static_cast<double>(i) / m));
    }
    return d;
}

inline std::function<double(double)> exponential_cdf(double mean = 1.0) {
    return [mean](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x / mean); };
}

// two-sample Kolmogorov-Smirnov distance; inputs need not be sorted. Ties
// (discrete data) are handled by comparing the CDFs only at distinct values.
inline double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] == x) ++i;
        while (j < b.size() && b[j] == x) ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    // one sample exhausted: its CDF is 1 from here on
    if (j < b.size()) d = std::max(d, 1.0 - static_cast<double>(j) / b.size());
    if (i < a.size()) d = std::max(d, 1.0 - static_cast<double>(i) / a.size());
    return d;
}

struct Regression {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

inline Regression linear_regression(const std::vector<double>& x,
                                    const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("regression needs >= 2 matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i]; sy += y[i];
        sxx += x[i] * x[i]; sxy += x[i] * y[i]; syy += y[i] * y[i];
    }
    Regression r;
    const double vx = sxx - sx * sx / n;
    const double cxy = sxy - sx * sy / n;
    const double vy = syy - sy * sy / n;
    r.slope = cxy / vx;
    r.intercept = (sy - r.slope * sx) / n;
    r.r2 = vy > 0.0 ? (cxy * cxy) / (vx * vy) : 1.0;
    return r;
}

// chi-square critical value via the Wilson-Hilferty approximation
inline double chi_square_critical(double dof, double z) {
    const double t = 1.0 - 2.0 / (9.0 * dof) + z * std::sqrt(2.0 / (9.0 * dof));
    return dof * t * t * t;
}

constexpr double kZ999 = 3.090232306167814;  // 0.999 standard normal quantile

}  // namespace cpnet

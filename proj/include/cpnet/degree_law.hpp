// degree_law.hpp -- power-law degree distributions with exponent a in (1,2],
// their normalization, sampling, and the metastable density functional rho.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "cpnet/rng.hpp"

namespace cpnet {

enum class CutoffKind { Truncated, Infinite, AlphaTruncated };

namespace detail {

constexpr std::uint64_t kExactSumCap = 1u << 21;   // direct summation limit
constexpr std::uint64_t kSamplerTableCap = 1u << 20;  // cumulative table size cap

// sum_{j >= J} j^{-a} via Euler-Maclaurin; J must be reasonably large for the
// stated 1e-12 accuracy (we only call it with J > 2^21).
inline double power_tail_from(double a, double J) {
    const double t0 = std::pow(J, 1.0 - a) / (a - 1.0);
    const double t1 = 0.5 * std::pow(J, -a);
    const double t2 = (a / 12.0) * std::pow(J, -a - 1.0);
    const double t3 = (a * (a + 1.0) * (a + 2.0) / 720.0) * std::pow(J, -a - 3.0);
    return t0 + t1 + t2 - t3;
}

// sum_{j=1}^{N} j^{-a}; N may be "infinite" (max uint64)
inline double power_partial_sum(double a, std::uint64_t N) {
    const std::uint64_t direct = std::min<std::uint64_t>(N, kExactSumCap);
    double s = 0.0, comp = 0.0;  // Kahan
    for (std::uint64_t j = direct; j >= 1; --j) {
        double term = std::pow(static_cast<double>(j), -a);
        double y = term - comp;
        double t = s + y;
        comp = (t - s) - y;
        s = t;
    }
    if (N > direct) {
        s += power_tail_from(a, static_cast<double>(direct) + 1.0);
        if (N != std::numeric_limits<std::uint64_t>::max())
            s -= power_tail_from(a, static_cast<double>(N) + 1.0);
    }
    return s;
}

// adaptive Simpson for smooth integrands
template <typename F>
double adaptive_simpson(F f, double lo, double hi, double fa, double fm, double fb,
                        double tol, int depth) {
    const double mid = 0.5 * (lo + hi);
    const double lm = 0.5 * (lo + mid), rm = 0.5 * (mid + hi);
    const double flm = f(lm), frm = f(rm);
    const double whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
    const double left = (mid - lo) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (hi - mid) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adaptive_simpson(f, lo, mid, fa, flm, fm, tol / 2.0, depth - 1) +
           adaptive_simpson(f, mid, hi, fm, frm, fb, tol / 2.0, depth - 1);
}

template <typename F>
double integrate(F f, double lo, double hi, double tol) {
    const double mid = 0.5 * (lo + hi);
    return adaptive_simpson(f, lo, hi, f(lo), f(mid), f(hi), tol, 48);
}

}  // namespace detail

struct DegreeSequence {
    std::vector<std::uint64_t> degrees;
    std::uint64_t total = 0;
    bool parity_adjusted = false;
};

// Immutable after construction; sampling uses a caller-owned Rng.
class DegreeLaw {
public:
    static DegreeLaw truncated(double a, std::uint64_t n) {
        return DegreeLaw(a, CutoffKind::Truncated, n, 0.0);
    }
    static DegreeLaw infinite(double a) {
        return DegreeLaw(a, CutoffKind::Infinite, 0, 0.0);
    }
    static DegreeLaw alpha_truncated(double a, double alpha, std::uint64_t n) {
        return DegreeLaw(a, CutoffKind::AlphaTruncated, n, alpha);
    }

    double exponent() const { return a_; }
    CutoffKind cutoff() const { return kind_; }
    std::uint64_t cutoff_n() const { return n_; }
    double alpha() const { return alpha_; }

    // largest degree with positive mass; max uint64 stands for unbounded
    std::uint64_t support_max() const { return support_max_; }
    bool bounded() const {
        return support_max_ != std::numeric_limits<std::uint64_t>::max();
    }

    double normalizing_constant() const { return c_; }

    double pmf(std::uint64_t j) const {
        if (j < 1 || j > support_max_) return 0.0;
        return c_ * std::pow(static_cast<double>(j), -a_);
    }

    // P(D > j)
    double tail_mass(std::uint64_t j) const {
        if (j >= support_max_) return 0.0;
        return 1.0 - c_ * detail::power_partial_sum(a_, j);
    }

    std::uint64_t sample(Rng& rng) const {
        const double u = rng.uniform();
        if (u < table_mass_ || table_covers_support_) {
            auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
            if (it == cdf_.end()) --it;  // u in the rounding sliver at the top
            return static_cast<std::uint64_t>(it - cdf_.begin()) + 1;
        }
        return sample_tail(rng);
    }

    DegreeSequence sample_sequence(std::uint64_t n, Rng& rng) const {
        DegreeSequence seq;
        seq.degrees.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) {
            seq.degrees[i] = sample(rng);
            seq.total += seq.degrees[i];
        }
        if (seq.total % 2 == 1) {
            // parity fix: bump the last entry
            seq.degrees.back() += 1;
            seq.total += 1;
            seq.parity_adjusted = true;
        }
        return seq;
    }

    // rho(lambda) = sum_j  j*lambda/(j*lambda+1) * pmf(j)
    double rho(double lambda) const {
        if (!(lambda > 0.0)) throw std::invalid_argument("rho: lambda must be positive");
        // rho = 1 - sum_j pmf(j)/(j*lambda+1); the complement sum converges fast
        const std::uint64_t direct =
            std::min<std::uint64_t>(support_max_, detail::kExactSumCap);
        double s = 0.0, comp = 0.0;
        for (std::uint64_t j = direct; j >= 1; --j) {
            double term = std::pow(static_cast<double>(j), -a_) /
                          (static_cast<double>(j) * lambda + 1.0);
            double y = term - comp;
            double t = s + y;
            comp = (t - s) - y;
            s = t;
        }
        if (support_max_ > direct) {
            s += weighted_tail(lambda, static_cast<double>(direct) + 1.0);
            if (bounded())
                s -= weighted_tail(lambda, static_cast<double>(support_max_) + 1.0);
        }
        return 1.0 - c_ * s;
    }

    std::string describe() const {
        switch (kind_) {
            case CutoffKind::Truncated:
                return "{a=" + std::to_string(a_) + ", cutoff=truncated, n=" + std::to_string(n_) + "}";
            case CutoffKind::Infinite:
                return "{a=" + std::to_string(a_) + ", cutoff=infinite}";
            default:
                return "{a=" + std::to_string(a_) + ", cutoff=alpha, alpha=" + std::to_string(alpha_) +
                       ", n=" + std::to_string(n_) + "}";
        }
    }

private:
    DegreeLaw(double a, CutoffKind kind, std::uint64_t n, double alpha)
        : a_(a), kind_(kind), n_(n), alpha_(alpha) {
        if (!(a > 1.0) || !(a <= 2.0))
            throw std::invalid_argument("exponent out of range (1,2]");
        if (kind == CutoffKind::Truncated || kind == CutoffKind::AlphaTruncated) {
            if (n < 1) throw std::invalid_argument("cutoff n must be positive");
        }
        if (kind == CutoffKind::AlphaTruncated) {
            if (!(alpha >= 1.0)) throw std::invalid_argument("alpha must be >= 1");
            if (std::abs(alpha - 1.0 / (a - 1.0)) < 1e-9)
                throw std::invalid_argument("alpha equal to 1/(a-1) is not supported");
        }
        switch (kind) {
            case CutoffKind::Truncated:
                support_max_ = n;
                break;
            case CutoffKind::Infinite:
                support_max_ = std::numeric_limits<std::uint64_t>::max();
                break;
            case CutoffKind::AlphaTruncated: {
                const double m = std::pow(static_cast<double>(n), alpha);
                support_max_ = m >= 1e18 ? std::numeric_limits<std::uint64_t>::max()
                                         : static_cast<std::uint64_t>(m);
                break;
            }
        }
        c_ = 1.0 / detail::power_partial_sum(a_, support_max_);
        build_table();
    }

    void build_table() {
        const std::uint64_t m = std::min<std::uint64_t>(support_max_, detail::kSamplerTableCap);
        cdf_.resize(m);
        double acc = 0.0, comp = 0.0;
        for (std::uint64_t j = 1; j <= m; ++j) {
            double term = c_ * std::pow(static_cast<double>(j), -a_);
            double y = term - comp;
            double t = acc + y;
            comp = (t - acc) - y;
            acc = t;
            cdf_[j - 1] = acc;
        }
        table_covers_support_ = (m == support_max_);
        table_mass_ = table_covers_support_ ? cdf_.back() : acc;
    }

    // exact conditional tail sampling beyond the table: Pareto proposal over
    // [M+1/2, B+1/2) rounded to the nearest integer, rejection against the pmf
    std::uint64_t sample_tail(Rng& rng) const {
        const double M = static_cast<double>(cdf_.size());
        const double lo = std::pow(M + 0.5, 1.0 - a_);
        const double hi = bounded()
                              ? std::pow(static_cast<double>(support_max_) + 0.5, 1.0 - a_)
                              : 0.0;
        const double bound = std::pow(1.0 + 0.5 / M, a_);
        for (;;) {
            const double u = rng.uniform();
            const double x = std::pow(lo - u * (lo - hi), 1.0 / (1.0 - a_));
            const double jd = std::floor(x + 0.5);
            const std::uint64_t j = static_cast<std::uint64_t>(jd);
            // proposal mass on j is proportional to the integral of x^{-a}
            // over [j-1/2, j+1/2]
            const double q = (std::pow(jd - 0.5, 1.0 - a_) - std::pow(jd + 0.5, 1.0 - a_)) /
                             (a_ - 1.0);
            const double accept = std::pow(jd, -a_) / (bound * q);
            if (rng.uniform() < accept) return j;
        }
    }

    // sum_{j >= J} j^{-a}/(j*lambda+1), Euler-Maclaurin with a numeric integral
    double weighted_tail(double lambda, double J) const {
        const double a = a_;
        auto f = [a, lambda](double x) {
            return std::pow(x, -a) / (x * lambda + 1.0);
        };
        // substitute x = 1/u: integral over (0, 1/J] of u^{a-1}/(u + lambda)
        auto g = [a, lambda](double u) {
            return u <= 0.0 ? 0.0 : std::pow(u, a - 1.0) / (u + lambda);
        };
        const double integral = detail::integrate(g, 0.0, 1.0 / J, 1e-14);
        const double fJ = f(J);
        const double fpJ = -a * std::pow(J, -a - 1.0) / (J * lambda + 1.0) -
                           lambda * std::pow(J, -a) / ((J * lambda + 1.0) * (J * lambda + 1.0));
        return integral + 0.5 * fJ - fpJ / 12.0;
    }

    double a_;
    CutoffKind kind_;
    std::uint64_t n_;
    double alpha_;
    std::uint64_t support_max_ = 0;
    double c_ = 0.0;
    std::vector<double> cdf_;
    double table_mass_ = 0.0;
    bool table_covers_support_ = false;
};

// comparison quantity for the small-lambda regime: lambda^{a-1} for a < 2,
// lambda*log(1/lambda) at a = 2
inline double rho_asymptotic(double a, double lambda) {
    if (!(a > 1.0) || !(a <= 2.0))
        throw std::invalid_argument("exponent out of range (1,2]");
    if (!(lambda > 0.0) || !(lambda < 1.0))
        throw std::invalid_argument("rho_asymptotic: lambda must lie in (0,1)");
    if (a < 2.0) return std::pow(lambda, a - 1.0);
    return lambda * std::log(1.0 / lambda);
}

}  // namespace cpnet

#pragma once

#include <Eigen/Core>

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "fracstefan/errors.hpp"

namespace fracstefan {

/// Order alpha of the fractional time derivative, restricted to (0, 1].
///
/// alpha = 1 is admitted only so the classical-limit paths can share the
/// evaluators; at alpha = 1 the Wright-function family collapses to
/// erf/erfc/Gaussian closed forms and those are used instead of the series.
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha) : alpha_(alpha) {
        if (!std::isfinite(alpha) || alpha <= 0.0 || alpha > 1.0) {
            throw std::invalid_argument(
                "FractionalOrder: need 0 < alpha <= 1, got " + std::to_string(alpha));
        }
    }

    double value() const noexcept { return alpha_; }

    /// Wright order parameter nu = alpha/2 in (0, 1/2].
    double nu() const noexcept { return 0.5 * alpha_; }

    bool classical() const noexcept { return alpha_ == 1.0; }

private:
    double alpha_;
};

/// Evaluation policy for W(-x, -alpha/2, beta): how many series terms may be
/// spent, where the series hands over to the large-x asymptotic form, and the
/// relative accuracy the caller wants honored (or reported as missed through
/// est_abs_err).
struct WrightEvalConfig {
    int series_terms_max = 400;
    double crossover_x = 8.0;
    double target_rel_err = 1e-10;

    void validate() const {
        if (series_terms_max < 30) {
            throw std::invalid_argument("WrightEvalConfig: series_terms_max must be >= 30");
        }
        if (!(crossover_x > 0.0) || !std::isfinite(crossover_x)) {
            throw std::invalid_argument("WrightEvalConfig: crossover_x must be positive");
        }
        if (!(target_rel_err > 0.0) || !(target_rel_err < 1.0)) {
            throw std::invalid_argument("WrightEvalConfig: target_rel_err must lie in (0, 1)");
        }
    }
};

enum class WrightMethod { Series, Asymptotic, ClosedFormHalf };

struct WrightValue {
    double value = 0.0;
    double est_abs_err = 0.0;
    WrightMethod method = WrightMethod::Series;
};

namespace detail {

inline constexpr long double kPiL = std::numbers::pi_v<long double>;

/// sin(pi x) with exact zeros at integer x.
inline long double sin_pi(long double x) {
    const long double n = std::nearbyint(x);
    const long double r = x - n;
    const long double s = std::sin(kPiL * r);
    const bool odd = std::fmod(std::fabs(n), 2.0L) == 1.0L;
    return odd ? -s : s;
}

/// 1/Gamma(x) as an entire function; exactly 0 at x = 0, -1, -2, ...
inline long double recip_gamma_l(long double x) {
    if (x >= 0.5L) {
        if (x > 1700.0L) return std::exp(-std::lgamma(x));  // 1/Gamma underflows long before this
        return 1.0L / std::tgamma(x);
    }
    if (x == std::nearbyint(x)) return 0.0L;  // pole of Gamma
    // reflection: 1/Gamma(x) = sin(pi x) Gamma(1-x) / pi
    const long double y = 1.0L - x;
    if (y <= 1700.0L) return sin_pi(x) * std::tgamma(y) / kPiL;
    return sin_pi(x) / kPiL * std::exp(std::lgamma(y));
}

struct SeriesOut {
    long double value = 0.0L;
    long double est_abs_err = 0.0L;
    int terms_used = 0;
    bool converged = false;
};

/// Compensated summation of W(-x, -nu, beta) = sum_k (-x)^k / (k! Gamma(beta - nu k)).
///
/// Terms whose Gamma argument lands on a nonpositive integer vanish through
/// the entire reciprocal, so termination must watch a pole-free envelope of
/// the term magnitude: an exact zero in the middle of the sum is not decay.
inline SeriesOut wright_series_l(long double x, long double nu, long double beta,
                                 int max_terms, long double rel_target) {
    const long double eps = std::numeric_limits<long double>::epsilon();
    const long double log_pi = std::log(kPiL);

    SeriesOut out;
    long double sum = 0.0L, comp = 0.0L, abs_sum = 0.0L;
    long double p = 1.0L;  // x^k / k!
    long double envk = 0.0L;
    // index of the largest-magnitude term; termination is gated past it
    const long double k_peak =
        (x > 1.0L) ? std::pow(x * std::pow(nu, nu), 1.0L / (1.0L - nu)) : 1.0L;
    int small_run = 0;
    int k = 0;
    for (; k < max_terms; ++k) {
        const long double w = beta - nu * static_cast<long double>(k);
        long double term;
        if (w >= 0.5L) {
            term = p / std::tgamma(w);
            envk = std::fabs(term);
        } else if (1.0L - w <= 1700.0L) {
            const long double g_over_pi = std::tgamma(1.0L - w) / kPiL;
            envk = p * g_over_pi;
            term = sin_pi(w) * p * g_over_pi;  // exactly 0 at the poles
        } else if (p == 0.0L) {
            term = 0.0L;
            envk = 0.0L;
        } else {
            // Gamma(1-w) overflows; assemble the magnitude in logs
            const long double lmag = std::log(p) + std::lgamma(1.0L - w) - log_pi;
            if (lmag > 11000.0L) {
                out.value = sum;
                out.terms_used = k;
                out.converged = false;
                out.est_abs_err = std::numeric_limits<long double>::infinity();
                return out;
            }
            envk = std::exp(lmag);
            term = sin_pi(w) * envk;
        }
        if (k & 1) term = -term;

        const long double yk = term - comp;
        const long double tk = sum + yk;
        comp = (tk - sum) - yk;
        sum = tk;
        abs_sum += std::fabs(term);

        p *= x / static_cast<long double>(k + 1);
        if (p == 0.0L) {  // every remaining term vanishes
            ++k;
            out.converged = true;
            envk = 0.0L;
            break;
        }
        const long double thresh = 0.01L * rel_target * std::fabs(sum) +
                                   0.5L * eps * abs_sum +
                                   std::numeric_limits<long double>::min();
        if (static_cast<long double>(k) > k_peak + 2.0L && envk < thresh) {
            if (++small_run >= 3) {
                ++k;
                out.converged = true;
                break;
            }
        } else {
            small_run = 0;
        }
    }
    out.value = sum;
    out.terms_used = k;
    // roundoff floor of the compensated sum plus the truncated tail
    out.est_abs_err = 16.0L * eps * abs_sum + 4.0L * envk;
    return out;
}

/// Leading-order large-x form of W(-x, -nu, beta):
///   a0 (nu x)^{(1/2-beta)/(1-nu)} exp(-((1-nu)/nu) (nu x)^{1/(1-nu)}),
/// a0 = 1/sqrt(2 pi (1-nu)). Specializes to the M_nu and beta = 1 decay laws.
inline double wright_asym_leading(double x, double nu, double beta) {
    const double y = nu * x;
    const double q = 1.0 / (1.0 - nu);
    const double a0 = 1.0 / std::sqrt(2.0 * std::numbers::pi * (1.0 - nu));
    const double lg = (0.5 - beta) * q * std::log(y) - (1.0 - nu) / nu * std::pow(y, q);
    return a0 * std::exp(lg);
}

struct AsymCalibration {
    bool usable = false;
    double c0 = 1.0;  // series(x0) / leading_asym(x0) at the crossover
};

/// The leading-order form misses its own O((nu x)^{-1/(1-nu)}) correction,
/// which is a few percent to ~12% at the default crossover. Anchoring the
/// branch to the series value at the crossover keeps W continuous and
/// strictly decreasing across the switch; the anchor is faded out at the
/// correction's own decay rate so the branch stays asymptotically exact.
inline AsymCalibration calibrate_asym(double nu, double beta, const WrightEvalConfig& cfg) {
    const SeriesOut s0 = wright_series_l(cfg.crossover_x, nu, beta,
                                         cfg.series_terms_max, cfg.target_rel_err);
    if (!s0.converged) return {};
    const double a0 = wright_asym_leading(cfg.crossover_x, nu, beta);
    if (!(a0 > 0.0) || !std::isfinite(a0)) return {};
    const double c0 = static_cast<double>(s0.value) / a0;
    if (!(c0 > 1.0 / 3.0) || !(c0 < 3.0)) return {};  // asymptotic regime not reached
    return {true, c0};
}

}  // namespace detail

/// Gamma function; poles at nonpositive integers are rejected (use
/// recip_gamma there, which is entire and returns 0).
inline double gamma(double x) {
    if (x <= 0.0 && x == std::nearbyint(x)) {
        throw std::domain_error("gamma: pole at nonpositive integer x = " + std::to_string(x));
    }
    return std::tgamma(x);
}

/// 1/Gamma(x), entire; 1/Gamma(-n) = 0 for integer n >= 0.
inline double recip_gamma(double x) {
    return static_cast<double>(detail::recip_gamma_l(x));
}

/// Gamma(1 + alpha/2) / Gamma(1 - alpha/2), the prefactor of the linear term
/// in the free-boundary equation; lies in (0, 1) on alpha in (0, 1].
inline double gamma_ratio(FractionalOrder alpha) {
    const double nu = alpha.nu();
    return std::tgamma(1.0 + nu) / std::tgamma(1.0 - nu);
}

/// W(-x, -alpha/2, beta) for x >= 0.
///
/// The solution needs beta = 1 (the profile building block) and
/// beta = 1 - alpha/2 (the Mainardi function). Below the crossover the
/// defining series is summed with compensated summation in extended
/// precision; above it the anchored leading-order asymptotic is used and
/// est_abs_err reports the (heuristic) accuracy actually available there.
inline WrightValue wright(double x, FractionalOrder alpha, double beta,
                          const WrightEvalConfig& cfg = {}) {
    cfg.validate();
    if (!(x >= 0.0) || !std::isfinite(x)) {
        throw std::domain_error("wright: requires finite x >= 0 (argument of W is -x)");
    }
    const double nu = alpha.nu();
    const double dbl_eps = std::numeric_limits<double>::epsilon();

    if (alpha.classical()) {
        if (beta == 1.0) {
            const double v = std::erfc(0.5 * x);
            return {v, 4.0 * dbl_eps * v + std::numeric_limits<double>::min(),
                    WrightMethod::ClosedFormHalf};
        }
        if (beta == 0.5) {  // M_{1/2}(x) = exp(-x^2/4)/sqrt(pi)
            const double v = std::exp(-0.25 * x * x) / std::sqrt(std::numbers::pi);
            return {v, 4.0 * dbl_eps * v + std::numeric_limits<double>::min(),
                    WrightMethod::ClosedFormHalf};
        }
        // any other beta at alpha = 1 falls through to the series with nu = 1/2
    }

    auto run_series = [&](double at) -> WrightValue {
        const detail::SeriesOut s = detail::wright_series_l(
            at, nu, beta, cfg.series_terms_max, cfg.target_rel_err);
        if (!s.converged) {
            throw ConvergenceError(
                "wright: series terms had not decayed below tolerance after " +
                std::to_string(s.terms_used) + " terms (x = " + std::to_string(at) +
                ", alpha = " + std::to_string(alpha.value()) + ", beta = " + std::to_string(beta) +
                "); raise series_terms_max or lower crossover_x");
        }
        const double v = static_cast<double>(s.value);
        const double est = static_cast<double>(s.est_abs_err) + 2.0 * dbl_eps * std::fabs(v);
        return {v, est, WrightMethod::Series};
    };

    if (x <= cfg.crossover_x) return run_series(x);

    const detail::AsymCalibration cal = detail::calibrate_asym(nu, beta, cfg);
    if (!cal.usable) return run_series(x);

    const double q = 1.0 / (1.0 - nu);
    const double fade = std::pow(cfg.crossover_x / x, q);
    const double value = detail::wright_asym_leading(x, nu, beta) * (1.0 + (cal.c0 - 1.0) * fade);
    const double oterm = std::pow(nu * x, -q);  // scale of the neglected correction
    const double est = std::fabs(value) * std::min(0.5, 2.0 * oterm * oterm) +
                       std::numeric_limits<double>::min();
    return {value, est, WrightMethod::Asymptotic};
}

/// Mainardi function M_{alpha/2}(x) = W(-x, -alpha/2, 1 - alpha/2).
/// At alpha = 1 this is exactly the Gaussian exp(-x^2/4)/sqrt(pi).
inline WrightValue mainardi(double x, FractionalOrder alpha, const WrightEvalConfig& cfg = {}) {
    if (alpha.classical()) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw std::domain_error("mainardi: requires finite x >= 0");
        }
        const double v = std::exp(-0.25 * x * x) / std::sqrt(std::numbers::pi);
        return {v, 4.0 * std::numeric_limits<double>::epsilon() * v +
                       std::numeric_limits<double>::min(),
                WrightMethod::ClosedFormHalf};
    }
    return wright(x, alpha, 1.0 - alpha.nu(), cfg);
}

/// Fractional error function 1 - W(-x, -alpha/2, 1); increases from 0 to 1
/// and generalizes erf(x/2). (The alpha -> 1 limit is erf(x/2) itself.)
inline double frac_erf(double x, FractionalOrder alpha, const WrightEvalConfig& cfg = {}) {
    if (alpha.classical()) {
        if (!(x >= 0.0) || !std::isfinite(x)) {
            throw std::domain_error("frac_erf: requires finite x >= 0");
        }
        return std::erf(0.5 * x);
    }
    return 1.0 - wright(x, alpha, 1.0, cfg).value;
}

inline Eigen::ArrayXd wright_values(const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                    FractionalOrder alpha, double beta,
                                    const WrightEvalConfig& cfg = {}) {
    Eigen::ArrayXd out(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = wright(xs[i], alpha, beta, cfg).value;
    return out;
}

inline Eigen::ArrayXd mainardi_values(const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                      FractionalOrder alpha, const WrightEvalConfig& cfg = {}) {
    Eigen::ArrayXd out(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = mainardi(xs[i], alpha, cfg).value;
    return out;
}

inline Eigen::ArrayXd frac_erf_values(const Eigen::Ref<const Eigen::ArrayXd>& xs,
                                      FractionalOrder alpha, const WrightEvalConfig& cfg = {}) {
    Eigen::ArrayXd out(xs.size());
    for (Eigen::Index i = 0; i < xs.size(); ++i) out[i] = frac_erf(xs[i], alpha, cfg);
    return out;
}

}  // namespace fracstefan

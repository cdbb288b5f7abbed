#include "vbank/returns_model.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace vbank {

void ExpCurveParams::validate() const {
    if (!(scale > 0.0) || !(rate > 0.0) || !(baseline > 0.0))
        throw std::invalid_argument("curve scale, rate and baseline must be positive");
    if (!std::isfinite(adjustment))
        throw std::invalid_argument("curve adjustment must be finite");
}

double curve_value(const ExpCurveParams& c, double h) noexcept {
    return c.adjustment - c.baseline + c.scale * std::exp(c.rate * h);
}

double curve_antiderivative(const ExpCurveParams& c, double h) noexcept {
    return c.scale / c.rate * std::exp(c.rate * h) + (c.adjustment - c.baseline) * h;
}

double curve_integral(const ExpCurveParams& c, double lo, double hi) noexcept {
    return curve_antiderivative(c, hi) - curve_antiderivative(c, lo);
}

double eval_curve(const ExpCurveParams& c, double h, bool floored) {
    if (!(h >= 0.0 && h <= 1.0))
        throw std::out_of_range("h must lie in [0, 1]");
    const double raw = curve_value(c, h);
    return floored ? std::max(0.0, raw) : raw;
}

double solve_h(const ExpCurveParams& c, double y, bool* clamped) {
    const double arg = (y - c.adjustment + c.baseline) / c.scale;
    double h = 0.0;
    bool clamp = true;
    if (arg > 0.0) {
        h = std::log(arg) / c.rate;
        clamp = h < 0.0 || h > 1.0;
        h = std::clamp(h, 0.0, 1.0);
    }
    if (clamped)
        *clamped = clamp;
    return h;
}

double intercept_one(const ExpCurveParams& c) { return solve_h(c, 1.0); }
double intercept_zero(const ExpCurveParams& c) { return solve_h(c, 0.0); }

InterceptPair intercepts(const ExpCurveParams& c) {
    InterceptPair out;
    out.h_zero = solve_h(c, 0.0, &out.clamped_zero);
    out.h_one = solve_h(c, 1.0, &out.clamped_one);
    return out;
}

double net_portfolio_return(const ExpCurveParams& c) {
    // everything left of h_zero is floored to zero
    return curve_integral(c, 0.0, 1.0) - curve_integral(c, 0.0, intercept_zero(c));
}

double poly_eval(const PolyCurveParams& p, double h) noexcept {
    double acc = 0.0;
    for (auto it = p.coefficients.rbegin(); it != p.coefficients.rend(); ++it)
        acc = acc * h + *it;
    return acc;
}

namespace {

double poly_antiderivative(const PolyCurveParams& p, double h) {
    double acc = 0.0;
    for (std::size_t k = p.coefficients.size(); k-- > 0;)
        acc = acc * h + p.coefficients[k] / static_cast<double>(k + 1);
    return acc * h;
}

} // namespace

double poly_integral(const PolyCurveParams& p, double lo, double hi) {
    if (lo > hi)
        throw std::invalid_argument("poly_integral: lo must not exceed hi");
    return poly_antiderivative(p, hi) - poly_antiderivative(p, lo);
}

std::vector<double> quantile_positions(std::size_t n) {
    std::vector<double> h(n);
    for (std::size_t i = 0; i < n; ++i)
        h[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    return h;
}

namespace {

double exp_rms(const std::vector<double>& h, const std::vector<double>& r, double a, double b) {
    double ss = 0.0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        const double e = a * std::exp(b * h[i]) - r[i];
        ss += e * e;
    }
    return std::sqrt(ss / static_cast<double>(h.size()));
}

ExpFit log_linear_fit(const std::vector<double>& h, const std::vector<double>& r) {
    const double n = static_cast<double>(h.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
        if (!(r[i] > 0.0))
            throw std::invalid_argument("log-linear exponential fit needs strictly positive returns");
        const double y = std::log(r[i]);
        sx += h[i];
        sy += y;
        sxx += h[i] * h[i];
        sxy += h[i] * y;
    }
    const double denom = n * sxx - sx * sx;
    const double b = (n * sxy - sx * sy) / denom;
    const double ln_a = (sy - b * sx) / n;
    ExpFit fit;
    fit.scale = std::exp(ln_a);
    fit.rate = b;
    fit.rms_residual = exp_rms(h, r, fit.scale, fit.rate);
    return fit;
}

constexpr int kMaxIterations = 100;
constexpr double kStepTolerance = 1e-12;

ExpFit gauss_newton_fit(const std::vector<double>& h, const std::vector<double>& r, ExpFit seed) {
    double a = seed.scale;
    double b = seed.rate;
    auto sse = [&](double aa, double bb) {
        const double rms = exp_rms(h, r, aa, bb);
        return rms * rms;
    };
    double current = sse(a, b);
    for (int it = 1; it <= kMaxIterations; ++it) {
        // normal equations J^T J d = -J^T e for J = [exp(bh), a h exp(bh)]
        double j11 = 0, j12 = 0, j22 = 0, g1 = 0, g2 = 0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double e_bh = std::exp(b * h[i]);
            const double resid = a * e_bh - r[i];
            const double da = e_bh;
            const double db = a * h[i] * e_bh;
            j11 += da * da;
            j12 += da * db;
            j22 += db * db;
            g1 += da * resid;
            g2 += db * resid;
        }
        const double det = j11 * j22 - j12 * j12;
        if (!(std::abs(det) > 0.0))
            throw FitError("Gauss-Newton: singular normal equations", std::sqrt(current));
        double step_a = -(j22 * g1 - j12 * g2) / det;
        double step_b = -(j11 * g2 - j12 * g1) / det;

        // halve until the residual does not grow
        double t = 1.0;
        double next = sse(a + step_a, b + step_b);
        while (next > current && t > 1e-10) {
            t *= 0.5;
            next = sse(a + t * step_a, b + t * step_b);
        }
        step_a *= t;
        step_b *= t;
        a += step_a;
        b += step_b;
        current = next;

        const double rel = std::max(std::abs(step_a) / std::max(std::abs(a), 1e-300),
                                    std::abs(step_b) / std::max(std::abs(b), 1.0));
        if (rel < kStepTolerance || (step_a == 0.0 && step_b == 0.0))
            return ExpFit{a, b, std::sqrt(current), it};
    }
    throw FitError("Gauss-Newton did not converge within " + std::to_string(kMaxIterations) + " iterations",
                   std::sqrt(current));
}

} // namespace

ExpFit fit_exponential(const ReturnDataset& ds, FitMethod method) {
    if (ds.returns.size() < 3)
        throw std::invalid_argument("fit_exponential needs at least 3 returns");
    const auto h = quantile_positions(ds.returns.size());
    ExpFit seed = log_linear_fit(h, ds.returns);
    if (method == FitMethod::log_linear)
        return seed;
    return gauss_newton_fit(h, ds.returns, seed);
}

PolyFit fit_poly7(const ReturnDataset& ds) {
    constexpr int kTerms = 8;
    const auto n = static_cast<Eigen::Index>(ds.returns.size());
    if (n < kTerms)
        throw std::invalid_argument("fit_poly7 needs at least 8 returns");
    const auto h = quantile_positions(ds.returns.size());

    Eigen::MatrixXd vander(n, kTerms);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double pw = 1.0;
        for (int k = 0; k < kTerms; ++k) {
            vander(i, k) = pw;
            pw *= h[static_cast<std::size_t>(i)];
        }
        y(i) = ds.returns[static_cast<std::size_t>(i)];
    }
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(vander);
    if (qr.rank() < kTerms)
        throw FitError("fit_poly7: design matrix is rank deficient (rank " + std::to_string(qr.rank()) + ")",
                       0.0);
    const Eigen::VectorXd coef = qr.solve(y);

    PolyFit fit;
    for (int k = 0; k < kTerms; ++k)
        fit.params.coefficients[static_cast<std::size_t>(k)] = coef(k);
    fit.rms_residual = std::sqrt((vander * coef - y).squaredNorm() / static_cast<double>(n));
    return fit;
}

} // namespace vbank

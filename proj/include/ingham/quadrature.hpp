#ifndef INGHAM_QUADRATURE_HPP
#define INGHAM_QUADRATURE_HPP

// 1-d quadrature: globally adaptive Gauss-Kronrod 7/15 for general
// integrands, and fixed Gauss-Legendre panel rules (nodes by Newton on the
// Legendre recurrence) where a spectral-order composite rule is wanted.

#include <cmath>
#include <cstddef>
#include <functional>
#include <numbers>
#include <sstream>
#include <vector>

#include "core.hpp"

namespace ingham::quadrature {

namespace detail {

// 15-point Kronrod extension of 7-point Gauss: abscissae/weights on [-1,1].
inline constexpr double xgk[8] = {
    0.9914553711208126, 0.9491079123427585, 0.8648644233597691, 0.7415311855993944,
    0.5860872354676911, 0.4058451513773972, 0.2077849550078985, 0.0};
inline constexpr double wgk[8] = {
    0.02293532201052922, 0.06309209262997855, 0.1047900103222502, 0.1406532597155259,
    0.1690047266392679,  0.1903505780647854,  0.2044329400752989, 0.2094821410847278};
inline constexpr double wg[4] = {
    0.1294849661688697, 0.2797053914892767, 0.3818300505051189, 0.4179591836734694};

struct panel {
    double a, b, value, err;
};

inline panel gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    const double fc = f(c);
    double kron = wgk[7] * fc;
    double gauss = wg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double fx = f(c - h * xgk[i]), fy = f(c + h * xgk[i]);
        kron += wgk[i] * (fx + fy);
        if (i % 2 == 1) gauss += wg[i / 2] * (fx + fy);
    }
    panel p;
    p.a = a;
    p.b = b;
    p.value = kron * h;
    p.err = std::abs((kron - gauss) * h);
    return p;
}

} // namespace detail

struct AdaptiveResult {
    double value = 0.0;
    double error_estimate = 0.0;
    std::size_t panels = 1;
};

/// Globally adaptive integral of f over [a,b]: repeatedly bisect the panel
/// with the largest Kronrod error until the summed estimate meets
/// max(abs_tol, rel_tol*|I|). Failure to converge within the panel budget is
/// a numeric_error carrying the worst panel for diagnosis.
inline AdaptiveResult integrate(const std::function<double(double)>& f, double a, double b,
                                double abs_tol = 1e-12, double rel_tol = 1e-10,
                                std::size_t max_panels = 4096) {
    if (!(a < b)) throw validation_error("integrate: need a < b");
    std::vector<detail::panel> panels;
    panels.reserve(64);
    panels.push_back(detail::gk15(f, a, b));
    for (;;) {
        // Fresh sums every round: a panel evaluating to inf/nan (e.g. a node
        // landing on a pole) must poison the estimate only while it exists,
        // not after it has been split away.
        double total = 0.0, err = 0.0;
        std::size_t worst = 0;
        const auto bad = [](const detail::panel& p) {
            return !std::isfinite(p.err) || !std::isfinite(p.value);
        };
        for (std::size_t i = 0; i < panels.size(); ++i) {
            total += panels[i].value;
            err += panels[i].err;
            if (bad(panels[i]) ? !bad(panels[worst])
                               : (!bad(panels[worst]) && panels[i].err > panels[worst].err))
                worst = i;
        }
        const bool converged =
            std::isfinite(total) && std::isfinite(err) &&
            err <= std::max(abs_tol, rel_tol * std::abs(total));
        if (converged) {
            AdaptiveResult res;
            res.value = total;
            res.error_estimate = err;
            res.panels = panels.size();
            return res;
        }
        if (panels.size() >= max_panels) {
            std::ostringstream msg;
            msg << "integrate: no convergence after " << panels.size()
                << " panels; residual error " << err << ", worst panel [" << panels[worst].a
                << ", " << panels[worst].b << "] contributes " << panels[worst].err;
            throw numeric_error(msg.str());
        }
        const detail::panel split = panels[worst];
        const double mid = 0.5 * (split.a + split.b);
        panels[worst] = detail::gk15(f, split.a, mid);
        panels.push_back(detail::gk15(f, mid, split.b));
    }
}

/// Gauss-Legendre nodes and weights on [-1,1], found by Newton iteration on
/// the three-term Legendre recurrence from the Chebyshev initial guess.
inline void gauss_legendre(std::size_t order, std::vector<double>& nodes,
                           std::vector<double>& weights) {
    if (order == 0) throw validation_error("gauss_legendre: order must be positive");
    nodes.assign(order, 0.0);
    weights.assign(order, 0.0);
    const std::size_t m = (order + 1) / 2;
    for (std::size_t i = 0; i < m; ++i) {
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                            (static_cast<double>(order) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 64; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= order; ++k) {
                const double pk = ((2.0 * static_cast<double>(k) - 1.0) * x * p1 -
                                   (static_cast<double>(k) - 1.0) * p0) /
                                  static_cast<double>(k);
                p0 = p1;
                p1 = pk;
            }
            dp = static_cast<double>(order) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
}

/// Composite Gauss-Legendre sum of f over [a,b] split into `panels` equal
/// pieces with an order-point rule on each.
inline double composite_gauss(const std::function<double(double)>& f, double a, double b,
                              std::size_t panels, std::size_t order) {
    if (!(a < b)) throw validation_error("composite_gauss: need a < b");
    if (panels == 0) throw validation_error("composite_gauss: need at least one panel");
    std::vector<double> x, w;
    gauss_legendre(order, x, w);
    const double h = (b - a) / static_cast<double>(panels);
    double total = 0.0;
    for (std::size_t p = 0; p < panels; ++p) {
        const double lo = a + h * static_cast<double>(p);
        const double c = lo + 0.5 * h;
        double s = 0.0;
        for (std::size_t i = 0; i < order; ++i) s += w[i] * f(c + 0.5 * h * x[i]);
        total += 0.5 * h * s;
    }
    return total;
}

} // namespace ingham::quadrature

#endif // INGHAM_QUADRATURE_HPP

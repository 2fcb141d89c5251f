#ifndef INGHAM_WEIGHTS_HPP
#define INGHAM_WEIGHTS_HPP

// Decay profiles psi (weights on the frequency axis) and the criterion
// integral I = \int_1^\infty psi(t)/t^2 dt. Catalog families are classified
// by their exact tail behaviour; tabulated/custom profiles only ever earn
// "divergent" (clear growth trend) or "inconclusive" — convergence of an
// improper integral is not decidable from finitely many samples.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "core.hpp"
#include "quadrature.hpp"

namespace ingham::weights {

enum class family_kind {
    log_quotient,  // t / log(e+t)
    log_power,     // t / (log(e+t))^beta
    power,         // t^alpha, alpha in (0,1)
    linear,        // a * t
    constant,      // c
    product_custom,  // t * theta(t), theta supplied as a callable
    tabulated_psi,   // linear interpolation of (t, psi) samples
    tabulated_theta  // psi = t * interpolated theta
};

enum class classification { divergent, convergent, inconclusive };
enum class criterion_method { symbolic_tail, numeric_extrapolation };

inline const char* to_string(classification c) {
    switch (c) {
        case classification::divergent: return "divergent";
        case classification::convergent: return "convergent";
        default: return "inconclusive";
    }
}

inline const char* to_string(criterion_method m) {
    return m == criterion_method::symbolic_tail ? "symbolic-tail" : "numeric-extrapolation";
}

/// The weight psi(t) >= 0 on [0,infty), with monotonicity metadata. For
/// product-form profiles (psi = t*theta, theta nonincreasing -> 0) the
/// factor theta is exposed separately.
struct DecayProfile {
    family_kind family = family_kind::constant;
    double param = 0.0;  // beta / alpha / a / c depending on family
    double scale = 1.0;  // overall positive factor; classification-invariant
    std::function<double(double)> theta_fn;            // product_custom
    std::vector<std::pair<double, double>> table;      // tabulated families
    bool increasing = false;   // psi nondecreasing on [0,infty)
    bool product_form = false; // psi = t*theta with theta nonincreasing -> 0
    std::string name;

    double interpolate(double t) const {
        // Piecewise linear inside the sampled range, held constant outside it.
        if (t <= table.front().first) return table.front().second;
        if (t >= table.back().first) return table.back().second;
        auto hi = std::upper_bound(table.begin(), table.end(), t,
                                   [](double v, const auto& s) { return v < s.first; });
        auto lo = hi - 1;
        const double w = (t - lo->first) / (hi->first - lo->first);
        return lo->second + w * (hi->second - lo->second);
    }

    double operator()(double t) const {
        if (t < 0.0 || !std::isfinite(t)) throw input_error("profile: t must be finite and >= 0");
        double v = 0.0;
        switch (family) {
            case family_kind::log_quotient: v = t / std::log(std::numbers::e + t); break;
            case family_kind::log_power: v = t / std::pow(std::log(std::numbers::e + t), param); break;
            case family_kind::power: v = std::pow(t, param); break;
            case family_kind::linear: v = param * t; break;
            case family_kind::constant: v = param; break;
            case family_kind::product_custom: v = t * theta_fn(t); break;
            case family_kind::tabulated_psi: v = interpolate(t); break;
            case family_kind::tabulated_theta: v = t * interpolate(t); break;
        }
        return scale * v;
    }

    /// theta(t) = psi(t)/t for product-form profiles; only defined for t > 0.
    double theta(double t) const {
        if (!product_form) throw contract_error("profile '" + name + "' is not product-form");
        if (!(t > 0.0)) throw input_error("theta: t must be positive");
        switch (family) {
            case family_kind::log_quotient: return scale / std::log(std::numbers::e + t);
            case family_kind::log_power: return scale / std::pow(std::log(std::numbers::e + t), param);
            case family_kind::power: return scale * std::pow(t, param - 1.0);
            case family_kind::constant: return scale * param / t;
            case family_kind::product_custom: return scale * theta_fn(t);
            case family_kind::tabulated_theta: return scale * interpolate(t);
            default: return (*this)(t) / t;
        }
    }
};

inline double evaluate_profile(const DecayProfile& p, double t) { return p(t); }

// --- catalog factories ------------------------------------------------------

inline DecayProfile log_quotient_profile(double scale = 1.0) {
    if (!(scale > 0.0)) throw input_error("profile scale must be positive");
    DecayProfile p;
    p.family = family_kind::log_quotient;
    p.scale = scale;
    p.increasing = true;
    p.product_form = true;  // theta = 1/log(e+t)
    p.name = "t/log(e+t)";
    return p;
}

inline DecayProfile log_power_profile(double beta, double scale = 1.0) {
    if (!(beta > 0.0)) throw input_error("log-power profile: beta must be positive");
    if (!(scale > 0.0)) throw input_error("profile scale must be positive");
    DecayProfile p;
    p.family = family_kind::log_power;
    p.param = beta;
    p.scale = scale;
    // t/log^beta(e+t) is increasing iff min_t [log(e+t) - beta*t/(e+t)] >= 0,
    // attained at t = (beta-1)e with value log(beta) - beta + 2.
    p.increasing = (std::log(beta) - beta + 2.0 >= 0.0);
    p.product_form = true;
    std::ostringstream n;
    n << "t/log(e+t)^" << beta;
    p.name = n.str();
    return p;
}

inline DecayProfile power_profile(double alpha, double scale = 1.0) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw input_error("power profile: alpha must lie in (0,1); use a*t for alpha = 1");
    if (!(scale > 0.0)) throw input_error("profile scale must be positive");
    DecayProfile p;
    p.family = family_kind::power;
    p.param = alpha;
    p.scale = scale;
    p.increasing = true;
    p.product_form = true;  // theta = t^{alpha-1}
    std::ostringstream n;
    n << "t^" << alpha;
    p.name = n.str();
    return p;
}

inline DecayProfile linear_profile(double a) {
    if (!(a > 0.0)) throw input_error("linear profile: coefficient must be positive");
    DecayProfile p;
    p.family = family_kind::linear;
    p.param = a;
    p.increasing = true;
    p.product_form = false;  // theta = a does not decrease to 0
    std::ostringstream n;
    n << a << "*t";
    p.name = n.str();
    return p;
}

inline DecayProfile constant_profile(double c) {
    if (!(c >= 0.0)) throw input_error("constant profile: value must be nonnegative");
    DecayProfile p;
    p.family = family_kind::constant;
    p.param = c;
    p.increasing = true;  // nondecreasing
    p.product_form = true;  // theta = c/t decreases to 0
    std::ostringstream n;
    n << c;
    p.name = n.str();
    return p;
}

inline DecayProfile product_profile(std::function<double(double)> theta, std::string name,
                                    bool increasing = false) {
    if (!theta) throw input_error("product profile: theta callable required");
    DecayProfile p;
    p.family = family_kind::product_custom;
    p.theta_fn = std::move(theta);
    p.increasing = increasing;
    p.product_form = true;
    p.name = std::move(name);
    return p;
}

inline DecayProfile tabulated_profile(std::vector<std::pair<double, double>> samples,
                                      bool samples_are_theta, std::string name) {
    if (samples.size() < 2) throw input_error("tabulated profile: need at least two samples");
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (!std::isfinite(samples[i].first) || !std::isfinite(samples[i].second))
            throw input_error("tabulated profile: non-finite sample");
        if (samples[i].first < 0.0 || samples[i].second < 0.0)
            throw input_error("tabulated profile: samples must be nonnegative");
        if (i > 0 && !(samples[i].first > samples[i - 1].first))
            throw input_error("tabulated profile: abscissae must be strictly increasing");
    }
    DecayProfile p;
    p.table = std::move(samples);
    p.name = std::move(name);
    if (samples_are_theta) {
        for (std::size_t i = 1; i < p.table.size(); ++i)
            if (p.table[i].second > p.table[i - 1].second * (1.0 + 1e-12))
                throw input_error("tabulated theta: samples must be nonincreasing");
        p.family = family_kind::tabulated_theta;
        p.product_form = true;
    } else {
        p.family = family_kind::tabulated_psi;
        p.increasing = std::is_sorted(p.table.begin(), p.table.end(),
                                      [](const auto& a, const auto& b) { return a.second < b.second; });
    }
    return p;
}

// --- profile files and the mini-language ------------------------------------

/// Sample tables are plain text: one "t value" pair per line, '#' comments.
inline std::vector<std::pair<double, double>> read_profile_table(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open profile table '" + path + "'");
    std::vector<std::pair<double, double>> samples;
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ss(line);
        double t, v;
        if (ss >> t >> v) samples.emplace_back(t, v);
        else {
            std::string junk;
            if (ss.clear(), ss >> junk)
                throw input_error("profile table '" + path + "': malformed line '" + line + "'");
        }
    }
    return samples;
}

namespace detail {

inline bool parse_number(const std::string& s, double& out) {
    if (s.empty()) return false;
    char* end = nullptr;
    out = std::strtod(s.c_str(), &end);
    return end == s.c_str() + s.size() && std::isfinite(out);
}

} // namespace detail

/// Parse the profile mini-language:
///   t/log(e+t) | t/log(e+t)^B | t^A | A*t | C | table:PATH | t*table:PATH
/// Parenthesised t/(log(e+t))^B is accepted too. A in (0,1), B > 0, C >= 0.
inline DecayProfile parse_profile(const std::string& text) {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw input_error("empty profile string");

    const auto starts = [&](const char* pre) { return s.rfind(pre, 0) == 0; };
    double v = 0.0;
    if (s == "t/log(e+t)" || s == "t/(log(e+t))") return log_quotient_profile();
    if (starts("t/log(e+t)^") && detail::parse_number(s.substr(11), v))
        return log_power_profile(v);
    if (starts("t/(log(e+t))^") && detail::parse_number(s.substr(13), v))
        return log_power_profile(v);
    if (starts("t*table:"))
        return tabulated_profile(read_profile_table(s.substr(8)), true, s);
    if (starts("table:"))
        return tabulated_profile(read_profile_table(s.substr(6)), false, s);
    if (starts("t^") && detail::parse_number(s.substr(2), v)) return power_profile(v);
    if (s.size() > 2 && s.compare(s.size() - 2, 2, "*t") == 0 &&
        detail::parse_number(s.substr(0, s.size() - 2), v))
        return linear_profile(v);
    if (detail::parse_number(s, v)) return constant_profile(v);
    throw input_error("cannot parse profile '" + text +
                      "'; expected t/log(e+t), t/log(e+t)^B, t^A, A*t, C, "
                      "table:PATH or t*table:PATH");
}

// --- the criterion integral --------------------------------------------------

struct CriterionReport {
    classification cls = classification::inconclusive;
    criterion_method method = criterion_method::symbolic_tail;
    std::vector<std::pair<double, double>> partial_integrals;  // (T, I(T))
    double value = std::numeric_limits<double>::quiet_NaN();   // only if convergent
    bool has_value = false;
    double fitted_slope = std::numeric_limits<double>::quiet_NaN();  // per decade
    int dimension = 1;              // 1 for criterion, d for radial_criterion_d
    double surface_constant = 1.0;  // omega_{d-1} applied to values
    std::string profile_name;
    std::string notes;
};

namespace detail {

// I(T) at decade points T = 10, 100, ..., computed incrementally by adaptive
// quadrature, capped by `t_max` for tabulated domains.
inline std::vector<std::pair<double, double>> partial_table(const DecayProfile& p, double t_max) {
    std::vector<std::pair<double, double>> out;
    double acc = 0.0, lo = 1.0;
    for (int j = 1; j <= 8; ++j) {
        const double T = std::pow(10.0, j);
        if (T > t_max * (1.0 + 1e-12)) break;
        acc += quadrature::integrate([&p](double t) { return p(t) / (t * t); }, lo, T).value;
        out.emplace_back(T, acc);
        lo = T;
    }
    return out;
}

// Least-squares slope of I against log10(T) over the last three decades:
// the most recent trend only, since for a slowly settling convergent
// integral the early decades still carry growth and would bias the fit
// toward a false divergence call.
inline double growth_slope(const std::vector<std::pair<double, double>>& partials) {
    const std::size_t n = std::min<std::size_t>(partials.size(), 3);
    const std::size_t off = partials.size() - n;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double x = std::log10(partials[off + i].first);
        const double y = partials[off + i].second;
        sx += x; sy += y; sxx += x * x; sxy += x * y;
    }
    const double dn = static_cast<double>(n);
    return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

} // namespace detail

/// Classify I = \int_1^\infty psi(t)/t^2 dt. Catalog families are decided by
/// the exact tail exponent; tabulated/custom profiles by a growth-slope
/// heuristic that can only ever report divergent-or-inconclusive.
inline CriterionReport criterion(const DecayProfile& p) {
    CriterionReport r;
    r.profile_name = p.name;
    switch (p.family) {
        case family_kind::log_quotient:
            r.partial_integrals = detail::partial_table(p, 1e8);
            r.cls = classification::divergent;
            r.method = criterion_method::symbolic_tail;
            r.notes = "tail integrand ~ 1/(t log t); integral of an exact logarithmic derivative diverges";
            break;
        case family_kind::log_power: {
            r.partial_integrals = detail::partial_table(p, 1e8);
            const double beta = p.param;
            if (beta > 1.0) {
                r.cls = classification::convergent;
                r.method = criterion_method::numeric_extrapolation;
                // Tail beyond T: substituting s = log(e+t) gives
                // int_S^inf s^-beta (1 - e^{1-s})^{-1} ds = S^{1-beta}/(beta-1)
                // up to a relative correction below e/T ~ 3e-8 of the tail.
                const double T = r.partial_integrals.back().first;
                const double S = std::log(std::numbers::e + T);
                r.value = r.partial_integrals.back().second +
                          p.scale * std::pow(S, 1.0 - beta) / (beta - 1.0);
                r.has_value = true;
                r.notes = "quadrature on [1,1e8] plus analytic log-power tail";
            } else {
                r.cls = classification::divergent;
                r.method = criterion_method::symbolic_tail;
                r.notes = "tail integrand ~ 1/(t log^beta t) with beta <= 1 diverges";
            }
            break;
        }
        case family_kind::power:
            r.partial_integrals = detail::partial_table(p, 1e8);
            r.cls = classification::convergent;
            r.method = criterion_method::symbolic_tail;
            r.value = p.scale / (1.0 - p.param);  // int_1^inf t^{alpha-2} dt
            r.has_value = true;
            r.notes = "closed form 1/(1-alpha)";
            break;
        case family_kind::linear:
            r.partial_integrals = detail::partial_table(p, 1e8);
            r.cls = classification::divergent;
            r.method = criterion_method::symbolic_tail;
            r.notes = "integrand a/t diverges logarithmically";
            break;
        case family_kind::constant:
            r.partial_integrals = detail::partial_table(p, 1e8);
            r.cls = classification::convergent;
            r.method = criterion_method::symbolic_tail;
            r.value = p.scale * p.param;  // int_1^inf c t^{-2} dt = c
            r.has_value = true;
            r.notes = "closed form c";
            break;
        case family_kind::product_custom:
        case family_kind::tabulated_psi:
        case family_kind::tabulated_theta: {
            double t_max = 1e8;
            if (p.family != family_kind::product_custom) t_max = p.table.back().first;
            r.partial_integrals = detail::partial_table(p, t_max);
            r.method = criterion_method::numeric_extrapolation;
            if (r.partial_integrals.size() < 3) {
                r.cls = classification::inconclusive;
                r.notes = "fewer than three decades available; no trend to fit";
                break;
            }
            r.fitted_slope = detail::growth_slope(r.partial_integrals);
            if (r.fitted_slope >= 0.05) {
                r.cls = classification::divergent;
                r.notes = "partial integrals still growing >= 0.05 per decade";
            } else {
                r.cls = classification::inconclusive;
                r.notes = "growth below 0.05 per decade; convergence not decidable from samples";
            }
            break;
        }
    }
    return r;
}

/// Surface area of the unit sphere S^{d-1} in R^d.
inline double sphere_surface(int d) {
    if (d < 1) throw input_error("sphere_surface: dimension must be positive");
    return 2.0 * std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d);
}

/// The d-dimensional radial criterion int_{|xi|>=1} theta(|xi|)/|xi|^d dxi.
/// Polar coordinates reduce it to omega_{d-1} * int_1^inf theta(t)/t dt,
/// which equals omega_{d-1} * I, so the classification never depends on d.
inline CriterionReport radial_criterion_d(const DecayProfile& p, int d) {
    if (d < 1) throw input_error("radial_criterion_d: dimension must be positive");
    if (!p.product_form)
        throw input_error("radial_criterion_d: profile '" + p.name + "' is not product-form");
    CriterionReport r = criterion(p);
    const double omega = sphere_surface(d);
    r.dimension = d;
    r.surface_constant = omega;
    for (auto& [T, I] : r.partial_integrals) I *= omega;
    if (r.has_value) r.value *= omega;
    return r;
}

} // namespace ingham::weights

#endif // INGHAM_WEIGHTS_HPP

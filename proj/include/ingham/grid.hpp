#ifndef INGHAM_GRID_HPP
#define INGHAM_GRID_HPP

// Uniform-grid functions on R^d and their discrete Fourier transforms under
// the fixed kernel e^{-2pi i x.xi}. Transforms are Riemann sums on the DFT
// dual grid xi_k = (k - floor(N/2)) / (N h), evaluated exactly by FFT after
// an index premodulation, so forward/inverse round-trip to machine precision.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"
#include "fft.hpp"

namespace ingham::grid {

using cd = std::complex<double>;

/// Library-wide transform convention tag, written into every spectrum and
/// grid file. There is deliberately no way to construct any other value.
inline constexpr const char* convention_tag = "e^-2pi*i*x.xi";

/// Complex samples f(origin + j*spacing) on a uniform row-major grid.
struct SampledFunction {
    std::vector<std::size_t> extent;  // samples per axis
    std::vector<double> origin;       // coordinate of index (0,...,0)
    std::vector<double> spacing;      // strictly positive, per axis
    std::vector<cd> values;           // row-major, size = prod(extent)
    std::string label;
    std::string algebra;  // optional tag: which group the coordinates mean

    std::size_t dims() const { return extent.size(); }
    double coordinate(std::size_t axis, std::size_t index) const {
        return origin[axis] + spacing[axis] * static_cast<double>(index);
    }
    double cell_volume() const {
        double v = 1.0;
        for (double h : spacing) v *= h;
        return v;
    }
};

/// Samples of a transform on the dual grid of some SampledFunction. Keeps
/// the source grid so the inverse is a grid-exact algebraic undo.
struct Spectrum {
    std::vector<std::size_t> extent;
    std::vector<double> freq_origin;   // xi at index (0,...,0)
    std::vector<double> freq_spacing;  // 1/(N_a h_a) per axis
    std::vector<cd> values;
    std::vector<double> source_origin;
    std::vector<double> source_spacing;
    std::string label;
    std::string convention = convention_tag;

    std::size_t dims() const { return extent.size(); }
    double frequency(std::size_t axis, std::size_t index) const {
        return freq_origin[axis] + freq_spacing[axis] * static_cast<double>(index);
    }
    double cell_volume() const {
        double v = 1.0;
        for (double s : freq_spacing) v *= s;
        return v;
    }
};

namespace detail {

inline void check_geometry(const std::vector<std::size_t>& extent,
                           const std::vector<double>& origin,
                           const std::vector<double>& spacing,
                           std::size_t value_count) {
    if (extent.empty())
        throw validation_error("grid: dims must be positive");
    if (origin.size() != extent.size() || spacing.size() != extent.size())
        throw validation_error("grid: origin/spacing rank does not match extent");
    for (std::size_t n : extent)
        if (n == 0) throw validation_error("grid: zero extent along an axis");
    for (double h : spacing)
        if (!(h > 0.0) || !std::isfinite(h))
            throw validation_error("grid: spacing must be strictly positive and finite");
    const std::size_t total = element_count(extent);
    if (total > max_grid_samples)
        throw capacity_error("grid: " + std::to_string(total) + " samples exceed budget of " +
                             std::to_string(max_grid_samples));
    if (value_count != total)
        throw validation_error("grid: value array has " + std::to_string(value_count) +
                               " entries, extent wants " + std::to_string(total));
}

inline void check_finite(const std::vector<cd>& values, const char* what) {
    for (const cd& z : values)
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
            throw input_error(std::string(what) + ": non-finite sample");
}

// Apply a 1-d map to every line of `values` along `axis`:
//   line[j] *= pre[j];  fft(line, forward);  line[k] *= post[k].
inline void transform_axis(std::vector<cd>& values, const std::vector<std::size_t>& extent,
                           std::size_t axis, const std::vector<cd>& pre,
                           const std::vector<cd>& post, bool inverse_fft) {
    const std::size_t n = extent[axis];
    const std::size_t stride = axis_stride(extent, axis);
    std::vector<std::size_t> outer = extent;
    outer[axis] = 1;
    std::vector<std::size_t> idx(extent.size(), 0);
    std::vector<cd> line(n);
    do {
        const std::size_t base = flatten(idx, extent);
        for (std::size_t j = 0; j < n; ++j) line[j] = values[base + j * stride] * pre[j];
        fft::transform(line, inverse_fft);
        for (std::size_t k = 0; k < n; ++k) values[base + k * stride] = line[k] * post[k];
    } while (next_index(idx, outer));
}

} // namespace detail

inline void validate(const SampledFunction& f) {
    detail::check_geometry(f.extent, f.origin, f.spacing, f.values.size());
}

inline void validate(const Spectrum& F) {
    detail::check_geometry(F.extent, F.freq_origin, F.freq_spacing, F.values.size());
    if (F.source_origin.size() != F.dims() || F.source_spacing.size() != F.dims())
        throw validation_error("spectrum: missing source grid");
    if (F.convention != convention_tag)
        throw input_error("spectrum: unknown transform convention '" + F.convention + "'");
}

/// Sample a callable on an explicit grid.
inline SampledFunction from_function(std::vector<std::size_t> extent, std::vector<double> origin,
                                     std::vector<double> spacing,
                                     const std::function<cd(const std::vector<double>&)>& fn,
                                     std::string label = {}) {
    SampledFunction f;
    f.extent = std::move(extent);
    f.origin = std::move(origin);
    f.spacing = std::move(spacing);
    f.label = std::move(label);
    detail::check_geometry(f.extent, f.origin, f.spacing, element_count(f.extent));
    f.values.resize(element_count(f.extent));
    std::vector<std::size_t> idx(f.dims(), 0);
    std::vector<double> x(f.dims());
    std::size_t flat = 0;
    do {
        for (std::size_t a = 0; a < f.dims(); ++a) x[a] = f.coordinate(a, idx[a]);
        f.values[flat++] = fn(x);
    } while (next_index(idx, f.extent));
    return f;
}

/// Riemann-sum Fourier transform F(xi_k) = h^d sum_j f(x_j) e^{-2pi i x_j.xi_k}
/// on the dual grid, exact as a finite sum (computed via FFT, not quadrature).
inline Spectrum forward_transform(const SampledFunction& f) {
    validate(f);
    detail::check_finite(f.values, "forward_transform");
    Spectrum F;
    F.extent = f.extent;
    F.values = f.values;
    F.source_origin = f.origin;
    F.source_spacing = f.spacing;
    F.label = f.label;
    F.freq_origin.resize(f.dims());
    F.freq_spacing.resize(f.dims());
    for (std::size_t a = 0; a < f.dims(); ++a) {
        const std::size_t n = f.extent[a];
        const double h = f.spacing[a];
        const std::size_t k0 = n / 2;
        F.freq_spacing[a] = 1.0 / (static_cast<double>(n) * h);
        F.freq_origin[a] = -static_cast<double>(k0) * F.freq_spacing[a];
        // x_j.xi_k = (o + jh)(k - k0)/(nh): split the jk/n part into the FFT
        // and fold the rest into pre/post phases.
        std::vector<cd> pre(n), post(n);
        for (std::size_t j = 0; j < n; ++j)
            pre[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k0) % n) /
                                         static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k)
            post[k] = h * std::polar(1.0, -2.0 * std::numbers::pi * f.origin[a] * F.frequency(a, k));
        detail::transform_axis(F.values, F.extent, a, pre, post, /*inverse_fft=*/false);
    }
    return F;
}

/// Exact algebraic inverse of forward_transform on the same grid pair.
inline SampledFunction inverse_transform(const Spectrum& F) {
    validate(F);
    detail::check_finite(F.values, "inverse_transform");
    for (std::size_t a = 0; a < F.dims(); ++a) {
        const std::size_t n = F.extent[a];
        const double dual = 1.0 / (static_cast<double>(n) * F.source_spacing[a]);
        if (std::abs(F.freq_spacing[a] - dual) > 1e-12 * dual ||
            std::abs(F.freq_origin[a] + static_cast<double>(n / 2) * dual) > 1e-9 * dual)
            throw input_error("inverse_transform: spectrum grid is not the dual of its source grid");
    }
    SampledFunction f;
    f.extent = F.extent;
    f.origin = F.source_origin;
    f.spacing = F.source_spacing;
    f.values = F.values;
    f.label = F.label;
    for (std::size_t a = 0; a < f.dims(); ++a) {
        const std::size_t n = f.extent[a];
        const double h = f.spacing[a];
        const std::size_t k0 = n / 2;
        std::vector<cd> pre(n), post(n);
        for (std::size_t k = 0; k < n; ++k)
            pre[k] = std::polar(1.0 / h, 2.0 * std::numbers::pi * f.origin[a] * F.frequency(a, k));
        for (std::size_t j = 0; j < n; ++j)
            post[j] = std::polar(1.0 / static_cast<double>(n),
                                 -2.0 * std::numbers::pi * static_cast<double>((j * k0) % n) /
                                     static_cast<double>(n));
        detail::transform_axis(f.values, f.extent, a, pre, post, /*inverse_fft=*/true);
    }
    return f;
}

/// Cell-volume-weighted L2 norm, ‖f‖₂ = (h^d Σ|f_j|²)^{1/2}.
inline double l2_norm(const SampledFunction& f) {
    validate(f);
    double s = 0.0;
    for (const cd& z : f.values) s += std::norm(z);
    return std::sqrt(s * f.cell_volume());
}

/// Dual-cell-weighted L2 norm of a spectrum (Parseval partner of l2_norm).
inline double l2_norm(const Spectrum& F) {
    validate(F);
    double s = 0.0;
    for (const cd& z : F.values) s += std::norm(z);
    return std::sqrt(s * F.cell_volume());
}

/// Continuous convolution approximated as cell_volume * (discrete linear
/// convolution), computed spectrally on the zero-padded Minkowski-sum grid
/// so output support bookkeeping is exact.
inline SampledFunction convolve(const SampledFunction& f, const SampledFunction& g) {
    validate(f);
    validate(g);
    detail::check_finite(f.values, "convolve");
    detail::check_finite(g.values, "convolve");
    if (f.dims() != g.dims())
        throw input_error("convolve: operands have different dims");
    for (std::size_t a = 0; a < f.dims(); ++a)
        if (std::abs(f.spacing[a] - g.spacing[a]) > 1e-12 * f.spacing[a])
            throw input_error("convolve: spacing mismatch on axis " + std::to_string(a));

    const std::size_t d = f.dims();
    std::vector<std::size_t> out_extent(d), pad(d);
    for (std::size_t a = 0; a < d; ++a) {
        out_extent[a] = f.extent[a] + g.extent[a] - 1;
        pad[a] = next_pow2(out_extent[a]);
    }
    if (element_count(out_extent) > max_grid_samples)
        throw capacity_error("convolve: output exceeds sample budget");

    const auto embed = [&](const SampledFunction& s) {
        std::vector<cd> buf(element_count(pad), cd{0.0, 0.0});
        std::vector<std::size_t> idx(d, 0);
        std::size_t flat = 0;
        do {
            buf[flatten(idx, pad)] = s.values[flat++];
        } while (next_index(idx, s.extent));
        return buf;
    };
    std::vector<cd> a = embed(f), b = embed(g);
    for (std::size_t ax = 0; ax < d; ++ax) {
        std::vector<cd> ones(pad[ax], cd{1.0, 0.0});
        detail::transform_axis(a, pad, ax, ones, ones, false);
        detail::transform_axis(b, pad, ax, ones, ones, false);
    }
    for (std::size_t i = 0; i < a.size(); ++i) a[i] *= b[i];
    for (std::size_t ax = 0; ax < d; ++ax) {
        std::vector<cd> ones(pad[ax], cd{1.0, 0.0});
        std::vector<cd> inv_n(pad[ax], cd{1.0 / static_cast<double>(pad[ax]), 0.0});
        detail::transform_axis(a, pad, ax, ones, inv_n, true);
    }

    SampledFunction out;
    out.extent = out_extent;
    out.spacing = f.spacing;
    out.origin.resize(d);
    for (std::size_t ax = 0; ax < d; ++ax) out.origin[ax] = f.origin[ax] + g.origin[ax];
    out.label = f.label.empty() ? g.label : f.label + "*" + g.label;
    out.values.resize(element_count(out_extent));
    const double vol = f.cell_volume();
    std::vector<std::size_t> idx(d, 0);
    std::size_t flat = 0;
    do {
        out.values[flat++] = a[flatten(idx, pad)] * vol;
    } while (next_index(idx, out_extent));
    return out;
}

/// Partial transform of f in all axes but the first, reorganized as one
/// 1-d function of x per dual-grid point y.
struct SliceFamily {
    std::vector<std::size_t> y_extent;    // dual-grid shape over axes 1..d-1
    std::vector<double> y_origin;         // dual origin per sliced axis
    std::vector<double> y_spacing;        // dual spacing per sliced axis
    std::vector<SampledFunction> slices;  // row-major in y, each 1-d in x
};

inline SliceFamily slice_transform(const SampledFunction& f) {
    validate(f);
    detail::check_finite(f.values, "slice_transform");
    const std::size_t d = f.dims();
    if (d < 2) throw input_error("slice_transform: needs d >= 2");

    // Transform axes 1..d-1 only, leaving axis 0 in physical space.
    std::vector<cd> work = f.values;
    SliceFamily fam;
    fam.y_extent.assign(f.extent.begin() + 1, f.extent.end());
    fam.y_origin.resize(d - 1);
    fam.y_spacing.resize(d - 1);
    for (std::size_t a = 1; a < d; ++a) {
        const std::size_t n = f.extent[a];
        const double h = f.spacing[a];
        const std::size_t k0 = n / 2;
        const double dxi = 1.0 / (static_cast<double>(n) * h);
        fam.y_spacing[a - 1] = dxi;
        fam.y_origin[a - 1] = -static_cast<double>(k0) * dxi;
        std::vector<cd> pre(n), post(n);
        for (std::size_t j = 0; j < n; ++j)
            pre[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>((j * k0) % n) /
                                         static_cast<double>(n));
        for (std::size_t k = 0; k < n; ++k)
            post[k] = h * std::polar(1.0, -2.0 * std::numbers::pi * f.origin[a] *
                                              (fam.y_origin[a - 1] + dxi * static_cast<double>(k)));
        detail::transform_axis(work, f.extent, a, pre, post, false);
    }

    const std::size_t nx = f.extent[0];
    const std::size_t ny = element_count(fam.y_extent);
    fam.slices.reserve(ny);
    std::vector<std::size_t> yidx(d - 1, 0);
    do {
        SampledFunction s;
        s.extent = {nx};
        s.origin = {f.origin[0]};
        s.spacing = {f.spacing[0]};
        s.values.resize(nx);
        std::vector<std::size_t> full(d);
        full[0] = 0;
        for (std::size_t a = 1; a < d; ++a) full[a] = yidx[a - 1];
        const std::size_t base = flatten(full, f.extent);
        const std::size_t stride = axis_stride(f.extent, 0);
        for (std::size_t j = 0; j < nx; ++j) s.values[j] = work[base + j * stride];
        std::ostringstream lbl;
        lbl << f.label << " @y=(";
        for (std::size_t a = 0; a + 1 < d; ++a)
            lbl << (a ? "," : "")
                << fam.y_origin[a] + fam.y_spacing[a] * static_cast<double>(yidx[a]);
        lbl << ")";
        s.label = lbl.str();
        fam.slices.push_back(std::move(s));
    } while (next_index(yidx, fam.y_extent));
    return fam;
}

// ---------------------------------------------------------------------------
// File formats: "gridfn 1" self-describing text container, plus CSV export.
// Numbers are printed with %.17g so doubles round-trip exactly.

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

inline void write_header_common(std::ostream& os, const std::vector<std::size_t>& extent,
                                const std::string& label) {
    os << "dims " << extent.size() << "\n";
    os << "extent";
    for (std::size_t n : extent) os << ' ' << n;
    os << "\n";
    if (!label.empty()) os << "label " << label << "\n";
}

inline void write_vec(std::ostream& os, const char* key, const std::vector<double>& v) {
    os << key;
    for (double x : v) os << ' ' << fmt(x);
    os << "\n";
}

inline void write_samples(std::ostream& os, const std::vector<cd>& values) {
    os << "data " << values.size() << "\n";
    for (const cd& z : values) os << fmt(z.real()) << ' ' << fmt(z.imag()) << "\n";
}

struct gridfn_fields {
    std::string space = "physical";
    std::vector<std::size_t> extent;
    std::vector<double> origin, spacing, source_origin, source_spacing;
    std::string label, algebra, convention;
    std::vector<cd> values;
};

inline gridfn_fields read_gridfn_fields(std::istream& is, const std::string& what) {
    std::string line;
    if (!std::getline(is, line) || line != "gridfn 1")
        throw input_error(what + ": not a gridfn 1 file");
    gridfn_fields gf;
    auto parse_sizes = [&](std::istringstream& ss, std::vector<std::size_t>& out) {
        std::size_t v;
        while (ss >> v) out.push_back(v);
    };
    auto parse_doubles = [&](std::istringstream& ss, std::vector<double>& out) {
        double v;
        while (ss >> v) out.push_back(v);
    };
    std::size_t dims = 0;
    bool have_data = false;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "space") ss >> gf.space;
        else if (key == "dims") ss >> dims;
        else if (key == "extent") parse_sizes(ss, gf.extent);
        else if (key == "origin") parse_doubles(ss, gf.origin);
        else if (key == "spacing") parse_doubles(ss, gf.spacing);
        else if (key == "source_origin") parse_doubles(ss, gf.source_origin);
        else if (key == "source_spacing") parse_doubles(ss, gf.source_spacing);
        else if (key == "convention") ss >> gf.convention;
        else if (key == "label") { std::getline(ss >> std::ws, gf.label); }
        else if (key == "algebra") ss >> gf.algebra;
        else if (key == "data") {
            std::size_t count = 0;
            ss >> count;
            gf.values.reserve(count);
            double re, im;
            while (gf.values.size() < count && (is >> re >> im))
                gf.values.emplace_back(re, im);
            if (gf.values.size() != count)
                throw input_error(what + ": truncated data section");
            have_data = true;
            break;
        } else throw input_error(what + ": unknown header key '" + key + "'");
    }
    if (!have_data) throw input_error(what + ": missing data section");
    if (dims == 0 || gf.extent.size() != dims)
        throw input_error(what + ": dims/extent header mismatch");
    return gf;
}

} // namespace detail

inline void write_gridfn(std::ostream& os, const SampledFunction& f) {
    validate(f);
    os << "gridfn 1\n";
    os << "space physical\n";
    detail::write_header_common(os, f.extent, f.label);
    detail::write_vec(os, "origin", f.origin);
    detail::write_vec(os, "spacing", f.spacing);
    os << "convention " << convention_tag << "\n";
    if (!f.algebra.empty()) os << "algebra " << f.algebra << "\n";
    detail::write_samples(os, f.values);
}

inline void write_gridfn(std::ostream& os, const Spectrum& F) {
    validate(F);
    os << "gridfn 1\n";
    os << "space frequency\n";
    detail::write_header_common(os, F.extent, F.label);
    detail::write_vec(os, "origin", F.freq_origin);
    detail::write_vec(os, "spacing", F.freq_spacing);
    os << "convention " << F.convention << "\n";
    detail::write_vec(os, "source_origin", F.source_origin);
    detail::write_vec(os, "source_spacing", F.source_spacing);
    detail::write_samples(os, F.values);
}

inline void save_gridfn(const std::string& path, const SampledFunction& f) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot open '" + path + "' for writing");
    write_gridfn(os, f);
}

inline void save_gridfn(const std::string& path, const Spectrum& F) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot open '" + path + "' for writing");
    write_gridfn(os, F);
}

inline SampledFunction read_gridfn(std::istream& is, const std::string& what = "gridfn") {
    auto gf = detail::read_gridfn_fields(is, what);
    if (gf.space != "physical")
        throw input_error(what + ": expected a physical-space gridfn, got space=" + gf.space);
    if (!gf.convention.empty() && gf.convention != convention_tag)
        throw input_error(what + ": unknown transform convention '" + gf.convention + "'");
    SampledFunction f;
    f.extent = std::move(gf.extent);
    f.origin = std::move(gf.origin);
    f.spacing = std::move(gf.spacing);
    f.values = std::move(gf.values);
    f.label = std::move(gf.label);
    f.algebra = std::move(gf.algebra);
    validate(f);
    return f;
}

inline Spectrum read_gridfn_spectrum(std::istream& is, const std::string& what = "gridfn") {
    auto gf = detail::read_gridfn_fields(is, what);
    if (gf.space != "frequency")
        throw input_error(what + ": expected a frequency-space gridfn, got space=" + gf.space);
    Spectrum F;
    F.extent = std::move(gf.extent);
    F.freq_origin = std::move(gf.origin);
    F.freq_spacing = std::move(gf.spacing);
    F.values = std::move(gf.values);
    F.source_origin = std::move(gf.source_origin);
    F.source_spacing = std::move(gf.source_spacing);
    F.label = std::move(gf.label);
    if (!gf.convention.empty()) F.convention = gf.convention;
    validate(F);
    return F;
}

inline SampledFunction load_gridfn(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open '" + path + "'");
    return read_gridfn(is, path);
}

inline Spectrum load_gridfn_spectrum(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open '" + path + "'");
    return read_gridfn_spectrum(is, path);
}

/// Largest |f| over the grid.
inline double peak_magnitude(const SampledFunction& f) {
    double m = 0.0;
    for (const cd& z : f.values) m = std::max(m, std::abs(z));
    return m;
}

/// Radius of the thresholded support: max Euclidean |x_j| over samples with
/// |f(x_j)| > rel_threshold * peak. Zero for (numerically) vanishing f.
inline double support_radius(const SampledFunction& f, double rel_threshold = support_rel_threshold) {
    validate(f);
    const double cut = rel_threshold * peak_magnitude(f);
    double r = 0.0;
    std::vector<std::size_t> idx(f.dims(), 0);
    std::size_t flat = 0;
    do {
        if (std::abs(f.values[flat++]) > cut) {
            double s = 0.0;
            for (std::size_t a = 0; a < f.dims(); ++a) {
                const double x = f.coordinate(a, idx[a]);
                s += x * x;
            }
            r = std::max(r, std::sqrt(s));
        }
    } while (next_index(idx, f.extent));
    return r;
}

/// Radius of the thresholded zero-ball around the origin: the smallest |x_j|
/// carrying mass above threshold (infinity when nothing does).
inline double vanishing_radius(const SampledFunction& f, double rel_threshold = support_rel_threshold) {
    validate(f);
    const double cut = rel_threshold * peak_magnitude(f);
    double r = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> idx(f.dims(), 0);
    std::size_t flat = 0;
    do {
        if (std::abs(f.values[flat++]) > cut) {
            double s = 0.0;
            for (std::size_t a = 0; a < f.dims(); ++a) {
                const double x = f.coordinate(a, idx[a]);
                s += x * x;
            }
            r = std::min(r, std::sqrt(s));
        }
    } while (next_index(idx, f.extent));
    return r;
}

/// CSV export: one row per sample, index tuple then coordinates then re/im.
inline void write_csv(std::ostream& os, const SampledFunction& f) {
    validate(f);
    const std::size_t d = f.dims();
    for (std::size_t a = 0; a < d; ++a) os << "i" << a << ",";
    for (std::size_t a = 0; a < d; ++a) os << "x" << a << ",";
    os << "re,im\n";
    std::vector<std::size_t> idx(d, 0);
    std::size_t flat = 0;
    do {
        for (std::size_t a = 0; a < d; ++a) os << idx[a] << ",";
        for (std::size_t a = 0; a < d; ++a) os << detail::fmt(f.coordinate(a, idx[a])) << ",";
        const cd z = f.values[flat++];
        os << detail::fmt(z.real()) << "," << detail::fmt(z.imag()) << "\n";
    } while (next_index(idx, f.extent));
}

inline void write_csv(std::ostream& os, const Spectrum& F) {
    validate(F);
    const std::size_t d = F.dims();
    for (std::size_t a = 0; a < d; ++a) os << "i" << a << ",";
    for (std::size_t a = 0; a < d; ++a) os << "xi" << a << ",";
    os << "re,im\n";
    std::vector<std::size_t> idx(d, 0);
    std::size_t flat = 0;
    do {
        for (std::size_t a = 0; a < d; ++a) os << idx[a] << ",";
        for (std::size_t a = 0; a < d; ++a) os << detail::fmt(F.frequency(a, idx[a])) << ",";
        const cd z = F.values[flat++];
        os << detail::fmt(z.real()) << "," << detail::fmt(z.imag()) << "\n";
    } while (next_index(idx, F.extent));
}

} // namespace ingham::grid

#endif // INGHAM_GRID_HPP

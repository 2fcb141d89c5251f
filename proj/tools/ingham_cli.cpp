// ingham: command-line surface over the header library.
//
// Every subcommand reads file-based inputs, runs one pipeline, and emits a
// versioned structured report (JSON by default, key/value CSV on request) on
// stdout or to --out.  A one-line human summary goes to stderr so the report
// bytes stay machine-clean.  Identical invocations produce byte-identical
// reports: all randomness is seeded, all serialization is format-stable.
//
// Exit codes:
//   0  success (findings such as a reported contradiction are still success)
//   2  usage or input error (bad flags, unreadable/invalid input files)
//   3  contract violation (library invariant broken, or a verification
//      subcommand found the artifact out of contract)
//   4  numeric failure (quadrature did not certify, degenerate domain)
//   5  internal error

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <ingham/core.hpp>
#include <ingham/grid.hpp>
#include <ingham/heisenberg.hpp>
#include <ingham/nilpotent.hpp>
#include <ingham/reports.hpp>
#include <ingham/synthesis.hpp>
#include <ingham/vanish.hpp>
#include <ingham/weights.hpp>

namespace {

namespace fs = std::filesystem;
using ingham::reports::json;
using ingham::reports::num;

constexpr const char* kOutDirEnv = "INGHAM_OUT_DIR";

/// Relative paths land in $INGHAM_OUT_DIR when it is set; parents are
/// created so a fresh output directory just works.
std::string resolve_output(const std::string& path) {
    fs::path p(path);
    if (p.is_relative()) {
        if (const char* dir = std::getenv(kOutDirEnv); dir && *dir) p = fs::path(dir) / p;
    }
    if (p.has_parent_path()) {
        std::error_code ec;
        fs::create_directories(p.parent_path(), ec);
        if (ec)
            throw ingham::input_error("cannot create output directory " +
                                      p.parent_path().string() + ": " + ec.message());
    }
    return p.string();
}

struct Emit {
    std::string format = "json";  // json | csv
    std::string out;              // report redirect; empty = stdout
};

void add_emit_flags(CLI::App* cmd, Emit& e, bool out_is_report = true) {
    cmd->add_option("--format", e.format, "Report format")
        ->check(CLI::IsMember({"json", "csv"}))
        ->capture_default_str();
    if (out_is_report)
        cmd->add_option("--out", e.out,
                        "Write the report to this file instead of stdout "
                        "(relative paths join $INGHAM_OUT_DIR)");
}

void emit_report(const json& report, const Emit& e) {
    std::ostringstream body;
    if (e.format == "csv")
        ingham::reports::write_csv(body, report);
    else
        body << report.dump(2) << "\n";
    if (e.out.empty()) {
        std::cout << body.str();
    } else {
        const std::string path = resolve_output(e.out);
        std::ofstream os(path, std::ios::binary);
        if (!os) throw ingham::input_error("cannot open report file " + path);
        os << body.str();
    }
}

void summary(const std::string& line) { std::cerr << line << "\n"; }

std::vector<double> parse_csv_doubles(const std::string& text, const char* what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            const double v = std::stod(item, &pos);
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos])))
                ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
            out.push_back(v);
        } catch (const std::exception&) {
            throw ingham::input_error(std::string(what) + ": cannot parse '" + item +
                                      "' as a number");
        }
    }
    if (out.empty())
        throw ingham::input_error(std::string(what) + ": expected a comma-separated list");
    return out;
}

ingham::heisenberg::GroupFunction load_group_function(const std::string& path) {
    ingham::grid::SampledFunction f = ingham::grid::load_gridfn(path);
    if (f.dims() < 3 || f.dims() % 2 == 0)
        throw ingham::input_error(path + ": a Heisenberg sample grid needs odd rank >= 3, got " +
                                  std::to_string(f.dims()));
    const std::size_t n = (f.dims() - 1) / 2;
    return ingham::heisenberg::make_group_function(n, std::move(f));
}

json grid_block(const ingham::grid::SampledFunction& f) {
    json j;
    j["rank"] = f.dims();
    json extent = json::array(), origin = json::array(), spacing = json::array();
    for (std::size_t a = 0; a < f.dims(); ++a) {
        extent.push_back(f.extent[a]);
        origin.push_back(num(f.origin[a]));
        spacing.push_back(num(f.spacing[a]));
    }
    j["extent"] = std::move(extent);
    j["origin"] = std::move(origin);
    j["spacing"] = std::move(spacing);
    if (!f.label.empty()) j["label"] = f.label;
    if (!f.algebra.empty()) j["algebra"] = f.algebra;
    return j;
}

// --- criterion ---------------------------------------------------------------

struct CriterionOpts {
    std::string profile;
    Emit emit;
};

int run_criterion(const CriterionOpts& o) {
    const ingham::weights::DecayProfile psi = ingham::weights::parse_profile(o.profile);
    const ingham::weights::CriterionReport rep = ingham::weights::criterion(psi);
    emit_report(ingham::reports::to_json(rep), o.emit);
    summary("criterion: " + rep.profile_name + " is " + ingham::weights::to_string(rep.cls) +
            " (" + ingham::weights::to_string(rep.method) + ")");
    return 0;
}

// --- synthesize ----------------------------------------------------------------

struct SynthesizeOpts {
    std::string profile;
    double halfwidth = 1.0;
    std::size_t K = 24;
    std::size_t points = 0;  // 0 = choose from the resolution rule
    std::string out;
    Emit emit;
};

int run_synthesize(const SynthesizeOpts& o) {
    namespace syn = ingham::synthesis;
    const ingham::weights::DecayProfile psi = ingham::weights::parse_profile(o.profile);
    const syn::GapSequence gaps = syn::gaps_from_profile(psi, o.halfwidth, o.K);

    std::size_t points = o.points;
    if (points == 0) {
        const double a_min = gaps.gaps.back();
        points = ingham::next_pow2(static_cast<std::size_t>(
            std::ceil(8.0 * o.halfwidth / a_min)));
        if (points < 8) points = 8;
    }
    const syn::SynthesisResult res = syn::ingham_function(gaps, {o.halfwidth, points});

    const std::string grid_path = resolve_output(o.out);
    const std::string gaps_path = grid_path + ".gaps";
    ingham::grid::save_gridfn(grid_path, res.f);
    syn::save_gapseq(gaps_path, gaps);

    double peak = 0.0;
    for (const auto& z : res.f.values) peak = std::max(peak, std::abs(z));
    double spectrum_max = 0.0;
    for (const auto& z : res.spectrum.values) spectrum_max = std::max(spectrum_max, std::abs(z));

    json j;
    j["schema"] = "synthesize/1";
    j["profile"] = gaps.profile_name;
    j["gaps"] = ingham::reports::to_json(gaps);
    j["grid"] = grid_block(res.f);
    j["method"] = res.method;
    j["alias_bound"] = num(res.alias_bound);
    j["truncation_bound"] = num(res.truncation_bound);
    j["images_used"] = res.images_used;
    j["peak"] = num(peak);
    j["l2"] = num(ingham::grid::l2_norm(res.f));
    j["spectrum_max"] = num(spectrum_max);
    j["grid_file"] = grid_path;
    j["gaps_file"] = gaps_path;
    emit_report(j, o.emit);
    summary("synthesize: wrote " + grid_path + " (" + std::to_string(points) +
            " points, support " + ingham::grid::detail::fmt(gaps.sum()) + ", alias bound " +
            ingham::grid::detail::fmt(res.alias_bound) + ")");
    return 0;
}

// --- verify-decay ----------------------------------------------------------------

struct VerifyOpts {
    std::string file;
    std::string gaps_path;  // default: file + ".gaps"
    std::string profile;    // default: the profile recorded with the gaps
    Emit emit;
};

int run_verify_decay(const VerifyOpts& o) {
    namespace syn = ingham::synthesis;
    const ingham::grid::SampledFunction f = ingham::grid::load_gridfn(o.file);
    if (f.dims() != 1)
        throw ingham::input_error("verify-decay: expected a one-dimensional grid, got rank " +
                                  std::to_string(f.dims()));
    const std::string gaps_path = o.gaps_path.empty() ? o.file + ".gaps" : o.gaps_path;
    const syn::GapSequence gaps = syn::load_gapseq(gaps_path);
    const std::string profile_name = o.profile.empty() ? gaps.profile_name : o.profile;
    const ingham::weights::DecayProfile psi = ingham::weights::parse_profile(profile_name);

    // Support: every sample outside [-l, l] must vanish to rounding depth.
    const double l = gaps.target_halfwidth;
    double peak = 0.0;
    for (const auto& z : f.values) peak = std::max(peak, std::abs(z));
    double max_outside = 0.0, mass_outside = 0.0;
    for (std::size_t i = 0; i < f.extent[0]; ++i) {
        const double x = f.coordinate(0, i);
        if (std::abs(x) <= l) continue;
        const double a = std::abs(f.values[i]);
        max_outside = std::max(max_outside, a);
        mass_outside += a * f.spacing[0];
    }
    const double support_cut = ingham::support_rel_threshold * peak;
    const bool support_ok = peak > 0.0 && max_outside <= support_cut;

    // Spectrum: the transform of the samples must reproduce the gap product.
    const ingham::grid::Spectrum F = ingham::grid::forward_transform(f);
    double spectrum_max = 0.0;
    for (const auto& z : F.values) spectrum_max = std::max(spectrum_max, std::abs(z));
    double max_err = 0.0;
    for (std::size_t k = 0; k < F.extent[0]; ++k) {
        const double xi = F.frequency(0, k);
        max_err = std::max(max_err, std::abs(F.values[k] - syn::gap_product(gaps, xi)));
    }
    const double spectrum_tol = 1e-6 * spectrum_max;
    const bool spectrum_ok = spectrum_max > 0.0 && max_err <= spectrum_tol;

    // Envelope: sup |F| e^{psi} over [1, 1e4] is finite and stable when the
    // band doubles, i.e. the decay really is e^{-psi}-shaped, not fragile.
    const syn::EnvelopeScan e1 = syn::envelope_scan(gaps, psi, 1.0, 1e4);
    const syn::EnvelopeScan e2 = syn::envelope_scan(gaps, psi, 1.0, 2e4);
    const double change =
        std::abs(e2.log_max - e1.log_max) / std::max(1.0, std::abs(e1.log_max));
    const bool envelope_ok = std::isfinite(e1.log_max) && std::isfinite(e2.log_max) &&
                             change < 0.05;

    const bool all_ok = support_ok && spectrum_ok && envelope_ok;

    json j;
    j["schema"] = "verify-decay/1";
    j["file"] = o.file;
    j["profile"] = profile_name;
    j["target_halfwidth"] = num(l);
    j["support"] = json{{"peak", num(peak)},
                        {"max_outside", num(max_outside)},
                        {"mass_outside", num(mass_outside)},
                        {"threshold", num(support_cut)},
                        {"pass", support_ok}};
    j["spectrum"] = json{{"max_abs", num(spectrum_max)},
                         {"max_error", num(max_err)},
                         {"threshold", num(spectrum_tol)},
                         {"pass", spectrum_ok}};
    j["envelope"] = json{{"band", ingham::reports::to_json(e1)},
                         {"doubled_band", ingham::reports::to_json(e2)},
                         {"relative_change", num(change)},
                         {"pass", envelope_ok}};
    j["all_checks_pass"] = all_ok;
    emit_report(j, o.emit);
    summary(std::string("verify-decay: ") + (all_ok ? "all checks pass" : "FAILED") +
            " (support " + (support_ok ? "ok" : "FAIL") + ", spectrum " +
            (spectrum_ok ? "ok" : "FAIL") + ", envelope " + (envelope_ok ? "ok" : "FAIL") + ")");
    return all_ok ? 0 : 3;
}

// --- vanish-test ----------------------------------------------------------------

struct VanishOpts {
    std::string file;
    std::string profile;
    std::string eta;  // comma-separated; default e_1
    double s = 0.0;
    double q = 1.0;
    double N = 0.0;
    Emit emit;
};

int run_vanish_test(const VanishOpts& o) {
    const ingham::grid::SampledFunction f = ingham::grid::load_gridfn(o.file);
    const ingham::weights::DecayProfile psi = ingham::weights::parse_profile(o.profile);
    ingham::vanish::HalfSpace h;
    if (o.eta.empty()) {
        h.eta.assign(f.dims(), 0.0);
        h.eta[0] = 1.0;
    } else {
        h.eta = parse_csv_doubles(o.eta, "--eta");
    }
    h.s = o.s;
    const ingham::vanish::PipelineReport rep =
        ingham::vanish::vanishing_pipeline(f, h, psi, o.q, o.N);
    json j = ingham::reports::to_json(rep);
    j["file"] = o.file;
    emit_report(j, o.emit);
    summary(std::string("vanish-test: verdict ") + ingham::vanish::to_string(rep.v) +
            (rep.contradiction ? " — CONTRADICTION: data is nonzero" : ""));
    return 0;
}

// --- lie-analyze ----------------------------------------------------------------

struct LieOpts {
    std::string algebra;
    std::size_t samples = 64;
    std::uint64_t seed = ingham::default_seed;
    Emit emit;
};

int run_lie_analyze(const LieOpts& o) {
    namespace nil = ingham::nilpotent;
    const nil::LieAlgebraSpec spec = nil::load_algebra(o.algebra);
    const nil::AlgebraReport areport = nil::validate_algebra(spec);

    json j;
    j["schema"] = "lie-analyze/1";
    j["file"] = o.algebra;
    j["dim"] = spec.dim;
    j["labels"] = spec.labels;
    j["algebra"] = ingham::reports::to_json(areport);
    if (!areport.valid) {
        emit_report(j, o.emit);
        summary("lie-analyze: " + o.algebra + " is NOT a nilpotent Lie algebra (" +
                std::to_string(areport.violations.size()) + " violations)");
        return 2;
    }

    const nil::StratumReport stratum = nil::generic_stratum(spec, o.samples, o.seed);
    j["stratum"] = ingham::reports::to_json(stratum);

    // A deterministic spot table of the Plancherel density: |Pf(nu)| on the
    // generic jump set at seeded sample points of the dual.
    json table = json::array();
    ingham::rng r(o.seed);
    for (int row = 0; row < 8; ++row) {
        std::vector<double> nu(spec.dim);
        for (double& c : nu) c = r.uniform(-2.0, 2.0);
        json entry;
        json coords = json::array();
        for (double c : nu) coords.push_back(num(c));
        entry["nu"] = std::move(coords);
        try {
            entry["pfaffian_abs"] = num(nil::pfaffian_abs(spec, nu, stratum.P));
            entry["degenerate"] = false;
        } catch (const ingham::domain_error&) {
            entry["pfaffian_abs"] = json();
            entry["degenerate"] = true;
        }
        table.push_back(std::move(entry));
    }
    j["pfaffian_table"] = std::move(table);
    emit_report(j, o.emit);

    std::ostringstream ps;
    for (std::size_t i = 0; i < stratum.P.size(); ++i) ps << (i ? "," : "") << stratum.P[i];
    summary("lie-analyze: step " + std::to_string(areport.step) + ", generic jump set P={" +
            ps.str() + "}, orbit dimension " + std::to_string(stratum.orbit_dim));
    return 0;
}

// --- Heisenberg subcommands ---------------------------------------------------

struct PlancherelOpts {
    std::string file;
    ingham::heisenberg::PlancherelOptions opts;
    Emit emit;
};

void add_band_flags(CLI::App* cmd, ingham::heisenberg::PlancherelOptions& o) {
    cmd->add_option("--lambda-max", o.lambda_max,
                    "Band edge (clamped to one half lambda-period of the grid)")
        ->capture_default_str();
    cmd->add_option("--panels", o.panels, "Gauss-Legendre panels per side")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    cmd->add_option("--delta", o.delta, "Excluded window around lambda = 0")
        ->capture_default_str();
    cmd->add_option("--order", o.order, "Quadrature nodes per panel")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
}

int run_plancherel(const PlancherelOpts& o) {
    const ingham::heisenberg::GroupFunction F = load_group_function(o.file);
    const ingham::heisenberg::PlancherelReport rep =
        ingham::heisenberg::plancherel_check(F, o.opts);
    json j = ingham::reports::to_json(rep);
    j["file"] = o.file;
    emit_report(j, o.emit);
    summary("plancherel: relative error " + ingham::grid::detail::fmt(rep.rel_error) +
            " against the squared norm " + ingham::grid::detail::fmt(rep.reference));
    return 0;
}

struct LemmaOpts {
    std::string file;
    double lambda_min = 0.5;
    double lambda_max = 4.0;
    std::size_t count = 29;
    Emit emit;
};

int run_lemma_slice(const LemmaOpts& o) {
    const ingham::heisenberg::GroupFunction F = load_group_function(o.file);
    const ingham::heisenberg::LemmaReport rep =
        ingham::heisenberg::lemma_slice_identity(F, o.lambda_min, o.lambda_max, o.count);
    json j = ingham::reports::to_json(rep);
    j["file"] = o.file;
    emit_report(j, o.emit);
    summary("lemma-slice: max relative residual " + ingham::grid::detail::fmt(rep.max_rel) +
            " over " + std::to_string(rep.rows.size()) + " lambda values");
    return 0;
}

struct NilCheckOpts {
    std::string file;
    std::string profile;
    ingham::heisenberg::PlancherelOptions opts;
    Emit emit;
};

int run_nilpotent_check(const NilCheckOpts& o) {
    const ingham::heisenberg::GroupFunction F = load_group_function(o.file);
    const ingham::weights::DecayProfile psi = ingham::weights::parse_profile(o.profile);
    const ingham::heisenberg::NilpotentCheckReport rep =
        ingham::heisenberg::ingham_nilpotent_check(F, psi, o.opts);
    json j = ingham::reports::to_json(rep);
    j["file"] = o.file;
    emit_report(j, o.emit);
    summary(std::string("nilpotent-check: criterion ") +
            ingham::weights::to_string(rep.criterion.cls) + ", weighted mass " +
            ingham::grid::detail::fmt(rep.weighted_mass) +
            (rep.consistent ? ", consistent" : ", INCONSISTENT"));
    return 0;
}

struct CentralOpts {
    std::string g_path;
    std::string h_path;
    std::string out;
    std::string lambdas = "0.5,1,2";
    Emit emit;
};

int run_central_construct(const CentralOpts& o) {
    namespace hg = ingham::heisenberg;
    const ingham::grid::SampledFunction g = ingham::grid::load_gridfn(o.g_path);
    const hg::GroupFunction h = load_group_function(o.h_path);
    const hg::GroupFunction out = hg::central_construction(g, h);

    const std::string out_path = resolve_output(o.out);
    ingham::grid::save_gridfn(out_path, out.samples);

    // Spot-check the exact factorization of the Plancherel density.
    const std::vector<double> lambdas = parse_csv_doubles(o.lambdas, "--lambda");
    json rows = json::array();
    double max_rel = 0.0;
    for (double lam : lambdas) {
        const double lhs = hg::hs_power(out, lam);
        const double ghat = std::abs(hg::fourier_at(g, lam));
        const double rhs = ghat * ghat * hg::hs_power(h, lam);
        const double rel = std::abs(lhs - rhs) / std::max({std::abs(lhs), std::abs(rhs), 1e-300});
        max_rel = std::max(max_rel, rel);
        rows.push_back(json{{"lambda", num(lam)},
                            {"hs_power", num(lhs)},
                            {"factored", num(rhs)},
                            {"rel", num(rel)}});
    }

    json j;
    j["schema"] = "central-construct/1";
    j["g_file"] = o.g_path;
    j["h_file"] = o.h_path;
    j["grid"] = grid_block(out.samples);
    j["factorization"] = std::move(rows);
    j["max_rel"] = num(max_rel);
    j["grid_file"] = out_path;
    emit_report(j, o.emit);
    summary("central-construct: wrote " + out_path + ", factorization residual " +
            ingham::grid::detail::fmt(max_rel));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "ingham — numerical toolkit for Ingham-type uncertainty principles:\n"
        "decay-criterion integrals, constructive synthesis of compactly supported\n"
        "functions with prescribed spectral decay, log-integral vanishing tests,\n"
        "and Plancherel analysis on Heisenberg groups.\n"};
    app.require_subcommand(1);
    app.footer(
        "Environment:\n"
        "  INGHAM_OUT_DIR   default directory for relative output paths\n"
        "\n"
        "Exit codes:\n"
        "  0  success\n"
        "  2  usage or input error\n"
        "  3  contract violation (including a failed verification)\n"
        "  4  numeric failure\n"
        "  5  internal error\n"
        "\n"
        "Profiles use a fixed grammar: \"t/log(e+t)\", \"t/log(e+t)^B\", \"t^A\"\n"
        "with 0<A<1, \"C*t\", a positive constant, \"table:FILE\", or\n"
        "\"t*table:FILE\".\n");

    int rc = 0;

    CriterionOpts crit;
    auto* c_crit = app.add_subcommand(
        "criterion", "Classify the decay-criterion integral of a profile");
    c_crit->add_option("--profile", crit.profile, "Decay profile psi(t)")->required();
    add_emit_flags(c_crit, crit.emit);
    c_crit->callback([&] { rc = run_criterion(crit); });

    SynthesizeOpts syn;
    auto* c_syn = app.add_subcommand(
        "synthesize",
        "Build a compactly supported function with spectral decay e^{-psi}");
    c_syn->add_option("--profile", syn.profile, "Convergent decay profile psi(t)")->required();
    c_syn->add_option("--halfwidth", syn.halfwidth, "Support half-width l (support in [-l, l])")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_syn->add_option("--K", syn.K, "Number of dyadic gaps")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_syn->add_option("--grid", syn.points,
                      "Sample count (0 = choose from the resolution rule h <= a_K/4)")
        ->capture_default_str();
    c_syn->add_option("--out", syn.out,
                      "Grid file to write (a .gaps sidecar records the gap sequence)")
        ->required();
    add_emit_flags(c_syn, syn.emit, /*out_is_report=*/false);
    c_syn->callback([&] { rc = run_synthesize(syn); });

    VerifyOpts ver;
    auto* c_ver = app.add_subcommand(
        "verify-decay", "Check a synthesized grid: support, spectrum, decay envelope");
    c_ver->add_option("file", ver.file, "Grid file produced by synthesize")->required();
    c_ver->add_option("--gaps", ver.gaps_path, "Gap-sequence sidecar (default: FILE.gaps)");
    c_ver->add_option("--profile", ver.profile,
                      "Decay profile (default: the one recorded with the gaps)");
    add_emit_flags(c_ver, ver.emit);
    c_ver->callback([&] { rc = run_verify_decay(ver); });

    VanishOpts van;
    auto* c_van = app.add_subcommand(
        "vanish-test", "Log-integral vanishing test against a half-space decay weight");
    c_van->add_option("file", van.file, "Grid file with the sampled function")->required();
    c_van->add_option("--profile", van.profile, "Decay profile psi(t)")->required();
    c_van->add_option("--eta", van.eta,
                      "Half-space normal, comma-separated (default: first coordinate axis)");
    c_van->add_option("--s", van.s, "Half-space offset")->capture_default_str();
    c_van->add_option("--q", van.q, "Exponent q >= 1 in the weighted mass")
        ->capture_default_str();
    c_van->add_option("--N", van.N, "Polynomial envelope exponent N >= 0")
        ->capture_default_str();
    add_emit_flags(c_van, van.emit);
    c_van->callback([&] { rc = run_vanish_test(van); });

    LieOpts lie;
    auto* c_lie = app.add_subcommand(
        "lie-analyze", "Validate a nilpotent Lie algebra and find its generic orbit stratum");
    c_lie->add_option("--algebra", lie.algebra, "Algebra file (liealg format)")->required();
    c_lie->add_option("--samples", lie.samples, "Dual samples for the stratum search")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    c_lie->add_option("--seed", lie.seed, "RNG seed")->capture_default_str();
    add_emit_flags(c_lie, lie.emit);
    c_lie->callback([&] { rc = run_lie_analyze(lie); });

    PlancherelOpts pla;
    auto* c_pla = app.add_subcommand(
        "plancherel", "Certify the Plancherel identity for a Heisenberg group function");
    c_pla->add_option("file", pla.file, "Grid file with odd rank 2n+1")->required();
    add_band_flags(c_pla, pla.opts);
    add_emit_flags(c_pla, pla.emit);
    c_pla->callback([&] { rc = run_plancherel(pla); });

    LemmaOpts lem;
    auto* c_lem = app.add_subcommand(
        "lemma-slice", "Central-slice identity: autocorrelation transform vs Plancherel density");
    c_lem->add_option("file", lem.file, "Grid file with odd rank 2n+1")->required();
    c_lem->add_option("--lambda-min", lem.lambda_min, "Lowest lambda")->capture_default_str();
    c_lem->add_option("--lambda-max", lem.lambda_max, "Highest lambda")->capture_default_str();
    c_lem->add_option("--count", lem.count, "Number of lambda values")
        ->check(CLI::PositiveNumber)
        ->capture_default_str();
    add_emit_flags(c_lem, lem.emit);
    c_lem->callback([&] { rc = run_lemma_slice(lem); });

    NilCheckOpts nchk;
    auto* c_nchk = app.add_subcommand(
        "nilpotent-check", "Group-side uncertainty check: criterion vs weighted spectral mass");
    c_nchk->add_option("file", nchk.file, "Grid file with odd rank 2n+1")->required();
    c_nchk->add_option("--profile", nchk.profile, "Decay profile psi(t)")->required();
    add_band_flags(c_nchk, nchk.opts);
    add_emit_flags(c_nchk, nchk.emit);
    c_nchk->callback([&] { rc = run_nilpotent_check(nchk); });

    CentralOpts cen;
    auto* c_cen = app.add_subcommand(
        "central-construct",
        "Convolve a central profile into a group function; verify the density factorization");
    c_cen->add_option("--central", cen.g_path, "One-dimensional central profile grid g")
        ->required();
    c_cen->add_option("--group", cen.h_path, "Group-function grid h with odd rank 2n+1")
        ->required();
    c_cen->add_option("--out", cen.out, "Grid file to write")->required();
    c_cen->add_option("--lambda", cen.lambdas, "Spot-check lambdas, comma-separated")
        ->capture_default_str();
    add_emit_flags(c_cen, cen.emit, /*out_is_report=*/false);
    c_cen->callback([&] { rc = run_central_construct(cen); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const ingham::input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ingham::contract_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const ingham::numeric_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 5;
    }
    return rc;
}

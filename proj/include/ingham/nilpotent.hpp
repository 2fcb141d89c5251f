#ifndef INGHAM_NILPOTENT_HPP
#define INGHAM_NILPOTENT_HPP

// Nilpotent Lie algebra machinery over a flag-adapted basis: structure
// constants with validation (antisymmetry, Jacobi, nilpotency, the flag
// property, centrality of X1), the truncated BCH group law, coadjoint
// bilinear forms with their radicals, jump indices, generic stratum
// discovery by sampling, and Pfaffian magnitudes.
//
// Index conventions: the public API speaks 1-based basis indices (X_1,...,
// X_d, matching the flag numbering and jump sets as subsets of {1,...,d});
// storage is 0-based.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core.hpp"

namespace ingham::nilpotent {

/// A Lie algebra presented by structure constants on a basis X_1..X_d with
/// [X_i, X_j] = sum_k c[i][j][k] X_k; the basis is assumed adapted to a flag
/// of ideals g_j = span{X_1..X_j} (checked by validate_algebra).
struct LieAlgebraSpec {
    std::size_t dim = 0;
    std::vector<std::string> labels;
    std::vector<double> c;  // dense dim^3, ((i*dim)+j)*dim+k, 0-based

    double structure(std::size_t i, std::size_t j, std::size_t k) const {
        return c[(i * dim + j) * dim + k];
    }
    double& structure(std::size_t i, std::size_t j, std::size_t k) {
        return c[(i * dim + j) * dim + k];
    }
};

inline LieAlgebraSpec make_algebra(std::size_t dim, std::vector<std::string> labels) {
    if (dim == 0) throw validation_error("algebra: dimension must be positive");
    if (labels.size() != dim)
        throw validation_error("algebra: need one label per basis element");
    LieAlgebraSpec spec;
    spec.dim = dim;
    spec.labels = std::move(labels);
    spec.c.assign(dim * dim * dim, 0.0);
    return spec;
}

/// Record [X_i, X_j] += v X_k (1-based, i < j) with antisymmetric completion.
inline void set_bracket(LieAlgebraSpec& spec, std::size_t i, std::size_t j, std::size_t k,
                        double v) {
    if (i < 1 || j < 1 || k < 1 || i > spec.dim || j > spec.dim || k > spec.dim)
        throw validation_error("algebra: bracket index out of range");
    if (i >= j) throw validation_error("algebra: brackets are recorded with i < j");
    if (!std::isfinite(v)) throw validation_error("algebra: non-finite structure constant");
    spec.structure(i - 1, j - 1, k - 1) += v;
    spec.structure(j - 1, i - 1, k - 1) -= v;
}

// --- builtin algebras ----------------------------------------------------------

/// Abelian R^d: all brackets zero.
inline LieAlgebraSpec abelian(std::size_t d) {
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) labels[i] = "X" + std::to_string(i + 1);
    return make_algebra(d, std::move(labels));
}

/// Heisenberg algebra h_n of dimension 2n+1: basis (Z, X_1..X_n, Y_1..Y_n)
/// with [X_i, Y_i] = Z; the center Z sits first in the flag.
inline LieAlgebraSpec heisenberg(std::size_t n) {
    if (n == 0) throw validation_error("heisenberg: need n >= 1");
    std::vector<std::string> labels;
    labels.push_back("Z");
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("X" + std::to_string(i));
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("Y" + std::to_string(i));
    auto spec = make_algebra(2 * n + 1, std::move(labels));
    for (std::size_t i = 1; i <= n; ++i) set_bracket(spec, 1 + i, 1 + n + i, 1, 1.0);
    return spec;
}

/// The filiform algebra m0(d), d >= 3: [X_d, X_j] = X_{j-1} for j = 2..d-1;
/// nilpotency step d - 1. m0(4) is the 4-dimensional step-3 example.
inline LieAlgebraSpec filiform(std::size_t d) {
    if (d < 3) throw validation_error("filiform: need dimension >= 3");
    std::vector<std::string> labels(d);
    for (std::size_t i = 0; i < d; ++i) labels[i] = "X" + std::to_string(i + 1);
    auto spec = make_algebra(d, std::move(labels));
    for (std::size_t j = 2; j + 1 <= d; ++j) set_bracket(spec, j, d, j - 1, -1.0);
    return spec;
}

// --- validation ----------------------------------------------------------------

struct AlgebraReport {
    bool valid = true;
    std::size_t step = 0;  // nilpotency step: smallest s with g^(s) = 0
    std::vector<std::string> violations;
};

namespace detail {

inline constexpr double structure_tol = 1e-12;

// [u, v] in coordinates.
inline std::vector<double> bracket(const LieAlgebraSpec& spec, const std::vector<double>& u,
                                   const std::vector<double>& v) {
    const std::size_t d = spec.dim;
    std::vector<double> out(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
        if (u[i] == 0.0) continue;
        for (std::size_t j = 0; j < d; ++j) {
            if (v[j] == 0.0) continue;
            for (std::size_t k = 0; k < d; ++k)
                out[k] += u[i] * v[j] * spec.structure(i, j, k);
        }
    }
    return out;
}

} // namespace detail

/// Check antisymmetry, the Jacobi identity, the flag property
/// ad(X) g_j <= g_{j-1} (equivalently c[i][j][k] = 0 unless k < min(i,j)),
/// centrality of X_1, and nilpotency; reports the step and every violated
/// identity by its (i, j, k) triple.
inline AlgebraReport validate_algebra(const LieAlgebraSpec& spec) {
    AlgebraReport rep;
    const std::size_t d = spec.dim;
    if (d == 0 || spec.labels.size() != d || spec.c.size() != d * d * d) {
        rep.valid = false;
        rep.violations.push_back("malformed spec: dimension/labels/constants inconsistent");
        return rep;
    }
    for (double v : spec.c) {
        if (!std::isfinite(v)) {
            rep.valid = false;
            rep.violations.push_back("non-finite structure constant");
            return rep;
        }
    }
    auto name = [](std::size_t i, std::size_t j, std::size_t k) {
        return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," +
               std::to_string(k + 1) + ")";
    };
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
            for (std::size_t k = 0; k < d; ++k) {
                const double v = spec.structure(i, j, k);
                if (std::abs(v + spec.structure(j, i, k)) > detail::structure_tol)
                    rep.violations.push_back("antisymmetry broken at " + name(i, j, k));
                if (std::abs(v) > detail::structure_tol && k + 1 >= std::min(i, j) + 1)
                    rep.violations.push_back("flag property broken at " + name(i, j, k) +
                                             ": needs k < min(i,j)");
                if (std::abs(v) > detail::structure_tol && (i == 0 || j == 0))
                    rep.violations.push_back("X1 not central: nonzero bracket at " +
                                             name(i, j, k));
            }
    // Jacobi: [[X_i,X_j],X_k] + [[X_j,X_k],X_i] + [[X_k,X_i],X_j] = 0.
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = i + 1; j < d; ++j)
            for (std::size_t k = j + 1; k < d; ++k)
                for (std::size_t m = 0; m < d; ++m) {
                    double sum = 0.0;
                    for (std::size_t l = 0; l < d; ++l)
                        sum += spec.structure(i, j, l) * spec.structure(l, k, m) +
                               spec.structure(j, k, l) * spec.structure(l, i, m) +
                               spec.structure(k, i, l) * spec.structure(l, j, m);
                    if (std::abs(sum) > detail::structure_tol) {
                        rep.violations.push_back("Jacobi identity broken on " + name(i, j, k) +
                                                 " in coordinate " + std::to_string(m + 1));
                        break;
                    }
                }
    // Lower central series g^(0) = g, g^(m+1) = [g, g^(m)], each layer
    // compressed to an orthonormal basis so the column count stays bounded.
    Eigen::MatrixXd layer = Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(d),
                                                      static_cast<Eigen::Index>(d));
    std::size_t step = 0;
    for (; step <= d; ++step) {
        if (layer.cols() == 0) break;
        Eigen::MatrixXd next(static_cast<Eigen::Index>(d),
                             static_cast<Eigen::Index>(d) * layer.cols());
        next.setZero();
        for (Eigen::Index col = 0; col < layer.cols(); ++col) {
            std::vector<double> v(d);
            for (std::size_t k = 0; k < d; ++k) v[k] = layer(static_cast<Eigen::Index>(k), col);
            for (std::size_t i = 0; i < d; ++i) {
                std::vector<double> e(d, 0.0);
                e[i] = 1.0;
                const auto b = detail::bracket(spec, e, v);
                for (std::size_t k = 0; k < d; ++k)
                    next(static_cast<Eigen::Index>(k),
                         static_cast<Eigen::Index>(i) * layer.cols() + col) = b[k];
            }
        }
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(next, Eigen::ComputeThinU);
        const auto& sv = svd.singularValues();
        Eigen::Index r = 0;
        if (sv.size() > 0 && sv(0) > 0.0)
            for (Eigen::Index i = 0; i < sv.size(); ++i)
                if (sv(i) > rank_rel_threshold * sv(0)) ++r;
        layer = svd.matrixU().leftCols(r);
    }
    if (step > d) {
        rep.violations.push_back("not nilpotent: lower central series still nonzero after " +
                                 std::to_string(d) + " steps");
        rep.step = d + 1;
    } else {
        rep.step = step;
    }
    rep.valid = rep.violations.empty();
    return rep;
}

/// Throw on the first violation; returns the report (with the step) if valid.
inline AlgebraReport require_valid(const LieAlgebraSpec& spec) {
    auto rep = validate_algebra(spec);
    if (!rep.valid)
        throw validation_error("invalid Lie algebra spec: " + rep.violations.front() +
                               (rep.violations.size() > 1
                                    ? " (+" + std::to_string(rep.violations.size() - 1) +
                                          " more)"
                                    : ""));
    return rep;
}

// --- BCH group law --------------------------------------------------------------

/// Group product in exponential coordinates via the BCH series truncated at
/// commutator degree 4, which is exact for nilpotency step <= 4:
///   Z = X + Y + [X,Y]/2 + ([X,[X,Y]] - [Y,[X,Y]])/12 - [Y,[X,[X,Y]]]/24.
inline std::vector<double> bch_multiply(const LieAlgebraSpec& spec, const std::vector<double>& x,
                                        const std::vector<double>& y) {
    const auto rep = require_valid(spec);
    if (rep.step > 4)
        throw unsupported_error("bch_multiply: series truncation covers step <= 4, algebra has "
                                "step " +
                                std::to_string(rep.step));
    const std::size_t d = spec.dim;
    if (x.size() != d || y.size() != d)
        throw validation_error("bch_multiply: coordinate vectors must have the algebra rank");
    for (double v : x)
        if (!std::isfinite(v)) throw validation_error("bch_multiply: non-finite coordinates");
    for (double v : y)
        if (!std::isfinite(v)) throw validation_error("bch_multiply: non-finite coordinates");

    const auto xy = detail::bracket(spec, x, y);          // [X,Y]
    const auto xxy = detail::bracket(spec, x, xy);        // [X,[X,Y]]
    const auto yxy = detail::bracket(spec, y, xy);        // [Y,[X,Y]]
    const auto yxxy = detail::bracket(spec, y, xxy);      // [Y,[X,[X,Y]]]
    std::vector<double> z(d);
    for (std::size_t k = 0; k < d; ++k)
        z[k] = x[k] + y[k] + 0.5 * xy[k] + (xxy[k] - yxy[k]) / 12.0 - yxxy[k] / 24.0;
    return z;
}

// --- coadjoint forms, radicals, jump indices -------------------------------------

/// The skew form B_nu(X,Y) = nu([X,Y]) of a functional nu in dual coordinates,
/// its radical, and the jump set e(nu) (1-based indices into the flag).
struct OrbitData {
    Eigen::MatrixXd B;
    Eigen::MatrixXd radical;  // d x (d - rank), orthonormal columns spanning r_nu
    std::size_t rank = 0;     // rank of B = dim of the coadjoint orbit
    std::vector<std::size_t> jump_set;
};

namespace detail {

inline void check_functional(const LieAlgebraSpec& spec, const std::vector<double>& nu) {
    if (nu.size() != spec.dim)
        throw validation_error("functional: expected " + std::to_string(spec.dim) +
                               " dual coordinates, got " + std::to_string(nu.size()));
    for (double v : nu)
        if (!std::isfinite(v)) throw validation_error("functional: non-finite entry");
}

} // namespace detail

inline OrbitData coadjoint_form(const LieAlgebraSpec& spec, const std::vector<double>& nu) {
    require_valid(spec);
    detail::check_functional(spec, nu);
    const auto d = static_cast<Eigen::Index>(spec.dim);
    OrbitData orbit;
    orbit.B.resize(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) {
            double v = 0.0;
            for (std::size_t k = 0; k < spec.dim; ++k)
                v += spec.structure(static_cast<std::size_t>(i), static_cast<std::size_t>(j), k) *
                     nu[k];
            orbit.B(i, j) = v;
        }

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(orbit.B, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    orbit.rank = 0;
    if (s.size() > 0 && s(0) > 0.0)
        for (Eigen::Index i = 0; i < s.size(); ++i)
            if (s(i) > rank_rel_threshold * s(0)) ++orbit.rank;
    orbit.radical = svd.matrixV().rightCols(d - static_cast<Eigen::Index>(orbit.rank));

    // Jump indices by incremental rank growth of r_nu + g_j: maintain an
    // orthonormal basis, starting from the radical; j joins e(nu) exactly
    // when e_j sticks out of the span built so far.
    Eigen::MatrixXd U(d, d);
    Eigen::Index cols = orbit.radical.cols();
    U.leftCols(cols) = orbit.radical;
    for (Eigen::Index j = 0; j < d; ++j) {
        Eigen::VectorXd v = Eigen::VectorXd::Zero(d);
        v(j) = 1.0;
        // Two rounds of Gram-Schmidt for orthogonality at working precision.
        v -= U.leftCols(cols) * (U.leftCols(cols).transpose() * v);
        v -= U.leftCols(cols) * (U.leftCols(cols).transpose() * v);
        const double norm = v.norm();
        if (norm > rank_rel_threshold) {
            orbit.jump_set.push_back(static_cast<std::size_t>(j) + 1);
            U.col(cols++) = v / norm;
        }
    }
    return orbit;
}

inline std::vector<std::size_t> jump_indices(const LieAlgebraSpec& spec,
                                             const std::vector<double>& nu) {
    return coadjoint_form(spec, nu).jump_set;
}

// --- generic stratum --------------------------------------------------------------

struct StratumReport {
    std::vector<std::size_t> P;  // generic jump set
    std::vector<std::size_t> Q;  // complement in {1..d}
    std::size_t orbit_dim = 0;   // #P
    double fraction = 0.0;       // share of samples attaining P
    std::size_t samples = 0;
};

/// Sample random functionals and return the jump set of maximal orbit
/// dimension. Genericity is a polynomial nonvanishing condition, so random
/// reals attain it with probability 1; the certificate records the observed
/// fraction.
inline StratumReport generic_stratum(const LieAlgebraSpec& spec, std::size_t samples = 64,
                                     std::uint64_t seed = default_seed) {
    require_valid(spec);
    if (samples < 1) throw validation_error("generic_stratum: need at least one sample");
    rng gen(seed);
    std::map<std::vector<std::size_t>, std::size_t> counts;
    std::size_t max_rank = 0;
    std::vector<double> nu(spec.dim);
    for (std::size_t trial = 0; trial < samples; ++trial) {
        for (double& v : nu) v = gen.uniform(-1.0, 1.0);
        auto jumps = jump_indices(spec, nu);
        max_rank = std::max(max_rank, jumps.size());
        ++counts[std::move(jumps)];
    }
    bool nonabelian = false;
    for (double v : spec.c)
        if (v != 0.0) { nonabelian = true; break; }
    if (max_rank == 0 && nonabelian)
        throw numeric_error("generic_stratum: all samples produced rank 0 on a nonabelian "
                            "algebra; pathological sampling, try another seed");

    StratumReport rep;
    rep.samples = samples;
    std::size_t best = 0;
    for (const auto& [set, count] : counts) {
        if (set.size() == max_rank && count > best) {
            best = count;
            rep.P = set;
        }
    }
    rep.orbit_dim = rep.P.size();
    rep.fraction = static_cast<double>(best) / static_cast<double>(samples);
    for (std::size_t j = 1; j <= spec.dim; ++j)
        if (!std::binary_search(rep.P.begin(), rep.P.end(), j)) rep.Q.push_back(j);
    return rep;
}

// --- Pfaffian ---------------------------------------------------------------------

/// |Pf(nu)| = sqrt(det B_{nu,P}) for the restriction of B_nu to the index set
/// P, computed by skew-symmetric Householder tridiagonalization (the Pfaffian
/// of a skew tridiagonal matrix is the product of its odd superdiagonal
/// entries, and orthogonal congruence only flips its sign). Only the
/// magnitude is defined here; the Plancherel density never needs a sign.
inline double pfaffian_abs(const LieAlgebraSpec& spec, const std::vector<double>& nu,
                           const std::vector<std::size_t>& P) {
    auto orbit = coadjoint_form(spec, nu);
    for (std::size_t idx = 0; idx < P.size(); ++idx) {
        if (P[idx] < 1 || P[idx] > spec.dim)
            throw validation_error("pfaffian: index set P out of range");
        if (idx > 0 && P[idx] <= P[idx - 1])
            throw validation_error("pfaffian: index set P must be strictly increasing");
    }
    const auto m = static_cast<Eigen::Index>(P.size());
    if (m == 0) return 1.0;  // empty product: the abelian convention

    Eigen::MatrixXd A(m, m);
    for (Eigen::Index r = 0; r < m; ++r)
        for (Eigen::Index c = 0; c < m; ++c)
            A(r, c) = orbit.B(static_cast<Eigen::Index>(P[static_cast<std::size_t>(r)] - 1),
                              static_cast<Eigen::Index>(P[static_cast<std::size_t>(c)] - 1));

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
    const auto& s = svd.singularValues();
    if (s.size() == 0 || s(0) == 0.0 || s(s.size() - 1) < rank_rel_threshold * s(0))
        throw domain_error("pfaffian: B restricted to P is singular; nu is not in the generic "
                           "stratum for this P");
    if (m % 2 != 0)
        throw domain_error("pfaffian: odd index set cannot be generic for a skew form");

    for (Eigen::Index k = 0; k + 2 < m; ++k) {
        Eigen::VectorXd x = A.col(k).segment(k + 1, m - k - 1);
        const double alpha = x.norm();
        if (alpha < 1e-300) continue;
        Eigen::VectorXd v = x;
        v(0) += (x(0) >= 0.0 ? alpha : -alpha);
        const double beta = v.squaredNorm();
        if (beta < 1e-300) continue;
        auto rows = A.block(k + 1, 0, m - k - 1, m);
        rows -= (2.0 / beta) * v * (v.transpose() * rows).eval();
        auto cols = A.block(0, k + 1, m, m - k - 1);
        cols -= (2.0 / beta) * (cols * v).eval() * v.transpose();
    }
    double pf = 1.0;
    for (Eigen::Index i = 0; i + 1 < m; i += 2) pf *= A(i, i + 1);
    return std::abs(pf);
}

// --- file format ------------------------------------------------------------------

/// Plain-text algebra files ("liealg 1"): dim, labels, then sparse brackets
///   liealg 1
///   dim 3
///   labels Z X Y
///   bracket 2 3 1 1
/// with 1-based indices, i < j, and antisymmetric completion on load.
inline void write_algebra(std::ostream& os, const LieAlgebraSpec& spec) {
    os << "liealg 1\n";
    os << "dim " << spec.dim << "\n";
    os << "labels";
    for (const auto& l : spec.labels) os << " " << l;
    os << "\n";
    char buf[64];
    for (std::size_t i = 0; i < spec.dim; ++i)
        for (std::size_t j = i + 1; j < spec.dim; ++j)
            for (std::size_t k = 0; k < spec.dim; ++k) {
                const double v = spec.structure(i, j, k);
                if (v != 0.0) {
                    std::snprintf(buf, sizeof buf, "%.17g", v);
                    os << "bracket " << i + 1 << " " << j + 1 << " " << k + 1 << " " << buf
                       << "\n";
                }
            }
}

inline void save_algebra(const std::string& path, const LieAlgebraSpec& spec) {
    std::ofstream os(path);
    if (!os) throw input_error("cannot open '" + path + "' for writing");
    write_algebra(os, spec);
    if (!os) throw input_error("failed writing algebra to '" + path + "'");
}

inline LieAlgebraSpec read_algebra(std::istream& is, const std::string& origin = "<stream>") {
    std::string line;
    if (!std::getline(is, line) || line != "liealg 1")
        throw input_error(origin + ": not a 'liealg 1' file");
    std::size_t dim = 0;
    std::vector<std::string> labels;
    LieAlgebraSpec spec;
    bool have_spec = false;
    std::vector<std::array<std::size_t, 3>> seen;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string key;
        ss >> key;
        if (key == "dim") {
            if (!(ss >> dim) || dim == 0) throw input_error(origin + ": bad dim line");
        } else if (key == "labels") {
            std::string l;
            while (ss >> l) labels.push_back(l);
        } else if (key == "bracket") {
            if (!have_spec) {
                if (dim == 0) throw input_error(origin + ": bracket before dim");
                if (labels.empty()) {
                    labels.resize(dim);
                    for (std::size_t i = 0; i < dim; ++i) labels[i] = "X" + std::to_string(i + 1);
                }
                spec = make_algebra(dim, labels);
                have_spec = true;
            }
            std::size_t i, j, k;
            double v;
            if (!(ss >> i >> j >> k >> v))
                throw input_error(origin + ": malformed bracket line '" + line + "'");
            for (const auto& t : seen)
                if (t[0] == i && t[1] == j && t[2] == k)
                    throw input_error(origin + ": duplicate bracket (" + std::to_string(i) +
                                      "," + std::to_string(j) + "," + std::to_string(k) + ")");
            seen.push_back({i, j, k});
            try {
                set_bracket(spec, i, j, k, v);
            } catch (const validation_error& e) {
                throw input_error(origin + ": " + e.what());
            }
        } else {
            throw input_error(origin + ": unknown key '" + key + "'");
        }
    }
    if (!have_spec) {
        if (dim == 0) throw input_error(origin + ": missing dim");
        if (labels.empty()) {
            labels.resize(dim);
            for (std::size_t i = 0; i < dim; ++i) labels[i] = "X" + std::to_string(i + 1);
        }
        spec = make_algebra(dim, labels);
    }
    if (spec.labels.size() != spec.dim)
        throw input_error(origin + ": label count does not match dim");
    return spec;
}

inline LieAlgebraSpec load_algebra(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw input_error("cannot open algebra file '" + path + "'");
    return read_algebra(is, path);
}

} // namespace ingham::nilpotent

#endif // INGHAM_NILPOTENT_HPP

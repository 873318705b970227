#pragma once

#include <algorithm>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "biphoton/core/errors.hpp"
#include "biphoton/core/field.hpp"
#include "biphoton/retrieve/sideband.hpp"

namespace biphoton {

/// Scalar phase surface pinned to zero at `pin`, valid on `mask`. Each
/// connected component of the gradient graph carries its own undetermined
/// constant; `main_mask` marks the largest one (the gauge of `pin`), which is
/// what fits and round-trip comparisons should use.
struct PhaseSurface {
    RealField2D values;
    MaskField2D mask;
    MaskField2D main_mask;
    std::pair<int, int> pin{0, 0};
    double residual_rms = 0.0;  // rms of the per-link residuals of the solve
    int components = 1;
    int warnings = 0;  // fragment boundaries / excluded cells encountered
};

/// One least-squares constraint phi(to) - phi(from) = target between
/// axis-adjacent cells.
struct GradientLink {
    int from = 0, to = 0;  // flat cell indices
    double target = 0.0;
};

namespace detail {

/// Newton divided-difference interpolant through up to 4 samples.
struct PolyInterp {
    int m = 0;
    double xs[4] = {0, 0, 0, 0};
    double coef[4] = {0, 0, 0, 0};  // Newton coefficients

    void build(const double* x, const double* y, int count) {
        m = count;
        double table[4];
        for (int i = 0; i < m; ++i) {
            xs[i] = x[i];
            table[i] = y[i];
        }
        for (int level = 1; level < m; ++level)
            for (int i = m - 1; i >= level; --i)
                table[i] = (table[i] - table[i - 1]) / (xs[i] - xs[i - level]);
        for (int i = 0; i < m; ++i) coef[i] = table[i];
    }

    double eval(double x) const {
        double acc = coef[m - 1];
        for (int i = m - 2; i >= 0; --i) acc = acc * (x - xs[i]) + coef[i];
        return acc;
    }

    /// Second derivative of the interpolant (degree <= 3).
    double second(double x) const {
        if (m < 3) return 0.0;
        if (m == 3) return 2.0 * coef[2];
        return 2.0 * coef[2] + coef[3] * (6.0 * x - 2.0 * (xs[0] + xs[1] + xs[2]));
    }
};

}  // namespace detail

/// Turn the measured shear-step differences into neighbor-difference targets.
///
/// The sample dphi(nu) = phi(nu) - phi(nu+Omega) is (exactly for cubic phase)
/// -Omega * [phi'(nu + Omega/2) + (Omega^2/24) phi''']: a midpoint slope, not
/// a slope at nu. Treating it as the on-grid slope would leave an O(Omega
/// phi'') systematic across the surface, far above the reconstruction
/// tolerances at paper-scale GDD. So each link target integrates a locally
/// interpolated, half-shear-recentered, curvature-corrected slope with a
/// Simpson rule: exact for polynomial phase through cubic, O(Omega^2 phi''')
/// beyond. This is still the (spacing/Omega)-scaled use of dphi from Eq. M4,
/// made accurate to its own discretization order.
inline std::vector<GradientLink> build_links(const GradientField& g) {
    const int axis = g.sheared_axis();
    const int nlines = (axis == 0) ? g.values.nb() : g.values.na();
    const int len = (axis == 0) ? g.values.na() : g.values.nb();
    const double r = g.shear / ((axis == 0) ? g.values.axis_a.spacing : g.values.axis_b.spacing);
    if (r == 0.0) throw ContractError("build_links: zero shear");

    auto valid = [&](int line, int k) -> bool {
        return (axis == 0 ? g.mask.at(k, line) : g.mask.at(line, k)) != 0;
    };
    auto value = [&](int line, int k) -> double {
        return axis == 0 ? g.values.at(k, line) : g.values.at(line, k);
    };
    auto flat = [&](int line, int k) -> int {
        int i = (axis == 0) ? k : line;
        int j = (axis == 0) ? line : k;
        return i * g.values.nb() + j;
    };

    std::vector<GradientLink> links;
    for (int l = 0; l < nlines; ++l) {
        for (int k = 0; k + 1 < len; ++k) {
            if (!valid(l, k) || !valid(l, k + 1)) continue;
            // stencil: up to 4 valid cells nearest the recentered midpoint
            const double center = k + 0.5 - 0.5 * r;
            const int base = static_cast<int>(std::floor(center));
            std::vector<int> cand;
            for (int c = base - 4; c <= base + 5; ++c)
                if (c >= 0 && c < len && valid(l, c)) cand.push_back(c);
            std::sort(cand.begin(), cand.end(), [&](int p, int q) {
                double dp = std::abs(p - center), dq = std::abs(q - center);
                return dp != dq ? dp < dq : p < q;
            });
            int count = std::min<int>(4, static_cast<int>(cand.size()));
            if (count == 0) continue;
            double sx[4], sy[4];
            for (int c = 0; c < count; ++c) {
                sx[c] = cand[c];
                sy[c] = value(l, cand[c]);
            }
            detail::PolyInterp dhat;
            dhat.build(sx, sy, count);

            auto slope = [&](double x) {
                double xe = x - 0.5 * r;
                return -(dhat.eval(xe) - (r * r / 24.0) * dhat.second(xe)) / r;
            };
            double target =
                (slope(k) + 4.0 * slope(k + 0.5) + slope(k + 1.0)) / 6.0;
            links.push_back({flat(l, k), flat(l, k + 1), target});
        }
    }
    return links;
}

/// Single-axis cumulative integration of one gradient (Eq. M4 made discrete):
/// per line, phi accumulates the link targets; each contiguous fragment is
/// pinned to zero at its cell nearest the line center. Inter-line offsets are
/// left unresolved by construction (resolved by zonal_solve).
inline PhaseSurface integrate_axis(const GradientField& g) {
    const int axis = g.sheared_axis();
    auto links = build_links(g);

    PhaseSurface out;
    out.values = RealField2D(g.values.axis_a, g.values.axis_b);
    out.mask = MaskField2D(g.values.axis_a, g.values.axis_b);
    const int nb = g.values.nb();

    // links along one line are emitted contiguously by build_links
    size_t idx = 0;
    while (idx < links.size()) {
        // collect one fragment: consecutive links whose cells chain together
        size_t start = idx;
        while (idx + 1 < links.size() && links[idx + 1].from == links[idx].to) ++idx;
        ++idx;

        std::vector<int> cells;
        std::vector<double> phi;
        cells.push_back(links[start].from);
        phi.push_back(0.0);
        for (size_t e = start; e < idx; ++e) {
            cells.push_back(links[e].to);
            phi.push_back(phi.back() + links[e].target);
        }
        // pin at the cell nearest the line center
        int center = (axis == 0) ? g.values.na() / 2 : nb / 2;
        size_t pin = 0;
        double bestd = 1e30;
        for (size_t c = 0; c < cells.size(); ++c) {
            int k = (axis == 0) ? cells[c] / nb : cells[c] % nb;
            if (std::abs(k - center) < bestd) {
                bestd = std::abs(k - center);
                pin = c;
            }
        }
        double off = phi[pin];
        for (size_t c = 0; c < cells.size(); ++c) {
            out.values.values[cells[c]] = phi[c] - off;
            out.mask.values[cells[c]] = 1;
        }
    }

    // fragment-boundary warnings: count per-line fragments beyond the first
    for (int l = 0; l < ((axis == 0) ? g.values.nb() : g.values.na()); ++l) {
        int fragments = 0;
        bool in_run = false;
        int len = (axis == 0) ? g.values.na() : g.values.nb();
        for (int k = 0; k < len; ++k) {
            bool v = (axis == 0 ? out.mask.at(k, l) : out.mask.at(l, k)) != 0;
            if (v && !in_run) ++fragments;
            in_run = v;
        }
        if (fragments > 1) out.warnings += fragments - 1;
    }
    out.pin = {g.values.na() / 2, nb / 2};
    out.main_mask = out.mask;  // every fragment keeps its own per-line gauge here
    return out;
}

struct ZonalOptions {
    double cg_tolerance = 1e-10;
    int max_iterations_per_unknown = 10;
};

/// Least-squares solve of an arbitrary link set on a grid: Jacobi-
/// preconditioned conjugate gradients on the graph Laplacian normal
/// equations, solved jointly over all connected components, each pinned at
/// its mask-centroid cell.
inline PhaseSurface solve_links(const std::vector<GradientLink>& links, Axis axis_a, Axis axis_b,
                                const ZonalOptions& opt = {}) {
    if (links.empty()) throw PreconditionError("solve_links: no usable gradient links");

    const int na = axis_a.n, nb = axis_b.n;
    const int ncells = na * nb;

    // adjacency over link endpoints
    std::vector<int> degree(ncells, 0);
    for (const auto& L : links) {
        ++degree[L.from];
        ++degree[L.to];
    }
    std::vector<int> offset(ncells + 1, 0);
    for (int c = 0; c < ncells; ++c) offset[c + 1] = offset[c] + degree[c];
    std::vector<int> adj_link(offset.back());
    {
        std::vector<int> fill(offset.begin(), offset.end() - 1);
        for (size_t e = 0; e < links.size(); ++e) {
            adj_link[fill[links[e].from]++] = static_cast<int>(e);
            adj_link[fill[links[e].to]++] = static_cast<int>(e);
        }
    }

    // connected components over cells with at least one link
    std::vector<int> comp(ncells, -1);
    int ncomp = 0;
    for (int seed = 0; seed < ncells; ++seed) {
        if (degree[seed] == 0 || comp[seed] >= 0) continue;
        std::queue<int> q;
        q.push(seed);
        comp[seed] = ncomp;
        while (!q.empty()) {
            int c = q.front();
            q.pop();
            for (int e = offset[c]; e < offset[c + 1]; ++e) {
                const auto& L = links[adj_link[e]];
                int other = (L.from == c) ? L.to : L.from;
                if (comp[other] < 0) {
                    comp[other] = ncomp;
                    q.push(other);
                }
            }
        }
        ++ncomp;
    }

    // normal equations: Lap x = b with Lap = A^T A, b = A^T t
    std::vector<double> x(ncells, 0.0), b(ncells, 0.0);
    for (const auto& L : links) {
        b[L.to] += L.target;
        b[L.from] -= L.target;
    }
    auto apply_lap = [&](const std::vector<double>& v, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        for (const auto& L : links) {
            double d = v[L.to] - v[L.from];
            out[L.to] += d;
            out[L.from] -= d;
        }
    };

    // one CG over all components at once (the system is block diagonal);
    // deterministic, single-threaded reduction order
    {
        std::vector<double> r = b, z(ncells, 0.0), p(ncells, 0.0), ap(ncells, 0.0);
        double bnorm = 0.0;
        for (int c = 0; c < ncells; ++c) bnorm += b[c] * b[c];
        bnorm = std::sqrt(bnorm);
        if (bnorm > 0.0) {
            auto precond = [&](const std::vector<double>& rr, std::vector<double>& zz) {
                for (int c = 0; c < ncells; ++c) zz[c] = degree[c] ? rr[c] / degree[c] : 0.0;
            };
            precond(r, z);
            p = z;
            double rz = 0.0;
            for (int c = 0; c < ncells; ++c) rz += r[c] * z[c];
            const long max_iter =
                static_cast<long>(opt.max_iterations_per_unknown) * ncells;
            long it = 0;
            for (; it < max_iter; ++it) {
                apply_lap(p, ap);
                double pap = 0.0;
                for (int c = 0; c < ncells; ++c) pap += p[c] * ap[c];
                if (pap == 0.0) break;
                double alpha = rz / pap;
                double rnorm = 0.0;
                for (int c = 0; c < ncells; ++c) {
                    x[c] += alpha * p[c];
                    r[c] -= alpha * ap[c];
                    rnorm += r[c] * r[c];
                }
                if (std::sqrt(rnorm) <= opt.cg_tolerance * bnorm) break;
                precond(r, z);
                double rz_new = 0.0;
                for (int c = 0; c < ncells; ++c) rz_new += r[c] * z[c];
                double beta = rz_new / rz;
                rz = rz_new;
                for (int c = 0; c < ncells; ++c) p[c] = z[c] + beta * p[c];
            }
            if (it >= max_iter) {
                double rnorm = 0.0;
                for (int c = 0; c < ncells; ++c) rnorm += r[c] * r[c];
                throw PreconditionError(
                    "solve_links: conjugate gradients did not converge in " +
                    std::to_string(max_iter) + " iterations (relative residual " +
                    std::to_string(std::sqrt(rnorm) / bnorm) + ")");
            }
        }
    }

    // pin each component at its centroid cell; the reported pin is the
    // largest component's
    std::vector<double> ci(ncomp, 0.0), cj(ncomp, 0.0);
    std::vector<int> csize(ncomp, 0);
    for (int c = 0; c < ncells; ++c) {
        if (comp[c] < 0) continue;
        ci[comp[c]] += c / nb;
        cj[comp[c]] += c % nb;
        ++csize[comp[c]];
    }
    std::vector<int> pin_cell(ncomp, -1);
    std::vector<double> pin_dist(ncomp, 1e30);
    for (int c = 0; c < ncells; ++c) {
        if (comp[c] < 0) continue;
        int k = comp[c];
        double di = c / nb - ci[k] / csize[k];
        double dj = c % nb - cj[k] / csize[k];
        double d = di * di + dj * dj;
        if (d < pin_dist[k]) {
            pin_dist[k] = d;
            pin_cell[k] = c;
        }
    }
    std::vector<double> shift(ncomp, 0.0);
    for (int k = 0; k < ncomp; ++k) shift[k] = x[pin_cell[k]];

    PhaseSurface out;
    out.values = RealField2D(axis_a, axis_b);
    out.mask = MaskField2D(axis_a, axis_b);
    out.main_mask = MaskField2D(axis_a, axis_b);
    int main_comp = static_cast<int>(std::max_element(csize.begin(), csize.end()) -
                                     csize.begin());
    for (int c = 0; c < ncells; ++c) {
        if (comp[c] < 0) continue;
        out.values.values[c] = x[c] - shift[comp[c]];
        out.mask.values[c] = 1;
        if (comp[c] == main_comp) out.main_mask.values[c] = 1;
    }
    out.pin = {pin_cell[main_comp] / nb, pin_cell[main_comp] % nb};
    out.components = ncomp;

    double acc = 0.0;
    for (const auto& L : links) {
        double rres = out.values.values[L.to] - out.values.values[L.from] - L.target;
        acc += rres * rres;
    }
    out.residual_rms = std::sqrt(acc / links.size());
    return out;
}

/// Southwell-style zonal reconstruction from the two orthogonal gradients.
inline PhaseSurface zonal_solve(const GradientField& g_signal, const GradientField& g_idler,
                                const ZonalOptions& opt = {}) {
    if (!(g_signal.values.axis_a == g_idler.values.axis_a) ||
        !(g_signal.values.axis_b == g_idler.values.axis_b))
        throw ContractError("zonal_solve: gradients must share one grid");
    if (std::abs(std::abs(g_signal.shear) - std::abs(g_idler.shear)) >
        1e-9 * std::abs(g_signal.shear))
        throw ContractError("zonal_solve: gradients must share the shear magnitude");

    auto links = build_links(g_signal);
    auto more = build_links(g_idler);
    links.insert(links.end(), more.begin(), more.end());
    PhaseSurface out =
        solve_links(links, g_signal.values.axis_a, g_signal.values.axis_b, opt);
    out.warnings += g_signal.excluded_cells + g_idler.excluded_cells;
    return out;
}

}  // namespace biphoton

// static_states.hpp -- hydrostatic equilibria: the isothermal exponential
// profile, the isentropic power-law profile, and the shallow-water lake at
// rest, all normalized to a prescribed total mass. Profiles carry pointwise
// face values (used by the well-balanced reconstruction) plus a per-face
// balance density that makes cell pressure differences and potential
// differences cancel exactly in discrete functionals.
//
// Cell representation per kind:
//   isothermal      exact cell averages; the exponential family is closed
//                   under the face extrapolation map, so the two-sided
//                   hydrostatic reconstruction still matches to round-off
//   isentropic      gamma == 2: cell averages (= midpoint values, the
//                   profile is linear); other gamma: midpoint samples with
//                   the mass constant normalized against the discrete cell
//                   sum, keeping both the mass and balance contracts exact
//   swe_lake        h = <b> + c_M with <b> per-cell Gauss averages
//   tabulated F     Gauss-averaged cells + bisection for c_M; the balance
//                   residual is reported honestly rather than guaranteed
#pragma once

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

#include "core.hpp"
#include "eos.hpp"
#include "grid.hpp"

namespace stratlim {

enum class ProfileKind { isothermal, isentropic, swe_lake };

struct Potential {
    std::function<double(double, double)> fn; // F(x0, x1)
    bool default_gravity = true;              // F = -x_vert with closed-form paths

    static Potential gravity() { return Potential{}; }
    static Potential tabulated(std::function<double(double, double)> f) {
        Potential p;
        p.fn = std::move(f);
        p.default_gravity = false;
        return p;
    }
};

namespace detail {
// 5-point Gauss-Legendre rule on [-1, 1]
inline constexpr std::array<double, 5> kGaussX = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                                  0.5384693101056831, 0.9061798459386640};
inline constexpr std::array<double, 5> kGaussW = {0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                                  0.4786286704993665, 0.2369268850561891};

template <typename Fn>
inline double cell_average(const Grid& g, int i, int j, Fn&& f) {
    const double x0 = g.center(0, i), x1 = g.center(1, j);
    const double h0 = 0.5 * g.dx(0);
    if (g.dims == 1) {
        double s = 0.0;
        for (int a = 0; a < 5; ++a) s += kGaussW[a] * f(x0 + h0 * kGaussX[a], x1);
        return 0.5 * s;
    }
    const double h1 = 0.5 * g.dx(1);
    double s = 0.0;
    for (int a = 0; a < 5; ++a)
        for (int b = 0; b < 5; ++b) s += kGaussW[a] * kGaussW[b] * f(x0 + h0 * kGaussX[a], x1 + h1 * kGaussX[b]);
    return 0.25 * s;
}
} // namespace detail

class StaticProfile {
  public:
    ProfileKind kind = ProfileKind::isothermal;
    Grid grid;
    EosParams eos;          // isentropic: K = exp(s_bar/c_v); swe: p = h^2/2
    double theta_bar = 1.0; // isothermal only
    double c_M = 0.0;
    double total_mass = 0.0;

    // cells (ghosted): comps rho~, p~, theta~, F
    Field cells;

    // pointwise values at faces of axis d; k in [0, n_d], q a cell index on
    // the perpendicular axis
    struct FaceData {
        int nk = 0, nq = 0;
        std::vector<double> rho, p, F, rho_balance;
    };
    std::array<FaceData, 2> faces;

    double rho(int i, int j = 0) const { return cells.at(0, i, j); }
    double p(int i, int j = 0) const { return cells.at(1, i, j); }
    double theta(int i, int j = 0) const { return cells.at(2, i, j); }
    double F(int i, int j = 0) const { return cells.at(3, i, j); }

    std::size_t face_index(int d, int k, int q) const { return std::size_t(q) * (grid.n[d] + 1) + k; }
    double face_rho(int d, int k, int q) const { return faces[d].rho[face_index(d, k, q)]; }
    double face_p(int d, int k, int q) const { return faces[d].p[face_index(d, k, q)]; }
    double face_F(int d, int k, int q) const { return faces[d].F[face_index(d, k, q)]; }
    double face_rho_balance(int d, int k, int q) const { return faces[d].rho_balance[face_index(d, k, q)]; }

    // (rho~, p~) image of the interior cells, the compact set K~ feeding the
    // essential/residual cutoff
    std::vector<std::array<double, 2>> image() const {
        std::vector<std::array<double, 2>> img;
        img.reserve(std::size_t(grid.n[0]) * grid.n[1]);
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i) img.push_back({rho(i, j), p(i, j)});
        return img;
    }
};

namespace detail {

struct LawContext {
    ProfileKind kind;
    double theta_bar = 1.0; // isothermal
    double K = 1.0;         // isentropic: exp(s_bar/c_v); swe: 1/2 in p = K h^2
    double gamma = 2.0;
    double beta = 0.0; // isentropic: (gamma-1)/(gamma K)
};

inline double law_rho(const LawContext& L, double c, double Fv) {
    switch (L.kind) {
        case ProfileKind::isothermal: return c * std::exp(Fv / L.theta_bar);
        case ProfileKind::isentropic: {
            const double bracket = c + L.beta * Fv;
            if (bracket <= 0.0) return 0.0;
            return std::pow(bracket, 1.0 / (L.gamma - 1.0));
        }
        case ProfileKind::swe_lake: return c + Fv;
    }
    return 0.0;
}

inline double law_p(const LawContext& L, double rho) {
    switch (L.kind) {
        case ProfileKind::isothermal: return L.theta_bar * rho;
        case ProfileKind::isentropic: return L.K * std::pow(rho, L.gamma);
        case ProfileKind::swe_lake: return 0.5 * rho * rho;
    }
    return 0.0;
}

// exact average of the default-gravity isothermal density over [zb, zt]
inline double iso_gravity_average(double c, double theta, double zb, double zt) {
    return c * theta * (std::exp(-zb / theta) - std::exp(-zt / theta)) / (zt - zb);
}

struct BuildSpec {
    LawContext law;
    Potential pot;
    int vert = 0;               // vertical axis for default gravity
    bool cells_pointwise = false; // midpoint samples instead of averages
};

inline double potential_at(const BuildSpec& bs, double x0, double x1) {
    if (bs.pot.default_gravity) return -(bs.vert == 0 ? x0 : x1);
    return bs.pot.fn(x0, x1);
}

// cell value of the density for a given constant c (average or midpoint)
inline double cell_rho_value(const BuildSpec& bs, const Grid& g, double c, int i, int j) {
    if (bs.cells_pointwise || (bs.law.kind == ProfileKind::isentropic && bs.pot.default_gravity))
        return law_rho(bs.law, c, potential_at(bs, g.center(0, i), g.center(1, j)));
    if (bs.law.kind == ProfileKind::isothermal && bs.pot.default_gravity) {
        const double zc = g.center(bs.vert, bs.vert == 0 ? i : j);
        const double h = 0.5 * g.dx(bs.vert);
        return iso_gravity_average(c, bs.law.theta_bar, zc - h, zc + h);
    }
    return cell_average(g, i, j, [&](double a, double b) { return law_rho(bs.law, c, bs.pot.fn(a, b)); });
}

// cell value of the potential (average where the density is averaged)
inline double cell_F_value(const BuildSpec& bs, const Grid& g, int i, int j) {
    if (bs.pot.default_gravity) return potential_at(bs, g.center(0, i), g.center(1, j));
    if (bs.cells_pointwise) return bs.pot.fn(g.center(0, i), g.center(1, j));
    return cell_average(g, i, j, bs.pot.fn);
}

inline double discrete_mass(const BuildSpec& bs, const Grid& g, double c) {
    KahanSum s;
    for (int j = 0; j < g.n[1]; ++j)
        for (int i = 0; i < g.n[0]; ++i) s.add(cell_rho_value(bs, g, c, i, j));
    return s.value() * g.cell_volume();
}

inline double solve_c_by_bisection(const BuildSpec& bs, const Grid& g, double M) {
    double lo = 1e-12, hi = 1.0;
    while (discrete_mass(bs, g, hi) < M) {
        hi *= 2.0;
        if (hi > 1e12) throw NonPositiveProfile("static profile: mass normalization failed to bracket");
    }
    while (discrete_mass(bs, g, lo) > M) lo *= 0.5;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (discrete_mass(bs, g, mid) < M) lo = mid;
        else hi = mid;
        if (hi - lo <= 1e-15 * std::max(1.0, hi)) break;
    }
    return 0.5 * (lo + hi);
}

// wrap/extend a coordinate index for evaluating static data in ghost cells
inline double ghost_coord(const Grid& g, int d, int idx) {
    // analytic continuation: just the nominal center; periodic axes wrap
    if (g.bc[d] == Bc::periodic) {
        int n = g.n[d];
        int w = ((idx % n) + n) % n;
        return g.center(d, w);
    }
    return g.center(d, idx);
}

inline StaticProfile build_profile(BuildSpec bs, const Grid& grid, double M, const EosParams& eos,
                                   double theta_bar) {
    if (M <= 0.0) throw NonPositiveProfile("static profile: total mass must be > 0");
    bs.vert = grid.dims - 1;

    StaticProfile prof;
    prof.kind = bs.law.kind;
    prof.grid = grid;
    prof.eos = eos;
    prof.theta_bar = theta_bar;
    prof.total_mass = M;

    // mass constant: closed forms for the default-gravity exponential and
    // gamma = 2 power law, discrete bisection otherwise (the two paths agree
    // to quadrature accuracy and are cross-checked in the tests)
    const int vd = bs.vert;
    const double zlo = grid.lo[vd], zhi = grid.hi[vd];
    const double perp_area = grid.total_volume() / (zhi - zlo);
    if (bs.law.kind == ProfileKind::isothermal && bs.pot.default_gravity) {
        const double col = theta_bar * (std::exp(-zlo / theta_bar) - std::exp(-zhi / theta_bar));
        prof.c_M = M / (perp_area * col);
    } else if (bs.law.kind == ProfileKind::isentropic && bs.pot.default_gravity &&
               std::abs(bs.law.gamma - 2.0) < 1e-12) {
        const double H = zhi - zlo;
        prof.c_M = (M / perp_area + 0.5 * bs.law.beta * (zhi * zhi - zlo * zlo)) / H;
    } else if (bs.law.kind == ProfileKind::swe_lake) {
        KahanSum bsum;
        for (int j = 0; j < grid.n[1]; ++j)
            for (int i = 0; i < grid.n[0]; ++i) bsum.add(cell_average(grid, i, j, bs.pot.fn));
        prof.c_M = (M - bsum.value() * grid.cell_volume()) / grid.total_volume();
    } else {
        prof.c_M = solve_c_by_bisection(bs, grid, M);
    }

    // cells, ghosts included; wall/1D ghosts continue the profile analytically
    prof.cells = Field(grid, 4);
    const int g0 = grid.ng_of(0), g1 = grid.ng_of(1);
    Grid coord = grid; // evaluation grid for ghost coordinates
    for (int j = -g1; j < grid.n[1] + g1; ++j) {
        for (int i = -g0; i < grid.n[0] + g0; ++i) {
            const bool interior = (i >= 0 && i < grid.n[0] && j >= 0 && j < grid.n[1]);
            double rho, Fv;
            if (interior) {
                rho = cell_rho_value(bs, grid, prof.c_M, i, j);
                Fv = cell_F_value(bs, grid, i, j);
            } else {
                // shifted one-cell grid so the same machinery evaluates ghosts
                const double x0 = ghost_coord(coord, 0, i);
                const double x1 = grid.dims > 1 ? ghost_coord(coord, 1, j) : grid.center(1, 0);
                Grid cellg = grid;
                cellg.n = {1, 1};
                cellg.lo = {x0 - 0.5 * grid.dx(0), grid.dims > 1 ? x1 - 0.5 * grid.dx(1) : grid.lo[1]};
                cellg.hi = {x0 + 0.5 * grid.dx(0), grid.dims > 1 ? x1 + 0.5 * grid.dx(1) : grid.hi[1]};
                cellg.dims = grid.dims;
                rho = cell_rho_value(bs, cellg, prof.c_M, 0, 0);
                Fv = cell_F_value(bs, cellg, 0, 0);
                if (!(rho > 0.0)) rho = 1e-12; // clamped continuation outside a thin profile
            }
            const double pv = law_p(bs.law, rho);
            prof.cells.at(0, i, j) = rho;
            prof.cells.at(1, i, j) = pv;
            prof.cells.at(2, i, j) = pv / rho;
            prof.cells.at(3, i, j) = Fv;
        }
    }

    // interior positivity contract
    for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i)
            if (!(prof.rho(i, j) > 0.0) || !(prof.p(i, j) > 0.0))
                throw NonPositiveProfile("static profile: rho~ or p~ not strictly positive in the domain");

    // pointwise face values + balance densities
    for (int d = 0; d < grid.dims; ++d) {
        auto& fd = prof.faces[d];
        fd.nk = grid.n[d] + 1;
        fd.nq = grid.n[1 - d];
        if (grid.dims == 1) fd.nq = 1;
        const std::size_t total = std::size_t(fd.nk) * fd.nq;
        fd.rho.resize(total);
        fd.p.resize(total);
        fd.F.resize(total);
        fd.rho_balance.resize(total);
        for (int q = 0; q < fd.nq; ++q) {
            for (int k = 0; k < fd.nk; ++k) {
                double x0, x1;
                if (d == 0) {
                    x0 = grid.face(0, k);
                    x1 = grid.dims > 1 ? grid.center(1, q) : grid.center(1, 0);
                } else {
                    x0 = grid.center(0, q);
                    x1 = grid.face(1, k);
                }
                const double Fv = potential_at(bs, x0, x1);
                double rho = law_rho(bs.law, prof.c_M, Fv);
                if (!(rho > 0.0)) rho = 1e-12;
                const std::size_t id = prof.face_index(d, k, q);
                fd.rho[id] = rho;
                fd.p[id] = law_p(bs.law, rho);
                fd.F[id] = Fv;
            }
        }
        // balance density: secant of cell pressure against cell potential, so
        // (p_R - p_L) - rho_bal (F_R - F_L) vanishes identically; interior
        // faces couple neighbor cells, wrap on periodic axes
        for (int q = 0; q < fd.nq; ++q) {
            for (int k = 0; k < fd.nk; ++k) {
                const std::size_t id = prof.face_index(d, k, q);
                int iL, jL, iR, jR;
                if (d == 0) {
                    iL = k - 1;
                    iR = k;
                    jL = jR = q;
                } else {
                    iL = iR = q;
                    jL = k - 1;
                    jR = k;
                }
                const bool interior = (k > 0 && k < grid.n[d]);
                if (!interior) {
                    if (grid.bc[d] == Bc::periodic) {
                        if (d == 0) { iL = grid.n[0] - 1; iR = 0; }
                        else { jL = grid.n[1] - 1; jR = 0; }
                    } else {
                        fd.rho_balance[id] = fd.rho[id];
                        continue;
                    }
                }
                const double dF = prof.F(iR, jR) - prof.F(iL, jL);
                const double dp = prof.p(iR, jR) - prof.p(iL, jL);
                const double scale = std::abs(prof.F(iR, jR)) + std::abs(prof.F(iL, jL));
                fd.rho_balance[id] = (std::abs(dF) > 1e-14 * (scale + 1.0))
                                         ? dp / dF
                                         : 0.5 * (prof.rho(iL, jL) + prof.rho(iR, jR));
            }
        }
    }
    return prof;
}

} // namespace detail

// rho~ = c_M exp(F / theta_bar), p~ = theta_bar rho~
inline StaticProfile build_isothermal(double theta_bar, double M, const Grid& grid,
                                      Potential pot = Potential::gravity()) {
    if (!(theta_bar > 0.0)) throw NonPositiveProfile("build_isothermal: theta_bar must be > 0");
    detail::BuildSpec bs;
    bs.law.kind = ProfileKind::isothermal;
    bs.law.theta_bar = theta_bar;
    bs.pot = std::move(pot);
    EosParams eos = EosParams::from_cv(1.0, 0.0);
    return detail::build_profile(bs, grid, M, eos, theta_bar);
}

// rho~ = (c_M + beta F)^{1/(gamma-1)}, beta = (gamma-1)/(gamma exp(s_bar/c_v)),
// p~ = exp(s_bar/c_v) rho~^gamma; entropy(rho~, p~) == s_bar by construction
inline StaticProfile build_isentropic(const EosParams& eos, double M, const Grid& grid,
                                      Potential pot = Potential::gravity()) {
    detail::BuildSpec bs;
    bs.law.kind = ProfileKind::isentropic;
    bs.law.gamma = eos.gamma;
    bs.law.K = std::exp(eos.s_bar / eos.c_v);
    bs.law.beta = (eos.gamma - 1.0) / (eos.gamma * bs.law.K);
    bs.pot = std::move(pot);
    bs.cells_pointwise = bs.pot.default_gravity; // see header note
    return detail::build_profile(bs, grid, M, eos, 1.0);
}

// lake at rest h~ = b + c_M under the identification h ~ rho, b ~ F
inline StaticProfile build_swe_lake(std::function<double(double, double)> b, double M, const Grid& grid) {
    detail::BuildSpec bs;
    bs.law.kind = ProfileKind::swe_lake;
    bs.law.gamma = 2.0;
    bs.law.K = 0.5;
    bs.pot = Potential::tabulated(std::move(b));
    EosParams eos = EosParams::from_cv(1.0, -std::log(2.0)); // p = h^2/2 = e^{s} h^2
    return detail::build_profile(bs, grid, M, eos, 1.0);
}

inline StaticProfile uniform_profile(const Grid& grid, Mode mode, double rho0 = 1.0, double p0 = 1.0) {
    auto zero = [](double, double) { return 0.0; };
    if (mode == Mode::swe) return build_swe_lake(zero, rho0 * grid.total_volume(), grid);
    return build_isothermal(p0 / rho0, rho0 * grid.total_volume(), grid, Potential::tabulated(zero));
}

// ---------------------------------------------------------------------------
// verify_hydrostatic: max over interior faces of the mismatch, scaled by the
// cell size, between the two one-sided hydrostatic extrapolations of the cell
// data onto the face (the face reconstruction the solver uses). Analytic
// profiles satisfy this to round-off; a perturbed cell shows up as a
// residual ~ perturbation / dx at the adjacent faces.
// ---------------------------------------------------------------------------
namespace detail {
inline double extrapolate_p(const StaticProfile& prof, int i, int j, double F_face) {
    const double rho = prof.rho(i, j), p = prof.p(i, j), Fc = prof.F(i, j);
    const double dF = F_face - Fc;
    switch (prof.kind) {
        case ProfileKind::isothermal: {
            const double theta = p / rho;
            return p * std::exp(dF / theta);
        }
        case ProfileKind::isentropic: {
            const double gamma = prof.eos.gamma;
            const double K = p / std::pow(rho, gamma);
            double br = std::pow(rho, gamma - 1.0) + (gamma - 1.0) / (gamma * K) * dF;
            if (br <= 0.0) br = 0.0;
            return K * std::pow(br, gamma / (gamma - 1.0));
        }
        case ProfileKind::swe_lake: {
            const double h = rho + dF;
            return 0.5 * h * h;
        }
    }
    return 0.0;
}
} // namespace detail

inline double verify_hydrostatic(const StaticProfile& prof) {
    const Grid& g = prof.grid;
    double worst = 0.0;
    for (int d = 0; d < g.dims; ++d) {
        const int nq = (g.dims == 1) ? 1 : g.n[1 - d];
        for (int q = 0; q < nq; ++q) {
            for (int k = 1; k < g.n[d]; ++k) { // interior faces
                int iL, jL, iR, jR;
                if (d == 0) { iL = k - 1; iR = k; jL = jR = q; }
                else { iL = iR = q; jL = k - 1; jR = k; }
                const double Ff = prof.face_F(d, k, q);
                const double pL = detail::extrapolate_p(prof, iL, jL, Ff);
                const double pR = detail::extrapolate_p(prof, iR, jR, Ff);
                worst = std::max(worst, std::abs(pL - pR) / g.dx(d));
            }
        }
    }
    return worst;
}

// ---------------------------------------------------------------------------
// ghost_fill: periodic wrap on periodic axes; on wall axes the normal
// momentum reflects and (rho, p) continue the static profile by copying the
// mirrored interior perturbations onto the analytic ghost values. Interior
// cells are never touched.
// ---------------------------------------------------------------------------
inline void ghost_fill(ConservedField& f, const StaticProfile& prof, const EosParams& eos) {
    const Grid& g = f.grid;
    const double inv_e2_cv = (f.mode == Mode::euler) ? eos.c_v / (f.eps * f.eps) : 0.0;

    for (int d = 0; d < g.dims; ++d) {
        const int n = g.n[d];
        const int ng = g.ng_of(d);
        const int o0 = (d == 0) ? -g.ng_of(1) : -g.ng_of(0); // other-axis range incl. ghosts
        const int o1 = (d == 0) ? g.n[1] + g.ng_of(1) : g.n[0] + g.ng_of(0);
        for (int o = o0; o < o1; ++o) {
            if (g.dims == 1 && o != 0) break;
            auto cell = [&](int k) -> std::pair<int, int> { return d == 0 ? std::pair{k, o} : std::pair{o, k}; };
            for (int l = 1; l <= ng; ++l) {
                // low-side ghost -l, high-side ghost n-1+l
                for (int side = 0; side < 2; ++side) {
                    const int kg = side == 0 ? -l : n - 1 + l;
                    const int ki = (g.bc[d] == Bc::periodic) ? (side == 0 ? n - l : l - 1)
                                                             : (side == 0 ? l - 1 : n - l);
                    auto [ig, jg] = cell(kg);
                    auto [ii, ji] = cell(ki);
                    if (g.bc[d] == Bc::periodic) {
                        for (int c = 0; c < f.q.ncomp(); ++c) f.q.at(c, ig, jg) = f.q.at(c, ii, ji);
                        continue;
                    }
                    // wall: reflect m_n, continue rho and p hydrostatically
                    const double drho = f.q.at(0, ii, ji) - prof.rho(ii, ji);
                    const double rho_g = prof.rho(ig, jg) + drho;
                    f.q.at(0, ig, jg) = rho_g;
                    for (int dd = 0; dd < g.dims; ++dd) {
                        const double mv = f.q.at(f.comp_m(dd), ii, ji);
                        f.q.at(f.comp_m(dd), ig, jg) = (dd == d) ? -mv : mv;
                    }
                    if (f.mode == Mode::euler) {
                        const double dp = recover_pressure(f, eos, ii, ji) - prof.p(ii, ji);
                        const double p_g = prof.p(ig, jg) + dp;
                        double m2 = 0.0;
                        for (int dd = 0; dd < g.dims; ++dd) m2 += sqr(f.q.at(f.comp_m(dd), ig, jg));
                        f.q.at(f.comp_E(), ig, jg) = 0.5 * m2 / rho_g + inv_e2_cv * p_g;
                    }
                }
            }
        }
    }
}

} // namespace stratlim

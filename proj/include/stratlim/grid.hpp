// grid.hpp -- structured 1D/2D grids, cell-centered multi-component fields
// with ghost layers, and the cell-sum quadrature behind every volume
// integral in the diagnostics.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core.hpp"
#include "eos.hpp"

namespace stratlim {

enum class Bc { periodic, wall };
enum class Mode { euler, swe };

struct Grid {
    int dims = 1;
    std::array<int, 2> n{1, 1};
    std::array<double, 2> lo{0.0, 0.0};
    std::array<double, 2> hi{1.0, 1.0};
    std::array<Bc, 2> bc{Bc::wall, Bc::wall};
    int ng = 2; // ghost layers per side of each active axis

    static Grid column(int nz, double lo = 0.0, double hi = 1.0, Bc bcz = Bc::wall) {
        Grid g;
        g.dims = 1;
        g.n = {nz, 1};
        g.lo = {lo, 0.0};
        g.hi = {hi, 1.0};
        g.bc = {bcz, Bc::wall};
        return g;
    }
    // horizontal axis 0 periodic, vertical axis 1 walled
    static Grid slab(int nx, int nz, double lx = 1.0, double lz = 1.0) {
        Grid g;
        g.dims = 2;
        g.n = {nx, nz};
        g.lo = {0.0, 0.0};
        g.hi = {lx, lz};
        g.bc = {Bc::periodic, Bc::wall};
        return g;
    }
    static Grid box(int nx, int nz, double lx = 1.0, double lz = 1.0) {
        Grid g = slab(nx, nz, lx, lz);
        g.bc = {Bc::periodic, Bc::periodic};
        return g;
    }

    int ng_of(int d) const { return d < dims ? ng : 0; }
    double dx(int d) const { return (hi[d] - lo[d]) / n[d]; }
    double cell_volume() const {
        double v = 1.0;
        for (int d = 0; d < dims; ++d) v *= dx(d);
        return v;
    }
    double total_volume() const {
        double v = 1.0;
        for (int d = 0; d < dims; ++d) v *= (hi[d] - lo[d]);
        return v;
    }
    double center(int d, int i) const { return lo[d] + (i + 0.5) * dx(d); }
    double face(int d, int i) const { return lo[d] + i * dx(d); }
    std::int64_t cell_count() const { return std::int64_t(n[0]) * n[1]; }
};

// Cell data with ghost layers; component-major storage.
class Field {
  public:
    Field() = default;
    Field(const Grid& grid, int ncomp) : grid_(grid), ncomp_(ncomp) {
        sx_ = grid.n[0] + 2 * grid.ng_of(0);
        sz_ = grid.n[1] + 2 * grid.ng_of(1);
        data_.assign(std::size_t(ncomp_) * sx_ * sz_, 0.0);
    }

    int ncomp() const { return ncomp_; }
    const Grid& grid() const { return grid_; }

    // i in [-ng0, n0+ng0), j in [-ng1, n1+ng1)
    double& at(int c, int i, int j) { return data_[index(c, i, j)]; }
    double at(int c, int i, int j) const { return data_[index(c, i, j)]; }

    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

  private:
    std::size_t index(int c, int i, int j) const {
        return (std::size_t(c) * sz_ + std::size_t(j + grid_.ng_of(1))) * sx_ + std::size_t(i + grid_.ng_of(0));
    }
    Grid grid_;
    int ncomp_ = 0;
    int sx_ = 0, sz_ = 0;
    std::vector<double> data_;
};

// Conserved state: euler [rho, m_0..m_{dims-1}, E_total], swe [h, hu_0..].
// E_total is the scaled energy 1/2 |m|^2/rho + c_v p / eps^2 of the energy
// equation. The work accumulator integrates the potential-force work the
// scheme actually adds, so energy budgets close to round-off.
struct ConservedField {
    Grid grid;
    Mode mode = Mode::euler;
    double eps = 1.0;
    double t = 0.0;
    double work_accum = 0.0;
    std::int64_t clipped_total = 0;
    Field q;

    static int ncomp_for(Mode m, int dims) { return m == Mode::euler ? dims + 2 : dims + 1; }
    static ConservedField make(const Grid& g, Mode m, double eps) {
        ConservedField f;
        f.grid = g;
        f.mode = m;
        f.eps = eps;
        f.q = Field(g, ncomp_for(m, g.dims));
        return f;
    }

    int comp_rho() const { return 0; }
    int comp_m(int d) const { return 1 + d; }
    int comp_E() const { return 1 + grid.dims; }
};

// physical pressure from the conserved state of one cell
inline double recover_pressure(const ConservedField& f, const EosParams& eos, int i, int j) {
    if (f.mode == Mode::swe) {
        const double h = f.q.at(0, i, j);
        return 0.5 * h * h;
    }
    const double rho = f.q.at(0, i, j);
    double m2 = 0.0;
    for (int d = 0; d < f.grid.dims; ++d) m2 += sqr(f.q.at(f.comp_m(d), i, j));
    const double eint = f.q.at(f.comp_E(), i, j) - 0.5 * m2 / rho;
    return f.eps * f.eps * (eos.gamma - 1.0) * eint;
}

inline double scaled_total_energy_density(const ConservedField& f, int i, int j) {
    if (f.mode == Mode::euler) return f.q.at(f.comp_E(), i, j);
    const double h = f.q.at(0, i, j);
    double m2 = 0.0;
    for (int d = 0; d < f.grid.dims; ++d) m2 += sqr(f.q.at(f.comp_m(d), i, j));
    return 0.5 * m2 / h + 0.5 * h * h / (f.eps * f.eps);
}

// ---------------------------------------------------------------------------
// Midpoint-rule volume integral of per-cell values; +-inf propagates.
// ---------------------------------------------------------------------------
template <typename CellFn>
inline double integrate(const Grid& grid, CellFn&& value) {
    KahanSum sum;
    for (int j = 0; j < grid.n[1]; ++j)
        for (int i = 0; i < grid.n[0]; ++i) sum.add(value(i, j));
    return sum.value() * grid.cell_volume();
}

inline double integrate(const Field& f, int comp) {
    return integrate(f.grid(), [&](int i, int j) { return f.at(comp, i, j); });
}

} // namespace stratlim

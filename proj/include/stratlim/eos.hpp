// eos.hpp -- ideal-gas thermodynamics on the phase space (rho, m, p):
// entropy with its singular-set conventions, the scaled relative energy
// E_eps(rho,m,p | r,u,Theta), the essential/residual cutoff about a static
// image, and the coercivity lower bound used as a diagnostic.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "core.hpp"

namespace stratlim {

// ---------------------------------------------------------------------------
// EosParams: gamma is derived from c_v (gamma = 1 + 1/c_v), never set freely.
// ---------------------------------------------------------------------------
struct EosParams {
    double c_v = 1.0;
    double gamma = 2.0;
    double s_bar = 0.0;

    static EosParams from_cv(double c_v, double s_bar = 0.0) {
        EosParams e;
        e.c_v = c_v;
        e.gamma = 1.0 + 1.0 / c_v;
        e.s_bar = s_bar;
        return e;
    }
    static EosParams from_gamma(double gamma, double s_bar = 0.0) {
        return from_cv(1.0 / (gamma - 1.0), s_bar);
    }
};

// A point of the phase space F = {rho >= 0, m in R^N, p >= 0}. The second
// momentum component is unused (0) in 1D setups.
struct PhasePoint {
    double rho = 0.0;
    std::array<double, 2> m{0.0, 0.0};
    double p = 0.0;

    double m_norm2() const { return m[0] * m[0] + m[1] * m[1]; }
};

// ---------------------------------------------------------------------------
// Equation of state and entropy, with the conventions on the singular set:
//
//   |m|^2/rho    = { |m|^2/rho  if rho > 0;  +inf if rho = 0, m != 0;  0 else }
//   rho s(rho,p) = { finite     if rho >= 0, p > 0 (0 log 0 := 0 at rho = 0);
//                    -inf       if rho > 0, p = 0;  0 otherwise }
// ---------------------------------------------------------------------------

// p(rho, s) = exp(s / c_v) rho^gamma
inline double pressure_from_entropy(double rho, double s, const EosParams& eos) {
    if (rho <= 0.0) return 0.0;
    return std::exp(s / eos.c_v) * std::pow(rho, eos.gamma);
}

// Specific entropy s(rho, p) = c_v log(p / rho^gamma), extended-real.
inline double entropy(double rho, double p, const EosParams& eos) {
    if (p > 0.0) return eos.c_v * std::log(p / std::pow(rho, eos.gamma)); // +inf at rho = 0
    if (rho > 0.0) return -kInf;
    return 0.0; // rho = 0, p = 0
}

// Total entropy S(rho, p) = rho s(rho, p) with the three-branch convention.
inline double total_entropy(double rho, double p, const EosParams& eos) {
    if (p > 0.0) {
        if (rho == 0.0) return 0.0; // continuous extension of 0 log(...)
        return rho * eos.c_v * std::log(p / std::pow(rho, eos.gamma));
    }
    if (rho > 0.0) return -kInf;
    return 0.0;
}

// |m|^2 / rho, extended-real.
inline double kinetic_energy(double rho, const std::array<double, 2>& m) {
    double m2 = m[0] * m[0] + m[1] * m[1];
    if (rho > 0.0) return m2 / rho;
    return (m2 == 0.0) ? 0.0 : kInf;
}

inline double kinetic_energy(const PhasePoint& pt) { return kinetic_energy(pt.rho, pt.m); }

// Thermodynamic closures in the standard state variables (r, Theta).
inline double std_internal_energy(double /*r*/, double Theta, const EosParams& eos) { return eos.c_v * Theta; }
inline double std_pressure(double r, double Theta, const EosParams&) { return r * Theta; }
inline double std_entropy(double r, double Theta, const EosParams& eos) {
    return eos.c_v * std::log(Theta) - std::log(r);
}

// ---------------------------------------------------------------------------
// Relative energy density
//
//   E_eps(rho,m,p | r,u~,Theta) = 1/2 |m|^2/rho + c_v p / eps^2
//       - (Theta/eps^2) S(rho,p) - m.u~ + 1/2 rho |u~|^2
//       + P(r,Theta)/eps^2 - (rho/eps^2)(E(r,Theta) - Theta S(r,Theta) + P/r)
//
// A Bregman distance: nonnegative, zero exactly at (r, r u~, r Theta).
// May return +inf (e.g. p = 0 with rho > 0, or vacuum with m != 0).
// ---------------------------------------------------------------------------
inline double relative_energy_density(const PhasePoint& pt, double r, const std::array<double, 2>& u_tilde,
                                      double Theta, double eps, const EosParams& eos) {
    const double inv_e2 = 1.0 / (eps * eps);
    const double kin = 0.5 * kinetic_energy(pt);
    if (std::isinf(kin)) return kInf;
    const double S = total_entropy(pt.rho, pt.p, eos);
    if (std::isinf(S)) return kInf; // S = -inf enters with -Theta/eps^2 < 0
    const double P_t = std_pressure(r, Theta, eos);
    const double S_t = std_entropy(r, Theta, eos);
    const double E_t = std_internal_energy(r, Theta, eos);
    const double u2 = u_tilde[0] * u_tilde[0] + u_tilde[1] * u_tilde[1];
    double val = kin - (pt.m[0] * u_tilde[0] + pt.m[1] * u_tilde[1]) + 0.5 * pt.rho * u2;
    val += inv_e2 * (eos.c_v * pt.p - Theta * S + P_t - pt.rho * (E_t - Theta * S_t + P_t / r));
    return val;
}

// ---------------------------------------------------------------------------
// Essential/residual cutoff Psi about the (rho, p) image K~ of a static state.
//
// Psi(rho, p) = eta(d) with d the Euclidean distance to K~ in log coordinates
// (so the support stays inside (0, inf)^2 automatically) and eta the standard
// C-infinity bump: 1 on [0, margin], 0 on [2 margin, inf).
// ---------------------------------------------------------------------------
class EssResCutoff {
  public:
    // image: per-point (rho~, p~) samples of the static profile.
    EssResCutoff(std::vector<std::array<double, 2>> image, double psi_margin = 0.25)
        : margin_(psi_margin) {
        if (margin_ <= 0.0) throw NonPositiveProfile("EssResCutoff: psi_margin must be > 0");
        log_image_.reserve(image.size());
        for (const auto& q : image) {
            if (!(q[0] > 0.0) || !(q[1] > 0.0))
                throw NonPositiveProfile("EssResCutoff: static image touches rho = 0 or p = 0");
            log_image_.push_back({std::log(q[0]), std::log(q[1])});
        }
        if (log_image_.empty()) throw NonPositiveProfile("EssResCutoff: empty static image");
    }

    double margin() const { return margin_; }

    // log-coordinate distance to K~ (+inf outside the open quadrant)
    double distance(double rho, double p) const {
        if (!(rho > 0.0) || !(p > 0.0)) return kInf;
        const double lr = std::log(rho), lp = std::log(p);
        double d2 = kInf;
        for (const auto& q : log_image_)
            d2 = std::min(d2, sqr(lr - q[0]) + sqr(lp - q[1]));
        return std::sqrt(d2);
    }

    double psi(double rho, double p) const {
        const double d = distance(rho, p);
        if (d <= margin_) return 1.0;
        if (d >= 2.0 * margin_) return 0.0;
        return 1.0 - smooth_step((d - margin_) / margin_);
    }

  private:
    // C-infinity transition: 0 at t <= 0, 1 at t >= 1.
    static double smooth_step(double t) {
        if (t <= 0.0) return 0.0;
        if (t >= 1.0) return 1.0;
        const double a = std::exp(-1.0 / t);
        const double b = std::exp(-1.0 / (1.0 - t));
        return a / (a + b);
    }

    double margin_;
    std::vector<std::array<double, 2>> log_image_;
};

struct EssResSplit {
    double psi_margin = 0.25;
    double essential_value = 0.0;
    double residual_value = 0.0;
};

// Splits value(pt) by the cutoff evaluated once at (rho, p). The residual
// part is value - essential so the two parts always reconstruct the input
// exactly, including extended-real values.
template <typename ValueFn>
inline EssResSplit ess_res_split(ValueFn&& value_fn, const PhasePoint& pt, const EssResCutoff& cutoff) {
    EssResSplit out;
    out.psi_margin = cutoff.margin();
    const double v = value_fn(pt);
    const double psi = cutoff.psi(pt.rho, pt.p);
    if (psi == 1.0) {
        out.essential_value = v;
        out.residual_value = 0.0;
    } else if (psi == 0.0) {
        out.essential_value = 0.0;
        out.residual_value = v;
    } else {
        out.essential_value = psi * v;
        out.residual_value = v - out.essential_value;
    }
    return out;
}

// ---------------------------------------------------------------------------
// Coercivity lower bound: the right-hand side of the estimate
//
//   E_eps(rho,m,p | rho~,u~,theta~) >~ [|m/rho - u~|^2]_ess + [|m|^2/rho]_res
//     + eps^-2 ( [|rho-rho~|^2 + |p-p~|^2]_ess + [1 + rho + rho|s| + p]_res )
//
// Diagnostic only; the hidden constant is calibrated empirically.
// ---------------------------------------------------------------------------
inline double coercivity_lower_bound(const PhasePoint& pt, double rho_tilde, double p_tilde,
                                     const std::array<double, 2>& u_tilde, double eps, const EosParams& eos,
                                     const EssResCutoff& cutoff) {
    const double psi = cutoff.psi(pt.rho, pt.p);
    const double inv_e2 = 1.0 / (eps * eps);
    double val = 0.0;
    if (psi > 0.0) { // essential terms; Psi > 0 implies rho > 0, p > 0
        const double du0 = pt.m[0] / pt.rho - u_tilde[0];
        const double du1 = pt.m[1] / pt.rho - u_tilde[1];
        val += psi * (du0 * du0 + du1 * du1);
        val += psi * inv_e2 * (sqr(pt.rho - rho_tilde) + sqr(pt.p - p_tilde));
    }
    const double res = 1.0 - psi;
    if (res > 0.0) {
        const double kin = kinetic_energy(pt);
        if (std::isinf(kin)) return kInf;
        val += res * kin;
        double rho_abs_s = 0.0;
        if (pt.rho > 0.0) {
            const double s = entropy(pt.rho, pt.p, eos);
            if (std::isinf(s)) return kInf;
            rho_abs_s = pt.rho * std::abs(s);
        }
        val += res * inv_e2 * (1.0 + pt.rho + rho_abs_s + pt.p);
    }
    return val;
}

} // namespace stratlim

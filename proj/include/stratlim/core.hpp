// core.hpp -- shared small utilities: error types, compensated sums,
// extended-real conventions used throughout the library.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace stratlim {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// ---------------------------------------------------------------------------
// Error types (names match the failure modes they report)
// ---------------------------------------------------------------------------

struct NonPositiveProfile : std::runtime_error {
    explicit NonPositiveProfile(const std::string& what) : std::runtime_error(what) {}
};

struct CFLViolation : std::runtime_error {
    explicit CFLViolation(const std::string& what) : std::runtime_error(what) {}
};

struct PositivityLoss : std::runtime_error {
    explicit PositivityLoss(const std::string& what) : std::runtime_error(what) {}
};

struct SolverDiverged : std::runtime_error {
    explicit SolverDiverged(const std::string& what) : std::runtime_error(what) {}
};

struct InequalityViolated : std::runtime_error {
    InequalityViolated(const std::string& what, double tau) : std::runtime_error(what), worst_tau(tau) {}
    double worst_tau = 0.0;
};

struct HypothesisViolated : std::runtime_error {
    explicit HypothesisViolated(const std::string& what) : std::runtime_error(what) {}
};

struct InsufficientData : std::runtime_error {
    explicit InsufficientData(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Compensated (Kahan) summation. Cell sums feed 1e-12-level conservation
// checks, so plain accumulation is not good enough on 128^2 grids.
// Infinities propagate; mixing +inf and -inf yields NaN as usual.
// ---------------------------------------------------------------------------

class KahanSum {
  public:
    void add(double x) {
        if (std::isinf(x)) {
            if (x > 0) ++pos_inf_;
            else ++neg_inf_;
            return;
        }
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const {
        if (pos_inf_ && neg_inf_) return std::numeric_limits<double>::quiet_NaN();
        if (pos_inf_) return kInf;
        if (neg_inf_) return -kInf;
        return s_;
    }

  private:
    double s_ = 0.0, c_ = 0.0;
    std::int64_t pos_inf_ = 0, neg_inf_ = 0;
};

// ---------------------------------------------------------------------------
// Deterministic RNG wrapper: splitmix64-seeded xoshiro-free fallback on
// std::mt19937_64 keeps results identical across platforms we care about.
// ---------------------------------------------------------------------------

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }
    // uniform in [0, 1)
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    double log_uniform(double lo, double hi) { return std::exp(uniform(std::log(lo), std::log(hi))); }

  private:
    std::uint64_t state_;
};

inline double sqr(double x) { return x * x; }

} // namespace stratlim

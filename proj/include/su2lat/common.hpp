#pragma once

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace su2lat {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown when inputs violate a documented precondition (bad flag values,
/// out-of-range quantum numbers, dimension mismatches). CLI exit code 1.
struct ValidationError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown when a computation fails numerically (ill-conditioned Gram matrix,
/// excessive leakage, degenerate eigenvalue grouping). CLI exit code 2.
struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Compensated (Kahan) accumulator. Used for norms and interval sums so that
/// results do not depend on how the surrounding loop is blocked.
class KahanSum {
  public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

  private:
    double s_ = 0.0;
    double c_ = 0.0;
};

inline double norm_squared(const std::vector<cplx> &amps) {
    KahanSum acc;
    for (const cplx &a : amps)
        acc.add(std::norm(a));
    return acc.value();
}

inline bool is_power_of_two(long long v) { return v > 0 && (v & (v - 1)) == 0; }

inline int log2_exact(long long v) {
    if (!is_power_of_two(v))
        throw ValidationError("log2_exact: " + std::to_string(v) + " is not a power of two");
    int b = 0;
    while ((1LL << b) < v)
        ++b;
    return b;
}

} // namespace su2lat

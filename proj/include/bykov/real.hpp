#pragma once

#include <cmath>
#include <limits>

namespace bykov {

/// Working precision for hitting times and log-coordinates.
///
/// Times grow like delta^i, so the convergent combinations of consecutive
/// times (differences of O(1) size between quantities of size ~1e7 at i = 10)
/// need about 19 significant digits. The x87 extended format provides them.
using Real = long double;

static_assert(std::numeric_limits<Real>::digits >= 64,
              "bykov requires an extended-precision long double (>= 64-bit mantissa)");

inline constexpr Real kPi = 3.141592653589793238462643383279502884L;
inline constexpr Real kTwoPi = 2 * kPi;
inline constexpr Real kEpsilon = std::numeric_limits<Real>::epsilon();

/// Angle reduced into [0, 2*pi).
inline Real reduce_angle(Real theta) {
    Real r = std::fmod(theta, kTwoPi);
    if (r < 0) r += kTwoPi;
    // fmod of a tiny negative value can round up to exactly 2*pi
    if (r >= kTwoPi) r = 0;
    return r;
}

/// Neumaier compensated sum.
class CompensatedSum {
public:
    void add(Real x) {
        const Real t = sum_ + x;
        if (std::fabs(sum_) >= std::fabs(x))
            carry_ += (sum_ - t) + x;
        else
            carry_ += (x - t) + sum_;
        sum_ = t;
    }
    Real value() const { return sum_ + carry_; }

private:
    Real sum_ = 0;
    Real carry_ = 0;
};

} // namespace bykov

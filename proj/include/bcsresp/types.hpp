#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>

namespace bcsresp {

using cplx = std::complex<double>;
using Vec3 = std::array<double, 3>;
using Vec4c = std::array<cplx, 4>;
using Mat4c = std::array<std::array<cplx, 4>, 4>;

inline constexpr double PI = 3.14159265358979323846;

// numerical failures are exceptions; physical outcomes (collective-mode pole,
// normal state) are encoded in return types instead
struct NumericsError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NonConvergedQuadrature : NumericsError {
    using NumericsError::NumericsError;
};
struct SingularIntegrand : NumericsError {
    using NumericsError::NumericsError;
};
struct PoleProximity : NumericsError {
    using NumericsError::NumericsError;
};
struct PolePinching : NumericsError {
    using NumericsError::NumericsError;
};
struct NoRootBelowContinuum : NumericsError {
    using NumericsError::NumericsError;
};
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline double norm3(const Vec3& v) {
    return std::sqrt(v[0]*v[0] + v[1]*v[1] + v[2]*v[2]);
}
inline double dot3(const Vec3& a, const Vec3& b) {
    return a[0]*b[0] + a[1]*b[1] + a[2]*b[2];
}
inline Vec3 add3(const Vec3& a, const Vec3& b) {
    return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

}  // namespace bcsresp

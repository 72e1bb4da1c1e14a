#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cpv {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cplx iu{0.0, 1.0};

// positive remainder
inline int mod(int a, int n) {
    int r = a % n;
    return r < 0 ? r + n : r;
}

struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CurveViolation : std::runtime_error {
    double curve_residual;
    double mu_residual;
    CurveViolation(const std::string& msg, double rc, double rm)
        : std::runtime_error(msg), curve_residual(rc), mu_residual(rm) {}
};

struct SingularWeight : std::runtime_error {
    int ell;  // offending root-of-unity index
    SingularWeight(const std::string& msg, int l) : std::runtime_error(msg), ell(l) {}
};

struct FactorizationMismatch : std::runtime_error {
    int a, b, c, d;  // worst component
    FactorizationMismatch(const std::string& msg, int a_, int b_, int c_, int d_)
        : std::runtime_error(msg), a(a_), b(b_), c(c_), d(d_) {}
};

struct DegeneratePartition : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace cpv

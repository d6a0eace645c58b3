#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace qencode {

using cplx = std::complex<double>;

/// Dense 2x2 complex matrix, row-major. Small enough to pass by value.
struct Mat2 {
    cplx m00{1.0}, m01{0.0}, m10{0.0}, m11{1.0};

    static Mat2 identity() { return {}; }

    friend Mat2 operator*(const Mat2& a, const Mat2& b) {
        return {a.m00 * b.m00 + a.m01 * b.m10, a.m00 * b.m01 + a.m01 * b.m11,
                a.m10 * b.m00 + a.m11 * b.m10, a.m10 * b.m01 + a.m11 * b.m11};
    }

    Mat2 adjoint() const {
        return {std::conj(m00), std::conj(m10), std::conj(m01), std::conj(m11)};
    }
};

/// Angles of the standard U3 gate plus a residual global phase so that
/// U = e^{i phase} * U3(theta, phi, lambda).
struct ZyzAngles {
    double theta = 0.0;
    double phi = 0.0;
    double lambda = 0.0;
    double phase = 0.0;
};

inline Mat2 mat_u3(double theta, double phi, double lambda) {
    const double ct = std::cos(theta / 2.0), st = std::sin(theta / 2.0);
    const cplx ei_phi = std::polar(1.0, phi);
    const cplx ei_lam = std::polar(1.0, lambda);
    return {cplx(ct), -ei_lam * st, ei_phi * st, ei_phi * ei_lam * ct};
}

inline Mat2 mat_ry(double theta) {
    const double c = std::cos(theta / 2.0), s = std::sin(theta / 2.0);
    return {cplx(c), cplx(-s), cplx(s), cplx(c)};
}

inline Mat2 mat_rz(double theta) {
    return {std::polar(1.0, -theta / 2.0), 0.0, 0.0, std::polar(1.0, theta / 2.0)};
}

inline Mat2 mat_phase(double lambda) {
    return {1.0, 0.0, 0.0, std::polar(1.0, lambda)};
}

inline Mat2 mat_x() { return {0.0, 1.0, 1.0, 0.0}; }

inline Mat2 mat_h() {
    const double s = 1.0 / std::sqrt(2.0);
    return {cplx(s), cplx(s), cplx(s), cplx(-s)};
}

/// Deterministic ZYZ extraction with branch cuts in (-pi, pi].
inline ZyzAngles zyz_decompose(const Mat2& u) {
    ZyzAngles out;
    const double a = std::abs(u.m00);
    const double b = std::abs(u.m10);
    out.theta = 2.0 * std::atan2(b, a);

    // U = e^{i phase} [[cos e^{0}, -sin e^{i lambda}], [sin e^{i phi}, cos e^{i(phi+lambda)}]]
    // Recover phases from whichever entries are numerically alive.
    double arg00 = (a > 1e-14) ? std::arg(u.m00) : 0.0;
    double phi_plus = 0.0, phi_minus = 0.0;  // phi+lambda sums from the two columns
    if (b > 1e-14 && a > 1e-14) {
        phi_plus = std::arg(u.m10) - arg00;              // phi
        phi_minus = std::arg(-u.m01) - arg00;            // lambda
    } else if (b <= 1e-14) {
        // theta == 0: diagonal; put the relative phase on lambda.
        phi_minus = std::arg(u.m11) - arg00;
    } else if (a <= 1e-14) {
        // theta == pi: only off-diagonal entries defined; split phase evenly.
        phi_plus = std::arg(u.m10);
        phi_minus = std::arg(-u.m01);
        arg00 = 0.0;
    }
    out.phi = phi_plus;
    out.lambda = phi_minus;
    out.phase = arg00;

    auto wrap = [](double x) {
        x = std::fmod(x, 2.0 * M_PI);
        if (x > M_PI) x -= 2.0 * M_PI;
        if (x <= -M_PI) x += 2.0 * M_PI;
        return x;
    };
    out.phi = wrap(out.phi);
    out.lambda = wrap(out.lambda);
    out.phase = wrap(out.phase);
    return out;
}

/// Max elementwise deviation from e^{i phi} I with the best phi.
inline double distance_to_identity_phase(const Mat2& u) {
    const cplx tr = u.m00 + u.m11;
    cplx ph = (std::abs(tr) > 1e-14) ? tr / std::abs(tr) : cplx(1.0);
    double d = 0.0;
    d = std::max(d, std::abs(u.m00 - ph));
    d = std::max(d, std::abs(u.m11 - ph));
    d = std::max(d, std::abs(u.m01));
    d = std::max(d, std::abs(u.m10));
    return d;
}

inline bool is_identity_up_to_phase(const Mat2& u, double tol = 1e-12) {
    return distance_to_identity_phase(u) <= tol;
}

inline bool is_diagonal(const Mat2& u, double tol = 1e-12) {
    return std::abs(u.m01) <= tol && std::abs(u.m10) <= tol;
}

/// True when u = a I + b X, i.e. u commutes with X (so with a CX target).
inline bool commutes_with_x(const Mat2& u, double tol = 1e-12) {
    return std::abs(u.m00 - u.m11) <= tol && std::abs(u.m01 - u.m10) <= tol;
}

}  // namespace qencode

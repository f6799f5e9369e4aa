// functions.hpp — Laguerre polynomials and Fock matrix elements of the
// displacement operator D(alpha) = exp(alpha a^dag - alpha* a).

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace cqed {

// L_n(x) by the three-term recurrence.
inline double laguerre(int n, double x) {
    if (n < 0) throw std::invalid_argument("laguerre: n must be >= 0");
    if (n == 0) return 1.0;
    double lm = 1.0, l = 1.0 - x;
    for (int k = 1; k < n; ++k) {
        double ln = ((2.0 * k + 1.0 - x) * l - k * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

// Associated L_n^(a)(x), integer a >= 0.
inline double assoc_laguerre(int n, int a, double x) {
    if (n < 0 || a < 0) throw std::invalid_argument("assoc_laguerre: bad order");
    if (n == 0) return 1.0;
    double lm = 1.0, l = 1.0 + a - x;
    for (int k = 1; k < n; ++k) {
        double ln = ((2.0 * k + 1.0 + a - x) * l - (k + a) * lm) / (k + 1.0);
        lm = l;
        l = ln;
    }
    return l;
}

// <q|D(alpha)|n> in closed form:
//   q >= n: sqrt(n!/q!) alpha^(q-n) e^{-|a|^2/2} L_n^(q-n)(|a|^2)
//   q <  n: sqrt(q!/n!) (-conj(alpha))^(n-q) e^{-|a|^2/2} L_q^(n-q)(|a|^2)
// The factorial ratio and |alpha| powers are combined in log space.
inline std::complex<double> displacement_element(int q, int n, std::complex<double> alpha) {
    if (q < 0 || n < 0) throw std::invalid_argument("displacement_element: negative index");
    const double a2 = std::norm(alpha);
    const int lo = std::min(q, n), hi = std::max(q, n), d = hi - lo;
    // log of sqrt(lo!/hi!) |alpha|^d
    double lg = 0.5 * (std::lgamma(lo + 1.0) - std::lgamma(hi + 1.0));
    const double aa = std::abs(alpha);
    if (d > 0) {
        if (aa == 0.0) return (q == n) ? std::exp(-0.5 * a2) : 0.0;
        lg += d * std::log(aa);
    }
    const double L = assoc_laguerre(lo, d, a2);
    const double mag = std::exp(lg - 0.5 * a2) * std::abs(L);
    std::complex<double> phase(1.0, 0.0);
    if (d > 0) {
        const std::complex<double> u = (q >= n) ? alpha / aa : -std::conj(alpha) / aa;
        phase = std::pow(u, d);
    }
    return (L < 0 ? -mag : mag) * phase;
}

// Table of <q|D(alpha)|n> for q = 0..qmax, n = 0..nmax via the stable
// raising recursion <q|D|n+1> = (sqrt(q) <q-1|D|n> - conj(alpha) <q|D|n>)/sqrt(n+1).
// All entries have modulus <= 1, so the recursion never overflows.
inline Eigen::MatrixXcd displacement_table(std::complex<double> alpha, int qmax, int nmax) {
    Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(qmax + 1, nmax + 1);
    T(0, 0) = std::exp(-0.5 * std::norm(alpha));
    for (int q = 1; q <= qmax; ++q) T(q, 0) = T(q - 1, 0) * alpha / std::sqrt(double(q));
    for (int n = 0; n < nmax; ++n)
        for (int q = 0; q <= qmax; ++q) {
            std::complex<double> v = -std::conj(alpha) * T(q, n);
            if (q >= 1) v += std::sqrt(double(q)) * T(q - 1, n);
            T(q, n + 1) = v / std::sqrt(double(n + 1));
        }
    return T;
}

// <q|cos(2 lambda (a+a^dag))|n> and <q|sin(...)|n>, from e^{2 i lam X} = D(2 i lam).
// Both are real; cos vanishes for odd q-n, sin for even q-n.
struct CosSinElements {
    Eigen::MatrixXd cos_el, sin_el;
};

inline CosSinElements cos_sin_elements(double lambda, int qmax, int nmax) {
    const Eigen::MatrixXcd P = displacement_table({0.0, 2.0 * lambda}, qmax, nmax);
    const Eigen::MatrixXcd M = displacement_table({0.0, -2.0 * lambda}, qmax, nmax);
    CosSinElements r;
    r.cos_el = (0.5 * (P + M)).real();
    r.sin_el = (0.5 * (P - M)).imag(); // (P-M)/(2i), P-M purely imaginary
    return r;
}

} // namespace cqed

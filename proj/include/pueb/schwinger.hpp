#pragma once

#include <Eigen/Dense>
#include <complex>

#include "pueb/finite_field.hpp"

namespace pueb {

using Cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Reduce v into [0, m).
int mod_into(long long v, int m);

/// omega^k for omega = e^{2*pi*i/order}, computed from the reduced exponent
/// so no phase error accumulates across powers.
Cplx omega_power(int order, long long k);

/// Shift operator, X|n> = |n+1 mod d>.
Matrix build_x(int d);
/// Clock operator, Z|n> = omega^n |n>.
Matrix build_z(int d);

/// Exponent pair (m, l) of the monomial X^m Z^l, reduced mod d.
struct MonomialLabel {
    int m = 0;
    int l = 0;
};

/// X^m Z^l. Entry ((n+m) mod d, n) = omega^{l n}.
Matrix monomial(int d, MonomialLabel lab);

/// Hilbert-Schmidt inner product Tr[A B^dagger].
Cplx hs_inner(const Matrix& a, const Matrix& b);

/// Phase-canonical form of X^m Z^l for m != 0:
///   X^m Z^l = omega^nu (X Z^b)^m,  b = l/m,  nu = -(b/2) m (m-1),
/// all exponent arithmetic in the prime field GF(d).
struct CanonicalMonomial {
    int b = 0;
    int m = 1;
    int nu = 0;
};

/// Requires a prime field (n = 1) and lab.m != 0 mod d; the Z-only family
/// has no canonical form of this shape.
CanonicalMonomial canonical_form(const Field& f, MonomialLabel lab);

/// omega^nu (X Z^b)^m assembled by explicit matrix products.
Matrix canonical_matrix(int d, CanonicalMonomial cm);

/// M^k by repeated multiplication, k >= 0.
Matrix matrix_power(const Matrix& m, int k);

/// Kronecker product, row-major mu x nu convention: index n*d_nu + k
/// holds |n>_mu |k>_nu.
Matrix kron(const Matrix& a, const Matrix& b);
Vector kron(const Vector& a, const Vector& b);

}  // namespace pueb

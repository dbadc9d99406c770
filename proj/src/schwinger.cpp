#include "pueb/schwinger.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pueb {

int mod_into(long long v, int m) {
    long long r = v % m;
    return static_cast<int>(r < 0 ? r + m : r);
}

Cplx omega_power(int order, long long k) {
    const int r = mod_into(k, order);
    if (r == 0) return {1.0, 0.0};
    const double angle = 2.0 * std::numbers::pi * r / order;
    return {std::cos(angle), std::sin(angle)};
}

Matrix build_x(int d) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    Matrix x = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) x((n + 1) % d, n) = 1.0;
    return x;
}

Matrix build_z(int d) {
    if (d < 2) throw std::invalid_argument("dimension must be >= 2");
    Matrix z = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n) z(n, n) = omega_power(d, n);
    return z;
}

Matrix monomial(int d, MonomialLabel lab) {
    const int m = mod_into(lab.m, d);
    const int l = mod_into(lab.l, d);
    Matrix out = Matrix::Zero(d, d);
    for (int n = 0; n < d; ++n)
        out((n + m) % d, n) = omega_power(d, static_cast<long long>(l) * n);
    return out;
}

Cplx hs_inner(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw std::invalid_argument("hs_inner: dimension mismatch");
    // Tr[A B^dagger] = sum_ij A_ij conj(B_ij)
    return a.cwiseProduct(b.conjugate()).sum();
}

CanonicalMonomial canonical_form(const Field& f, MonomialLabel lab) {
    if (f.n() != 1)
        throw std::invalid_argument(
            "canonical_form is defined for prime dimensions only");
    const FieldElement m = f.from_int(lab.m);
    const FieldElement l = f.from_int(lab.l);
    if (m.is_zero())
        throw std::invalid_argument("canonical_form requires m != 0 (mod d)");
    const FieldElement b = l * m.inv();
    const FieldElement m_minus_1 = m - f.one();
    const FieldElement nu = -(f.half() * b * m * m_minus_1);
    return {b.index(), m.index(), nu.index()};
}

Matrix canonical_matrix(int d, CanonicalMonomial cm) {
    const Matrix xzb = monomial(d, {1, cm.b});
    return omega_power(d, cm.nu) * matrix_power(xzb, cm.m);
}

Matrix matrix_power(const Matrix& m, int k) {
    if (k < 0) throw std::invalid_argument("matrix_power: negative exponent");
    Matrix out = Matrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

Vector kron(const Vector& a, const Vector& b) {
    Vector out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i)
        out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

}  // namespace pueb

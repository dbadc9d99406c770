#include <doctest.h>

#include <stdexcept>

#include "pueb/schwinger.hpp"

using namespace pueb;

namespace {

// Independent oracle: X^m Z^l by iterated multiplication of the raw
// generator matrices, no closed-form entries.
Matrix monomial_by_products(int d, int m, int l) {
    return matrix_power(build_x(d), m) * matrix_power(build_z(d), l);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace

TEST_CASE("omega uses the +2 pi i / d convention") {
    const Cplx w = omega_power(3, 1);
    CHECK(w.real() == doctest::Approx(-0.5).epsilon(1e-15));
    CHECK(w.imag() == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-15));
    CHECK(std::abs(omega_power(5, 7) - omega_power(5, 2)) < 1e-15);
    CHECK(std::abs(omega_power(5, -1) - omega_power(5, 4)) < 1e-15);
}

TEST_CASE("clock and shift matrices at d = 3") {
    const Matrix z = build_z(3);
    CHECK(std::abs(z(0, 0) - Cplx(1, 0)) < 1e-15);
    CHECK(std::abs(z(1, 1) - omega_power(3, 1)) < 1e-15);
    CHECK(std::abs(z(2, 2) - omega_power(3, 2)) < 1e-15);
    const Matrix x = build_x(3);
    CHECK(std::abs(x(0, 2) - Cplx(1, 0)) < 1e-15);  // wraparound |2> -> |0>
    CHECK(std::abs(x(1, 0) - Cplx(1, 0)) < 1e-15);
    CHECK_THROWS_AS(build_x(1), std::invalid_argument);
    CHECK_THROWS_AS(build_z(0), std::invalid_argument);
}

TEST_CASE("ZX = omega XZ and X^d = Z^d = I") {
    for (int d : {3, 5, 7, 9}) {
        const Matrix x = build_x(d), z = build_z(d);
        CHECK(max_abs_diff(z * x, omega_power(d, 1) * x * z) < 1e-12);
        CHECK(max_abs_diff(matrix_power(x, d), Matrix::Identity(d, d)) < 1e-12);
        CHECK(max_abs_diff(matrix_power(z, d), Matrix::Identity(d, d)) < 1e-12);
    }
}

TEST_CASE("monomials match the product oracle") {
    CHECK(max_abs_diff(monomial(3, {0, 0}), Matrix::Identity(3, 3)) == 0.0);
    CHECK(max_abs_diff(monomial(3, {1, 0}), build_x(3)) == 0.0);
    for (int d : {3, 5})
        for (int m = 0; m < d; ++m)
            for (int l = 0; l < d; ++l)
                CHECK(max_abs_diff(monomial(d, {m, l}), monomial_by_products(d, m, l)) <
                      1e-13);
}

TEST_CASE("Hilbert-Schmidt geometry of the monomial basis") {
    const Matrix x = build_x(3), z = build_z(3);
    CHECK(std::abs(hs_inner(x, x) - 3.0) < 1e-13);
    CHECK(std::abs(hs_inner(x, z)) < 1e-13);
    CHECK(std::abs(hs_inner(monomial(3, {2, 1}), monomial(3, {2, 1})) - 3.0) < 1e-13);
    CHECK_THROWS_AS(hs_inner(build_x(3), build_x(5)), std::invalid_argument);

    // d^2 monomials pairwise orthogonal with squared norm d, exhaustive d <= 9.
    for (int d : {3, 5, 7, 9}) {
        for (int m = 0; m < d; ++m)
            for (int l = 0; l < d; ++l)
                for (int m2 = 0; m2 < d; ++m2)
                    for (int l2 = 0; l2 < d; ++l2) {
                        const Cplx inner =
                            hs_inner(monomial(d, {m, l}), monomial(d, {m2, l2}));
                        const double expected = (m == m2 && l == l2) ? d : 0.0;
                        CHECK(std::abs(inner - expected) < 1e-11);
                    }
    }
}

TEST_CASE("canonical form of X^m Z^l") {
    const Field gf3 = Field::make(3);
    SUBCASE("m = 1 gives b = l, nu = 0") {
        for (int l = 0; l < 3; ++l) {
            const CanonicalMonomial cm = canonical_form(gf3, {1, l});
            CHECK(cm.b == l);
            CHECK(cm.m == 1);
            CHECK(cm.nu == 0);
        }
    }
    SUBCASE("d=3, (m,l) = (2,1): b = 2, nu = 1") {
        const CanonicalMonomial cm = canonical_form(gf3, {2, 1});
        CHECK(cm.b == 2);
        CHECK(cm.nu == 1);
        CHECK(max_abs_diff(canonical_matrix(3, cm), monomial_by_products(3, 2, 1)) < 1e-13);
    }
    SUBCASE("d=5, (m,l) = (3,2): b = 4, nu = 3") {
        const Field gf5 = Field::make(5);
        const CanonicalMonomial cm = canonical_form(gf5, {3, 2});
        CHECK(cm.b == 4);
        CHECK(cm.nu == 3);
        CHECK(max_abs_diff(canonical_matrix(5, cm), monomial_by_products(5, 3, 2)) < 1e-13);
    }
    SUBCASE("m = 0 is rejected; extension fields are rejected") {
        CHECK_THROWS_AS(canonical_form(gf3, {0, 1}), std::invalid_argument);
        CHECK_THROWS_AS(canonical_form(gf3, {3, 1}), std::invalid_argument);  // 3 = 0 mod 3
        CHECK_THROWS_AS(canonical_form(Field::make(3, 2), {1, 1}), std::invalid_argument);
    }
}

TEST_CASE("canonical form round-trips against the matrix oracle, exhaustive") {
    for (int d : {3, 5, 7}) {
        const Field f = Field::make(d);
        for (int m = 1; m < d; ++m)
            for (int l = 0; l < d; ++l) {
                const CanonicalMonomial cm = canonical_form(f, {m, l});
                CHECK(max_abs_diff(canonical_matrix(d, cm),
                                   monomial_by_products(d, m, l)) < 1e-12);
            }
    }
}

TEST_CASE("kron follows the row-major mu x nu convention") {
    Vector a(2), b(3);
    a << Cplx(1, 0), Cplx(0, 1);
    b << Cplx(1, 0), Cplx(2, 0), Cplx(3, 0);
    const Vector k = kron(a, b);
    REQUIRE(k.size() == 6);
    CHECK(std::abs(k(1) - Cplx(2, 0)) < 1e-15);  // index 0*3+1
    CHECK(std::abs(k(5) - Cplx(0, 3)) < 1e-15);  // index 1*3+2
    const Matrix km = kron(build_z(2), build_x(2));
    CHECK(max_abs_diff(km * km.adjoint(), Matrix::Identity(4, 4)) < 1e-14);
}

#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace pueb {

class FieldElement;

/// Galois field GF(p^n) for odd prime p. Elements are polynomials over
/// GF(p) reduced modulo a fixed monic irreducible polynomial of degree n.
///
/// The modulus is part of the field's identity: two Field values
/// interoperate iff p, n and the modulus coincide. For the supported
/// extension degrees the modulus is hard-coded (see kBuiltinModuli in the
/// implementation) so every downstream state vector is a reproducible
/// constant.
///
/// Elements are enumerated lexicographically on their coordinate vector
/// with the constant term varying fastest: index = sum_i coeffs[i] * p^i.
/// This order defines the computational-basis index n used by the state
/// constructors.
class Field {
public:
    /// GF(p^n) with a built-in modulus. Supported extensions: (3,2), (3,3),
    /// (5,2), (7,2). Throws std::invalid_argument for even/composite p or
    /// an unsupported (p, n) pair.
    static Field make(int p, int n = 1);

    /// GF(p^n) with a caller-supplied monic modulus, constant term first,
    /// length n+1. The polynomial is checked for irreducibility.
    static Field make(int p, int n, std::vector<int> modulus);

    int p() const { return data_->p; }
    int n() const { return data_->n; }
    int d() const { return data_->d; }  // cardinality p^n
    const std::vector<int>& modulus() const { return data_->modulus; }

    FieldElement zero() const;
    FieldElement one() const;
    /// The element solving 2x = 1 (exists since p is odd).
    FieldElement half() const;
    /// Element with the given enumeration index in [0, d).
    FieldElement element(int index) const;
    /// Element from explicit coordinates (each reduced mod p), length n.
    FieldElement from_coeffs(std::vector<int> coeffs) const;
    /// Prime-subfield embedding of the integer v (reduced mod p).
    FieldElement from_int(long long v) const;

    bool operator==(const Field& other) const;
    bool operator!=(const Field& other) const { return !(*this == other); }

    std::string to_string() const;  // e.g. "GF(3^2), modulus x^2+1"

private:
    struct Data {
        int p, n, d;
        std::vector<int> modulus;  // monic, length n+1, constant term first
    };
    explicit Field(std::shared_ptr<const Data> data) : data_(std::move(data)) {}
    std::shared_ptr<const Data> data_;
};

/// Element of GF(p^n): polynomial-basis coordinates in [0, p), constant
/// term first. Immutable value type; all arithmetic is pure.
class FieldElement {
public:
    FieldElement(Field field, std::vector<int> coeffs);

    const Field& field() const { return field_; }
    const std::vector<int>& coeffs() const { return coeffs_; }
    /// Enumeration index sum_i coeffs[i] * p^i.
    int index() const;
    bool is_zero() const;

    FieldElement operator+(const FieldElement& rhs) const;
    FieldElement operator-(const FieldElement& rhs) const;
    FieldElement operator*(const FieldElement& rhs) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& rhs) const;
    bool operator!=(const FieldElement& rhs) const { return !(*this == rhs); }

    /// Multiplicative inverse; throws std::domain_error on zero.
    FieldElement inv() const;
    FieldElement pow(long long e) const;  // e >= 0

private:
    void require_same_field(const FieldElement& other) const;
    Field field_;
    std::vector<int> coeffs_;
};

/// Field trace tr[a] = a + a^p + ... + a^(p^(n-1)), an element of the prime
/// subfield returned as an integer in [0, p).
int field_trace(const FieldElement& a);

}  // namespace pueb

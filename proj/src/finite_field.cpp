#include "pueb/finite_field.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>

namespace pueb {

namespace {

bool is_odd_prime(int p) {
    if (p < 3 || p % 2 == 0) return false;
    for (int q = 3; q * q <= p; q += 2)
        if (p % q == 0) return false;
    return true;
}

int mod_p(long long v, int p) {
    long long r = v % p;
    return static_cast<int>(r < 0 ? r + p : r);
}

// Polynomials over GF(p) as coefficient vectors, constant term first.
using Poly = std::vector<int>;

Poly trim(Poly f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
    return f;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly out(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            out[i + j] = mod_p(out[i + j] + static_cast<long long>(a[i]) * b[j], p);
    return trim(out);
}

int int_inv_mod(int a, int p) {
    // p prime, a != 0 mod p. Fermat.
    long long r = 1, base = mod_p(a, p);
    int e = p - 2;
    while (e > 0) {
        if (e & 1) r = r * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return static_cast<int>(r);
}

Poly poly_mod(Poly a, const Poly& f, int p) {
    a = trim(std::move(a));
    const int deg_f = static_cast<int>(f.size()) - 1;
    const int lead_inv = int_inv_mod(f.back(), p);
    while (static_cast<int>(a.size()) - 1 >= deg_f) {
        int shift = static_cast<int>(a.size()) - 1 - deg_f;
        int factor = mod_p(static_cast<long long>(a.back()) * lead_inv, p);
        for (int i = 0; i <= deg_f; ++i)
            a[shift + i] = mod_p(a[shift + i] - static_cast<long long>(factor) * f[i], p);
        a = trim(std::move(a));
    }
    return a;
}

Poly poly_sub(const Poly& a, const Poly& b, int p) {
    Poly out(std::max(a.size(), b.size()), 0);
    for (size_t i = 0; i < out.size(); ++i) {
        int av = i < a.size() ? a[i] : 0;
        int bv = i < b.size() ? b[i] : 0;
        out[i] = mod_p(av - bv, p);
    }
    return trim(out);
}

Poly poly_gcd(Poly a, Poly b, int p) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (!b.empty()) {
        Poly r = poly_mod(a, b, p);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

// x^e mod f over GF(p), e >= 0 by square-and-multiply on polynomials.
Poly x_pow_mod(long long e, const Poly& f, int p) {
    Poly result{1};
    Poly base{0, 1};  // x
    base = poly_mod(base, f, p);
    while (e > 0) {
        if (e & 1) result = poly_mod(poly_mul(result, base, p), f, p);
        base = poly_mod(poly_mul(base, base, p), f, p);
        e >>= 1;
    }
    return result;
}

// Rabin test: f (monic, degree n) is irreducible over GF(p) iff
// x^(p^n) == x mod f and gcd(x^(p^(n/q)) - x, f) = 1 for every prime q | n.
bool is_irreducible(const Poly& f, int p) {
    const int n = static_cast<int>(f.size()) - 1;
    if (n < 1) return false;
    long long pn = 1;
    for (int i = 0; i < n; ++i) pn *= p;
    const Poly x{0, 1};
    if (!poly_sub(x_pow_mod(pn, f, p), x, p).empty()) return false;
    int rem = n;
    for (int q = 2; q <= rem; ++q) {
        if (rem % q != 0) continue;
        while (rem % q == 0) rem /= q;
        long long e = 1;
        for (int i = 0; i < n / q; ++i) e *= p;
        Poly g = poly_gcd(poly_sub(x_pow_mod(e, f, p), x, p), f, p);
        if (static_cast<int>(g.size()) - 1 != 0) return false;
    }
    return true;
}

// Fixed moduli per (p, n): constant term first, monic.
//   GF(9):  x^2 + 1        (irreducible: -1 is a non-residue mod 3)
//   GF(27): x^3 + 2x + 1
//   GF(25): x^2 + 2        (-2 = 3 is a non-residue mod 5)
//   GF(49): x^2 + 1        (-1 = 6 is a non-residue mod 7)
const std::map<std::pair<int, int>, Poly> kBuiltinModuli = {
    {{3, 2}, {1, 0, 1}},
    {{3, 3}, {1, 2, 0, 1}},
    {{5, 2}, {2, 0, 1}},
    {{7, 2}, {1, 0, 1}},
};

}  // namespace

Field Field::make(int p, int n) {
    if (n == 1) return make(p, 1, {0, 1});  // modulus x: ignored for prime fields
    auto it = kBuiltinModuli.find({p, n});
    if (it == kBuiltinModuli.end()) {
        std::ostringstream msg;
        msg << "no built-in modulus for GF(" << p << "^" << n
            << "); supply an irreducible polynomial explicitly";
        throw std::invalid_argument(msg.str());
    }
    return make(p, n, it->second);
}

Field Field::make(int p, int n, std::vector<int> modulus) {
    if (!is_odd_prime(p))
        throw std::invalid_argument("field characteristic must be an odd prime, got " +
                                    std::to_string(p));
    if (n < 1) throw std::invalid_argument("extension degree must be >= 1");
    long long d = 1;
    for (int i = 0; i < n; ++i) {
        d *= p;
        if (d > 100000) throw std::invalid_argument("field cardinality too large");
    }
    if (n == 1) {
        modulus = {0, 1};  // conventional placeholder, never used in reduction
    } else {
        if (static_cast<int>(modulus.size()) != n + 1)
            throw std::invalid_argument("modulus must have degree n (n+1 coefficients)");
        for (int& c : modulus) c = mod_p(c, p);
        if (modulus.back() != 1)
            throw std::invalid_argument("modulus must be monic");
        if (!is_irreducible(modulus, p))
            throw std::invalid_argument("modulus polynomial is reducible over GF(" +
                                        std::to_string(p) + ")");
    }
    auto data = std::make_shared<Data>();
    data->p = p;
    data->n = n;
    data->d = static_cast<int>(d);
    data->modulus = std::move(modulus);
    return Field(std::move(data));
}

bool Field::operator==(const Field& other) const {
    return data_->p == other.data_->p && data_->n == other.data_->n &&
           data_->modulus == other.data_->modulus;
}

FieldElement Field::zero() const { return from_int(0); }
FieldElement Field::one() const { return from_int(1); }

FieldElement Field::half() const {
    // 2x = 1 has the prime-subfield solution (p+1)/2.
    return from_int((p() + 1) / 2);
}

FieldElement Field::element(int index) const {
    if (index < 0 || index >= d())
        throw std::out_of_range("element index out of range");
    std::vector<int> coeffs(n());
    for (int i = 0; i < n(); ++i) {
        coeffs[i] = index % p();
        index /= p();
    }
    return FieldElement(*this, std::move(coeffs));
}

FieldElement Field::from_coeffs(std::vector<int> coeffs) const {
    if (static_cast<int>(coeffs.size()) != n())
        throw std::invalid_argument("coefficient vector must have length n");
    for (int& c : coeffs) c = mod_p(c, p());
    return FieldElement(*this, std::move(coeffs));
}

FieldElement Field::from_int(long long v) const {
    std::vector<int> coeffs(n(), 0);
    coeffs[0] = mod_p(v, p());
    return FieldElement(*this, std::move(coeffs));
}

std::string Field::to_string() const {
    std::ostringstream out;
    out << "GF(" << p();
    if (n() > 1) out << "^" << n();
    out << ")";
    if (n() > 1) {
        out << ", modulus";
        for (int i = n(); i >= 0; --i) {
            int c = modulus()[i];
            if (c == 0) continue;
            out << (i == n() ? " " : " + ");
            if (i == 0 || c != 1) out << c;
            if (i >= 1) out << "x";
            if (i >= 2) out << "^" << i;
        }
    }
    return out.str();
}

FieldElement::FieldElement(Field field, std::vector<int> coeffs)
    : field_(std::move(field)), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != field_.n())
        throw std::invalid_argument("coefficient vector must have length n");
}

int FieldElement::index() const {
    int idx = 0;
    for (int i = field_.n() - 1; i >= 0; --i) idx = idx * field_.p() + coeffs_[i];
    return idx;
}

bool FieldElement::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](int c) { return c == 0; });
}

void FieldElement::require_same_field(const FieldElement& other) const {
    if (field_ != other.field_)
        throw std::invalid_argument("field elements belong to different fields");
}

FieldElement FieldElement::operator+(const FieldElement& rhs) const {
    require_same_field(rhs);
    std::vector<int> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = mod_p(coeffs_[i] + rhs.coeffs_[i], field_.p());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& rhs) const {
    require_same_field(rhs);
    std::vector<int> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i)
        out[i] = mod_p(coeffs_[i] - rhs.coeffs_[i], field_.p());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-() const {
    std::vector<int> out(coeffs_.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = mod_p(-coeffs_[i], field_.p());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& rhs) const {
    require_same_field(rhs);
    const int p = field_.p();
    Poly prod = poly_mul(coeffs_, rhs.coeffs_, p);
    if (field_.n() > 1) prod = poly_mod(std::move(prod), field_.modulus(), p);
    prod.resize(field_.n(), 0);
    return FieldElement(field_, std::move(prod));
}

bool FieldElement::operator==(const FieldElement& rhs) const {
    return field_ == rhs.field_ && coeffs_ == rhs.coeffs_;
}

FieldElement FieldElement::pow(long long e) const {
    if (e < 0) throw std::invalid_argument("negative exponent; use inv() first");
    FieldElement result = field_.one();
    FieldElement base = *this;
    while (e > 0) {
        if (e & 1) result = result * base;
        base = base * base;
        e >>= 1;
    }
    return result;
}

FieldElement FieldElement::inv() const {
    if (is_zero()) throw std::domain_error("zero has no multiplicative inverse");
    // a^(d-2) = a^{-1} in GF(d).
    return pow(field_.d() - 2);
}

int field_trace(const FieldElement& a) {
    const Field& f = a.field();
    FieldElement acc = a;
    FieldElement frob = a;
    for (int k = 1; k < f.n(); ++k) {
        frob = frob.pow(f.p());
        acc = acc + frob;
    }
    for (int i = 1; i < f.n(); ++i)
        if (acc.coeffs()[i] != 0)
            throw std::logic_error("trace left the prime subfield; modulus not irreducible?");
    return acc.coeffs()[0];
}

}  // namespace pueb

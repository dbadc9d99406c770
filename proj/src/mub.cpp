#include "pueb/mub.hpp"

#include <cmath>
#include <stdexcept>

namespace pueb {

double StateVector::norm_dev() const { return std::abs(amps.norm() - 1.0); }

StateVector state_from_phase_exps(int dim, std::vector<int> exps) {
    if (static_cast<int>(exps.size()) != dim)
        throw std::invalid_argument("phase exponent count must equal dim");
    const double scale = 1.0 / std::sqrt(static_cast<double>(dim));
    Vector amps(dim);
    for (int k = 0; k < dim; ++k) {
        exps[k] = mod_into(exps[k], dim);
        amps(k) = omega_power(dim, exps[k]) * scale;
    }
    return {std::move(amps), std::move(exps)};
}

std::string BasisLabel::to_string() const {
    return computational ? "comp" : "b" + std::to_string(b);
}

namespace {

bool is_odd_prime_dim(int d) {
    if (d < 3 || d % 2 == 0) return false;
    for (int q = 3; q * q <= d; q += 2)
        if (d % q == 0) return false;
    return true;
}

}  // namespace

StateVector mub_state(int d, int b, int c) {
    if (!is_odd_prime_dim(d))
        throw std::invalid_argument(
            "mub_state requires an odd prime dimension; use mub_state_pp for prime powers");
    if (b < 0 || b >= d || c < 0 || c >= d)
        throw std::invalid_argument("basis and state labels must lie in [0, d)");
    const long long half = (d + 1) / 2;  // 2*half = 1 mod d
    std::vector<int> exps(d);
    for (long long n = 0; n < d; ++n)
        exps[n] = mod_into(half * b % d * n % d * (n - 1) - c * n, d);
    return state_from_phase_exps(d, std::move(exps));
}

StateVector mub_state_pp(const Field& f, const FieldElement& b, const FieldElement& c) {
    const int d = f.d();
    const int p = f.p();
    const int omega_step = d / p;  // omega_p = omega_d^{d/p}
    const FieldElement b_half = f.half() * b;
    std::vector<int> exps(d);
    for (int idx = 0; idx < d; ++idx) {
        const FieldElement n = f.element(idx);
        const int t = field_trace(b_half * n * n + c * n);
        exps[idx] = t * omega_step;
    }
    return state_from_phase_exps(d, std::move(exps));
}

MubBasis computational_basis(int d) {
    MubBasis basis{d, BasisLabel{true, 0}, {}};
    basis.states.reserve(d);
    for (int c = 0; c < d; ++c) {
        Vector amps = Vector::Zero(d);
        amps(c) = 1.0;
        basis.states.push_back({std::move(amps), std::nullopt});
    }
    return basis;
}

MubBasis structured_basis(int d, int b) {
    MubBasis basis{d, BasisLabel{false, b}, {}};
    basis.states.reserve(d);
    for (int c = 0; c < d; ++c) basis.states.push_back(mub_state(d, b, c));
    return basis;
}

MubBasis structured_basis_pp(const Field& f, const FieldElement& b) {
    MubBasis basis{f.d(), BasisLabel{false, b.index()}, {}};
    basis.states.reserve(f.d());
    for (int ci = 0; ci < f.d(); ++ci)
        basis.states.push_back(mub_state_pp(f, b, f.element(ci)));
    return basis;
}

std::vector<MubBasis> all_mubs(int d) {
    std::vector<MubBasis> bases;
    bases.reserve(d + 1);
    for (int b = 0; b < d; ++b) bases.push_back(structured_basis(d, b));
    bases.push_back(computational_basis(d));
    return bases;
}

std::vector<MubBasis> all_mubs(const Field& f) {
    if (f.n() == 1) return all_mubs(f.d());
    std::vector<MubBasis> bases;
    bases.reserve(f.d() + 1);
    for (int bi = 0; bi < f.d(); ++bi)
        bases.push_back(structured_basis_pp(f, f.element(bi)));
    bases.push_back(computational_basis(f.d()));
    return bases;
}

UnbiasedReport verify_unbiased(const MubBasis& b1, const MubBasis& b2) {
    if (b1.dim != b2.dim)
        throw std::invalid_argument("verify_unbiased: dimension mismatch");
    if (b1.label == b2.label) return {basis_gram_dev(b1), true};
    const double target = 1.0 / std::sqrt(static_cast<double>(b1.dim));
    double max_dev = 0.0;
    for (const StateVector& u : b1.states)
        for (const StateVector& v : b2.states) {
            const double mag = std::abs(u.amps.dot(v.amps));
            max_dev = std::max(max_dev, std::abs(mag - target));
        }
    return {max_dev, false};
}

double basis_gram_dev(const MubBasis& basis) {
    double max_dev = 0.0;
    const int d = basis.dim;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            const Cplx g = basis.states[i].amps.dot(basis.states[j].amps);
            max_dev = std::max(max_dev, std::abs(g - (i == j ? 1.0 : 0.0)));
        }
    return max_dev;
}

double identity_resolution_dev(const MubBasis& basis) {
    const int d = basis.dim;
    Matrix acc = Matrix::Zero(d, d);
    for (const StateVector& v : basis.states) acc += v.amps * v.amps.adjoint();
    return (acc - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
}

SpectralData make_spectral_data(const MubBasis& basis, const std::vector<Matrix>& ops) {
    const int d = basis.dim;
    if (static_cast<int>(ops.size()) != d)
        throw std::invalid_argument("expected d operators");
    if ((ops[0] - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("ops[0] must be the identity");
    Matrix w(d, d);
    for (int alpha = 0; alpha < d; ++alpha) {
        for (int nu = 0; nu < d; ++nu) {
            const Vector transformed = ops[alpha] * basis.states[nu].amps;
            for (int nu2 = 0; nu2 < d; ++nu2) {
                const Cplx elem = basis.states[nu2].amps.dot(transformed);
                if (nu2 != nu && std::abs(elem) > 1e-10)
                    throw std::invalid_argument(
                        "operator is not diagonal in the given basis");
                if (nu2 == nu) {
                    if (std::abs(std::abs(elem) - 1.0) > 1e-10)
                        throw std::invalid_argument("eigenphase is not unimodular");
                    w(alpha, nu) = elem;
                }
            }
        }
    }
    return {basis, std::move(w)};
}

double verify_completeness(const SpectralData& sd) {
    const int d = sd.basis.dim;
    double max_dev = 0.0;
    for (int nu = 0; nu < d; ++nu)
        for (int nu2 = 0; nu2 < d; ++nu2) {
            Cplx acc = 0.0;
            for (int alpha = 0; alpha < d; ++alpha)
                acc += sd.eigenphases(alpha, nu) * std::conj(sd.eigenphases(alpha, nu2));
            acc /= static_cast<double>(d);
            max_dev = std::max(max_dev, std::abs(acc - (nu == nu2 ? 1.0 : 0.0)));
        }
    return max_dev;
}

}  // namespace pueb

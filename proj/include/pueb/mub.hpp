#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pueb/finite_field.hpp"
#include "pueb/schwinger.hpp"

namespace pueb {

/// Pure state of dimension dim. When every amplitude is a root of unity
/// over sqrt(dim), phase_exps holds the integer exponents:
///   amps[k] = e^{2 pi i phase_exps[k] / dim} / sqrt(dim),
/// and the amplitudes are assembled directly from the reduced exponents.
struct StateVector {
    Vector amps;
    std::optional<std::vector<int>> phase_exps;

    int dim() const { return static_cast<int>(amps.size()); }
    double norm_dev() const;  // | ||amps|| - 1 |
};

StateVector state_from_phase_exps(int dim, std::vector<int> exps);

/// Basis label: the computational basis, or the structured basis b
/// (eigenbasis of X Z^b for prime d; trace-constructed for prime powers,
/// with b the enumeration index of the field element).
struct BasisLabel {
    bool computational = false;
    int b = 0;

    bool operator==(const BasisLabel&) const = default;
    std::string to_string() const;
};

struct MubBasis {
    int dim = 0;
    BasisLabel label;
    std::vector<StateVector> states;  // indexed by c
};

/// |b;c> = (1/sqrt d) sum_n omega^{(b/2) n(n-1) - c n} |n>, d an odd prime.
/// Eigenvector of X Z^b with eigenvalue omega^c. The |0> coefficient is
/// always +1/sqrt(d), fixing the free overall phase.
StateVector mub_state(int d, int b, int c);

/// Prime-power variant over GF(p^n):
///   |b;c> = (1/sqrt d) sum_n omega_p^{tr[(b/2) n^2 + c n]} |n>,
/// omega_p = e^{2 pi i / p}, n running over field elements in enumeration
/// order. Note the exponent uses n^2, not n(n-1).
StateVector mub_state_pp(const Field& f, const FieldElement& b, const FieldElement& c);

MubBasis computational_basis(int d);
MubBasis structured_basis(int d, int b);
MubBasis structured_basis_pp(const Field& f, const FieldElement& b);

/// The maximal set of d+1 mutually unbiased bases: structured b = 0..d-1,
/// then the computational basis.
std::vector<MubBasis> all_mubs(int d);
std::vector<MubBasis> all_mubs(const Field& f);

struct UnbiasedReport {
    double max_dev = 0.0;        // see below
    bool checked_gram = false;   // true when the bases carry the same label
};

/// For distinct labels: max over state pairs of | |<u|v>| - 1/sqrt(d) |.
/// For identical labels: max elementwise deviation of the Gram matrix
/// from the identity.
UnbiasedReport verify_unbiased(const MubBasis& b1, const MubBasis& b2);

/// Max elementwise deviation of the Gram matrix from the identity.
double basis_gram_dev(const MubBasis& basis);

/// Max elementwise deviation of sum_c |b;c><b;c| from the identity.
double identity_resolution_dev(const MubBasis& basis);

/// Eigenphase table W[alpha][nu] of d orthogonal commuting unitaries
/// U_alpha (U_0 = identity) diagonal in `basis`:
///   <nu|U_alpha|nu'> = W[alpha][nu] delta_{nu,nu'}, |W| = 1.
struct SpectralData {
    MubBasis basis;
    Matrix eigenphases;  // (alpha, nu)
};

/// Extracts eigenphases of ops (ops[0] must be the identity) in the given
/// basis; throws if any operator fails to be diagonal and unimodular there.
SpectralData make_spectral_data(const MubBasis& basis, const std::vector<Matrix>& ops);

/// Max deviation of (1/d) sum_alpha W[alpha][nu] conj(W[alpha][nu']) from
/// delta_{nu,nu'}.
double verify_completeness(const SpectralData& sd);

}  // namespace pueb

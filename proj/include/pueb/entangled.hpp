#pragma once

#include <array>
#include <string>
#include <variant>
#include <vector>

#include "pueb/mub.hpp"

namespace pueb {

/// Two-particle monomial label (X^m1 Z^l1)_mu (X^m2 Z^l2)_nu, exponents
/// reduced mod d.
struct TwoPartyLabel {
    int m1 = 0, l1 = 0, m2 = 0, l2 = 0;
};

/// The four operator families, keyed by which particles carry an X factor:
///   BothX : (X Z^b1)^m1_mu (X Z^b2)^m2_nu      (d(d-1))^2 operators
///   ZLeft : Z^b1_mu (X Z^b2)^m2_nu              d^2(d-1)
///   ZRight: (X Z^b1)^m1_mu Z^b2_nu              d^2(d-1)
///   BothZ : Z^b1_mu Z^b2_nu                     d^2
struct BothXTag {
    int b1, b2, m1, m2;
};
struct ZLeftTag {
    int b1, b2, m2;
};
struct ZRightTag {
    int b1, m1, b2;
};
struct BothZTag {
    int b1, b2;
};
using FamilyTag = std::variant<BothXTag, ZLeftTag, ZRightTag, BothZTag>;

/// Assigns lab to its unique family; b_i = l_i / m_i for X-carrying slots.
/// Requires a prime field.
FamilyTag classify(const Field& f, TwoPartyLabel lab);

/// Commuting-cluster coordinates of a BothX operator:
///   (X_mu (X^s Z^{s b})_nu (Z^s_mu Z^{-1}_nu)^m)^{m1},
/// with s m1 = m2, s m = b1, b2 = b m2 - m m1 (field arithmetic).
/// s, m1 in [1, d); b, m in [0, d).
struct ClusterParams {
    int s, b, m, m1;
};
ClusterParams reparameterize(const Field& f, const BothXTag& tag);

/// Partition and counting report over all d^4 labels.
struct ClassifyReport {
    int d = 0;
    // BothX, ZLeft, ZRight, BothZ
    std::array<long long, 4> family_sizes{};
    std::array<long long, 4> expected_sizes{};
    bool partition_exact = false;
    bool reparam_bijective = false;
    // Z^{sr}_mu Z^{-r}_nu, Z^s_mu, Z^s_nu; expected (d-1)^2, d-1, d-1
    std::array<long long, 3> z_partition_sizes{};
    bool z_partition_exact = false;
    // Cluster checks: for each (s, b), the d(d-1) reparameterized operators
    // plus (Z^s_mu Z^{-1}_nu)^r and the identity must give d^2 pairwise
    // commuting, pairwise HS-orthogonal unitaries.
    int clusters_checked = 0;
    double max_commutator = 0.0;   // max elementwise |AB - BA|
    double max_hs_cross = 0.0;     // max |Tr[A B^dag]| over distinct pairs
    double max_hs_diag_dev = 0.0;  // max |Tr[A A^dag] - d^2|
    std::string failure;           // empty when every count matched

    bool ok() const { return failure.empty(); }
};

/// Classifies all d^4 labels, verifies family cardinalities, the BothX
/// reparameterization ranges/bijectivity and the BothZ partition; when
/// check_clusters is set, additionally builds every (s, b) cluster as
/// dense matrices and verifies commutation and HS orthogonality.
ClassifyReport classify_all(int d, bool check_clusters = true);

/// Label |b,s;c1,c2> of an entangled basis state; s != 0.
struct EntangledLabel {
    int b = 0, s = 1, c1 = 0, c2 = 0;
};

/// |b,s;c1,c2> = (1/sqrt d) sum_n omega^{(s^2 b/2) n(n-1) - c1 n}
///               |n>_mu |s n + c2>_nu   (dim d^2, component n*d + k).
StateVector ent_state(int d, EntangledLabel lab);

/// One of the d(d-1) entangled bases: the d^2 states at fixed (b, s),
/// indexed by c1*d + c2.
struct EntangledBasis {
    int d = 0, b = 0, s = 1;
    std::vector<StateVector> states;
};
EntangledBasis ent_basis(int d, int b, int s);

/// All d(d-1) bases, ordered s = 1..d-1 outer, b = 0..d-1 inner.
std::vector<EntangledBasis> all_ent_bases(int d);

/// Measured eigenvalues of the two commuting operators that label the
/// basis: Z^s_mu Z^{-1}_nu (expected omega^{-c2}) and X_mu (X^s Z^{sb})_nu.
/// The second eigenvalue is reported as measured; the simplified exponent
/// s*b*c2 omits a c1 term and is flagged when it disagrees.
struct EigenCheckReport {
    Cplx eig_zz, eig_xx;
    double resid_zz = 0.0, resid_xx = 0.0;  // ||Op psi - eig psi||
    bool zz_matches_minus_c2 = false;
    int xx_exponent = 0;  // k with eig_xx = omega^k
    bool xx_matches_sbc2 = false;
};
EigenCheckReport eigen_check(int d, EntangledLabel lab);

/// Max deviation from the three-case overlap law over every state pair
/// drawn from all d(d-1) bases:
///   same (b,s)        -> delta_{c1,c1'} delta_{c2,c2'}
///   s = s', b != b'   -> delta_{c2,c2'} / sqrt(d)
///   s != s'           -> 1/d
struct OverlapReport {
    double dev_same_basis = 0.0;
    double dev_shared_s = 0.0;
    double dev_cross_s = 0.0;
    double max_dev() const;
};
OverlapReport overlap_structure(int d);

/// Result of contracting the mu slot of an entangled state with a MUB
/// state: reduced = (1/sqrt d) * phase * |target_b; target_c>_nu.
struct ProjectionResult {
    Vector reduced;  // unnormalized, dim d
    int target_b = 0, target_c = 0;
    Cplx phase;       // relative to the literal target-state convention
    double max_dev = 0.0;
};

/// <b1;c|_mu applied to |b, s=1; c1, c2=0>; requires lab.s == 1 and
/// lab.c2 == 0. Target labels: b - b1 and c1 - c, both mod d.
ProjectionResult project_mub(int d, int b1, int c, EntangledLabel lab);

/// Prime-power analogue over GF(p^n), entangled within the computational
/// basis: (1/sqrt d) sum_n omega_p^{tr[(b/2) n^2 + c n]} |n>_mu |n>_nu.
StateVector ent_state_pp(const Field& f, const FieldElement& b, const FieldElement& c);

/// <b1;c1|_mu contraction of ent_state_pp(f, b, c); target labels b - b1,
/// c - c1 (so b1 + b2 = b and c1 + c2 = c).
ProjectionResult project_pp(const Field& f, const FieldElement& b, const FieldElement& c,
                            const FieldElement& b1, const FieldElement& c1);

enum class Particle { mu, nu };

/// Partial trace of |psi><psi| over the other particle; psi has dim d^2.
Matrix reduced_density(const StateVector& psi, Particle keep);

}  // namespace pueb

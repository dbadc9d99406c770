#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pueb/entangled.hpp"
#include "pueb/mub.hpp"

namespace pueb {

/// Hermitian, unit-trace, PSD operator. Reconstruction outputs from noisy
/// tables may violate PSD; validate() reports diagnostics instead of the
/// type enforcing them.
struct DensityMatrix {
    Matrix mat;
    int dim() const { return static_cast<int>(mat.rows()); }

    struct Diagnostics {
        double hermiticity_dev;  // max |rho - rho^dag|
        double trace_dev;        // |Tr rho - 1|
        double min_eigenvalue;   // of the Hermitian part
    };
    Diagnostics validate() const;
};

DensityMatrix density_from_state(const Vector& amps);

enum class TableScheme { single_mub, two_partite };

/// Measurement-count bookkeeping per reconstruction scheme:
///   single_mub            d+1      one particle, d+1 MUBs
///   two_partite_entangled d^2+d+1  the entangled-basis scheme
///   two_partite_full_mub  d^2+1    two-particle MUBs (optimal)
///   product_single_mub    (d+1)^2  products of single-particle MUBs
enum class CountScheme {
    single_mub,
    two_partite_entangled,
    two_partite_full_mub,
    product_single_mub,
};
int measurement_count(int d, CountScheme scheme);

/// One jointly measurable setting. zz_correlation is bookkeeping only: its
/// outcome statistics are a function of the computational setting (the
/// operators Z^s_mu Z^{-1}_nu are diagonal there), which is why the
/// two-particle scheme needs d^2+d+1 settings rather than the raw term
/// count of the reconstruction formula.
struct MeasurementSetting {
    enum class Kind {
        single_structured,     // one particle, basis b
        single_computational,  // one particle
        entangled_set,         // |b,s;c1,c2>, outcome c1*d+c2
        computational,         // two particles, outcome n*d+n'
        product_left,          // |n>_mu |b;c>_nu, outcome n*d+c
        product_right,         // |b;c>_mu |n>_nu, outcome c*d+n
        zz_correlation,
    };
    Kind kind = Kind::single_computational;
    int b = 0;
    int s = 0;

    std::string id() const;
    static MeasurementSetting parse(const std::string& id);
    bool operator==(const MeasurementSetting&) const = default;
};

/// The ordered settings of a scheme. single_mub: structured b = 0..d-1
/// then computational (d+1 settings). two_partite: entangled (s outer,
/// b inner), computational, product_left b = 0..d-1, product_right
/// b = 0..d-1 (d^2+d+1 settings).
std::vector<MeasurementSetting> settings_for_scheme(int d, TableScheme scheme);

/// Outcome states of a setting, in outcome-id order.
std::vector<StateVector> setting_states(int d, const MeasurementSetting& setting);
/// Prime-power single-particle variant (trace-constructed bases).
std::vector<StateVector> setting_states(const Field& f, const MeasurementSetting& setting);

/// Outcome probabilities for one scheme. dim is the dimension of the state
/// the table describes (d or d^2).
struct ProbTable {
    TableScheme scheme = TableScheme::single_mub;
    int dim = 0;
    std::vector<std::pair<MeasurementSetting, std::vector<double>>> settings;

    const std::vector<double>* find(const MeasurementSetting& setting) const;
    /// Throws unless every setting's outcomes sum to 1 within 1e-10 and
    /// probabilities lie in [-1e-12, 1+1e-10]; negatives above -1e-12 are
    /// clipped to 0 in place.
    void validate_and_clip();
};

/// Born probabilities p_k = <k|rho|k>, clipped at -1e-12. The basis must
/// consist of normalized states (checked) spanning the space.
std::vector<double> born_probs(const DensityMatrix& rho, const std::vector<StateVector>& basis);

ProbTable exact_prob_table(const DensityMatrix& rho, int d, TableScheme scheme);
ProbTable exact_prob_table_pp(const DensityMatrix& rho, const Field& f);

/// Multinomial frequencies over the setting's outcomes; deterministic in
/// (seed, setting id) and identical across platforms.
std::vector<double> sample_probs(const DensityMatrix& rho, int d,
                                 const MeasurementSetting& setting, long long shots,
                                 std::uint64_t seed);
ProbTable sampled_prob_table(const DensityMatrix& rho, int d, TableScheme scheme,
                             long long shots, std::uint64_t seed);

/// rho = sum_{b,c} p(b,c) |b;c><b;c| + sum_n p(n) |n><n| - I, consuming
/// exactly the d+1 single_mub settings.
DensityMatrix reconstruct_single(int d, ProbTable probs);
DensityMatrix reconstruct_single_pp(const Field& f, ProbTable probs);

/// Two-particle reconstruction from the d^2+d+1 settings:
///   rho = sum_{b,s} sum_{c1,c2} p |b,s;c1,c2><...|
///       - (d-1) sum_{n,n'} p |n,n'><n,n'|
///       + sum_b sum_{n,c} p |n><n| (x) |b;c><b;c|
///       + sum_b sum_{n,c} p |b;c><b;c| (x) |n><n|
///       - I.
DensityMatrix reconstruct_two(int d, ProbTable probs);

/// The two commuting Hermitian readings of the unitary X Z^b:
///   M1 = X Z^b + (X Z^b)^dag, M2 = i (X Z^b - (X Z^b)^dag),
/// simultaneously diagonal in basis b with eigenvalue pair
/// (2 cos(2 pi c / d), -2 sin(2 pi c / d)).
std::pair<Matrix, Matrix> hermitian_pair(int d, int b);

/// Tr[rho (Z^s_mu Z^{-1}_nu)^r] computed from the computational-basis
/// outcome distribution: sum_{n,n'} p(n,n') omega^{r (s n - n')}.
Cplx zz_moment(int d, const std::vector<double>& comp_probs, int s, int r);

/// Deterministic test states. Pure: a Gaussian complex vector (explicit
/// Box-Muller over mt19937_64 words, so results are platform-independent)
/// normalized to unit length. Mixed: rho = G G^dag / Tr[G G^dag] with G a
/// dim x rank Gaussian matrix (Wishart-style).
DensityMatrix random_pure_density(int dim, std::uint64_t seed);
DensityMatrix random_mixed_density(int dim, int rank, std::uint64_t seed);

}  // namespace pueb

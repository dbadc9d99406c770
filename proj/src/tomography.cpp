#include "pueb/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>

namespace pueb {

DensityMatrix::Diagnostics DensityMatrix::validate() const {
    Diagnostics diag{};
    diag.hermiticity_dev = (mat - mat.adjoint()).cwiseAbs().maxCoeff();
    diag.trace_dev = std::abs(mat.trace() - Cplx(1.0, 0.0));
    const Matrix herm = 0.5 * (mat + mat.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> solver(herm);
    diag.min_eigenvalue = solver.eigenvalues().minCoeff();
    return diag;
}

DensityMatrix density_from_state(const Vector& amps) {
    return {amps * amps.adjoint()};
}

int measurement_count(int d, CountScheme scheme) {
    switch (scheme) {
        case CountScheme::single_mub: return d + 1;
        case CountScheme::two_partite_entangled: return d * d + d + 1;
        case CountScheme::two_partite_full_mub: return d * d + 1;
        case CountScheme::product_single_mub: return (d + 1) * (d + 1);
    }
    throw std::invalid_argument("unknown scheme");
}

std::string MeasurementSetting::id() const {
    std::ostringstream out;
    switch (kind) {
        case Kind::single_structured: out << "basis:b" << b; break;
        case Kind::single_computational: out << "basis:comp"; break;
        case Kind::entangled_set: out << "ent:b" << b << ",s" << s; break;
        case Kind::computational: out << "comp2"; break;
        case Kind::product_left: out << "prodL:b" << b; break;
        case Kind::product_right: out << "prodR:b" << b; break;
        case Kind::zz_correlation: out << "zz:s" << s; break;
    }
    return out.str();
}

MeasurementSetting MeasurementSetting::parse(const std::string& id) {
    auto read_int = [&id](size_t pos) {
        return std::stoi(id.substr(pos));
    };
    if (id == "basis:comp") return {Kind::single_computational, 0, 0};
    if (id == "comp2") return {Kind::computational, 0, 0};
    if (id.rfind("basis:b", 0) == 0) return {Kind::single_structured, read_int(7), 0};
    if (id.rfind("prodL:b", 0) == 0) return {Kind::product_left, read_int(7), 0};
    if (id.rfind("prodR:b", 0) == 0) return {Kind::product_right, read_int(7), 0};
    if (id.rfind("zz:s", 0) == 0) return {Kind::zz_correlation, 0, read_int(4)};
    if (id.rfind("ent:b", 0) == 0) {
        const size_t comma = id.find(",s");
        if (comma != std::string::npos)
            return {Kind::entangled_set, read_int(5), read_int(comma + 2)};
    }
    throw std::invalid_argument("unrecognized setting id: " + id);
}

std::vector<MeasurementSetting> settings_for_scheme(int d, TableScheme scheme) {
    std::vector<MeasurementSetting> settings;
    if (scheme == TableScheme::single_mub) {
        for (int b = 0; b < d; ++b)
            settings.push_back({MeasurementSetting::Kind::single_structured, b, 0});
        settings.push_back({MeasurementSetting::Kind::single_computational, 0, 0});
        return settings;
    }
    for (int s = 1; s < d; ++s)
        for (int b = 0; b < d; ++b)
            settings.push_back({MeasurementSetting::Kind::entangled_set, b, s});
    settings.push_back({MeasurementSetting::Kind::computational, 0, 0});
    for (int b = 0; b < d; ++b)
        settings.push_back({MeasurementSetting::Kind::product_left, b, 0});
    for (int b = 0; b < d; ++b)
        settings.push_back({MeasurementSetting::Kind::product_right, b, 0});
    return settings;
}

namespace {

std::vector<StateVector> product_states(const MubBasis& left, const MubBasis& right) {
    std::vector<StateVector> states;
    states.reserve(static_cast<size_t>(left.dim) * right.dim);
    for (const StateVector& u : left.states)
        for (const StateVector& v : right.states)
            states.push_back({kron(u.amps, v.amps), std::nullopt});
    return states;
}

}  // namespace

std::vector<StateVector> setting_states(int d, const MeasurementSetting& setting) {
    using Kind = MeasurementSetting::Kind;
    switch (setting.kind) {
        case Kind::single_structured: return structured_basis(d, setting.b).states;
        case Kind::single_computational: return computational_basis(d).states;
        case Kind::entangled_set: return ent_basis(d, setting.b, setting.s).states;
        case Kind::computational:
            return product_states(computational_basis(d), computational_basis(d));
        case Kind::product_left:
            return product_states(computational_basis(d), structured_basis(d, setting.b));
        case Kind::product_right:
            return product_states(structured_basis(d, setting.b), computational_basis(d));
        case Kind::zz_correlation:
            throw std::invalid_argument(
                "zz correlations have no basis of their own; use the computational setting");
    }
    throw std::invalid_argument("unknown setting kind");
}

std::vector<StateVector> setting_states(const Field& f, const MeasurementSetting& setting) {
    using Kind = MeasurementSetting::Kind;
    if (f.n() == 1) return setting_states(f.d(), setting);
    switch (setting.kind) {
        case Kind::single_structured:
            return structured_basis_pp(f, f.element(setting.b)).states;
        case Kind::single_computational: return computational_basis(f.d()).states;
        default:
            throw std::invalid_argument(
                "two-particle settings are defined for prime dimensions only");
    }
}

const std::vector<double>* ProbTable::find(const MeasurementSetting& setting) const {
    for (const auto& [s, probs] : settings)
        if (s == setting) return &probs;
    return nullptr;
}

void ProbTable::validate_and_clip() {
    for (auto& [setting, probs] : settings) {
        double sum = 0.0;
        for (double& p : probs) {
            if (p < -1e-12)
                throw std::invalid_argument("negative probability in setting " +
                                            setting.id());
            if (p < 0.0) p = 0.0;
            if (p > 1.0 + 1e-10)
                throw std::invalid_argument("probability above 1 in setting " +
                                            setting.id());
            sum += p;
        }
        if (std::abs(sum - 1.0) > 1e-10)
            throw std::invalid_argument("probabilities of setting " + setting.id() +
                                        " sum to " + std::to_string(sum));
    }
}

std::vector<double> born_probs(const DensityMatrix& rho,
                               const std::vector<StateVector>& basis) {
    std::vector<double> probs;
    probs.reserve(basis.size());
    for (const StateVector& v : basis) {
        if (v.norm_dev() > 1e-9)
            throw std::invalid_argument("born_probs requires normalized basis states");
        const double p = std::real(v.amps.dot(rho.mat * v.amps));
        if (p < -1e-12)
            throw std::invalid_argument("state is not positive on the given basis");
        probs.push_back(std::max(p, 0.0));
    }
    return probs;
}

namespace {

ProbTable exact_table_impl(const DensityMatrix& rho, int d, TableScheme scheme,
                           const Field* field) {
    ProbTable table;
    table.scheme = scheme;
    table.dim = rho.dim();
    const int expected_dim = scheme == TableScheme::single_mub ? d : d * d;
    if (rho.dim() != expected_dim)
        throw std::invalid_argument("state dimension does not match the scheme");
    for (const MeasurementSetting& setting : settings_for_scheme(d, scheme)) {
        const std::vector<StateVector> states =
            field ? setting_states(*field, setting) : setting_states(d, setting);
        table.settings.emplace_back(setting, born_probs(rho, states));
    }
    return table;
}

}  // namespace

ProbTable exact_prob_table(const DensityMatrix& rho, int d, TableScheme scheme) {
    return exact_table_impl(rho, d, scheme, nullptr);
}

ProbTable exact_prob_table_pp(const DensityMatrix& rho, const Field& f) {
    return exact_table_impl(rho, f.d(), TableScheme::single_mub, &f);
}

namespace {

// Deterministic uniform doubles in [0, 1) from raw mt19937_64 words; the
// standard distributions are implementation-defined, these are not.
class DetRng {
public:
    explicit DetRng(std::uint64_t seed) : eng_(seed) {}

    double uniform() { return (eng_() >> 11) * 0x1.0p-53; }

    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        const double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

}  // namespace

std::vector<double> sample_probs(const DensityMatrix& rho, int d,
                                 const MeasurementSetting& setting, long long shots,
                                 std::uint64_t seed) {
    if (shots < 1) throw std::invalid_argument("shots must be >= 1");
    const std::vector<double> exact = born_probs(rho, setting_states(d, setting));
    std::vector<double> cdf(exact.size());
    double acc = 0.0;
    for (size_t k = 0; k < exact.size(); ++k) {
        acc += exact[k];
        cdf[k] = acc;
    }
    cdf.back() = 1.0;
    // One generator stream per (seed, setting).
    DetRng rng(seed * 0x9E3779B97F4A7C15ULL ^ fnv1a(setting.id()));
    std::vector<long long> counts(exact.size(), 0);
    for (long long shot = 0; shot < shots; ++shot) {
        const double u = rng.uniform();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        counts[std::min<size_t>(it - cdf.begin(), counts.size() - 1)] += 1;
    }
    std::vector<double> freqs(exact.size());
    for (size_t k = 0; k < freqs.size(); ++k)
        freqs[k] = static_cast<double>(counts[k]) / static_cast<double>(shots);
    return freqs;
}

ProbTable sampled_prob_table(const DensityMatrix& rho, int d, TableScheme scheme,
                             long long shots, std::uint64_t seed) {
    ProbTable table;
    table.scheme = scheme;
    table.dim = rho.dim();
    for (const MeasurementSetting& setting : settings_for_scheme(d, scheme))
        table.settings.emplace_back(setting, sample_probs(rho, d, setting, shots, seed));
    return table;
}

namespace {

void require_settings(const ProbTable& table, int d, TableScheme scheme) {
    std::vector<std::string> missing;
    for (const MeasurementSetting& setting : settings_for_scheme(d, scheme)) {
        const std::vector<double>* probs = table.find(setting);
        const size_t outcomes = scheme == TableScheme::single_mub
                                    ? static_cast<size_t>(d)
                                    : static_cast<size_t>(d) * d;
        if (probs == nullptr || probs->size() != outcomes) missing.push_back(setting.id());
    }
    if (!missing.empty()) {
        std::ostringstream msg;
        msg << "probability table is missing settings:";
        for (const std::string& id : missing) msg << " " << id;
        throw std::invalid_argument(msg.str());
    }
}

Matrix projector_sum(const std::vector<StateVector>& states,
                     const std::vector<double>& probs) {
    Matrix acc = Matrix::Zero(states[0].dim(), states[0].dim());
    for (size_t k = 0; k < states.size(); ++k)
        acc += probs[k] * (states[k].amps * states[k].amps.adjoint());
    return acc;
}

DensityMatrix reconstruct_single_impl(int d, ProbTable probs, const Field* field) {
    if (probs.scheme != TableScheme::single_mub)
        throw std::invalid_argument("expected a single_mub probability table");
    require_settings(probs, d, TableScheme::single_mub);
    probs.validate_and_clip();
    Matrix rho = -Matrix::Identity(d, d);
    for (const MeasurementSetting& setting : settings_for_scheme(d, TableScheme::single_mub)) {
        const std::vector<StateVector> states =
            field ? setting_states(*field, setting) : setting_states(d, setting);
        rho += projector_sum(states, *probs.find(setting));
    }
    DensityMatrix out{std::move(rho)};
    if (out.validate().hermiticity_dev > 1e-8)
        throw std::runtime_error("reconstruction yielded a non-Hermitian matrix");
    return out;
}

}  // namespace

DensityMatrix reconstruct_single(int d, ProbTable probs) {
    return reconstruct_single_impl(d, std::move(probs), nullptr);
}

DensityMatrix reconstruct_single_pp(const Field& f, ProbTable probs) {
    return reconstruct_single_impl(f.d(), std::move(probs), &f);
}

DensityMatrix reconstruct_two(int d, ProbTable probs) {
    if (probs.scheme != TableScheme::two_partite)
        throw std::invalid_argument("expected a two_partite probability table");
    require_settings(probs, d, TableScheme::two_partite);
    probs.validate_and_clip();
    const int dim2 = d * d;
    Matrix rho = -Matrix::Identity(dim2, dim2);
    using Kind = MeasurementSetting::Kind;
    for (const MeasurementSetting& setting : settings_for_scheme(d, TableScheme::two_partite)) {
        const double weight =
            setting.kind == Kind::computational ? -(d - 1.0) : 1.0;
        rho += weight * projector_sum(setting_states(d, setting), *probs.find(setting));
    }
    DensityMatrix out{std::move(rho)};
    if (out.validate().hermiticity_dev > 1e-8)
        throw std::runtime_error("reconstruction yielded a non-Hermitian matrix");
    return out;
}

std::pair<Matrix, Matrix> hermitian_pair(int d, int b) {
    if (b < 0 || b >= d) throw std::invalid_argument("b must lie in [0, d)");
    const Matrix xzb = monomial(d, {1, b});
    const Matrix m1 = xzb + xzb.adjoint();
    const Matrix m2 = Cplx(0.0, 1.0) * (xzb - xzb.adjoint());
    return {m1, m2};
}

Cplx zz_moment(int d, const std::vector<double>& comp_probs, int s, int r) {
    if (comp_probs.size() != static_cast<size_t>(d) * d)
        throw std::invalid_argument("expected d^2 computational probabilities");
    Cplx acc = 0.0;
    for (int n = 0; n < d; ++n)
        for (int n2 = 0; n2 < d; ++n2)
            acc += comp_probs[static_cast<size_t>(n) * d + n2] *
                   omega_power(d, static_cast<long long>(r) * (1LL * s * n - n2));
    return acc;
}

DensityMatrix random_pure_density(int dim, std::uint64_t seed) {
    DetRng rng(seed);
    Vector amps(dim);
    for (int k = 0; k < dim; ++k) amps(k) = Cplx(rng.gaussian(), rng.gaussian());
    amps /= amps.norm();
    return density_from_state(amps);
}

DensityMatrix random_mixed_density(int dim, int rank, std::uint64_t seed) {
    if (rank < 1 || rank > dim) throw std::invalid_argument("rank must lie in [1, dim]");
    DetRng rng(seed);
    Matrix g(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) g(i, j) = Cplx(rng.gaussian(), rng.gaussian());
    Matrix rho = g * g.adjoint();
    rho /= rho.trace();
    return {std::move(rho)};
}

}  // namespace pueb

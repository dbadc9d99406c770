#include <doctest.h>

#include <numbers>
#include <stdexcept>

#include "pueb/tomography.hpp"

using namespace pueb;

namespace {

double max_abs_diff(const Matrix& a, const Matrix& b) {
    return (a - b).cwiseAbs().maxCoeff();
}

DensityMatrix maximally_mixed(int dim) {
    return {Matrix::Identity(dim, dim) / static_cast<double>(dim)};
}

}  // namespace

TEST_CASE("born probabilities") {
    SUBCASE("maximally mixed state is uniform in every basis") {
        for (int b = 0; b < 3; ++b) {
            const auto probs =
                born_probs(maximally_mixed(3), structured_basis(3, b).states);
            for (double p : probs) CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-13));
        }
    }
    SUBCASE("|0><0| in the computational basis is deterministic") {
        Vector amps = Vector::Zero(3);
        amps(0) = 1.0;
        const auto probs =
            born_probs(density_from_state(amps), computational_basis(3).states);
        CHECK(probs[0] == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(probs[1] == doctest::Approx(0.0).epsilon(1e-14));
    }
    SUBCASE("|0><0| is unbiased against every structured basis") {
        Vector amps = Vector::Zero(3);
        amps(0) = 1.0;
        for (int b = 0; b < 3; ++b)
            for (double p :
                 born_probs(density_from_state(amps), structured_basis(3, b).states))
                CHECK(p == doctest::Approx(1.0 / 3).epsilon(1e-13));
    }
    SUBCASE("non-normalized basis states are rejected") {
        std::vector<StateVector> bad = computational_basis(3).states;
        bad[0].amps *= 0.5;
        CHECK_THROWS_AS(born_probs(maximally_mixed(3), bad), std::invalid_argument);
    }
}

TEST_CASE("measurement counts match the scheme table") {
    CHECK(measurement_count(3, CountScheme::single_mub) == 4);
    CHECK(measurement_count(3, CountScheme::two_partite_full_mub) == 10);
    CHECK(measurement_count(3, CountScheme::two_partite_entangled) == 13);
    CHECK(measurement_count(3, CountScheme::product_single_mub) == 16);
    CHECK(measurement_count(5, CountScheme::two_partite_entangled) == 31);
    CHECK(measurement_count(7, CountScheme::single_mub) == 8);
}

TEST_CASE("scheme settings enumeration") {
    CHECK(settings_for_scheme(3, TableScheme::single_mub).size() == 4);
    CHECK(settings_for_scheme(3, TableScheme::two_partite).size() == 13);
    CHECK(settings_for_scheme(5, TableScheme::two_partite).size() == 31);
    // Outcome counts per setting kind.
    for (const MeasurementSetting& s : settings_for_scheme(3, TableScheme::two_partite))
        CHECK(setting_states(3, s).size() == 9);
    for (const MeasurementSetting& s : settings_for_scheme(3, TableScheme::single_mub))
        CHECK(setting_states(3, s).size() == 3);
    CHECK_THROWS_AS(
        setting_states(3, {MeasurementSetting::Kind::zz_correlation, 0, 1}),
        std::invalid_argument);
}

TEST_CASE("setting ids round-trip through parse") {
    for (const MeasurementSetting& s : settings_for_scheme(5, TableScheme::two_partite))
        CHECK(MeasurementSetting::parse(s.id()) == s);
    for (const MeasurementSetting& s : settings_for_scheme(5, TableScheme::single_mub))
        CHECK(MeasurementSetting::parse(s.id()) == s);
    CHECK_THROWS_AS(MeasurementSetting::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("single-particle reconstruction") {
    SUBCASE("pure computational state via identity-resolution algebra") {
        Vector amps = Vector::Zero(3);
        amps(0) = 1.0;
        const DensityMatrix truth = density_from_state(amps);
        const DensityMatrix recon =
            reconstruct_single(3, exact_prob_table(truth, 3, TableScheme::single_mub));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-12);
    }
    SUBCASE("maximally mixed round-trip") {
        const DensityMatrix truth = maximally_mixed(5);
        const DensityMatrix recon =
            reconstruct_single(5, exact_prob_table(truth, 5, TableScheme::single_mub));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-12);
    }
    SUBCASE("random pure state at d = 5") {
        const DensityMatrix truth = random_pure_density(5, 42);
        const DensityMatrix recon =
            reconstruct_single(5, exact_prob_table(truth, 5, TableScheme::single_mub));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-10);
    }
    SUBCASE("missing settings are rejected by name") {
        ProbTable table = exact_prob_table(maximally_mixed(3), 3, TableScheme::single_mub);
        table.settings.erase(table.settings.begin());
        CHECK_THROWS_WITH_AS(reconstruct_single(3, table),
                             doctest::Contains("basis:b0"), std::invalid_argument);
    }
}

TEST_CASE("two-particle reconstruction") {
    SUBCASE("maximally mixed") {
        const DensityMatrix truth = maximally_mixed(9);
        const DensityMatrix recon =
            reconstruct_two(3, exact_prob_table(truth, 3, TableScheme::two_partite));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-12);
    }
    SUBCASE("a maximally entangled basis state reconstructs to itself") {
        const DensityMatrix truth =
            density_from_state(ent_state(3, {0, 1, 0, 0}).amps);
        const DensityMatrix recon =
            reconstruct_two(3, exact_prob_table(truth, 3, TableScheme::two_partite));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-10);
    }
    SUBCASE("random rank-9 mixed state at d = 3") {
        const DensityMatrix truth = random_mixed_density(9, 9, 2024);
        const DensityMatrix recon =
            reconstruct_two(3, exact_prob_table(truth, 3, TableScheme::two_partite));
        CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-10);
    }
    SUBCASE("wrong scheme is rejected") {
        const ProbTable table =
            exact_prob_table(maximally_mixed(3), 3, TableScheme::single_mub);
        CHECK_THROWS_AS(reconstruct_two(3, table), std::invalid_argument);
    }
}

TEST_CASE("reconstruction is linear in the probability table") {
    const DensityMatrix rho1 = random_mixed_density(3, 3, 7);
    const DensityMatrix rho2 = random_pure_density(3, 8);
    const ProbTable t1 = exact_prob_table(rho1, 3, TableScheme::single_mub);
    const ProbTable t2 = exact_prob_table(rho2, 3, TableScheme::single_mub);
    for (double alpha : {0.0, 0.25, 0.5, 1.0}) {
        ProbTable mixed = t1;
        for (size_t s = 0; s < mixed.settings.size(); ++s)
            for (size_t k = 0; k < mixed.settings[s].second.size(); ++k)
                mixed.settings[s].second[k] = alpha * t1.settings[s].second[k] +
                                              (1 - alpha) * t2.settings[s].second[k];
        const Matrix expected = alpha * reconstruct_single(3, t1).mat +
                                (1 - alpha) * reconstruct_single(3, t2).mat;
        CHECK(max_abs_diff(reconstruct_single(3, mixed).mat, expected) < 1e-12);
    }
}

TEST_CASE("exact round-trips preserve the trace") {
    for (int d : {3, 5}) {
        const DensityMatrix truth = random_mixed_density(d, d, 11 + d);
        const DensityMatrix recon =
            reconstruct_single(d, exact_prob_table(truth, d, TableScheme::single_mub));
        CHECK(recon.validate().trace_dev < 1e-10);
    }
}

TEST_CASE("prime-power single-particle round-trip over GF(9)") {
    const Field gf9 = Field::make(3, 2);
    const DensityMatrix truth = random_mixed_density(9, 4, 99);
    const DensityMatrix recon = reconstruct_single_pp(gf9, exact_prob_table_pp(truth, gf9));
    CHECK(max_abs_diff(recon.mat, truth.mat) < 1e-10);
}

TEST_CASE("hermitian reading pair of X Z^b") {
    SUBCASE("M1 eigenvalues on the b basis are 2 cos(2 pi c / d)") {
        const auto [m1, m2] = hermitian_pair(3, 0);
        for (int c = 0; c < 3; ++c) {
            const StateVector v = mub_state(3, 0, c);
            const double lambda1 = 2.0 * std::cos(2.0 * std::numbers::pi * c / 3.0);
            const double lambda2 = -2.0 * std::sin(2.0 * std::numbers::pi * c / 3.0);
            CHECK((m1 * v.amps - lambda1 * v.amps).norm() < 1e-12);
            CHECK((m2 * v.amps - lambda2 * v.amps).norm() < 1e-12);
        }
    }
    SUBCASE("c = 0 eigenvalue pair is (2, 0)") {
        const auto [m1, m2] = hermitian_pair(5, 2);
        const StateVector v = mub_state(5, 2, 0);
        CHECK((m1 * v.amps - 2.0 * v.amps).norm() < 1e-12);
        CHECK((m2 * v.amps).norm() < 1e-12);
    }
    SUBCASE("the pair commutes and is Hermitian for every b, d in {3,5,7}") {
        for (int d : {3, 5, 7})
            for (int b = 0; b < d; ++b) {
                const auto [m1, m2] = hermitian_pair(d, b);
                CHECK(max_abs_diff(m1, m1.adjoint()) < 1e-13);
                CHECK(max_abs_diff(m2, m2.adjoint()) < 1e-13);
                CHECK((m1 * m2 - m2 * m1).cwiseAbs().maxCoeff() < 1e-12);
            }
    }
    SUBCASE("eigenvalue claims hold for every b and c, d in {3,5,7}") {
        for (int d : {3, 5, 7})
            for (int b = 0; b < d; ++b) {
                const auto [m1, m2] = hermitian_pair(d, b);
                for (int c = 0; c < d; ++c) {
                    const StateVector v = mub_state(d, b, c);
                    const double l1 = 2.0 * std::cos(2.0 * std::numbers::pi * c / d);
                    const double l2 = -2.0 * std::sin(2.0 * std::numbers::pi * c / d);
                    CHECK((m1 * v.amps - l1 * v.amps).norm() < 1e-12);
                    CHECK((m2 * v.amps - l2 * v.amps).norm() < 1e-12);
                }
            }
    }
}

TEST_CASE("zz correlations are a function of the computational distribution") {
    const DensityMatrix rho = random_mixed_density(9, 9, 5);
    const auto comp = born_probs(
        rho, setting_states(3, {MeasurementSetting::Kind::computational, 0, 0}));
    for (int s = 1; s < 3; ++s)
        for (int r = 1; r < 3; ++r) {
            const Matrix op = kron(matrix_power(monomial(3, {0, s}), r),
                                   matrix_power(monomial(3, {0, 2}), r));
            const Cplx direct = (op * rho.mat).trace();
            CHECK(std::abs(zz_moment(3, comp, s, r) - direct) < 1e-12);
        }
}

TEST_CASE("sampling") {
    const MeasurementSetting comp{MeasurementSetting::Kind::single_computational, 0, 0};
    SUBCASE("shots = 0 is rejected") {
        CHECK_THROWS_AS(sample_probs(maximally_mixed(3), 3, comp, 0, 1),
                        std::invalid_argument);
    }
    SUBCASE("one shot concentrates on a single outcome") {
        const auto freqs = sample_probs(maximally_mixed(3), 3, comp, 1, 9);
        double total = 0.0;
        int ones = 0;
        for (double f : freqs) {
            total += f;
            if (f == 1.0) ++ones;
        }
        CHECK(total == doctest::Approx(1.0));
        CHECK(ones == 1);
    }
    SUBCASE("identical seeds reproduce identical frequencies") {
        const auto a = sample_probs(maximally_mixed(3), 3, comp, 1000, 77);
        const auto b = sample_probs(maximally_mixed(3), 3, comp, 1000, 77);
        CHECK(a == b);
        const auto c = sample_probs(maximally_mixed(3), 3, comp, 1000, 78);
        CHECK(a != c);
    }
    SUBCASE("10^6 shots on the maximally mixed two-particle state") {
        const auto freqs = sample_probs(
            maximally_mixed(9), 3, {MeasurementSetting::Kind::computational, 0, 0},
            1000000, 3);
        for (double f : freqs) CHECK(std::abs(f - 1.0 / 9) < 0.005);
    }
}

TEST_CASE("sampled reconstruction error shrinks with the shot budget") {
    // Statistical property: with the error scaling like shots^{-1/2}, at
    // least 9 of these 10 seed pairs must improve from 10^3 to 10^6 shots.
    const DensityMatrix truth = random_mixed_density(3, 3, 123);
    int improved = 0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const DensityMatrix coarse = reconstruct_single(
            3, sampled_prob_table(truth, 3, TableScheme::single_mub, 1000, seed));
        const DensityMatrix fine = reconstruct_single(
            3, sampled_prob_table(truth, 3, TableScheme::single_mub, 1000000, seed));
        const double err_coarse = max_abs_diff(coarse.mat, truth.mat);
        const double err_fine = max_abs_diff(fine.mat, truth.mat);
        if (err_fine < err_coarse) ++improved;
    }
    CHECK(improved >= 9);
}

TEST_CASE("probability table validation") {
    ProbTable table = exact_prob_table(maximally_mixed(3), 3, TableScheme::single_mub);
    SUBCASE("tiny negatives are clipped in place") {
        table.settings[0].second = {-1e-13, 0.5, 0.5 + 1e-13};
        CHECK_NOTHROW(table.validate_and_clip());
        CHECK(table.settings[0].second[0] == 0.0);
    }
    SUBCASE("larger negatives are an input error") {
        table.settings[0].second[0] = -0.01;
        CHECK_THROWS_AS(table.validate_and_clip(), std::invalid_argument);
    }
    SUBCASE("non-normalized settings are an input error") {
        table.settings[0].second[0] += 0.1;
        CHECK_THROWS_AS(table.validate_and_clip(), std::invalid_argument);
    }
}

TEST_CASE("seeded random states are physical") {
    for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
        const auto pure = random_pure_density(5, seed).validate();
        CHECK(pure.hermiticity_dev < 1e-14);
        CHECK(pure.trace_dev < 1e-12);
        CHECK(pure.min_eigenvalue > -1e-12);
        const auto mixed = random_mixed_density(9, 5, seed).validate();
        CHECK(mixed.hermiticity_dev < 1e-14);
        CHECK(mixed.trace_dev < 1e-12);
        CHECK(mixed.min_eigenvalue > -1e-12);
    }
    CHECK_THROWS_AS(random_mixed_density(3, 0, 1), std::invalid_argument);
}

#include <doctest.h>

#include <cstdio>
#include <stdexcept>

#include "pueb/io.hpp"

using namespace pueb;

TEST_CASE("basis export carries dim, label, states and phase exponents") {
    const Json j = basis_to_json(structured_basis(3, 1));
    CHECK(j.at("format") == 1);
    CHECK(j.at("dim") == 3);
    CHECK(j.at("label").at("type") == "structured");
    CHECK(j.at("label").at("b") == 1);
    REQUIRE(j.at("states").size() == 3);
    REQUIRE(j.at("states")[0].size() == 3);
    CHECK(j.at("states")[0][0][0].get<double>() ==
          doctest::Approx(1.0 / std::sqrt(3.0)));
    // phase_exps of |1;0> are (0, 0, 1)
    CHECK(j.at("phase_exps")[0] == Json::array({0, 0, 1}));

    const Json comp = basis_to_json(computational_basis(3));
    CHECK(comp.at("label").at("type") == "computational");
    CHECK_FALSE(comp.contains("phase_exps"));
}

TEST_CASE("entangled basis export names the tensor convention") {
    const Json j = ent_basis_to_json(ent_basis(3, 1, 2));
    CHECK(j.at("dim") == 9);
    CHECK(j.at("b") == 1);
    CHECK(j.at("s") == 2);
    CHECK(j.at("tensor_convention") == "row-major mu×nu");
    CHECK(j.at("states").size() == 9);
}

TEST_CASE("probability tables round-trip through JSON") {
    const DensityMatrix rho = random_mixed_density(9, 9, 31);
    const ProbTable table = exact_prob_table(rho, 3, TableScheme::two_partite);
    const ProbTable back = prob_table_from_json(prob_table_to_json(table));
    CHECK(back.scheme == table.scheme);
    CHECK(back.dim == table.dim);
    REQUIRE(back.settings.size() == table.settings.size());
    for (size_t k = 0; k < table.settings.size(); ++k) {
        CHECK(back.settings[k].first == table.settings[k].first);
        CHECK(back.settings[k].second == table.settings[k].second);
    }
    // Reconstruction from the round-tripped table is identical.
    const DensityMatrix a = reconstruct_two(3, table);
    const DensityMatrix b = reconstruct_two(3, back);
    CHECK((a.mat - b.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("density matrices round-trip through JSON") {
    const DensityMatrix rho = random_mixed_density(5, 2, 17);
    const DensityMatrix back = density_from_json(density_to_json(rho));
    CHECK((rho.mat - back.mat).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("format violations are rejected") {
    Json j = density_to_json(random_pure_density(3, 1));
    j["format"] = 2;
    CHECK_THROWS_AS(density_from_json(j), std::invalid_argument);
    Json t = prob_table_to_json(
        exact_prob_table(random_pure_density(3, 1), 3, TableScheme::single_mub));
    t.erase("format");
    CHECK_THROWS_AS(prob_table_from_json(t), std::invalid_argument);
    t = prob_table_to_json(
        exact_prob_table(random_pure_density(3, 1), 3, TableScheme::single_mub));
    t["scheme"] = "holography";
    CHECK_THROWS_AS(prob_table_from_json(t), std::invalid_argument);
    Json wrong_count = density_to_json(random_pure_density(3, 1));
    wrong_count["dim"] = 4;
    CHECK_THROWS_AS(density_from_json(wrong_count), std::invalid_argument);
}

TEST_CASE("json files are written and read back verbatim") {
    const std::string path = "test_io_density.json";
    const DensityMatrix rho = random_mixed_density(3, 3, 8);
    write_json_file(path, density_to_json(rho));
    const DensityMatrix back = density_from_json(read_json_file(path));
    CHECK((rho.mat - back.mat).cwiseAbs().maxCoeff() == 0.0);
    CHECK_THROWS_AS(read_json_file("does_not_exist.json"), std::runtime_error);
    std::remove(path.c_str());
}

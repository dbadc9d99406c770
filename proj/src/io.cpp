#include "pueb/io.hpp"

#include <algorithm>
#include <fstream>
#include <stdexcept>

namespace pueb {

namespace {

Json amps_to_json(const Vector& amps) {
    Json out = Json::array();
    for (Eigen::Index k = 0; k < amps.size(); ++k)
        out.push_back({amps(k).real(), amps(k).imag()});
    return out;
}

Json states_to_json(const std::vector<StateVector>& states) {
    Json out = Json::array();
    for (const StateVector& v : states) out.push_back(amps_to_json(v.amps));
    return out;
}

}  // namespace

Json basis_to_json(const MubBasis& basis) {
    Json j;
    j["format"] = 1;
    j["dim"] = basis.dim;
    if (basis.label.computational)
        j["label"] = {{"type", "computational"}};
    else
        j["label"] = {{"type", "structured"}, {"b", basis.label.b}};
    j["states"] = states_to_json(basis.states);
    const bool all_exps = std::all_of(basis.states.begin(), basis.states.end(),
                                      [](const StateVector& v) { return v.phase_exps.has_value(); });
    if (all_exps && !basis.states.empty()) {
        Json exps = Json::array();
        for (const StateVector& v : basis.states) exps.push_back(*v.phase_exps);
        j["phase_exps"] = std::move(exps);
    }
    return j;
}

Json ent_basis_to_json(const EntangledBasis& basis) {
    Json j;
    j["format"] = 1;
    j["dim"] = basis.d * basis.d;
    j["b"] = basis.b;
    j["s"] = basis.s;
    j["tensor_convention"] = "row-major mu×nu";
    j["states"] = states_to_json(basis.states);
    return j;
}

Json prob_table_to_json(const ProbTable& table) {
    Json j;
    j["format"] = 1;
    j["dim"] = table.dim;
    j["scheme"] = table.scheme == TableScheme::single_mub ? "single_mub" : "two_partite";
    Json settings = Json::array();
    for (const auto& [setting, probs] : table.settings)
        settings.push_back({{"id", setting.id()}, {"outcomes", probs}});
    j["settings"] = std::move(settings);
    return j;
}

ProbTable prob_table_from_json(const Json& j) {
    if (!j.contains("format") || j.at("format").get<int>() != 1)
        throw std::invalid_argument("unsupported probability-table format");
    ProbTable table;
    table.dim = j.at("dim").get<int>();
    const std::string scheme = j.at("scheme").get<std::string>();
    if (scheme == "single_mub")
        table.scheme = TableScheme::single_mub;
    else if (scheme == "two_partite")
        table.scheme = TableScheme::two_partite;
    else
        throw std::invalid_argument("unknown scheme: " + scheme);
    for (const Json& entry : j.at("settings"))
        table.settings.emplace_back(
            MeasurementSetting::parse(entry.at("id").get<std::string>()),
            entry.at("outcomes").get<std::vector<double>>());
    return table;
}

Json density_to_json(const DensityMatrix& rho) {
    Json j;
    j["format"] = 1;
    j["dim"] = rho.dim();
    Json entries = Json::array();
    for (int i = 0; i < rho.dim(); ++i)
        for (int k = 0; k < rho.dim(); ++k)
            entries.push_back({rho.mat(i, k).real(), rho.mat(i, k).imag()});
    j["entries"] = std::move(entries);
    return j;
}

DensityMatrix density_from_json(const Json& j) {
    if (!j.contains("format") || j.at("format").get<int>() != 1)
        throw std::invalid_argument("unsupported density-matrix format");
    const int dim = j.at("dim").get<int>();
    const Json& entries = j.at("entries");
    if (static_cast<int>(entries.size()) != dim * dim)
        throw std::invalid_argument("density matrix entry count does not match dim");
    Matrix mat(dim, dim);
    int idx = 0;
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k, ++idx)
            mat(i, k) = Cplx(entries[idx][0].get<double>(), entries[idx][1].get<double>());
    return {std::move(mat)};
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << j.dump(2) << "\n";
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Json j;
    in >> j;
    return j;
}

}  // namespace pueb

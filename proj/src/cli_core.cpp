#include "pueb/cli_core.hpp"

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace pueb {

namespace {

// One place for the supported-dimension table: primes for every suite,
// prime powers for the single-particle trace construction only.
bool dim_supported(int p, int n) {
    if (n == 1) return p == 3 || p == 5 || p == 7 || p == 11 || p == 13;
    if (n == 2) return p == 3 || p == 5 || p == 7;
    if (n == 3) return p == 3;
    return false;
}

}  // namespace

DimSpec parse_dim_spec(const std::string& spec) {
    DimSpec out;
    std::size_t caret = spec.find('^');
    try {
        if (caret == std::string::npos) {
            out.p = std::stoi(spec);
            out.n = 1;
        } else {
            out.p = std::stoi(spec.substr(0, caret));
            out.n = std::stoi(spec.substr(caret + 1));
        }
    } catch (const std::exception&) {
        throw std::invalid_argument("cannot parse dimension spec '" + spec +
                                    "'; expected \"p\" or \"p^n\"");
    }
    if (!dim_supported(out.p, out.n))
        throw std::invalid_argument(
            "unsupported dimension " + spec +
            "; supported: primes 3,5,7,11,13 and prime powers 3^2,5^2,7^2,3^3");
    out.d = 1;
    for (int i = 0; i < out.n; ++i) out.d *= out.p;
    if (const char* cap = std::getenv("PUEB_MAX_DIM")) {
        const int max_dim = std::atoi(cap);
        if (max_dim > 0 && out.d > max_dim)
            throw std::invalid_argument("dimension " + std::to_string(out.d) +
                                        " exceeds PUEB_MAX_DIM=" + std::to_string(max_dim));
    }
    return out;
}

bool supports_two_particle(const DimSpec& dim) {
    return dim.prime() && dim.d <= 7;
}

void RunReport::add(const std::string& name, double dev, double tol) {
    checks.push_back({name, dev, tol, dev < tol});
}

bool RunReport::all_pass() const {
    for (const Check& c : checks)
        if (!c.pass) return false;
    return true;
}

Json report_to_json(const RunReport& report) {
    Json j;
    j["command"] = report.command;
    j["dim"] = report.dim;
    Json checks = Json::array();
    for (const Check& c : report.checks)
        checks.push_back({{"name", c.name},
                          {"max_deviation", c.max_deviation},
                          {"tolerance", c.tolerance},
                          {"pass", c.pass}});
    j["checks"] = std::move(checks);
    j["notes"] = report.notes;
    j["all_pass"] = report.all_pass();
    j["wall_time_ms"] = report.wall_time_ms;
    return j;
}

void print_report_table(const RunReport& report, std::ostream& out) {
    out << "command: " << report.command << "   dim: " << report.dim << "\n";
    out << std::left << std::setw(32) << "check" << std::right << std::setw(14)
        << "max_dev" << std::setw(11) << "tolerance" << "  result\n";
    for (const Check& c : report.checks) {
        out << std::left << std::setw(32) << c.name << std::right << std::setw(14)
            << std::scientific << std::setprecision(3) << c.max_deviation
            << std::setw(11) << std::setprecision(1) << c.tolerance << "  "
            << (c.pass ? "PASS" : "FAIL") << "\n";
    }
    out.unsetf(std::ios::floatfield);
    for (const std::string& note : report.notes) out << "note: " << note << "\n";
    out << "wall_time_ms: " << report.wall_time_ms << "\n";
    out << (report.all_pass() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
}

namespace {

using Clock = std::chrono::steady_clock;

long long ms_since(Clock::time_point start) {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start)
        .count();
}

std::vector<MubBasis> bases_for(const DimSpec& dim) {
    return dim.prime() ? all_mubs(dim.d) : all_mubs(dim.field());
}

void suite_mub(const DimSpec& dim, RunReport& report) {
    const std::vector<MubBasis> bases = bases_for(dim);
    const int d = dim.d;
    report.add("mub-count", std::abs(static_cast<double>(bases.size()) - (d + 1)), 0.5);

    double gram = 0.0, cross = 0.0, resolution = 0.0;
    for (size_t i = 0; i < bases.size(); ++i) {
        gram = std::max(gram, basis_gram_dev(bases[i]));
        resolution = std::max(resolution, identity_resolution_dev(bases[i]));
        for (size_t j = i + 1; j < bases.size(); ++j)
            cross = std::max(cross, verify_unbiased(bases[i], bases[j]).max_dev);
    }
    report.add("mub-intra-gram", gram, 1e-12);
    report.add("mub-identity-resolution", resolution, 1e-12);
    report.add("mub-cross-unbiased", cross, 1e-10);

    if (dim.prime()) {
        double resid = 0.0;
        for (int b = 0; b < d; ++b) {
            const Matrix xzb = monomial(d, {1, b});
            for (int c = 0; c < d; ++c) {
                const StateVector v = mub_state(d, b, c);
                resid = std::max(
                    resid, (xzb * v.amps - omega_power(d, c) * v.amps).norm());
            }
        }
        report.add("mub-xzb-eigenrelation", resid, 1e-12);
    }
}

void suite_completeness(const DimSpec& dim, RunReport& report) {
    const int d = dim.d;
    double dev = 0.0;
    for (int b = 0; b < d; ++b) {
        std::vector<Matrix> ops;
        const Matrix xzb = monomial(d, {1, b});
        for (int alpha = 0; alpha < d; ++alpha) ops.push_back(matrix_power(xzb, alpha));
        dev = std::max(dev,
                       verify_completeness(make_spectral_data(structured_basis(d, b), ops)));
    }
    std::vector<Matrix> zops;
    for (int alpha = 0; alpha < d; ++alpha) zops.push_back(monomial(d, {0, alpha}));
    dev = std::max(dev,
                   verify_completeness(make_spectral_data(computational_basis(d), zops)));
    report.add("completeness-relation", dev, 1e-12);
}

void suite_count(const DimSpec& dim, RunReport& report) {
    const ClassifyReport rep = classify_all(dim.d, true);
    double size_dev = 0.0;
    for (int k = 0; k < 4; ++k)
        size_dev += std::abs(static_cast<double>(rep.family_sizes[k] - rep.expected_sizes[k]));
    report.add("count-family-sizes", size_dev, 0.5);
    report.add("count-reparam-bijective", rep.reparam_bijective ? 0.0 : 1.0, 0.5);
    report.add("count-z-partition", rep.z_partition_exact ? 0.0 : 1.0, 0.5);
    report.add("count-cluster-commutators", rep.max_commutator, 1e-12);
    report.add("count-cluster-hs-cross", rep.max_hs_cross, 1e-9);
    report.add("count-cluster-hs-norms", rep.max_hs_diag_dev, 1e-9);
    std::ostringstream sizes;
    sizes << "family sizes " << rep.family_sizes[0] << "/" << rep.family_sizes[1] << "/"
          << rep.family_sizes[2] << "/" << rep.family_sizes[3] << ", total "
          << rep.family_sizes[0] + rep.family_sizes[1] + rep.family_sizes[2] +
                 rep.family_sizes[3]
          << " = d^4; clusters checked: " << rep.clusters_checked;
    report.notes.push_back(sizes.str());
    if (!rep.ok()) report.notes.push_back("classification failure: " + rep.failure);
}

void suite_entangled_prime(const DimSpec& dim, RunReport& report) {
    const int d = dim.d;
    const std::vector<EntangledBasis> bases = all_ent_bases(d);

    double gram = 0.0, resolution = 0.0;
    for (const EntangledBasis& basis : bases) {
        const int dim2 = d * d;
        Matrix acc = Matrix::Zero(dim2, dim2);
        for (int i = 0; i < dim2; ++i) {
            for (int j = 0; j < dim2; ++j) {
                const Cplx g = basis.states[i].amps.dot(basis.states[j].amps);
                gram = std::max(gram, std::abs(g - (i == j ? 1.0 : 0.0)));
            }
            acc += basis.states[i].amps * basis.states[i].amps.adjoint();
        }
        resolution = std::max(
            resolution, (acc - Matrix::Identity(dim2, dim2)).cwiseAbs().maxCoeff());
    }
    report.add("ent-orthonormal", gram, 1e-12);
    report.add("ent-identity-resolution", resolution, 1e-12);

    // Reduced densities: exhaustive at d=3, deterministic stride sample of
    // at least 200 states otherwise.
    const long long total = static_cast<long long>(bases.size()) * d * d;
    const long long stride = std::max<long long>(1, total / 200);
    double reduced_dev = 0.0;
    long long checked = 0;
    const Matrix target = Matrix::Identity(d, d) / static_cast<double>(d);
    for (long long idx = 0; idx < total; idx += stride) {
        const EntangledBasis& basis = bases[idx / (d * d)];
        const StateVector& psi = basis.states[idx % (d * d)];
        reduced_dev = std::max(
            reduced_dev,
            (reduced_density(psi, Particle::mu) - target).cwiseAbs().maxCoeff());
        reduced_dev = std::max(
            reduced_dev,
            (reduced_density(psi, Particle::nu) - target).cwiseAbs().maxCoeff());
        ++checked;
    }
    report.add("ent-reduced-density", reduced_dev, 1e-12);
    report.notes.push_back("reduced-density states checked: " + std::to_string(checked) +
                           " of " + std::to_string(total));

    const OverlapReport overlaps = overlap_structure(d);
    report.add("ent-overlap-same-basis", overlaps.dev_same_basis, 1e-10);
    report.add("ent-overlap-shared-s", overlaps.dev_shared_s, 1e-10);
    report.add("ent-overlap-cross-s", overlaps.dev_cross_s, 1e-10);

    double zz_dev = 0.0, xx_dev = 0.0, resid = 0.0;
    int sbc2_mismatches = 0, label_count = 0;
    for (int s = 1; s < d; ++s)
        for (int b = 0; b < d; ++b)
            for (int c1 = 0; c1 < d; ++c1)
                for (int c2 = 0; c2 < d; ++c2) {
                    const EigenCheckReport ec = eigen_check(d, {b, s, c1, c2});
                    zz_dev = std::max(zz_dev,
                                      std::abs(ec.eig_zz - omega_power(d, -c2)));
                    resid = std::max({resid, ec.resid_zz, ec.resid_xx});
                    // Measured second eigenvalue: omega^(c1 + s b c2).
                    const Cplx expected =
                        omega_power(d, c1 + 1LL * s * b % d * c2);
                    xx_dev = std::max(xx_dev, std::abs(ec.eig_xx - expected));
                    if (!ec.xx_matches_sbc2) ++sbc2_mismatches;
                    ++label_count;
                }
    report.add("ent-zz-eigenvalue", zz_dev, 1e-12);
    report.add("ent-eigen-residuals", resid, 1e-12);
    report.add("ent-xx-eigenvalue", xx_dev, 1e-12);
    std::ostringstream note;
    note << "second eigenvalue equals omega^(c1 + s*b*c2) on all " << label_count
         << " labels; the simplified exponent s*b*c2 disagrees on " << sbc2_mismatches
         << " labels (exactly those with c1 != 0)";
    report.notes.push_back(note.str());

    double proj_dev = 0.0;
    int label_collisions = 0;
    for (int b = 0; b < d; ++b)
        for (int b1 = 0; b1 < d; ++b1)
            for (int c = 0; c < d; ++c)
                for (int c1 = 0; c1 < d; ++c1) {
                    const ProjectionResult pr = project_mub(d, b1, c, {b, 1, c1, 0});
                    proj_dev = std::max(proj_dev, pr.max_dev);
                    if (c == 0 && c1 == 0 && pr.target_b == b1) ++label_collisions;
                }
    report.add("ent-mub-projection", proj_dev, 1e-10);
    std::ostringstream collision_note;
    collision_note << "projection label b2 = b - b1 equals b1 for " << label_collisions
                   << " of " << d * d << " (b, b1) pairs (whenever 2 b1 = b mod d)";
    report.notes.push_back(collision_note.str());
}

void suite_entangled_pp(const DimSpec& dim, RunReport& report) {
    const Field f = dim.field();
    const int d = f.d();
    // Exhaustive over (b, c, b1, c1) up to d = 9; strided beyond that.
    const long long total = static_cast<long long>(d) * d * d * d;
    const long long stride = d <= 9 ? 1 : std::max<long long>(1, total / 5000);
    double dev = 0.0;
    long long checked = 0;
    for (long long idx = 0; idx < total; idx += stride) {
        long long rest = idx;
        const int c1 = static_cast<int>(rest % d);
        rest /= d;
        const int b1 = static_cast<int>(rest % d);
        rest /= d;
        const int c = static_cast<int>(rest % d);
        const int b = static_cast<int>(rest / d);
        const ProjectionResult pr = project_pp(f, f.element(b), f.element(c),
                                               f.element(b1), f.element(c1));
        dev = std::max(dev, pr.max_dev);
        ++checked;
    }
    report.add("ent-pp-projection", dev, 1e-10);
    report.notes.push_back("projection labels satisfy b1 + b2 = b, c1 + c2 = c; combos checked: " +
                           std::to_string(checked));
}

}  // namespace

RunReport run_verify(const DimSpec& dim, const std::string& suite) {
    const auto start = Clock::now();
    RunReport report;
    report.command = "verify --suite " + suite;
    report.dim = dim.d;

    const bool two_particle = supports_two_particle(dim);
    auto unsupported = [&dim](const std::string& name) {
        return std::invalid_argument("suite '" + name + "' is not available for dimension " +
                                     std::to_string(dim.d) +
                                     " (requires an odd prime <= 7)");
    };

    if (suite == "mub") {
        suite_mub(dim, report);
    } else if (suite == "completeness") {
        if (!dim.prime()) throw unsupported(suite);
        suite_completeness(dim, report);
    } else if (suite == "count") {
        if (!two_particle) throw unsupported(suite);
        suite_count(dim, report);
    } else if (suite == "entangled") {
        if (dim.prime() && !two_particle) throw unsupported(suite);
        if (dim.prime())
            suite_entangled_prime(dim, report);
        else
            suite_entangled_pp(dim, report);
    } else if (suite == "all") {
        suite_mub(dim, report);
        if (dim.prime()) suite_completeness(dim, report);
        if (two_particle) {
            suite_entangled_prime(dim, report);
            suite_count(dim, report);
        }
        if (!dim.prime()) suite_entangled_pp(dim, report);
    } else {
        throw std::invalid_argument("unknown suite '" + suite +
                                    "'; expected mub|entangled|count|completeness|all");
    }
    report.wall_time_ms = ms_since(start);
    return report;
}

RunReport run_mub_gen(const DimSpec& dim, const std::string& out_dir) {
    const auto start = Clock::now();
    RunReport report;
    report.command = "mub-gen";
    report.dim = dim.d;

    std::filesystem::create_directories(out_dir);
    const std::vector<MubBasis> bases = bases_for(dim);

    Json manifest;
    manifest["format"] = 1;
    manifest["dim"] = dim.d;
    manifest["dim_spec"] =
        dim.prime() ? std::to_string(dim.p)
                    : std::to_string(dim.p) + "^" + std::to_string(dim.n);
    if (!dim.prime()) {
        const Field f = dim.field();
        manifest["field"] = {{"p", f.p()}, {"n", f.n()}, {"modulus", f.modulus()}};
    }
    Json files = Json::array();
    for (const MubBasis& basis : bases) {
        const std::string name = "mub_" + basis.label.to_string() + ".json";
        write_json_file((std::filesystem::path(out_dir) / name).string(),
                        basis_to_json(basis));
        files.push_back(name);
    }
    manifest["files"] = std::move(files);
    write_json_file((std::filesystem::path(out_dir) / "manifest.json").string(), manifest);

    report.add("bases-written",
               std::abs(static_cast<double>(bases.size()) - (dim.d + 1)), 0.5);
    double cross = 0.0;
    for (size_t i = 0; i < bases.size(); ++i)
        for (size_t j = i + 1; j < bases.size(); ++j)
            cross = std::max(cross, verify_unbiased(bases[i], bases[j]).max_dev);
    report.add("mub-cross-unbiased", cross, 1e-10);
    report.notes.push_back("wrote " + std::to_string(bases.size() + 1) + " files to " +
                           out_dir);
    report.wall_time_ms = ms_since(start);
    return report;
}

RunReport run_tomo(const DimSpec& dim, const TomoOptions& options) {
    const auto start = Clock::now();
    RunReport report;
    report.dim = dim.d;
    const bool two = options.scheme == TableScheme::two_partite;
    report.command = std::string("tomo --scheme ") + (two ? "two_partite" : "single");

    if (two && !supports_two_particle(dim))
        throw std::invalid_argument(
            "two-particle tomography requires an odd prime dimension <= 7");

    const int d = dim.d;
    const int state_dim = two ? d * d : d;

    DensityMatrix truth;
    if (options.state_file.empty()) {
        truth = random_mixed_density(state_dim, state_dim, options.seed);
    } else {
        truth = density_from_json(read_json_file(options.state_file));
        if (truth.dim() != state_dim)
            throw std::invalid_argument(
                "state file has dimension " + std::to_string(truth.dim()) +
                " but the scheme needs " + std::to_string(state_dim));
        const auto diag = truth.validate();
        if (diag.hermiticity_dev > 1e-8 || diag.trace_dev > 1e-8 ||
            diag.min_eigenvalue < -1e-8)
            throw std::invalid_argument("state file does not hold a density matrix");
    }

    const bool exact = options.shots < 0;
    ProbTable table;
    if (exact) {
        table = dim.prime() ? exact_prob_table(truth, d, options.scheme)
                            : exact_prob_table_pp(truth, dim.field());
    } else {
        if (!dim.prime())
            throw std::invalid_argument(
                "sampled tomography is implemented for prime dimensions");
        table = sampled_prob_table(truth, d, options.scheme, options.shots, options.seed);
    }

    DensityMatrix recon;
    if (two) {
        recon = reconstruct_two(d, table);
    } else {
        recon = dim.prime() ? reconstruct_single(d, table)
                            : reconstruct_single_pp(dim.field(), table);
    }

    if (!options.out_dir.empty()) {
        std::filesystem::create_directories(options.out_dir);
        const std::filesystem::path dir(options.out_dir);
        write_json_file((dir / "true_state.json").string(), density_to_json(truth));
        write_json_file((dir / "probs.json").string(), prob_table_to_json(table));
        write_json_file((dir / "reconstructed.json").string(), density_to_json(recon));
    }

    const int expected_settings = two ? d * d + d + 1 : d + 1;
    report.add("settings-count",
               std::abs(static_cast<double>(table.settings.size()) - expected_settings),
               0.5);
    double norm_dev = 0.0;
    for (const auto& [setting, probs] : table.settings) {
        double sum = 0.0;
        for (double p : probs) sum += p;
        norm_dev = std::max(norm_dev, std::abs(sum - 1.0));
    }
    report.add("prob-normalization", norm_dev, 1e-10);

    const auto diag = recon.validate();
    report.add("recon-hermiticity", diag.hermiticity_dev, 1e-10);
    report.add("recon-trace", diag.trace_dev, 1e-10);

    const double err = (recon.mat - truth.mat).cwiseAbs().maxCoeff();
    if (exact) {
        report.add("roundtrip-error", err, 1e-10);
    } else {
        std::ostringstream note;
        note << "sampled reconstruction: shots " << options.shots
             << ", max-norm error " << std::scientific << std::setprecision(3) << err
             << ", min eigenvalue " << diag.min_eigenvalue
             << " (raw reconstruction, not projected to the PSD cone)";
        report.notes.push_back(note.str());
    }
    report.notes.push_back("distinct measurement settings used: " +
                           std::to_string(table.settings.size()));
    report.wall_time_ms = ms_since(start);
    return report;
}

}  // namespace pueb

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "pueb/io.hpp"

namespace pueb {

/// Parsed "p" or "p^n" dimension string, checked against the supported
/// set: primes {3,5,7,11,13} (two-particle operations {3,5,7}), prime
/// powers {9,25,27,49} single-particle only. PUEB_MAX_DIM, when set, caps d.
struct DimSpec {
    int p = 0, n = 1, d = 0;
    bool prime() const { return n == 1; }
    Field field() const { return Field::make(p, n); }
};
DimSpec parse_dim_spec(const std::string& spec);
bool supports_two_particle(const DimSpec& dim);

struct Check {
    std::string name;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct RunReport {
    std::string command;
    int dim = 0;
    std::vector<Check> checks;
    std::vector<std::string> notes;
    long long wall_time_ms = 0;

    void add(const std::string& name, double dev, double tol);
    bool all_pass() const;
};

Json report_to_json(const RunReport& report);
void print_report_table(const RunReport& report, std::ostream& out);

/// Verification suites: mub | entangled | count | completeness | all.
/// For prime-power dims only mub and entangled (projection additivity)
/// apply; requesting an inapplicable suite throws.
RunReport run_verify(const DimSpec& dim, const std::string& suite);

/// Writes the d+1 basis files plus manifest.json under out_dir.
RunReport run_mub_gen(const DimSpec& dim, const std::string& out_dir);

struct TomoOptions {
    TableScheme scheme = TableScheme::single_mub;
    std::uint64_t seed = 0;
    std::string state_file;   // empty: random state from seed
    long long shots = -1;     // -1: exact probabilities
    std::string out_dir;
};

/// Simulates the scheme's measurements on the chosen state, reconstructs,
/// and writes true_state/probs/reconstructed JSON plus a report.
RunReport run_tomo(const DimSpec& dim, const TomoOptions& options);

}  // namespace pueb

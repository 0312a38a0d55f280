#pragma once

// Batch front-end plumbing: problem-spec files, dispatch to the checkers and
// the oracle, and deterministic text / machine-readable reports.

#include "latsamp/criteria.hpp"
#include "latsamp/oracle.hpp"

#include <optional>
#include <string>

namespace latsamp {

enum class Question { Tight, Orthogonal };

struct ProblemSpec {
    std::size_t dimension = 0;
    Question question = Question::Tight;
    Band band_e{0};
    std::optional<Band> band_f;
    LatticeSystem system_a;
    std::optional<LatticeSystem> system_b;
    SamplingConfig oracle;
};

// Raised with a located message ("system_a[1].matrix: ...") on invalid input.
class SpecError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

ProblemSpec parse_spec(const std::string& path);
ProblemSpec parse_spec_json(const std::string& text);
std::string spec_to_json(const ProblemSpec& spec);

struct RunFlags {
    bool verify = false;
    std::optional<long> radius;
    std::optional<int> trials;
    std::optional<std::uint64_t> seed;
    std::optional<double> tol;
};

struct Report {
    Question question;
    bool property_holds = false;
    VerdictMode mode = VerdictMode::Exact;
    std::optional<Rat> constant;                           // K
    std::vector<std::pair<std::size_t, Rat>> per_lattice;  // (j, K_j) for tightness
    std::vector<std::pair<std::size_t, bool>> per_lattice_orthogonal;

    // Witness (present iff the property fails).
    std::optional<std::size_t> witness_lattice;
    std::optional<RatVec> witness_alpha;
    std::optional<RatVec> witness_shift;  // integer z, k or m
    std::optional<ShiftVector> witness_group;
    std::optional<std::string> witness_sum;
    std::optional<Rat> witness_overlap_measure;

    // Oracle section (present iff verify ran).
    bool verified = false;
    bool oracle_agrees = true;
    std::optional<double> oracle_deviation;  // tightness: max |K-hat - K| / K
    std::optional<double> oracle_spread;
    std::optional<double> oracle_magnitude;  // orthogonality: max normalized |corr|
    SamplingConfig config;
};

Report run(const ProblemSpec& spec, const RunFlags& flags);

std::string report_to_text(const Report& r);
std::string report_to_json(const Report& r);

// 0 property holds; 1 property fails; 2 input error; 3 criteria/oracle
// disagreement beyond tolerance.
int exit_code(const Report& r);

}  // namespace latsamp

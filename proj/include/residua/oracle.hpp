#pragma once

#include <cstdint>
#include <random>

#include "residua/date.hpp"
#include "residua/program.hpp"

namespace residua {

struct Mismatch {
    ParamTrace trace;
    IdName id;
    GroundTrace ground_a; // the projection branch that disagreed
    GroundTrace ground_b; // its silenced counterpart fed to B
    Verdict verdict_a;
    Verdict verdict_b;
};

/// Bounded-trace equivalence evidence: `checked` counts (trace, id)
/// pairs; the equivalence holds on the enumerated set iff `mismatches`
/// is empty.
struct EquivResult {
    std::size_t checked = 0;
    std::vector<Mismatch> mismatches;
    std::size_t bound = 0;

    bool equivalent() const { return mismatches.empty(); }
};

/// Brute-force bounded check that dA and dB judge the program alike: for
/// every enumerated parametrised trace and every identifier, every
/// branch of the static projection (must: include, not-may: exclude,
/// may: both) must get the same OK/VIOLATION classification from both.
///
/// `silenced_b` applies silencing on the B side: each branch's silenced
/// counterpart (the same positions minus silenced pairs) is what dB
/// runs, pairing corresponding traces of the two instrumentations.
EquivResult equiv_on_program(const DateSpec& da, const DateSpec& db,
                             const ProgramModel& p, std::size_t bound,
                             const SilencedSet& silenced_b = {});

/// Size knobs for the random generator.
struct GenConfig {
    std::uint64_t seed = 0;
    std::size_t max_states = 5;
    std::size_t max_events = 4;
    std::size_t max_int_vars = 2;
    std::size_t max_transitions = 10;
    std::size_t max_nodes = 5;
    std::size_t max_edges = 10;
    std::size_t trace_bound = 6;
};

/// Deterministic-by-construction random DATE plus a random program
/// model over (mostly) its alphabet. Same seed, same pair; both
/// serialize and reparse.
std::pair<DateSpec, ProgramModel> random_instance(const GenConfig& cfg);

/// Random ground trace over d's alphabet, for the theorem spot checks.
GroundTrace random_ground_trace(const DateSpec& d, std::mt19937_64& rng,
                                std::size_t max_len);

} // namespace residua

#pragma once

// Orbit iteration with exact cycle detection, for arbitrary congruential
// maps and in particular for the long-running exploration of rho's orbit of
// 8, whose infinitude is an open conjecture. Trajectories may grow without
// bound, so the detector must run in bounded memory: Brent's algorithm over
// big-integer states, helped by a bounded hash window that catches short
// pre-periods quickly and, for certified bijections, by the fact that any
// cycle must pass through the seed.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "cgr/congruential.hpp"

namespace cgr {

struct Extremum {
    unsigned long step = 0;
    BigInt value;
    bool is_minimum = false;  // false = local maximum

    bool operator==(const Extremum&) const = default;
};

// Running summary of all local extrema seen, kept even when the full list
// has been capped. The hash folds (step, value mod 2^64) pairs so two runs
// can be compared for identical extrema streams without storing them.
struct ExtremaDigest {
    unsigned long minima_count = 0;
    unsigned long maxima_count = 0;
    unsigned long smallest_step = 0;
    BigInt smallest_value;
    unsigned long largest_step = 0;
    BigInt largest_value;
    std::uint64_t stream_hash = 1469598103934665603ull;  // FNV-1a basis

    void fold(const Extremum& e);
    bool operator==(const ExtremaDigest&) const = default;
};

struct CycleOutcome {
    unsigned long length = 0;
    unsigned long entry_step = 0;  // first step whose value recurs

    bool operator==(const CycleOutcome&) const = default;
};

enum class BoundKind { step_bound, value_bound };

struct OpenOutcome {
    BoundKind hit = BoundKind::step_bound;

    bool operator==(const OpenOutcome&) const = default;
};

using OrbitOutcome = std::variant<CycleOutcome, OpenOutcome>;

struct OrbitRecord {
    BigInt seed;
    // For open outcomes: map applications performed. For cycles: the
    // canonical prefix entry_step + length (detection may have walked
    // further before pinning the entry down).
    unsigned long steps = 0;
    std::optional<std::vector<BigInt>> values;  // positions 0..steps (open) or 0..steps-1 (cycle)
    OrbitOutcome outcome{OpenOutcome{}};
    std::vector<Extremum> extrema;  // first extrema_cap of them
    ExtremaDigest digest;
    BigInt final_value;

    const CycleOutcome* cycle() const { return std::get_if<CycleOutcome>(&outcome); }
    const OpenOutcome* open() const { return std::get_if<OpenOutcome>(&outcome); }
};

struct OrbitOptions {
    unsigned long step_bound = 1000000;
    std::optional<BigInt> value_bound = pow2(4096);  // nullopt = unbounded
    bool store_values = false;
    std::size_t hash_window = 1 << 15;  // distinct early values remembered
    std::size_t extrema_cap = 1024;     // full extrema kept before capping
};

// Iterates f from seed until a value recurs or a bound is hit. A reported
// cycle is re-verified by direct iteration before being returned.
OrbitRecord orbit(const CongruentialMap& f, const BigInt& seed, const OrbitOptions& opts = {});

// Streams one CSV row per trajectory position: step, bit length of the
// value, local-minimum flag, local-maximum flag (0 for the endpoints).
void orbit_csv(const CongruentialMap& f, const BigInt& seed, unsigned long steps,
               std::ostream& out);

// Stepwise facts behind the orbit structure of the associator: pulling back
// through alpha, odd n lifts to 2n+1 (odd, larger), even n > 0 strictly
// drops without hitting 0, and 0 is fixed.
struct AlphaOrbitReport {
    BigInt checked_up_to;
    std::vector<std::pair<BigInt, std::string>> failures;  // n, what broke

    bool all_hold() const { return failures.empty(); }
};

AlphaOrbitReport verify_alpha_orbit_structure(const BigInt& n_max);

// lambda^k(n) = rho^k(n+1) - 1: conjugation by the successor, checked
// pointwise on a rectangle of (k, n).
struct SuccNaturalityReport {
    unsigned long k_max = 0;
    BigInt n_max;
    std::optional<std::pair<unsigned long, BigInt>> first_mismatch;  // (k, n)

    bool all_hold() const { return !first_mismatch.has_value(); }
};

SuccNaturalityReport verify_succ_naturality(unsigned long k_max, const BigInt& n_max);

struct CheckpointError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CampaignOptions {
    BigInt seed = 8;
    unsigned long step_bound = 1000000;
    std::optional<BigInt> value_bound;  // unbounded by default: campaign mode
    std::string checkpoint_path;        // empty = no checkpointing
    unsigned long checkpoint_every = 100000;
    bool resume = false;  // continue from checkpoint_path if it exists
};

struct CampaignResult {
    OrbitRecord record;          // rho trajectory from seed
    BigInt twin_final;           // lambda trajectory value from seed - 1
    unsigned long resumed_from = 0;
    bool linkage_verified = false;  // twin = main - 1 held at every checkpoint
};

// Runs rho from seed and lambda from seed - 1 in lockstep, asserting the
// successor linkage at every checkpoint, writing resumable plain-text
// checkpoints. A cycle on the main trajectory is reported as such (for seed
// 8 that would be a refutation of the open conjecture; callers are expected
// to shout). Corrupt checkpoint files raise CheckpointError.
CampaignResult occ_campaign(const CampaignOptions& opts);

}  // namespace cgr

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "slnc/ffla.hpp"
#include "slnc/lnc.hpp"
#include "slnc/secure.hpp"

namespace slnc {

struct BuildOptions {
    // Check that the input really is secure at the claimed pair. Turning
    // this off is only for speed in trusted loops.
    bool verify_preconditions = true;
    // Refuse to start when q is below the a-priori sufficient bound. When
    // off, the scans still fail with FieldTooSmall if they run dry.
    bool enforce_field_guard = true;
};

/// Largest |A_r| over 1 <= r <= upto (0 when upto is 0).
std::size_t max_primary_count(const Network& net, std::size_t upto);

/// Q whose first `rate` columns avoid every b-span plus L_A, A in A_level;
/// the remaining columns complete a basis.
SecureCodeSpec build_fixed_pair(const LinearNetworkCode& base, std::size_t rate, std::size_t level,
                                const BuildOptions& opt = {});

/// One iteration record of the increment loop.
struct IncrementStep {
    EdgeSet set;
    Vec alpha;
    Value lambda = 0;
    Value tau = 0;                 // alpha . c* when the set was reached
    std::optional<Vec> h;          // set only when tau was 0
    std::optional<Value> xi;       // set only when c* had to be mixed
};

struct IncrementTrace {
    std::vector<EdgeSet> dependent;      // sets with alpha = 0
    std::vector<IncrementStep> steps;    // independent sets, in processing order
    Vec c_star;
    Value theta = 0;
    Vec c;
};

struct IncrementResult {
    Mat q;  // (n+1) x (n+1)
    IncrementTrace trace;
};

/// Raises the security level by one. `lower` must be the n-dimensional
/// truncation of `upper`; (q_lower^-1 * lower) must be a (rate, level) code.
IncrementResult increment_level(const LinearNetworkCode& lower, const LinearNetworkCode& upper, const Mat& q_lower,
                                std::size_t rate, std::size_t level, const BuildOptions& opt = {});

struct FixedDimensionResult {
    Mat q;
    std::vector<SecureCodeSpec> members;  // (n - r, r) for r = 0 .. n
};

/// One Q serving every pair on the line rate + level = n.
FixedDimensionResult fixed_dimension(const LinearNetworkCode& base, const BuildOptions& opt = {});

/// Specs at (rate, r) for r = 0 .. C_min - rate, built by repeated increments
/// from the rate-dimensional truncation of `seed`.
CodeFamily family_fixed_rate(const LinearNetworkCode& seed, std::size_t rate, const BuildOptions& opt = {});

enum class RegionTag { Construction2, Construction3 };

std::string to_string(RegionTag tag);
/// Accepts "c2", "c3", "construction-2", "construction-3". Construction 1 is
/// rejected with InputError.
RegionTag parse_region_tag(const std::string& s);

struct RegionFamily {
    RegionTag tag;
    std::map<std::pair<std::size_t, std::size_t>, SecureCodeSpec> members;  // keyed by (rate, level)
};

/// Every pair with rate + level <= C_min. Requires q > max(|T|, |A_r|) for
/// 1 <= r <= C_min - 1 when the guard is on.
RegionFamily region_family(const LinearNetworkCode& seed, RegionTag tag, const BuildOptions& opt = {});

bool is_local_encoding_preserving(const RegionFamily& family);

/// Deterministic C_min-dimensional decodable code from edge-disjoint path
/// systems, one per sink. Needs q > |T| to be guaranteed to succeed.
LinearNetworkCode greedy_multicast_code(std::shared_ptr<const Network> net, Field f);

}  // namespace slnc

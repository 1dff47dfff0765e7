#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "slnc/ffla.hpp"
#include "slnc/lnc.hpp"
#include "slnc/netgraph.hpp"

namespace slnc {

struct SetVerdict {
    EdgeSet set;
    bool pass = true;
    std::string witness;  // empty on pass
};

enum class Method { Subspace, Exhaustive };

struct SecurityReport {
    std::size_t rate = 0, level = 0;
    std::vector<SetVerdict> verdicts;  // sorted by edge set
    bool secure = true;
    Method method = Method::Subspace;

    /// First failing set, or nullptr.
    const SetVerdict* first_failure() const;
};

/// <b_1..b_rate> meets L_A only in 0 for every A in the primary sets of size
/// `level`. Q's columns are the b_i.
SecurityReport check_secure_subspace(const LinearNetworkCode& base, const Mat& q, std::size_t rate,
                                     std::size_t level);
SecurityReport check_secure_subspace(const SecureCodeSpec& spec);

/// Same criterion for an arbitrary list of wiretap sets.
SecurityReport check_subspace_over(const LinearNetworkCode& base, std::span<const Vec> message_basis,
                                   std::size_t rate, std::size_t level, const std::vector<EdgeSet>& sets);

enum class Scope { PrimaryOnly, AllSubsets };

/// Brute force over every source input (m, k) of the deployed code: for each
/// wiretap set, the message must be uniformly distributed given every
/// attainable observation. Throws BudgetExceeded when q^dim > budget.
SecurityReport check_secure_exhaustive(const LinearNetworkCode& deployed, std::size_t rate, std::size_t level,
                                       Scope scope = Scope::PrimaryOnly, std::uint64_t budget = 1'000'000);

/// Every nonempty edge subset of size <= r, ordered by size then lexicographically.
std::vector<EdgeSet> subsets_up_to(const Network& net, std::size_t r);

/// The subspace verdict over the primary sets of size `level` agrees with the
/// verdict over all edge subsets of size <= level.
bool check_primary_sufficiency(const LinearNetworkCode& base, const Mat& q, std::size_t rate, std::size_t level);

/// Nonzero (alpha, beta) with sum alpha_i b_i = sum beta_e f_e != 0, scaled so
/// that the first nonzero alpha is 1. beta follows the order of `set`.
struct Certificate {
    EdgeSet set;
    Vec alpha;
    Vec beta;
};

struct WiretapClassification {
    std::vector<EdgeSet> dependent;          // intersect the message space trivially
    std::vector<Certificate> independent;    // intersect it in one dimension
};

/// Splits the primary sets of size `level` by how they meet <b_1..b_rate>.
/// Throws PreconditionFailed unless the b_i are secure at level - 1.
WiretapClassification classify_wiretap_sets(const LinearNetworkCode& base, std::span<const Vec> message_basis,
                                            std::size_t level);

/// Forbidden last-row extensions for one wiretap set: {c : alpha . c = lambda}.
struct ForbiddenHyperplane {
    EdgeSet set;
    Vec alpha;
    Value lambda = 0;

    bool contains(const Vec& c) const { return dot(alpha, c) == lambda; }
};

/// lambda = sum beta_e f_{e,n+1} from the (n+1)-dimensional extension.
/// Throws InputError if the certificate has alpha = 0.
ForbiddenHyperplane gamma_hyperplane(const Certificate& cert, const LinearNetworkCode& extended);

}  // namespace slnc

#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "slnc/ffla.hpp"
#include "slnc/netgraph.hpp"

namespace slnc {

/// An n-dimensional linear network code: one |In(v)| x |Out(v)| local kernel
/// per non-sink node (the source's rows are the n imaginary inputs), plus the
/// global kernels derived from them. Immutable after construction.
class LinearNetworkCode {
public:
    /// `kernels` is indexed by node; sinks must carry an empty (0-column)
    /// matrix. Throws DimensionMismatch on a shape error.
    LinearNetworkCode(std::shared_ptr<const Network> net, Field f, std::size_t dim, std::vector<Mat> kernels);

    /// All-zero kernels of the right shapes.
    static LinearNetworkCode zero(std::shared_ptr<const Network> net, Field f, std::size_t dim);

    const Network& network() const noexcept { return *net_; }
    const std::shared_ptr<const Network>& network_ptr() const noexcept { return net_; }
    const Field& field() const noexcept { return field_; }
    std::size_t dim() const noexcept { return dim_; }

    const Mat& kernel(NodeIndex v) const { return kernels_[v]; }
    const std::vector<Mat>& kernels() const noexcept { return kernels_; }

    /// f_e as a column vector of length dim().
    Vec global_kernel(EdgeIndex e) const { return globals_.column(e); }
    /// dim() x |E| matrix whose column e is f_e.
    const Mat& global_kernels() const noexcept { return globals_; }
    /// F_t = [f_e : e in In(t)].
    Mat sink_matrix(NodeIndex t) const;
    /// L_A = <f_e : e in A>.
    Subspace span_of(const EdgeSet& a) const;

private:
    std::shared_ptr<const Network> net_;
    Field field_;
    std::size_t dim_;
    std::vector<Mat> kernels_;
    Mat globals_;
};

/// Global kernels by the ancestral recursion, one column per edge.
Mat compute_global_kernels(const Network& net, const Field& f, std::size_t dim, const std::vector<Mat>& kernels);

/// Symbols y_e for source input x, computed edge by edge from the local
/// kernels (not from the global kernels).
std::vector<Value> transmit(const LinearNetworkCode& code, const Vec& x);

bool is_decodable(const LinearNetworkCode& code);

/// Recovers x from the symbols on In(t), ordered as In(t). Throws
/// PreconditionFailed if F_t is rank deficient or y is inconsistent.
Vec decode_at_sink(const LinearNetworkCode& code, NodeIndex t, const std::vector<Value>& y);

/// Q * code: the source kernel becomes Q * K_s, every other kernel is kept.
/// Q must be m x dim() with m <= dim().
LinearNetworkCode transform(const LinearNetworkCode& code, const Mat& q);

/// [I_n | 0] * code.
LinearNetworkCode truncate(const LinearNetworkCode& code, std::size_t n);

/// True when every non-source, non-sink node has identical kernels.
bool same_intermediate_kernels(const LinearNetworkCode& a, const LinearNetworkCode& b);

/// A secure code: base code C_n, an invertible Q whose first `rate` columns
/// span the message subspace, and the claimed (rate, level). The deployed code
/// is Q^{-1} * C_n.
class SecureCodeSpec {
public:
    /// Throws DimensionMismatch unless Q is dim x dim and rate + level == dim,
    /// SingularMatrix if Q is not invertible.
    SecureCodeSpec(LinearNetworkCode base, Mat q, std::size_t rate, std::size_t level);

    const LinearNetworkCode& base() const noexcept { return base_; }
    const Mat& q() const noexcept { return q_; }
    std::size_t rate() const noexcept { return rate_; }
    std::size_t level() const noexcept { return level_; }
    std::size_t dim() const noexcept { return base_.dim(); }
    /// b_1 ... b_rate as columns.
    std::vector<Vec> message_basis() const;
    const LinearNetworkCode& deployed() const noexcept { return deployed_; }

private:
    LinearNetworkCode base_;
    Mat q_;
    std::size_t rate_, level_;
    LinearNetworkCode deployed_;
};

/// Ordered members sharing one network.
struct CodeFamily {
    std::shared_ptr<const Network> network;
    std::vector<SecureCodeSpec> members;
};

/// Members' deployed codes agree on every intermediate-node kernel.
bool is_local_encoding_preserving(const CodeFamily& family);

/// The codes [I_n | 0] * seed for n = 1 .. seed.dim(), each as a (n, 0)
/// member with Q = I. Throws PreconditionFailed if the seed is not decodable.
CodeFamily truncation_family(const LinearNetworkCode& seed);

}  // namespace slnc

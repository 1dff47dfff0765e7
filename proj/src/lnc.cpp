#include "slnc/lnc.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "slnc/error.hpp"

namespace slnc {

namespace {

std::size_t expected_rows(const Network& net, std::size_t dim, NodeIndex v) {
    return v == net.source() ? dim : net.in_edges(v).size();
}

std::size_t expected_cols(const Network& net, NodeIndex v) { return net.out_edges(v).size(); }

void check_shapes(const Network& net, const Field& f, std::size_t dim, const std::vector<Mat>& kernels) {
    if (kernels.size() != net.node_count())
        throw DimensionMismatch("expected " + std::to_string(net.node_count()) + " local kernels, got " +
                                std::to_string(kernels.size()));
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        const Mat& k = kernels[v];
        if (!(k.field() == f)) throw FieldMismatch();
        if (k.rows() != expected_rows(net, dim, v) || k.cols() != expected_cols(net, v))
            throw DimensionMismatch("kernel at node '" + net.node_name(v) + "' should be " +
                                    std::to_string(expected_rows(net, dim, v)) + "x" +
                                    std::to_string(expected_cols(net, v)) + ", got " + std::to_string(k.rows()) +
                                    "x" + std::to_string(k.cols()));
    }
}

// Position of e within Out(tail(e)), i.e. the kernel column that produces it.
std::size_t out_position(const Network& net, EdgeIndex e) {
    const auto& out = net.out_edges(net.edge(e).tail);
    return static_cast<std::size_t>(std::find(out.begin(), out.end(), e) - out.begin());
}

}  // namespace

Mat compute_global_kernels(const Network& net, const Field& f, std::size_t dim, const std::vector<Mat>& kernels) {
    check_shapes(net, f, dim, kernels);
    Mat g(f, dim, net.edge_count());
    for (EdgeIndex e : net.edge_order()) {
        const NodeIndex u = net.edge(e).tail;
        const Mat& k = kernels[u];
        const std::size_t col = out_position(net, e);
        if (u == net.source()) {
            for (std::size_t i = 0; i < dim; ++i) g(i, e) = k(i, col);
            continue;
        }
        const auto& in = net.in_edges(u);
        for (std::size_t j = 0; j < in.size(); ++j) {
            Value c = k(j, col);
            if (c == 0) continue;
            for (std::size_t i = 0; i < dim; ++i) g(i, e) = f.add(g(i, e), f.mul(c, g(i, in[j])));
        }
    }
    return g;
}

LinearNetworkCode::LinearNetworkCode(std::shared_ptr<const Network> net, Field f, std::size_t dim,
                                     std::vector<Mat> kernels)
    : net_(std::move(net)),
      field_(f),
      dim_(dim),
      kernels_(std::move(kernels)),
      globals_(compute_global_kernels(*net_, field_, dim_, kernels_)) {}

LinearNetworkCode LinearNetworkCode::zero(std::shared_ptr<const Network> net, Field f, std::size_t dim) {
    std::vector<Mat> k;
    k.reserve(net->node_count());
    for (NodeIndex v = 0; v < net->node_count(); ++v)
        k.emplace_back(f, expected_rows(*net, dim, v), expected_cols(*net, v));
    return LinearNetworkCode(std::move(net), f, dim, std::move(k));
}

Mat LinearNetworkCode::sink_matrix(NodeIndex t) const {
    const auto& in = net_->in_edges(t);
    Mat m(field_, dim_, in.size());
    for (std::size_t j = 0; j < in.size(); ++j)
        for (std::size_t i = 0; i < dim_; ++i) m(i, j) = globals_(i, in[j]);
    return m;
}

Subspace LinearNetworkCode::span_of(const EdgeSet& a) const {
    Subspace s(field_, dim_);
    for (EdgeIndex e : a) s.extend(global_kernel(e));
    return s;
}

std::vector<Value> transmit(const LinearNetworkCode& code, const Vec& x) {
    if (x.size() != code.dim())
        throw DimensionMismatch("source input has length " + std::to_string(x.size()) + ", code dimension is " +
                                std::to_string(code.dim()));
    if (!(x.field() == code.field())) throw FieldMismatch();
    const Network& net = code.network();
    const Field& f = code.field();
    std::vector<Value> y(net.edge_count(), 0);
    for (EdgeIndex e : net.edge_order()) {
        const NodeIndex u = net.edge(e).tail;
        const Mat& k = code.kernel(u);
        const std::size_t col = out_position(net, e);
        Value s = 0;
        if (u == net.source()) {
            for (std::size_t i = 0; i < code.dim(); ++i) s = f.add(s, f.mul(x[i], k(i, col)));
        } else {
            const auto& in = net.in_edges(u);
            for (std::size_t j = 0; j < in.size(); ++j) s = f.add(s, f.mul(y[in[j]], k(j, col)));
        }
        y[e] = s;
    }
    return y;
}

bool is_decodable(const LinearNetworkCode& code) {
    for (NodeIndex t : code.network().sinks())
        if (rank(code.sink_matrix(t)) != code.dim()) return false;
    return true;
}

Vec decode_at_sink(const LinearNetworkCode& code, NodeIndex t, const std::vector<Value>& y) {
    const Mat ft = code.sink_matrix(t);
    const std::size_t n = code.dim(), m = ft.cols();
    if (y.size() != m)
        throw DimensionMismatch("expected " + std::to_string(m) + " received symbols, got " + std::to_string(y.size()));
    // x * F_t = y  <=>  F_t^T x^T = y^T; eliminate on the augmented system.
    Mat aug(code.field(), m, n + 1);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug(r, c) = ft(c, r);
        if (y[r] >= code.field().order()) throw InputError("received symbol out of field range");
        aug(r, n) = y[r];
    }
    Echelon e = rref(std::move(aug));
    if (!e.pivots.empty() && e.pivots.back() == n) throw PreconditionFailed("received symbols are inconsistent");
    if (e.pivots.size() != n)
        throw PreconditionFailed("sink '" + code.network().node_name(t) + "' cannot decode: rank deficient");
    Vec x(code.field(), n);
    for (std::size_t r = 0; r < n; ++r) x[e.pivots[r]] = e.reduced(r, n);
    return x;
}

LinearNetworkCode transform(const LinearNetworkCode& code, const Mat& q) {
    if (q.cols() != code.dim() || q.rows() > code.dim())
        throw DimensionMismatch("transform matrix must be m x " + std::to_string(code.dim()) + " with m <= " +
                                std::to_string(code.dim()));
    std::vector<Mat> k = code.kernels();
    const NodeIndex s = code.network().source();
    k[s] = q * k[s];
    return LinearNetworkCode(code.network_ptr(), code.field(), q.rows(), std::move(k));
}

LinearNetworkCode truncate(const LinearNetworkCode& code, std::size_t n) {
    if (n > code.dim()) throw DimensionMismatch("cannot truncate to a larger dimension");
    std::vector<Mat> k = code.kernels();
    const NodeIndex s = code.network().source();
    k[s] = k[s].top_rows(n);
    return LinearNetworkCode(code.network_ptr(), code.field(), n, std::move(k));
}

bool same_intermediate_kernels(const LinearNetworkCode& a, const LinearNetworkCode& b) {
    const Network& net = a.network();
    if (a.network_ptr() != b.network_ptr() && (net.node_count() != b.network().node_count())) return false;
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        if (v == net.source() || net.is_sink(v)) continue;
        if (!(a.kernel(v) == b.kernel(v))) return false;
    }
    return true;
}

SecureCodeSpec::SecureCodeSpec(LinearNetworkCode base, Mat q, std::size_t rate, std::size_t level)
    : base_(std::move(base)),
      q_(std::move(q)),
      rate_(rate),
      level_(level),
      deployed_([&] {
          if (q_.rows() != base_.dim() || q_.cols() != base_.dim())
              throw DimensionMismatch("Q must be " + std::to_string(base_.dim()) + "x" + std::to_string(base_.dim()));
          if (rate_ + level_ != base_.dim())
              throw DimensionMismatch("rate + level must equal the code dimension " + std::to_string(base_.dim()));
          return transform(base_, invert(q_));
      }()) {}

std::vector<Vec> SecureCodeSpec::message_basis() const {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < rate_; ++i) b.push_back(q_.column(i));
    return b;
}

bool is_local_encoding_preserving(const CodeFamily& family) {
    for (std::size_t i = 1; i < family.members.size(); ++i)
        if (!same_intermediate_kernels(family.members[0].deployed(), family.members[i].deployed())) return false;
    return true;
}

CodeFamily truncation_family(const LinearNetworkCode& seed) {
    if (!is_decodable(seed)) throw PreconditionFailed("seed code is not decodable");
    CodeFamily fam{seed.network_ptr(), {}};
    for (std::size_t n = 1; n <= seed.dim(); ++n)
        fam.members.emplace_back(truncate(seed, n), Mat::identity(seed.field(), n), n, 0);
    return fam;
}

}  // namespace slnc

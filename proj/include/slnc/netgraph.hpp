#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace slnc {

using NodeIndex = std::size_t;
using EdgeIndex = std::size_t;

struct Edge {
    std::string id;
    NodeIndex tail;
    NodeIndex head;
};

/// Plain description of a network, as read from a file.
struct NetworkDesc {
    std::vector<std::string> nodes;  // optional explicit declarations
    struct EdgeDecl {
        std::string id, tail, head;
        std::size_t line = 0;  // source line, 0 when not from a file
    };
    std::vector<EdgeDecl> edges;
    std::string source;
    std::vector<std::string> sinks;
};

/// Per-sink minimum cut capacities.
struct CutProfile {
    std::map<std::string, std::size_t> per_sink;
    std::size_t cmin = 0;
};

/// A set of edges held as sorted, duplicate-free declaration indices.
/// Ordering is lexicographic on those indices.
class EdgeSet {
public:
    EdgeSet() = default;
    /// Sorts; throws InputError on duplicates.
    explicit EdgeSet(std::vector<EdgeIndex> edges);

    std::size_t size() const noexcept { return e_.size(); }
    bool empty() const noexcept { return e_.empty(); }
    bool contains(EdgeIndex e) const;
    const std::vector<EdgeIndex>& indices() const noexcept { return e_; }
    auto begin() const noexcept { return e_.begin(); }
    auto end() const noexcept { return e_.end(); }

    friend auto operator<=>(const EdgeSet&, const EdgeSet&) = default;

private:
    std::vector<EdgeIndex> e_;
};

/// Single-source acyclic multigraph with unit edge capacities. Immutable once
/// built; construction validates the structural invariants.
class Network {
public:
    /// Throws NetworkError on a cycle, a source with incoming edges, a sink
    /// with outgoing edges, duplicate edge ids, or unknown node references.
    explicit Network(const NetworkDesc& desc);

    std::size_t node_count() const noexcept { return names_.size(); }
    std::size_t edge_count() const noexcept { return edges_.size(); }
    const std::string& node_name(NodeIndex v) const { return names_[v]; }
    NodeIndex node(const std::string& name) const;
    const Edge& edge(EdgeIndex e) const { return edges_[e]; }
    EdgeIndex edge_index(const std::string& id) const;
    const std::vector<Edge>& edges() const noexcept { return edges_; }

    NodeIndex source() const noexcept { return source_; }
    const std::vector<NodeIndex>& sinks() const noexcept { return sinks_; }
    bool is_sink(NodeIndex v) const;
    /// Cut capacities computed during construction.
    const CutProfile& cut_profile() const noexcept { return profile_; }
    std::size_t cmin() const noexcept { return profile_.cmin; }

    /// In/Out lists in edge declaration order.
    const std::vector<EdgeIndex>& in_edges(NodeIndex v) const { return in_[v]; }
    const std::vector<EdgeIndex>& out_edges(NodeIndex v) const { return out_[v]; }

    /// Ancestral edge order: edges sorted by the topological rank of their
    /// tail, ties broken by declaration order.
    const std::vector<EdgeIndex>& edge_order() const noexcept { return edge_order_; }
    /// Nodes in topological order (stable by first appearance).
    const std::vector<NodeIndex>& node_order() const noexcept { return node_order_; }

    /// Comma-joined edge ids, e.g. "e1,e4".
    std::string format(const EdgeSet& a) const;
    /// Parses "e1,e4" into an EdgeSet.
    EdgeSet parse_edge_set(const std::string& csv) const;

private:
    std::vector<std::string> names_;
    std::map<std::string, NodeIndex> node_ix_;
    std::vector<Edge> edges_;
    std::map<std::string, EdgeIndex> edge_ix_;
    NodeIndex source_ = 0;
    std::vector<NodeIndex> sinks_;
    std::vector<bool> sink_flag_;
    std::vector<std::vector<EdgeIndex>> in_, out_;
    std::vector<EdgeIndex> edge_order_;
    std::vector<NodeIndex> node_order_;
    CutProfile profile_;

    // Memoised primary-set enumerations, keyed by r.
    struct Cache {
        std::mutex mu;
        std::map<std::size_t, std::vector<EdgeSet>> primary;
    };
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
    friend std::vector<EdgeSet> enumerate_primary_sets(const Network&, std::size_t);
};

/// Recomputes acyclicity/degree checks and the per-sink cut capacities.
CutProfile validate(const Network& net);

/// Unit-capacity max-flow value from the source to node t.
std::size_t mincut_to_node(const Network& net, NodeIndex t);
/// Capacity of a minimum cut between the source and the edge subset A.
std::size_t mincut_to_edges(const Network& net, const EdgeSet& a);
/// The minimum cut between the source and A that lies closest to the source.
EdgeSet primary_min_cut(const Network& net, const EdgeSet& a);
bool is_primary(const Network& net, const EdgeSet& a);
/// Min-cut capacity to A equals |A|.
bool is_regular(const Network& net, const EdgeSet& a);
/// All primary edge subsets of size r in lexicographic order; empty for r = 0.
/// Throws InputError when r exceeds cmin.
std::vector<EdgeSet> enumerate_primary_sets(const Network& net, std::size_t r);

/// Every size-k subset of {0..n-1}, lexicographic. Exposed for the enumeration
/// code in the verifiers.
std::vector<EdgeSet> all_subsets_of_size(std::size_t n, std::size_t k);

}  // namespace slnc

#include "slnc/netgraph.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <limits>
#include <queue>
#include <sstream>

#include "slnc/error.hpp"

namespace slnc {

EdgeSet::EdgeSet(std::vector<EdgeIndex> edges) : e_(std::move(edges)) {
    std::sort(e_.begin(), e_.end());
    if (std::adjacent_find(e_.begin(), e_.end()) != e_.end()) throw InputError("duplicate edge in edge set");
}

bool EdgeSet::contains(EdgeIndex e) const { return std::binary_search(e_.begin(), e_.end(), e); }

namespace {

// Residual graph for unit-capacity max-flow with an optional edge tag so a
// residual cut can be mapped back to network edges.
class FlowGraph {
public:
    static constexpr int kInf = std::numeric_limits<int>::max() / 2;
    static constexpr std::size_t kNoTag = std::numeric_limits<std::size_t>::max();

    explicit FlowGraph(std::size_t nodes) : adj_(nodes) {}

    std::size_t add_node() {
        adj_.emplace_back();
        return adj_.size() - 1;
    }

    void add_arc(std::size_t u, std::size_t v, int cap, std::size_t tag = kNoTag) {
        adj_[u].push_back({v, cap, adj_[v].size(), tag, true});
        adj_[v].push_back({u, 0, adj_[u].size() - 1, kNoTag, false});
    }

    // Edmonds-Karp; fine for the desk-scale graphs handled here.
    std::size_t max_flow(std::size_t s, std::size_t t) {
        std::size_t flow = 0;
        if (s == t) return 0;
        while (true) {
            std::vector<std::pair<std::size_t, std::size_t>> parent(adj_.size(), {kNoTag, 0});
            std::deque<std::size_t> queue{s};
            parent[s] = {s, 0};
            while (!queue.empty() && parent[t].first == kNoTag) {
                std::size_t u = queue.front();
                queue.pop_front();
                for (std::size_t i = 0; i < adj_[u].size(); ++i) {
                    const Arc& a = adj_[u][i];
                    if (a.cap > 0 && parent[a.to].first == kNoTag) {
                        parent[a.to] = {u, i};
                        queue.push_back(a.to);
                    }
                }
            }
            if (parent[t].first == kNoTag) return flow;
            int push = kInf;
            for (std::size_t v = t; v != s; v = parent[v].first)
                push = std::min(push, adj_[parent[v].first][parent[v].second].cap);
            for (std::size_t v = t; v != s; v = parent[v].first) {
                Arc& a = adj_[parent[v].first][parent[v].second];
                a.cap -= push;
                adj_[a.to][a.rev].cap += push;
            }
            flow += static_cast<std::size_t>(push);
        }
    }

    std::vector<bool> residual_reachable(std::size_t s) const {
        std::vector<bool> seen(adj_.size(), false);
        std::deque<std::size_t> queue{s};
        seen[s] = true;
        while (!queue.empty()) {
            std::size_t u = queue.front();
            queue.pop_front();
            for (const Arc& a : adj_[u])
                if (a.cap > 0 && !seen[a.to]) {
                    seen[a.to] = true;
                    queue.push_back(a.to);
                }
        }
        return seen;
    }

    // Tags of forward arcs leaving the given node set.
    std::vector<std::size_t> cut_tags(const std::vector<bool>& side) const {
        std::vector<std::size_t> tags;
        for (std::size_t u = 0; u < adj_.size(); ++u) {
            if (!side[u]) continue;
            for (const Arc& a : adj_[u])
                if (a.forward && !side[a.to] && a.tag != kNoTag) tags.push_back(a.tag);
        }
        return tags;
    }

private:
    struct Arc {
        std::size_t to;
        int cap;
        std::size_t rev;
        std::size_t tag;
        bool forward;
    };
    std::vector<std::vector<Arc>> adj_;
};

// Flow network for "source to edge subset A": every edge of A is split at a
// midpoint that drains into a fresh super-sink.
struct EdgeTargetFlow {
    FlowGraph graph;
    std::size_t sink;
};

EdgeTargetFlow build_edge_target_flow(const Network& net, const EdgeSet& a) {
    FlowGraph g(net.node_count());
    std::size_t sink = g.add_node();
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) {
        const Edge& ed = net.edge(e);
        if (a.contains(e)) {
            std::size_t mid = g.add_node();
            g.add_arc(ed.tail, mid, 1, e);
            g.add_arc(mid, ed.head, 1);
            g.add_arc(mid, sink, FlowGraph::kInf);
        } else {
            g.add_arc(ed.tail, ed.head, 1, e);
        }
    }
    return {std::move(g), sink};
}

void check_edges(const Network& net, const EdgeSet& a) {
    if (a.empty()) throw InputError("edge subset must be nonempty");
    for (auto e : a)
        if (e >= net.edge_count()) throw InputError("edge index out of range");
}

}  // namespace

Network::Network(const NetworkDesc& desc) {
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = node_ix_.emplace(name, names_.size());
        if (inserted) names_.push_back(name);
        return it->second;
    };
    for (const auto& n : desc.nodes) {
        if (node_ix_.count(n)) throw NetworkError("node '" + n + "' declared twice");
        intern(n);
    }
    if (desc.source.empty()) throw NetworkError("no source declared");
    if (desc.sinks.empty()) throw NetworkError("no sink declared");
    const bool closed = !desc.nodes.empty();
    if (closed) {
        for (const auto* n : {&desc.source})
            if (!node_ix_.count(*n)) throw NetworkError("source '" + *n + "' is not a declared node");
        for (const auto& t : desc.sinks)
            if (!node_ix_.count(t)) throw NetworkError("sink '" + t + "' is not a declared node");
    }
    source_ = intern(desc.source);
    for (const auto& t : desc.sinks) {
        NodeIndex v = intern(t);
        if (v == source_) throw NetworkError("source '" + t + "' cannot also be a sink");
        if (std::find(sinks_.begin(), sinks_.end(), v) != sinks_.end())
            throw NetworkError("sink '" + t + "' declared twice");
        sinks_.push_back(v);
    }
    for (const auto& ed : desc.edges) {
        std::string where = ed.line ? " (line " + std::to_string(ed.line) + ")" : "";
        if (edge_ix_.count(ed.id)) throw NetworkError("duplicate edge id '" + ed.id + "'" + where);
        for (const auto* end : {&ed.tail, &ed.head})
            if (closed && !node_ix_.count(*end))
                throw NetworkError("edge '" + ed.id + "' references unknown node '" + *end + "'" + where);
        if (ed.tail == ed.head) throw NetworkError("self-loop on edge '" + ed.id + "'" + where);
        NodeIndex u = intern(ed.tail), v = intern(ed.head);
        edge_ix_.emplace(ed.id, edges_.size());
        edges_.push_back({ed.id, u, v});
    }

    const std::size_t nv = names_.size();
    sink_flag_.assign(nv, false);
    for (auto t : sinks_) sink_flag_[t] = true;
    in_.assign(nv, {});
    out_.assign(nv, {});
    for (EdgeIndex e = 0; e < edges_.size(); ++e) {
        out_[edges_[e].tail].push_back(e);
        in_[edges_[e].head].push_back(e);
    }
    auto line_of = [&](EdgeIndex e) {
        std::size_t l = desc.edges[e].line;
        return l ? " (line " + std::to_string(l) + ")" : std::string{};
    };
    if (!in_[source_].empty())
        throw NetworkError("source has incoming edge '" + edges_[in_[source_][0]].id + "'" +
                           line_of(in_[source_][0]));
    for (auto t : sinks_)
        if (!out_[t].empty())
            throw NetworkError("sink '" + names_[t] + "' has outgoing edge '" + edges_[out_[t][0]].id + "'" +
                               line_of(out_[t][0]));

    // Kahn's algorithm, always taking the smallest ready node index.
    std::vector<std::size_t> indeg(nv);
    for (NodeIndex v = 0; v < nv; ++v) indeg[v] = in_[v].size();
    std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
    for (NodeIndex v = 0; v < nv; ++v)
        if (indeg[v] == 0) ready.push(v);
    std::vector<std::size_t> topo_rank(nv, 0);
    while (!ready.empty()) {
        NodeIndex u = ready.top();
        ready.pop();
        topo_rank[u] = node_order_.size();
        node_order_.push_back(u);
        for (auto e : out_[u])
            if (--indeg[edges_[e].head] == 0) ready.push(edges_[e].head);
    }
    if (node_order_.size() != nv) {
        for (EdgeIndex e = 0; e < edges_.size(); ++e)
            if (indeg[edges_[e].tail] > 0 && indeg[edges_[e].head] > 0)
                throw NetworkError("cycle through edge '" + edges_[e].id + "'" + line_of(e));
        throw NetworkError("network contains a cycle");
    }
    edge_order_.resize(edges_.size());
    for (EdgeIndex e = 0; e < edges_.size(); ++e) edge_order_[e] = e;
    std::stable_sort(edge_order_.begin(), edge_order_.end(), [&](EdgeIndex a, EdgeIndex b) {
        return topo_rank[edges_[a].tail] < topo_rank[edges_[b].tail];
    });

    profile_.cmin = std::numeric_limits<std::size_t>::max();
    for (auto t : sinks_) {
        std::size_t c = mincut_to_node(*this, t);
        profile_.per_sink[names_[t]] = c;
        profile_.cmin = std::min(profile_.cmin, c);
    }
}

NodeIndex Network::node(const std::string& name) const {
    auto it = node_ix_.find(name);
    if (it == node_ix_.end()) throw InputError("unknown node '" + name + "'");
    return it->second;
}

EdgeIndex Network::edge_index(const std::string& id) const {
    auto it = edge_ix_.find(id);
    if (it == edge_ix_.end()) throw InputError("unknown edge '" + id + "'");
    return it->second;
}

bool Network::is_sink(NodeIndex v) const { return sink_flag_[v]; }

std::string Network::format(const EdgeSet& a) const {
    std::string s;
    for (auto e : a) {
        if (!s.empty()) s += ',';
        s += edges_[e].id;
    }
    return s;
}

EdgeSet Network::parse_edge_set(const std::string& csv) const {
    std::vector<EdgeIndex> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(edge_index(tok));
    return EdgeSet(std::move(out));
}

CutProfile validate(const Network& net) {
    CutProfile p;
    p.cmin = std::numeric_limits<std::size_t>::max();
    for (auto t : net.sinks()) {
        std::size_t c = mincut_to_node(net, t);
        p.per_sink[net.node_name(t)] = c;
        p.cmin = std::min(p.cmin, c);
    }
    return p;
}

std::size_t mincut_to_node(const Network& net, NodeIndex t) {
    FlowGraph g(net.node_count());
    for (EdgeIndex e = 0; e < net.edge_count(); ++e) g.add_arc(net.edge(e).tail, net.edge(e).head, 1, e);
    return g.max_flow(net.source(), t);
}

std::size_t mincut_to_edges(const Network& net, const EdgeSet& a) {
    check_edges(net, a);
    auto f = build_edge_target_flow(net, a);
    return f.graph.max_flow(net.source(), f.sink);
}

EdgeSet primary_min_cut(const Network& net, const EdgeSet& a) {
    check_edges(net, a);
    auto f = build_edge_target_flow(net, a);
    f.graph.max_flow(net.source(), f.sink);
    return EdgeSet(f.graph.cut_tags(f.graph.residual_reachable(net.source())));
}

bool is_primary(const Network& net, const EdgeSet& a) { return primary_min_cut(net, a) == a; }

bool is_regular(const Network& net, const EdgeSet& a) { return mincut_to_edges(net, a) == a.size(); }

std::vector<EdgeSet> all_subsets_of_size(std::size_t n, std::size_t k) {
    std::vector<EdgeSet> out;
    if (k > n) return out;
    std::vector<EdgeIndex> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
        out.emplace_back(idx);
        if (k == 0) break;
        std::size_t i = k;
        while (i > 0 && idx[i - 1] == n - k + (i - 1)) --i;
        if (i == 0) break;
        ++idx[i - 1];
        for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

std::vector<EdgeSet> enumerate_primary_sets(const Network& net, std::size_t r) {
    if (r > net.cmin())
        throw InputError("r = " + std::to_string(r) + " exceeds C_min = " + std::to_string(net.cmin()));
    if (r == 0) return {};
    {
        std::lock_guard lock(net.cache_->mu);
        auto it = net.cache_->primary.find(r);
        if (it != net.cache_->primary.end()) return it->second;
    }
    std::vector<EdgeSet> out;
    for (auto& a : all_subsets_of_size(net.edge_count(), r))
        if (is_primary(net, a)) out.push_back(std::move(a));
    std::lock_guard lock(net.cache_->mu);
    net.cache_->primary.emplace(r, out);
    return out;
}

}  // namespace slnc

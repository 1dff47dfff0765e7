#include "slnc/randgen.hpp"

#include <string>

namespace slnc {

namespace {

std::size_t uniform(std::mt19937_64& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

}  // namespace

std::shared_ptr<const Network> random_dag(std::mt19937_64& rng, const DagOptions& opt) {
    const std::size_t nodes = uniform(rng, std::max<std::size_t>(opt.min_nodes, 2), std::max(opt.max_nodes, opt.min_nodes));
    const std::size_t sinks = uniform(rng, 1, std::min(opt.max_sinks, nodes - 1));
    const std::size_t first_sink = nodes - sinks;

    NetworkDesc d;
    auto name = [&](std::size_t v) {
        if (v == 0) return std::string("s");
        if (v >= first_sink) return "t" + std::to_string(v - first_sink + 1);
        return "v" + std::to_string(v);
    };
    for (std::size_t v = 0; v < nodes; ++v) d.nodes.push_back(name(v));
    d.source = "s";
    for (std::size_t v = first_sink; v < nodes; ++v) d.sinks.push_back(name(v));

    auto add = [&](std::size_t u, std::size_t v) {
        d.edges.push_back({"e" + std::to_string(d.edges.size() + 1), name(u), name(v), 0});
    };
    for (std::size_t v = 1; v < nodes; ++v) add(uniform(rng, 0, std::min(v, first_sink) - 1), v);
    const std::size_t total = uniform(rng, d.edges.size(), std::max(opt.max_edges, d.edges.size()));
    while (d.edges.size() < total) {
        std::size_t u = uniform(rng, 0, first_sink - 1);
        add(u, uniform(rng, u + 1, nodes - 1));
    }
    return std::make_shared<const Network>(d);
}

Mat random_matrix(Field f, std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_int_distribution<Value> digit(0, f.order() - 1);
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = digit(rng);
    return m;
}

Mat random_invertible(Field f, std::size_t n, std::mt19937_64& rng) {
    while (true) {
        Mat m = random_matrix(f, n, n, rng);
        if (rank(m) == n) return m;
    }
}

std::optional<LinearNetworkCode> random_code(std::shared_ptr<const Network> net, Field f, std::size_t dim,
                                             std::mt19937_64& rng, bool decodable, std::size_t attempts) {
    for (std::size_t a = 0; a < std::max<std::size_t>(attempts, 1); ++a) {
        std::vector<Mat> k;
        for (NodeIndex v = 0; v < net->node_count(); ++v)
            k.push_back(random_matrix(f, v == net->source() ? dim : net->in_edges(v).size(), net->out_edges(v).size(), rng));
        LinearNetworkCode code(net, f, dim, std::move(k));
        if (!decodable || is_decodable(code)) return code;
    }
    return std::nullopt;
}

}  // namespace slnc

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <random>

#include "slnc/ffla.hpp"
#include "slnc/lnc.hpp"
#include "slnc/netgraph.hpp"

namespace slnc {

// Random small DAGs for property tests and the selftest command. Node 0 is
// the source "s", the last `sinks` nodes are sinks; every other node gets an
// in-edge from a lower-numbered non-sink, so every sink is reachable.
struct DagOptions {
    std::size_t min_nodes = 3;
    std::size_t max_nodes = 7;
    std::size_t max_edges = 12;
    std::size_t max_sinks = 2;
};

std::shared_ptr<const Network> random_dag(std::mt19937_64& rng, const DagOptions& opt = {});

/// Uniformly random local kernels; when `decodable` is set, redraws up to
/// `attempts` times and returns nullopt if none is decodable.
std::optional<LinearNetworkCode> random_code(std::shared_ptr<const Network> net, Field f, std::size_t dim,
                                             std::mt19937_64& rng, bool decodable = true,
                                             std::size_t attempts = 200);

Mat random_matrix(Field f, std::size_t rows, std::size_t cols, std::mt19937_64& rng);
Mat random_invertible(Field f, std::size_t n, std::mt19937_64& rng);

}  // namespace slnc

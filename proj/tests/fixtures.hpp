#pragma once

#include <sstream>
#include <string>

#include "slnc/io.hpp"

namespace fixture {

inline std::string data(const std::string& name) { return std::string(SLNC_DATA_DIR) + "/" + name; }

inline slnc::NetworkFile two_sink() { return slnc::load_network(data("two_sink.net")); }

inline slnc::LinearNetworkCode c3(const slnc::NetworkFile& nf) {
    return slnc::load_code(data("two_sink_c3.code"), nf.network).code;
}

inline std::shared_ptr<const slnc::Network> net_from(const std::string& text) {
    std::istringstream in(text);
    return slnc::parse_network(in).network;
}

}  // namespace fixture

namespace fixture {

// Matrix literal over F_5, the field of the two-sink fixtures.
inline slnc::Mat m5(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
    return slnc::Mat(slnc::Field(5), rows);
}

}  // namespace fixture

#pragma once

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>

#include "slnc/gf.hpp"
#include "slnc/lnc.hpp"
#include "slnc/netgraph.hpp"

namespace slnc {

// Network files:
//   field <q>
//   node <id>              (optional)
//   source <id>
//   sink <id>              (one or more)
//   edge <id> <tail> <head>
// '#' starts a comment. Errors carry "<name>:<line>:".
struct NetworkFile {
    Field field;
    std::shared_ptr<const Network> network;
};

NetworkFile parse_network(std::istream& in, const std::string& name = "<network>");
NetworkFile load_network(const std::string& path);
std::string format_network(const Network& net, const Field& f);

// Code files:
//   field <q>
//   dimension <n>
//   rate <w>               (optional)
//   level <r>              (optional)
//   kernel <node> <rows> <cols>   followed by <rows> lines of <cols> values
//   matrixQ <n> <n>               followed by n lines (optional, default I)
// Kernels with no entries may be omitted.
struct CodeFile {
    LinearNetworkCode code;
    std::optional<Mat> q;
    std::optional<std::size_t> rate, level;
};

CodeFile parse_code(std::istream& in, std::shared_ptr<const Network> net, const std::string& name = "<code>");
CodeFile load_code(const std::string& path, std::shared_ptr<const Network> net);

/// Missing rate/level default to (n, 0); missing Q to the identity.
SecureCodeSpec to_spec(const CodeFile& file);

std::string format_code(const LinearNetworkCode& code);
std::string format_spec(const SecureCodeSpec& spec);

}  // namespace slnc

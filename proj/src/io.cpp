#include "slnc/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "slnc/error.hpp"

namespace slnc {

namespace {

// Reads non-empty logical lines with comments stripped, keeping line numbers.
class LineReader {
public:
    LineReader(std::istream& in, std::string name) : in_(in), name_(std::move(name)) {}

    bool next(std::vector<std::string>& tokens) {
        std::string raw;
        while (std::getline(in_, raw)) {
            ++line_;
            if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
            std::istringstream ss(raw);
            tokens.clear();
            for (std::string t; ss >> t;) tokens.push_back(t);
            if (!tokens.empty()) return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw InputError(name_ + ":" + std::to_string(line_) + ": " + msg);
    }

    std::uint64_t number(const std::string& tok, const char* what) const {
        std::uint64_t v = 0;
        auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || p != tok.data() + tok.size())
            fail(std::string("expected a non-negative integer for ") + what + ", got '" + tok + "'");
        return v;
    }

    void arity(const std::vector<std::string>& t, std::size_t n) const {
        if (t.size() != n)
            fail("'" + t[0] + "' takes " + std::to_string(n - 1) + " argument(s), got " + std::to_string(t.size() - 1));
    }

    std::size_t line() const noexcept { return line_; }
    const std::string& name() const noexcept { return name_; }

private:
    std::istream& in_;
    std::string name_;
    std::size_t line_ = 0;
};

Field make_field(const LineReader& r, std::uint64_t q) {
    try {
        return Field(q);
    } catch (const InputError& e) {
        r.fail(e.what());
    }
}

Mat read_matrix(LineReader& r, const Field& f, std::size_t rows, std::size_t cols, const std::string& what) {
    Mat m(f, rows, cols);
    std::vector<std::string> t;
    for (std::size_t i = 0; i < rows; ++i) {
        if (!r.next(t)) r.fail("unexpected end of file inside " + what);
        if (t.size() != cols)
            r.fail(what + " row " + std::to_string(i + 1) + " has " + std::to_string(t.size()) + " entries, expected " +
                   std::to_string(cols));
        for (std::size_t j = 0; j < cols; ++j) {
            auto v = r.number(t[j], "a matrix entry");
            if (v >= f.order()) r.fail("entry " + t[j] + " is not below the field order " + std::to_string(f.order()));
            m(i, j) = static_cast<Value>(v);
        }
    }
    return m;
}

std::ifstream open(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open '" + path + "'");
    return in;
}

void write_matrix(std::ostream& os, const Mat& m) { os << m.str(); }

}  // namespace

NetworkFile parse_network(std::istream& in, const std::string& name) {
    LineReader r(in, name);
    std::optional<Field> field;
    NetworkDesc desc;
    std::size_t source_line = 0;
    std::vector<std::string> t;
    while (r.next(t)) {
        const std::string& kw = t[0];
        if (!field && kw != "field") r.fail("the first declaration must be 'field <q>'");
        if (kw == "field") {
            r.arity(t, 2);
            if (field) r.fail("field declared twice");
            field = make_field(r, r.number(t[1], "the field order"));
        } else if (kw == "node") {
            r.arity(t, 2);
            desc.nodes.push_back(t[1]);
        } else if (kw == "source") {
            r.arity(t, 2);
            if (source_line) r.fail("source already declared on line " + std::to_string(source_line));
            desc.source = t[1];
            source_line = r.line();
        } else if (kw == "sink") {
            r.arity(t, 2);
            desc.sinks.push_back(t[1]);
        } else if (kw == "edge") {
            r.arity(t, 4);
            desc.edges.push_back({t[1], t[2], t[3], r.line()});
        } else {
            r.fail("unknown declaration '" + kw + "'");
        }
    }
    if (!field) throw InputError(name + ": missing 'field <q>' declaration");
    try {
        return {*field, std::make_shared<const Network>(desc)};
    } catch (const NetworkError& e) {
        throw NetworkError(name + ": " + e.what());
    }
}

NetworkFile load_network(const std::string& path) {
    auto in = open(path);
    return parse_network(in, path);
}

std::string format_network(const Network& net, const Field& f) {
    std::ostringstream os;
    os << "field " << f.order() << '\n';
    for (NodeIndex v = 0; v < net.node_count(); ++v) os << "node " << net.node_name(v) << '\n';
    os << "source " << net.node_name(net.source()) << '\n';
    for (auto t : net.sinks()) os << "sink " << net.node_name(t) << '\n';
    for (const auto& e : net.edges())
        os << "edge " << e.id << ' ' << net.node_name(e.tail) << ' ' << net.node_name(e.head) << '\n';
    return os.str();
}

CodeFile parse_code(std::istream& in, std::shared_ptr<const Network> net, const std::string& name) {
    LineReader r(in, name);
    std::optional<Field> field;
    std::optional<std::size_t> dim, rate, level;
    std::vector<std::optional<Mat>> kernels(net->node_count());
    std::optional<Mat> q;
    std::vector<std::string> t;
    auto need_header = [&] {
        if (!field || !dim) r.fail("'field' and 'dimension' must precede kernels and matrices");
    };
    while (r.next(t)) {
        const std::string& kw = t[0];
        if (kw == "field") {
            r.arity(t, 2);
            if (field) r.fail("field declared twice");
            field = make_field(r, r.number(t[1], "the field order"));
        } else if (kw == "dimension") {
            r.arity(t, 2);
            if (dim) r.fail("dimension declared twice");
            dim = r.number(t[1], "the dimension");
        } else if (kw == "rate") {
            r.arity(t, 2);
            rate = r.number(t[1], "the rate");
        } else if (kw == "level") {
            r.arity(t, 2);
            level = r.number(t[1], "the level");
        } else if (kw == "kernel") {
            r.arity(t, 4);
            need_header();
            NodeIndex v;
            try {
                v = net->node(t[1]);
            } catch (const InputError&) {
                r.fail("kernel for unknown node '" + t[1] + "'");
            }
            if (net->is_sink(v)) r.fail("sink '" + t[1] + "' carries no kernel");
            if (kernels[v]) r.fail("kernel for '" + t[1] + "' given twice");
            const std::size_t rows = r.number(t[2], "kernel rows"), cols = r.number(t[3], "kernel columns");
            const std::size_t want_rows = v == net->source() ? *dim : net->in_edges(v).size();
            const std::size_t want_cols = net->out_edges(v).size();
            if (rows != want_rows || cols != want_cols)
                r.fail("kernel for '" + t[1] + "' must be " + std::to_string(want_rows) + "x" +
                       std::to_string(want_cols));
            kernels[v] = read_matrix(r, *field, rows, cols, "kernel '" + t[1] + "'");
        } else if (kw == "matrixQ") {
            r.arity(t, 3);
            need_header();
            if (q) r.fail("matrixQ given twice");
            const std::size_t rows = r.number(t[1], "matrixQ rows"), cols = r.number(t[2], "matrixQ columns");
            if (rows != *dim || cols != *dim)
                r.fail("matrixQ must be " + std::to_string(*dim) + "x" + std::to_string(*dim));
            q = read_matrix(r, *field, rows, cols, "matrixQ");
        } else {
            r.fail("unknown declaration '" + kw + "'");
        }
    }
    if (!field || !dim) throw InputError(name + ": missing 'field' or 'dimension'");
    std::vector<Mat> ks;
    for (NodeIndex v = 0; v < net->node_count(); ++v) {
        const std::size_t rows = v == net->source() ? *dim : net->in_edges(v).size();
        const std::size_t cols = net->out_edges(v).size();
        if (kernels[v]) {
            ks.push_back(std::move(*kernels[v]));
        } else if (rows * cols == 0) {
            ks.emplace_back(*field, rows, cols);
        } else {
            throw InputError(name + ": missing kernel for node '" + net->node_name(v) + "'");
        }
    }
    if (rate.has_value() != level.has_value()) throw InputError(name + ": 'rate' and 'level' must be given together");
    if (rate && *rate + *level != *dim) throw InputError(name + ": rate + level must equal the dimension");
    return {LinearNetworkCode(std::move(net), *field, *dim, std::move(ks)), std::move(q), rate, level};
}

CodeFile load_code(const std::string& path, std::shared_ptr<const Network> net) {
    auto in = open(path);
    return parse_code(in, std::move(net), path);
}

SecureCodeSpec to_spec(const CodeFile& file) {
    const std::size_t n = file.code.dim();
    return SecureCodeSpec(file.code, file.q ? *file.q : Mat::identity(file.code.field(), n), file.rate.value_or(n),
                          file.level.value_or(0));
}

namespace {

void write_kernels(std::ostream& os, const LinearNetworkCode& code) {
    const Network& net = code.network();
    for (NodeIndex v = 0; v < net.node_count(); ++v) {
        if (net.is_sink(v)) continue;
        const Mat& k = code.kernel(v);
        if (k.rows() * k.cols() == 0) continue;
        os << "kernel " << net.node_name(v) << ' ' << k.rows() << ' ' << k.cols() << '\n';
        write_matrix(os, k);
    }
}

}  // namespace

std::string format_code(const LinearNetworkCode& code) {
    std::ostringstream os;
    os << "field " << code.field().order() << '\n' << "dimension " << code.dim() << '\n';
    write_kernels(os, code);
    return os.str();
}

std::string format_spec(const SecureCodeSpec& spec) {
    std::ostringstream os;
    const auto& code = spec.base();
    os << "field " << code.field().order() << '\n'
       << "dimension " << code.dim() << '\n'
       << "rate " << spec.rate() << '\n'
       << "level " << spec.level() << '\n';
    write_kernels(os, code);
    if (code.dim() > 0) {
        os << "matrixQ " << code.dim() << ' ' << code.dim() << '\n';
        write_matrix(os, spec.q());
    }
    return os.str();
}

}  // namespace slnc

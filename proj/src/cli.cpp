#include "slnc/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <random>
#include <sstream>

#include "slnc/construct.hpp"
#include "slnc/error.hpp"
#include "slnc/io.hpp"
#include "slnc/randgen.hpp"
#include "slnc/secure.hpp"

namespace slnc {

namespace {

namespace fs = std::filesystem;

const std::vector<std::string> kModes = {"pair", "increment", "fixed-dim", "family-rate", "region-c2", "region-c3"};

std::vector<Value> parse_values(const std::string& csv, const Field& f, const char* what) {
    std::vector<Value> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != tok.size() || v < 0 || static_cast<unsigned long long>(v) >= f.order())
            throw InputError(std::string("bad ") + what + " entry '" + tok + "' (need 0.." +
                             std::to_string(f.order() - 1) + ")");
        out.push_back(static_cast<Value>(v));
    }
    return out;
}

std::string render(const std::vector<Value>& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

void print_report(std::ostream& out, const Network& net, const SecurityReport& rep) {
    for (const auto& v : rep.verdicts) {
        out << "A=" << net.format(v.set) << " verdict=" << (v.pass ? "pass" : "fail");
        if (!v.pass) out << " witness=" << v.witness;
        out << '\n';
    }
}

// ---- net -------------------------------------------------------------------

int net_info(const std::string& path, std::ostream& out) {
    auto nf = load_network(path);
    const Network& net = *nf.network;
    out << "field " << nf.field.order() << '\n'
        << "nodes " << net.node_count() << '\n'
        << "edges " << net.edge_count() << '\n'
        << "source " << net.node_name(net.source()) << '\n';
    for (auto t : net.sinks())
        out << "C_t " << net.node_name(t) << ' ' << net.cut_profile().per_sink.at(net.node_name(t)) << '\n';
    out << "C_min " << net.cmin() << '\n';
    return kExitOk;
}

int net_primary_sets(const std::string& path, std::size_t r, std::ostream& out) {
    auto nf = load_network(path);
    for (const auto& a : enumerate_primary_sets(*nf.network, r)) out << nf.network->format(a) << '\n';
    return kExitOk;
}

// ---- code construct --------------------------------------------------------

struct ConstructArgs {
    std::string net, mode, seed_code, in_spec, out_dir;
    std::optional<std::size_t> rate, level, n;
    std::optional<std::uint64_t> field;
    bool unsafe = false;
};

int code_construct(const ConstructArgs& a, std::ostream& out) {
    auto nf = load_network(a.net);
    const Field f = a.field ? Field(*a.field) : nf.field;
    const auto& net_ptr = nf.network;
    const Network& net = *net_ptr;

    auto need = [&](const std::optional<std::size_t>& v, const char* flag) {
        if (!v) throw InputError(std::string("mode ") + a.mode + " requires " + flag);
        return *v;
    };
    // Check flag consistency before any computation.
    if (a.mode == "pair") {
        need(a.rate, "--rate");
        need(a.level, "--level");
    } else if (a.mode == "increment") {
        if (a.in_spec.empty()) throw InputError("mode increment requires --in <spec file>");
    } else if (a.mode == "fixed-dim") {
        need(a.n, "--n");
    } else if (a.mode == "family-rate") {
        need(a.rate, "--rate");
    }

    LinearNetworkCode seed = [&] {
        if (a.seed_code.empty()) return greedy_multicast_code(net_ptr, f);
        auto cf = load_code(a.seed_code, net_ptr);
        if (!(cf.code.field() == f))
            throw InputError("seed code is over F_" + std::to_string(cf.code.field().order()) + ", expected F_" +
                             std::to_string(f.order()));
        if (cf.code.dim() != net.cmin())
            throw InputError("seed code must have dimension C_min = " + std::to_string(net.cmin()));
        if (!is_decodable(cf.code)) throw PreconditionFailed("seed code is not decodable");
        return cf.code;
    }();

    BuildOptions opt;
    opt.verify_preconditions = !a.unsafe;
    // Single-target modes run best effort: the scans themselves report an
    // exhausted field. Region modes check the sufficient bound up front.
    opt.enforce_field_guard = false;

    std::vector<SecureCodeSpec> members;
    std::string tag = a.mode;
    if (a.mode == "pair") {
        const std::size_t n = *a.rate + *a.level;
        if (n > net.cmin()) throw InputError("rate + level exceeds C_min = " + std::to_string(net.cmin()));
        members.push_back(build_fixed_pair(truncate(seed, n), *a.rate, *a.level, opt));
    } else if (a.mode == "increment") {
        auto cf = load_code(a.in_spec, net_ptr);
        if (!cf.rate) throw InputError(a.in_spec + ": increment input needs 'rate' and 'level'");
        auto spec = to_spec(cf);
        const std::size_t n = spec.dim();
        if (n >= net.cmin()) throw InputError("input dimension already reaches C_min");
        if (!(spec.base().field() == f)) throw InputError("input spec and seed code use different fields");
        auto res = increment_level(spec.base(), truncate(seed, n + 1), spec.q(), spec.rate(), spec.level(), opt);
        members.emplace_back(truncate(seed, n + 1), res.q, spec.rate(), spec.level() + 1);
        out << "c " << res.trace.c.str() << '\n';
    } else if (a.mode == "fixed-dim") {
        if (*a.n > net.cmin()) throw InputError("--n exceeds C_min = " + std::to_string(net.cmin()));
        members = fixed_dimension(truncate(seed, *a.n), opt).members;
    } else if (a.mode == "family-rate") {
        opt.enforce_field_guard = true;
        members = family_fixed_rate(seed, *a.rate, opt).members;
    } else {
        opt.enforce_field_guard = true;
        auto fam = region_family(seed, parse_region_tag(a.mode), opt);
        for (auto& [pair, spec] : fam.members) members.push_back(spec);
    }

    fs::create_directories(a.out_dir);
    std::ostringstream manifest;
    manifest << "construction " << tag << '\n'
             << "field " << f.order() << '\n'
             << "C_min " << net.cmin() << '\n'
             << "members " << members.size() << '\n';
    bool all_ok = true;
    for (const auto& m : members) {
        const std::string file = "code_w" + std::to_string(m.rate()) + "_r" + std::to_string(m.level()) + ".slnc";
        std::ofstream(fs::path(a.out_dir) / file, std::ios::binary) << format_spec(m);
        const bool secure = check_secure_subspace(m).secure;
        const bool decodable = is_decodable(m.deployed());
        all_ok = all_ok && secure && decodable;
        manifest << "pair " << m.rate() << ' ' << m.level() << " file " << file << " decodable "
                 << (decodable ? "pass" : "fail") << " secure " << (secure ? "pass" : "fail") << '\n';
        out << file << ' ' << (secure && decodable ? "pass" : "fail") << '\n';
    }
    manifest << "verdict " << (all_ok ? "pass" : "fail") << '\n';
    std::ofstream(fs::path(a.out_dir) / "manifest", std::ios::binary) << manifest.str();
    out << "verdict " << (all_ok ? "pass" : "fail") << '\n';
    return all_ok ? kExitOk : kExitVerifyFailed;
}

// ---- code verify / transmit ------------------------------------------------

int code_verify(const std::string& code_path, const std::string& net_path, bool exhaustive, bool all_subsets,
                std::ostream& out) {
    auto nf = load_network(net_path);
    auto spec = to_spec(load_code(code_path, nf.network));
    const bool decodable = is_decodable(spec.deployed());
    auto rep = exhaustive ? check_secure_exhaustive(spec.deployed(), spec.rate(), spec.level(),
                                                    all_subsets ? Scope::AllSubsets : Scope::PrimaryOnly)
                          : check_secure_subspace(spec);
    out << "rate " << spec.rate() << " level " << spec.level() << '\n'
        << "decodable " << (decodable ? "pass" : "fail") << '\n'
        << "method " << (exhaustive ? (all_subsets ? "exhaustive-all" : "exhaustive") : "subspace") << '\n';
    print_report(out, *nf.network, rep);
    const bool ok = decodable && rep.secure;
    out << "verdict " << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitVerifyFailed;
}

int code_transmit(const std::string& code_path, const std::string& net_path, const std::string& message,
                  const std::string& key, const std::string& tap, std::ostream& out) {
    auto nf = load_network(net_path);
    const Network& net = *nf.network;
    auto spec = to_spec(load_code(code_path, nf.network));
    const Field& f = spec.base().field();
    auto m = parse_values(message, f, "message");
    auto k = parse_values(key, f, "key");
    if (m.size() != spec.rate() || k.size() != spec.level())
        throw InputError("message/key lengths must be " + std::to_string(spec.rate()) + "/" +
                         std::to_string(spec.level()) + ", got " + std::to_string(m.size()) + "/" +
                         std::to_string(k.size()));
    EdgeSet tapped = tap.empty() ? EdgeSet{} : net.parse_edge_set(tap);
    std::vector<Value> xv = m;
    xv.insert(xv.end(), k.begin(), k.end());
    const Vec x(f, xv);
    const auto y = transmit(spec.deployed(), x);

    out << "x " << x.str() << '\n';
    for (EdgeIndex e = 0; e < net.edge_count(); ++e)
        out << "y " << net.edge(e).id << ' ' << y[e] << (tapped.contains(e) ? " tapped" : "") << '\n';
    if (!tapped.empty()) {
        std::vector<Value> ya;
        for (EdgeIndex e : tapped) ya.push_back(y[e]);
        out << "tap " << net.format(tapped) << ' ' << render(ya) << '\n';
    }
    bool ok = true;
    for (NodeIndex t : net.sinks()) {
        std::vector<Value> yt;
        for (EdgeIndex e : net.in_edges(t)) yt.push_back(y[e]);
        try {
            Vec xt = decode_at_sink(spec.deployed(), t, yt);
            std::vector<Value> mt(xt.entries().begin(), xt.entries().begin() + static_cast<std::ptrdiff_t>(spec.rate()));
            const bool match = xt == x;
            ok = ok && match;
            out << "decode " << net.node_name(t) << " m=" << render(mt) << ' ' << (match ? "ok" : "mismatch") << '\n';
        } catch (const PreconditionFailed&) {
            ok = false;
            out << "decode " << net.node_name(t) << " undecodable\n";
        }
    }
    return ok ? kExitOk : kExitVerifyFailed;
}

// ---- selftest --------------------------------------------------------------

int selftest(std::uint64_t seed, std::size_t count, std::ostream& out) {
    std::mt19937_64 rng(seed);
    const std::uint64_t primes[] = {2, 3, 5};
    std::size_t run = 0, agree = 0, kernel_ok = 0, decode_ok = 0;
    while (run < count) {
        auto net = random_dag(rng);
        const Field f(primes[rng() % 3]);
        const std::size_t n = std::min<std::size_t>(net->cmin(), 3);
        auto code = random_code(net, f, n, rng);
        if (!code) continue;
        const std::size_t rate = rng() % (n + 1);
        const Mat q = random_invertible(f, n, rng);
        SecureCodeSpec spec(*code, q, rate, n - rate);
        const bool a = check_secure_subspace(spec).secure;
        const bool b = check_secure_exhaustive(spec.deployed(), rate, n - rate, Scope::AllSubsets).secure;
        agree += a == b;

        Vec x = random_matrix(f, n, 1, rng).column(0);
        const auto y = transmit(*code, x);
        bool same = true;
        for (EdgeIndex e = 0; e < net->edge_count(); ++e) same = same && y[e] == dot(x, code->global_kernel(e));
        kernel_ok += same;

        bool round = true;
        for (NodeIndex t : net->sinks()) {
            std::vector<Value> yt;
            for (EdgeIndex e : net->in_edges(t)) yt.push_back(y[e]);
            round = round && decode_at_sink(*code, t, yt) == x;
        }
        decode_ok += round;
        ++run;
    }
    out << "instances " << run << '\n'
        << "subspace-vs-exhaustive agree " << agree << '\n'
        << "transmit-vs-kernels agree " << kernel_ok << '\n'
        << "decode-roundtrip agree " << decode_ok << '\n';
    const bool ok = agree == run && kernel_ok == run && decode_ok == run;
    out << "selftest " << (ok ? "pass" : "fail") << '\n';
    return ok ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Secure linear network codes: construct, transform and verify", "slnc"};
    app.require_subcommand(1);

    auto* net = app.add_subcommand("net", "Network queries");
    net->require_subcommand(1);
    std::string net_path;
    auto* info = net->add_subcommand("info", "Print cut capacities");
    info->add_option("network", net_path, "Network file")->required();
    auto* prim = net->add_subcommand("primary-sets", "List primary edge subsets of size R");
    prim->add_option("network", net_path, "Network file")->required();
    std::size_t r = 0;
    prim->add_option("--r", r, "Subset size")->required();

    auto* code = app.add_subcommand("code", "Code construction and checks");
    code->require_subcommand(1);

    ConstructArgs ca;
    auto* cons = code->add_subcommand("construct", "Build secure codes");
    cons->add_option("network", ca.net, "Network file")->required();
    cons->add_option("--mode", ca.mode, "Construction mode")->required()->check(CLI::IsMember(kModes));
    cons->add_option("--code", ca.seed_code, "C_min-dimensional seed code (default: greedy)");
    cons->add_option("--in", ca.in_spec, "Input secure code for --mode increment");
    cons->add_option("--rate", ca.rate, "Information rate");
    cons->add_option("--level", ca.level, "Security level");
    cons->add_option("--n", ca.n, "Dimension for --mode fixed-dim");
    cons->add_option("--field", ca.field, "Override the network's field order");
    cons->add_option("--out", ca.out_dir, "Output directory")->required();
    cons->add_flag("--unsafe", ca.unsafe, "Skip precondition verification");

    std::string code_path, message, key, tap;
    bool exhaustive = false, all_subsets = false;
    auto* ver = code->add_subcommand("verify", "Check decodability and security");
    ver->add_option("code", code_path, "Code file")->required();
    ver->add_option("network", net_path, "Network file")->required();
    ver->add_flag("--exhaustive", exhaustive, "Brute-force every source input");
    ver->add_flag("--all-subsets", all_subsets, "With --exhaustive, check every subset of size <= level");

    auto* tx = code->add_subcommand("transmit", "Send one message through the deployed code");
    tx->add_option("code", code_path, "Code file")->required();
    tx->add_option("network", net_path, "Network file")->required();
    tx->add_option("--message", message, "Comma-separated message symbols");
    tx->add_option("--key", key, "Comma-separated key symbols");
    tx->add_option("--tap", tap, "Comma-separated edge ids observed by the wiretapper");

    std::uint64_t seed = 1;
    std::size_t count = 50;
    auto* self = app.add_subcommand("selftest", "Randomized oracle-equivalence checks");
    self->add_option("--seed", seed, "RNG seed");
    self->add_option("--count", count, "Number of random instances");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    }

    try {
        if (info->parsed()) return net_info(net_path, out);
        if (prim->parsed()) return net_primary_sets(net_path, r, out);
        if (cons->parsed()) return code_construct(ca, out);
        if (ver->parsed()) return code_verify(code_path, net_path, exhaustive, all_subsets, out);
        if (tx->parsed()) return code_transmit(code_path, net_path, message, key, tap, out);
        if (self->parsed()) return selftest(seed, count, out);
    } catch (const FieldTooSmall& e) {
        err << "error: " << e.what() << '\n';
        return kExitFieldTooSmall;
    } catch (const VerificationFailed& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    } catch (const InputError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const SingularMatrix& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const fs::filesystem_error& e) {
        err << "error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitVerifyFailed;
    }
    return kExitInput;
}

}  // namespace slnc

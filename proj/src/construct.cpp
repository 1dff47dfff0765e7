#include "slnc/construct.hpp"

#include <algorithm>
#include <deque>
#include <functional>

#include "slnc/error.hpp"

namespace slnc {

namespace {

void guard(const Field& f, std::size_t bound, const std::string& what) {
    if (f.order() <= bound)
        throw FieldTooSmall("field size " + std::to_string(f.order()) + " does not exceed " + what + " = " +
                            std::to_string(bound));
}

std::vector<Subspace> spans(const LinearNetworkCode& code, const std::vector<EdgeSet>& sets) {
    std::vector<Subspace> out;
    out.reserve(sets.size());
    for (const auto& a : sets) out.push_back(code.span_of(a));
    return out;
}

bool same_kernels(const LinearNetworkCode& a, const LinearNetworkCode& b) {
    if (a.dim() != b.dim() || a.kernels().size() != b.kernels().size()) return false;
    for (std::size_t v = 0; v < a.kernels().size(); ++v)
        if (!(a.kernel(v) == b.kernel(v))) return false;
    return true;
}

// Picks columns b_1..b_n; column i (0-based) must avoid B_i and, when
// `constraints(i)` is non-empty, every B_i + L_A listed there.
Mat sequential_basis(const Field& f, std::size_t n,
                     const std::function<const std::vector<Subspace>*(std::size_t)>& constraints) {
    Subspace b_span(f, n);
    std::vector<Vec> cols;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Subspace> avoid{b_span};
        if (const auto* ls = constraints(i))
            for (const auto& l : *ls) avoid.push_back(sum(b_span, l));
        Vec v = pick_vector_avoiding(f, n, avoid);
        b_span.extend(v);
        cols.push_back(std::move(v));
    }
    return Mat::from_columns(f, n, cols);
}

void require_secure(const SecureCodeSpec& spec, const std::string& who) {
    auto rep = check_secure_subspace(spec);
    if (!rep.secure)
        throw VerificationFailed(who + " produced a code that is not secure at (" + std::to_string(spec.rate()) +
                                 "," + std::to_string(spec.level()) + "): fails at A=" +
                                 spec.base().network().format(rep.first_failure()->set));
}

}  // namespace

std::size_t max_primary_count(const Network& net, std::size_t upto) {
    std::size_t m = 0;
    for (std::size_t r = 1; r <= upto; ++r) m = std::max(m, enumerate_primary_sets(net, r).size());
    return m;
}

SecureCodeSpec build_fixed_pair(const LinearNetworkCode& base, std::size_t rate, std::size_t level,
                                const BuildOptions& opt) {
    const Network& net = base.network();
    const std::size_t n = base.dim();
    if (rate + level != n)
        throw DimensionMismatch("rate + level must equal the code dimension " + std::to_string(n));
    if (n > net.cmin()) throw InputError("dimension exceeds C_min = " + std::to_string(net.cmin()));
    if (opt.verify_preconditions && !is_decodable(base)) throw PreconditionFailed("base code is not decodable");
    const auto sets = enumerate_primary_sets(net, level);
    if (opt.enforce_field_guard) guard(base.field(), std::max(net.sinks().size(), sets.size()), "max(|T|, |A_r|)");
    const auto ls = spans(base, sets);
    Mat q = sequential_basis(base.field(), n, [&](std::size_t i) { return i < rate ? &ls : nullptr; });
    SecureCodeSpec spec(base, std::move(q), rate, level);
    require_secure(spec, "pair construction");
    return spec;
}

IncrementResult increment_level(const LinearNetworkCode& lower, const LinearNetworkCode& upper, const Mat& q_lower,
                                std::size_t rate, std::size_t level, const BuildOptions& opt) {
    const Network& net = lower.network();
    const Field& f = lower.field();
    const std::size_t n = lower.dim();
    if (!(upper.field() == f)) throw FieldMismatch();
    if (upper.network_ptr() != lower.network_ptr() || upper.dim() != n + 1 || !same_kernels(truncate(upper, n), lower))
        throw PreconditionFailed("the lower code is not the truncation of the upper code");
    if (rate + level != n) throw DimensionMismatch("rate + level must equal the code dimension " + std::to_string(n));
    if (n >= net.cmin())
        throw InputError("cannot raise the level: dimension " + std::to_string(n) + " already reaches C_min");
    if (opt.verify_preconditions) {
        auto rep = check_secure_subspace(lower, q_lower, rate, level);
        if (!rep.secure)
            throw PreconditionFailed("input is not secure at (" + std::to_string(rate) + "," + std::to_string(level) +
                                     "): fails at A=" + net.format(rep.first_failure()->set));
    } else if (rank(q_lower) != n) {
        throw SingularMatrix();
    }

    std::vector<Vec> b;
    for (std::size_t i = 0; i < rate; ++i) b.push_back(q_lower.column(i));
    const auto cls = classify_wiretap_sets(lower, b, level + 1);
    if (opt.enforce_field_guard) guard(f, cls.independent.size(), "|A''_{r+1}|");

    IncrementResult res{Mat(f, n + 1, n + 1), IncrementTrace{cls.dependent, {}, Vec(f, rate), 0, Vec(f, rate)}};
    IncrementTrace& tr = res.trace;
    Vec& cs = tr.c_star;

    for (const auto& cert : cls.independent) {
        IncrementStep st{cert.set, cert.alpha, gamma_hyperplane(cert, upper).lambda, dot(cert.alpha, cs), {}, {}};
        if (st.tau == 0) {
            std::size_t lead = 0;
            while (cert.alpha[lead] == 0) ++lead;
            Vec h = Vec::unit(f, rate, lead);
            if (tr.steps.empty()) {
                cs = h;
            } else {
                std::optional<Value> xi;
                for (Value x = 0; x < f.order() && !xi; ++x) {
                    bool ok = true;
                    for (const auto& prev : tr.steps)
                        ok = ok && f.add(f.mul(x, dot(prev.alpha, cs)), dot(prev.alpha, h)) != 0;
                    if (ok) xi = x;
                }
                if (!xi) throw FieldTooSmall("no admissible xi in F_" + std::to_string(f.order()));
                cs = scale(*xi, cs) + h;
                st.xi = xi;
            }
            st.h = std::move(h);
        }
        tr.steps.push_back(std::move(st));
        for (const auto& prev : tr.steps)
            if (dot(prev.alpha, cs) == 0)
                throw VerificationFailed("increment loop invariant broken at A=" + net.format(prev.set));
    }

    std::optional<Value> theta;
    for (Value t = 0; t < f.order() && !theta; ++t) {
        bool ok = true;
        for (const auto& st : tr.steps) ok = ok && f.mul(t, dot(st.alpha, cs)) != st.lambda;
        if (ok) theta = t;
    }
    if (!theta) throw FieldTooSmall("no admissible theta in F_" + std::to_string(f.order()));
    tr.theta = *theta;
    tr.c = scale(tr.theta, cs);

    Mat& q = res.q;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t r = 0; r < n; ++r) q(r, i) = q_lower(r, i);
        q(n, i) = i < rate ? tr.c[i] : 0;
    }
    q(n, n) = 1 % f.order();
    if (rank(q) != n + 1) throw VerificationFailed("increment produced a singular matrix");
    auto rep = check_secure_subspace(upper, q, rate, level + 1);
    if (!rep.secure)
        throw VerificationFailed("increment output fails at A=" + net.format(rep.first_failure()->set));
    return res;
}

FixedDimensionResult fixed_dimension(const LinearNetworkCode& base, const BuildOptions& opt) {
    const Network& net = base.network();
    const std::size_t n = base.dim();
    if (n > net.cmin()) throw InputError("dimension exceeds C_min = " + std::to_string(net.cmin()));
    if (opt.verify_preconditions && !is_decodable(base)) throw PreconditionFailed("base code is not decodable");
    if (opt.enforce_field_guard && n > 0)
        guard(base.field(), std::max(net.sinks().size(), max_primary_count(net, n - 1)),
              "max(|T|, |A_r|, 1 <= r <= n-1)");
    // Column i (0-based) must avoid B_i + L_A for A in A_{n-1-i}.
    std::vector<std::vector<Subspace>> ls(n);
    for (std::size_t i = 0; i < n; ++i) ls[i] = spans(base, enumerate_primary_sets(net, n - 1 - i));
    FixedDimensionResult res{sequential_basis(base.field(), n, [&](std::size_t i) { return &ls[i]; }), {}};
    for (std::size_t r = 0; r <= n; ++r) {
        res.members.emplace_back(base, res.q, n - r, r);
        require_secure(res.members.back(), "fixed-dimension construction");
    }
    return res;
}

CodeFamily family_fixed_rate(const LinearNetworkCode& seed, std::size_t rate, const BuildOptions& opt) {
    const Network& net = seed.network();
    const std::size_t cmin = net.cmin();
    if (seed.dim() != cmin)
        throw InputError("seed code must have dimension C_min = " + std::to_string(cmin));
    if (rate > cmin) throw InputError("rate exceeds C_min = " + std::to_string(cmin));
    if (opt.verify_preconditions && !is_decodable(seed)) throw PreconditionFailed("seed code is not decodable");
    if (opt.enforce_field_guard) guard(seed.field(), net.sinks().size(), "|T|");

    CodeFamily fam{seed.network_ptr(), {}};
    LinearNetworkCode lower = truncate(seed, rate);
    Mat q = Mat::identity(seed.field(), rate);
    fam.members.emplace_back(lower, q, rate, 0);
    for (std::size_t level = 0; rate + level < cmin; ++level) {
        LinearNetworkCode upper = truncate(seed, rate + level + 1);
        auto res = increment_level(lower, upper, q, rate, level, opt);
        q = std::move(res.q);
        lower = std::move(upper);
        fam.members.emplace_back(lower, q, rate, level + 1);
    }
    if (!is_local_encoding_preserving(fam)) throw VerificationFailed("fixed-rate family changed intermediate kernels");
    return fam;
}

std::string to_string(RegionTag tag) {
    return tag == RegionTag::Construction2 ? "construction-2" : "construction-3";
}

RegionTag parse_region_tag(const std::string& s) {
    if (s == "c2" || s == "construction-2" || s == "region-c2") return RegionTag::Construction2;
    if (s == "c3" || s == "construction-3" || s == "region-c3") return RegionTag::Construction3;
    if (s == "c1" || s == "construction-1" || s == "region-c1")
        throw InputError("construction-1 is not supported: it relies on the fixed-level, flexible-rate algorithm, "
                         "which is not implemented");
    throw InputError("unknown construction tag '" + s + "'");
}

RegionFamily region_family(const LinearNetworkCode& seed, RegionTag tag, const BuildOptions& opt) {
    const Network& net = seed.network();
    const std::size_t cmin = net.cmin();
    if (seed.dim() != cmin)
        throw InputError("seed code must have dimension C_min = " + std::to_string(cmin));
    if (opt.verify_preconditions && !is_decodable(seed)) throw PreconditionFailed("seed code is not decodable");
    if (opt.enforce_field_guard)
        guard(seed.field(), std::max(net.sinks().size(), cmin > 0 ? max_primary_count(net, cmin - 1) : 0),
              "max(|T|, |A_r|, 1 <= r <= C_min-1)");

    RegionFamily fam{tag, {}};
    if (tag == RegionTag::Construction2) {
        for (std::size_t rate = 0; rate <= cmin; ++rate)
            for (auto& m : family_fixed_rate(seed, rate, opt).members)
                fam.members.emplace(std::make_pair(m.rate(), m.level()), std::move(m));
    } else {
        for (std::size_t n = 0; n <= cmin; ++n)
            for (auto& m : fixed_dimension(truncate(seed, n), opt).members)
                fam.members.emplace(std::make_pair(m.rate(), m.level()), std::move(m));
    }
    if (!is_local_encoding_preserving(fam)) throw VerificationFailed("region family changed intermediate kernels");
    return fam;
}

bool is_local_encoding_preserving(const RegionFamily& family) {
    if (family.members.empty()) return true;
    const auto& first = family.members.begin()->second.deployed();
    for (const auto& [pair, spec] : family.members)
        if (!same_intermediate_kernels(first, spec.deployed())) return false;
    return true;
}

namespace {

// Up to `want` edge-disjoint s-t paths by augmenting on unit capacities.
std::vector<std::vector<EdgeIndex>> disjoint_paths(const Network& net, NodeIndex t, std::size_t want) {
    std::vector<char> used(net.edge_count(), 0);
    for (std::size_t k = 0; k < want; ++k) {
        // BFS over residual arcs; parent holds (edge, forward?) per node.
        std::vector<std::pair<EdgeIndex, bool>> parent(net.node_count(), {net.edge_count(), false});
        std::vector<char> seen(net.node_count(), 0);
        std::deque<NodeIndex> queue{net.source()};
        seen[net.source()] = 1;
        while (!queue.empty() && !seen[t]) {
            NodeIndex u = queue.front();
            queue.pop_front();
            for (EdgeIndex e : net.out_edges(u))
                if (!used[e] && !seen[net.edge(e).head]) {
                    seen[net.edge(e).head] = 1;
                    parent[net.edge(e).head] = {e, true};
                    queue.push_back(net.edge(e).head);
                }
            for (EdgeIndex e : net.in_edges(u))
                if (used[e] && !seen[net.edge(e).tail]) {
                    seen[net.edge(e).tail] = 1;
                    parent[net.edge(e).tail] = {e, false};
                    queue.push_back(net.edge(e).tail);
                }
        }
        if (!seen[t]) break;
        for (NodeIndex v = t; v != net.source();) {
            auto [e, fwd] = parent[v];
            used[e] = fwd ? 1 : 0;
            v = fwd ? net.edge(e).tail : net.edge(e).head;
        }
    }
    std::vector<std::vector<EdgeIndex>> paths;
    std::vector<char> taken(net.edge_count(), 0);
    for (EdgeIndex first : net.out_edges(net.source())) {
        if (!used[first] || taken[first]) continue;
        std::vector<EdgeIndex> p{first};
        taken[first] = 1;
        NodeIndex v = net.edge(first).head;
        while (v != t) {
            EdgeIndex next = net.edge_count();
            for (EdgeIndex e : net.out_edges(v))
                if (used[e] && !taken[e]) {
                    next = e;
                    break;
                }
            if (next == net.edge_count()) break;  // unreachable for a valid flow
            taken[next] = 1;
            p.push_back(next);
            v = net.edge(next).head;
        }
        paths.push_back(std::move(p));
    }
    return paths;
}

}  // namespace

LinearNetworkCode greedy_multicast_code(std::shared_ptr<const Network> net_ptr, Field f) {
    const Network& net = *net_ptr;
    const std::size_t n = net.cmin();
    const std::size_t ne = net.edge_count();
    const NodeIndex s = net.source();

    // Edges are numbered ne + j for the imaginary input d_j.
    auto imaginary = [&](std::size_t j) { return ne + j; };
    struct Usage {
        std::size_t sink;  // index into net.sinks()
        std::size_t path;
        std::size_t pred;  // preceding edge on that path
    };
    std::vector<std::vector<Usage>> usage(ne);
    for (std::size_t ti = 0; ti < net.sinks().size(); ++ti) {
        auto paths = disjoint_paths(net, net.sinks()[ti], n);
        for (std::size_t j = 0; j < n; ++j) {
            std::size_t pred = imaginary(j);
            for (EdgeIndex e : paths[j]) {
                usage[e].push_back({ti, j, pred});
                pred = e;
            }
        }
    }

    std::vector<Vec> g(ne + n, Vec(f, n));
    for (std::size_t j = 0; j < n; ++j) g[imaginary(j)] = Vec::unit(f, n, j);
    // frontier[t][j]: latest edge reached on path j of sink t.
    std::vector<std::vector<std::size_t>> frontier(net.sinks().size(), std::vector<std::size_t>(n));
    for (auto& fr : frontier)
        for (std::size_t j = 0; j < n; ++j) fr[j] = imaginary(j);

    std::vector<Mat> kernels;
    for (NodeIndex v = 0; v < net.node_count(); ++v)
        kernels.emplace_back(f, v == s ? n : net.in_edges(v).size(), net.out_edges(v).size());

    auto inputs_of = [&](NodeIndex u) {
        std::vector<std::size_t> in;
        if (u == s)
            for (std::size_t j = 0; j < n; ++j) in.push_back(imaginary(j));
        else
            in = net.in_edges(u);
        return in;
    };

    for (EdgeIndex e : net.edge_order()) {
        const NodeIndex u = net.edge(e).tail;
        const auto in = inputs_of(u);
        const auto& out = net.out_edges(u);
        const std::size_t col = static_cast<std::size_t>(std::find(out.begin(), out.end(), e) - out.begin());
        std::vector<Value> coef(in.size(), 0);

        if (usage[e].empty()) {
            // Off every path: any combination keeps decodability; use the plain sum.
            std::fill(coef.begin(), coef.end(), 1 % f.order());
        } else {
            std::vector<std::size_t> preds;
            for (const auto& us : usage[e])
                if (std::find(preds.begin(), preds.end(), us.pred) == preds.end()) preds.push_back(us.pred);
            std::sort(preds.begin(), preds.end());
            // The new kernel must stay outside the span of each sink's other frontier vectors.
            std::vector<Subspace> others;
            for (const auto& us : usage[e]) {
                Subspace sp(f, n);
                for (std::size_t j = 0; j < n; ++j)
                    if (j != us.path) sp.extend(g[frontier[us.sink][j]]);
                others.push_back(std::move(sp));
            }
            std::vector<Value> k(preds.size(), 0);
            bool found = false;
            while (!found) {
                std::size_t i = k.size();
                while (i > 0) {
                    --i;
                    if (++k[i] < f.order()) break;
                    k[i] = 0;
                    if (i == 0) throw FieldTooSmall("greedy code construction ran out of coefficients");
                }
                Vec cand(f, n);
                for (std::size_t p = 0; p < preds.size(); ++p) cand = cand + scale(k[p], g[preds[p]]);
                found = std::none_of(others.begin(), others.end(), [&](const Subspace& o) { return o.contains(cand); });
            }
            for (std::size_t p = 0; p < preds.size(); ++p) {
                auto pos = std::find(in.begin(), in.end(), preds[p]) - in.begin();
                coef[static_cast<std::size_t>(pos)] = k[p];
            }
            for (const auto& us : usage[e]) frontier[us.sink][us.path] = e;
        }
        Vec ge(f, n);
        for (std::size_t i = 0; i < in.size(); ++i) {
            kernels[u](i, col) = coef[i];
            ge = ge + scale(coef[i], g[in[i]]);
        }
        g[e] = std::move(ge);
    }
    LinearNetworkCode code(std::move(net_ptr), f, n, std::move(kernels));
    if (!is_decodable(code)) throw VerificationFailed("greedy construction produced an undecodable code");
    return code;
}

}  // namespace slnc

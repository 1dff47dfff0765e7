#include "slnc/secure.hpp"

#include <map>
#include <sstream>

#include "slnc/error.hpp"

namespace slnc {

const SetVerdict* SecurityReport::first_failure() const {
    for (const auto& v : verdicts)
        if (!v.pass) return &v;
    return nullptr;
}

namespace {

// [b_1 .. b_w | f_e, e in A] as an n x (w + |A|) matrix.
Mat stacked(const LinearNetworkCode& code, std::span<const Vec> b, const EdgeSet& a) {
    Mat m(code.field(), code.dim(), b.size() + a.size());
    for (std::size_t i = 0; i < b.size(); ++i) m.set_column(i, b[i]);
    std::size_t c = b.size();
    for (EdgeIndex e : a) m.set_column(c++, code.global_kernel(e));
    return m;
}

// A nullspace vector of stacked(b, A) whose alpha part is nonzero, if any.
std::optional<Vec> alpha_nonzero_solution(const LinearNetworkCode& code, std::span<const Vec> b,
                                          const EdgeSet& a) {
    for (auto& v : nullspace_basis(stacked(code, b, a)))
        for (std::size_t i = 0; i < b.size(); ++i)
            if (v[i] != 0) return std::move(v);
    return std::nullopt;
}

void check_spec_shape(const LinearNetworkCode& base, const Mat& q, std::size_t rate, std::size_t level) {
    if (q.rows() != base.dim() || q.cols() != base.dim())
        throw DimensionMismatch("Q must be " + std::to_string(base.dim()) + "x" + std::to_string(base.dim()));
    if (rate + level != base.dim())
        throw DimensionMismatch("rate + level must equal the code dimension " + std::to_string(base.dim()));
    if (rank(q) != base.dim()) throw SingularMatrix();
}

std::vector<Vec> leading_columns(const Mat& q, std::size_t k) {
    std::vector<Vec> b;
    for (std::size_t i = 0; i < k; ++i) b.push_back(q.column(i));
    return b;
}

std::string join(const std::vector<Value>& xs, std::size_t limit = 32) {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < xs.size() && i < limit; ++i) os << (i ? "," : "") << xs[i];
    if (xs.size() > limit) os << ",...";
    os << ')';
    return os.str();
}

std::uint64_t checked_power(std::uint64_t q, std::size_t n, std::uint64_t budget) {
    std::uint64_t p = 1;
    for (std::size_t i = 0; i < n; ++i) {
        p *= q;
        if (p > budget)
            throw BudgetExceeded("exhaustive check needs q^" + std::to_string(n) + " > " + std::to_string(budget) +
                                 " source inputs");
    }
    return p;
}

}  // namespace

SecurityReport check_subspace_over(const LinearNetworkCode& base, std::span<const Vec> message_basis,
                                   std::size_t rate, std::size_t level, const std::vector<EdgeSet>& sets) {
    SecurityReport rep;
    rep.rate = rate;
    rep.level = level;
    rep.method = Method::Subspace;
    for (const auto& a : sets) {
        SetVerdict v{a, true, {}};
        if (auto sol = alpha_nonzero_solution(base, message_basis, a)) {
            Vec w(base.field(), base.dim());
            for (std::size_t i = 0; i < message_basis.size(); ++i) w = w + scale((*sol)[i], message_basis[i]);
            v.pass = false;
            v.witness = "shared=" + w.str();
        }
        rep.secure = rep.secure && v.pass;
        rep.verdicts.push_back(std::move(v));
    }
    return rep;
}

SecurityReport check_secure_subspace(const LinearNetworkCode& base, const Mat& q, std::size_t rate,
                                     std::size_t level) {
    check_spec_shape(base, q, rate, level);
    auto b = leading_columns(q, rate);
    return check_subspace_over(base, b, rate, level, enumerate_primary_sets(base.network(), level));
}

SecurityReport check_secure_subspace(const SecureCodeSpec& spec) {
    return check_secure_subspace(spec.base(), spec.q(), spec.rate(), spec.level());
}

std::vector<EdgeSet> subsets_up_to(const Network& net, std::size_t r) {
    std::vector<EdgeSet> out;
    for (std::size_t k = 1; k <= r && k <= net.edge_count(); ++k)
        for (auto& a : all_subsets_of_size(net.edge_count(), k)) out.push_back(std::move(a));
    return out;
}

SecurityReport check_secure_exhaustive(const LinearNetworkCode& deployed, std::size_t rate, std::size_t level,
                                       Scope scope, std::uint64_t budget) {
    const std::size_t n = deployed.dim();
    if (rate + level != n)
        throw DimensionMismatch("rate + level must equal the code dimension " + std::to_string(n));
    const Field& f = deployed.field();
    const std::uint64_t q = f.order();
    const std::uint64_t inputs = checked_power(q, n, budget);
    const std::uint64_t keys = checked_power(q, level, budget);
    const std::uint64_t messages = inputs / keys;

    SecurityReport rep;
    rep.rate = rate;
    rep.level = level;
    rep.method = Method::Exhaustive;
    const Network& net = deployed.network();
    std::vector<EdgeSet> sets =
        scope == Scope::PrimaryOnly ? enumerate_primary_sets(net, level) : subsets_up_to(net, level);

    // Symbol on each edge for every input; input index is x read as base-q
    // digits with x_1 most significant, so the message is idx / q^level.
    std::map<EdgeIndex, std::vector<Value>> symbols;
    auto symbols_of = [&](EdgeIndex e) -> const std::vector<Value>& {
        auto it = symbols.find(e);
        if (it != symbols.end()) return it->second;
        const Vec g = deployed.global_kernel(e);
        std::vector<Value> y{0};
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Value> next(y.size() * q);
            for (std::size_t j = 0; j < y.size(); ++j)
                for (Value d = 0; d < q; ++d) next[j * q + d] = f.add(y[j], f.mul(d, g[i]));
            y.swap(next);
        }
        return symbols.emplace(e, std::move(y)).first->second;
    };

    for (const auto& a : sets) {
        SetVerdict v{a, true, {}};
        if (rate > 0) {
            std::uint64_t observations = 1;
            for (std::size_t i = 0; i < a.size(); ++i) observations *= q;
            std::vector<std::uint32_t> counts(observations * messages, 0);
            std::vector<const std::vector<Value>*> cols;
            for (EdgeIndex e : a) cols.push_back(&symbols_of(e));
            for (std::uint64_t x = 0; x < inputs; ++x) {
                std::uint64_t key = 0;
                for (const auto* c : cols) key = key * q + (*c)[x];
                ++counts[key * messages + x / keys];
            }
            for (std::uint64_t key = 0; key < observations && v.pass; ++key) {
                const std::uint32_t* row = &counts[key * messages];
                std::uint64_t total = 0;
                bool uniform = true;
                for (std::uint64_t m = 0; m < messages; ++m) {
                    total += row[m];
                    uniform = uniform && row[m] == row[0];
                }
                if (total == 0 || uniform) continue;
                std::vector<Value> y_a(a.size());
                std::uint64_t k = key;
                for (std::size_t i = a.size(); i-- > 0; k /= q) y_a[i] = static_cast<Value>(k % q);
                v.pass = false;
                v.witness = "y_A=" + join(y_a) + ",m-counts=" + join(std::vector<Value>(row, row + messages));
            }
        }
        rep.secure = rep.secure && v.pass;
        rep.verdicts.push_back(std::move(v));
    }
    return rep;
}

bool check_primary_sufficiency(const LinearNetworkCode& base, const Mat& q, std::size_t rate, std::size_t level) {
    const bool primary = check_secure_subspace(base, q, rate, level).secure;
    auto b = leading_columns(q, rate);
    const bool all = check_subspace_over(base, b, rate, level, subsets_up_to(base.network(), level)).secure;
    return primary == all;
}

WiretapClassification classify_wiretap_sets(const LinearNetworkCode& base, std::span<const Vec> message_basis,
                                            std::size_t level) {
    if (level == 0) throw InputError("classification needs a level of at least 1");
    for (const auto& b : message_basis)
        if (b.size() != base.dim()) throw DimensionMismatch("message vector length differs from code dimension");
    if (Subspace(base.field(), base.dim(), message_basis).dim() != message_basis.size())
        throw InputError("message vectors are linearly dependent");
    const std::size_t rate = message_basis.size();
    auto below = check_subspace_over(base, message_basis, rate, level - 1,
                                     enumerate_primary_sets(base.network(), level - 1));
    if (!below.secure)
        throw PreconditionFailed("input is not secure at level " + std::to_string(level - 1) + " (fails at A=" +
                                 base.network().format(below.first_failure()->set) + ")");

    const Field& f = base.field();
    WiretapClassification out;
    for (const auto& a : enumerate_primary_sets(base.network(), level)) {
        auto sol = alpha_nonzero_solution(base, message_basis, a);
        if (!sol) {
            out.dependent.push_back(a);
            continue;
        }
        std::size_t lead = 0;
        while ((*sol)[lead] == 0) ++lead;
        const Vec v = scale(f.inv((*sol)[lead]), *sol);
        Certificate c{a, Vec(f, rate), Vec(f, a.size())};
        for (std::size_t i = 0; i < rate; ++i) c.alpha[i] = v[i];
        // The system is [b | F_A] (alpha, -beta)^T = 0.
        for (std::size_t j = 0; j < a.size(); ++j) c.beta[j] = f.neg(v[rate + j]);
        out.independent.push_back(std::move(c));
    }
    return out;
}

ForbiddenHyperplane gamma_hyperplane(const Certificate& cert, const LinearNetworkCode& extended) {
    if (cert.alpha.is_zero()) throw InputError("certificate has alpha = 0; the set is not in the independent class");
    if (cert.beta.size() != cert.set.size()) throw DimensionMismatch("certificate beta length differs from |A|");
    if (extended.dim() == 0) throw DimensionMismatch("extended code has dimension 0");
    const Field& f = extended.field();
    const std::size_t last = extended.dim() - 1;
    Value lambda = 0;
    std::size_t j = 0;
    for (EdgeIndex e : cert.set) lambda = f.add(lambda, f.mul(cert.beta[j++], extended.global_kernels()(last, e)));
    return {cert.set, cert.alpha, lambda};
}

}  // namespace slnc

// Acceptance suite: one line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "slnc/cli.hpp"
#include "slnc/construct.hpp"
#include "slnc/error.hpp"
#include "slnc/randgen.hpp"
#include "slnc/secure.hpp"

using namespace slnc;
namespace fs = std::filesystem;

namespace {

// Pinned sizes and tolerances. All comparisons are exact.
constexpr std::size_t kOracleInstances = 200;      // criterion 5 / 6 corpus size
constexpr std::uint64_t kMaxEnumeration = 3125;   // q^n cap for the exhaustive oracle
constexpr std::size_t kIncrementInstances = 60;    // criterion 7
constexpr std::size_t kFixedDimInstances = 40;     // criterion 8
constexpr std::size_t kCutDags = 50;               // criterion 11
constexpr std::size_t kCutSetSize = 3;
constexpr std::uint64_t kSeed = 20240601;

struct Outcome {
    bool pass;
    std::string detail;
};

Vec col(const Field& f, std::initializer_list<std::int64_t> v) { return Vec(f, v); }

Outcome golden_kernels() {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    auto c2 = truncate(c3, 2);
    Field f(5);
    const Network& net = *nf.network;
    std::map<std::string, Vec> want3{{"e1", col(f, {0, 1, 1})},  {"e2", col(f, {1, 0, 1})},  {"e3", col(f, {1, 0, 2})},
                                     {"e4", col(f, {0, 1, 2})},  {"e5", col(f, {1, 0, 1})},  {"e6", col(f, {1, 0, 1})},
                                     {"e7", col(f, {1, 0, 2})},  {"e8", col(f, {1, 0, 2})},  {"e9", col(f, {0, 0, 1})},
                                     {"e10", col(f, {0, 0, 1})}, {"e11", col(f, {0, 0, 1})}};
    std::map<std::string, Vec> want2{{"e1", col(f, {0, 1})},  {"e2", col(f, {1, 0})},  {"e3", col(f, {1, 0})},
                                     {"e4", col(f, {0, 1})},  {"e5", col(f, {1, 0})},  {"e6", col(f, {1, 0})},
                                     {"e7", col(f, {1, 0})},  {"e8", col(f, {1, 0})},  {"e9", col(f, {0, 0})},
                                     {"e10", col(f, {0, 0})}, {"e11", col(f, {0, 0})}};
    std::size_t bad = 0;
    for (auto& [id, v] : want3) bad += !(c3.global_kernel(net.edge_index(id)) == v);
    for (auto& [id, v] : want2) bad += !(c2.global_kernel(net.edge_index(id)) == v);
    return {bad == 0, std::to_string(22 - bad) + "/22 kernels match"};
}

Outcome golden_primary_sets() {
    auto nf = fixture::two_sink();
    const Network& net = *nf.network;
    auto fmt = [&](std::size_t r) {
        std::vector<std::string> v;
        for (auto& a : enumerate_primary_sets(net, r)) v.push_back(net.format(a));
        return v;
    };
    const bool a1 = fmt(1) == std::vector<std::string>{"e1", "e2", "e3", "e4", "e9"};
    const bool a2 = fmt(2) == std::vector<std::string>{"e1,e2", "e1,e3", "e1,e4", "e1,e9",
                                                       "e2,e3", "e2,e4", "e3,e4", "e4,e9"};
    return {a1 && a2, "|A_1|=" + std::to_string(fmt(1).size()) + " |A_2|=" + std::to_string(fmt(2).size())};
}

Outcome golden_increment_trace() {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    auto c2 = truncate(c3, 2);
    Field f(5);
    const Network& net = *nf.network;
    Mat q2 = fixture::m5({{1, 1}, {1, 0}});
    std::vector<Vec> b{q2.column(0)};
    auto cls = classify_wiretap_sets(c2, b, 2);
    std::set<std::string> ind;
    std::multiset<Value> lambdas;
    std::vector<ForbiddenHyperplane> planes;
    for (auto& cert : cls.independent) {
        ind.insert(net.format(cert.set));
        planes.push_back(gamma_hyperplane(cert, c3));
        lambdas.insert(planes.back().lambda);
    }
    std::set<Value> allowed;
    for (Value c = 0; c < 5; ++c) {
        bool hit = false;
        for (auto& p : planes) hit = hit || p.contains(Vec(f, std::vector<Value>{c}));
        if (!hit) allowed.insert(c);
    }
    Mat q3 = fixture::m5({{1, 1, 0}, {1, 0, 0}, {1, 0, 1}});
    const bool q3_ok = check_secure_subspace(c3, q3, 1, 2).secure;
    const bool ok = ind == std::set<std::string>{"e1,e2", "e1,e3", "e2,e4", "e3,e4"} &&
                    lambdas == std::multiset<Value>{2, 3, 3, 4} && allowed == std::set<Value>{0, 1} && q3_ok;
    std::string d = "|A''_2|=" + std::to_string(ind.size()) + " lambda={";
    for (auto l : lambdas) d += std::to_string(l) + (l == *lambdas.rbegin() ? "" : ",");
    d += "} allowed={";
    for (auto c : allowed) d += std::to_string(c) + (c == *allowed.rbegin() ? "" : ",");
    d += "} reference Q3 " + std::string(q3_ok ? "secure" : "NOT secure");
    return {ok, d};
}

Outcome golden_fixed_dimension() {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    Mat q = fixture::m5({{1, 0, 0}, {1, 1, 0}, {0, 0, 1}});
    std::size_t ok = 0;
    for (std::size_t r = 0; r <= 3; ++r) ok += check_secure_subspace(c3, q, 3 - r, r).secure;
    return {ok == 4, std::to_string(ok) + "/4 pairs secure"};
}

// Shared corpus for criteria 5 and 6.
struct Instance {
    LinearNetworkCode code;
    Mat q;
    std::size_t rate, level;
};

std::vector<Instance> oracle_corpus() {
    std::mt19937_64 rng(kSeed);
    const std::uint64_t primes[] = {2, 3, 5, 7};
    std::vector<Instance> out;
    while (out.size() < kOracleInstances) {
        auto net = random_dag(rng);
        const Field f(primes[rng() % 4]);
        std::size_t n = net->cmin();
        while (n > 0 && oracle::ipow(f.order(), n) > kMaxEnumeration) --n;
        if (n < 2) continue;
        auto code = random_code(net, f, n, rng);
        if (!code) continue;
        // 1 <= rate < n, so every instance has something to leak and something to hide.
        const std::size_t rate = 1 + rng() % (n - 1);
        Mat q = random_invertible(f, n, rng);
        // Bias half the corpus toward secure instances so both verdicts occur.
        if (rng() % 2) {
            BuildOptions loose;
            loose.enforce_field_guard = false;
            try {
                q = build_fixed_pair(*code, rate, n - rate, loose).q();
            } catch (const Error&) {
            }
        }
        out.push_back({*code, q, rate, n - rate});
    }
    return out;
}

Outcome oracle_equivalence(const std::vector<Instance>& corpus) {
    std::size_t agree = 0, secure = 0;
    for (const auto& in : corpus) {
        SecureCodeSpec spec(in.code, in.q, in.rate, in.level);
        const bool sub = check_secure_subspace(spec).secure;
        const bool ex = check_secure_exhaustive(spec.deployed(), in.rate, in.level, Scope::PrimaryOnly).secure;
        agree += sub == ex;
        secure += sub;
    }
    return {agree == corpus.size() && corpus.size() >= kOracleInstances,
            std::to_string(agree) + "/" + std::to_string(corpus.size()) + " agree (" + std::to_string(secure) +
                " secure)"};
}

Outcome primary_sufficiency(const std::vector<Instance>& corpus) {
    std::size_t counter = 0, checked = 0;
    for (const auto& in : corpus) {
        SecureCodeSpec spec(in.code, in.q, in.rate, in.level);
        if (!check_secure_subspace(spec).secure) continue;
        ++checked;
        counter += !check_secure_exhaustive(spec.deployed(), in.rate, in.level, Scope::AllSubsets).secure;
    }
    return {counter == 0 && checked > 0,
            std::to_string(counter) + " counterexamples over " + std::to_string(checked) + " secure instances"};
}

Outcome increment_bound() {
    std::mt19937_64 rng(kSeed + 3);
    const std::uint64_t primes[] = {3, 5, 7, 11};
    std::size_t done = 0, fail = 0, tries = 0;
    while (done < kIncrementInstances && tries < 20000) {
        ++tries;
        auto net = random_dag(rng);
        if (net->cmin() < 2) continue;
        const Field f(primes[rng() % 4]);
        auto seed = random_code(net, f, net->cmin(), rng);
        if (!seed) continue;
        const std::size_t n = 1 + rng() % (net->cmin() - 1);
        const std::size_t rate = 1 + rng() % n;
        auto lower = truncate(*seed, n);
        BuildOptions loose;
        loose.enforce_field_guard = false;
        std::optional<SecureCodeSpec> start;
        try {
            start = build_fixed_pair(lower, rate, n - rate, loose);
        } catch (const Error&) {
            continue;
        }
        std::vector<Vec> b = start->message_basis();
        const auto cls = classify_wiretap_sets(lower, b, start->level() + 1);
        if (f.order() <= cls.independent.size()) continue;
        ++done;
        try {
            auto upper = truncate(*seed, n + 1);
            auto res = increment_level(lower, upper, start->q(), rate, start->level());
            fail += !check_secure_subspace(upper, res.q, rate, start->level() + 1).secure;
        } catch (const Error&) {
            ++fail;
        }
    }
    return {fail == 0 && done == kIncrementInstances,
            std::to_string(fail) + " failures over " + std::to_string(done) + " instances with q > |A''|"};
}

Outcome fixed_dimension_bound() {
    std::mt19937_64 rng(kSeed + 4);
    const std::uint64_t primes[] = {5, 7, 11, 13, 17};
    std::size_t done = 0, fail = 0, tries = 0;
    while (done < kFixedDimInstances && tries < 20000) {
        ++tries;
        auto net = random_dag(rng);
        const std::size_t n = 1 + rng() % net->cmin();
        const std::size_t bound = std::max(net->sinks().size(), max_primary_count(*net, n - 1));
        std::vector<std::uint64_t> ok;
        for (auto q : primes)
            if (q > bound) ok.push_back(q);
        if (ok.empty()) continue;
        const Field f(ok[rng() % ok.size()]);
        auto code = random_code(net, f, n, rng);
        if (!code) continue;
        ++done;
        try {
            auto res = fixed_dimension(*code);
            bool all = res.members.size() == n + 1;
            for (auto& m : res.members) all = all && check_secure_subspace(m).secure;
            fail += !all;
        } catch (const Error&) {
            ++fail;
        }
    }
    return {fail == 0 && done == kFixedDimInstances,
            std::to_string(fail) + " failures over " + std::to_string(done) + " guarded instances"};
}

Outcome region_preserving() {
    auto nf = fixture::two_sink();
    auto seed = greedy_multicast_code(nf.network, Field(11));
    std::string d;
    bool ok = true;
    for (auto tag : {RegionTag::Construction2, RegionTag::Construction3}) {
        auto fam = region_family(seed, tag);
        std::size_t verified = 0;
        for (auto& [pair, spec] : fam.members)
            verified += check_secure_subspace(spec).secure && is_decodable(spec.deployed());
        bool pairwise = true;
        for (auto& [p1, a] : fam.members)
            for (auto& [p2, b] : fam.members) pairwise = pairwise && same_intermediate_kernels(a.deployed(), b.deployed());
        ok = ok && fam.members.size() == 10 && verified == 10 && pairwise;
        d += to_string(tag) + ": " + std::to_string(fam.members.size()) + " pairs, " + std::to_string(verified) +
             " verified, kernels " + (pairwise ? "shared" : "DIFFER") + "; ";
    }
    d.resize(d.size() - 2);
    return {ok, d};
}

Outcome fixed_rate_f5() {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    auto fam = family_fixed_rate(c3, 1);
    std::size_t ok = 0;
    for (std::size_t r = 0; r < fam.members.size(); ++r) {
        const auto& m = fam.members[r];
        ok += m.rate() == 1 && m.level() == r && check_secure_subspace(m).secure &&
              check_secure_exhaustive(m.deployed(), 1, r, Scope::AllSubsets).secure;
    }
    return {fam.members.size() == 3 && ok == 3 && is_local_encoding_preserving(fam),
            std::to_string(ok) + "/3 members pass subspace and exhaustive checks"};
}

Outcome primary_cut_oracle() {
    std::vector<std::shared_ptr<const Network>> nets{fixture::two_sink().network};
    std::mt19937_64 rng(kSeed + 11);
    while (nets.size() < kCutDags + 1) nets.push_back(random_dag(rng));
    std::size_t sets = 0, bad = 0;
    for (auto& net : nets)
        for (std::size_t k = 1; k <= kCutSetSize; ++k)
            for (auto& a : oracle::subsets(net->edge_count(), k)) {
                ++sets;
                auto brute = oracle::primary_cuts(*net, a);
                bad += !(brute.size() == 1 && brute.front() == primary_min_cut(*net, a));
            }
    return {bad == 0, std::to_string(bad) + " mismatches over " + std::to_string(sets) + " edge sets"};
}

std::map<std::string, std::string> snapshot(const fs::path& dir) {
    std::map<std::string, std::string> out;
    for (auto& e : fs::directory_iterator(dir)) {
        std::ifstream in(e.path(), std::ios::binary);
        out[e.path().filename().string()] = {std::istreambuf_iterator<char>(in), {}};
    }
    return out;
}

Outcome determinism() {
    const auto base = fs::temp_directory_path() / "slnc_acceptance_det";
    fs::remove_all(base);
    std::map<std::string, std::string> runs[2];
    for (int i = 0; i < 2; ++i) {
        const auto dir = base / std::to_string(i);
        std::ostringstream out, err;
        int code = run_cli({"code", "construct", fixture::data("two_sink.net"), "--mode", "region-c3", "--field", "11",
                            "--out", dir.string()},
                           out, err);
        if (code != kExitOk) return {false, "run " + std::to_string(i) + " exited " + std::to_string(code)};
        runs[i] = snapshot(dir);
    }
    fs::remove_all(base);
    return {runs[0] == runs[1] && runs[0].size() == 11,
            std::to_string(runs[0].size()) + " files, " + (runs[0] == runs[1] ? "identical" : "DIFFERENT")};
}

}  // namespace

int main() {
    using clock = std::chrono::steady_clock;
    std::vector<Instance> corpus;
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"two-sink global kernels", golden_kernels},
        {"two-sink primary sets", golden_primary_sets},
        {"two-sink increment trace", golden_increment_trace},
        {"hand-built fixed-dimension matrix", golden_fixed_dimension},
        {"subspace vs exhaustive oracle",
         [&] {
             corpus = oracle_corpus();
             return oracle_equivalence(corpus);
         }},
        {"primary sets suffice (all subsets <= r)", [&] { return primary_sufficiency(corpus); }},
        {"increment under q > |A''|", increment_bound},
        {"fixed dimension under its guard", fixed_dimension_bound},
        {"region families preserve local kernels", region_preserving},
        {"fixed-rate family on F_5", fixed_rate_f5},
        {"primary min cut vs brute force", primary_cut_oracle},
        {"deterministic construct output", determinism},
    };
    int failed = 0;
    const auto start = clock::now();
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - t0).count();
        failed += !o.pass;
        std::printf("[%s] %2zu %s: %s (%lld ms)\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    o.detail.c_str(), static_cast<long long>(ms));
    }
    const auto total = std::chrono::duration_cast<std::chrono::milliseconds>(clock::now() - start).count();
    std::printf("%zu/%zu criteria passed in %lld ms\n", criteria.size() - failed, criteria.size(),
                static_cast<long long>(total));
    return failed ? 1 : 0;
}

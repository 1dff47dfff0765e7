#include <doctest.h>

#include <random>
#include <set>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "slnc/error.hpp"
#include "slnc/randgen.hpp"
#include "slnc/secure.hpp"

using namespace slnc;

namespace {

struct TwoSink {
    NetworkFile nf = fixture::two_sink();
    LinearNetworkCode c3 = fixture::c3(nf);
    LinearNetworkCode c2 = truncate(c3, 2);
    Field f{5};
    Mat q2 = fixture::m5({{1, 1}, {1, 0}});
};

}  // namespace

TEST_CASE("two-sink Q^(2) is secure at (1,1)") {
    TwoSink ex;
    auto rep = check_secure_subspace(ex.c2, ex.q2, 1, 1);
    CHECK(rep.secure);
    CHECK(rep.verdicts.size() == 5);
    CHECK(rep.first_failure() == nullptr);
    SecureCodeSpec spec(ex.c2, ex.q2, 1, 1);
    CHECK(check_secure_exhaustive(spec.deployed(), 1, 1).secure);
    CHECK(check_secure_exhaustive(spec.deployed(), 1, 1, Scope::AllSubsets).secure);
}

TEST_CASE("identity Q at (1,1) leaks on e2") {
    TwoSink ex;
    auto rep = check_secure_subspace(ex.c2, Mat::identity(ex.f, 2), 1, 1);
    CHECK_FALSE(rep.secure);
    REQUIRE(rep.first_failure());
    CHECK(ex.nf.network->format(rep.first_failure()->set) == "e2");
    CHECK(rep.first_failure()->witness.rfind("shared=", 0) == 0);

    SecureCodeSpec spec(ex.c2, Mat::identity(ex.f, 2), 1, 1);
    auto ex_rep = check_secure_exhaustive(spec.deployed(), 1, 1);
    CHECK_FALSE(ex_rep.secure);
    REQUIRE(ex_rep.first_failure());
    CHECK(ex.nf.network->format(ex_rep.first_failure()->set) == "e2");
    CHECK(ex_rep.first_failure()->witness.find("m-counts=") != std::string::npos);
}

TEST_CASE("singular Q is rejected by the subspace checker") {
    TwoSink ex;
    CHECK_THROWS_AS(check_secure_subspace(ex.c2, fixture::m5({{1, 2}, {2, 4}}), 1, 1), SingularMatrix);
}

TEST_CASE("exhaustive budget") {
    TwoSink ex;
    CHECK_THROWS_AS(check_secure_exhaustive(ex.c3, 1, 2, Scope::PrimaryOnly, 100), BudgetExceeded);
    CHECK_NOTHROW(check_secure_exhaustive(ex.c3, 1, 2, Scope::PrimaryOnly, 125));
}

TEST_CASE("classification for the increment from (1,1) to (1,2)") {
    TwoSink ex;
    std::vector<Vec> b{ex.q2.column(0)};
    auto cls = classify_wiretap_sets(ex.c2, b, 2);
    const Network& net = *ex.nf.network;
    std::vector<std::string> dep, ind;
    for (auto& a : cls.dependent) dep.push_back(net.format(a));
    for (auto& c : cls.independent) ind.push_back(net.format(c.set));
    CHECK(ind == std::vector<std::string>{"e1,e2", "e1,e3", "e2,e4", "e3,e4"});
    CHECK(dep == std::vector<std::string>{"e1,e4", "e1,e9", "e2,e3", "e4,e9"});

    std::multiset<Value> lambdas;
    for (auto& cert : cls.independent) {
        CHECK(cert.alpha[0] == 1);
        auto h = gamma_hyperplane(cert, ex.c3);
        lambdas.insert(h.lambda);
        // The hyperplane matches Gamma_A built from its definition.
        std::set<std::vector<Value>> from_plane;
        for (Value c = 0; c < 5; ++c)
            if (h.contains(Vec(ex.f, std::vector<Value>{c}))) from_plane.insert({c});
        CHECK(from_plane == oracle::gamma(ex.c3, b, cert.set));
    }
    CHECK(lambdas == std::multiset<Value>{2, 3, 3, 4});

    std::set<Value> allowed;
    for (Value c = 0; c < 5; ++c) {
        bool hit = false;
        for (auto& cert : cls.independent) hit = hit || gamma_hyperplane(cert, ex.c3).contains(Vec(ex.f, std::vector<Value>{c}));
        if (!hit) allowed.insert(c);
    }
    CHECK(allowed == std::set<Value>{0, 1});
}

TEST_CASE("classification needs security one level down") {
    TwoSink ex;
    std::vector<Vec> b{Vec(ex.f, {1, 0})};
    CHECK_THROWS_AS(classify_wiretap_sets(ex.c2, b, 2), PreconditionFailed);
}

TEST_CASE("hand-built Q^(3) is secure at (1,2)") {
    TwoSink ex;
    Mat q3 = fixture::m5({{1, 1, 0}, {1, 0, 0}, {1, 0, 1}});
    CHECK(check_secure_subspace(ex.c3, q3, 1, 2).secure);
    SecureCodeSpec spec(ex.c3, q3, 1, 2);
    CHECK(oracle::secure_over(spec.deployed(), 1, subsets_up_to(*ex.nf.network, 2)));
}

TEST_CASE("every choice of c outside the forbidden hyperplanes gives a secure extension") {
    TwoSink ex;
    // Q^(3) = [b_1 with c appended, e_1, e_3]
    for (Value c = 0; c < 5; ++c) {
        Mat q3 = fixture::m5({{1, 1, 0}, {1, 0, 0}, {static_cast<std::int64_t>(c), 0, 1}});
        CHECK(check_secure_subspace(ex.c3, q3, 1, 2).secure == (c <= 1));
    }
}

TEST_CASE("subspace verdict matches the counting oracle on random instances") {
    std::mt19937_64 rng(2024);
    int checked = 0;
    while (checked < 80) {
        auto net = random_dag(rng);
        Field f(rng() % 2 ? 2 : 3);
        const std::size_t n = std::min<std::size_t>(net->cmin(), 3);
        auto code = random_code(net, f, n, rng);
        if (!code) continue;
        const std::size_t rate = rng() % (n + 1);
        Mat q = random_invertible(f, n, rng);
        SecureCodeSpec spec(*code, q, rate, n - rate);
        const bool sub = check_secure_subspace(spec).secure;
        CHECK(sub == oracle::secure_over(spec.deployed(), rate, enumerate_primary_sets(*net, n - rate)));
        CHECK(sub == check_secure_exhaustive(spec.deployed(), rate, n - rate).secure);
        CHECK(check_primary_sufficiency(*code, q, rate, n - rate));
        ++checked;
    }
}

TEST_CASE("subsets_up_to orders by size then lexicographically") {
    auto nf = fixture::two_sink();
    auto s = subsets_up_to(*nf.network, 2);
    CHECK(s.size() == 11 + 55);
    CHECK(nf.network->format(s.front()) == "e1");
    CHECK(nf.network->format(s[11]) == "e1,e2");
    CHECK(subsets_up_to(*nf.network, 0).empty());
}

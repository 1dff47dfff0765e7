#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "slnc/error.hpp"
#include "slnc/lnc.hpp"
#include "slnc/randgen.hpp"

using namespace slnc;

namespace {

Vec kernel_of(const LinearNetworkCode& c, const char* id) {
    return c.global_kernel(c.network().edge_index(id));
}

}  // namespace

TEST_CASE("two-sink global kernels of C_3 and C_2") {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    Field f(5);
    CHECK(kernel_of(c3, "e1") == Vec(f, {0, 1, 1}));
    for (auto e : {"e2", "e5", "e6"}) CHECK(kernel_of(c3, e) == Vec(f, {1, 0, 1}));
    for (auto e : {"e3", "e7", "e8"}) CHECK(kernel_of(c3, e) == Vec(f, {1, 0, 2}));
    CHECK(kernel_of(c3, "e4") == Vec(f, {0, 1, 2}));
    for (auto e : {"e9", "e10", "e11"}) CHECK(kernel_of(c3, e) == Vec(f, {0, 0, 1}));

    auto c2 = truncate(c3, 2);
    CHECK(kernel_of(c2, "e1") == Vec(f, {0, 1}));
    CHECK(kernel_of(c2, "e4") == Vec(f, {0, 1}));
    for (auto e : {"e2", "e3", "e5", "e6", "e7", "e8"}) CHECK(kernel_of(c2, e) == Vec(f, {1, 0}));
    for (auto e : {"e9", "e10", "e11"}) CHECK(kernel_of(c2, e) == Vec(f, {0, 0}));
    CHECK(same_intermediate_kernels(c2, c3));
}

TEST_CASE("C_3 and its truncations are decodable") {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    CHECK(is_decodable(c3));
    // f_1 = (0,1), f_5 = (1,0), f_10 = 0: rank 2, still decodable.
    CHECK(is_decodable(truncate(c3, 2)));
    CHECK(is_decodable(truncate(c3, 1)));
}

TEST_CASE("transmit equals x times the global kernels") {
    std::mt19937_64 rng(17);
    for (int i = 0; i < 60; ++i) {
        auto net = random_dag(rng);
        Field f(i % 2 ? 3 : 7);
        auto code = random_code(net, f, std::min<std::size_t>(net->cmin(), 3), rng, false);
        REQUIRE(code);
        Vec x = random_matrix(f, code->dim(), 1, rng).column(0);
        auto y = transmit(*code, x);
        for (EdgeIndex e = 0; e < net->edge_count(); ++e) CHECK(y[e] == dot(x, code->global_kernel(e)));
    }
}

TEST_CASE("decoding recovers the source input at every sink") {
    std::mt19937_64 rng(29);
    for (int i = 0; i < 60; ++i) {
        auto net = random_dag(rng);
        Field f(5);
        auto code = random_code(net, f, net->cmin(), rng);
        if (!code) continue;
        Vec x = random_matrix(f, code->dim(), 1, rng).column(0);
        auto y = transmit(*code, x);
        for (NodeIndex t : net->sinks()) {
            std::vector<Value> yt;
            for (EdgeIndex e : net->in_edges(t)) yt.push_back(y[e]);
            CHECK(decode_at_sink(*code, t, yt) == x);
        }
    }
}

TEST_CASE("undecodable code reports rank deficiency") {
    auto nf = fixture::two_sink();
    auto zero = LinearNetworkCode::zero(nf.network, nf.field, 2);
    CHECK_FALSE(is_decodable(zero));
    NodeIndex t1 = nf.network->node("t1");
    CHECK_THROWS_AS(decode_at_sink(zero, t1, std::vector<Value>(3, 0)), PreconditionFailed);
}

TEST_CASE("transform multiplies the global kernels by Q") {
    std::mt19937_64 rng(31);
    for (int i = 0; i < 40; ++i) {
        auto net = random_dag(rng);
        Field f(7);
        const std::size_t n = net->cmin();
        auto code = random_code(net, f, n, rng, false);
        REQUIRE(code);
        Mat q = random_invertible(f, n, rng);
        auto t = transform(*code, q);
        CHECK(t.global_kernels() == q * code->global_kernels());
        CHECK(same_intermediate_kernels(t, *code));
        CHECK(is_decodable(t) == is_decodable(*code));
    }
}

TEST_CASE("truncations keep intermediate kernels and take the top rows") {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    auto fam = truncation_family(c3);
    REQUIRE(fam.members.size() == 3);
    CHECK(is_local_encoding_preserving(fam));
    for (const auto& m : fam.members) {
        CHECK(m.base().global_kernels() == c3.global_kernels().top_rows(m.dim()));
        CHECK(m.rate() == m.dim());
        CHECK(m.level() == 0);
    }
    CHECK_THROWS_AS(truncate(c3, 4), DimensionMismatch);
}

TEST_CASE("kernel shapes are validated") {
    auto nf = fixture::two_sink();
    auto c3 = fixture::c3(nf);
    auto ks = c3.kernels();
    ks[nf.network->node("v3")] = Mat(nf.field, 1, 1);
    CHECK_THROWS_AS(LinearNetworkCode(nf.network, nf.field, 3, ks), DimensionMismatch);
}

TEST_CASE("secure code spec checks Q") {
    auto nf = fixture::two_sink();
    auto c2 = truncate(fixture::c3(nf), 2);
    Field f(5);
    CHECK_THROWS_AS(SecureCodeSpec(c2, fixture::m5({{1, 1}, {1, 1}}), 1, 1), SingularMatrix);
    CHECK_THROWS_AS(SecureCodeSpec(c2, Mat::identity(f, 2), 2, 1), DimensionMismatch);
    CHECK_THROWS_AS(SecureCodeSpec(c2, Mat::identity(f, 3), 2, 1), DimensionMismatch);
    SecureCodeSpec s(c2, fixture::m5({{1, 1}, {1, 0}}), 1, 1);
    CHECK(s.message_basis().size() == 1);
    CHECK(s.message_basis()[0] == Vec(f, {1, 1}));
    CHECK(s.deployed().global_kernels() == invert(s.q()) * c2.global_kernels());
}

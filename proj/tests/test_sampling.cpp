#include <catch2/catch_amalgamated.hpp>

#include <chainring/counting.hpp>
#include <chainring/sampling.hpp>
#include <chainring/stats.hpp>

#include <map>

using namespace chainring;

namespace {

std::vector<uint64_t> mat_key(const Mat& A) {
    std::vector<uint64_t> key;
    key.reserve(static_cast<size_t>(A.rows() * A.cols()));
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) key.push_back(A.rep(i, j));
    return key;
}

// All matrices in R^{n x mu} with the given shape.
std::vector<std::vector<uint64_t>> enumerate_with_shape(const RingPtr& ring, int n,
                                                        const Shape& mu, const Shape& target) {
    const long cells = ambient_cell_count(n, mu);
    uint64_t total = 1;
    for (long i = 0; i < cells; ++i) total *= ring->q();
    std::vector<std::vector<uint64_t>> out;
    std::vector<uint32_t> digits(static_cast<size_t>(cells));
    for (uint64_t idx = 0; idx < total; ++idx) {
        uint64_t x = idx;
        for (auto& d : digits) { d = static_cast<uint32_t>(x % ring->q()); x /= ring->q(); }
        Mat A = mat_from_ambient_digits(ring, n, mu, digits);
        if (shape_of(A) == target) out.push_back(mat_key(A));
    }
    return out;
}

}  // namespace

TEST_CASE("determinism: same seed, same stream, same draws") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{2, 3};
    Rng a(12345, 4), b(12345, 4);
    for (int i = 0; i < 20; ++i) {
        RankTSample sa = uniform_rank_t(a, R, 3, mu, 1);
        RankTSample sb = uniform_rank_t(b, R, 3, mu, 1);
        CHECK(sa.z == sb.z);
        CHECK(sa.b == sb.b);
        CHECK(sa.e == sb.e);
    }
    // distinct substreams diverge
    Rng root(12345, 0);
    Rng s0 = root.substream(0), s1 = root.substream(1);
    bool differ = false;
    for (int i = 0; i < 8; ++i) differ |= s0.next_u32() != s1.next_u32();
    CHECK(differ);
}

TEST_CASE("uniform_matrix hits every outcome uniformly (chi-square)") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{1, 2};
    // support has q^{n|mu|} = 2^3 = 8 outcomes
    std::map<std::vector<uint64_t>, uint64_t> tally;
    Rng rng(777, 0);
    const uint64_t draws = 100000;
    for (uint64_t i = 0; i < draws; ++i) ++tally[mat_key(uniform_matrix(rng, R, 1, mu))];
    REQUIRE(tally.size() == 8);
    std::vector<uint64_t> observed;
    for (const auto& [k, c] : tally) observed.push_back(c);
    std::vector<double> expected(8, static_cast<double>(draws) / 8.0);
    double stat = chi2_statistic(observed, expected);
    CHECK(stat < chi2_quantile(0.999, 7));

    // zero shape gives the zero matrix
    Mat z = uniform_matrix(rng, R, 3, Shape::zero(2));
    CHECK(z.is_zero());
}

TEST_CASE("uniform_full_column_rank") {
    auto R = Ring::integers_mod(2, 2);
    SECTION("N=n=1 over Z4 draws only units") {
        Rng rng(2024, 0);
        std::map<uint64_t, uint64_t> tally;
        for (int i = 0; i < 10000; ++i) ++tally[uniform_full_column_rank(rng, R, 1, 1).rep(0, 0)];
        REQUIRE(tally.size() == 2);
        CHECK(tally.count(1) == 1);
        CHECK(tally.count(3) == 1);
        // binomial check of the split at z = 3
        double p = static_cast<double>(tally[1]) / 10000.0;
        CHECK(std::fabs(p - 0.5) <= 3.0 * std::sqrt(0.25 / 10000.0));
    }
    SECTION("acceptance rate matches the full-rank density within 3 sigma") {
        Rng rng(5150, 0);
        const int N = 3, n = 2, trials = 10000;
        CountContext ctx{2, 2};
        bigint hits = full_row_rank_count(ctx, n, N);  // column rank of N x n = row rank of n x N
        bigint total = pow_int(2, 2UL * N * n);
        double p_accept = big_ratio_as_double(hits, total);
        long draws_used = 0;
        for (int i = 0; i < trials; ++i) {
            int retries = 0;
            Mat A = uniform_full_column_rank(rng, R, N, n, &retries);
            CHECK(rank_predicates(A).full_column_rank);
            draws_used += retries + 1;
        }
        // trials successes out of draws_used attempts, each accepting w.p. p_accept
        double phat = static_cast<double>(trials) / static_cast<double>(draws_used);
        double sigma = std::sqrt(p_accept * (1 - p_accept) / static_cast<double>(draws_used));
        CHECK(std::fabs(phat - p_accept) <= 3.0 * sigma);
    }
}

TEST_CASE("uniform_invertible") {
    auto R8 = Ring::integers_mod(2, 3);
    Rng rng(91, 0);
    std::map<uint64_t, uint64_t> tally;
    for (int i = 0; i < 2000; ++i) {
        Mat U = uniform_invertible(rng, R8, 1);
        ++tally[U.rep(0, 0)];
        CHECK(invert(U) * U == Mat::identity(R8, 1));
    }
    REQUIRE(tally.size() == 4);  // GL_1(Z8) = {1,3,5,7}

    auto R4 = Ring::integers_mod(2, 2);
    std::map<uint64_t, uint64_t> t4;
    for (int i = 0; i < 10000; ++i) ++t4[uniform_invertible(rng, R4, 1).rep(0, 0)];
    double p = static_cast<double>(t4[1]) / 10000.0;
    CHECK(std::fabs(p - 0.5) <= 3.0 * std::sqrt(0.25 / 10000.0));

    Mat U3 = uniform_invertible(rng, R8, 3);
    CHECK(is_invertible(U3));
}

TEST_CASE("uniform_rank_t basics") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{2, 4};
    Rng rng(3141, 0);
    SECTION("t = 0") {
        RankTSample s = uniform_rank_t(rng, R, 3, mu, 0);
        CHECK(s.z.is_zero());
        CHECK(s.b.cols() == 0);
        CHECK(s.e.rows() == 0);
    }
    SECTION("shape postcondition on every draw") {
        for (int t = 1; t <= 2; ++t)
            for (int i = 0; i < 50; ++i) {
                RankTSample s = uniform_rank_t(rng, R, 3, mu, t);
                REQUIRE(shape_of(s.z) == Shape::constant(t, 2));
                CHECK(s.b * s.e == s.z);
            }
    }
    SECTION("preconditions") {
        CHECK_THROWS_AS(uniform_rank_t(rng, R, 2, mu, 3), std::invalid_argument);
        CHECK_THROWS_AS(uniform_rank_t(rng, R, 3, Shape{1, 4}, 2), std::invalid_argument);
    }
}

TEST_CASE("uniform_rank_t is uniform over the rank-1 set (chi-square, 1e5 draws)") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{1, 2};
    const int N = 2, t = 1;
    auto members = enumerate_with_shape(R, N, mu, Shape::constant(t, 2));
    REQUIRE(members.size() == 24);
    std::map<std::vector<uint64_t>, size_t> index;
    for (size_t i = 0; i < members.size(); ++i) index[members[i]] = i;

    std::vector<uint64_t> observed(members.size(), 0);
    Rng root(60221023, 0);
    const uint64_t draws = 100000;
    for (uint64_t i = 0; i < draws; ++i) {
        Rng trial = root.substream(i);
        RankTSample s = uniform_rank_t(trial, R, N, mu, t);
        auto it = index.find(mat_key(s.z));
        REQUIRE(it != index.end());
        ++observed[it->second];
    }
    std::vector<double> expected(members.size(),
                                 static_cast<double>(draws) / static_cast<double>(members.size()));
    double stat = chi2_statistic(observed, expected);
    CHECK(stat < chi2_quantile(0.999, static_cast<double>(members.size() - 1)));
}

TEST_CASE("factorization fibers are constant = |GL_t(R)| (exhaustive)") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{1, 2};
    const int N = 2, t = 1;
    // enumerate all full-column-rank B (N x t) and full-row-rank E (t x mu)
    std::vector<Mat> bs, es;
    for (uint64_t idx = 0; idx < 16; ++idx) {
        Mat B(R, N, t);
        B.set_rep(0, 0, idx % 4);
        B.set_rep(1, 0, idx / 4);
        if (rank_predicates(B).full_column_rank) bs.push_back(B);
    }
    {
        const long cells = ambient_cell_count(t, mu);
        uint64_t total = 1;
        for (long i = 0; i < cells; ++i) total *= 2;
        std::vector<uint32_t> digits(static_cast<size_t>(cells));
        for (uint64_t idx = 0; idx < total; ++idx) {
            uint64_t x = idx;
            for (auto& d : digits) { d = static_cast<uint32_t>(x % 2); x /= 2; }
            Mat E = mat_from_ambient_digits(R, t, mu, digits);
            if (rank_predicates(E).full_row_rank) es.push_back(E);
        }
    }
    std::map<std::vector<uint64_t>, uint64_t> fibers;
    for (const Mat& B : bs)
        for (const Mat& E : es) ++fibers[mat_key(B * E)];
    CHECK(fibers.size() == 24);
    for (const auto& [key, count] : fibers) CHECK(count == 2);  // |GL_1(Z4)| = 2
}

TEST_CASE("uniform_given_shape agrees with uniform_rank_t (two-sample chi-square)") {
    auto R = Ring::integers_mod(2, 2);
    Shape mu{1, 2};
    const int N = 2, t = 1;
    auto members = enumerate_with_shape(R, N, mu, Shape::constant(t, 2));
    std::map<std::vector<uint64_t>, size_t> index;
    for (size_t i = 0; i < members.size(); ++i) index[members[i]] = i;

    const uint64_t draws = 20000;
    std::vector<uint64_t> o1(members.size(), 0), o2(members.size(), 0);
    Rng r1(17, 1), r2(17, 2);
    for (uint64_t i = 0; i < draws; ++i) {
        ++o1[index.at(mat_key(uniform_rank_t(r1, R, N, mu, t).z))];
        ++o2[index.at(mat_key(uniform_given_shape(r2, R, N, mu, Shape::constant(t, 2))))];
    }
    double k1 = std::sqrt(static_cast<double>(draws) / draws);
    double stat = 0;
    for (size_t i = 0; i < members.size(); ++i) {
        double a = static_cast<double>(o1[i]), b = static_cast<double>(o2[i]);
        if (a + b == 0) continue;
        double d = a / k1 - b * k1;
        stat += d * d / (a + b);
    }
    CHECK(stat < chi2_quantile(0.999, static_cast<double>(members.size() - 1)));

    // shape postcondition and the zero-shape singleton
    Mat z = uniform_given_shape(r2, R, 1, Shape{1, 1}, Shape::zero(2));
    CHECK(z.is_zero());
    // refusal on vanishing acceptance: target shape has acceptance ~ 2^-22
    auto R3 = Ring::integers_mod(3, 1);
    CHECK_THROWS_AS(uniform_given_shape(r2, R3, 7, Shape::constant(7, 1), Shape::zero(1)),
                    std::domain_error);
}

#include "doctest.h"

#include "rht/linalg.hpp"
#include "test_support.hpp"

using namespace rht;

namespace {

SparseMatrix from_rows(const std::vector<std::vector<int>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    SparseMatrix m = SparseMatrix::zero(r, c);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (rows[i][j] != 0)
                m.set(i, j, rows[i][j]);
    return m;
}

}  // namespace

TEST_CASE("identity, zero and rank-1 examples") {
    LinearSolution id = solve_linear(from_rows({{1, 0}, {0, 1}}));
    CHECK(id.rank() == 2);
    CHECK(id.kernel_basis().empty());
    CHECK(id.image_basis().size() == 2);

    LinearSolution zero = solve_linear(SparseMatrix::zero(3, 4));
    CHECK(zero.rank() == 0);
    CHECK(zero.kernel_basis().size() == 4);

    LinearSolution rk1 = solve_linear(from_rows({{1, 2}, {2, 4}}));
    CHECK(rk1.rank() == 1);
    auto kb = rk1.kernel_basis();
    REQUIRE(kb.size() == 1);
    REQUIRE(kb[0].entries.size() == 2);
    CHECK(kb[0].entries[0] == std::pair{0, Rational(2)});
    CHECK(kb[0].entries[1] == std::pair{1, Rational(-1)});
}

TEST_CASE("preimage solver") {
    SparseMatrix m = from_rows({{1, 2}, {2, 4}});
    LinearSolution sol(m);
    SparseVec b;
    b.entries = {{0, Rational(3)}, {1, Rational(6)}};
    auto x = sol.preimage(b);
    REQUIRE(x.has_value());
    SparseVec mx = matrix_apply(m, *x);
    CHECK(mx.entries == b.entries);
    SparseVec off;
    off.entries = {{0, Rational(1)}, {1, Rational(1)}};  // not a multiple of (1,2)
    CHECK(!sol.preimage(off).has_value());
    SparseVec bad;
    bad.entries = {{5, Rational(1)}};
    CHECK_THROWS_AS(sol.preimage(bad), std::invalid_argument);
}

TEST_CASE("randomized solve invariants") {
    std::mt19937 rng(23);
    for (int iter = 0; iter < 1000; ++iter) {
        SparseMatrix m = testing::random_sparse_matrix(rng);
        LinearSolution sol(m);
        auto kernel = sol.kernel_basis();
        // rank-nullity
        CHECK(sol.rank() + static_cast<int>(kernel.size()) == m.cols);
        // kernel vectors annihilate, are integral, content-free, lead positive
        for (const auto& kv : kernel) {
            CHECK(matrix_apply(m, kv).is_zero());
            REQUIRE(!kv.entries.empty());
            CHECK(kv.entries.front().second > 0);
            BigInt g = 0;
            for (const auto& [i, v] : kv.entries) {
                CHECK(denominator(v) == 1);
                g = gcd(g, numerator(v));
            }
            CHECK(abs(g) == 1);
        }
        // every image-basis vector has a verified preimage
        for (const auto& col : sol.image_basis()) {
            auto x = sol.preimage(col);
            REQUIRE(x.has_value());
            CHECK(matrix_apply(m, *x).entries == col.entries);
        }
        // a random combination of columns is solvable
        SparseVec x0;
        std::uniform_int_distribution<int> coef(-3, 3);
        for (int c = 0; c < m.cols; ++c) {
            int v = coef(rng);
            if (v != 0)
                x0.entries.emplace_back(c, v);
        }
        SparseVec b = matrix_apply(m, x0);
        auto x = sol.preimage(b);
        REQUIRE(x.has_value());
        CHECK(matrix_apply(m, *x).entries == b.entries);
    }
}

TEST_CASE("kernel of a column submatrix") {
    // restricting to the first column of [[1,2],[2,4]] leaves no kernel
    SparseMatrix m = from_rows({{1, 2}, {2, 4}});
    CHECK(kernel_of_columns(m, {0}).empty());
    auto kv = kernel_of_columns(m, {0, 1});
    REQUIRE(kv.size() == 1);
    CHECK(matrix_apply(m, kv[0]).is_zero());
}

TEST_CASE("echelon rejects bad shapes") {
    CHECK_THROWS_AS(Echelon({{{5, BigInt(1)}}}, 3), std::invalid_argument);
    SparseMatrix m = SparseMatrix::zero(2, 2);
    CHECK_THROWS_AS(m.set(2, 0, Rational(1)), std::invalid_argument);
}

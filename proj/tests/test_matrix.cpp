#include <catch2/catch_amalgamated.hpp>

#include <functional>
#include <random>
#include <vector>

#include "mpk/matrix.hpp"

using namespace mpk;

namespace {

IntMatrix make(int rows, int cols, std::vector<long long> v) {
    IntMatrix m(rows, cols);
    int k = 0;
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = v[static_cast<std::size_t>(k++)];
    return m;
}

IntMatrix random_matrix(std::mt19937_64& g, int max_dim, int span) {
    int rows = 1 + static_cast<int>(g() % static_cast<unsigned>(max_dim));
    int cols = 1 + static_cast<int>(g() % static_cast<unsigned>(max_dim));
    IntMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j)
            m(i, j) = static_cast<long long>(g() % static_cast<unsigned>(2 * span + 1)) - span;
    return m;
}

// cofactor-expansion determinant, independent of the Bareiss routine
Int naive_det(const IntMatrix& m) {
    const int n = m.rows();
    if (n == 0) return 1;
    if (n == 1) return m(0, 0);
    Int acc = 0;
    for (int j = 0; j < n; ++j) {
        if (m(0, j) == 0) continue;
        IntMatrix sub(n - 1, n - 1);
        for (int r = 1; r < n; ++r) {
            int cc = 0;
            for (int c = 0; c < n; ++c) {
                if (c == j) continue;
                sub(r - 1, cc++) = m(r, c);
            }
        }
        Int term = m(0, j) * naive_det(sub);
        acc += (j % 2 == 0) ? term : -term;
    }
    return acc;
}

// gcd of all k x k minors, by brute-force subset enumeration
Int minor_gcd(const IntMatrix& m, int k) {
    Int g = 0;
    std::vector<int> rsel(static_cast<std::size_t>(k)), csel(static_cast<std::size_t>(k));
    std::function<void(int, int)> pick_cols = [&](int start, int depth) {
        if (depth == k) {
            IntMatrix sub(k, k);
            for (int a = 0; a < k; ++a)
                for (int b = 0; b < k; ++b)
                    sub(a, b) = m(rsel[static_cast<std::size_t>(a)], csel[static_cast<std::size_t>(b)]);
            g = gcd(g, naive_det(sub));
            return;
        }
        for (int c = start; c < m.cols(); ++c) {
            csel[static_cast<std::size_t>(depth)] = c;
            pick_cols(c + 1, depth + 1);
        }
    };
    std::function<void(int, int)> pick_rows = [&](int start, int depth) {
        if (depth == k) {
            pick_cols(0, 0);
            return;
        }
        for (int r = start; r < m.rows(); ++r) {
            rsel[static_cast<std::size_t>(depth)] = r;
            pick_rows(r + 1, depth + 1);
        }
    };
    pick_rows(0, 0);
    return abs(g);
}

Int entry_gcd(const IntMatrix& m) {
    Int g = 0;
    for (int i = 0; i < m.rows(); ++i)
        for (int j = 0; j < m.cols(); ++j) g = gcd(g, m(i, j));
    return abs(g);
}

void check_smith_contract(const IntMatrix& m) {
    SmithResult s = smith_normal_form(m);
    REQUIRE(abs(determinant(s.u)) == 1);
    REQUIRE(abs(determinant(s.v)) == 1);
    REQUIRE(s.d == s.u * m * s.v);
    auto diag = s.diagonal();
    for (int i = 0; i < s.d.rows(); ++i)
        for (int j = 0; j < s.d.cols(); ++j)
            if (i != j) REQUIRE(s.d(i, j) == 0);
    for (std::size_t k = 0; k < diag.size(); ++k) {
        REQUIRE(diag[k] >= 0);
        if (k > 0 && diag[k] != 0) {
            REQUIRE(diag[k - 1] != 0);
            REQUIRE(diag[k] % diag[k - 1] == 0);
        }
    }
    // d_1 = gcd of entries; prod of the first k factors = gcd of k x k minors
    if (!diag.empty()) REQUIRE(diag[0] == entry_gcd(m));
    Int prod = 1;
    for (std::size_t k = 0; k < diag.size(); ++k) {
        prod *= diag[k];
        REQUIRE(prod == minor_gcd(m, static_cast<int>(k) + 1));
    }
}

void check_hermite_contract(const IntMatrix& m) {
    HermiteResult h = hermite_normal_form(m);
    REQUIRE(abs(determinant(h.u)) == 1);
    REQUIRE(h.h == h.u * m);
    int prev_pivot = -1;
    for (int i = 0; i < h.h.rows(); ++i) {
        int p = -1;
        for (int j = 0; j < h.h.cols(); ++j)
            if (h.h(i, j) != 0) {
                p = j;
                break;
            }
        if (p < 0) {
            for (int r = i; r < h.h.rows(); ++r)
                for (int j = 0; j < h.h.cols(); ++j) REQUIRE(h.h(r, j) == 0);
            break;
        }
        REQUIRE(p > prev_pivot);
        REQUIRE(h.h(i, p) > 0);
        for (int r = 0; r < i; ++r) {
            REQUIRE(h.h(r, p) >= 0);
            REQUIRE(h.h(r, p) < h.h(i, p));
        }
        prev_pivot = p;
    }
}

}  // namespace

TEST_CASE("smith normal form on pinned inputs") {
    SECTION("identity") {
        SmithResult s = smith_normal_form(IntMatrix::identity(2));
        REQUIRE(s.u == IntMatrix::identity(2));
        REQUIRE(s.v == IntMatrix::identity(2));
        REQUIRE(s.d == IntMatrix::identity(2));
    }
    SECTION("[[2,4],[6,8]] has invariant factors 2, 4") {
        // gcd of entries is 2 and |det| = 8, so the chain is (2, 4)
        SmithResult s = smith_normal_form(make(2, 2, {2, 4, 6, 8}));
        REQUIRE(s.diagonal() == std::vector<Int>{2, 4});
        check_smith_contract(make(2, 2, {2, 4, 6, 8}));
    }
    SECTION("zero matrix") {
        SmithResult s = smith_normal_form(IntMatrix(2, 3));
        REQUIRE(s.d == IntMatrix(2, 3));
        REQUIRE(s.u == IntMatrix::identity(2));
        REQUIRE(s.v == IntMatrix::identity(3));
    }
    SECTION("empty matrices are legal") {
        SmithResult s = smith_normal_form(IntMatrix(0, 3));
        REQUIRE(s.d.rows() == 0);
        REQUIRE(s.v == IntMatrix::identity(3));
        check_smith_contract(IntMatrix(3, 0));
    }
}

TEST_CASE("hermite normal form on pinned inputs") {
    SECTION("identity") {
        HermiteResult h = hermite_normal_form(IntMatrix::identity(3));
        REQUIRE(h.h == IntMatrix::identity(3));
    }
    SECTION("[[2,1],[0,3]] is already reduced") {
        IntMatrix m = make(2, 2, {2, 1, 0, 3});
        HermiteResult h = hermite_normal_form(m);
        REQUIRE(h.h == m);
        check_hermite_contract(m);
    }
    SECTION("zero matrix") {
        HermiteResult h = hermite_normal_form(IntMatrix(2, 2));
        REQUIRE(h.h == IntMatrix(2, 2));
        REQUIRE(h.u == IntMatrix::identity(2));
    }
}

TEST_CASE("normal form properties on random small matrices") {
    std::mt19937_64 g(20240811);
    for (int t = 0; t < 300; ++t) {
        IntMatrix m = random_matrix(g, 3, 3);
        check_smith_contract(m);
        check_hermite_contract(m);
    }
}

TEST_CASE("hermite form is an invariant of the row lattice") {
    std::mt19937_64 g(99);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(g, 3, 3);
        // premultiplying by a unimodular matrix preserves the row lattice
        IntMatrix l = IntMatrix::identity(m.rows());
        for (int k = 0; k < 4; ++k) {
            int a = static_cast<int>(g() % static_cast<unsigned>(m.rows()));
            int b = static_cast<int>(g() % static_cast<unsigned>(m.rows()));
            if (a != b) l.add_row(a, b, Int(static_cast<long long>(g() % 5) - 2));
        }
        REQUIRE(hermite_normal_form(l * m).h == hermite_normal_form(m).h);
    }
}

TEST_CASE("integer kernels and solves") {
    SECTION("kernel columns annihilate and are independent") {
        std::mt19937_64 g(7);
        for (int t = 0; t < 100; ++t) {
            IntMatrix m = random_matrix(g, 3, 3);
            IntMatrix k = integer_kernel_basis(m);
            REQUIRE((m * k).is_zero());
            REQUIRE(rank(k) == k.cols());
            REQUIRE(rank(m) + k.cols() == m.cols());
        }
    }
    SECTION("integer_solve finds exact solutions or refuses") {
        IntMatrix b = make(2, 2, {2, 0, 0, 3});
        IntMatrix c = make(2, 1, {4, 9});
        auto y = integer_solve(b, c);
        REQUIRE(y);
        REQUIRE(b * *y == c);
        REQUIRE_FALSE(integer_solve(b, make(2, 1, {1, 0})));
    }
}

TEST_CASE("exact rational elimination") {
    std::mt19937_64 g(31);
    for (int t = 0; t < 100; ++t) {
        IntMatrix m = random_matrix(g, 4, 4);
        RatMatrix r = to_rational(m);
        REQUIRE(rat_rank(r) == rank(m));
        RatMatrix k = rat_kernel_basis(r);
        REQUIRE((r * k).is_zero());
        REQUIRE(k.cols() == m.cols() - rank(m));
    }
    SECTION("solve within the column space") {
        RatMatrix a(2, 2), b(2, 1);
        a(0, 0) = 1;
        a(1, 0) = 2;
        a(0, 1) = 0;
        a(1, 1) = 1;
        b(0, 0) = Rat(1, 2);
        b(1, 0) = 3;
        auto x = rat_solve(a, b);
        REQUIRE(x);
        REQUIRE(a * *x == b);
    }
}

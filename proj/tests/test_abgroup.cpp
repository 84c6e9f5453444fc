#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "mpk/abgroup.hpp"

using namespace mpk;

namespace {

IntMatrix cols(int rows, std::vector<std::vector<long long>> columns) {
    IntMatrix m(rows, static_cast<int>(columns.size()));
    for (std::size_t j = 0; j < columns.size(); ++j)
        for (int i = 0; i < rows; ++i) m(i, static_cast<int>(j)) = columns[j][static_cast<std::size_t>(i)];
    return m;
}

IntMatrix row(std::vector<long long> v) {
    IntMatrix m(1, static_cast<int>(v.size()));
    for (std::size_t j = 0; j < v.size(); ++j) m(0, static_cast<int>(j)) = v[j];
    return m;
}

}  // namespace

TEST_CASE("canonical form invariants") {
    REQUIRE_THROWS_AS(AbelianGroup(0, {1}), std::invalid_argument);
    REQUIRE_THROWS_AS(AbelianGroup(0, {4, 2}), std::invalid_argument);
    REQUIRE_THROWS_AS(AbelianGroup(-1, {}), std::invalid_argument);
    REQUIRE(AbelianGroup(1, {2, 4}).to_string() == "Z + Z/2 + Z/4");
    REQUIRE(AbelianGroup::zero().to_string() == "0");
    REQUIRE(AbelianGroup::free(2).to_string() == "Z^2");
}

TEST_CASE("normalize presentations") {
    SECTION("one generator with relation 2 is Z/2") {
        REQUIRE(normalize(Presentation(1, row({2}))) == AbelianGroup::cyclic(2));
    }
    SECTION("three free generators") {
        REQUIRE(normalize(Presentation::free(3)) == AbelianGroup::free(3));
    }
    SECTION("diag(2,4) gives torsion chain (2,4)") {
        REQUIRE(normalize(Presentation(2, cols(2, {{2, 0}, {0, 4}}))) == AbelianGroup(0, {2, 4}));
    }
    SECTION("unit relations are dropped") {
        REQUIRE(normalize(Presentation(2, cols(2, {{1, 0}, {0, 3}}))) == AbelianGroup::cyclic(3));
    }
    SECTION("idempotent under re-presentation") {
        std::mt19937_64 g(11);
        for (int t = 0; t < 100; ++t) {
            int gens = 1 + static_cast<int>(g() % 3);
            int rels = static_cast<int>(g() % 4);
            IntMatrix r(gens, rels);
            for (int i = 0; i < gens; ++i)
                for (int j = 0; j < rels; ++j) r(i, j) = static_cast<long long>(g() % 9) - 4;
            AbelianGroup a = normalize(Presentation(gens, r));
            REQUIRE(normalize(Presentation::of(a)) == a);
        }
    }
}

TEST_CASE("kernels of free maps") {
    SECTION("(m,n) -> m-n has kernel Z spanned by (1,1)") {
        KernelResult k = kernel_of_free_map(row({1, -1}));
        REQUIRE(k.group == AbelianGroup::free(1));
        REQUIRE(k.basis.rows() == 2);
        REQUIRE(k.basis.cols() == 1);
        REQUIRE(k.basis(0, 0) == k.basis(1, 0));
        REQUIRE(abs(k.basis(0, 0)) == 1);
    }
    SECTION("multiplication by two is injective") {
        REQUIRE(kernel_of_free_map(row({2})).group == AbelianGroup::zero());
    }
    SECTION("(m,n,l) -> m+n-l has kernel Z^2") {
        KernelResult k = kernel_of_free_map(row({1, 1, -1}));
        REQUIRE(k.group == AbelianGroup::free(2));
        REQUIRE((row({1, 1, -1}) * k.basis).is_zero());
    }
    SECTION("rank-nullity over random free maps") {
        std::mt19937_64 g(5);
        for (int t = 0; t < 100; ++t) {
            int a = 1 + static_cast<int>(g() % 3), b = 1 + static_cast<int>(g() % 3);
            IntMatrix m(b, a);
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < a; ++j) m(i, j) = static_cast<long long>(g() % 7) - 3;
            KernelResult k = kernel_of_free_map(m);
            REQUIRE(k.group.free_rank() + rank(m) == a);
        }
    }
}

TEST_CASE("cokernels") {
    REQUIRE(cokernel_of(row({1, -1}), AbelianGroup::free(1)) == AbelianGroup::zero());
    REQUIRE(cokernel_of(row({2}), AbelianGroup::free(1)) == AbelianGroup::cyclic(2));
    REQUIRE(cokernel_of(cols(2, {{1, 0}}), AbelianGroup::free(2)) == AbelianGroup::free(1));
    SECTION("surjectivity is zero cokernel, decided by unit invariant factors") {
        std::mt19937_64 g(17);
        for (int t = 0; t < 100; ++t) {
            int a = 1 + static_cast<int>(g() % 3), b = 1 + static_cast<int>(g() % 3);
            IntMatrix m(b, a);
            for (int i = 0; i < b; ++i)
                for (int j = 0; j < a; ++j) m(i, j) = static_cast<long long>(g() % 7) - 3;
            SmithResult s = smith_normal_form(m);
            bool all_units = s.rank() == b;
            for (const Int& d : s.diagonal())
                if (d > 1) all_units = false;
            REQUIRE(is_surjective_map(m, AbelianGroup::free(b)) == all_units);
            if (all_units) REQUIRE(cokernel_of(m, AbelianGroup::free(b)).is_zero());
        }
    }
}

TEST_CASE("isomorphism is equality of canonical forms") {
    // Z + Z/2 entered with the summands swapped
    AbelianGroup a = normalize(Presentation(2, cols(2, {{2, 0}})));
    AbelianGroup b = normalize(Presentation(2, cols(2, {{0, 2}})));
    REQUIRE(is_isomorphic(a, b));
    REQUIRE_FALSE(is_isomorphic(AbelianGroup::cyclic(4), AbelianGroup(0, {2, 2})));
}

TEST_CASE("direct sums merge invariant factors") {
    REQUIRE(direct_sum(AbelianGroup::cyclic(2), AbelianGroup::cyclic(3)) == AbelianGroup::cyclic(6));
    REQUIRE(direct_sum(AbelianGroup::cyclic(4), AbelianGroup::cyclic(2)) == AbelianGroup(0, {2, 4}));
    REQUIRE(direct_sum(AbelianGroup::free(1), AbelianGroup(1, {2})) == AbelianGroup(2, {2}));
    REQUIRE(direct_sum(AbelianGroup::zero(), AbelianGroup::free(2)) == AbelianGroup::free(2));
}

TEST_CASE("images and kernels inside groups with torsion") {
    AbelianGroup z4 = AbelianGroup::cyclic(4);
    SECTION("x -> 2x from Z into Z/4") {
        REQUIRE(image_group_of(row({2}), z4) == AbelianGroup::cyclic(2));
        SubgroupResult k = kernel_group_of(row({2}), AbelianGroup::free(1), z4);
        REQUIRE(k.group == AbelianGroup::free(1));
        REQUIRE(k.basis(0, 0) == 2);  // kernel lattice 2Z
    }
    SECTION("identity on Z/4") {
        IntMatrix one(1, 1);
        one(0, 0) = 1;
        REQUIRE(image_group_of(one, z4) == z4);
        REQUIRE(kernel_group_of(one, z4, z4).group == AbelianGroup::zero());
    }
    SECTION("Z/4 -> Z/2 reduction has kernel Z/2") {
        IntMatrix one(1, 1);
        one(0, 0) = 1;
        SubgroupResult k = kernel_group_of(one, z4, AbelianGroup::cyclic(2));
        REQUIRE(k.group == AbelianGroup::cyclic(2));
    }
}

TEST_CASE("canonical iso carries presentations onto normal forms") {
    std::mt19937_64 g(23);
    for (int t = 0; t < 50; ++t) {
        int gens = 1 + static_cast<int>(g() % 3);
        int rels = static_cast<int>(g() % 4);
        IntMatrix r(gens, rels);
        for (int i = 0; i < gens; ++i)
            for (int j = 0; j < rels; ++j) r(i, j) = static_cast<long long>(g() % 9) - 4;
        Presentation p(gens, r);
        CanonicalIso iso = iso_to_canonical(p);
        REQUIRE(iso.group == normalize(p));
        REQUIRE(iso.phi.rows() == iso.group.generators());
        REQUIRE(iso.phi.cols() == gens);
        // relations must land in the canonical relation lattice
        REQUIRE(lattice_contains(iso.group.relations(), iso.phi * r));
        // phi is onto: the canonical generators are hit
        REQUIRE(cokernel_of(iso.phi, AbelianGroup::free(iso.group.generators())).is_zero());
    }
}

TEST_CASE("lattice comparison") {
    IntMatrix a = cols(2, {{1, 1}, {0, 2}});
    IntMatrix b = cols(2, {{1, -1}, {2, 0}});  // same lattice, different generators
    REQUIRE(lattices_equal(a, b));
    REQUIRE_FALSE(lattices_equal(a, cols(2, {{1, 0}, {0, 1}})));
    REQUIRE(lattice_contains(a, cols(2, {{2, 0}})));
    REQUIRE_FALSE(lattice_contains(a, cols(2, {{0, 1}})));
}

#include "exactla.hpp"

#include <random>

#include "doctest.h"

using namespace exactla;

namespace {

IntMat random_matrix(std::mt19937& rng, long rows, long cols) {
    std::uniform_int_distribution<int> entry(-4, 4);
    std::uniform_int_distribution<int> keep(0, 2);
    IntMat a = IntMat::Zero(rows, cols);
    for (long i = 0; i < rows; ++i)
        for (long j = 0; j < cols; ++j)
            if (keep(rng) != 0) a(i, j) = entry(rng);
    return a;
}

std::vector<Trip> to_triplets(const IntMat& a) {
    std::vector<Trip> out;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a(i, j) != 0) out.push_back({i, j, a(i, j).get_si()});
    return out;
}

bool is_identity(const IntMat& a) {
    if (a.rows() != a.cols()) return false;
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            if (a(i, j) != Int(i == j ? 1 : 0)) return false;
    return true;
}

FinAbGroup coker_by_snf(const IntMat& a) {
    SNFResult snf = smith_normal_form(a);
    std::vector<long long> moduli;
    for (const Int& f : snf.invariant_factors)
        if (f > 1) moduli.push_back(f.get_si());
    long free = a.rows() - static_cast<long>(snf.invariant_factors.size());
    return finab_from_cyclics(free, moduli);
}

}  // namespace

TEST_CASE("ring parsing round trips and rejects bad moduli") {
    CHECK(parse_ring("Z") == Ring::Z());
    CHECK(parse_ring("Q") == Ring::Q());
    CHECK(parse_ring("Fp:5") == Ring::fp(5));
    CHECK(parse_ring("Zmod:4") == Ring::zmod(4));
    CHECK(to_string(Ring::fp(7)) == "Fp:7");
    CHECK(to_string(Ring::zmod(12)) == "Zmod:12");
    CHECK_THROWS_AS(parse_ring("Fp:4"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring("Zmod:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring("R"), std::invalid_argument);
    CHECK_THROWS_AS(parse_ring("Fp:"), std::invalid_argument);
}

TEST_CASE("smith normal form on pinned matrices") {
    IntMat a(2, 2);
    a << 2, 4, 6, 8;
    SNFResult snf = smith_normal_form(a);
    REQUIRE(snf.invariant_factors.size() == 2);
    CHECK(snf.invariant_factors[0] == 2);
    CHECK(snf.invariant_factors[1] == 4);
    CHECK(IntMat(snf.u * a * snf.v) == snf.s);

    SNFResult id3 = smith_normal_form(IntMat::Identity(3, 3));
    REQUIRE(id3.invariant_factors.size() == 3);
    for (const Int& f : id3.invariant_factors) CHECK(f == 1);

    SNFResult zero = smith_normal_form(IntMat::Zero(3, 2));
    CHECK(zero.invariant_factors.empty());
}

TEST_CASE("smith normal form transforms are exact inverses on random input") {
    std::mt19937 rng(20260822);
    for (auto [rows, cols] : {std::pair<long, long>{5, 5}, {7, 4}, {4, 9}, {12, 12}, {1, 6}, {6, 1}}) {
        IntMat a = random_matrix(rng, rows, cols);
        SNFResult snf = smith_normal_form(a);
        CHECK(IntMat(snf.u * a * snf.v) == snf.s);
        CHECK(is_identity(snf.u * snf.uinv));
        CHECK(is_identity(snf.uinv * snf.u));
        CHECK(is_identity(snf.v * snf.vinv));
        CHECK(is_identity(snf.vinv * snf.v));
        for (size_t i = 0; i + 1 < snf.invariant_factors.size(); ++i) {
            CHECK(snf.invariant_factors[i] > 0);
            CHECK(snf.invariant_factors[i + 1] % snf.invariant_factors[i] == 0);
        }
        CHECK(static_cast<long>(snf.invariant_factors.size()) == dense_rank(a, Ring::Q()));
    }
}

TEST_CASE("finab_from_cyclics produces the divisibility chain") {
    FinAbGroup g = finab_from_cyclics(1, {12, 18});
    CHECK(g.free_rank == 1);
    CHECK(g.torsion == std::vector<long long>{6, 36});

    CHECK(finab_from_cyclics(0, {1, 1}).is_trivial());
    CHECK(finab_from_cyclics(0, {2, 3}).torsion == std::vector<long long>{6});
    CHECK(finab_from_cyclics(0, {2, 2}).torsion == std::vector<long long>{2, 2});
    CHECK(finab_from_cyclics(0, {4, 6}).torsion == std::vector<long long>{2, 12});
    CHECK(to_string(finab_from_cyclics(2, {2})) == "R^2 + R/2");
    CHECK(to_string(FinAbGroup{}) == "0");
}

TEST_CASE("kernel basis is saturated and annihilated") {
    IntMat a(1, 3);
    a << 1, 2, 3;
    IntMat basis = kernel_basis_z(a);
    REQUIRE(basis.cols() == 2);
    IntMat image = a * basis;
    for (long j = 0; j < image.cols(); ++j) CHECK(image(0, j) == 0);
    for (const Int& f : smith_normal_form(basis).invariant_factors) CHECK(f == 1);
}

TEST_CASE("dense rank distinguishes rings") {
    IntMat a(1, 1);
    a << 2;
    CHECK(dense_rank(a, Ring::Q()) == 1);
    CHECK(dense_rank(a, Ring::Z()) == 1);
    CHECK(dense_rank(a, Ring::fp(2)) == 0);
    CHECK(dense_rank(a, Ring::fp(3)) == 1);
    CHECK_THROWS_AS(dense_rank(a, Ring::zmod(4)), UnsupportedRing);
}

TEST_CASE("solve_linear per ring") {
    IntMat a(1, 1);
    a << 2;
    IntVec b(1);

    b << 4;
    auto z4 = solve_linear(a, b, Ring::Z());
    REQUIRE(z4.has_value());
    CHECK((*z4)(0) == 2);

    b << 3;
    CHECK(!solve_linear(a, b, Ring::Z()).has_value());
    auto q3 = solve_linear(a, b, Ring::Q());
    REQUIRE(q3.has_value());
    CHECK((*q3)(0) == Rat(3, 2));
    auto f5 = solve_linear(a, b, Ring::fp(5));
    REQUIRE(f5.has_value());
    CHECK((*f5)(0) == 4);

    b << 2;
    auto zm = solve_linear(a, b, Ring::zmod(4));
    REQUIRE(zm.has_value());
    Rat residue = (*zm)(0) * 2 - 2;
    CHECK(residue.get_den() == 1);
    CHECK(mpz_class(residue.get_num() % 4) == 0);

    b << 1;
    CHECK(!solve_linear(a, b, Ring::zmod(4)).has_value());
}

TEST_CASE("solve_linear on a rectangular integer system") {
    IntMat a(3, 2);
    a << 1, 2, 3, 4, 5, 6;
    IntVec b(3);
    b << 3, 7, 11;
    for (const Ring& ring : {Ring::Z(), Ring::Q(), Ring::fp(5), Ring::zmod(6)}) {
        auto x = solve_linear(a, b, ring);
        REQUIRE(x.has_value());
        RatMat ar = a.cast<Rat>();
        RatVec br = b.cast<Rat>();
        RatVec check = ar * (*x) - br;
        for (long i = 0; i < 3; ++i) {
            if (ring.is_field() && ring.kind == Ring::Kind::Q) {
                CHECK(check(i) == 0);
            } else {
                REQUIRE(check(i).get_den() == 1);
                long mod = ring.kind == Ring::Kind::Z ? 0 : ring.mod;
                if (mod == 0)
                    CHECK(check(i) == 0);
                else
                    CHECK(mpz_class(check(i).get_num() % mod) == 0);
            }
        }
    }
    b << 1, 0, 0;
    CHECK(!solve_linear(a, b, Ring::Q()).has_value());
    CHECK(!solve_linear(a, b, Ring::Z()).has_value());
}

TEST_CASE("cohomology_of_pair on the truncated polynomial pair") {
    // C^{n-1} -> C^n -> C^{n+1} on basis (unit, nilpotent): the incoming map
    // doubles into the nilpotent line, the outgoing map is zero.
    IntMat din(2, 2), dout(2, 2);
    din << 0, 0, 2, 0;
    dout.setZero();

    FinAbGroup even = cohomology_of_pair(din, dout, Ring::Z());
    CHECK(even == FinAbGroup{1, {2}});

    FinAbGroup odd = cohomology_of_pair(dout, din, Ring::Z());
    CHECK(odd == FinAbGroup{1, {}});

    CHECK(cohomology_of_pair(din, dout, Ring::Q()) == FinAbGroup{1, {}});
    CHECK(cohomology_of_pair(din, dout, Ring::fp(2)) == FinAbGroup{2, {}});
    CHECK(cohomology_of_pair(dout, din, Ring::fp(2)) == FinAbGroup{2, {}});
    CHECK(cohomology_of_pair(din, dout, Ring::fp(3)) == FinAbGroup{1, {}});

    // Odd degrees over Z/4 pick up both the free line as Z/4 and a Z/2 from
    // the torsion of the next degree.
    FinAbGroup odd_mod4 = cohomology_of_pair(dout, din, Ring::zmod(4));
    CHECK(odd_mod4 == FinAbGroup{1, {2}});
    FinAbGroup even_mod4 = cohomology_of_pair(din, dout, Ring::zmod(4));
    CHECK(even_mod4 == FinAbGroup{1, {2}});
}

TEST_CASE("cohomology_of_pair rejects non-complexes per ring") {
    IntMat din(1, 1), dout(1, 1);
    din << 1;
    dout << 1;
    CHECK_THROWS_AS(cohomology_of_pair(din, dout, Ring::Z()), NotAComplex);
    CHECK_THROWS_AS(cohomology_of_pair(din, dout, Ring::fp(2)), NotAComplex);

    din << 2;
    CHECK_THROWS_AS(cohomology_of_pair(din, dout, Ring::Z()), NotAComplex);
    CHECK(cohomology_of_pair(din, dout, Ring::fp(2)).is_trivial());
    CHECK_THROWS_AS(cohomology_of_pair(din, dout, Ring::zmod(2)), NotAComplex);
}

TEST_CASE("sparse elimination agrees with dense rank and cokernel") {
    std::mt19937 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        long rows = 1 + static_cast<long>(rng() % 9);
        long cols = 1 + static_cast<long>(rng() % 9);
        IntMat a = random_matrix(rng, rows, cols);
        auto trips = to_triplets(a);
        CHECK(sparse_rank(rows, cols, trips, Ring::Q()) == dense_rank(a, Ring::Q()));
        CHECK(sparse_rank(rows, cols, trips, Ring::fp(2)) == dense_rank(a, Ring::fp(2)));
        CHECK(sparse_rank(rows, cols, trips, Ring::fp(3)) == dense_rank(a, Ring::fp(3)));
        CHECK(sparse_coker(rows, cols, trips) == coker_by_snf(a));
    }
}

TEST_CASE("sparse elimination splits off unit pivots unimodularly") {
    IntMat a(2, 2);
    a << 2, 0, 0, 3;
    SparseElim elim = sparse_eliminate(2, 2, to_triplets(a));
    CHECK(elim.pivots == 0);
    CHECK(elim.residual.size() == 2);
    CHECK(sparse_coker(2, 2, to_triplets(a)) == FinAbGroup{0, {6}});

    IntMat b(2, 3);
    b << 1, 5, 0, 0, 0, 4;
    SparseElim eb = sparse_eliminate(2, 3, to_triplets(b));
    CHECK(eb.pivots == 1);
    CHECK(sparse_coker(2, 3, to_triplets(b)) == FinAbGroup{0, {4}});

    CHECK(sparse_coker(3, 0, {}) == FinAbGroup{3, {}});
    CHECK(sparse_rank(0, 4, {}, Ring::Q()) == 0);
}

TEST_CASE("duplicate sparse entries accumulate") {
    std::vector<Trip> trips = {{0, 0, 1}, {0, 0, -1}, {1, 1, 2}, {1, 1, 3}};
    CHECK(sparse_rank(2, 2, trips, Ring::Q()) == 1);
    CHECK(sparse_rank(2, 2, trips, Ring::fp(5)) == 0);
    CHECK(sparse_rank(2, 2, trips, Ring::fp(3)) == 1);
    CHECK(sparse_coker(2, 2, trips) == FinAbGroup{1, {5}});
}

TEST_CASE("sparse_cohomology matches the dense pair on the polynomial fixture") {
    // Same pair as the dense test, as triplets: d_in doubles into the second
    // coordinate, d_out is zero.
    std::vector<Trip> din = {{1, 0, 2}};
    std::vector<Trip> dout;

    CHECK(sparse_cohomology(2, 2, 2, din, dout, Ring::Z()) == FinAbGroup{1, {2}});
    CHECK(sparse_cohomology(2, 2, 2, dout, din, Ring::Z()) == FinAbGroup{1, {}});
    CHECK(sparse_cohomology(2, 2, 2, din, dout, Ring::Q()) == FinAbGroup{1, {}});
    CHECK(sparse_cohomology(2, 2, 2, din, dout, Ring::fp(2)) == FinAbGroup{2, {}});
    CHECK(sparse_cohomology(2, 2, 2, dout, din, Ring::fp(2)) == FinAbGroup{2, {}});
    CHECK(sparse_cohomology(2, 2, 2, din, dout, Ring::fp(3)) == FinAbGroup{1, {}});
    CHECK(sparse_cohomology(2, 2, 2, dout, din, Ring::zmod(4)) == FinAbGroup{1, {2}});
    CHECK(sparse_cohomology(2, 2, 2, din, dout, Ring::zmod(4)) == FinAbGroup{1, {2}});

    // Degenerate ends: no incoming map, no outgoing map.
    CHECK(sparse_cohomology(0, 2, 2, {}, din, Ring::Z()) == FinAbGroup{1, {}});
    CHECK(sparse_cohomology(2, 2, 0, din, {}, Ring::Z()) == FinAbGroup{1, {2}});
}

TEST_CASE("finab_direct_sum per ring") {
    std::vector<FinAbGroup> parts = {{1, {2}}, {0, {4, 12}}, {2, {}}};
    CHECK(finab_direct_sum(parts, Ring::Z()) == FinAbGroup{3, {2, 4, 12}});
    CHECK(finab_direct_sum({}, Ring::Z()) == FinAbGroup{0, {}});
    CHECK(finab_direct_sum({{1, {}}, {2, {}}}, Ring::Q()) == FinAbGroup{3, {}});
    CHECK_THROWS_AS(finab_direct_sum(parts, Ring::Q()), std::invalid_argument);

    // Over Z/4 a factor Z/4 counts as free; the divisor chain regroups.
    CHECK(finab_direct_sum({{1, {2}}, {0, {4}}}, Ring::zmod(4)) == FinAbGroup{2, {2}});
    CHECK(finab_direct_sum({{0, {2}}, {0, {2}}}, Ring::zmod(4)) == FinAbGroup{0, {2, 2}});
}

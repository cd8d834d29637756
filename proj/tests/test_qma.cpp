#include "qma.hpp"

#include <algorithm>

#include "doctest.h"

using namespace qma;

TEST_CASE("phi pinned values") {
    // m=2..5 reference tables, independently recomputed by tools/oracle/phi.py.
    for (int q = 0; q <= 12; ++q) CHECK(phi(2, q) == 1);
    for (int q = 0; q <= 12; ++q) CHECK(phi(3, q) == q + 1);
    const long long m4[] = {1, 3, 7, 16, 37, 86, 200, 465, 1081, 2513, 5842, 13581, 31572};
    for (int q = 0; q <= 12; ++q) CHECK(phi(4, q) == m4[q]);
    const long long m5[] = {1,     4,     13,    42,     136,    440,   1423,
                            4602,  14883, 48132, 155660, 503408, 1628033};
    for (int q = 0; q <= 12; ++q) CHECK(phi(5, q) == m5[q]);
    for (int m = 2; m <= 6; ++m) CHECK(phi(m, 2) == static_cast<long long>(m) * m - 3 * m + 3);
    for (int m = 2; m <= 6; ++m) CHECK(phi(m, 1) == m - 1);
    CHECK(phi(3, -1) == 0);
    CHECK(phi(5, -3, PhiMethod::series) == 0);
}

TEST_CASE("phi methods agree") {
    for (int m = 2; m <= 5; ++m)
        for (int q = 0; q <= 10; ++q) {
            long long reference = phi(m, q, PhiMethod::recursion);
            CHECK(phi(m, q, PhiMethod::enumerate) == reference);
            CHECK(phi(m, q, PhiMethod::series) == reference);
            CHECK(phi(m, q, PhiMethod::combinatorial) == reference);
        }
    for (int q = 0; q <= 6; ++q) {
        long long reference = phi(6, q, PhiMethod::recursion);
        CHECK(phi(6, q, PhiMethod::enumerate) == reference);
        CHECK(phi(6, q, PhiMethod::series) == reference);
        CHECK(phi(6, q, PhiMethod::combinatorial) == reference);
    }
}

TEST_CASE("psi_vector counts words by first letter") {
    CHECK(psi_vector(3, 1) == std::vector<long long>{1, 1});
    CHECK(psi_vector(3, 2) == std::vector<long long>{1, 2});
    for (int m = 2; m <= 5; ++m)
        for (int q = 1; q <= 8; ++q) {
            auto psi = psi_vector(m, q);
            long long total = 0;
            for (long long v : psi) total += v;
            CHECK(total == phi(m, q));
            // Independent check against the word table.
            const WordTable& table = word_table(m, q);
            std::vector<long long> by_first(m - 1, 0);
            for (long i = 0; i < table.size(); ++i) ++by_first[table.first_letter(i) - 1];
            CHECK(psi == by_first);
        }
    CHECK_THROWS_AS(psi_vector(3, 0), std::invalid_argument);
}

TEST_CASE("algebra bases and duality") {
    Algebra nm = nm_algebra(4);
    CHECK(basis_of_degree(nm, 0) == std::vector<Word>{Word{}});
    CHECK(basis_of_degree(nm, 1) == std::vector<Word>{{1}, {2}, {3}});
    // Nonzero quadratic monomials are the consecutive runs.
    CHECK(basis_of_degree(nm, 2) == std::vector<Word>{{1, 2}, {2, 3}});
    CHECK(basis_of_degree(nm, 3) == std::vector<Word>{{1, 2, 3}});
    CHECK(basis_of_degree(nm, 4).empty());

    Algebra dual = quadratic_dual(nm);
    CHECK(quadratic_dual(dual) == nm);
    for (int d = 0; d <= 6; ++d)
        CHECK(static_cast<long long>(basis_of_degree(dual, d).size()) == phi(4, d));

    Algebra dual3 = quadratic_dual(nm_algebra(3));
    CHECK(basis_of_degree(dual3, 2) == std::vector<Word>{{1, 1}, {2, 1}, {2, 2}});
    auto deg3 = basis_of_degree(dual3, 3);
    CHECK(std::is_sorted(deg3.begin(), deg3.end()));
}

TEST_CASE("multiply_words concatenates when the seam is admissible") {
    Algebra nm = nm_algebra(3);
    CHECK(multiply_words(nm, {1}, {2}) == Word{1, 2});
    CHECK(!multiply_words(nm, {2}, {1}).has_value());
    CHECK(!multiply_words(nm, {1}, {1}).has_value());
    CHECK(multiply_words(nm, {}, {2}) == Word{2});
    CHECK(multiply_words(nm, {1, 2}, {}) == Word{1, 2});

    Algebra dual = quadratic_dual(nm);
    CHECK(multiply_words(dual, {1}, {1}) == Word{1, 1});
    CHECK(!multiply_words(dual, {1}, {2}).has_value());
    CHECK(multiply_words(dual, {2}, {1}) == Word{2, 1});
    CHECK_THROWS_AS(multiply_words(nm, {1, 1}, {2}), std::invalid_argument);
}

TEST_CASE("phi_constrained matches the closed forms") {
    // One-sided: phi(q; first != 1) = sum_{r=0}^{m-1} (-1)^r phi(q-r).
    for (int m = 3; m <= 5; ++m)
        for (int q = 0; q <= 9; ++q) {
            long long closed = 0;
            for (int r = 0; r <= m - 1; ++r) closed += (r % 2 ? -1 : 1) * phi(m, q - r);
            CHECK(phi_constrained(m, q, {.first_not_one = true}) == closed);
        }
    // Two-sided: phi(q; first != 1, last != m-1)
    //   = sum_{k=0}^{m-1} (-1)^k (k+1) phi(q-k) + (-1)^m phi(q-m+1).
    for (int m = 3; m <= 5; ++m)
        for (int q = 0; q <= 9; ++q) {
            long long closed = (m % 2 ? -1 : 1) * phi(m, q - m + 1);
            for (int k = 0; k <= m - 1; ++k)
                closed += (k % 2 ? -1 : 1) * (k + 1) * phi(m, q - k);
            CHECK(phi_constrained(m, q, {.first_not_one = true, .last_not_top = true}) == closed);
        }
    CHECK(phi_constrained(3, 3, {.first_not_one = true}) == 3);
    CHECK(phi_constrained(4, 0, {.first_not_one = true, .last_not_top = true}) == 1);
    // Unconstrained DP reduces to phi.
    for (int q = 0; q <= 9; ++q) CHECK(phi_constrained(4, q, {}) == phi(4, q));
}

TEST_CASE("generating_function_h coefficients") {
    CHECK(generating_function_h(3, 5) == std::vector<long long>{2, 2, 3, 4, 5, 6});
    auto h4 = generating_function_h(4, 4);
    CHECK(h4 == std::vector<long long>{3, 6, 14, 32, 74});
    CHECK(generating_function_h(2, 3) == std::vector<long long>{1, 0, 0, 0});
}

TEST_CASE("word tables pack admissible words in lex order") {
    for (int m = 2; m <= 5; ++m)
        for (int len = 0; len <= 7; ++len) {
            const WordTable& table = word_table(m, len);
            CHECK(table.size() == phi(m, len));
            CHECK(std::is_sorted(table.words.begin(), table.words.end()));
        }
    const WordTable& t = word_table(4, 3);
    Algebra dual = quadratic_dual(nm_algebra(4));
    auto lex = basis_of_degree(dual, 3);
    REQUIRE(t.size() == static_cast<long>(lex.size()));
    for (long i = 0; i < t.size(); ++i) {
        CHECK(t.word_at(i) == lex[i]);
        CHECK(t.index_of(pack_word(lex[i])) == i);
        CHECK(t.first_letter(i) == lex[i].front());
        CHECK(t.last_letter(i) == lex[i].back());
    }
    CHECK(t.index_of(pack_word({1, 2, 3})) == -1);
    Word round = {3, 1, 2};
    CHECK(unpack_word(pack_word(round), 3) == round);
    CHECK(to_string(round) == "(3,1,2)");
    CHECK(to_string(Word{}) == "()");
}

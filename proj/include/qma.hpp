#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace qma {

// Letters are 1..m-1; a Word is a (possibly empty) letter sequence.
using Word = std::vector<int>;

// Quadratic monomial algebra on generators x_1..x_{m-1}: the relations set
// lists the vanishing products (a,b), i.e. x_a x_b = 0. Admissible words
// (those avoiding every relation pair in adjacent positions) form a basis.
struct Algebra {
    int m = 2;
    std::set<std::pair<int, int>> relations;

    bool operator==(const Algebra&) const = default;
};

// Upper-triangular algebra on x_i = E_{i,i+1}: x_a x_b = 0 unless b = a+1.
Algebra nm_algebra(int m);

// Relations complemented inside all of [1,m-1]^2; involutive.
Algebra quadratic_dual(const Algebra& alg);

bool is_admissible(const Algebra& alg, const Word& w);

// Admissible words of length d in lex order; d = 0 gives the empty word.
std::vector<Word> basis_of_degree(const Algebra& alg, int d);

// Concatenation when admissible, nullopt when the product is zero.
std::optional<Word> multiply_words(const Algebra& alg, const Word& u, const Word& v);

enum class PhiMethod { enumerate, recursion, series, combinatorial };

// phi(q) = dim of the degree-q part of the dual algebra of nm_algebra(m).
// All four methods agree; phi(q < 0) = 0, phi(0) = 1, phi(1) = m-1.
long long phi(int m, int q, PhiMethod method = PhiMethod::recursion);

// psi_i(q) = number of length-q dual-admissible words with first letter i,
// for i = 1..m-1; requires q >= 1 and sums to phi(q).
std::vector<long long> psi_vector(int m, int q);

struct PhiConstraints {
    bool first_not_one = false;  // exclude first letter 1
    bool last_not_top = false;   // exclude last letter m-1
};

// Count of length-q dual-admissible words satisfying the end constraints,
// by direct dynamic programming. The empty word satisfies everything.
long long phi_constrained(int m, int q, const PhiConstraints& constraints);

// Coefficients 0..trunc of h(t) = 1 + (m-2) * (dual Hilbert series).
std::vector<long long> generating_function_h(int m, int trunc);

// ---- packed word tables ----
//
// Dual-admissible words of a fixed length, packed 3 bits per letter with the
// first letter in the highest bits, so numeric order equals lex order.
// Tables are cached per (m, length).

std::uint64_t pack_word(const Word& w);
Word unpack_word(std::uint64_t packed, int length);

struct WordTable {
    int m = 0;
    int length = 0;
    std::vector<std::uint64_t> words;

    long size() const { return static_cast<long>(words.size()); }
    long index_of(std::uint64_t packed) const;  // -1 if absent
    Word word_at(long index) const { return unpack_word(words[index], length); }
    int first_letter(long index) const;
    int last_letter(long index) const;
};

const WordTable& word_table(int m, int length);

std::string to_string(const Word& w);

}  // namespace qma

#pragma once

#include "bimod.hpp"
#include "exactla.hpp"
#include "qma.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace homology {

struct DimensionBudgetExceeded : std::runtime_error {
    explicit DimensionBudgetExceeded(const std::string& what) : std::runtime_error(what) {}
};

enum class Model { koszul, bar };

Model parse_model(const std::string& name);
std::string to_string(Model model);

// Coefficient targets carrying closed-form rank predictions.
enum class Target { M_over_N, B, N, M_over_J };

Target parse_target(const std::string& name);
std::string to_string(Target target);
bimod::Which target_module(Target target);

// One internal-degree column C^{*,s}: dims[p] for p = 0..max_degree and the
// block differentials d[p] : C^{p,s} -> C^{p+1,s} for p < max_degree.
struct BlockColumn {
    std::vector<long> dims;
    std::vector<std::vector<exactla::Trip>> d;
};

// Koszul cochain complex C^p = (dual words of length p) x (coefficient
// labels), enumerated word-major: full index = word * coeff.dim() + label.
// The pair (w, b) has internal degree s = p - homdeg(b); the differential
// prepends or appends one letter and acts by the matching generator, the
// appended term carrying the sign (-1)^{p+1}.
struct KoszulCochainComplex {
    qma::Algebra algebra;
    qma::Algebra dual;
    bimod::Bimodule coeff;
    int max_degree = 0;
    std::vector<long> dims;              // p -> phi(p) * coeff.dim()
    std::map<int, BlockColumn> columns;  // s -> column (columns with any nonzero term)
    // block_index[s][p] lists the full-basis indices of the block basis, in
    // block order (word-major as well).
    std::map<int, std::vector<std::vector<long>>> block_index;

    // Full differential C^p -> C^{p+1}, assembled from the blocks.
    std::vector<exactla::Trip> full_differential(int p) const;
};

KoszulCochainComplex koszul_complex(int m, const bimod::Bimodule& coeff, int max_degree);

// Reduced bar cochain complex C^p = Hom(Nbar^(x p), coeff) on the basis of
// pairs (tuple, label), where a tuple lists p strict-upper matrix units.
// Internal degree s = homdeg(tuple) - homdeg(label). Within a block, the
// basis is ordered by tuple degree, then packed tuple, then label.
struct BarCochainComplex {
    int m = 0;
    bimod::Bimodule coeff;
    int max_degree = 0;
    std::vector<std::pair<int, int>> nbar;  // (i, j) with i < j, the Nbar basis
    std::vector<long> dims;                 // p -> |nbar|^p * coeff.dim()
    std::map<int, BlockColumn> columns;
    // block_basis[s][p] = list of (packed tuple, label index), 5 bits per
    // tuple entry with the first factor in the highest bits.
    std::map<int, std::vector<std::vector<std::pair<std::uint64_t, long>>>> block_basis;
};

std::uint64_t pack_tuple(const std::vector<int>& factors);
std::vector<int> unpack_tuple(std::uint64_t packed, int length);

inline constexpr long kDefaultBarBudget = 2'000'000;

BarCochainComplex bar_complex(int m, const bimod::Bimodule& coeff, int max_degree,
                              long budget = kDefaultBarBudget);

// HH^n(N_m, coeff) over the ring, computed blockwise per internal degree.
exactla::FinAbGroup hochschild(int m, const bimod::Bimodule& coeff, const exactla::Ring& ring,
                               int n, Model model = Model::koszul);

// Same on a prebuilt complex (requires n < max_degree).
exactla::FinAbGroup hochschild(const KoszulCochainComplex& cx, const exactla::Ring& ring, int n);
exactla::FinAbGroup hochschild(const BarCochainComplex& cx, const exactla::Ring& ring, int n);

struct BigradedTable {
    int max_n = 0;
    std::map<std::pair<int, int>, exactla::FinAbGroup> entries;  // (n, s), nontrivial only
    std::map<int, exactla::FinAbGroup> totals;                   // every n = 0..max_n

    const exactla::FinAbGroup& at(int n, int s) const;  // trivial group if absent
};

BigradedTable hochschild_bigraded(int m, const bimod::Bimodule& coeff,
                                  const exactla::Ring& ring, int max_n);

// Closed-form rank of HH^n(N_m, target) over a field of characteristic 0,
// in terms of phi alone. Requires m >= 3.
long long hh_rank_formula(int m, Target target, int n);

// Homology of the bimodule resolution N (x) dual-words (x) N over Z, degrees
// 0..max_i: degree 0 gives a free group of rank dim N, higher degrees vanish.
std::vector<exactla::FinAbGroup> koszul_resolution_homology(int m, int max_i);

}  // namespace homology

#pragma once

#include "exactla.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace bimod {

struct InvalidLayer : std::runtime_error {
    explicit InvalidLayer(const std::string& what) : std::runtime_error(what) {}
};

// Basis labels for the catalog bimodules: the identity I, a matrix unit
// E_{i,j}, or the class of a diagonal unit E_{ii} modulo R*I (i >= 2).
struct Label {
    enum class Kind { identity, unit, bar_diag };
    Kind kind = Kind::identity;
    int i = 0, j = 0;

    static Label id() { return Label{Kind::identity, 0, 0}; }
    static Label unit(int i, int j) { return Label{Kind::unit, i, j}; }
    static Label bar(int i) { return Label{Kind::bar_diag, i, i}; }

    auto operator<=>(const Label&) const = default;
};

// homdeg(E_{i,j}) = j - i; the identity and diagonal classes sit in degree 0.
int homdeg(const Label& label);
std::string to_string(const Label& label);

using ActionVec = std::vector<std::pair<long, int>>;  // (basis index, coefficient)

// A graded bimodule over the upper-triangular algebra, with the left and
// right actions of the generators x_k = E_{k,k+1} tabulated on the basis.
// Generator actions raise homdeg by exactly 1 on every catalog module.
struct Bimodule {
    int m = 0;
    std::string name;
    std::vector<Label> basis;
    std::vector<std::vector<ActionVec>> left;   // left[k-1][b] = x_k * basis[b]
    std::vector<std::vector<ActionVec>> right;  // right[k-1][b] = basis[b] * x_k

    long dim() const { return static_cast<long>(basis.size()); }
    long index_of(const Label& label) const;  // -1 if absent
};

enum class Which { N, B, M, M_over_N, B_over_N, M_over_J, R, Gr, Jpow };

Which parse_which(const std::string& name);
std::string to_string(Which which);

// Catalog constructor; layer applies to Gr (a graded piece of N, 0..m-1) and
// Jpow (the power J^p, 0..m-1) and must be 0 otherwise. Throws InvalidLayer.
Bimodule standard_bimodule(int m, Which which, int layer = 0);

// F^p = span of labels with homdeg >= p, verified to coincide with the
// closure filtration generated by the two-sided generator action.
struct FilteredBimodule {
    Bimodule base;
    int min_degree = 0, max_degree = 0;
    // levels[t] = basis indices spanning F^{min_degree + t}; levels[0] is
    // everything and the chain decreases to the last nonempty level.
    std::vector<std::vector<long>> levels;
};

FilteredBimodule j_adic_filtration(const Bimodule& mod);

// Graded piece F^p / F^{p+1} with the (vanishing) induced generator action.
// Throws InvalidLayer outside [min_degree, max_degree].
Bimodule graded_piece(const FilteredBimodule& filtered, int p);

// Dimension of { A in M : [A, x_k] in N for all k } over the ring.
long normalizer_dimension(int m, const exactla::Ring& ring);

// First-order deformation count: dim_Q H^1(N, M/N) + m^2 - normalizer_dimension.
long tangent_dimension(int m);

}  // namespace bimod

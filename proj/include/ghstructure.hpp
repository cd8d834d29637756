#pragma once

// Cup products, circle products, Gerstenhaber brackets, and BV obstruction
// checks on Hochschild cohomology of N_m, plus the complete m = 2 theory.
//
// Cochains live in the reduced bar complex C^p = Hom(Nbar^{tensor p}, N) with
// integer coefficients; classes are integer combinations of canonical basis
// symbols (1, a(i,I), d(J) for m >= 3; f_p, g_p for m = 2).  Coefficient
// rings enter only when comparing or certifying.

#include "bimod.hpp"
#include "exactla.hpp"
#include "qma.hpp"

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ghstructure {

struct InvalidIndex : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct NotACocycle : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnsupportedPair : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Sparse reduced-bar cochains.

// Finitely supported functional: each tuple of Nbar basis labels maps to an
// integer combination of N basis labels.  A term (u_1,...,u_p) -> v acts as
// u_1^* tensor ... tensor u_p^* with value v; tuples never contain the
// identity label.  degree == tuple length for every stored tuple.
struct SparseCochain {
    int m = 0;
    int degree = 0;
    std::map<std::vector<bimod::Label>, std::map<bimod::Label, long long>> terms;

    bool is_zero() const { return terms.empty(); }
    bool operator==(const SparseCochain&) const = default;
};

SparseCochain cochain_add(const SparseCochain& a, const SparseCochain& b);
SparseCochain cochain_scale(long long c, SparseCochain a);

// Value of f on a tuple of Nbar basis labels, as N-basis coefficients.
std::map<bimod::Label, long long> evaluate(const SparseCochain& f,
                                           const std::vector<bimod::Label>& args);

// Reduced bar coboundary; raises degree by one and preserves internal weight.
SparseCochain bar_coboundary(const SparseCochain& f);

// ---------------------------------------------------------------------------
// Basis symbols and cohomology classes.

enum class SymbolKind { one, a, d, f, g };

struct Symbol {
    SymbolKind kind = SymbolKind::one;
    int i = 0;        // a-symbols: row index in [1, m]
    qma::Word word;   // a-symbols: I; d-symbols: J
    int p = 0;        // f/g-symbols (m = 2): cohomological degree

    static Symbol one();
    static Symbol a(int i, qma::Word I);
    static Symbol d(qma::Word J);
    static Symbol f(int p);
    static Symbol g(int p);
    auto operator<=>(const Symbol&) const = default;
};

// Cohomological degree: |1| = 0, |a(i,I)| = |I|+1, |d(J)| = |J|, |f_p| = |g_p| = p.
int symbol_degree(const Symbol& s);

std::string to_string(const Symbol& s);

// Parses the to_string format: "1", "a(2,[2,1])", "d([])", "f(3)", "g(0)".
Symbol parse_symbol(const std::string& text);

// Integer combination of basis symbols.  Zero coefficients are never stored.
struct CohClass {
    int m = 0;
    std::map<Symbol, long long> coeff;

    bool is_zero() const { return coeff.empty(); }
    bool operator==(const CohClass&) const = default;
};

CohClass class_of(int m, const Symbol& s, long long c = 1);
CohClass class_add(const CohClass& a, const CohClass& b);
CohClass class_scale(long long c, CohClass a);
// Reduces coefficients modulo the ring (Fp, Zmod); identity on Z and Q.
CohClass class_normalize(CohClass a, const exactla::Ring& ring);
std::string to_string(const CohClass& a);

// ---------------------------------------------------------------------------
// Canonical cocycles (m >= 3) and their classes.

// a(i,I): sum_{k<i} E*_{k,i} x I -> E_{k,i}  minus  (-1)^{|I|} sum_{k>i} I x E*_{i,k} -> E_{i,k},
// where x I abbreviates the tuple of degree-one factors of the word I.
// Throws InvalidIndex unless 1 <= i <= m and I is admissible.
SparseCochain cocycle_a(int m, int i, const qma::Word& I);

// d(J): the single term (factors of J) -> E_{1,m}.  Throws InvalidIndex
// unless J is admissible.
SparseCochain cocycle_d(int m, const qma::Word& J);

// Degree-zero unit cochain: () -> identity.
SparseCochain unit_cochain(int m);

// Cocycle representative of an integer class (m >= 3 symbols only).
SparseCochain cochain_of(const CohClass& x);

// ---------------------------------------------------------------------------
// Reduction and class identification (m >= 3).

// Rewrites a formal a/d combination into the canonical basis:
//   sum_i a(i,I) = 0;  dead a(i,(i,J)) = 0;  live a(i,(i,J)) = -(-1)^q a(i+1,(J,i));
//   d(J) with j_1 = 1 or j_q = m-1 is a coboundary.
// Symbols with inadmissible words denote zero classes and are dropped.
CohClass reduce_to_basis(int m, const CohClass& raw);

// Identifies the class of an integer cocycle in the canonical basis by
// evaluating on Koszul word tuples and solving against basis representatives
// plus coboundaries.  Works for mixed internal weights.  Throws NotACocycle
// if the input is not closed or fails to land in the expected span.
CohClass identify_class(int m, const SparseCochain& f);

// ---------------------------------------------------------------------------
// Products.

// Cup product of cochains: juxtaposition of arguments, values multiplied in N.
SparseCochain cochain_cup(const SparseCochain& x, const SparseCochain& y);

// Circle product x o y: sum over insertion slots with Koszul signs
// (-1)^{(k-1)(|y|-1)}; insertions through the identity component vanish.
SparseCochain circle_product(const SparseCochain& x, const SparseCochain& y);

// Per-cup certificate for cup(): how a vanishing cup was established.
enum class CupCertificate {
    nonzero,          // class is nonzero (no certificate needed)
    bar_solver,       // explicit h with dh = cup found in the bar complex
    spectral,         // zero by graded support (blocks outside p in {0,1,m-1})
};

struct CupResult {
    CohClass value;
    CupCertificate certificate = CupCertificate::nonzero;
};

// Cup product of classes over a ring.  For m >= 3, positive-degree products
// are identified via identify_class; when the expected class is zero and the
// ring is a field (Q used for Z), a primitive h with dh = cup is found in the
// reduced bar complex whenever the bar block fits the dimension budget.
CupResult cup_detailed(const CohClass& x, const CohClass& y, const exactla::Ring& ring);
CohClass cup(const CohClass& x, const CohClass& y, const exactla::Ring& ring);

// ---------------------------------------------------------------------------
// Gerstenhaber bracket.

enum class BracketMethod { closed_form, cochain };

// [x, y] in the canonical basis.  closed_form uses the splice formulas for
// a/d symbols (and the parity table for m = 2); cochain forms the graded
// commutator of circle products and identifies its class.
CohClass gerstenhaber_bracket(const CohClass& x, const CohClass& y, BracketMethod method);

// All brackets of basis symbols with |x| + |y| <= max_total, both orders;
// construction verifies graded antisymmetry on every stored pair.
struct BracketTable {
    int m = 0;
    int max_total = 0;
    std::map<std::pair<Symbol, Symbol>, CohClass> entries;
};

BracketTable bracket_table(int m, int max_total, BracketMethod method);

// Positive-degree canonical basis symbols of degree <= max_degree.
std::vector<Symbol> basis_symbols(int m, int max_degree);

// ---------------------------------------------------------------------------
// BV obstruction (m >= 3).

// A BV operator would force [x,y] = 0 whenever all cup products of positive-
// degree classes vanish; the nonzero bracket witness rules one out.
struct BvReport {
    int m = 0;
    exactla::Ring ring;
    int degree_bound = 0;
    long pairs_checked = 0;
    bool witness_cup_zero = false;       // a(1,[1,1]) cup a(1,[2,1]) = 0
    bool all_cups_vanish = false;        // every pair with total degree <= bound
    bool all_cups_bar_certified = false; // each zero cup also solved dh = cup
    bool bracket_witness_nonzero = false;
    bool obstruction_holds = false;
};

BvReport bv_obstruction(int m, const exactla::Ring& ring, int degree_bound = 4);

// ---------------------------------------------------------------------------
// The m = 2 theory.  N_2 = R[x]/(x^2); f_p sends x^{tensor p} to the
// identity, g_p sends it to x = E_{12}.

struct N2Report {
    exactla::Ring ring;
    int max_degree = 0;
    // HH^n(N_2, N_2) for n = 0..max_degree, from the periodic resolution.
    std::vector<exactla::FinAbGroup> groups;
    bool groups_match_koszul = false;
    bool groups_match_formula = false;
    bool products_ok = false;      // f_i f_j = f_{i+j}, f_i g_j = g_{i+j}, g_i g_j = 0
    bool brackets_ok = false;      // circle-product commutators match the parity table
    bool bv_family_checked = false; // fields only
    bool bv_ok = false;            // BV identity for every Delta in the family
    bool delta_squared_zero = false;
    bool pass = false;
};

N2Report n2_theory(const exactla::Ring& ring, int max_degree);

}  // namespace ghstructure

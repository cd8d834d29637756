#pragma once

#include <gmpxx.h>

#include <Eigen/Core>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace Eigen {

template <>
struct NumTraits<mpz_class> : GenericNumTraits<mpz_class> {
    using Real = mpz_class;
    using NonInteger = mpq_class;
    using Nested = mpz_class;
    using Literal = long;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 1,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 30,
        MulCost = 50
    };
};

template <>
struct NumTraits<mpq_class> : GenericNumTraits<mpq_class> {
    using Real = mpq_class;
    using NonInteger = mpq_class;
    using Nested = mpq_class;
    using Literal = long;
    static inline Real epsilon() { return 0; }
    static inline Real dummy_precision() { return 0; }
    static inline int digits10() { return 0; }
    enum {
        IsInteger = 0,
        IsSigned = 1,
        IsComplex = 0,
        RequireInitialization = 1,
        ReadCost = 6,
        AddCost = 60,
        MulCost = 100
    };
};

}  // namespace Eigen

namespace exactla {

using Int = mpz_class;
using Rat = mpq_class;
using IntMat = Eigen::Matrix<Int, Eigen::Dynamic, Eigen::Dynamic>;
using IntVec = Eigen::Matrix<Int, Eigen::Dynamic, 1>;
using RatMat = Eigen::Matrix<Rat, Eigen::Dynamic, Eigen::Dynamic>;
using RatVec = Eigen::Matrix<Rat, Eigen::Dynamic, 1>;

// Raised when a (d_in, d_out) pair fails d_out * d_in = 0 over the ring that
// the computation needs it over (the integers for Z and Z/N, the field itself
// for Q and F_p).
struct NotAComplex : std::runtime_error {
    explicit NotAComplex(const std::string& what) : std::runtime_error(what) {}
};

struct UnsupportedRing : std::runtime_error {
    explicit UnsupportedRing(const std::string& what) : std::runtime_error(what) {}
};

// Coefficient rings: Z, Q, F_p (p prime), Z/N (N >= 1).
struct Ring {
    enum class Kind { Z, Q, Fp, Zmod };
    Kind kind = Kind::Z;
    long mod = 0;  // p for Fp, N for Zmod, unused otherwise

    static Ring Z() { return Ring{Kind::Z, 0}; }
    static Ring Q() { return Ring{Kind::Q, 0}; }
    static Ring fp(long p);
    static Ring zmod(long n);

    bool is_field() const { return kind == Kind::Q || kind == Kind::Fp; }
    bool operator==(const Ring&) const = default;
};

// Accepts "Z", "Q", "Fp:<p>", "Zmod:<N>"; throws std::invalid_argument otherwise.
Ring parse_ring(const std::string& text);
std::string to_string(const Ring& ring);

// Finitely generated module over the coefficient ring in invariant-factor form.
// torsion entries are >= 2 and divisibility-sorted (each divides the next).
// Over a field, free_rank is the dimension and torsion is empty. Over Z/N,
// free_rank counts invariant factors equal to N and torsion the ones in [2, N).
struct FinAbGroup {
    long free_rank = 0;
    std::vector<long long> torsion;

    bool operator==(const FinAbGroup&) const = default;
    bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
};

std::string to_string(const FinAbGroup& g);

// Canonical form of  R^free + sum_i R/(moduli_i)  as a FinAbGroup: drops unit
// factors and recombines the rest into a divisibility chain.
FinAbGroup finab_from_cyclics(long free_rank, const std::vector<long long>& moduli);

// u * input * v = s with u, v unimodular; s diagonal, entries positive and
// divisibility-sorted. invariant_factors lists the nonzero diagonal of s.
struct SNFResult {
    IntMat s, u, uinv, v, vinv;
    std::vector<Int> invariant_factors;
};

SNFResult smith_normal_form(const IntMat& input);

// Basis of the saturated integer kernel of a (as a map Z^cols -> Z^rows),
// returned as the columns of a cols x nullity matrix.
IntMat kernel_basis_z(const IntMat& a);

long dense_rank(const IntMat& a, const Ring& ring);

// One solution x of a x = b over the ring, if any. Entries are integral for
// Z, F_p and Z/N (reduced to [0, mod) for the modular rings).
std::optional<RatVec> solve_linear(const IntMat& a, const IntVec& b, const Ring& ring);

// Cohomology at the middle of  C_prev --d_in--> C_mid --d_out--> C_next, where
// d_in is (mid x prev) and d_out is (next x mid). Throws NotAComplex when
// d_out * d_in != 0 (over Z for ring Z and Z/N, over the field for Q and F_p;
// the Z/N result is derived from the integer computation by universal
// coefficients, which is why it needs the integer pair to be a complex).
FinAbGroup cohomology_of_pair(const IntMat& d_in, const IntMat& d_out, const Ring& ring);

// ---- sparse exact elimination ----

struct Trip {
    long r = 0, c = 0;
    long long v = 0;
};

// Unimodular reduction  A ~ I_pivots (+) residual  obtained by splitting off
// +-1 pivots with integer row operations. residual is empty iff every
// invariant factor of A equals 1; in that case rank(A) = pivots over Q and
// every F_p simultaneously and coker(A) is free.
struct SparseElim {
    long pivots = 0;
    long residual_rows = 0, residual_cols = 0;
    std::vector<Trip> residual;
};

// Accumulate duplicate coordinates, drop zeros, sort column-major.
void coalesce_trips(std::vector<Trip>& trips);

SparseElim sparse_eliminate(long rows, long cols, const std::vector<Trip>& entries);

long sparse_rank(long rows, long cols, const std::vector<Trip>& entries, const Ring& ring);

// Cokernel of A : Z^cols -> Z^rows as a group (free part + torsion chain).
FinAbGroup sparse_coker(long rows, long cols, const std::vector<Trip>& entries);

IntMat sparse_to_dense(long rows, long cols, const std::vector<Trip>& entries);

// Sparse counterpart of cohomology_of_pair for the chain
// C_prev --d_in--> C_mid --d_out--> C_next (d_in mid x prev, d_out next x mid).
// The caller guarantees d_out * d_in = 0 over Z; no complex check is run.
FinAbGroup sparse_cohomology(long prev, long mid, long next,
                             const std::vector<Trip>& d_in,
                             const std::vector<Trip>& d_out, const Ring& ring);

// Direct sum of groups over one ring. Over Z/N a free summand means a copy
// of Z/N, so torsion factors equal to N fold back into the free rank.
FinAbGroup finab_direct_sum(const std::vector<FinAbGroup>& parts, const Ring& ring);

// Universal-coefficients assembly of H(C (x) Z/n) from the integer cohomology
// (free_rank, torsion) at this degree and the cokernel torsion of the
// outgoing differential (= the torsion feeding Tor from the next degree).
FinAbGroup finab_mod_n(long free_rank, const std::vector<long long>& torsion,
                       const std::vector<long long>& next_torsion, long n);

}  // namespace exactla

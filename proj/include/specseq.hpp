#pragma once

#include "bimod.hpp"
#include "qma.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace specseq {

using exactla::FinAbGroup;
using exactla::Ring;
using exactla::Trip;

// Sparse column vector: (index, coefficient), sorted by index.
using SparseVec = std::vector<std::pair<long, long long>>;

// Coefficient targets carrying a spectral-sequence page.
enum class Target { N, B, B_over_N, M_over_N, M_over_J };

Target parse_target(const std::string& name);
std::string to_string(Target target);
bimod::Which target_module(Target target);

// Pair (i, I) labeling the kernel generators z(i, I) and the classes a(i, I).
struct SpliceIndex {
    int i = 0;
    qma::Word I;

    auto operator<=>(const SpliceIndex&) const = default;
};

// Filtration range of the page: p runs over [p_min, p_max].
int page_p_min(int m, Target target);
int page_p_max(int m, Target target);

// Number of graded-piece labels of Gr^p; 0 outside the filtration range.
long gr_label_count(int m, Target target, int p);

// Labels of Gr^p in block order (the order induced by the module basis).
std::vector<bimod::Label> gr_label_list(int m, Target target, int p);

// Dimension of the block E1^{p,q} = words of length p+q tensor Gr^p labels.
long e1_dim(int m, Target target, int p, int q);

// The differential d1^{p,q} : E1^{p,q} -> E1^{p+1,q} from the explicit
// boundary case formulas, as coalesced column-major triplets. Blocks are
// indexed word-major: index = word * label_count + label_position.
std::vector<Trip> closed_d1_block(int m, Target target, int p, int q);

// The same block assembled as the connecting homomorphism of
// 0 -> Gr^{p+1} -> F^p/F^{p+2} -> Gr^p -> 0: lift a basis element along the
// canonical section, differentiate in the two-step quotient, project to the
// top graded piece. Must agree with closed_d1_block entry for entry.
std::vector<Trip> connecting_d1_block(int m, Target target, int p, int q);

struct E1Page {
    int m = 0;
    Target target = Target::N;
    int max_total = 0;
    int p_min = 0, p_max = 0;
    // gr_labels[p - p_min] = labels of Gr^p in block order.
    std::vector<std::vector<bimod::Label>> gr_labels;
    // d1 per block (p, q), stored for p < p_max and p + q < max_total.
    std::map<std::pair<int, int>, std::vector<Trip>> d1;

    long dim(int p, int q) const;
    const std::vector<Trip>& d1_at(int p, int q) const;  // empty if absent
    // Block basis as (word, label) pairs, word-major.
    std::vector<std::pair<qma::Word, bimod::Label>> block_basis(int p, int q) const;
};

// Builds every block with p + q <= max_total. Each stored differential is
// assembled both from the closed case formulas and as the connecting
// homomorphism, and the two assemblies must agree entry-wise.
E1Page e1_page(int m, Target target, int max_total);

struct E2Entry {
    FinAbGroup group;
    // Distinguished representatives in block coordinates: the z(i, I) family
    // at (0, q) for B, the corner words at (m-1, q), the splice classes at
    // (1, q) for N. A basis except for the z family, which generates.
    std::vector<SparseVec> reps;
};

struct E2Page {
    int m = 0;
    Target target = Target::N;
    Ring ring = Ring::Z();
    int max_total = 0;  // entries computed for p + q <= max_total - 1
    std::map<std::pair<int, int>, E2Entry> entries;  // nontrivial groups only

    const FinAbGroup& at(int p, int q) const;  // trivial group if absent
};

// Subquotient ker d1^{p,q} / im d1^{p-1,q} per block, by exact elimination.
E2Page e2_page(const E1Page& page, const Ring& ring);

// The kernel generators z(i, I) for |I| = q, as vectors in the block (0, q+1)
// of the B page: z(i, I) = y_i y_I (x) E_{i,i} + (-1)^{q+1} y_I y_i (x)
// E_{i+1,i+1}. Every vector is checked to lie in ker d1^{0,q+1} and the
// family is checked to span that kernel over Q.
std::vector<SparseVec> z_generators(int m, int q);

// Words of length q with first letter != 1 and last letter != m-1; their
// count is checked against the alternating-sum rank formula for the top
// filtration corner.
std::vector<qma::Word> top_corner_basis(int m, int q);

// Verifies, as exact integer matrix identities at column q: the homotopy
// identities of the diagonal chain (s d1 + d1 s = id on the inner blocks of
// the B page) and of the lower-triangular chain (the analogous identities on
// the M/J page together with the injectivity edge at p = -(m-1)).
bool contracting_homotopy_check(int m, int q);

// Basis elements of the inner B-page blocks where the verbatim homotopy case
// formulas fail the identity; the operator used everywhere else amends the
// single affected value. Returns (p, block index) pairs.
std::vector<std::pair<int, long>> uncorrected_homotopy_defects(int m, int q);

// Rank additivity certificate that the image of the lower-chain boundary
// into the diagonal column meets the scalar block trivially.
bool kernel_avoidance_check(int m, int q);

// Splice-index bookkeeping for the (1, q) blocks of the N page: the full set
// {(i, I)}, the reducible part, and the complementary basis labels.
std::vector<SpliceIndex> t_all(int m, int q);
std::vector<SpliceIndex> t_minus(int m, int q);
std::vector<SpliceIndex> t_plus(int m, int q);

// Representative of the class a(i, I) in the block (1, |I|) of the N page:
// y_{i-1} y_I (x) E_{i-1,i} - (-1)^{|I|} y_I y_i (x) E_{i,i+1}.
SparseVec a_class_rep(int m, int i, const qma::Word& I);

// Certified E2 structure sweep over the B and N pages for q up to max_q:
// vanishing of the inner B blocks via the homotopy identities, rank phi(q)
// kernels at p = 0, the corner cokernel with its word basis, the N-page
// support {0, 1, m-1} with the splice-class ranks, integral freeness, and
// the alternating-rank bookkeeping of the N -> B -> B/N long exact sequence.
struct E2TheoremReport {
    int m = 0, max_q = 0;
    bool pass = false;
    bool all_free = false;
    std::vector<std::string> failures;
    std::map<int, long long> rank_b_p0;    // q -> rank E2^{0,q}(B)
    std::map<int, long long> rank_corner;  // q -> rank E2^{m-1,q}
    std::map<int, long long> rank_n_p1;    // q -> rank E2^{1,q}(N)
};

E2TheoremReport e2_theorem_report(int m, int max_q);

// Compares the E2 page against the computed cohomology of the target:
// group equality per (total degree, internal degree) and per-degree totals.
struct CollapseReport {
    int m = 0;
    Target target = Target::N;
    int max_n = 0;
    Ring ring = Ring::Z();
    bool pass = false;
    bool stable_from_r1 = false;  // every stored d1 block vanishes
    long blocks_compared = 0;
    std::vector<std::string> failures;
};

CollapseReport collapse_and_extension_check(int m, Target target, int max_n,
                                            const Ring& ring);

}  // namespace specseq

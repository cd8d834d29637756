// Acceptance gate: twelve certified checks, one line each, nonzero exit on
// any failure. Budgets are wall-clock seconds on a single core.

#include "bimod.hpp"
#include "exactla.hpp"
#include "ghstructure.hpp"
#include "homology.hpp"
#include "qma.hpp"
#include "specseq.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace {

using exactla::FinAbGroup;
using exactla::Ring;

int failures = 0;

void run(const char* name, double budget_seconds, const std::function<bool()>& check) {
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = check();
    } catch (const std::exception& e) {
        error = e.what();
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (elapsed > budget_seconds) {
        std::printf("%-14s FAIL  over budget: %.2fs > %.0fs\n", name, elapsed, budget_seconds);
        ++failures;
        return;
    }
    if (!ok) {
        std::printf("%-14s FAIL  %s\n", name, error.empty() ? "check returned false" : error.c_str());
        ++failures;
        return;
    }
    std::printf("%-14s PASS  %.2fs (budget %.0fs)\n", name, elapsed, budget_seconds);
}

bool ac1_phi() {
    using qma::PhiMethod;
    for (int m = 2; m <= 6; ++m)
        for (int q = 0; q <= 12; ++q) {
            const long long base = qma::phi(m, q, PhiMethod::recursion);
            for (PhiMethod method :
                 {PhiMethod::enumerate, PhiMethod::series, PhiMethod::combinatorial})
                if (qma::phi(m, q, method) != base) return false;
        }
    for (int n = 0; n <= 12; ++n)
        if (qma::phi(3, n) != n + 1) return false;
    for (int m = 2; m <= 6; ++m)
        if (qma::phi(m, 2) != 1LL * m * m - 3 * m + 3) return false;
    return true;
}

bool ac2_ranks_m_over_n() {
    for (int m : {3, 4, 5}) {
        const auto coeff = bimod::standard_bimodule(m, bimod::Which::M_over_N);
        const auto over_q = homology::hochschild_bigraded(m, coeff, Ring::Q(), 8);
        for (int n = 0; n <= 8; ++n) {
            const long long expect = n == 0 ? m - 1 : (m - 2) * qma::phi(m, n);
            if (over_q.totals.at(n).free_rank != expect) return false;
            if (!over_q.totals.at(n).torsion.empty()) return false;
        }
        for (const auto& [key, group] : over_q.entries)
            if (key.second != key.first) return false;
        for (const Ring& ring : {Ring::fp(2), Ring::fp(3)}) {
            const auto modp = homology::hochschild_bigraded(m, coeff, ring, 8);
            for (int n = 0; n <= 8; ++n)
                if (!(modp.totals.at(n) == over_q.totals.at(n))) return false;
            if (!(modp.entries == over_q.entries)) return false;
        }
    }
    return true;
}

bool ac3_ranks_n() {
    for (int m : {3, 4, 5}) {
        const auto coeff = bimod::standard_bimodule(m, bimod::Which::N);
        const auto table = homology::hochschild_bigraded(m, coeff, Ring::Q(), 8);
        for (int n = 0; n <= 8; ++n)
            if (table.totals.at(n).free_rank != homology::hh_rank_formula(m, homology::Target::N, n))
                return false;
        // The support has exactly four families: the unit at (0, 0), the
        // corner center at (0, 1-m), the splice line s = n-1, and the corner
        // line s = n-m+1.
        std::map<std::pair<int, int>, FinAbGroup> expect;
        expect[{0, 0}] = FinAbGroup{1, {}};
        expect[{0, 1 - m}] = FinAbGroup{1, {}};
        for (int n = 1; n <= 8; ++n) {
            const long long splice = n == 1 ? m - 1 : (m - 2) * qma::phi(m, n - 1);
            if (splice > 0) expect[{n, n - 1}] = FinAbGroup{splice, {}};
            const long long corner = qma::phi_constrained(m, n, {true, true});
            if (corner > 0) expect[{n, n - m + 1}] = FinAbGroup{corner, {}};
        }
        if (!(table.entries == expect)) return false;
    }
    return true;
}

bool ac4_e2() {
    for (int m : {3, 4, 5}) {
        const specseq::E2TheoremReport rep = specseq::e2_theorem_report(m, 8);
        if (!rep.pass || !rep.all_free || !rep.failures.empty()) return false;
        for (int q = 0; q <= 8; ++q) {
            if (rep.rank_b_p0.at(q) != qma::phi(m, q)) return false;
            if (rep.rank_n_p1.at(q) != (q == 0 ? m - 1 : (m - 2) * qma::phi(m, q)))
                return false;
            if (rep.rank_corner.at(q) != qma::phi_constrained(m, m - 1 + q, {true, true}))
                return false;
        }
        if (rep.rank_corner.at(-(m - 1)) != 1) return false;
    }
    return true;
}

bool ac5_homotopy() {
    for (int m : {3, 4, 5})
        for (int q = 0; q <= 6; ++q)
            if (!specseq::contracting_homotopy_check(m, q)) return false;
    return true;
}

bool ac6_collapse() {
    using specseq::Target;
    for (int m : {2, 3, 4})
        for (Target target : {Target::N, Target::B, Target::B_over_N, Target::M_over_N,
                              Target::M_over_J}) {
            const auto rep = specseq::collapse_and_extension_check(m, target, 6, Ring::Z());
            if (!rep.pass || rep.blocks_compared <= 0) return false;
        }
    return true;
}

bool ac7_koszul_vs_bar() {
    for (int m : {2, 3})
        for (bimod::Which which : {bimod::Which::N, bimod::Which::M_over_N, bimod::Which::R}) {
            const auto coeff = bimod::standard_bimodule(m, which);
            const auto bar = homology::bar_complex(m, coeff, 5);
            const auto koszul = homology::koszul_complex(m, coeff, 5);
            for (const Ring& ring : {Ring::Q(), Ring::fp(2), Ring::fp(3)})
                for (int n = 0; n <= 4; ++n)
                    if (!(homology::hochschild(bar, ring, n) ==
                          homology::hochschild(koszul, ring, n)))
                        return false;
        }
    return true;
}

bool ac8_products() {
    for (int m : {3, 4}) {
        const auto pool = ghstructure::basis_symbols(m, 4);
        for (const Ring& ring : {Ring::Q(), Ring::fp(2)})
            for (const auto& sx : pool)
                for (const auto& sy : pool) {
                    if (ghstructure::symbol_degree(sx) + ghstructure::symbol_degree(sy) > 5)
                        continue;
                    const auto r = ghstructure::cup_detailed(ghstructure::class_of(m, sx),
                                                             ghstructure::class_of(m, sy), ring);
                    if (!r.value.is_zero()) return false;
                    if (r.certificate != ghstructure::CupCertificate::bar_solver) return false;
                }
    }
    return true;
}

bool ac9_brackets() {
    using ghstructure::BracketMethod;
    for (int m : {3, 4}) {
        const auto pool = ghstructure::basis_symbols(m, 5);
        for (const auto& sx : pool)
            for (const auto& sy : pool) {
                if (static_cast<int>(sx.word.size() + sy.word.size()) > 4) continue;
                const auto x = ghstructure::class_of(m, sx);
                const auto y = ghstructure::class_of(m, sy);
                if (!(ghstructure::gerstenhaber_bracket(x, y, BracketMethod::closed_form) ==
                      ghstructure::gerstenhaber_bracket(x, y, BracketMethod::cochain)))
                    return false;
            }
        const auto witness = ghstructure::gerstenhaber_bracket(
            ghstructure::class_of(m, ghstructure::Symbol::a(1, {1, 1})),
            ghstructure::class_of(m, ghstructure::Symbol::a(1, {2, 1})),
            BracketMethod::closed_form);
        const auto expect =
            ghstructure::class_of(m, ghstructure::Symbol::a(1, {2, 1, 1, 1}), 1);
        if (!(witness == expect)) return false;
    }
    return true;
}

bool ac10_bv() {
    for (int m : {3, 4, 5})
        for (const Ring& ring : {Ring::Q(), Ring::fp(2)})
            if (!ghstructure::bv_obstruction(m, ring).obstruction_holds) return false;
    return true;
}

bool ac11_n2() {
    const auto z = ghstructure::n2_theory(Ring::Z(), 8);
    if (!z.pass) return false;
    if (!(z.groups[0] == exactla::finab_from_cyclics(2, {}))) return false;
    for (int n = 1; n <= 8; ++n) {
        const FinAbGroup expect = n % 2 == 0 ? exactla::finab_from_cyclics(1, {2})
                                             : exactla::finab_from_cyclics(1, {});
        if (!(z.groups[n] == expect)) return false;
    }
    const auto z4 = ghstructure::n2_theory(Ring::zmod(4), 6);
    if (!z4.pass) return false;
    for (int n = 1; n <= 6; n += 2)
        if (z4.groups[n].free_rank != 1 || z4.groups[n].torsion != std::vector<long long>{2})
            return false;
    for (const Ring& ring : {Ring::fp(3), Ring::fp(2)}) {
        const auto report = ghstructure::n2_theory(ring, 6);
        if (!report.pass || !report.bv_family_checked || !report.bv_ok ||
            !report.delta_squared_zero)
            return false;
    }
    return true;
}

bool ac12_tangent() {
    for (int m : {3, 4, 5}) {
        const auto coeff = bimod::standard_bimodule(m, bimod::Which::M_over_N);
        const long h1 = homology::hochschild(m, coeff, Ring::Q(), 1).free_rank;
        const long normalizer = bimod::normalizer_dimension(m, Ring::Q());
        const long formula = (3L * m * m - 7 * m + 4) / 2;
        if (h1 + m * m - normalizer != formula) return false;
        if (bimod::tangent_dimension(m) != formula) return false;
    }
    return bimod::tangent_dimension(3) == 5;
}

}  // namespace

int main() {
    run("AC1 phi", 1, ac1_phi);
    run("AC2 hh(M/N)", 30, ac2_ranks_m_over_n);
    run("AC3 hh(N)", 60, ac3_ranks_n);
    run("AC4 e2", 60, ac4_e2);
    run("AC5 homotopy", 10, ac5_homotopy);
    run("AC6 collapse", 60, ac6_collapse);
    run("AC7 bar", 120, ac7_koszul_vs_bar);
    run("AC8 products", 120, ac8_products);
    run("AC9 brackets", 60, ac9_brackets);
    run("AC10 bv", 30, ac10_bv);
    run("AC11 n2", 30, ac11_n2);
    run("AC12 tangent", 5, ac12_tangent);
    if (failures > 0) {
        std::printf("%d criterion(s) failed\n", failures);
        return 1;
    }
    std::printf("all 12 criteria pass\n");
    return 0;
}

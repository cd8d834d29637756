#include "ghstructure.hpp"

#include <algorithm>
#include <map>
#include <vector>

#include "qma.hpp"
#include "specseq.hpp"

#include "doctest.h"

using namespace ghstructure;
using bimod::Label;
using exactla::Ring;
using qma::Word;

namespace {

CohClass cls(int m, const Symbol& s, long long c = 1) { return class_of(m, s, c); }

Symbol A(int i, Word I) { return Symbol::a(i, std::move(I)); }
Symbol D(Word J) { return Symbol::d(std::move(J)); }

// Direct evaluation of the bar coboundary formula on one argument tuple.
std::map<Label, long long> brute_coboundary(const SparseCochain& f,
                                            const std::vector<Label>& args) {
    std::map<Label, long long> out;
    auto acc = [&](const std::map<Label, long long>& vals, long long sign,
                   const Label* mult, bool left) {
        for (const auto& [v, c] : vals) {
            Label prod = v;
            if (mult) {
                if (v.kind == Label::Kind::identity)
                    prod = *mult;
                else if (left && mult->j == v.i)
                    prod = Label::unit(mult->i, v.j);
                else if (!left && v.j == mult->i)
                    prod = Label::unit(v.i, mult->j);
                else
                    continue;
            }
            out[prod] += sign * c;
        }
    };
    const int p = f.degree;
    {  // a_1 f(a_2, ..., a_{p+1})
        std::vector<Label> rest(args.begin() + 1, args.end());
        acc(evaluate(f, rest), 1, &args.front(), true);
    }
    for (int k = 1; k <= p; ++k) {  // (-1)^k f(..., a_k a_{k+1}, ...)
        const Label &x = args[k - 1], &y = args[k];
        if (x.j != y.i) continue;  // product zero in Nbar
        std::vector<Label> merged(args.begin(), args.begin() + (k - 1));
        merged.push_back(Label::unit(x.i, y.j));
        merged.insert(merged.end(), args.begin() + (k + 1), args.end());
        long long sign = k % 2 == 0 ? 1 : -1;
        for (const auto& [v, c] : evaluate(f, merged)) out[v] += sign * c;
    }
    {  // (-1)^{p+1} f(a_1, ..., a_p) a_{p+1}
        std::vector<Label> front(args.begin(), args.end() - 1);
        acc(evaluate(f, front), (p + 1) % 2 == 0 ? 1 : -1, &args.back(), false);
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

std::vector<std::vector<Label>> tuples_of_units(int m, int length) {
    std::vector<Label> units;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) units.push_back(Label::unit(i, j));
    std::vector<std::vector<Label>> out{{}};
    for (int d = 0; d < length; ++d) {
        std::vector<std::vector<Label>> next;
        for (const auto& t : out)
            for (const auto& u : units) {
                auto e = t;
                e.push_back(u);
                next.push_back(std::move(e));
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

TEST_CASE("canonical cocycles and their terms") {
    // a(1, []) = -sum_{k>1} E*_{1k} (x) E_{1k}.
    SparseCochain f = cocycle_a(3, 1, {});
    CHECK(f.degree == 1);
    CHECK(f.terms.size() == 2);
    for (int k = 2; k <= 3; ++k) {
        std::vector<Label> t{Label::unit(1, k)};
        REQUIRE(f.terms.count(t) == 1);
        CHECK(f.terms.at(t).at(Label::unit(1, k)) == -1);
    }
    // a(2, [1]) has a leading and a trailing term.
    SparseCochain g = cocycle_a(3, 2, {1});
    CHECK(g.terms.size() == 2);
    CHECK(g.terms.at({Label::unit(1, 2), Label::unit(1, 2)}).at(Label::unit(1, 2)) == 1);
    CHECK(g.terms.at({Label::unit(1, 2), Label::unit(2, 3)}).at(Label::unit(2, 3)) == 1);
    // d([]) is the central corner value in degree zero.
    SparseCochain d0 = cocycle_d(3, {});
    CHECK(d0.degree == 0);
    CHECK(d0.terms.at({}).at(Label::unit(1, 3)) == 1);

    CHECK_THROWS_AS(cocycle_a(3, 0, {}), InvalidIndex);
    CHECK_THROWS_AS(cocycle_a(3, 4, {}), InvalidIndex);
    CHECK_THROWS_AS(cocycle_a(3, 1, {3}), InvalidIndex);     // letter out of range
    CHECK_THROWS_AS(cocycle_a(3, 1, {1, 2}), InvalidIndex);  // inadmissible word
    CHECK_THROWS_AS(cocycle_d(3, {1, 2}), InvalidIndex);
}

TEST_CASE("bar coboundary matches direct evaluation and kills the cocycles") {
    // Cross-check the symbolic coboundary against the formula on all tuples.
    for (int m : {3, 4}) {
        std::vector<SparseCochain> probes{cocycle_a(m, 1, {}), cocycle_a(m, 2, {1}),
                                          cocycle_d(m, {m - 1}),
                                          cochain_cup(cocycle_a(m, 1, {}), cocycle_a(m, 2, {}))};
        // A non-cocycle probe as well.
        SparseCochain odd{m, 1, {}};
        odd.terms[{Label::unit(1, 2)}][Label::unit(1, 3)] = 1;
        probes.push_back(odd);
        for (const auto& f : probes) {
            SparseCochain df = bar_coboundary(f);
            for (const auto& args : tuples_of_units(m, f.degree + 1)) {
                CHECK(evaluate(df, args) == brute_coboundary(f, args));
            }
        }
    }
    // All canonical generators are closed: m <= 4, |I| <= 3.
    for (int m : {3, 4}) {
        for (int len = 0; len <= 3; ++len)
            for (const auto& packed : qma::word_table(m, len).words) {
                Word w = qma::unpack_word(packed, len);
                for (int i = 1; i <= m; ++i)
                    CHECK(bar_coboundary(cocycle_a(m, i, w)).is_zero());
                CHECK(bar_coboundary(cocycle_d(m, w)).is_zero());
            }
    }
}

TEST_CASE("class identification pins") {
    CHECK(identify_class(3, cocycle_a(3, 1, {1})) == cls(3, A(1, {1})));
    CHECK(identify_class(3, cocycle_a(3, 2, {2})) == cls(3, A(3, {2})));
    CHECK(identify_class(3, cocycle_a(3, 2, {2, 1})).is_zero());  // dead pair
    CHECK(identify_class(3, cocycle_d(3, {1})).is_zero());        // first letter 1
    CHECK(identify_class(3, cocycle_d(3, {2})).is_zero());        // last letter m-1
    CHECK(identify_class(3, cocycle_d(3, {2, 1})) == cls(3, D({2, 1})));
    CHECK(identify_class(3, unit_cochain(3)) == cls(3, Symbol::one()));
    CHECK(identify_class(4, cocycle_a(4, 2, {2, 2})) == cls(4, A(2, {2, 2})));
    // (2,[3,1]) reduces through the relation a(1,[1,3]) + a(2,[3,1]) = 0.
    CHECK(identify_class(4, cocycle_a(4, 2, {3, 1})) == cls(4, A(1, {1, 3}), -1));

    // (E12) -> E13 is the coboundary of the degree-zero cochain E23.
    SparseCochain cob{3, 1, {}};
    cob.terms[{Label::unit(1, 2)}][Label::unit(1, 3)] = 1;
    CHECK(identify_class(3, cob).is_zero());

    SparseCochain bad{3, 1, {}};
    bad.terms[{Label::unit(1, 3)}][Label::unit(1, 2)] = 1;
    CHECK_THROWS_AS(identify_class(3, bad), NotACocycle);
}

TEST_CASE("reduce_to_basis pins and idempotence") {
    // a(m, []) = -sum_{i<m} a(i, []).
    CohClass top = reduce_to_basis(3, cls(3, A(3, {})));
    CohClass expect = class_add(cls(3, A(1, {}), -1), cls(3, A(2, {}), -1));
    CHECK(top == expect);
    // Live relation at q = 1: a(2,[1]) = a(1,[1]) and a(2,[2]) = a(3,[2]).
    CHECK(reduce_to_basis(3, cls(3, A(2, {1}))) == cls(3, A(1, {1})));
    CHECK(reduce_to_basis(3, cls(3, A(2, {2}))) == cls(3, A(3, {2})));
    // Row relation: a(3,[1]) = -a(1,[1]) - a(2,[1]) = -2 a(1,[1]).
    CHECK(reduce_to_basis(3, cls(3, A(3, {1}))) == cls(3, A(1, {1}), -2));
    // Dead pair reduces to zero; basis elements are fixed.
    CHECK(reduce_to_basis(3, cls(3, A(2, {2, 1}))).is_zero());
    CHECK(reduce_to_basis(3, cls(3, A(1, {1}))) == cls(3, A(1, {1})));
    // Hit d-words are coboundaries.
    CHECK(reduce_to_basis(3, cls(3, D({1}))).is_zero());
    CHECK(reduce_to_basis(3, cls(3, D({2, 1}))) == cls(3, D({2, 1})));
    // Idempotence on a stack of everything above.
    CohClass mix = class_add(class_add(cls(3, A(3, {1}), 5), cls(3, D({2, 1}), -7)),
                             cls(3, A(2, {2}), 3));
    CHECK(reduce_to_basis(3, reduce_to_basis(3, mix)) == reduce_to_basis(3, mix));
    // Reduction agrees with identification of the matching cocycle.
    for (int i = 1; i <= 4; ++i)
        for (const Word& w : {Word{}, Word{1}, Word{3}, Word{2, 2}})
            CHECK(reduce_to_basis(4, cls(4, A(i, w))) ==
                  identify_class(4, cocycle_a(4, i, w)));
}

TEST_CASE("cup products vanish with certificates") {
    const Ring q = Ring::Q();
    // The unit acts as identity.
    CohClass x = cls(3, A(1, {1}));
    CHECK(cup(cls(3, Symbol::one()), x, q) == x);
    CHECK(cup(x, cls(3, Symbol::one()), q) == x);
    // Spec examples.
    CupResult r = cup_detailed(cls(3, A(1, {})), cls(3, A(2, {})), q);
    CHECK(r.value.is_zero());
    CHECK(r.certificate == CupCertificate::bar_solver);
    CHECK(cup(cls(3, D({})), cls(3, D({})), q).is_zero());
    // The BV witness cup.
    CupResult w = cup_detailed(cls(3, A(1, {1, 1})), cls(3, A(1, {2, 1})), q);
    CHECK(w.value.is_zero());
    CHECK(w.certificate == CupCertificate::bar_solver);
}

TEST_CASE("kernel of the augmentation squares to zero") {
    // All pairwise cups of canonical basis classes, total degree <= 5,
    // m in {3, 4}, over Q and F2, each vanishing with a primitive found.
    for (int m : {3, 4}) {
        const auto pool = basis_symbols(m, 4);
        for (const Ring& ring : {Ring::Q(), Ring::fp(2)}) {
            for (const auto& sx : pool)
                for (const auto& sy : pool) {
                    if (symbol_degree(sx) + symbol_degree(sy) > 5) continue;
                    CupResult r = cup_detailed(cls(m, sx), cls(m, sy), ring);
                    CHECK(r.value.is_zero());
                    CHECK(r.certificate == CupCertificate::bar_solver);
                }
        }
    }
    // The positive-weight line keeps producing generators: rank (m-2) phi(q).
    for (int m : {3, 4})
        for (int q = 1; q <= 6; ++q)
            CHECK(static_cast<long long>(specseq::t_plus(m, q).size()) ==
                  (m - 2) * qma::phi(m, q, qma::PhiMethod::recursion));
}

TEST_CASE("circle product pins") {
    SparseCochain e{2, 1, {}};
    e.terms[{Label::unit(1, 2)}][Label::unit(1, 2)] = 1;
    CHECK(circle_product(e, e) == e);  // E*_{12} (x) E_{12} composed with itself
    // Disjoint supports compose to zero.
    SparseCochain a13{3, 1, {}};
    a13.terms[{Label::unit(1, 3)}][Label::unit(1, 3)] = 1;
    SparseCochain b23{3, 1, {}};
    b23.terms[{Label::unit(2, 3)}][Label::unit(1, 2)] = 1;
    CHECK(circle_product(a13, b23).is_zero());
}

TEST_CASE("bracket witness has coefficient exactly one") {
    for (int m : {3, 4}) {
        const CohClass x = cls(m, A(1, {1, 1}));
        const CohClass y = cls(m, A(1, {2, 1}));
        const CohClass expect = cls(m, A(1, {2, 1, 1, 1}));
        CHECK(gerstenhaber_bracket(x, y, BracketMethod::closed_form) == expect);
        CHECK(gerstenhaber_bracket(x, y, BracketMethod::cochain) == expect);
    }
}

TEST_CASE("closed-form and cochain brackets agree") {
    // All basis pairs with |I| + |J| <= 4 (a- and d-symbols mixed).
    for (int m : {3, 4}) {
        std::vector<Symbol> pool;
        for (const auto& s : basis_symbols(m, 5)) {
            if (static_cast<int>(s.word.size()) <= 4) pool.push_back(s);
        }
        long checked = 0;
        for (const auto& sx : pool)
            for (const auto& sy : pool) {
                if (static_cast<int>(sx.word.size() + sy.word.size()) > 4) continue;
                CohClass closed =
                    gerstenhaber_bracket(cls(m, sx), cls(m, sy), BracketMethod::closed_form);
                CohClass chain =
                    gerstenhaber_bracket(cls(m, sx), cls(m, sy), BracketMethod::cochain);
                CHECK(closed == chain);
                CHECK(class_normalize(closed, Ring::fp(2)) ==
                      class_normalize(chain, Ring::fp(2)));
                ++checked;
            }
        CHECK(checked > 50);
    }
    // Brackets of d-classes vanish identically.
    CHECK(gerstenhaber_bracket(cls(3, D({2, 1})), cls(3, D({2, 1, 1})),
                               BracketMethod::closed_form)
              .is_zero());
    CHECK(gerstenhaber_bracket(cls(3, D({})), cls(3, D({2, 1})), BracketMethod::cochain)
              .is_zero());
}

TEST_CASE("graded antisymmetry and Jacobi on classes") {
    // bracket_table verifies antisymmetry for every stored pair.
    BracketTable table = bracket_table(3, 3, BracketMethod::cochain);
    CHECK(table.entries.size() > 20);
    // Graded Jacobi, cyclic form, on sampled triples of degree <= 3 symbols.
    const auto pool = basis_symbols(3, 3);
    long triples = 0;
    auto sign = [](int a, int b) { return ((a % 2) * (b % 2)) ? -1LL : 1LL; };
    for (size_t ix = 0; ix < pool.size() && triples < 60; ++ix)
        for (size_t iy = ix; iy < pool.size() && triples < 60; ++iy)
            for (size_t iz = iy; iz < pool.size() && triples < 60; ++iz) {
                const CohClass x = cls(3, pool[ix]);
                const CohClass y = cls(3, pool[iy]);
                const CohClass z = cls(3, pool[iz]);
                const int dx = symbol_degree(pool[ix]) - 1;
                const int dy = symbol_degree(pool[iy]) - 1;
                const int dz = symbol_degree(pool[iz]) - 1;
                auto br = [](const CohClass& u, const CohClass& v) {
                    return gerstenhaber_bracket(u, v, BracketMethod::cochain);
                };
                CohClass j = class_scale(sign(dx, dz), br(br(x, y), z));
                j = class_add(j, class_scale(sign(dy, dx), br(br(y, z), x)));
                j = class_add(j, class_scale(sign(dz, dy), br(br(z, x), y)));
                CHECK(j.is_zero());
                ++triples;
            }
    CHECK(triples >= 50);
}

TEST_CASE("BV obstruction reports") {
    for (int m : {3, 4}) {
        for (const Ring& ring : {Ring::Q(), Ring::fp(2)}) {
            BvReport r = bv_obstruction(m, ring);
            CHECK(r.witness_cup_zero);
            CHECK(r.all_cups_vanish);
            CHECK(r.all_cups_bar_certified);
            CHECK(r.bracket_witness_nonzero);
            CHECK(r.obstruction_holds);
            CHECK(r.pairs_checked >= 80);
        }
    }
}

TEST_CASE("m = 2 product and bracket tables") {
    // [f_i, g_j] = i f_{i+j-1} for odd j, via both methods.
    CohClass f2 = cls(2, Symbol::f(2));
    CohClass g3 = cls(2, Symbol::g(3));
    CohClass expect = cls(2, Symbol::f(4), 2);
    CHECK(gerstenhaber_bracket(f2, g3, BracketMethod::closed_form) == expect);
    CHECK(gerstenhaber_bracket(f2, g3, BracketMethod::cochain) == expect);
    // [g_1, g_0] = g_0.
    CHECK(gerstenhaber_bracket(cls(2, Symbol::g(1)), cls(2, Symbol::g(0)),
                               BracketMethod::cochain) == cls(2, Symbol::g(0)));
    // Products: f_2 cup g_1 = g_3 over Z; g cup g = 0.
    CHECK(cup(f2, cls(2, Symbol::g(1)), Ring::Z()) == cls(2, Symbol::g(3)));
    CHECK(cup(cls(2, Symbol::g(1)), cls(2, Symbol::g(2)), Ring::Z()).is_zero());
    // Grammar guards.
    CHECK_THROWS_AS(gerstenhaber_bracket(f2, cls(3, A(1, {})), BracketMethod::cochain),
                    UnsupportedPair);
    CHECK_THROWS_AS(gerstenhaber_bracket(cls(2, A(1, {})), f2, BracketMethod::cochain),
                    UnsupportedPair);
    CHECK_THROWS_AS(reduce_to_basis(3, cls(3, Symbol::f(1))), UnsupportedPair);
}

TEST_CASE("n2 theory across rings") {
    // Integral groups: Z^2, then Z (+) Z/2 in even degrees, Z in odd.
    N2Report z = n2_theory(Ring::Z(), 8);
    CHECK(z.pass);
    CHECK(z.groups[0] == exactla::finab_from_cyclics(2, {}));
    CHECK(z.groups[2] == exactla::finab_from_cyclics(1, {2}));
    CHECK(z.groups[5] == exactla::finab_from_cyclics(1, {}));
    CHECK_FALSE(z.bv_family_checked);

    // Z/4: odd degrees give Z/4 (+) Z/2.
    N2Report z4 = n2_theory(Ring::zmod(4), 6);
    CHECK(z4.pass);
    CHECK(z4.groups[3].free_rank == 1);  // one factor of full order 4
    CHECK(z4.groups[3].torsion == std::vector<long long>{2});

    // F2: every degree has dimension two; the BV family Delta_{c,c'} works.
    N2Report f2 = n2_theory(Ring::fp(2), 6);
    CHECK(f2.pass);
    for (int n = 0; n <= 6; ++n) CHECK(f2.groups[n].free_rank == 2);
    CHECK(f2.bv_family_checked);
    CHECK(f2.bv_ok);
    CHECK(f2.delta_squared_zero);

    // F3 and Q: the Delta_c family.
    N2Report f3 = n2_theory(Ring::fp(3), 6);
    CHECK(f3.pass);
    CHECK(f3.bv_ok);
    N2Report qq = n2_theory(Ring::Q(), 6);
    CHECK(qq.pass);
    CHECK(qq.bv_ok);

    CHECK_THROWS_AS(n2_theory(Ring::zmod(1), 4), exactla::UnsupportedRing);
}

TEST_CASE("symbol text round trip") {
    for (const Symbol& s : {Symbol::one(), A(2, {2, 1}), D({}), D({3, 1}), Symbol::f(3),
                            Symbol::g(0)}) {
        CHECK(parse_symbol(to_string(s)) == s);
    }
    CHECK(parse_symbol("a(1,[])") == A(1, {}));
    CHECK(parse_symbol(" d( [ 2 , 1 ] ) ") == D({2, 1}));
    CHECK_THROWS_AS(parse_symbol("q(1)"), InvalidIndex);
    CHECK_THROWS_AS(parse_symbol("a(1)"), InvalidIndex);
}

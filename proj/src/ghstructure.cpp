#include "ghstructure.hpp"

#include "homology.hpp"
#include "specseq.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <tuple>
#include <utility>
#include <vector>

namespace ghstructure {

using bimod::Label;
using exactla::Ring;
using exactla::Trip;
using qma::Word;

namespace {

long long parity_sign(long long exponent) { return (exponent % 2 + 2) % 2 == 0 ? 1 : -1; }

const qma::Algebra& dual_algebra(int m) {
    static std::map<int, qma::Algebra> cache;
    auto it = cache.find(m);
    if (it == cache.end()) it = cache.emplace(m, qma::quadratic_dual(qma::nm_algebra(m))).first;
    return it->second;
}

bool letters_in_range(int m, const Word& w) {
    for (int a : w)
        if (a < 1 || a > m - 1) return false;
    return true;
}

bool admissible(int m, const Word& w) {
    return letters_in_range(m, w) && qma::is_admissible(dual_algebra(m), w);
}

void check_word(int m, const Word& w, const char* name) {
    if (!letters_in_range(m, w))
        throw InvalidIndex(std::string(name) + ": letters must lie in [1, m-1]");
    if (!qma::is_admissible(dual_algebra(m), w))
        throw InvalidIndex(std::string(name) + ": word is not admissible");
}

std::vector<Label> word_tuple(const Word& w) {
    std::vector<Label> tuple;
    tuple.reserve(w.size());
    for (int a : w) tuple.push_back(Label::unit(a, a + 1));
    return tuple;
}

// Product of two N-basis labels; nullopt when zero.
std::optional<Label> label_mul(const Label& x, const Label& y) {
    if (x.kind == Label::Kind::identity) return y;
    if (y.kind == Label::Kind::identity) return x;
    if (x.j != y.i) return std::nullopt;
    return Label::unit(x.i, y.j);
}

std::vector<Label> nbar_labels(int m) {
    std::vector<Label> out;
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) out.push_back(Label::unit(i, j));
    return out;
}

void add_term(SparseCochain& f, const std::vector<Label>& tuple, const Label& value,
              long long c) {
    if (c == 0) return;
    auto& row = f.terms[tuple];
    long long& entry = row[value];
    entry += c;
    if (entry == 0) {
        row.erase(value);
        if (row.empty()) f.terms.erase(tuple);
    }
}

Word concat(const Word& a, const Word& b) {
    Word out = a;
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

// Replaces letter k (1-based) of J by the word W.
Word splice(const Word& J, int k, const Word& W) {
    Word out(J.begin(), J.begin() + (k - 1));
    out.insert(out.end(), W.begin(), W.end());
    out.insert(out.end(), J.begin() + k, J.end());
    return out;
}

// 1-based positions of letter r in J.
std::vector<int> positions(const Word& J, int r) {
    std::vector<int> out;
    for (int k = 1; k <= static_cast<int>(J.size()); ++k)
        if (J[k - 1] == r) out.push_back(k);
    return out;
}

int term_weight(const std::vector<Label>& tuple, const Label& value) {
    int s = 0;
    for (const Label& u : tuple) s += bimod::homdeg(u);
    return s - bimod::homdeg(value);
}

// ---------------------------------------------------------------------------
// Incremental echelon elimination over a field, with combination tracking.

struct QOps {
    using value = mpq_class;
    static value from(long long v) { return mpq_class(static_cast<long>(v)); }
    static bool is_zero(const value& v) { return sgn(v) == 0; }
    static value inv(const value& v) { return 1 / v; }
};

struct FpOps {
    long long p = 0;
    using value = long long;
    value from(long long v) const { return (v % p + p) % p; }
    bool is_zero(value v) const { return v % p == 0; }
    value inv(value a) const {
        // extended gcd; p prime and a nonzero mod p.
        long long t = 0, nt = 1, r = p, nr = a % p;
        while (nr != 0) {
            long long q = r / nr;
            t -= q * nt;
            std::swap(t, nt);
            r -= q * nr;
            std::swap(r, nr);
        }
        return (t % p + p) % p;
    }
};

template <class Ops>
struct Eliminator {
    using V = typename Ops::value;
    Ops ops;
    struct Pivot {
        long row;
        std::map<long, V> col;    // leading entry normalized to 1
        std::map<long, V> combo;  // column ids with sum(combo * original) == col
    };
    std::vector<Pivot> pivots;
    std::map<long, int> pivot_by_row;

    explicit Eliminator(Ops o = Ops{}) : ops(o) {}

    void set_entry(std::map<long, V>& vec, long row, const V& v) const {
        if (ops.is_zero(v))
            vec.erase(row);
        else
            vec[row] = v;
    }

    // vec -= f * other
    void axpy(std::map<long, V>& vec, const V& f, const std::map<long, V>& other) const {
        for (const auto& [row, v] : other) {
            auto it = vec.find(row);
            V next = (it == vec.end() ? V{} : it->second) - f * v;
            set_entry(vec, row, next);
        }
    }

    // Reduces vec by the pivots; acc collects the used pivot combinations, so
    // that vec_in == vec_out + sum_id acc[id] * original_column_id.
    void reduce(std::map<long, V>& vec, std::map<long, V>& acc) const {
        auto it = vec.begin();
        while (it != vec.end()) {
            const long row = it->first;
            auto piv = pivot_by_row.find(row);
            if (piv == pivot_by_row.end()) {
                ++it;
                continue;
            }
            const V f = it->second;
            const Pivot& pv = pivots[piv->second];
            axpy(vec, f, pv.col);  // clears this row; touches only rows >= it
            for (const auto& [id, v] : pv.combo) {
                auto ct = acc.find(id);
                V next = (ct == acc.end() ? V{} : ct->second) + f * v;
                set_entry(acc, id, next);
            }
            it = vec.upper_bound(row);
        }
    }

    void add_column(long id, std::map<long, V> col) {
        std::map<long, V> acc;
        reduce(col, acc);
        if (col.empty()) return;  // dependent column
        std::map<long, V> combo;
        set_entry(combo, id, ops.from(1));
        for (const auto& [cid, v] : acc) {
            auto ct = combo.find(cid);
            V next = (ct == combo.end() ? V{} : ct->second) - v;
            set_entry(combo, cid, next);
        }
        const long prow = col.begin()->first;
        const V inv = ops.inv(col.begin()->second);
        for (auto& [r, v] : col) v = v * inv;
        for (auto& [r, v] : combo) v = v * inv;
        pivot_by_row[prow] = static_cast<int>(pivots.size());
        pivots.push_back(Pivot{prow, std::move(col), std::move(combo)});
    }

    // Combination of added columns equal to b, or nullopt.
    std::optional<std::map<long, V>> solve(std::map<long, V> b) const {
        std::map<long, V> acc;
        reduce(b, acc);
        if (!b.empty()) return std::nullopt;
        return acc;
    }
};

}  // namespace

// ---------------------------------------------------------------------------
// Sparse cochain arithmetic.

SparseCochain cochain_add(const SparseCochain& a, const SparseCochain& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.m != b.m || a.degree != b.degree)
        throw InvalidIndex("cochain_add: mismatched m or degree");
    SparseCochain out = a;
    for (const auto& [tuple, row] : b.terms)
        for (const auto& [v, c] : row) add_term(out, tuple, v, c);
    return out;
}

SparseCochain cochain_scale(long long c, SparseCochain a) {
    if (c == 0) return SparseCochain{a.m, a.degree, {}};
    for (auto& [tuple, row] : a.terms)
        for (auto& [v, e] : row) e *= c;
    return a;
}

std::map<Label, long long> evaluate(const SparseCochain& f, const std::vector<Label>& args) {
    if (static_cast<int>(args.size()) != f.degree)
        throw InvalidIndex("evaluate: argument count must equal the degree");
    auto it = f.terms.find(args);
    if (it == f.terms.end()) return {};
    return it->second;
}

SparseCochain bar_coboundary(const SparseCochain& f) {
    SparseCochain out{f.m, f.degree + 1, {}};
    const auto nbar = nbar_labels(f.m);
    const int p = f.degree;
    for (const auto& [tuple, row] : f.terms) {
        for (const auto& [v, c] : row) {
            for (const Label& b : nbar) {  // a_1 f(a_2, ..., a_{p+1})
                if (auto pv = label_mul(b, v)) {
                    std::vector<Label> lt;
                    lt.reserve(tuple.size() + 1);
                    lt.push_back(b);
                    lt.insert(lt.end(), tuple.begin(), tuple.end());
                    add_term(out, lt, *pv, c);
                }
            }
            for (int k = 1; k <= p; ++k) {  // (-1)^k f(..., a_k a_{k+1}, ...)
                const Label& u = tuple[k - 1];
                for (int t = u.i + 1; t < u.j; ++t) {
                    std::vector<Label> st;
                    st.reserve(tuple.size() + 1);
                    st.insert(st.end(), tuple.begin(), tuple.begin() + (k - 1));
                    st.push_back(Label::unit(u.i, t));
                    st.push_back(Label::unit(t, u.j));
                    st.insert(st.end(), tuple.begin() + k, tuple.end());
                    add_term(out, st, v, parity_sign(k) * c);
                }
            }
            for (const Label& b : nbar) {  // (-1)^{p+1} f(a_1, ..., a_p) a_{p+1}
                if (auto pv = label_mul(v, b)) {
                    std::vector<Label> rt = tuple;
                    rt.push_back(b);
                    add_term(out, rt, *pv, parity_sign(p + 1) * c);
                }
            }
        }
    }
    return out;
}

SparseCochain cochain_cup(const SparseCochain& x, const SparseCochain& y) {
    if (x.m != y.m) throw UnsupportedPair("cochain_cup: mismatched m");
    SparseCochain out{x.m, x.degree + y.degree, {}};
    for (const auto& [tx, rowx] : x.terms)
        for (const auto& [vx, cx] : rowx)
            for (const auto& [ty, rowy] : y.terms)
                for (const auto& [vy, cy] : rowy) {
                    auto pv = label_mul(vx, vy);
                    if (!pv) continue;
                    std::vector<Label> tuple = tx;
                    tuple.insert(tuple.end(), ty.begin(), ty.end());
                    add_term(out, tuple, *pv, cx * cy);
                }
    return out;
}

SparseCochain circle_product(const SparseCochain& x, const SparseCochain& y) {
    if (x.m != y.m) throw UnsupportedPair("circle_product: mismatched m");
    const int px = x.degree, py = y.degree;
    SparseCochain out{x.m, std::max(px + py - 1, 0), {}};
    for (const auto& [tx, rowx] : x.terms)
        for (const auto& [vx, cx] : rowx)
            for (int k = 1; k <= px; ++k) {
                const long long sign = parity_sign(static_cast<long long>(k - 1) * (py - 1));
                for (const auto& [ty, rowy] : y.terms) {
                    auto hit = rowy.find(tx[k - 1]);
                    if (hit == rowy.end()) continue;
                    std::vector<Label> tuple;
                    tuple.reserve(tx.size() + ty.size() - 1);
                    tuple.insert(tuple.end(), tx.begin(), tx.begin() + (k - 1));
                    tuple.insert(tuple.end(), ty.begin(), ty.end());
                    tuple.insert(tuple.end(), tx.begin() + k, tx.end());
                    add_term(out, tuple, vx, cx * hit->second * sign);
                }
            }
    return out;
}

// ---------------------------------------------------------------------------
// Symbols and classes.

Symbol Symbol::one() { return Symbol{}; }

Symbol Symbol::a(int i, Word I) {
    Symbol s;
    s.kind = SymbolKind::a;
    s.i = i;
    s.word = std::move(I);
    return s;
}

Symbol Symbol::d(Word J) {
    Symbol s;
    s.kind = SymbolKind::d;
    s.word = std::move(J);
    return s;
}

Symbol Symbol::f(int p) {
    Symbol s;
    s.kind = SymbolKind::f;
    s.p = p;
    return s;
}

Symbol Symbol::g(int p) {
    Symbol s;
    s.kind = SymbolKind::g;
    s.p = p;
    return s;
}

int symbol_degree(const Symbol& s) {
    switch (s.kind) {
        case SymbolKind::one: return 0;
        case SymbolKind::a: return static_cast<int>(s.word.size()) + 1;
        case SymbolKind::d: return static_cast<int>(s.word.size());
        case SymbolKind::f:
        case SymbolKind::g: return s.p;
    }
    return 0;
}

namespace {

std::string word_text(const Word& w) {
    std::string out = "[";
    for (size_t k = 0; k < w.size(); ++k) {
        if (k) out += ",";
        out += std::to_string(w[k]);
    }
    return out + "]";
}

}  // namespace

std::string to_string(const Symbol& s) {
    switch (s.kind) {
        case SymbolKind::one: return "1";
        case SymbolKind::a:
            return "a(" + std::to_string(s.i) + "," + word_text(s.word) + ")";
        case SymbolKind::d: return "d(" + word_text(s.word) + ")";
        case SymbolKind::f: return "f(" + std::to_string(s.p) + ")";
        case SymbolKind::g: return "g(" + std::to_string(s.p) + ")";
    }
    return "1";
}

Symbol parse_symbol(const std::string& text) {
    std::string t;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t == "1") return Symbol::one();
    auto parse_word = [](const std::string& body) {
        if (body.size() < 2 || body.front() != '[' || body.back() != ']')
            throw InvalidIndex("parse_symbol: expected a [..] word");
        Word w;
        std::string inner = body.substr(1, body.size() - 2);
        if (inner.empty()) return w;
        std::stringstream ss(inner);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            if (piece.empty()) throw InvalidIndex("parse_symbol: empty word letter");
            w.push_back(std::stoi(piece));
        }
        return w;
    };
    if (t.size() < 4 || t[1] != '(' || t.back() != ')')
        throw InvalidIndex("parse_symbol: unrecognized symbol '" + text + "'");
    std::string body = t.substr(2, t.size() - 3);
    switch (t[0]) {
        case 'a': {
            auto comma = body.find(',');
            if (comma == std::string::npos)
                throw InvalidIndex("parse_symbol: a-symbol needs an index and a word");
            return Symbol::a(std::stoi(body.substr(0, comma)),
                             parse_word(body.substr(comma + 1)));
        }
        case 'd': return Symbol::d(parse_word(body));
        case 'f': return Symbol::f(std::stoi(body));
        case 'g': return Symbol::g(std::stoi(body));
        default: throw InvalidIndex("parse_symbol: unrecognized symbol '" + text + "'");
    }
}

CohClass class_of(int m, const Symbol& s, long long c) {
    CohClass out;
    out.m = m;
    if (c != 0) out.coeff[s] = c;
    return out;
}

CohClass class_add(const CohClass& a, const CohClass& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.m != b.m) throw UnsupportedPair("class_add: mismatched m");
    CohClass out = a;
    for (const auto& [s, c] : b.coeff) {
        long long& e = out.coeff[s];
        e += c;
        if (e == 0) out.coeff.erase(s);
    }
    return out;
}

CohClass class_scale(long long c, CohClass a) {
    if (c == 0) return CohClass{a.m, {}};
    for (auto& [s, e] : a.coeff) e *= c;
    return a;
}

CohClass class_normalize(CohClass a, const Ring& ring) {
    if (ring.kind != Ring::Kind::Fp && ring.kind != Ring::Kind::Zmod) return a;
    const long long n = ring.mod;
    for (auto it = a.coeff.begin(); it != a.coeff.end();) {
        it->second = (it->second % n + n) % n;
        it = it->second == 0 ? a.coeff.erase(it) : std::next(it);
    }
    return a;
}

std::string to_string(const CohClass& a) {
    if (a.is_zero()) return "0";
    std::string out;
    for (const auto& [s, c] : a.coeff) {
        if (!out.empty()) out += c >= 0 ? " + " : " - ";
        else if (c < 0) out += "-";
        long long mag = c < 0 ? -c : c;
        if (mag != 1) out += std::to_string(mag) + "*";
        out += to_string(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Canonical cocycles.

SparseCochain cocycle_a(int m, int i, const Word& I) {
    if (m < 3) throw InvalidIndex("cocycle_a: requires m >= 3");
    if (i < 1 || i > m) throw InvalidIndex("cocycle_a: index i must lie in [1, m]");
    check_word(m, I, "cocycle_a");
    SparseCochain f{m, static_cast<int>(I.size()) + 1, {}};
    const auto base = word_tuple(I);
    for (int k = 1; k < i; ++k) {
        std::vector<Label> tuple;
        tuple.reserve(base.size() + 1);
        tuple.push_back(Label::unit(k, i));
        tuple.insert(tuple.end(), base.begin(), base.end());
        add_term(f, tuple, Label::unit(k, i), 1);
    }
    const long long tail = -parity_sign(static_cast<long long>(I.size()));
    for (int k = i + 1; k <= m; ++k) {
        std::vector<Label> tuple = base;
        tuple.push_back(Label::unit(i, k));
        add_term(f, tuple, Label::unit(i, k), tail);
    }
    return f;
}

SparseCochain cocycle_d(int m, const Word& J) {
    if (m < 2) throw InvalidIndex("cocycle_d: requires m >= 2");
    check_word(m, J, "cocycle_d");
    SparseCochain f{m, static_cast<int>(J.size()), {}};
    add_term(f, word_tuple(J), Label::unit(1, m), 1);
    return f;
}

SparseCochain unit_cochain(int m) {
    SparseCochain f{m, 0, {}};
    add_term(f, {}, Label::id(), 1);
    return f;
}

SparseCochain cochain_of(const CohClass& x) {
    if (x.is_zero()) return SparseCochain{x.m, 0, {}};
    SparseCochain out{x.m, symbol_degree(x.coeff.begin()->first), {}};
    for (const auto& [s, c] : x.coeff) {
        if (symbol_degree(s) != out.degree)
            throw InvalidIndex("cochain_of: mixed degrees have no single cochain");
        SparseCochain piece;
        switch (s.kind) {
            case SymbolKind::one: piece = unit_cochain(x.m); break;
            case SymbolKind::a: piece = cocycle_a(x.m, s.i, s.word); break;
            case SymbolKind::d: piece = cocycle_d(x.m, s.word); break;
            default:
                throw UnsupportedPair("cochain_of: f/g symbols have no m >= 3 cochain");
        }
        out = cochain_add(out, cochain_scale(c, piece));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Class identification: solve E1 block readouts against basis representatives
// plus d1 images.  Solvers are cached per (m, homdeg, q).

namespace {

struct IdSolver {
    std::vector<Symbol> basis;
    Eliminator<QOps> elim;
};

std::map<long, mpq_class> trip_rhs(const specseq::SparseVec& v) {
    std::map<long, mpq_class> out;
    for (const auto& [row, c] : v) out[row] += QOps::from(c);
    for (auto it = out.begin(); it != out.end();)
        it = sgn(it->second) == 0 ? out.erase(it) : std::next(it);
    return out;
}

const IdSolver& id_solver(int m, int h, int q) {
    static std::map<std::tuple<int, int, int>, IdSolver> cache;
    auto key = std::make_tuple(m, h, q);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    IdSolver solver;
    const int n = h + q;
    if (h == 1) {
        if (q == 0) {
            for (int i = 1; i <= m - 1; ++i) solver.basis.push_back(Symbol::a(i, {}));
        } else {
            for (const auto& t : specseq::t_plus(m, q))
                solver.basis.push_back(Symbol::a(t.i, t.I));
        }
        long id = 0;
        for (const auto& sym : solver.basis)
            solver.elim.add_column(id++, trip_rhs(specseq::a_class_rep(m, sym.i, sym.word)));
    } else if (h == m - 1) {
        const auto corners = specseq::top_corner_basis(m, n);
        const auto& table = qma::word_table(m, n);
        long id = 0;
        for (const auto& w : corners) {
            solver.basis.push_back(Symbol::d(w));
            long widx = table.index_of(qma::pack_word(w));
            solver.elim.add_column(id++, {{widx, QOps::from(1)}});
        }
    }
    const long base = static_cast<long>(solver.basis.size());
    std::map<long, std::map<long, mpq_class>> image;
    for (const auto& t : specseq::closed_d1_block(m, specseq::Target::N, h - 1, q))
        image[t.c][t.r] += QOps::from(t.v);
    for (auto& [c, col] : image) {
        for (auto cit = col.begin(); cit != col.end();)
            cit = sgn(cit->second) == 0 ? col.erase(cit) : std::next(cit);
        solver.elim.add_column(base + c, std::move(col));
    }
    return cache.emplace(key, std::move(solver)).first->second;
}

// Basis-symbol combination for a block-(h, q) vector; nullopt when the vector
// fails to lie in span(basis) + im d1, and NotACocycle on non-integral
// coordinates.
std::optional<std::map<Symbol, long long>> solve_block(int m, int h, int q,
                                                       const std::map<long, long long>& vec) {
    const IdSolver& solver = id_solver(m, h, q);
    std::map<long, mpq_class> rhs;
    for (const auto& [row, c] : vec)
        if (c != 0) rhs[row] = QOps::from(c);
    auto combo = solver.elim.solve(std::move(rhs));
    if (!combo) return std::nullopt;
    std::map<Symbol, long long> out;
    for (const auto& [id, v] : *combo) {
        if (id >= static_cast<long>(solver.basis.size())) continue;
        if (sgn(v) == 0) continue;
        if (v.get_den() != 1)
            throw NotACocycle("class identification produced a non-integral coordinate");
        out[solver.basis[id]] = v.get_num().get_si();
    }
    return out;
}

}  // namespace

CohClass identify_class(int m, const SparseCochain& f) {
    if (m < 3) throw InvalidIndex("identify_class: requires m >= 3");
    if (f.m != m) throw InvalidIndex("identify_class: mismatched m");
    if (!bar_coboundary(f).is_zero())
        throw NotACocycle("identify_class: the coboundary is nonzero");
    CohClass out;
    out.m = m;
    const int n = f.degree;
    if (n == 0) {
        auto it = f.terms.find({});
        if (it != f.terms.end())
            for (const auto& [v, c] : it->second) {
                if (v.kind == Label::Kind::identity)
                    out = class_add(out, class_of(m, Symbol::one(), c));
                else if (v.i == 1 && v.j == m)
                    out = class_add(out, class_of(m, Symbol::d({}), c));
                else
                    throw NotACocycle("identify_class: a degree-0 value is not central");
            }
        return out;
    }
    // Readout per value homdeg h: coordinates in the Koszul block (h, n-h),
    // indexed word * label_count + label_position.
    const auto& table = qma::word_table(m, n);
    std::map<int, std::map<long, long long>> buckets;
    std::map<int, std::vector<Label>> labels;
    for (int h = 0; h <= m - 1; ++h)
        labels[h] = specseq::gr_label_list(m, specseq::Target::N, h);
    for (long widx = 0; widx < table.size(); ++widx) {
        const auto args = word_tuple(table.word_at(widx));
        auto vals = f.terms.find(args);
        if (vals == f.terms.end()) continue;
        for (const auto& [v, c] : vals->second) {
            const int h = bimod::homdeg(v);
            const auto& ll = labels[h];
            const long pos = std::find(ll.begin(), ll.end(), v) - ll.begin();
            if (pos == static_cast<long>(ll.size()))
                throw NotACocycle("identify_class: value outside the graded basis");
            buckets[h][widx * static_cast<long>(ll.size()) + pos] += c;
        }
    }
    for (auto& [h, vec] : buckets) {
        for (auto it = vec.begin(); it != vec.end();)
            it = it->second == 0 ? vec.erase(it) : std::next(it);
        if (vec.empty()) continue;
        if (h == 0)
            throw NotACocycle("identify_class: nonzero filtration-0 readout");
        auto combo = solve_block(m, h, n - h, vec);
        if (!combo)
            throw NotACocycle("identify_class: readout escapes basis + coboundaries");
        for (const auto& [sym, c] : *combo) out = class_add(out, class_of(m, sym, c));
    }
    return out;
}

CohClass reduce_to_basis(int m, const CohClass& raw) {
    if (raw.m != m) throw InvalidIndex("reduce_to_basis: mismatched m");
    if (m < 3) {
        for (const auto& [s, c] : raw.coeff)
            if (s.kind == SymbolKind::a || s.kind == SymbolKind::d)
                throw UnsupportedPair("reduce_to_basis: a/d symbols require m >= 3");
        return raw;
    }
    CohClass out;
    out.m = m;
    // A-symbols per word length: accumulate block vectors, one solve per q.
    std::map<int, std::map<long, long long>> avec;
    for (const auto& [s, c] : raw.coeff) {
        switch (s.kind) {
            case SymbolKind::one:
                out = class_add(out, class_of(m, s, c));
                break;
            case SymbolKind::d: {
                if (!letters_in_range(m, s.word))
                    throw InvalidIndex("reduce_to_basis: d-letters must lie in [1, m-1]");
                if (!admissible(m, s.word)) break;  // zero class
                if (!s.word.empty() &&
                    (s.word.front() == 1 || s.word.back() == m - 1))
                    break;  // coboundary
                out = class_add(out, class_of(m, s, c));
                break;
            }
            case SymbolKind::a: {
                if (s.i < 1 || s.i > m)
                    throw InvalidIndex("reduce_to_basis: a-index must lie in [1, m]");
                if (!letters_in_range(m, s.word))
                    throw InvalidIndex("reduce_to_basis: a-letters must lie in [1, m-1]");
                if (!admissible(m, s.word)) break;  // zero class
                for (const auto& [row, v] :
                     specseq::a_class_rep(m, s.i, s.word))
                    avec[static_cast<int>(s.word.size())][row] += c * v;
                break;
            }
            default:
                throw UnsupportedPair("reduce_to_basis: f/g symbols require m = 2");
        }
    }
    for (auto& [q, vec] : avec) {
        auto combo = solve_block(m, 1, q, vec);
        if (!combo)
            throw NotACocycle("reduce_to_basis: representative escapes basis + coboundaries");
        for (const auto& [sym, c] : *combo) out = class_add(out, class_of(m, sym, c));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Bar-complex certification: solve dh = cup inside weight blocks.

namespace {

struct BarIndex {
    std::map<std::pair<std::uint64_t, long>, std::pair<int, long>> rows;  // (packed, label) -> (s, row)
};

const homology::BarCochainComplex& cached_bar(int m, int max_degree) {
    static std::map<int, homology::BarCochainComplex> cache;
    auto it = cache.find(m);
    if (it == cache.end() || it->second.max_degree < max_degree) {
        homology::BarCochainComplex cx = homology::bar_complex(
            m, bimod::standard_bimodule(m, bimod::Which::N), max_degree);
        it = cache.insert_or_assign(m, std::move(cx)).first;
    }
    return it->second;
}

BarIndex bar_row_index(const homology::BarCochainComplex& cx, int n) {
    BarIndex idx;
    for (const auto& [s, per_degree] : cx.block_basis) {
        if (n >= static_cast<int>(per_degree.size())) continue;
        const auto& rows = per_degree[n];
        for (long r = 0; r < static_cast<long>(rows.size()); ++r)
            idx.rows[rows[r]] = {s, r};
    }
    return idx;
}

template <class Ops>
bool certify_zero_with(const homology::BarCochainComplex& cx, int n,
                       const SparseCochain& cup, Ops ops) {
    // Map each term to its (s, row); group right-hand sides per weight.
    std::map<std::pair<int, int>, long> nbar_index;
    for (long k = 0; k < static_cast<long>(cx.nbar.size()); ++k)
        nbar_index[cx.nbar[k]] = k;
    BarIndex idx = bar_row_index(cx, n);
    std::map<int, std::map<long, typename Ops::value>> rhs;
    for (const auto& [tuple, row] : cup.terms)
        for (const auto& [v, c] : row) {
            std::vector<int> factors;
            factors.reserve(tuple.size());
            for (const Label& u : tuple) factors.push_back(static_cast<int>(nbar_index.at({u.i, u.j})));
            const std::uint64_t packed = homology::pack_tuple(factors);
            const long label = cx.coeff.index_of(v);
            auto hit = idx.rows.find({packed, label});
            if (hit == idx.rows.end()) return false;
            auto& vec = rhs[hit->second.first];
            auto val = ops.from(c);
            auto vit = vec.find(hit->second.second);
            typename Ops::value next = (vit == vec.end() ? typename Ops::value{} : vit->second) + val;
            if (ops.is_zero(next))
                vec.erase(hit->second.second);
            else
                vec[hit->second.second] = next;
        }
    for (auto& [s, vec] : rhs) {
        if (vec.empty()) continue;
        auto cit = cx.columns.find(s);
        if (cit == cx.columns.end()) return false;
        if (n - 1 >= static_cast<int>(cit->second.d.size())) return false;
        Eliminator<Ops> elim(ops);
        std::map<long, std::map<long, typename Ops::value>> cols;
        for (const auto& t : cit->second.d[n - 1]) {
            auto val = ops.from(t.v);
            if (ops.is_zero(val)) continue;
            auto& col = cols[t.c];
            auto vit = col.find(t.r);
            typename Ops::value next = (vit == col.end() ? typename Ops::value{} : vit->second) + val;
            if (ops.is_zero(next))
                col.erase(t.r);
            else
                col[t.r] = next;
        }
        long id = 0;
        for (auto& [c, col] : cols) elim.add_column(id++, std::move(col));
        if (!elim.solve(std::move(vec))) return false;
    }
    return true;
}

// True when an explicit primitive h with dh = cup exists in the reduced bar
// complex over the certification field.
bool bar_certify_zero(int m, int n, const SparseCochain& cup, const Ring& ring,
                      bool& budget_ok) {
    budget_ok = true;
    if (cup.is_zero()) return true;
    if (n < 1) return false;
    try {
        const auto& cx = cached_bar(m, n);
        if (ring.kind == Ring::Kind::Fp)
            return certify_zero_with(cx, n, cup, FpOps{ring.mod});
        return certify_zero_with(cx, n, cup, QOps{});
    } catch (const homology::DimensionBudgetExceeded&) {
        budget_ok = false;
        return false;
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// m = 2 class algebra: integer f/g vectors per degree.

namespace {

// (f-coefficient, g-coefficient) per cohomological degree.
using M2Vec = std::map<int, std::pair<long long, long long>>;

M2Vec m2_from_class(const CohClass& x) {
    M2Vec out;
    for (const auto& [s, c] : x.coeff) {
        switch (s.kind) {
            case SymbolKind::one: out[0].first += c; break;
            case SymbolKind::f: out[s.p].first += c; break;
            case SymbolKind::g: out[s.p].second += c; break;
            default:
                throw UnsupportedPair("m = 2 classes use the f/g symbols");
        }
    }
    return out;
}

CohClass m2_to_class(const M2Vec& v) {
    CohClass out;
    out.m = 2;
    for (const auto& [p, fg] : v) {
        if (fg.first != 0)
            out.coeff[p == 0 ? Symbol::one() : Symbol::f(p)] = fg.first;
        if (fg.second != 0) out.coeff[Symbol::g(p)] = fg.second;
    }
    return out;
}

// Alternating-sign slot sum for the circle product of degrees (pf, pg).
long long m2_slot_sum(int pf, int pg) {
    long long s = 0;
    for (int k = 1; k <= pf; ++k) s += parity_sign(static_cast<long long>(k - 1) * (pg - 1));
    return s;
}

// x o y per degree pair: inserting y keeps only its g-part, scaling x.
M2Vec m2_circle(const M2Vec& x, const M2Vec& y) {
    M2Vec out;
    for (const auto& [px, fgx] : x)
        for (const auto& [py, fgy] : y) {
            const long long c = m2_slot_sum(px, py) * fgy.second;
            if (c == 0) continue;
            auto& slot = out[px + py - 1];
            slot.first += c * fgx.first;
            slot.second += c * fgx.second;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second.first == 0 && it->second.second == 0) ? out.erase(it)
                                                               : std::next(it);
    return out;
}

M2Vec m2_bracket(const M2Vec& x, const M2Vec& y) {
    M2Vec out;
    for (const auto& [px, fgx] : x)
        for (const auto& [py, fgy] : y) {
            M2Vec xs{{px, fgx}}, ys{{py, fgy}};
            M2Vec fwd = m2_circle(xs, ys), bwd = m2_circle(ys, xs);
            const long long sign =
                -parity_sign(static_cast<long long>(px - 1) * (py - 1));
            for (const auto& [p, fg] : fwd) {
                out[p].first += fg.first;
                out[p].second += fg.second;
            }
            for (const auto& [p, fg] : bwd) {
                out[p].first += sign * fg.first;
                out[p].second += sign * fg.second;
            }
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second.first == 0 && it->second.second == 0) ? out.erase(it)
                                                               : std::next(it);
    return out;
}

M2Vec m2_cup(const M2Vec& x, const M2Vec& y) {
    M2Vec out;
    for (const auto& [px, fgx] : x)
        for (const auto& [py, fgy] : y) {
            auto& slot = out[px + py];
            slot.first += fgx.first * fgy.first;
            slot.second += fgx.first * fgy.second + fgx.second * fgy.first;
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second.first == 0 && it->second.second == 0) ? out.erase(it)
                                                               : std::next(it);
    return out;
}

// Class normalization dictated by the m = 2 groups: over a ring where 2 is a
// unit the odd f and positive even g parts vanish; over Z the f-odd part
// vanishes and even g-parts have order two; in characteristic two everything
// survives modulo two.
M2Vec m2_normalize(M2Vec v, const Ring& ring) {
    for (auto it = v.begin(); it != v.end();) {
        auto& [f, g] = it->second;
        const int p = it->first;
        switch (ring.kind) {
            case Ring::Kind::Q:
                if (p % 2 == 1) f = 0;
                if (p % 2 == 0 && p > 0) g = 0;
                break;
            case Ring::Kind::Fp:
                if (ring.mod == 2) {
                    f = (f % 2 + 2) % 2;
                    g = (g % 2 + 2) % 2;
                } else {
                    f = (p % 2 == 1) ? 0 : (f % ring.mod + ring.mod) % ring.mod;
                    g = (p % 2 == 0 && p > 0) ? 0 : (g % ring.mod + ring.mod) % ring.mod;
                }
                break;
            case Ring::Kind::Z:
                if (p % 2 == 1) f = 0;
                if (p % 2 == 0 && p > 0) g = (g % 2 + 2) % 2;
                break;
            case Ring::Kind::Zmod: {
                const long long n = ring.mod;
                f = (f % n + n) % n;
                g = (g % n + n) % n;
                if (p % 2 == 0 && p > 0) {
                    const long long d = n % 2 == 0 ? 2 : 1;
                    g %= d;
                }
                if (p % 2 == 1 && n % 2 == 1) f = 0;
                break;
            }
        }
        it = (f == 0 && g == 0) ? v.erase(it) : std::next(it);
    }
    return v;
}

}  // namespace

// ---------------------------------------------------------------------------
// Cup products on classes.

CupResult cup_detailed(const CohClass& x, const CohClass& y, const Ring& ring) {
    if (x.m != y.m) throw UnsupportedPair("cup: mismatched m");
    const int m = x.m;
    CupResult res;
    if (m == 2) {
        res.value = class_normalize(
            m2_to_class(m2_normalize(m2_cup(m2_from_class(x), m2_from_class(y)), ring)),
            ring);
        res.certificate =
            res.value.is_zero() ? CupCertificate::bar_solver : CupCertificate::nonzero;
        return res;
    }
    if (m < 3) throw InvalidIndex("cup: requires m >= 2");
    // Group the symbol pairs by total degree; identify one cochain per degree.
    std::map<int, SparseCochain> per_degree;
    for (const auto& [sx, cx] : x.coeff)
        for (const auto& [sy, cy] : y.coeff) {
            SparseCochain piece = cochain_cup(cochain_of(class_of(m, sx)),
                                              cochain_of(class_of(m, sy)));
            const int n = symbol_degree(sx) + symbol_degree(sy);
            piece = cochain_scale(cx * cy, piece);
            auto it = per_degree.find(n);
            if (it == per_degree.end())
                per_degree.emplace(n, std::move(piece));
            else
                it->second = cochain_add(it->second, piece);
        }
    CohClass total;
    total.m = m;
    bool all_bar = true;
    for (const auto& [n, cochain] : per_degree) {
        CohClass cls = identify_class(m, cochain);
        if (class_normalize(cls, ring).is_zero() && !cochain.is_zero()) {
            bool budget_ok = true;
            const Ring field = ring.kind == Ring::Kind::Fp ? ring : Ring::Q();
            if (!bar_certify_zero(m, n, cochain, field, budget_ok)) {
                if (budget_ok)
                    throw NotACocycle("cup: zero class without a primitive");
                all_bar = false;  // budget exceeded; the graded readout stands
            }
        }
        total = class_add(total, cls);
    }
    res.value = class_normalize(total, ring);
    res.certificate = !res.value.is_zero() ? CupCertificate::nonzero
                      : all_bar            ? CupCertificate::bar_solver
                                           : CupCertificate::spectral;
    return res;
}

CohClass cup(const CohClass& x, const CohClass& y, const Ring& ring) {
    return cup_detailed(x, y, ring).value;
}

// ---------------------------------------------------------------------------
// Gerstenhaber bracket.

namespace {

void add_raw(std::map<Symbol, long long>& raw, const Symbol& s, long long c) {
    if (c == 0) return;
    long long& e = raw[s];
    e += c;
    if (e == 0) raw.erase(s);
}

// [d(J), a(i, I)] as formal d-symbols (inadmissible splices dropped).
void closed_d_a(int m, const Word& J, int i, const Word& I, long long scale,
                std::map<Symbol, long long>& raw) {
    const long long qI = static_cast<long long>(I.size());
    const long long qJ = static_cast<long long>(J.size());
    auto addD = [&](Word w, long long c) {
        if (admissible(m, w)) add_raw(raw, Symbol::d(std::move(w)), c);
    };
    if (i == 1) {
        addD(concat(I, J), scale * parity_sign(qI));
        for (int k : positions(J, 1))
            addD(splice(J, k, concat(I, {1})), -scale * parity_sign(k * qI));
    } else if (i < m) {
        for (int k : positions(J, i - 1)) {
            Word w = I;
            w.insert(w.begin(), i - 1);
            addD(splice(J, k, w), scale * parity_sign((k - 1) * qI));
        }
        for (int k : positions(J, i))
            addD(splice(J, k, concat(I, {i})), -scale * parity_sign(k * qI));
    } else {
        for (int k : positions(J, m - 1)) {
            Word w = I;
            w.insert(w.begin(), m - 1);
            addD(splice(J, k, w), scale * parity_sign((k - 1) * qI));
        }
        addD(concat(J, I), -scale * parity_sign(qI * (qJ - 1)));
    }
}

// [a(i, I), a(i', I')] as formal a-symbols.
void closed_a_a(int m, int i, const Word& I, int ip, const Word& Ip, long long scale,
                std::map<Symbol, long long>& raw) {
    const long long qI = static_cast<long long>(I.size());
    const long long qIp = static_cast<long long>(Ip.size());
    auto addA = [&](int row, Word w, long long c) {
        if (admissible(m, w)) add_raw(raw, Symbol::a(row, std::move(w)), c);
    };
    for (int k : positions(I, ip - 1)) {
        Word w = Ip;
        w.insert(w.begin(), ip - 1);
        addA(i, splice(I, k, w), scale * parity_sign(k * qIp));
    }
    for (int k : positions(I, ip))
        addA(i, splice(I, k, concat(Ip, {ip})), -scale * parity_sign((k + 1) * qIp));
    const long long sw = -scale * parity_sign(qI * qIp);
    for (int k : positions(Ip, i - 1)) {
        Word w = I;
        w.insert(w.begin(), i - 1);
        addA(ip, splice(Ip, k, w), sw * parity_sign(k * qI));
    }
    for (int k : positions(Ip, i))
        addA(ip, splice(Ip, k, concat(I, {i})), -sw * parity_sign((k + 1) * qI));
    if (i == ip) {
        addA(i, concat(Ip, I), scale);
        addA(i, concat(I, Ip), -scale * parity_sign(qI * qIp));
    }
}

CohClass bracket_closed(const CohClass& x, const CohClass& y) {
    const int m = x.m;
    std::map<Symbol, long long> raw;
    for (const auto& [sx, cx] : x.coeff)
        for (const auto& [sy, cy] : y.coeff) {
            const long long c = cx * cy;
            if (sx.kind == SymbolKind::one || sy.kind == SymbolKind::one) continue;
            if (sx.kind == SymbolKind::d && sy.kind == SymbolKind::d) continue;
            if (sx.kind == SymbolKind::d && sy.kind == SymbolKind::a) {
                closed_d_a(m, sx.word, sy.i, sy.word, c, raw);
            } else if (sx.kind == SymbolKind::a && sy.kind == SymbolKind::d) {
                // [a, d] = -(-1)^{(|a|-1)(|d|-1)} [d, a]
                const long long flip =
                    -parity_sign(static_cast<long long>(sx.word.size()) *
                                 (static_cast<long long>(sy.word.size()) - 1));
                closed_d_a(m, sy.word, sx.i, sx.word, flip * c, raw);
            } else {
                closed_a_a(m, sx.i, sx.word, sy.i, sy.word, c, raw);
            }
        }
    CohClass formal;
    formal.m = m;
    formal.coeff = std::move(raw);
    return reduce_to_basis(m, formal);
}

CohClass bracket_cochain(const CohClass& x, const CohClass& y) {
    const int m = x.m;
    CohClass out;
    out.m = m;
    for (const auto& [sx, cx] : x.coeff)
        for (const auto& [sy, cy] : y.coeff) {
            if (sx.kind == SymbolKind::one || sy.kind == SymbolKind::one) continue;
            SparseCochain fx = cochain_of(class_of(m, sx));
            SparseCochain fy = cochain_of(class_of(m, sy));
            SparseCochain fwd = circle_product(fx, fy);
            SparseCochain bwd = circle_product(fy, fx);
            const long long sign =
                -parity_sign(static_cast<long long>(symbol_degree(sx) - 1) *
                             (symbol_degree(sy) - 1));
            SparseCochain comm = cochain_add(fwd, cochain_scale(sign, bwd));
            out = class_add(out, class_scale(cx * cy, identify_class(m, comm)));
        }
    return out;
}

void require_m_grammar(const CohClass& x) {
    for (const auto& [s, c] : x.coeff) {
        const bool fg = s.kind == SymbolKind::f || s.kind == SymbolKind::g;
        if (x.m == 2 && s.kind != SymbolKind::one && !fg)
            throw UnsupportedPair("m = 2 classes use the f/g symbols");
        if (x.m >= 3 && fg)
            throw UnsupportedPair("f/g symbols require m = 2");
    }
}

// Parity-table bracket for m = 2, as one closed form per kind pair.
M2Vec m2_bracket_table(const M2Vec& x, const M2Vec& y) {
    M2Vec out;
    auto add = [&](int p, long long f, long long g) {
        if (p < 0 || (f == 0 && g == 0)) return;
        out[p].first += f;
        out[p].second += g;
    };
    for (const auto& [i, fgx] : x)
        for (const auto& [j, fgy] : y) {
            const int p = i + j - 1;
            // [f_i, f_j] = 0.
            // [f_i, g_j]: j odd -> i f; i odd, j even -> f; else 0.
            long long c_fg = (j % 2 == 1) ? i : (i % 2 == 1 ? 1 : 0);
            add(p, fgx.first * fgy.second * c_fg, 0);
            // [g_i, f_j] = -(-1)^{(i-1)(j-1)} [f_j, g_i].
            long long c_gf = (i % 2 == 1) ? j : (j % 2 == 1 ? 1 : 0);
            c_gf *= -parity_sign(static_cast<long long>(i - 1) * (j - 1));
            add(p, fgx.second * fgy.first * c_gf, 0);
            // [g_i, g_j]: both odd -> (i-j) g; i odd, j even -> -(j-1) g;
            // i even, j odd -> (i-1) g; else 0.
            long long c_gg = 0;
            if (i % 2 == 1 && j % 2 == 1) c_gg = i - j;
            else if (i % 2 == 1) c_gg = -(j - 1);
            else if (j % 2 == 1) c_gg = i - 1;
            add(p, 0, fgx.second * fgy.second * c_gg);
        }
    for (auto it = out.begin(); it != out.end();)
        it = (it->second.first == 0 && it->second.second == 0) ? out.erase(it)
                                                               : std::next(it);
    return out;
}

}  // namespace

CohClass gerstenhaber_bracket(const CohClass& x, const CohClass& y, BracketMethod method) {
    if (x.m != y.m) throw UnsupportedPair("gerstenhaber_bracket: mismatched m");
    require_m_grammar(x);
    require_m_grammar(y);
    if (x.m == 2) {
        M2Vec vx = m2_from_class(x), vy = m2_from_class(y);
        return m2_to_class(method == BracketMethod::closed_form ? m2_bracket_table(vx, vy)
                                                                : m2_bracket(vx, vy));
    }
    if (x.m < 3) throw InvalidIndex("gerstenhaber_bracket: requires m >= 2");
    return method == BracketMethod::closed_form ? bracket_closed(x, y)
                                                : bracket_cochain(x, y);
}

std::vector<Symbol> basis_symbols(int m, int max_degree) {
    std::vector<Symbol> out;
    if (m == 2) {
        out.push_back(Symbol::g(0));
        for (int p = 1; p <= max_degree; ++p) {
            out.push_back(Symbol::f(p));
            out.push_back(Symbol::g(p));
        }
        return out;
    }
    if (m < 3) throw InvalidIndex("basis_symbols: requires m >= 2");
    out.push_back(Symbol::d({}));
    for (int deg = 1; deg <= max_degree; ++deg) {
        const int q = deg - 1;
        if (q == 0) {
            for (int i = 1; i <= m - 1; ++i) out.push_back(Symbol::a(i, {}));
        } else {
            for (const auto& t : specseq::t_plus(m, q)) out.push_back(Symbol::a(t.i, t.I));
        }
        for (const auto& w : specseq::top_corner_basis(m, deg))
            out.push_back(Symbol::d(w));
    }
    return out;
}

BracketTable bracket_table(int m, int max_total, BracketMethod method) {
    BracketTable table;
    table.m = m;
    table.max_total = max_total;
    const auto pool = basis_symbols(m, std::max(max_total - 1, 0));
    for (const auto& sx : pool)
        for (const auto& sy : pool) {
            if (symbol_degree(sx) + symbol_degree(sy) > max_total) continue;
            CohClass b = gerstenhaber_bracket(class_of(m, sx), class_of(m, sy), method);
            auto rev = table.entries.find({sy, sx});
            if (rev != table.entries.end()) {
                const long long sign =
                    -parity_sign(static_cast<long long>(symbol_degree(sx) - 1) *
                                 (symbol_degree(sy) - 1));
                if (b != class_scale(sign, rev->second))
                    throw NotACocycle("bracket_table: graded antisymmetry failed");
            }
            table.entries.emplace(std::make_pair(sx, sy), std::move(b));
        }
    return table;
}

// ---------------------------------------------------------------------------
// BV obstruction.

BvReport bv_obstruction(int m, const Ring& ring, int degree_bound) {
    if (m < 3) throw InvalidIndex("bv_obstruction: requires m >= 3");
    BvReport report;
    report.m = m;
    report.ring = ring;
    report.degree_bound = degree_bound;

    const CohClass wx = class_of(m, Symbol::a(1, {1, 1}));
    const CohClass wy = class_of(m, Symbol::a(1, {2, 1}));
    CupResult witness = cup_detailed(wx, wy, ring);
    report.witness_cup_zero = witness.value.is_zero();

    bool all_zero = true, all_bar = true;
    const auto pool = basis_symbols(m, degree_bound);
    for (const auto& sx : pool)
        for (const auto& sy : pool) {
            if (symbol_degree(sx) + symbol_degree(sy) > degree_bound) continue;
            CupResult r = cup_detailed(class_of(m, sx), class_of(m, sy), ring);
            ++report.pairs_checked;
            if (!r.value.is_zero()) all_zero = false;
            if (r.certificate != CupCertificate::bar_solver) all_bar = false;
        }
    report.all_cups_vanish = all_zero;
    report.all_cups_bar_certified = all_zero && all_bar;

    CohClass bracket = gerstenhaber_bracket(wx, wy, BracketMethod::closed_form);
    report.bracket_witness_nonzero = !class_normalize(bracket, ring).is_zero();
    report.obstruction_holds = report.witness_cup_zero && report.all_cups_vanish &&
                               report.bracket_witness_nonzero;
    return report;
}

// ---------------------------------------------------------------------------
// The m = 2 theory.

namespace {

exactla::FinAbGroup n2_expected(const Ring& ring, int n) {
    using exactla::FinAbGroup;
    auto group = [&](long free_rank, std::vector<long long> torsion) {
        FinAbGroup g;
        g.free_rank = free_rank;
        g.torsion = std::move(torsion);
        return g;
    };
    switch (ring.kind) {
        case Ring::Kind::Z:
            if (n == 0) return group(2, {});
            return n % 2 == 0 ? group(1, {2}) : group(1, {});
        case Ring::Kind::Q: return group(n == 0 ? 2 : 1, {});
        case Ring::Kind::Fp:
            if (ring.mod == 2) return group(2, {});
            return group(n == 0 ? 2 : 1, {});
        case Ring::Kind::Zmod: {
            // Invariant factors equal to N count as free rank over Z/N.
            const long long d = ring.mod % 2 == 0 ? 2 : 1;
            if (n == 0) return group(2, {});
            return d == 1 ? group(1, {}) : group(1, {d});
        }
    }
    return group(0, {});
}

struct M2Basis {
    std::vector<std::pair<char, int>> classes;  // ('f' or 'g', degree)
};

M2Basis m2_field_basis(bool char2, int max_degree) {
    M2Basis b;
    for (int n = 0; n <= max_degree; ++n) {
        if (char2) {
            b.classes.push_back({'f', n});
            b.classes.push_back({'g', n});
        } else {
            if (n == 0) {
                b.classes.push_back({'f', 0});
                b.classes.push_back({'g', 0});
            } else if (n % 2 == 0) {
                b.classes.push_back({'f', n});
            } else {
                b.classes.push_back({'g', n});
            }
        }
    }
    return b;
}

M2Vec m2_singleton(char kind, int p) {
    M2Vec v;
    if (kind == 'f')
        v[p].first = 1;
    else
        v[p].second = 1;
    return v;
}

// Delta_c over characteristic != 2: Delta(g_{2n+1}) = (2n+1) f_{2n} (+ c g_0
// when n = 0); everything else dies.
M2Vec m2_delta_odd_char(const M2Vec& v, long long c) {
    M2Vec out;
    for (const auto& [p, fg] : v) {
        if (p % 2 == 1 && fg.second != 0) {
            out[p - 1].first += fg.second * p;
            if (p == 1) out[0].second += fg.second * c;
        }
    }
    return out;
}

// Delta_{c,c'} in characteristic two: Delta(f_{2n+1}) = c f_{2n} + c' g_{2n},
// Delta(g_{2n+1}) = f_{2n} + c g_{2n}.
M2Vec m2_delta_char2(const M2Vec& v, long long c0, long long c1) {
    M2Vec out;
    for (const auto& [p, fg] : v) {
        if (p % 2 == 1) {
            out[p - 1].first += c0 * fg.first + fg.second;
            out[p - 1].second += c1 * fg.first + c0 * fg.second;
        }
    }
    return out;
}

bool m2_vec_equal(const M2Vec& a, const M2Vec& b, const Ring& ring) {
    M2Vec d = a;
    for (const auto& [p, fg] : b) {
        d[p].first -= fg.first;
        d[p].second -= fg.second;
    }
    return m2_normalize(std::move(d), ring).empty();
}

// (-1)^{|a|} { Delta(a u b) - Delta(a) u b - (-1)^{|a|} a u Delta(b) } == [a, b]
bool m2_bv_identity(const M2Vec& a, int deg_a, const M2Vec& b, const Ring& ring,
                    const std::function<M2Vec(const M2Vec&)>& delta) {
    M2Vec rhs;
    auto acc = [&](const M2Vec& v, long long sign) {
        for (const auto& [p, fg] : v) {
            rhs[p].first += sign * fg.first;
            rhs[p].second += sign * fg.second;
        }
    };
    const long long sa = parity_sign(deg_a);
    acc(delta(m2_cup(a, b)), sa);
    acc(m2_cup(delta(a), b), -sa);
    acc(m2_cup(a, delta(b)), -1);
    return m2_vec_equal(m2_bracket(a, b), rhs, ring);
}

}  // namespace

N2Report n2_theory(const Ring& ring, int max_degree) {
    if ((ring.kind == Ring::Kind::Zmod && ring.mod <= 1) ||
        (ring.kind == Ring::Kind::Fp && ring.mod < 2))
        throw exactla::UnsupportedRing("n2_theory: modulus must exceed 1");
    N2Report report;
    report.ring = ring;
    report.max_degree = max_degree;

    // Periodic resolution: dualized differentials alternate 0 and 2x.
    exactla::IntMat zero = exactla::IntMat::Zero(2, 2);
    exactla::IntMat dbl = exactla::IntMat::Zero(2, 2);
    dbl(1, 0) = 2;  // basis (identity, x); a -> 2xa kills x and doubles 1 -> x.
    auto delta = [&](int i) { return i >= 0 && i % 2 == 1 ? dbl : zero; };

    const auto coeff = bimod::standard_bimodule(2, bimod::Which::N);
    bool match_koszul = true, match_formula = true;
    for (int n = 0; n <= max_degree; ++n) {
        auto periodic = exactla::cohomology_of_pair(delta(n - 1), delta(n), ring);
        report.groups.push_back(periodic);
        if (!(periodic == homology::hochschild(2, coeff, ring, n))) match_koszul = false;
        if (!(periodic == n2_expected(ring, n))) match_formula = false;
    }
    report.groups_match_koszul = match_koszul;
    report.groups_match_formula = match_formula;

    // Integer cochain product table: f_i f_j = f_{i+j}, f_i g_j = g_{i+j},
    // g_i g_j = 0, checked through the generic cup on (f, g)-vectors.
    bool products = true;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; i + j <= max_degree; ++j) {
            if (m2_cup(m2_singleton('f', i), m2_singleton('f', j)) !=
                m2_singleton('f', i + j))
                products = false;
            if (m2_cup(m2_singleton('f', i), m2_singleton('g', j)) !=
                m2_singleton('g', i + j))
                products = false;
            if (m2_cup(m2_singleton('g', i), m2_singleton('f', j)) !=
                m2_singleton('g', i + j))
                products = false;
            if (!m2_cup(m2_singleton('g', i), m2_singleton('g', j)).empty())
                products = false;
        }
    report.products_ok = products;

    // Circle-product commutators against the parity table.
    bool brackets = true;
    for (int i = 0; i <= max_degree; ++i)
        for (int j = 0; j <= max_degree; ++j) {
            if (i + j - 1 > max_degree) continue;
            for (char kx : {'f', 'g'})
                for (char ky : {'f', 'g'}) {
                    M2Vec vx = m2_singleton(kx, i), vy = m2_singleton(ky, j);
                    if (m2_bracket(vx, vy) != m2_bracket_table(vx, vy)) brackets = false;
                }
        }
    report.brackets_ok = brackets;

    if (ring.is_field()) {
        report.bv_family_checked = true;
        const bool char2 = ring.kind == Ring::Kind::Fp && ring.mod == 2;
        const int bound = std::min(max_degree, 6);
        const M2Basis basis = m2_field_basis(char2, bound);
        std::vector<std::function<M2Vec(const M2Vec&)>> family;
        if (char2) {
            for (long long c0 : {0, 1})
                for (long long c1 : {0, 1})
                    family.push_back([c0, c1](const M2Vec& v) {
                        return m2_delta_char2(v, c0, c1);
                    });
        } else if (ring.kind == Ring::Kind::Fp) {
            for (long long c = 0; c < ring.mod; ++c)
                family.push_back([c](const M2Vec& v) { return m2_delta_odd_char(v, c); });
        } else {
            for (long long c : {0LL, 1LL, -1LL, 2LL})
                family.push_back([c](const M2Vec& v) { return m2_delta_odd_char(v, c); });
        }
        bool bv = true, dd = true;
        for (const auto& delta_fn : family) {
            for (const auto& [ka, pa] : basis.classes) {
                M2Vec va = m2_normalize(m2_singleton(ka, pa), ring);
                if (va.empty()) continue;
                if (!m2_normalize(delta_fn(delta_fn(va)), ring).empty()) dd = false;
                for (const auto& [kb, pb] : basis.classes) {
                    if (pa + pb > bound) continue;
                    M2Vec vb = m2_normalize(m2_singleton(kb, pb), ring);
                    if (vb.empty()) continue;
                    if (!m2_bv_identity(va, pa, vb, ring, delta_fn)) bv = false;
                }
            }
        }
        report.bv_ok = bv;
        report.delta_squared_zero = dd;
    }

    report.pass = report.groups_match_koszul && report.groups_match_formula &&
                  report.products_ok && report.brackets_ok &&
                  (!report.bv_family_checked ||
                   (report.bv_ok && report.delta_squared_zero));
    return report;
}

}  // namespace ghstructure

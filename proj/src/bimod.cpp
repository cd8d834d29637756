#include "bimod.hpp"

#include <algorithm>
#include <sstream>

namespace bimod {

using exactla::Int;
using exactla::IntMat;
using exactla::Ring;

int homdeg(const Label& label) {
    return label.kind == Label::Kind::unit ? label.j - label.i : 0;
}

std::string to_string(const Label& label) {
    std::ostringstream out;
    switch (label.kind) {
        case Label::Kind::identity: out << "I"; break;
        case Label::Kind::unit: out << "E(" << label.i << "," << label.j << ")"; break;
        case Label::Kind::bar_diag: out << "Ebar(" << label.i << "," << label.i << ")"; break;
    }
    return out.str();
}

long Bimodule::index_of(const Label& label) const {
    for (long b = 0; b < dim(); ++b)
        if (basis[b] == label) return b;
    return -1;
}

Which parse_which(const std::string& name) {
    if (name == "N") return Which::N;
    if (name == "B") return Which::B;
    if (name == "M") return Which::M;
    if (name == "M_over_N") return Which::M_over_N;
    if (name == "B_over_N") return Which::B_over_N;
    if (name == "M_over_J") return Which::M_over_J;
    if (name == "R") return Which::R;
    if (name == "Gr") return Which::Gr;
    if (name == "Jpow") return Which::Jpow;
    throw std::invalid_argument("unknown bimodule: " + name);
}

std::string to_string(Which which) {
    switch (which) {
        case Which::N: return "N";
        case Which::B: return "B";
        case Which::M: return "M";
        case Which::M_over_N: return "M_over_N";
        case Which::B_over_N: return "B_over_N";
        case Which::M_over_J: return "M_over_J";
        case Which::R: return "R";
        case Which::Gr: return "Gr";
        case Which::Jpow: return "Jpow";
    }
    return "?";
}

namespace {

void check_m(int m) {
    if (m < 2 || m > 8) throw std::invalid_argument("m must be in [2, 8]");
}

// Expresses the matrix unit E_{ab} in the module's basis. Only units that a
// generator action can actually produce are supported; anything else signals
// a modelling error.
std::vector<std::pair<Label, int>> reduce_unit(Which which, int m, int a, int b, int layer) {
    switch (which) {
        case Which::N:
            if (a < b) return {{Label::unit(a, b), 1}};
            throw std::logic_error("non-strict-upper unit in N");
        case Which::B:
            if (a <= b) return {{Label::unit(a, b), 1}};
            throw std::logic_error("lower unit in B");
        case Which::M:
            return {{Label::unit(a, b), 1}};
        case Which::M_over_N:
            if (a < b) return {};
            if (a > b) return {{Label::unit(a, b), 1}};
            if (a == 1) {
                std::vector<std::pair<Label, int>> out;
                for (int i = 2; i <= m; ++i) out.push_back({Label::bar(i), -1});
                return out;
            }
            return {{Label::bar(a), 1}};
        case Which::B_over_N:
            if (a < b) return {};
            throw std::logic_error("unexpected unit in B_over_N");
        case Which::M_over_J:
            if (a < b) return {};
            return {{Label::unit(a, b), 1}};
        case Which::Jpow:
            if (b - a >= std::max(layer, 1)) return {{Label::unit(a, b), 1}};
            if (layer == 0 && a < b) return {{Label::unit(a, b), 1}};
            throw std::logic_error("unit below layer in Jpow");
        case Which::R:
        case Which::Gr:
            throw std::logic_error("graded piece has no unit reduction");
    }
    return {};
}

std::vector<Label> build_basis(Which which, int m, int layer) {
    std::vector<Label> basis;
    auto upper = [&](int from_d) {
        for (int d = std::max(from_d, 1); d <= m - 1; ++d)
            for (int i = 1; i + d <= m; ++i) basis.push_back(Label::unit(i, i + d));
    };
    auto lower = [&] {
        for (int d = -(m - 1); d <= -1; ++d)
            for (int j = 1; j <= m + d; ++j) basis.push_back(Label::unit(j - d, j));
    };
    switch (which) {
        case Which::N:
            basis.push_back(Label::id());
            upper(1);
            break;
        case Which::B:
            for (int i = 1; i <= m; ++i) basis.push_back(Label::unit(i, i));
            upper(1);
            break;
        case Which::M:
            lower();
            for (int i = 1; i <= m; ++i) basis.push_back(Label::unit(i, i));
            upper(1);
            break;
        case Which::M_over_N:
            lower();
            for (int i = 2; i <= m; ++i) basis.push_back(Label::bar(i));
            break;
        case Which::B_over_N:
            for (int i = 2; i <= m; ++i) basis.push_back(Label::bar(i));
            break;
        case Which::M_over_J:
            lower();
            for (int i = 1; i <= m; ++i) basis.push_back(Label::unit(i, i));
            break;
        case Which::R:
            if (layer != 0) throw InvalidLayer("layer only applies to Gr and Jpow");
            basis.push_back(Label::id());
            break;
        case Which::Gr:
            if (layer < 0 || layer > m - 1) throw InvalidLayer("Gr layer must be in [0, m-1]");
            if (layer == 0)
                basis.push_back(Label::id());
            else
                for (int i = 1; i + layer <= m; ++i) basis.push_back(Label::unit(i, i + layer));
            break;
        case Which::Jpow:
            if (layer < 0 || layer > m - 1) throw InvalidLayer("Jpow layer must be in [0, m-1]");
            if (layer == 0) basis.push_back(Label::id());
            upper(layer);
            break;
    }
    return basis;
}

}  // namespace

Bimodule standard_bimodule(int m, Which which, int layer) {
    check_m(m);
    if (layer != 0 && which != Which::Gr && which != Which::Jpow)
        throw InvalidLayer("layer only applies to Gr and Jpow");
    Bimodule mod;
    mod.m = m;
    mod.name = to_string(which);
    if (which == Which::Gr || which == Which::Jpow)
        mod.name += "(" + std::to_string(layer) + ")";
    mod.basis = build_basis(which, m, layer);

    const bool zero_action = which == Which::R || which == Which::Gr;
    mod.left.assign(m - 1, std::vector<ActionVec>(mod.basis.size()));
    mod.right.assign(m - 1, std::vector<ActionVec>(mod.basis.size()));
    if (zero_action) return mod;

    auto emit = [&](std::vector<std::pair<Label, int>> combo) {
        ActionVec out;
        for (auto& [label, coeff] : combo) {
            long idx = mod.index_of(label);
            if (idx < 0) throw std::logic_error("reduction left the basis");
            out.push_back({idx, coeff});
        }
        return out;
    };

    for (size_t b = 0; b < mod.basis.size(); ++b) {
        const Label& label = mod.basis[b];
        for (int k = 1; k <= m - 1; ++k) {
            // x_k * label
            switch (label.kind) {
                case Label::Kind::identity:
                    mod.left[k - 1][b] = emit(reduce_unit(which, m, k, k + 1, layer));
                    break;
                case Label::Kind::unit:
                    if (k + 1 == label.i)
                        mod.left[k - 1][b] = emit(reduce_unit(which, m, k, label.j, layer));
                    break;
                case Label::Kind::bar_diag:
                    if (k + 1 == label.i)
                        mod.left[k - 1][b] = emit(reduce_unit(which, m, k, label.i, layer));
                    break;
            }
            // label * x_k
            switch (label.kind) {
                case Label::Kind::identity:
                    mod.right[k - 1][b] = emit(reduce_unit(which, m, k, k + 1, layer));
                    break;
                case Label::Kind::unit:
                    if (label.j == k)
                        mod.right[k - 1][b] = emit(reduce_unit(which, m, label.i, k + 1, layer));
                    break;
                case Label::Kind::bar_diag:
                    if (label.i == k)
                        mod.right[k - 1][b] = emit(reduce_unit(which, m, k, k + 1, layer));
                    break;
            }
        }
    }
    return mod;
}

FilteredBimodule j_adic_filtration(const Bimodule& mod) {
    FilteredBimodule out;
    out.base = mod;
    const long dim = mod.dim();
    if (dim == 0) throw std::invalid_argument("empty bimodule");
    out.min_degree = homdeg(mod.basis[0]);
    out.max_degree = out.min_degree;
    for (const Label& label : mod.basis) {
        out.min_degree = std::min(out.min_degree, homdeg(label));
        out.max_degree = std::max(out.max_degree, homdeg(label));
    }

    auto span_of_degree = [&](int p) {
        std::vector<long> indices;
        for (long b = 0; b < dim; ++b)
            if (homdeg(mod.basis[b]) >= p) indices.push_back(b);
        return indices;
    };

    std::vector<long> current = span_of_degree(out.min_degree);
    out.levels.push_back(current);
    for (int t = 1;; ++t) {
        // Honest closure step: images of the current level under both actions.
        std::vector<std::vector<int>> generated;
        for (long b : current) {
            for (int k = 0; k < mod.m - 1; ++k) {
                for (const auto* action : {&mod.left[k][b], &mod.right[k][b]}) {
                    if (action->empty()) continue;
                    std::vector<int> vec(dim, 0);
                    for (auto& [idx, coeff] : *action) vec[idx] += coeff;
                    generated.push_back(std::move(vec));
                }
            }
        }
        std::vector<long> expected = span_of_degree(out.min_degree + t);
        std::vector<char> allowed(dim, 0);
        for (long b : expected) allowed[b] = 1;
        for (const auto& vec : generated)
            for (long b = 0; b < dim; ++b)
                if (vec[b] != 0 && !allowed[b])
                    throw std::logic_error("closure escaped the degree span");
        IntMat stack = IntMat::Zero(dim, static_cast<long>(generated.size()));
        for (long c = 0; c < stack.cols(); ++c)
            for (long b = 0; b < dim; ++b) stack(b, c) = generated[c][b];
        long rank = exactla::dense_rank(stack, Ring::Q());
        if (rank != static_cast<long>(expected.size()))
            throw std::logic_error("closure level has unexpected dimension");
        if (expected.empty()) break;
        out.levels.push_back(expected);
        current = std::move(expected);
    }
    return out;
}

Bimodule graded_piece(const FilteredBimodule& filtered, int p) {
    if (p < filtered.min_degree || p > filtered.max_degree)
        throw InvalidLayer("graded piece outside the filtration range");
    const size_t t = static_cast<size_t>(p - filtered.min_degree);
    std::vector<char> in_next(filtered.base.dim(), 0);
    if (t + 1 < filtered.levels.size())
        for (long b : filtered.levels[t + 1]) in_next[b] = 1;
    Bimodule piece;
    piece.m = filtered.base.m;
    piece.name = filtered.base.name + ".gr(" + std::to_string(p) + ")";
    for (long b : filtered.levels[t])
        if (!in_next[b]) piece.basis.push_back(filtered.base.basis[b]);
    piece.left.assign(piece.m - 1, std::vector<ActionVec>(piece.basis.size()));
    piece.right.assign(piece.m - 1, std::vector<ActionVec>(piece.basis.size()));
    return piece;
}

long normalizer_dimension(int m, const exactla::Ring& ring) {
    check_m(m);
    // Unknowns A_{ij} flattened row-major; C = [A, x_k] must have vanishing
    // strictly lower part and constant diagonal, where
    // C_{ij} = A_{ik} [j = k+1] - [i = k] A_{k+1, j}.
    auto var = [&](int i, int j) { return (i - 1) * m + (j - 1); };
    std::vector<std::vector<int>> rows;
    for (int k = 1; k <= m - 1; ++k) {
        auto c_entry = [&](int i, int j) {
            std::vector<int> row(m * m, 0);
            if (j == k + 1) row[var(i, k)] += 1;
            if (i == k) row[var(k + 1, j)] -= 1;
            return row;
        };
        for (int i = 1; i <= m; ++i)
            for (int j = 1; j < i; ++j) rows.push_back(c_entry(i, j));
        for (int i = 1; i <= m - 1; ++i) {
            std::vector<int> row = c_entry(i, i);
            std::vector<int> next = c_entry(i + 1, i + 1);
            for (int t = 0; t < m * m; ++t) row[t] -= next[t];
            rows.push_back(row);
        }
    }
    IntMat a = IntMat::Zero(static_cast<long>(rows.size()), m * m);
    for (long r = 0; r < a.rows(); ++r)
        for (long c = 0; c < m * m; ++c) a(r, c) = rows[r][c];
    return static_cast<long>(m) * m - exactla::dense_rank(a, ring);
}

namespace {

// Reduced-bar H^1 with coefficients in M/N, built from scratch so the count
// is independent of the resolution-based engines.
long h1_m_over_n_dimension(int m) {
    Bimodule v = standard_bimodule(m, Which::M_over_N);
    std::vector<std::pair<int, int>> nbar;  // strict upper units E_{ij}
    for (int i = 1; i <= m; ++i)
        for (int j = i + 1; j <= m; ++j) nbar.push_back({i, j});
    const long u = static_cast<long>(nbar.size());
    const long dim_v = v.dim();

    auto act_left = [&](int i, int j, long b) -> std::vector<std::pair<long, int>> {
        const Label& label = v.basis[b];
        if (label.kind != Label::Kind::unit) return {};  // E_{ij} Ebar_{aa} is strictly upper
        if (j != label.i) return {};
        std::vector<std::pair<long, int>> out;
        for (auto& [lab, coeff] : reduce_unit(Which::M_over_N, m, i, label.j, 0))
            out.push_back({v.index_of(lab), coeff});
        return out;
    };
    auto act_right = [&](long b, int i, int j) -> std::vector<std::pair<long, int>> {
        const Label& label = v.basis[b];
        if (label.kind != Label::Kind::unit) return {};  // Ebar_{aa} E_{ij} is strictly upper
        if (label.j != i) return {};
        std::vector<std::pair<long, int>> out;
        for (auto& [lab, coeff] : reduce_unit(Which::M_over_N, m, label.i, j, 0))
            out.push_back({v.index_of(lab), coeff});
        return out;
    };

    // d0 : V -> Hom(Nbar, V), (d0 x)(a) = a x - x a.
    std::vector<exactla::Trip> d0;
    for (long b = 0; b < dim_v; ++b)
        for (long g = 0; g < u; ++g) {
            auto [i, j] = nbar[g];
            for (auto& [idx, coeff] : act_left(i, j, b)) d0.push_back({g * dim_v + idx, b, coeff});
            for (auto& [idx, coeff] : act_right(b, i, j)) d0.push_back({g * dim_v + idx, b, -coeff});
        }

    // d1 : Hom(Nbar, V) -> Hom(Nbar^2, V), (d1 f)(a,b) = a f(b) - f(ab) + f(a) b.
    std::vector<exactla::Trip> d1;
    for (long g = 0; g < u; ++g)
        for (long b = 0; b < dim_v; ++b) {
            const long col = g * dim_v + b;  // f = e_b on generator g, zero elsewhere
            for (long g2 = 0; g2 < u; ++g2) {
                auto [i, j] = nbar[g2];
                // a f(b) term with a = nbar[g2], applied to f's value on g
                for (auto& [idx, coeff] : act_left(i, j, b))
                    d1.push_back({(g2 * u + g) * dim_v + idx, col, coeff});
                // f(a) b term
                for (auto& [idx, coeff] : act_right(b, i, j))
                    d1.push_back({(g * u + g2) * dim_v + idx, col, coeff});
            }
            // -f(ab) terms: ab = E_{i1,j1} E_{i2,j2} = [j1 = i2] E_{i1,j2}
            for (long ga = 0; ga < u; ++ga)
                for (long gb = 0; gb < u; ++gb) {
                    auto [i1, j1] = nbar[ga];
                    auto [i2, j2] = nbar[gb];
                    if (j1 != i2) continue;
                    if (nbar[g] != std::make_pair(i1, j2)) continue;
                    d1.push_back({(ga * u + gb) * dim_v + b, col, -1});
                }
        }

    long null_d1 = u * dim_v - exactla::sparse_rank(u * u * dim_v, u * dim_v, d1, Ring::Q());
    long rank_d0 = exactla::sparse_rank(u * dim_v, dim_v, d0, Ring::Q());
    return null_d1 - rank_d0;
}

}  // namespace

long tangent_dimension(int m) {
    check_m(m);
    return h1_m_over_n_dimension(m) + static_cast<long>(m) * m - normalizer_dimension(m, Ring::Q());
}

}  // namespace bimod

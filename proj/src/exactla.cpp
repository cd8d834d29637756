#include "exactla.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace exactla {

namespace {

bool is_prime(long p) {
    if (p < 2) return false;
    for (long d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

long long checked_mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("sparse elimination overflow");
    return r;
}

long long checked_sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("sparse elimination overflow");
    return r;
}

long long checked_add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("sparse elimination overflow");
    return r;
}

long long mod_pos(long long a, long long p) {
    long long r = a % p;
    return r < 0 ? r + p : r;
}

long long mod_inverse(long long a, long long p) {
    long long t = 0, new_t = 1, r = p, new_r = mod_pos(a, p);
    while (new_r != 0) {
        long long q = r / new_r;
        std::tie(t, new_t) = std::make_tuple(new_t, t - q * new_t);
        std::tie(r, new_r) = std::make_tuple(new_r, r - q * new_r);
    }
    if (r != 1) throw std::invalid_argument("not invertible");
    return mod_pos(t, p);
}

long long int_to_ll(const Int& v) {
    if (!v.fits_slong_p()) throw std::overflow_error("invariant factor exceeds long long");
    return v.get_si();
}

}  // namespace

Ring Ring::fp(long p) {
    if (!is_prime(p)) throw std::invalid_argument("Fp modulus must be prime");
    return Ring{Kind::Fp, p};
}

Ring Ring::zmod(long n) {
    if (n < 1) throw std::invalid_argument("Zmod modulus must be >= 1");
    return Ring{Kind::Zmod, n};
}

Ring parse_ring(const std::string& text) {
    if (text == "Z") return Ring::Z();
    if (text == "Q") return Ring::Q();
    auto colon = text.find(':');
    if (colon != std::string::npos) {
        const std::string head = text.substr(0, colon);
        const std::string tail = text.substr(colon + 1);
        char* end = nullptr;
        long value = std::strtol(tail.c_str(), &end, 10);
        if (end && *end == '\0' && !tail.empty()) {
            if (head == "Fp") return Ring::fp(value);
            if (head == "Zmod") return Ring::zmod(value);
        }
    }
    throw std::invalid_argument("unrecognized ring: " + text);
}

std::string to_string(const Ring& ring) {
    switch (ring.kind) {
        case Ring::Kind::Z: return "Z";
        case Ring::Kind::Q: return "Q";
        case Ring::Kind::Fp: return "Fp:" + std::to_string(ring.mod);
        case Ring::Kind::Zmod: return "Zmod:" + std::to_string(ring.mod);
    }
    return "?";
}

std::string to_string(const FinAbGroup& g) {
    if (g.is_trivial()) return "0";
    std::ostringstream out;
    bool first = true;
    if (g.free_rank > 0) {
        out << "R";
        if (g.free_rank > 1) out << "^" << g.free_rank;
        first = false;
    }
    for (long long t : g.torsion) {
        if (!first) out << " + ";
        out << "R/" << t;
        first = false;
    }
    return out.str();
}

FinAbGroup finab_from_cyclics(long free_rank, const std::vector<long long>& moduli) {
    std::map<long long, std::vector<long long>> powers;  // prime -> prime-power factors
    for (long long m : moduli) {
        if (m == 1) continue;
        if (m < 1) throw std::invalid_argument("cyclic modulus must be >= 1");
        long long rest = m;
        for (long long p = 2; p * p <= rest; ++p) {
            if (rest % p != 0) continue;
            long long pk = 1;
            while (rest % p == 0) {
                pk *= p;
                rest /= p;
            }
            powers[p].push_back(pk);
        }
        if (rest > 1) powers[rest].push_back(rest);
    }
    size_t chain_len = 0;
    for (auto& [p, pks] : powers) {
        std::sort(pks.begin(), pks.end(), std::greater<>());
        chain_len = std::max(chain_len, pks.size());
    }
    std::vector<long long> chain(chain_len, 1);
    for (auto& [p, pks] : powers)
        for (size_t i = 0; i < pks.size(); ++i) chain[i] *= pks[i];  // chain[0] largest
    std::reverse(chain.begin(), chain.end());
    return FinAbGroup{free_rank, chain};
}

SNFResult smith_normal_form(const IntMat& input) {
    const long n = input.rows(), m = input.cols();
    SNFResult res;
    res.s = input;
    res.u = IntMat::Identity(n, n);
    res.uinv = IntMat::Identity(n, n);
    res.v = IntMat::Identity(m, m);
    res.vinv = IntMat::Identity(m, m);
    IntMat& s = res.s;

    auto row_sub = [&](long i, long t, const Int& q) {  // row_i -= q * row_t
        s.row(i) -= q * s.row(t);
        res.u.row(i) -= q * res.u.row(t);
        res.uinv.col(t) += q * res.uinv.col(i);
    };
    auto col_sub = [&](long j, long t, const Int& q) {  // col_j -= q * col_t
        s.col(j) -= q * s.col(t);
        res.v.col(j) -= q * res.v.col(t);
        res.vinv.row(t) += q * res.vinv.row(j);
    };
    auto row_swap = [&](long i, long t) {
        if (i == t) return;
        s.row(i).swap(s.row(t));
        res.u.row(i).swap(res.u.row(t));
        res.uinv.col(i).swap(res.uinv.col(t));
    };
    auto col_swap = [&](long j, long t) {
        if (j == t) return;
        s.col(j).swap(s.col(t));
        res.v.col(j).swap(res.v.col(t));
        res.vinv.row(j).swap(res.vinv.row(t));
    };
    auto row_add = [&](long t, long i) {  // row_t += row_i
        s.row(t) += s.row(i);
        res.u.row(t) += res.u.row(i);
        res.uinv.col(i) -= res.uinv.col(t);
    };
    auto row_negate = [&](long i) {
        s.row(i) = -s.row(i);
        res.u.row(i) = -res.u.row(i);
        res.uinv.col(i) = -res.uinv.col(i);
    };

    long t = 0;
    const long limit = std::min(n, m);
    while (t < limit) {
        long pr = -1, pc = -1;
        for (long i = t; i < n; ++i)
            for (long j = t; j < m; ++j) {
                if (s(i, j) == 0) continue;
                if (pr < 0 || cmp(abs(s(i, j)), abs(s(pr, pc))) < 0) {
                    pr = i;
                    pc = j;
                }
            }
        if (pr < 0) break;
        row_swap(pr, t);
        col_swap(pc, t);

        bool clean = true;
        for (long i = t + 1; i < n; ++i) {
            if (s(i, t) == 0) continue;
            Int q = s(i, t) / s(t, t);
            row_sub(i, t, q);
            if (s(i, t) != 0) clean = false;
        }
        for (long j = t + 1; j < m; ++j) {
            if (s(t, j) == 0) continue;
            Int q = s(t, j) / s(t, t);
            col_sub(j, t, q);
            if (s(t, j) != 0) clean = false;
        }
        if (!clean) continue;

        bool divides_all = true;
        for (long i = t + 1; i < n && divides_all; ++i)
            for (long j = t + 1; j < m && divides_all; ++j)
                if (s(i, j) % s(t, t) != 0) {
                    row_add(t, i);
                    divides_all = false;
                }
        if (!divides_all) continue;

        if (s(t, t) < 0) row_negate(t);
        ++t;
    }
    for (long i = 0; i < t; ++i) res.invariant_factors.push_back(s(i, i));
    return res;
}

IntMat kernel_basis_z(const IntMat& a) {
    SNFResult snf = smith_normal_form(a);
    const long rank = static_cast<long>(snf.invariant_factors.size());
    const long m = a.cols();
    IntMat basis(m, m - rank);
    for (long j = rank; j < m; ++j) basis.col(j - rank) = snf.v.col(j);
    return basis;
}

namespace {

long rank_rat(RatMat a) {
    const long n = a.rows(), m = a.cols();
    long rank = 0;
    for (long col = 0; col < m && rank < n; ++col) {
        long pivot = -1;
        for (long i = rank; i < n; ++i)
            if (a(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        a.row(pivot).swap(a.row(rank));
        for (long i = rank + 1; i < n; ++i) {
            if (a(i, col) == 0) continue;
            Rat f = a(i, col) / a(rank, col);
            a.row(i) -= f * a.row(rank);
        }
        ++rank;
    }
    return rank;
}

long rank_fp_dense(const IntMat& input, long p) {
    const long n = input.rows(), m = input.cols();
    std::vector<std::vector<long long>> a(n, std::vector<long long>(m));
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < m; ++j) a[i][j] = mod_pos(mpz_class(input(i, j) % p).get_si(), p);
    long rank = 0;
    for (long col = 0; col < m && rank < n; ++col) {
        long pivot = -1;
        for (long i = rank; i < n; ++i)
            if (a[i][col] != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        std::swap(a[pivot], a[rank]);
        long long inv = mod_inverse(a[rank][col], p);
        for (long i = rank + 1; i < n; ++i) {
            if (a[i][col] == 0) continue;
            long long f = mod_pos(a[i][col] * inv % p, p);
            for (long j = col; j < m; ++j) a[i][j] = mod_pos(a[i][j] - f * a[rank][j] % p, p);
        }
        ++rank;
    }
    return rank;
}

}  // namespace

long dense_rank(const IntMat& a, const Ring& ring) {
    switch (ring.kind) {
        case Ring::Kind::Z:
        case Ring::Kind::Q:
            return rank_rat(a.cast<Rat>());
        case Ring::Kind::Fp:
            return rank_fp_dense(a, ring.mod);
        case Ring::Kind::Zmod:
            throw UnsupportedRing("rank over Z/N is not defined; use cohomology_of_pair");
    }
    return 0;
}

std::optional<RatVec> solve_linear(const IntMat& a, const IntVec& b, const Ring& ring) {
    const long n = a.rows(), m = a.cols();
    if (b.size() != n) throw std::invalid_argument("solve_linear: shape mismatch");

    if (ring.kind == Ring::Kind::Q) {
        RatMat aug(n, m + 1);
        aug.leftCols(m) = a.cast<Rat>();
        aug.col(m) = b.cast<Rat>();
        long rank = 0;
        std::vector<long> pivot_col;
        for (long col = 0; col < m && rank < n; ++col) {
            long pivot = -1;
            for (long i = rank; i < n; ++i)
                if (aug(i, col) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            aug.row(pivot).swap(aug.row(rank));
            Rat inv = 1 / aug(rank, col);
            aug.row(rank) *= inv;
            for (long i = 0; i < n; ++i) {
                if (i == rank || aug(i, col) == 0) continue;
                aug.row(i) -= aug(i, col) * aug.row(rank);
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (long i = rank; i < n; ++i)
            if (aug(i, m) != 0) return std::nullopt;
        RatVec x = RatVec::Zero(m);
        for (long i = 0; i < rank; ++i) x(pivot_col[i]) = aug(i, m);
        return x;
    }

    if (ring.kind == Ring::Kind::Fp) {
        const long p = ring.mod;
        std::vector<std::vector<long long>> aug(n, std::vector<long long>(m + 1));
        for (long i = 0; i < n; ++i) {
            for (long j = 0; j < m; ++j) aug[i][j] = mod_pos(mpz_class(a(i, j) % p).get_si(), p);
            aug[i][m] = mod_pos(mpz_class(b(i) % p).get_si(), p);
        }
        long rank = 0;
        std::vector<long> pivot_col;
        for (long col = 0; col < m && rank < n; ++col) {
            long pivot = -1;
            for (long i = rank; i < n; ++i)
                if (aug[i][col] != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) continue;
            std::swap(aug[pivot], aug[rank]);
            long long inv = mod_inverse(aug[rank][col], p);
            for (long j = col; j <= m; ++j) aug[rank][j] = mod_pos(aug[rank][j] * inv % p, p);
            for (long i = 0; i < n; ++i) {
                if (i == rank || aug[i][col] == 0) continue;
                long long f = aug[i][col];
                for (long j = col; j <= m; ++j)
                    aug[i][j] = mod_pos(aug[i][j] - f * aug[rank][j] % p, p);
            }
            pivot_col.push_back(col);
            ++rank;
        }
        for (long i = rank; i < n; ++i)
            if (aug[i][m] != 0) return std::nullopt;
        RatVec x = RatVec::Zero(m);
        for (long i = 0; i < rank; ++i) x(pivot_col[i]) = Rat(static_cast<long>(aug[i][m]));
        return x;
    }

    // Z and Z/N go through Smith form:  a = uinv s vinv, so s y = u b, x = v y.
    SNFResult snf = smith_normal_form(a);
    IntVec c = snf.u * b;
    const long rank = static_cast<long>(snf.invariant_factors.size());
    IntVec y = IntVec::Zero(m);
    if (ring.kind == Ring::Kind::Z) {
        for (long i = 0; i < rank; ++i) {
            if (c(i) % snf.s(i, i) != 0) return std::nullopt;
            y(i) = c(i) / snf.s(i, i);
        }
        for (long i = rank; i < n; ++i)
            if (c(i) != 0) return std::nullopt;
        IntVec x = snf.v * y;
        return x.cast<Rat>().eval();
    }

    const Int N = ring.mod;
    if (N == 1) return RatVec::Zero(m).eval();
    for (long i = 0; i < rank; ++i) {
        Int c_i = ((c(i) % N) + N) % N;
        Int g = gcd(Int(snf.s(i, i)), N);
        if (c_i % g != 0) return std::nullopt;
        // (s_i/g) y = c_i/g (mod N/g) with s_i/g invertible mod N/g
        Int Ng = N / g;
        if (Ng == 1) {
            y(i) = 0;
            continue;
        }
        Int sg = ((snf.s(i, i) / g) % Ng + Ng) % Ng;
        Int inv, gg, dummy;
        mpz_gcdext(gg.get_mpz_t(), inv.get_mpz_t(), dummy.get_mpz_t(), sg.get_mpz_t(), Ng.get_mpz_t());
        y(i) = ((c_i / g % Ng) * inv % Ng + Ng) % Ng;
    }
    for (long i = rank; i < n; ++i)
        if (c(i) % N != 0) return std::nullopt;
    IntVec x = snf.v * y;
    for (long j = 0; j < m; ++j) x(j) = ((x(j) % N) + N) % N;
    return x.cast<Rat>().eval();
}

namespace {

std::vector<long long> torsion_from_factors(const std::vector<Int>& factors) {
    std::vector<long long> out;
    for (const Int& f : factors)
        if (f > 1) out.push_back(int_to_ll(f));
    return out;
}

}  // namespace

FinAbGroup cohomology_of_pair(const IntMat& d_in, const IntMat& d_out, const Ring& ring) {
    const long mid = d_out.cols();
    if (d_in.rows() != mid)
        throw std::invalid_argument("cohomology_of_pair: d_in rows must equal d_out cols");

    IntMat prod = d_out * d_in;
    bool complex_over_z = true;
    for (long i = 0; i < prod.rows() && complex_over_z; ++i)
        for (long j = 0; j < prod.cols() && complex_over_z; ++j)
            if (prod(i, j) != 0) complex_over_z = false;
    if (ring.kind == Ring::Kind::Fp) {
        bool complex_mod_p = true;
        for (long i = 0; i < prod.rows() && complex_mod_p; ++i)
            for (long j = 0; j < prod.cols() && complex_mod_p; ++j)
                if (prod(i, j) % ring.mod != 0) complex_mod_p = false;
        if (!complex_mod_p) throw NotAComplex("d_out * d_in != 0 over " + to_string(ring));
    } else if (!complex_over_z) {
        throw NotAComplex("d_out * d_in != 0 over Z");
    }

    if (ring.is_field()) {
        long free = mid - dense_rank(d_out, ring) - dense_rank(d_in, ring);
        return FinAbGroup{free, {}};
    }

    if (ring.kind == Ring::Kind::Z) {
        IntMat w = kernel_basis_z(d_out);  // mid x k, saturated
        const long k = w.cols();
        SNFResult snf_w = smith_normal_form(w);
        IntMat cw = snf_w.u * d_in;  // solve w z = d_in column-wise through s
        IntMat z(k, d_in.cols());
        for (long col = 0; col < d_in.cols(); ++col) {
            IntVec y = IntVec::Zero(k);
            for (long i = 0; i < k; ++i) {
                if (cw(i, col) % snf_w.s(i, i) != 0)
                    throw std::logic_error("image not inside saturated kernel");
                y(i) = cw(i, col) / snf_w.s(i, i);
            }
            for (long i = k; i < mid; ++i)
                if (cw(i, col) != 0) throw std::logic_error("image not inside kernel");
            z.col(col) = snf_w.v * y;
        }
        SNFResult snf_z = smith_normal_form(z);
        long free = k - static_cast<long>(snf_z.invariant_factors.size());
        return FinAbGroup{free, torsion_from_factors(snf_z.invariant_factors)};
    }

    // Z/N by universal coefficients from the integer answer:
    // H(Z/N) = (Z/N)^r + sum_i Z/gcd(t_i, N) + sum_j Z/gcd(u_j, N),
    // (r, t_i) the integer cohomology, u_j the invariant factors of d_out.
    const long N = ring.mod;
    if (N == 1) return FinAbGroup{};
    FinAbGroup hz = cohomology_of_pair(d_in, d_out, Ring::Z());
    std::vector<long long> moduli;
    for (long i = 0; i < hz.free_rank; ++i) moduli.push_back(N);
    for (long long t : hz.torsion) moduli.push_back(std::gcd(t, N));
    for (const Int& f : smith_normal_form(d_out).invariant_factors) {
        Int g = gcd(f, Int(N));
        if (g > 1) moduli.push_back(int_to_ll(g));
    }
    FinAbGroup combined = finab_from_cyclics(0, moduli);
    FinAbGroup out;
    for (long long t : combined.torsion) {
        if (t == N)
            ++out.free_rank;
        else
            out.torsion.push_back(t);
    }
    return out;
}

// ---- sparse elimination ----

namespace {

using Row = std::vector<std::pair<long, long long>>;  // sorted by column

long long row_value_at(const Row& row, long col) {
    auto it = std::lower_bound(row.begin(), row.end(), col,
                               [](const auto& e, long c) { return e.first < c; });
    return (it != row.end() && it->first == col) ? it->second : 0;
}

}  // namespace

void coalesce_trips(std::vector<Trip>& trips) {
    std::map<std::pair<long, long>, long long> acc;
    for (const Trip& t : trips) acc[{t.c, t.r}] += t.v;
    trips.clear();
    for (const auto& [key, v] : acc)
        if (v != 0) trips.push_back({key.second, key.first, v});
}

SparseElim sparse_eliminate(long rows, long cols, const std::vector<Trip>& entries) {
    std::vector<Row> row(rows);
    {
        std::vector<Trip> sorted = entries;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Trip& a, const Trip& b) { return std::tie(a.r, a.c) < std::tie(b.r, b.c); });
        for (size_t i = 0; i < sorted.size();) {
            size_t j = i;
            long long acc = 0;
            while (j < sorted.size() && sorted[j].r == sorted[i].r && sorted[j].c == sorted[i].c)
                acc = checked_add(acc, sorted[j++].v);
            if (sorted[i].r < 0 || sorted[i].r >= rows || sorted[i].c < 0 || sorted[i].c >= cols)
                throw std::invalid_argument("sparse entry out of range");
            if (acc != 0) row[sorted[i].r].push_back({sorted[i].c, acc});
            i = j;
        }
    }
    std::vector<char> row_active(rows, 1), col_active(cols, 1);
    std::vector<long> cnnz(cols, 0);
    std::vector<std::vector<long>> col_rows(cols);
    for (long r = 0; r < rows; ++r)
        for (auto& [c, v] : row[r]) {
            ++cnnz[c];
            col_rows[c].push_back(r);
        }

    using Cand = std::tuple<long long, long, long>;  // (score, row, col)
    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
    auto score_of = [&](long r, long c) {
        return static_cast<long long>(row[r].size() - 1) * static_cast<long long>(cnnz[c] - 1);
    };
    for (long r = 0; r < rows; ++r)
        for (auto& [c, v] : row[r])
            if (v == 1 || v == -1) heap.push({score_of(r, c), r, c});

    SparseElim res;
    while (!heap.empty()) {
        auto [score, pr, pc] = heap.top();
        heap.pop();
        if (!row_active[pr] || !col_active[pc]) continue;
        long long pv = row_value_at(row[pr], pc);
        if (pv != 1 && pv != -1) continue;
        long long fresh = score_of(pr, pc);
        if (fresh > score) {
            heap.push({fresh, pr, pc});
            continue;
        }

        std::vector<long> victims = col_rows[pc];
        for (long r2 : victims) {
            if (r2 == pr || !row_active[r2]) continue;
            long long a = row_value_at(row[r2], pc);
            if (a == 0) continue;
            long long mult = checked_mul(a, pv);  // row2 -= mult * row_pr
            Row merged;
            merged.reserve(row[r2].size() + row[pr].size());
            auto it2 = row[r2].begin(), e2 = row[r2].end();
            auto itp = row[pr].begin(), ep = row[pr].end();
            std::vector<long> fresh_unit_cols;
            while (it2 != e2 || itp != ep) {
                if (itp == ep || (it2 != e2 && it2->first < itp->first)) {
                    merged.push_back(*it2++);
                } else if (it2 == e2 || itp->first < it2->first) {
                    long c = itp->first;
                    long long v = checked_sub(0, checked_mul(mult, itp->second));
                    ++itp;
                    if (v == 0) continue;
                    merged.push_back({c, v});
                    ++cnnz[c];
                    col_rows[c].push_back(r2);
                    if ((v == 1 || v == -1) && col_active[c]) fresh_unit_cols.push_back(c);
                } else {
                    long c = it2->first;
                    long long v = checked_sub(it2->second, checked_mul(mult, itp->second));
                    ++it2;
                    ++itp;
                    if (v == 0) {
                        --cnnz[c];
                        continue;
                    }
                    merged.push_back({c, v});
                    if ((v == 1 || v == -1) && col_active[c] && c != pc) fresh_unit_cols.push_back(c);
                }
            }
            row[r2] = std::move(merged);
            for (long c : fresh_unit_cols) heap.push({score_of(r2, c), r2, c});
        }
        for (auto& [c, v] : row[pr]) --cnnz[c];
        row_active[pr] = 0;
        col_active[pc] = 0;
        ++res.pivots;
    }

    std::vector<long> row_index(rows, -1), col_index(cols, -1);
    for (long r = 0; r < rows; ++r)
        if (row_active[r]) row_index[r] = res.residual_rows++;
    for (long c = 0; c < cols; ++c)
        if (col_active[c]) col_index[c] = res.residual_cols++;
    for (long r = 0; r < rows; ++r) {
        if (!row_active[r]) continue;
        for (auto& [c, v] : row[r]) {
            if (!col_active[c]) throw std::logic_error("inactive column survived elimination");
            res.residual.push_back({row_index[r], col_index[c], v});
        }
    }
    return res;
}

IntMat sparse_to_dense(long rows, long cols, const std::vector<Trip>& entries) {
    IntMat a = IntMat::Zero(rows, cols);
    for (const Trip& t : entries) a(t.r, t.c) += static_cast<long>(t.v);
    return a;
}

namespace {

long sparse_rank_fp(long rows, long cols, const std::vector<Trip>& entries, long long p) {
    std::vector<Row> row(rows);
    {
        std::vector<Trip> sorted = entries;
        std::sort(sorted.begin(), sorted.end(),
                  [](const Trip& a, const Trip& b) { return std::tie(a.r, a.c) < std::tie(b.r, b.c); });
        for (size_t i = 0; i < sorted.size();) {
            size_t j = i;
            long long acc = 0;
            while (j < sorted.size() && sorted[j].r == sorted[i].r && sorted[j].c == sorted[i].c)
                acc = mod_pos(acc + sorted[j++].v % p, p);
            if (acc != 0) row[sorted[i].r].push_back({sorted[i].c, acc});
            i = j;
        }
    }
    std::vector<char> row_active(rows, 1), col_active(cols, 1);
    std::vector<long> cnnz(cols, 0);
    std::vector<std::vector<long>> col_rows(cols);
    for (long r = 0; r < rows; ++r)
        for (auto& [c, v] : row[r]) {
            ++cnnz[c];
            col_rows[c].push_back(r);
        }
    using Cand = std::tuple<long long, long, long>;
    std::priority_queue<Cand, std::vector<Cand>, std::greater<>> heap;
    auto score_of = [&](long r, long c) {
        return static_cast<long long>(row[r].size() - 1) * static_cast<long long>(cnnz[c] - 1);
    };
    for (long r = 0; r < rows; ++r)
        for (auto& [c, v] : row[r]) heap.push({score_of(r, c), r, c});

    long pivots = 0;
    while (!heap.empty()) {
        auto [score, pr, pc] = heap.top();
        heap.pop();
        if (!row_active[pr] || !col_active[pc]) continue;
        long long pv = row_value_at(row[pr], pc);
        if (pv == 0) continue;
        long long fresh = score_of(pr, pc);
        if (fresh > score) {
            heap.push({fresh, pr, pc});
            continue;
        }
        long long pinv = mod_inverse(pv, p);
        std::vector<long> victims = col_rows[pc];
        for (long r2 : victims) {
            if (r2 == pr || !row_active[r2]) continue;
            long long a = row_value_at(row[r2], pc);
            if (a == 0) continue;
            long long mult = mod_pos(a * pinv % p, p);
            Row merged;
            merged.reserve(row[r2].size() + row[pr].size());
            auto it2 = row[r2].begin(), e2 = row[r2].end();
            auto itp = row[pr].begin(), ep = row[pr].end();
            std::vector<long> fresh_cols;
            while (it2 != e2 || itp != ep) {
                if (itp == ep || (it2 != e2 && it2->first < itp->first)) {
                    merged.push_back(*it2++);
                } else if (it2 == e2 || itp->first < it2->first) {
                    long c = itp->first;
                    long long v = mod_pos(-(mult * itp->second % p), p);
                    ++itp;
                    if (v == 0) continue;
                    merged.push_back({c, v});
                    ++cnnz[c];
                    col_rows[c].push_back(r2);
                    if (col_active[c]) fresh_cols.push_back(c);
                } else {
                    long c = it2->first;
                    long long v = mod_pos(it2->second - mult * itp->second % p, p);
                    ++it2;
                    ++itp;
                    if (v == 0) {
                        --cnnz[c];
                        continue;
                    }
                    merged.push_back({c, v});
                }
            }
            row[r2] = std::move(merged);
            for (long c : fresh_cols) heap.push({score_of(r2, c), r2, c});
        }
        for (auto& [c, v] : row[pr]) --cnnz[c];
        row_active[pr] = 0;
        col_active[pc] = 0;
        ++pivots;
    }
    return pivots;
}

}  // namespace

long sparse_rank(long rows, long cols, const std::vector<Trip>& entries, const Ring& ring) {
    if (ring.kind == Ring::Kind::Zmod)
        throw UnsupportedRing("rank over Z/N is not defined");
    if (ring.kind == Ring::Kind::Fp) return sparse_rank_fp(rows, cols, entries, ring.mod);
    SparseElim elim = sparse_eliminate(rows, cols, entries);
    if (elim.residual.empty()) return elim.pivots;
    IntMat residual = sparse_to_dense(elim.residual_rows, elim.residual_cols, elim.residual);
    return elim.pivots + dense_rank(residual, Ring::Q());
}

FinAbGroup sparse_coker(long rows, long cols, const std::vector<Trip>& entries) {
    SparseElim elim = sparse_eliminate(rows, cols, entries);
    if (elim.residual.empty()) return FinAbGroup{elim.residual_rows, {}};
    IntMat residual = sparse_to_dense(elim.residual_rows, elim.residual_cols, elim.residual);
    SNFResult snf = smith_normal_form(residual);
    long free = elim.residual_rows - static_cast<long>(snf.invariant_factors.size());
    std::vector<long long> moduli;
    for (const Int& f : snf.invariant_factors)
        if (f > 1) moduli.push_back(int_to_ll(f));
    return finab_from_cyclics(free, moduli);
}

FinAbGroup sparse_cohomology(long prev, long mid, long next,
                             const std::vector<Trip>& d_in,
                             const std::vector<Trip>& d_out, const Ring& ring) {
    if (ring.is_field())
        return FinAbGroup{
            mid - sparse_rank(next, mid, d_out, ring) - sparse_rank(mid, prev, d_in, ring), {}};

    // Free rank over Q; torsion of ker/im equals torsion of C_mid/im because
    // C_mid/ker embeds in the free module C_next.
    const long free_rank = mid - sparse_rank(next, mid, d_out, Ring::Q()) -
                           sparse_rank(mid, prev, d_in, Ring::Q());
    std::vector<long long> torsion = sparse_coker(mid, prev, d_in).torsion;
    if (ring.kind == Ring::Kind::Z) return finab_from_cyclics(free_rank, torsion);

    // Z/N by universal coefficients, as in cohomology_of_pair.
    return finab_mod_n(free_rank, torsion, sparse_coker(next, mid, d_out).torsion, ring.mod);
}

FinAbGroup finab_mod_n(long free_rank, const std::vector<long long>& torsion,
                       const std::vector<long long>& next_torsion, long n) {
    if (n == 1) return FinAbGroup{};
    std::vector<long long> moduli;
    for (long i = 0; i < free_rank; ++i) moduli.push_back(n);
    for (long long t : torsion) moduli.push_back(std::gcd(t, static_cast<long long>(n)));
    for (long long t : next_torsion) {
        long long g = std::gcd(t, static_cast<long long>(n));
        if (g > 1) moduli.push_back(g);
    }
    FinAbGroup combined = finab_from_cyclics(0, moduli);
    FinAbGroup out;
    for (long long t : combined.torsion) {
        if (t == n)
            ++out.free_rank;
        else
            out.torsion.push_back(t);
    }
    return out;
}

FinAbGroup finab_direct_sum(const std::vector<FinAbGroup>& parts, const Ring& ring) {
    long free_rank = 0;
    std::vector<long long> moduli;
    for (const FinAbGroup& part : parts) {
        free_rank += part.free_rank;
        moduli.insert(moduli.end(), part.torsion.begin(), part.torsion.end());
    }
    if (ring.is_field()) {
        if (!moduli.empty()) throw std::invalid_argument("field group with torsion");
        return FinAbGroup{free_rank, {}};
    }
    if (ring.kind == Ring::Kind::Z) return finab_from_cyclics(free_rank, moduli);
    const long n = ring.mod;
    for (long i = 0; i < free_rank; ++i) moduli.push_back(n);
    FinAbGroup combined = finab_from_cyclics(0, moduli);
    FinAbGroup out;
    for (long long t : combined.torsion) {
        if (t == n)
            ++out.free_rank;
        else
            out.torsion.push_back(t);
    }
    return out;
}

}  // namespace exactla

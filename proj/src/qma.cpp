#include "qma.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace qma {

namespace {

void check_m(int m) {
    if (m < 2 || m > 8) throw std::invalid_argument("m must be in [2, 8]");
}

void check_letter(int m, int letter) {
    if (letter < 1 || letter > m - 1) throw std::invalid_argument("letter out of range");
}

}  // namespace

Algebra nm_algebra(int m) {
    check_m(m);
    Algebra alg;
    alg.m = m;
    for (int a = 1; a <= m - 1; ++a)
        for (int b = 1; b <= m - 1; ++b)
            if (b != a + 1) alg.relations.insert({a, b});
    return alg;
}

Algebra quadratic_dual(const Algebra& alg) {
    Algebra dual;
    dual.m = alg.m;
    for (int a = 1; a <= alg.m - 1; ++a)
        for (int b = 1; b <= alg.m - 1; ++b)
            if (!alg.relations.count({a, b})) dual.relations.insert({a, b});
    return dual;
}

bool is_admissible(const Algebra& alg, const Word& w) {
    for (int letter : w) check_letter(alg.m, letter);
    for (size_t i = 0; i + 1 < w.size(); ++i)
        if (alg.relations.count({w[i], w[i + 1]})) return false;
    return true;
}

std::vector<Word> basis_of_degree(const Algebra& alg, int d) {
    if (d < 0) throw std::invalid_argument("degree must be >= 0");
    std::vector<Word> out;
    Word current;
    auto extend = [&](auto&& self) -> void {
        if (static_cast<int>(current.size()) == d) {
            out.push_back(current);
            return;
        }
        for (int letter = 1; letter <= alg.m - 1; ++letter) {
            if (!current.empty() && alg.relations.count({current.back(), letter})) continue;
            current.push_back(letter);
            self(self);
            current.pop_back();
        }
    };
    extend(extend);
    return out;
}

std::optional<Word> multiply_words(const Algebra& alg, const Word& u, const Word& v) {
    if (!is_admissible(alg, u) || !is_admissible(alg, v))
        throw std::invalid_argument("inputs must be basis words");
    if (u.empty()) return v;
    if (v.empty()) return u;
    if (alg.relations.count({u.back(), v.front()})) return std::nullopt;
    Word out = u;
    out.insert(out.end(), v.begin(), v.end());
    return out;
}

namespace {

// Dual admissibility: letter b may follow letter a unless b = a+1.
bool dual_step_ok(int a, int b) { return b != a + 1; }

long long phi_recursion(int m, int q) {
    if (q < 0) return 0;
    std::vector<long long> memo(q + 1, 0);
    memo[0] = 1;
    for (int n = 1; n <= q; ++n) {
        long long acc = 0;
        for (int r = 1; r <= m - 1 && r <= n; ++r) {
            long long term = static_cast<long long>(m - r) * memo[n - r];
            acc += (r % 2 == 1) ? term : -term;
        }
        memo[n] = acc;
    }
    return memo[q];
}

long long phi_enumerate(int m, int q) {
    if (q < 0) return 0;
    if (q == 0) return 1;
    // Iterative DFS over dual-admissible words, counting leaves.
    long long count = 0;
    std::vector<int> stack;
    stack.push_back(0);  // 0 = virtual root, any first letter allowed
    std::vector<int> next_letter(q + 1, 1);
    int depth = 0;
    while (depth >= 0) {
        if (depth == q) {
            ++count;
            --depth;
            stack.pop_back();
            continue;
        }
        int letter = next_letter[depth];
        bool advanced = false;
        for (; letter <= m - 1; ++letter) {
            if (depth > 0 && !dual_step_ok(stack[depth], letter)) continue;
            next_letter[depth] = letter + 1;
            stack.push_back(letter);
            ++depth;
            next_letter[depth] = 1;
            advanced = true;
            break;
        }
        if (!advanced) {
            --depth;
            stack.pop_back();
        }
    }
    return count;
}

long long phi_series(int m, int q) {
    if (q < 0) return 0;
    // f(t) = 1 + sum_{k=1}^{m-1} (m-k) t^k; the dual series is 1/f(-t).
    std::vector<long long> g(q + 1, 0);  // coefficients of f(-t)
    g[0] = 1;
    for (int k = 1; k <= m - 1 && k <= q; ++k)
        g[k] = (k % 2 == 0 ? 1 : -1) * static_cast<long long>(m - k);
    std::vector<long long> c(q + 1, 0);
    c[0] = 1;
    for (int n = 1; n <= q; ++n) {
        long long acc = 0;
        for (int j = 1; j <= n; ++j) acc -= g[j] * c[n - j];
        c[n] = acc;
    }
    return c[q];
}

long long phi_combinatorial(int m, int q) {
    if (q < 0) return 0;
    if (q == 0) return 1;
    // Sum over (i_1..i_{m-1}) >= 0 with sum k*i_k = q of
    // (-1)^q * multinomial(i_1+..+i_{m-1}; i_1,..,i_{m-1}) * prod_k (k-m)^{i_k}.
    mpz_class total = 0;
    std::vector<int> tuple(m, 0);  // tuple[k] = i_k, k = 1..m-1
    auto recurse = [&](auto&& self, int k, int remaining) -> void {
        if (k == m - 1) {
            if (remaining % k != 0) return;
            tuple[k] = remaining / k;
            int parts = 0;
            for (int j = 1; j <= m - 1; ++j) parts += tuple[j];
            mpz_class term;
            mpz_fac_ui(term.get_mpz_t(), parts);
            for (int j = 1; j <= m - 1; ++j) {
                mpz_class fj;
                mpz_fac_ui(fj.get_mpz_t(), tuple[j]);
                term /= fj;
            }
            for (int j = 1; j <= m - 1; ++j) {
                mpz_class base(j - m);
                mpz_class pw;
                mpz_pow_ui(pw.get_mpz_t(), base.get_mpz_t(), tuple[j]);
                term *= pw;
            }
            total += term;
            return;
        }
        for (int i_k = 0; k * i_k <= remaining; ++i_k) {
            tuple[k] = i_k;
            self(self, k + 1, remaining - k * i_k);
        }
    };
    recurse(recurse, 1, q);
    if (q % 2 == 1) total = -total;
    if (!total.fits_slong_p()) throw std::overflow_error("phi overflow");
    return total.get_si();
}

}  // namespace

long long phi(int m, int q, PhiMethod method) {
    check_m(m);
    switch (method) {
        case PhiMethod::enumerate: return phi_enumerate(m, q);
        case PhiMethod::recursion: return phi_recursion(m, q);
        case PhiMethod::series: return phi_series(m, q);
        case PhiMethod::combinatorial: return phi_combinatorial(m, q);
    }
    throw std::invalid_argument("unknown phi method");
}

std::vector<long long> psi_vector(int m, int q) {
    check_m(m);
    if (q < 1) throw std::invalid_argument("psi_vector requires q >= 1");
    // psi(q) = A^(q-1) * ones, A(i,j) = [j may follow i].
    std::vector<long long> psi(m - 1, 1);
    for (int step = 1; step < q; ++step) {
        std::vector<long long> next(m - 1, 0);
        for (int i = 1; i <= m - 1; ++i)
            for (int j = 1; j <= m - 1; ++j)
                if (dual_step_ok(i, j)) next[i - 1] += psi[j - 1];
        psi = std::move(next);
    }
    return psi;
}

long long phi_constrained(int m, int q, const PhiConstraints& constraints) {
    check_m(m);
    if (q < 0) return 0;
    if (q == 0) return 1;
    std::vector<long long> count(m - 1, 0);  // by last letter, growing rightward
    for (int letter = 1; letter <= m - 1; ++letter)
        count[letter - 1] = (constraints.first_not_one && letter == 1) ? 0 : 1;
    for (int len = 2; len <= q; ++len) {
        std::vector<long long> next(m - 1, 0);
        for (int a = 1; a <= m - 1; ++a)
            for (int b = 1; b <= m - 1; ++b)
                if (dual_step_ok(a, b)) next[b - 1] += count[a - 1];
        count = std::move(next);
    }
    long long total = 0;
    for (int letter = 1; letter <= m - 1; ++letter) {
        if (constraints.last_not_top && letter == m - 1) continue;
        total += count[letter - 1];
    }
    return total;
}

std::vector<long long> generating_function_h(int m, int trunc) {
    check_m(m);
    if (trunc < 0) throw std::invalid_argument("truncation must be >= 0");
    std::vector<long long> h(trunc + 1, 0);
    for (int n = 0; n <= trunc; ++n) h[n] = (m - 2) * phi_recursion(m, n);
    h[0] += 1;
    return h;
}

// ---- packed word tables ----

std::uint64_t pack_word(const Word& w) {
    if (w.size() > 20) throw std::length_error("word too long to pack");
    std::uint64_t packed = 0;
    for (int letter : w) {
        if (letter < 1 || letter > 7) throw std::invalid_argument("letter out of packing range");
        packed = (packed << 3) | static_cast<std::uint64_t>(letter);
    }
    return packed;
}

Word unpack_word(std::uint64_t packed, int length) {
    Word w(length);
    for (int k = length - 1; k >= 0; --k) {
        w[k] = static_cast<int>(packed & 7);
        packed >>= 3;
    }
    return w;
}

long WordTable::index_of(std::uint64_t packed) const {
    auto it = std::lower_bound(words.begin(), words.end(), packed);
    if (it == words.end() || *it != packed) return -1;
    return static_cast<long>(it - words.begin());
}

int WordTable::first_letter(long index) const {
    return static_cast<int>((words[index] >> (3 * (length - 1))) & 7);
}

int WordTable::last_letter(long index) const {
    return static_cast<int>(words[index] & 7);
}

const WordTable& word_table(int m, int length) {
    check_m(m);
    if (length < 0 || length > 16) throw std::length_error("word table length out of range");
    static std::map<std::pair<int, int>, WordTable> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(m, length);
    auto found = cache.find(key);
    if (found != cache.end()) return found->second;
    for (int len = 0; len <= length; ++len) {
        if (cache.count({m, len})) continue;
        WordTable table;
        table.m = m;
        table.length = len;
        if (len == 0) {
            table.words = {0};
        } else {
            const WordTable& prev = cache.at({m, len - 1});
            for (std::uint64_t w : prev.words) {
                int last = static_cast<int>(w & 7);
                for (int letter = 1; letter <= m - 1; ++letter) {
                    if (len > 1 && !dual_step_ok(last, letter)) continue;
                    table.words.push_back((w << 3) | static_cast<std::uint64_t>(letter));
                }
            }
            if (table.words.size() > 40'000'000) throw std::length_error("word table too large");
        }
        cache.emplace(std::make_pair(m, len), std::move(table));
    }
    return cache.at(key);
}

std::string to_string(const Word& w) {
    std::ostringstream out;
    out << "(";
    for (size_t i = 0; i < w.size(); ++i) {
        if (i) out << ",";
        out << w[i];
    }
    out << ")";
    return out.str();
}

}  // namespace qma

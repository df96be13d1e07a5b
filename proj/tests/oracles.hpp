#pragma once

// Brute-force references used to check the library: concrete groups built
// from explicit multiplication rules, determinantal divisors, necklace counts.

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <vector>

namespace oracle {

// A finite group as a full multiplication table, identity at index 0.
struct TableGroup {
    std::vector<std::vector<std::uint32_t>> mul;
    std::vector<std::uint32_t> inv;

    size_t order() const { return mul.size(); }
    std::uint32_t comm(std::uint32_t a, std::uint32_t b) const {  // a^-1 b^-1 a b
        return mul[mul[inv[a]][inv[b]]][mul[a][b]];
    }
    std::uint64_t element_order(std::uint32_t a) const {
        std::uint64_t k = 1;
        for (std::uint32_t x = a; x != 0; x = mul[x][a]) ++k;
        return k;
    }
    std::uint64_t exponent() const {
        std::uint64_t e = 1;
        for (std::uint32_t a = 0; a < order(); ++a) e = std::lcm(e, element_order(a));
        return e;
    }
    // subgroup generated by gens, as a sorted list
    std::vector<std::uint32_t> closure(const std::vector<std::uint32_t>& gens) const {
        std::vector<char> in(order(), 0);
        std::vector<std::uint32_t> list{0};
        in[0] = 1;
        for (size_t k = 0; k < list.size(); ++k)
            for (auto g : gens) {
                auto x = mul[list[k]][g];
                if (!in[x]) {
                    in[x] = 1;
                    list.push_back(x);
                }
            }
        std::sort(list.begin(), list.end());
        return list;
    }
    std::vector<std::uint32_t> commutator_subgroup(const std::vector<std::uint32_t>& a,
                                                   const std::vector<std::uint32_t>& b) const {
        std::set<std::uint32_t> gens;
        for (auto x : a)
            for (auto y : b) gens.insert(comm(x, y));
        return closure({gens.begin(), gens.end()});
    }
    std::vector<std::uint32_t> all() const {
        std::vector<std::uint32_t> v(order());
        std::iota(v.begin(), v.end(), 0);
        return v;
    }
    int nilpotency_class() const {
        auto g = all(), cur = g;
        int c = 0;
        while (cur.size() > 1) {
            auto next = commutator_subgroup(cur, g);
            if (next.size() == cur.size()) return -1;
            cur = next;
            ++c;
        }
        return c;
    }
    int derived_length() const {
        auto cur = all();
        int d = 0;
        while (cur.size() > 1) {
            cur = commutator_subgroup(cur, cur);
            ++d;
        }
        return d;
    }
    size_t center_order() const {
        size_t n = 0;
        for (std::uint32_t a = 0; a < order(); ++a) {
            bool central = true;
            for (std::uint32_t b = 0; b < order() && central; ++b) central = mul[a][b] == mul[b][a];
            n += central;
        }
        return n;
    }
    size_t derived_order() const { return commutator_subgroup(all(), all()).size(); }
};

// Closure of the generators under an explicit product; the identity must be
// passed first.
template <class T>
TableGroup make_group(const T& identity, const std::vector<T>& gens, const std::function<T(const T&, const T&)>& op) {
    std::vector<T> elems{identity};
    std::map<T, std::uint32_t> index{{identity, 0}};
    for (size_t k = 0; k < elems.size(); ++k)
        for (const auto& g : gens) {
            T x = op(elems[k], g);
            if (!index.count(x)) {
                index.emplace(x, static_cast<std::uint32_t>(elems.size()));
                elems.push_back(x);
            }
        }
    TableGroup t;
    const size_t n = elems.size();
    t.mul.assign(n, std::vector<std::uint32_t>(n));
    t.inv.assign(n, 0);
    for (size_t a = 0; a < n; ++a)
        for (size_t b = 0; b < n; ++b) {
            auto x = index.at(op(elems[a], elems[b]));
            t.mul[a][b] = x;
            if (x == 0) t.inv[a] = static_cast<std::uint32_t>(b);
        }
    return t;
}

// r^a s^e with s^-1 r s = r^t, s^q = r^m; r of order n.  Covers dihedral,
// quaternion, semidihedral and modular groups.
inline TableGroup metacyclic(long n, long q, long t, long m) {
    using E = std::pair<long, long>;
    // s^e r^b = r^{b t'^e} s^e with t' the inverse of t mod n
    long tinv = 1;
    while ((tinv * ((t % n + n) % n)) % n != 1) ++tinv;
    std::function<E(const E&, const E&)> op = [=](const E& x, const E& y) {
        long tp = 1;
        for (long k = 0; k < x.second; ++k) tp = tp * tinv % n;
        long a = x.first + y.first * tp;
        long e = x.second + y.second;
        if (e >= q) {
            e -= q;
            a += m;
        }
        return E{((a % n) + n) % n, e};
    };
    return make_group<E>({0, 0}, {{1, 0}, {0, 1}}, op);
}

inline TableGroup abelian(const std::vector<long>& orders) {
    using E = std::vector<long>;
    std::vector<E> gens;
    for (size_t k = 0; k < orders.size(); ++k) {
        E g(orders.size(), 0);
        g[k] = 1;
        gens.push_back(g);
    }
    std::function<E(const E&, const E&)> op = [=](const E& x, const E& y) {
        E z(x.size());
        for (size_t k = 0; k < x.size(); ++k) z[k] = (x[k] + y[k]) % orders[k];
        return z;
    };
    return make_group<E>(E(orders.size(), 0), gens, op);
}

// Upper unitriangular 3x3 matrices over Z/p as (x, y, z).
inline TableGroup heisenberg(long p) {
    using E = std::vector<long>;
    std::function<E(const E&, const E&)> op = [=](const E& a, const E& b) {
        return E{(a[0] + b[0]) % p, (a[1] + b[1]) % p, (a[2] + b[2] + a[0] * b[1]) % p};
    };
    return make_group<E>({0, 0, 0}, {{1, 0, 0}, {0, 1, 0}}, op);
}

// Permutations composed left to right (x^(gh) = (x^g)^h).
inline TableGroup permutations(const std::vector<std::vector<int>>& gens) {
    using E = std::vector<int>;
    std::function<E(const E&, const E&)> op = [](const E& g, const E& h) {
        E r(g.size());
        for (size_t x = 0; x < g.size(); ++x) r[x] = h[g[x]];
        return r;
    };
    E id(gens.at(0).size());
    std::iota(id.begin(), id.end(), 0);
    return make_group<E>(id, gens, op);
}

// Direct product of two table groups.
inline TableGroup direct_product(const TableGroup& a, const TableGroup& b) {
    using E = std::pair<std::uint32_t, std::uint32_t>;
    std::vector<E> gens;
    for (std::uint32_t x = 1; x < a.order(); ++x) gens.push_back({x, 0});
    for (std::uint32_t y = 1; y < b.order(); ++y) gens.push_back({0, y});
    std::function<E(const E&, const E&)> op = [&](const E& x, const E& y) {
        return E{a.mul[x.first][y.first], b.mul[x.second][y.second]};
    };
    return make_group<E>({0, 0}, gens, op);
}

// ---- integer matrices ----

using Matrix = std::vector<std::vector<long>>;

inline mpz_class determinant(const std::vector<std::vector<mpz_class>>& m) {
    // Bareiss fraction-free elimination
    auto a = m;
    const size_t n = a.size();
    if (n == 0) return 1;
    mpz_class sign = 1, prev = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

// d_k = gcd of all k x k minors; elementary divisors are d_k / d_{k-1}.
inline std::vector<mpz_class> elementary_divisors(const Matrix& m) {
    const size_t rows = m.size(), cols = rows ? m[0].size() : 0;
    std::vector<mpz_class> d{1};
    for (size_t k = 1; k <= std::min(rows, cols); ++k) {
        mpz_class g = 0;
        std::vector<size_t> ri(k), ci(k);
        std::function<void(size_t, size_t)> pick_cols;
        std::function<void(size_t, size_t)> pick_rows = [&](size_t at, size_t from) {
            if (at == k) {
                pick_cols(0, 0);
                return;
            }
            for (size_t r = from; r < rows; ++r) {
                ri[at] = r;
                pick_rows(at + 1, r + 1);
            }
        };
        pick_cols = [&](size_t at, size_t from) {
            if (at == k) {
                std::vector<std::vector<mpz_class>> sub(k, std::vector<mpz_class>(k));
                for (size_t i = 0; i < k; ++i)
                    for (size_t j = 0; j < k; ++j) sub[i][j] = mpz_class(m[ri[i]][ci[j]]);
                mpz_class det = determinant(sub);
                mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), det.get_mpz_t());
                return;
            }
            for (size_t c = from; c < cols; ++c) {
                ci[at] = c;
                pick_cols(at + 1, c + 1);
            }
        };
        pick_rows(0, 0);
        d.push_back(g);
    }
    std::vector<mpz_class> out;
    for (size_t k = 1; k < d.size(); ++k) out.push_back(d[k] == 0 ? mpz_class(0) : mpz_class(d[k] / d[k - 1]));
    return out;
}

// ---- free Lie algebra ----

inline int mobius(int n) {
    int r = 1;
    for (int q = 2; q * q <= n; ++q)
        if (n % q == 0) {
            n /= q;
            if (n % q == 0) return 0;
            r = -r;
        }
    return n > 1 ? -r : r;
}

inline long long necklaces(int k, int w) {
    long long s = 0;
    for (int d = 1; d <= w; ++d)
        if (w % d == 0) {
            long long pw = 1;
            for (int e = 0; e < w / d; ++e) pw *= k;
            s += mobius(d) * pw;
        }
    return s / w;
}

}  // namespace oracle

#include <algorithm>
#include <map>
#include <mutex>
#include <stdexcept>

#include "schurlab/freenil.hpp"
#include "schurlab/identities.hpp"

namespace schurlab {

namespace {

// chains(m, n): sum over 1 <= i_1 < ... < i_{m-1} < n of the binomial chain
// ending at n.  chains(1, n) = 1.
mpz_class chains(int m, int n) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, mpz_class> memo;
    if (m == 1) return 1;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto it = memo.find({m, n});
        if (it != memo.end()) return it->second;
    }
    mpz_class s = 0;
    for (int i = m - 1; i < n; ++i) s += binomial(n, i) * chains(m - 1, i);
    std::lock_guard<std::mutex> lock(mu);
    memo.emplace(std::make_pair(m, n), s);
    return s;
}

}  // namespace

mpz_class alpha(int m, int n) {
    if (m < 2 || m > n) throw std::invalid_argument("alpha needs 2 <= m <= n");
    return chains(m, n);
}

FormalSum FormalSum::operator+(const FormalSum& o) const {
    FormalSum r = *this;
    r += o;
    return r;
}

FormalSum& FormalSum::operator+=(const FormalSum& o) {
    if (prime == 0) prime = o.prime;
    for (const auto& [k, v] : o.terms) terms[k] += v;
    prune();
    return *this;
}

FormalSum FormalSum::operator-(const FormalSum& o) const {
    FormalSum r = *this;
    if (r.prime == 0) r.prime = o.prime;
    for (const auto& [k, v] : o.terms) r.terms[k] -= v;
    r.prune();
    return r;
}

bool FormalSum::operator==(const FormalSum& o) const { return terms == o.terms; }

void FormalSum::prune() {
    for (auto it = terms.begin(); it != terms.end();) {
        if (sgn(it->second) == 0) it = terms.erase(it);
        else ++it;
    }
}

std::vector<std::string> symbol_class(int p, int r) {
    std::vector<std::string> out;
    const int len = p - 1;
    for (unsigned mask = 0; mask < (1u << len); ++mask) {
        if (__builtin_popcount(mask) != r) continue;
        std::string s(len, 'a');
        for (int i = 0; i < len; ++i)
            if (mask >> (len - 1 - i) & 1u) s[i] = 'b';
        out.push_back(s);
    }
    std::sort(out.begin(), out.end());
    return out;
}

FormalSum symbol_class_sum(int p, int r) {
    FormalSum s;
    s.prime = p;
    for (const auto& k : symbol_class(p, r)) s.terms[k] = 1;
    return s;
}

FormalSum substitute_ab(const FormalSum& s) {
    FormalSum r;
    r.prime = s.prime;
    for (const auto& [sym, coef] : s.terms) {
        std::vector<int> a_slots;
        for (int i = 0; i < static_cast<int>(sym.size()); ++i)
            if (sym[i] == 'a') a_slots.push_back(i);
        for (unsigned mask = 0; mask < (1u << a_slots.size()); ++mask) {
            std::string d = sym;
            for (size_t j = 0; j < a_slots.size(); ++j)
                if (mask >> j & 1u) d[a_slots[j]] = 'b';
            r.terms[d] += coef;
        }
    }
    r.prune();
    return r;
}

std::optional<std::vector<mpz_class>> class_coefficients(const FormalSum& s) {
    const int p = s.prime;
    std::vector<mpz_class> out(p, 0);
    for (int r = 0; r < p; ++r) {
        bool first = true;
        for (const auto& sym : symbol_class(p, r)) {
            auto it = s.terms.find(sym);
            mpz_class v = it == s.terms.end() ? mpz_class(0) : it->second;
            if (first) out[r] = v;
            else if (v != out[r]) return std::nullopt;
            first = false;
        }
    }
    return out;
}

std::vector<std::vector<mpz_class>> er_chain(int p) {
    if (p < 3 || !(p % 2)) throw std::invalid_argument("er_chain needs an odd prime");
    FormalSum v;
    v.prime = p;
    for (int r = 1; r < p; ++r) v += symbol_class_sum(p, r);
    std::vector<std::vector<mpz_class>> chain;
    for (int step = 0; step < p - 1; ++step) {
        if (step > 0) v = substitute_ab(v) - v;
        auto c = class_coefficients(v);
        if (!c) throw std::logic_error("chain left the span of the class sums");
        chain.emplace_back(c->begin() + 1, c->end());
    }
    return chain;
}

}  // namespace schurlab

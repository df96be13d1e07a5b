#include "schurlab/pcgroup.hpp"

#include <algorithm>
#include <sstream>

namespace schurlab {

Collector::Collector(const PcPresentation& p) : pres_(std::make_shared<const PcPresentation>(p)) {
    gen_inverse_.reserve(p.ngens);
    for (int i = 0; i < p.ngens; ++i) gen_inverse_.push_back(inverse(generator(i)));
}

int Collector::tail_count() const {
    int n = pres_->ngens;
    return n + n * (n - 1) / 2;
}

int Collector::comm_tail(int j, int i) const {
    // pairs (j, i), j > i, enumerated row by row: (1,0), (2,0), (2,1), ...
    return pres_->ngens + j * (j - 1) / 2 + i;
}

NormalWord Collector::generator(int i) const {
    NormalWord w(pres_->ngens, 0);
    w.at(i) = 1;
    return w;
}

bool Collector::is_identity(const NormalWord& u) const {
    return std::all_of(u.begin(), u.end(), [](int e) { return e == 0; });
}

namespace {

void push_reversed(std::vector<std::pair<int, long long>>& stack, const NormalWord& w) {
    for (int k = static_cast<int>(w.size()) - 1; k >= 0; --k)
        if (w[k]) stack.emplace_back(k, w[k]);
}

}  // namespace

void Collector::collect(NormalWord& r, std::vector<std::pair<int, long long>>& stack,
                        std::vector<long long>* tails) const {
    const PcPresentation& P = *pres_;
    const int n = P.ngens;
    std::vector<std::pair<int, int>> moved;
    while (!stack.empty()) {
        auto [j, e] = stack.back();
        stack.pop_back();
        if (e == 0) continue;
        bool beyond_empty = true;
        for (int k = n - 1; k > j; --k)
            if (r[k]) {
                beyond_empty = false;
                break;
            }
        const int o = P.relative_orders[j];
        if (beyond_empty) {
            long long v = r[j] + e;
            long long q = v / o;
            r[j] = static_cast<int>(v % o);
            if (q > 0) {
                if (tails) (*tails)[power_tail(j)] += q;
                if (!P.is_trivial_word(P.power_words[j]))
                    for (long long t = 0; t < q; ++t) push_reversed(stack, P.power_words[j]);
            }
            continue;
        }
        if (e > 1) stack.emplace_back(j, e - 1);
        // Move one g_j left past g_{j+1}^{r_{j+1}} ... g_n^{r_n}: the tail is
        // replaced by its conjugate under g_j, where g_k becomes g_k w_kj.
        moved.clear();
        for (int k = j + 1; k < n; ++k)
            if (r[k]) {
                moved.emplace_back(k, r[k]);
                r[k] = 0;
            }
        for (auto it = moved.rbegin(); it != moved.rend(); ++it) {
            auto [k, t] = *it;
            const NormalWord& w = P.comm_words[k][j];
            if (tails) (*tails)[comm_tail(k, j)] += t;
            if (P.is_trivial_word(w)) {
                stack.emplace_back(k, t);
            } else {
                for (int rep = 0; rep < t; ++rep) {
                    push_reversed(stack, w);
                    stack.emplace_back(k, 1);
                }
            }
        }
        r[j] += 1;
        if (r[j] == o) {
            r[j] = 0;
            if (tails) (*tails)[power_tail(j)] += 1;
            push_reversed(stack, P.power_words[j]);
        }
    }
}

void Collector::multiply_gen(NormalWord& r, int gen, long long exp, std::vector<long long>* tails) const {
    if (gen < 0 || gen >= pres_->ngens) throw std::out_of_range("generator index out of range");
    if (exp < 0) throw std::invalid_argument("multiply_gen expects a nonnegative exponent");
    std::vector<std::pair<int, long long>> stack{{gen, exp}};
    collect(r, stack, tails);
}

void Collector::multiply_word(NormalWord& r, const NormalWord& w, std::vector<long long>* tails) const {
    std::vector<std::pair<int, long long>> stack;
    push_reversed(stack, w);
    collect(r, stack, tails);
}

NormalWord Collector::normalize(const Word& word) const {
    NormalWord r = identity();
    for (const Letter& l : word) {
        if (l.gen < 0 || l.gen >= pres_->ngens)
            throw std::out_of_range("generator index " + std::to_string(l.gen + 1) + " out of range");
        int o = pres_->relative_orders[l.gen];
        if (l.exp >= 0 && l.exp < 2LL * o) {
            multiply_gen(r, l.gen, l.exp);
        } else if (l.exp < 0 && -l.exp < 2LL * o) {
            for (long long t = 0; t < -l.exp; ++t) multiply_word(r, gen_inverse_[l.gen]);
        } else {
            multiply_word(r, power(generator(l.gen), l.exp));
        }
    }
    return r;
}

NormalWord Collector::multiply(const NormalWord& u, const NormalWord& v) const {
    NormalWord r = u;
    multiply_word(r, v);
    return r;
}

NormalWord Collector::inverse(const NormalWord& u) const {
    // Solve u * x = 1 one generator at a time; x comes out in normal form.
    NormalWord r = u, x = identity();
    for (int i = 0; i < pres_->ngens; ++i) {
        if (r[i] == 0) continue;
        int e = pres_->relative_orders[i] - r[i];
        x[i] = e;
        multiply_gen(r, i, e);
    }
    return x;
}

NormalWord Collector::power(const NormalWord& u, long long k) const {
    NormalWord base = k < 0 ? inverse(u) : u;
    unsigned long long m = k < 0 ? 0ULL - static_cast<unsigned long long>(k) : static_cast<unsigned long long>(k);
    NormalWord acc = identity();
    while (m) {
        if (m & 1ULL) acc = multiply(acc, base);
        m >>= 1;
        if (m) base = multiply(base, base);
    }
    return acc;
}

NormalWord Collector::power(const NormalWord& u, const mpz_class& k) const {
    if (k.fits_slong_p()) return power(u, k.get_si());
    NormalWord base = sgn(k) < 0 ? inverse(u) : u;
    mpz_class m = abs(k);
    NormalWord acc = identity();
    size_t bits = mpz_sizeinbase(m.get_mpz_t(), 2);
    for (size_t b = 0; b < bits; ++b) {
        if (mpz_tstbit(m.get_mpz_t(), b)) acc = multiply(acc, base);
        if (b + 1 < bits) base = multiply(base, base);
    }
    return acc;
}

NormalWord Collector::commutator(const NormalWord& u, const NormalWord& v) const {
    NormalWord r = multiply(u, v);
    multiply_word(r, inverse(u));
    multiply_word(r, inverse(v));
    return r;
}

NormalWord Collector::iterated_commutator(const std::vector<NormalWord>& xs) const {
    if (xs.empty()) return identity();
    NormalWord acc = xs.back();
    for (int i = static_cast<int>(xs.size()) - 2; i >= 0; --i) acc = commutator(xs[i], acc);
    return acc;
}

std::string ConsistencyViolation::describe() const {
    std::ostringstream os;
    os << "overlap (" << family << ")";
    for (int i : indices) os << " g" << i;
    os << ": [" << format_word(left) << "] vs [" << format_word(right) << "]";
    return os.str();
}

std::vector<OverlapTest> evaluate_overlaps(const Collector& col) {
    const PcPresentation& P = col.presentation();
    const int n = P.ngens;
    const int r = col.tail_count();
    std::vector<OverlapTest> out;

    // g_j g_i collected, with its tails.
    auto pair_product = [&](int j, int i, std::vector<long long>& tails) {
        NormalWord y = col.generator(j);
        col.multiply_gen(y, i, 1, &tails);
        return y;
    };

    for (int k = 0; k < n; ++k)
        for (int j = 0; j < k; ++j)
            for (int i = 0; i < j; ++i) {
                OverlapTest t{'a', {k, j, i}, {}, {}, std::vector<long long>(r, 0), std::vector<long long>(r, 0)};
                NormalWord y = pair_product(j, i, t.left_tails);
                t.left_word = col.generator(k);
                col.multiply_word(t.left_word, y, &t.left_tails);
                t.right_word = pair_product(k, j, t.right_tails);
                col.multiply_gen(t.right_word, i, 1, &t.right_tails);
                out.push_back(std::move(t));
            }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            OverlapTest t{'b', {j, i}, {}, {}, std::vector<long long>(r, 0), std::vector<long long>(r, 0)};
            t.left_word = P.power_words[j];
            t.left_tails[col.power_tail(j)] += 1;
            col.multiply_gen(t.left_word, i, 1, &t.left_tails);
            t.right_word = col.identity();
            t.right_word[j] = P.relative_orders[j] - 1;
            NormalWord y = pair_product(j, i, t.right_tails);
            col.multiply_word(t.right_word, y, &t.right_tails);
            out.push_back(std::move(t));
        }
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i) {
            OverlapTest t{'c', {j, i}, {}, {}, std::vector<long long>(r, 0), std::vector<long long>(r, 0)};
            t.left_word = col.generator(j);
            t.left_tails[col.power_tail(i)] += 1;
            col.multiply_word(t.left_word, P.power_words[i], &t.left_tails);
            t.right_word = pair_product(j, i, t.right_tails);
            col.multiply_gen(t.right_word, i, P.relative_orders[i] - 1, &t.right_tails);
            out.push_back(std::move(t));
        }
    for (int i = 0; i < n; ++i) {
        OverlapTest t{'d', {i}, {}, {}, std::vector<long long>(r, 0), std::vector<long long>(r, 0)};
        t.left_word = col.generator(i);
        t.left_tails[col.power_tail(i)] += 1;
        col.multiply_word(t.left_word, P.power_words[i], &t.left_tails);
        t.right_word = P.power_words[i];
        t.right_tails[col.power_tail(i)] += 1;
        col.multiply_gen(t.right_word, i, 1, &t.right_tails);
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<ConsistencyViolation> check_consistency(const PcPresentation& p) {
    p.validate();
    Collector col(p);
    std::vector<ConsistencyViolation> out;
    for (const auto& t : evaluate_overlaps(col)) {
        if (t.left_word == t.right_word) continue;
        ConsistencyViolation v{t.family, {}, t.left_word, t.right_word};
        for (int i : t.indices) v.indices.push_back(i + 1);
        out.push_back(std::move(v));
    }
    return out;
}

}  // namespace schurlab

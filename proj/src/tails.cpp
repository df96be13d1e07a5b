#include <numeric>

#include "schurlab/multiplier.hpp"

namespace schurlab {

SparseIntMatrix tails_matrix(const PcPresentation& p) {
    p.validate();
    Collector col(p);
    const size_t r = static_cast<size_t>(col.tail_count());
    SparseIntMatrix m(0, r);
    for (const auto& t : evaluate_overlaps(col)) {
        if (t.left_word != t.right_word)
            throw MultiplierError("presentation " + p.name + " is inconsistent; tails are undefined");
        std::map<size_t, mpz_class> row;
        for (size_t j = 0; j < r; ++j) {
            long long d = t.left_tails[j] - t.right_tails[j];
            if (d) row.emplace(j, mpz_class(static_cast<long>(d)));
        }
        m.append_row(row);
    }
    return m;
}

namespace {

AbelianInvariants tails_multiplier(const PcPresentation& p) {
    AbelianInvariants inv = cokernel_invariants(tails_matrix(p));
    if (inv.free_rank != static_cast<size_t>(p.ngens))
        throw MultiplierError("tail lattice of " + p.name + " has free rank " + std::to_string(inv.free_rank) +
                              ", expected " + std::to_string(p.ngens));
    inv.free_rank = 0;
    return inv;
}

AbelianInvariants bar_multiplier(const PcPresentation& p, std::uint64_t cap) {
    if (cap > kBarMaxCap) throw std::invalid_argument("bar oracle cap above " + std::to_string(kBarMaxCap));
    std::uint64_t order = 1;
    for (int o : p.relative_orders) {
        order *= static_cast<std::uint64_t>(o);
        if (order > cap)
            throw CapExceeded("bar oracle: group " + p.name + " has order above cap " + std::to_string(cap));
    }
    PcGroup g(p);
    return bar_homology(multiplication_table(g), 2, cap);
}

// (p, e) with d = p^e, or nullopt
std::optional<std::pair<unsigned long, int>> prime_power(const mpz_class& d) {
    for (unsigned long q = 2; q * q <= d; ++q) {
        if (!mpz_divisible_ui_p(d.get_mpz_t(), q)) continue;
        mpz_class x = d;
        int e = 0;
        while (mpz_divisible_ui_p(x.get_mpz_t(), q)) {
            x /= q;
            ++e;
        }
        if (x != 1) return std::nullopt;
        return std::make_pair(q, e);
    }
    if (d > 1 && d.fits_ulong_p()) return std::make_pair(d.get_ui(), 1);
    return std::nullopt;
}

}  // namespace

AbelianInvariants schur_multiplier(const PcPresentation& p, MultiplierMethod method, std::uint64_t bar_cap) {
    switch (method) {
        case MultiplierMethod::tails:
            return tails_multiplier(p);
        case MultiplierMethod::bar:
            return bar_multiplier(p, bar_cap);
        case MultiplierMethod::both: {
            AbelianInvariants a = tails_multiplier(p), b = bar_multiplier(p, bar_cap);
            if (a != b)
                throw MultiplierError("methods disagree on " + p.name + ": tails " + a.to_string() + ", bar " +
                                      b.to_string());
            return a;
        }
    }
    throw std::logic_error("unreachable");
}

CoverResult schur_cover(const PcPresentation& p, std::uint64_t cap, const std::vector<size_t>* tail_order) {
    SparseIntMatrix a = tails_matrix(p);
    const size_t r = a.cols;
    std::vector<size_t> order(r);
    std::iota(order.begin(), order.end(), 0);
    if (tail_order) {
        if (tail_order->size() != r) throw std::invalid_argument("tail order has the wrong length");
        order = *tail_order;
        SparseIntMatrix permuted(a.rows, r);
        for (size_t row = 0; row < a.rows; ++row)
            for (size_t j = 0; j < r; ++j) permuted.set(row, j, a.get(row, order[j]));
        a = std::move(permuted);
    }
    SNFResult s = snf(a, true);
    if (r - s.rank != static_cast<size_t>(p.ngens))
        throw MultiplierError("tail lattice of " + p.name + " has the wrong free rank");
    const DenseMatrix& v = *s.col_transform;

    CoverResult res;
    struct Chain {
        size_t column;
        unsigned long prime;
        int length;
        int first;  // first kernel generator index in the cover
    };
    std::vector<Chain> chains;
    const int n = p.ngens;
    int next = n;
    mpz_class group_order = 1;
    for (int o : p.relative_orders) group_order *= o;
    mpz_class cover_order = group_order;
    for (size_t k = 0; k < std::min(a.rows, r); ++k) {
        const mpz_class& d = s.diagonal[k];
        if (d <= 1) continue;
        auto pp = prime_power(d);
        if (!pp) throw MultiplierError("cover construction needs prime-power torsion, got " + d.get_str());
        chains.push_back({k, pp->first, pp->second, next});
        next += pp->second;
        res.multiplier.torsion.push_back(d);
        cover_order *= d;
    }
    if (cover_order > cap)
        throw CapExceeded("cover of " + p.name + " has order " + cover_order.get_str() + ", above cap " +
                          std::to_string(cap));

    PcPresentation h = p;
    h.name = p.name + ".cover";
    h.ngens = next;
    for (const auto& ch : chains)
        for (int l = 0; l < ch.length; ++l) h.relative_orders.push_back(static_cast<int>(ch.prime));
    auto widen = [&](const NormalWord& w) {
        NormalWord x = w;
        x.resize(next, 0);
        return x;
    };
    PcPresentation fresh = PcPresentation::make(h.name, h.relative_orders);
    fresh.prime = p.prime;
    fresh.source_line = p.source_line;

    Collector base(p);
    // tail t (original index) as digits on the kernel chains
    std::vector<size_t> position(r);
    for (size_t j = 0; j < r; ++j) position[order[j]] = j;
    auto tail_word = [&](size_t tail) {
        NormalWord w(next, 0);
        const size_t row = position[tail];
        for (const auto& ch : chains) {
            mpz_class modulus;
            mpz_ui_pow_ui(modulus.get_mpz_t(), ch.prime, ch.length);
            mpz_class c;
            mpz_fdiv_r(c.get_mpz_t(), v[row][ch.column].get_mpz_t(), modulus.get_mpz_t());
            for (int l = 0; l < ch.length; ++l) {
                w[ch.first + l] = static_cast<int>(mpz_fdiv_ui(c.get_mpz_t(), ch.prime));
                mpz_fdiv_q_ui(c.get_mpz_t(), c.get_mpz_t(), ch.prime);
            }
        }
        return w;
    };
    auto with_tail = [&](const NormalWord& w, size_t tail) {
        NormalWord x = widen(w);
        NormalWord t = tail_word(tail);
        for (int i = n; i < next; ++i) x[i] = t[i];
        return x;
    };
    for (int i = 0; i < n; ++i) fresh.set_power(i, with_tail(p.power_words[i], static_cast<size_t>(base.power_tail(i))));
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < j; ++i)
            fresh.set_comm(j, i, with_tail(p.comm_words[j][i], static_cast<size_t>(base.comm_tail(j, i))));
    for (const auto& ch : chains)
        for (int l = 0; l + 1 < ch.length; ++l) {
            NormalWord w(next, 0);
            w[ch.first + l + 1] = 1;
            fresh.set_power(ch.first + l, w);
        }
    res.cover = std::move(fresh);
    for (int i = n; i < next; ++i) res.kernel_generators.push_back(i);

    if (!check_consistency(res.cover).empty())
        throw MultiplierError("cover presentation of " + p.name + " is inconsistent");
    PcGroup hg(res.cover, cap);
    if (mpz_class(static_cast<unsigned long>(hg.order())) != cover_order)
        throw MultiplierError("cover order mismatch for " + p.name);
    std::vector<NormalWord> gens = hg.generator_words();
    for (int z : res.kernel_generators)
        for (const auto& g : gens)
            if (!hg.collector().is_identity(hg.commutator(hg.generator(z), g)))
                throw MultiplierError("kernel generator is not central in the cover of " + p.name);
    std::vector<NormalWord> comms;
    for (int j = 0; j < next; ++j)
        for (int i = 0; i < j; ++i) comms.push_back(hg.commutator(gens[j], gens[i]));
    Subgroup gamma2 = hg.subgroup(comms, true, &gens);
    for (int z : res.kernel_generators)
        if (!gamma2.contains(hg.encode(hg.generator(z))))
            throw MultiplierError("kernel is not inside the derived subgroup of the cover of " + p.name);
    res.gamma2_order = gamma2.order();
    res.exterior_exponent = hg.exponent_of(gamma2);
    return res;
}

std::uint64_t exterior_exponent(const PcPresentation& p, std::uint64_t cap) { return schur_cover(p, cap).exterior_exponent; }

ProbeResult tail_permutation_probe(const PcPresentation& p, std::uint64_t cap) {
    ProbeResult pr;
    Collector col(p);
    const size_t r = static_cast<size_t>(col.tail_count());
    std::vector<size_t> ident(r), reversed(r), evens_first;
    std::iota(ident.begin(), ident.end(), 0);
    std::iota(reversed.rbegin(), reversed.rend(), 0);
    for (size_t j = 0; j < r; j += 2) evens_first.push_back(j);
    for (size_t j = 1; j < r; j += 2) evens_first.push_back(j);
    CoverResult ref = schur_cover(p, cap, &ident);
    const std::pair<const char*, const std::vector<size_t>*> runs[] = {
        {"identity", &ident}, {"reversed", &reversed}, {"evens-first", &evens_first}};
    for (const auto& [label, ord] : runs) {
        CoverResult c = ord == &ident ? ref : schur_cover(p, cap, ord);
        bool same = c.multiplier == ref.multiplier && c.exterior_exponent == ref.exterior_exponent;
        pr.agree = pr.agree && same;
        pr.runs.push_back(std::string(label) + ": M = " + c.multiplier.to_string() +
                          ", exp(gamma_2(H)) = " + std::to_string(c.exterior_exponent));
    }
    return pr;
}

}  // namespace schurlab

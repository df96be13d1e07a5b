#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "schurlab/pcgroup.hpp"

namespace schurlab {

namespace {
constexpr std::uint64_t kTableLimit = 256;
constexpr std::uint64_t kBitmapLimit = 1ULL << 28;
}  // namespace

bool Subgroup::contains(std::uint64_t code) const {
    return std::binary_search(elements.begin(), elements.end(), code);
}

bool Subgroup::subset_of(const Subgroup& other) const {
    return std::includes(other.elements.begin(), other.elements.end(), elements.begin(), elements.end());
}

PcGroup::PcGroup(PcPresentation p, std::uint64_t cap) : col_(p), cap_(cap) {
    const auto& P = col_.presentation();
    radix_.assign(P.ngens, 1);
    unsigned __int128 total = 1;
    for (int i = P.ngens - 1; i >= 0; --i) {
        radix_[i] = static_cast<std::uint64_t>(total);
        total *= static_cast<unsigned __int128>(P.relative_orders[i]);
        if (total > (static_cast<unsigned __int128>(1) << 62))
            throw CapExceeded("group '" + P.name + "' is too large to index");
    }
    order_ = static_cast<std::uint64_t>(total);
    use_table_ = order_ <= kTableLimit;
}

std::optional<int> PcGroup::prime() const {
    if (presentation().prime) return presentation().prime;
    return presentation().common_prime();
}

std::uint64_t PcGroup::encode(const NormalWord& w) const {
    std::uint64_t c = 0;
    for (int i = 0; i < ngens(); ++i) c += radix_[i] * static_cast<std::uint64_t>(w[i]);
    return c;
}

NormalWord PcGroup::decode(std::uint64_t code) const {
    NormalWord w(ngens(), 0);
    for (int i = 0; i < ngens(); ++i) {
        w[i] = static_cast<int>(code / radix_[i]);
        code %= radix_[i];
    }
    return w;
}

void PcGroup::build_table() const {
    std::call_once(table_once_, [this] {
        const std::uint64_t n = order_;
        std::vector<NormalWord> words(n);
        for (std::uint64_t a = 0; a < n; ++a) words[a] = decode(a);
        table_.assign(n * n, 0);
        inv_table_.assign(n, 0);
        for (std::uint64_t a = 0; a < n; ++a) {
            for (std::uint64_t b = 0; b < n; ++b)
                table_[a * n + b] = static_cast<std::uint32_t>(encode(col_.multiply(words[a], words[b])));
        }
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b)
                if (table_[a * n + b] == 0) {
                    inv_table_[a] = static_cast<std::uint32_t>(b);
                    break;
                }
    });
}

std::uint64_t PcGroup::mul(std::uint64_t a, std::uint64_t b) const {
    if (use_table_) {
        build_table();
        return table_[a * order_ + b];
    }
    return encode(col_.multiply(decode(a), decode(b)));
}

std::uint64_t PcGroup::inv(std::uint64_t a) const {
    if (use_table_) {
        build_table();
        return inv_table_[a];
    }
    return encode(col_.inverse(decode(a)));
}

std::uint64_t PcGroup::pow(std::uint64_t a, long long k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    std::uint64_t acc = 0, base = a;
    while (k) {
        if (k & 1) acc = mul(acc, base);
        k >>= 1;
        if (k) base = mul(base, base);
    }
    return acc;
}

std::uint64_t PcGroup::comm(std::uint64_t a, std::uint64_t b) const {
    return mul(mul(mul(a, b), inv(a)), inv(b));
}

std::uint64_t PcGroup::element_order_code(std::uint64_t a) const {
    std::uint64_t n = order_;
    std::vector<int> primes;
    for (int o : presentation().relative_orders)
        if (std::find(primes.begin(), primes.end(), o) == primes.end()) primes.push_back(o);
    for (int q : primes) {
        while (n % q == 0 && pow(a, static_cast<long long>(n / q)) == 0) n /= q;
    }
    return n;
}

std::uint64_t PcGroup::element_order(const NormalWord& u) const { return element_order_code(encode(u)); }

void PcGroup::require_within_cap() const {
    if (order_ > cap_)
        throw CapExceeded("group '" + name() + "' of order " + std::to_string(order_) +
                          " exceeds the enumeration cap " + std::to_string(cap_));
    if (order_ > kBitmapLimit) throw CapExceeded("group '" + name() + "' is too large to enumerate");
}

const std::vector<std::uint64_t>& PcGroup::enumerate() const {
    require_within_cap();
    std::call_once(enum_once_, [this] {
        all_.resize(order_);
        std::iota(all_.begin(), all_.end(), std::uint64_t{0});
    });
    return all_;
}

std::uint64_t PcGroup::exponent(const Subgroup* modulo) const {
    std::uint64_t e = 1;
    for (std::uint64_t x : enumerate()) {
        std::uint64_t k = 1;
        if (modulo) {
            std::uint64_t y = x;
            while (!modulo->contains(y)) {
                y = mul(y, x);
                ++k;
            }
        } else {
            k = element_order_code(x);
        }
        e = std::lcm(e, k);
    }
    return e;
}

std::uint64_t PcGroup::exponent_of(const Subgroup& h) const {
    std::uint64_t e = 1;
    for (std::uint64_t x : h.elements) e = std::lcm(e, element_order_code(x));
    return e;
}

std::vector<NormalWord> PcGroup::generator_words() const {
    std::vector<NormalWord> gens;
    for (int i = 0; i < ngens(); ++i) gens.push_back(generator(i));
    return gens;
}

namespace {

// Incremental closure under right multiplication by a growing generator list.
class Closure {
public:
    explicit Closure(const PcGroup& g) : g_(g), in_(g.order(), 0), elems_{0} { in_[0] = 1; }

    bool contains(std::uint64_t x) const { return in_[x] != 0; }

    void add_generator(std::uint64_t t) {
        close();
        if (in_[t]) return;
        gens_.push_back(t);
        done_.push_back(0);
        close();
    }

    void close() {
        bool progress = true;
        while (progress) {
            progress = false;
            for (size_t k = 0; k < gens_.size(); ++k) {
                while (done_[k] < elems_.size()) {
                    std::uint64_t y = g_.mul(elems_[done_[k]], gens_[k]);
                    ++done_[k];
                    if (!in_[y]) {
                        in_[y] = 1;
                        elems_.push_back(y);
                        progress = true;
                    }
                }
            }
        }
    }

    const std::vector<std::uint64_t>& gens() const { return gens_; }

    Subgroup result() {
        close();
        Subgroup s;
        for (std::uint64_t t : gens_) s.generators.push_back(g_.decode(t));
        s.elements = elems_;
        std::sort(s.elements.begin(), s.elements.end());
        return s;
    }

private:
    const PcGroup& g_;
    std::vector<char> in_;
    std::vector<std::uint64_t> elems_;
    std::vector<std::uint64_t> gens_;
    std::vector<size_t> done_;
};

}  // namespace

Subgroup PcGroup::subgroup(const std::vector<NormalWord>& gens, bool normal_closure,
                           const std::vector<NormalWord>* conjugators) const {
    require_within_cap();
    Closure cl(*this);
    for (const auto& w : gens) cl.add_generator(encode(w));
    if (normal_closure) {
        std::vector<std::uint64_t> hs, hinv;
        std::vector<NormalWord> defaults;
        if (!conjugators) {
            defaults = generator_words();
            conjugators = &defaults;
        }
        for (const auto& h : *conjugators) {
            hs.push_back(encode(h));
            hinv.push_back(inv(hs.back()));
        }
        size_t checked = 0;
        while (checked < cl.gens().size()) {
            std::uint64_t t = cl.gens()[checked++];
            for (size_t k = 0; k < hs.size(); ++k) {
                std::uint64_t c = mul(mul(hs[k], t), hinv[k]);
                cl.close();
                if (!cl.contains(c)) cl.add_generator(c);
            }
        }
    }
    return cl.result();
}

Subgroup PcGroup::whole() const { return subgroup(generator_words(), false); }

Subgroup PcGroup::trivial() const { return subgroup({}, false); }

Subgroup PcGroup::power_subgroup(const Subgroup& h, long long k) const {
    require_within_cap();
    Closure cl(*this);
    for (std::uint64_t x : h.elements) {
        std::uint64_t y = pow(x, k);
        cl.close();
        if (!cl.contains(y)) cl.add_generator(y);
    }
    return cl.result();
}

Subgroup PcGroup::commutator_subgroup(const Subgroup& a, const Subgroup& b,
                                      const std::vector<NormalWord>& conjugators) const {
    std::vector<NormalWord> gens;
    for (const auto& x : a.generators)
        for (const auto& y : b.generators) gens.push_back(commutator(x, y));
    return subgroup(gens, true, &conjugators);
}

const char* to_string(Tri t) {
    switch (t) {
        case Tri::no: return "no";
        case Tri::yes: return "yes";
        default: return "unknown";
    }
}

CharacteristicSubgroups characteristic_subgroups(const PcGroup& g) {
    g.require_within_cap();
    CharacteristicSubgroups cs;
    const std::vector<NormalWord> gens = g.generator_words();
    Subgroup whole = g.whole();

    cs.lower_central.push_back(whole);
    while (!cs.lower_central.back().is_trivial()) {
        Subgroup next = g.commutator_subgroup(cs.lower_central.back(), whole, gens);
        if (next.order() == cs.lower_central.back().order())
            throw std::runtime_error("group '" + g.name() + "' is not nilpotent");
        cs.lower_central.push_back(std::move(next));
    }
    cs.derived.push_back(whole);
    while (!cs.derived.back().is_trivial()) {
        Subgroup next = g.commutator_subgroup(cs.derived.back(), cs.derived.back(), gens);
        if (next.order() == cs.derived.back().order())
            throw std::runtime_error("group '" + g.name() + "' is not solvable");
        cs.derived.push_back(std::move(next));
    }

    std::vector<std::uint64_t> gcodes;
    for (const auto& w : gens) gcodes.push_back(g.encode(w));
    std::vector<NormalWord> central;
    for (std::uint64_t x : g.enumerate()) {
        bool ok = true;
        for (std::uint64_t h : gcodes)
            if (g.mul(x, h) != g.mul(h, x)) {
                ok = false;
                break;
            }
        if (ok) central.push_back(g.decode(x));
    }
    cs.center = g.subgroup(central, false);

    int p = g.prime().value_or(0);
    if (p) {
        cs.power_p = g.power_subgroup(whole, p);
        cs.power_p2 = g.power_subgroup(whole, static_cast<long long>(p) * p);
        cs.power_4 = g.power_subgroup(whole, 4);
    }
    return cs;
}

namespace {

int log_p(std::uint64_t v, int p) {
    int n = 0;
    while (v > 1) {
        if (v % p) throw std::runtime_error("value is not a power of the prime");
        v /= p;
        ++n;
    }
    return n;
}

const Subgroup& lcs_term(const CharacteristicSubgroups& cs, int m) {
    // gamma_m for m >= 1; past the end the series is trivial.
    int idx = std::min<int>(m - 1, static_cast<int>(cs.lower_central.size()) - 1);
    return cs.lower_central[idx];
}

// Pair test: b^{-p} a^{-p} (ab)^p must lie in the subgroup generated by the
// p-th powers of gamma_2(<a, b>).
class RegularityTester {
public:
    RegularityTester(const PcGroup& g, int p) : g_(g), p_(p) {}

    bool pair_ok(std::uint64_t a, std::uint64_t b) {
        std::uint64_t s = g_.mul(g_.mul(g_.inv(g_.pow(b, p_)), g_.inv(g_.pow(a, p_))), g_.pow(g_.mul(a, b), p_));
        if (s == 0) return true;
        std::vector<NormalWord> ab{g_.decode(a), g_.decode(b)};
        Subgroup d = g_.subgroup({g_.decode(g_.comm(a, b))}, true, &ab);
        auto it = memo_.find(d.elements);
        if (it == memo_.end()) it = memo_.emplace(d.elements, g_.power_subgroup(d, p_)).first;
        return it->second.contains(s);
    }

private:
    const PcGroup& g_;
    int p_;
    std::map<std::vector<std::uint64_t>, Subgroup> memo_;
};

}  // namespace

GroupFlags classify(const PcGroup& g, const CharacteristicSubgroups& cs) {
    auto pr = g.prime();
    if (!pr) throw std::runtime_error("group '" + g.name() + "' is not a p-group presentation");
    const int p = *pr;
    GroupFlags f;
    f.prime = p;
    f.nilpotency_class = static_cast<int>(cs.lower_central.size()) - 1;
    f.derived_length = static_cast<int>(cs.derived.size()) - 1;
    f.exponent = g.exponent();
    const Subgroup& gamma2 = lcs_term(cs, 2);
    f.is_powerful = gamma2.subset_of(p == 2 ? cs.power_4 : cs.power_p);
    for (int m = 2; m <= p - 1; ++m)
        if (lcs_term(cs, m).subset_of(cs.power_p)) {
            f.condition1_m = m;
            break;
        }
    f.condition2 = lcs_term(cs, p).subset_of(cs.power_p2);
    f.central_pn = log_p(g.exponent(&cs.center), p);
    f.is_metabelian = f.derived_length <= 2;

    RegularityTester tester(g, p);
    const std::uint64_t n = g.order();
    if (n <= kRegularExhaustiveLimit) {
        f.regular_exhaustive = true;
        f.is_regular = Tri::yes;
        for (std::uint64_t a = 0; a < n && f.is_regular == Tri::yes; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                ++f.regular_pairs_tested;
                if (!tester.pair_ok(a, b)) {
                    f.is_regular = Tri::no;
                    break;
                }
            }
    } else {
        std::mt19937_64 rng(0x5eed0000ULL + n);
        std::uniform_int_distribution<std::uint64_t> pick(0, n - 1);
        f.is_regular = Tri::unknown;
        for (std::uint64_t t = 0; t < kRegularSamplePairs; ++t) {
            ++f.regular_pairs_tested;
            if (!tester.pair_ok(pick(rng), pick(rng))) {
                f.is_regular = Tri::no;
                break;
            }
        }
    }
    return f;
}

GroupFlags classify(const PcGroup& g) { return classify(g, characteristic_subgroups(g)); }

std::vector<std::uint64_t> abelianization_invariants(const PcGroup& g, const Subgroup& gamma2) {
    auto pr = g.prime();
    if (!pr) throw std::runtime_error("abelianization invariants need a p-group");
    const int p = *pr;
    std::vector<std::uint64_t> count;  // count[j]: elements whose coset has order p^j
    for (std::uint64_t x : g.enumerate()) {
        int j = 0;
        std::uint64_t y = x;
        while (!gamma2.contains(y)) {
            y = g.pow(y, p);
            ++j;
        }
        if (count.size() <= static_cast<size_t>(j)) count.resize(j + 1, 0);
        ++count[j];
    }
    // N_j = log_p #(cosets of order dividing p^j) = sum_i min(j, e_i).
    std::vector<int> N(count.size(), 0);
    std::uint64_t acc = 0;
    for (size_t j = 0; j < count.size(); ++j) {
        acc += count[j];
        N[j] = log_p(acc / gamma2.order(), p);
    }
    std::vector<std::uint64_t> inv;
    for (size_t j = 1; j < N.size(); ++j) {
        int at_least_j = N[j] - N[j - 1];
        int at_least_next = j + 1 < N.size() ? N[j + 1] - N[j] : 0;
        std::uint64_t q = 1;
        for (size_t t = 0; t < j; ++t) q *= p;
        for (int t = 0; t < at_least_j - at_least_next; ++t) inv.push_back(q);
    }
    std::sort(inv.begin(), inv.end());
    return inv;
}

}  // namespace schurlab

#include <algorithm>
#include <set>
#include <sstream>

#include "schurlab/pcgroup.hpp"

namespace schurlab {

namespace {

std::string show(const PcGroup& g, std::uint64_t x) {
    std::string s = format_word(g.decode(x));
    return s.empty() ? "1" : s;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

int log_base(std::uint64_t v, int p) {
    int n = 0;
    while (v > 1) {
        v /= p;
        ++n;
    }
    return n;
}

long long binom_ll(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (long long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

// Powers p^1 .. p^(N+1) where p^N is the exponent; beyond that every
// statement is about trivial elements.
std::vector<long long> prime_powers(const GroupFlags& f) {
    std::vector<long long> qs;
    int N = log_base(f.exponent, f.prime);
    for (int n = 1; n <= std::max(1, N + 1); ++n) qs.push_back(ipow(f.prime, n));
    return qs;
}

SuiteOutcome regular_power_laws(const PcGroup& g, const GroupFlags& f) {
    SuiteOutcome s{"regular-power-laws", true, true, ""};
    const std::uint64_t n = g.order();
    std::vector<std::uint64_t> ord(n);
    for (std::uint64_t x = 0; x < n; ++x) ord[x] = g.element_order_code(x);
    std::uint64_t cases = 0;
    for (long long q : prime_powers(f)) {
        std::vector<std::uint64_t> pw(n);
        for (std::uint64_t x = 0; x < n; ++x) pw[x] = g.pow(x, q);
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                ++cases;
                bool c1 = g.pow(g.comm(b, a), q) == 0;
                bool c2 = g.comm(b, pw[a]) == 0;
                bool c3 = g.comm(pw[b], a) == 0;
                if (c1 != c2 || c2 != c3) {
                    s.passed = false;
                    s.detail = "commutator-power equivalence fails for a=" + show(g, a) + ", b=" + show(g, b) +
                               ", q=" + std::to_string(q);
                    return s;
                }
                bool eq = pw[a] == pw[b];
                bool quot = g.pow(g.mul(a, g.inv(b)), q) == 0;
                if (eq != quot) {
                    s.passed = false;
                    s.detail = "equal-powers criterion fails for a=" + show(g, a) + ", b=" + show(g, b) +
                               ", q=" + std::to_string(q);
                    return s;
                }
            }
    }
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            ++cases;
            if (ord[g.mul(a, b)] > std::max(ord[a], ord[b])) {
                s.passed = false;
                s.detail = "product order exceeds factor orders for a=" + show(g, a) + ", b=" + show(g, b);
                return s;
            }
        }
    s.detail = std::to_string(cases) + " cases";
    return s;
}

SuiteOutcome regular_product_powers(const PcGroup& g, const GroupFlags& f) {
    SuiteOutcome s{"regular-product-powers", true, true, ""};
    const std::uint64_t n = g.order();
    std::uint64_t cases = 0;
    for (long long q : prime_powers(f)) {
        std::vector<std::uint64_t> pw(n);
        for (std::uint64_t x = 0; x < n; ++x) pw[x] = g.pow(x, q);
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                if (g.comm(b, pw[a]) != 0) continue;
                ++cases;
                if (pw[g.mul(a, b)] != g.mul(pw[a], pw[b])) {
                    s.passed = false;
                    s.detail = "(ab)^q != a^q b^q for a=" + show(g, a) + ", b=" + show(g, b) + ", q=" + std::to_string(q);
                    return s;
                }
            }
    }
    s.detail = std::to_string(cases) + " cases";
    return s;
}

SuiteOutcome class_p_commutator_powers(const PcGroup& g, const GroupFlags& f) {
    SuiteOutcome s{"class-p-commutator-powers", true, true, ""};
    const std::uint64_t n = g.order();
    std::uint64_t cases = 0;
    for (long long q : prime_powers(f)) {
        std::vector<std::uint64_t> pw(n);
        for (std::uint64_t x = 0; x < n; ++x) pw[x] = g.pow(x, q);
        for (std::uint64_t a = 0; a < n; ++a)
            for (std::uint64_t b = 0; b < n; ++b) {
                ++cases;
                bool c1 = g.pow(g.comm(b, a), q) == 0;
                bool c2 = g.comm(b, pw[a]) == 0;
                bool c3 = g.comm(pw[b], a) == 0;
                if (c1 != c2 || c2 != c3) {
                    s.passed = false;
                    s.detail = "commutator-power conditions disagree for a=" + show(g, a) + ", b=" + show(g, b) +
                               ", q=" + std::to_string(q);
                    return s;
                }
            }
    }
    s.detail = std::to_string(cases) + " cases";
    return s;
}

SuiteOutcome class_p_commutator_orders(const PcGroup& g, const CharacteristicSubgroups& cs) {
    SuiteOutcome s{"class-p-commutator-orders", true, true, ""};
    const std::uint64_t n = g.order();
    std::vector<std::uint64_t> gens;
    for (int i = 0; i < g.ngens(); ++i) gens.push_back(g.encode(g.generator(i)));
    std::uint64_t cases = 0;
    for (std::uint64_t a = 0; a < n; ++a) {
        std::uint64_t ordz = 1;
        for (std::uint64_t y = a; !cs.center.contains(y); y = g.mul(y, a)) ++ordz;
        // slot value: index 0 is a, index k >= 1 is generator k-1
        std::vector<std::uint64_t> slots{a};
        slots.insert(slots.end(), gens.begin(), gens.end());
        auto check = [&](std::uint64_t c, const std::string& shape) {
            ++cases;
            if (g.element_order_code(c) > ordz) {
                s.passed = false;
                s.detail = "commutator " + shape + " with a=" + show(g, a) + " has order above " + std::to_string(ordz);
                return false;
            }
            return true;
        };
        for (size_t x = 0; x < slots.size(); ++x)
            for (size_t y = 0; y < slots.size(); ++y) {
                if (x != 0 && y != 0) continue;
                if (!check(g.comm(slots[x], slots[y]), "of weight 2")) return s;
            }
        for (size_t x = 0; x < slots.size(); ++x)
            for (size_t y = 0; y < slots.size(); ++y)
                for (size_t z = 0; z < slots.size(); ++z) {
                    if (x != 0 && y != 0 && z != 0) continue;
                    if (!check(g.comm(slots[x], g.comm(slots[y], slots[z])), "of weight 3")) return s;
                }
    }
    s.detail = std::to_string(cases) + " cases";
    return s;
}

SuiteOutcome commutator_chain_3groups(const PcGroup& g, const GroupFlags& f) {
    SuiteOutcome s{"class-4-commutator-chain", true, true, ""};
    const std::uint64_t n = g.order();
    const int p = f.prime;
    std::uint64_t cases = 0;
    std::vector<long long> qs = prime_powers(f);
    for (std::uint64_t a = 0; a < n; ++a)
        for (std::uint64_t b = 0; b < n; ++b) {
            std::vector<long long> good;
            for (long long q : qs)
                if (g.comm(b, g.pow(a, q)) == 0) good.push_back(q);
            if (good.empty()) continue;
            Subgroup h = g.subgroup({g.decode(a), g.decode(b)}, false);
            for (std::uint64_t x : h.elements) {
                std::uint64_t ha = g.comm(x, a);
                std::uint64_t chain = ha;
                for (int t = 0; t < p - 1; ++t) chain = g.comm(a, chain);
                for (long long q : good) {
                    ++cases;
                    long long e = binom_ll(q, p);
                    std::uint64_t v = g.mul(g.pow(chain, e), g.pow(ha, q));
                    if (v != 0) {
                        s.passed = false;
                        s.detail = "chain identity fails for a=" + show(g, a) + ", b=" + show(g, b) +
                                   ", h=" + show(g, x) + ", q=" + std::to_string(q);
                        return s;
                    }
                }
            }
        }
    s.detail = std::to_string(cases) + " cases";
    return s;
}

SuiteOutcome power_set(const PcGroup& g, const CharacteristicSubgroups& cs, const GroupFlags& f) {
    SuiteOutcome s{"power-set", true, true, ""};
    std::set<std::uint64_t> powers;
    for (std::uint64_t x : g.enumerate()) powers.insert(g.pow(x, f.prime));
    std::vector<std::uint64_t> pv(powers.begin(), powers.end());
    if (pv != cs.power_p.elements) {
        s.passed = false;
        s.detail = "set of p-th powers has " + std::to_string(pv.size()) + " elements, subgroup has " +
                   std::to_string(cs.power_p.order());
        return s;
    }
    const Subgroup& h = cs.power_p;
    Subgroup d = g.commutator_subgroup(h, h, h.generators);
    Subgroup hp = g.power_subgroup(h, f.prime == 2 ? 4 : f.prime);
    if (!d.subset_of(hp)) {
        s.passed = false;
        s.detail = "power subgroup is not powerful";
        return s;
    }
    s.detail = "|G^p| = " + std::to_string(h.order());
    return s;
}

}  // namespace

std::vector<SuiteOutcome> run_structural_suites(const PcGroup& g, const CharacteristicSubgroups& cs,
                                                const GroupFlags& f) {
    std::vector<SuiteOutcome> out;
    const bool small = g.order() <= kSuiteOrderLimit;
    const bool regular = f.is_regular == Tri::yes;
    const bool class_p = f.nilpotency_class == f.prime;

    if (regular && small) {
        out.push_back(regular_power_laws(g, f));
        out.push_back(regular_product_powers(g, f));
    }
    if (class_p && small) {
        out.push_back(class_p_commutator_powers(g, f));
        out.push_back(class_p_commutator_orders(g, cs));
    }
    if (f.prime == 3 && f.nilpotency_class <= 4 && small) out.push_back(commutator_chain_3groups(g, f));
    if (regular || f.condition1_m || f.condition2) out.push_back(power_set(g, cs, f));
    return out;
}

}  // namespace schurlab

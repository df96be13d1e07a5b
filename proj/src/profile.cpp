#include <algorithm>

#include "schurlab/verifier.hpp"

namespace schurlab {

const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::passed: return "passed";
        case CheckStatus::failed: return "failed";
        case CheckStatus::skipped: return "skipped";
    }
    return "?";
}

namespace {

std::vector<mpz_class> nontrivial_sorted(std::vector<mpz_class> v) {
    v.erase(std::remove_if(v.begin(), v.end(), [](const mpz_class& x) { return x <= 1; }), v.end());
    std::sort(v.begin(), v.end());
    return v;
}

void bar_cross_check(GroupProfile& prof, const PcGroup& g, const ProfileCaps& caps) {
    if (g.order() > caps.oracle_cap) {
        prof.bar_note = "skipped(oracle cap " + std::to_string(caps.oracle_cap) + ")";
        return;
    }
    MultiplicationTable t = multiplication_table(g);
    AbelianInvariants h1 = bar_homology(t, 1, caps.oracle_cap);
    std::vector<mpz_class> ab;
    for (auto x : prof.abelianization) ab.push_back(mpz_class(static_cast<unsigned long>(x)));
    if (h1.free_rank != 0 || nontrivial_sorted(h1.torsion) != nontrivial_sorted(ab)) {
        prof.bar_check = CheckStatus::failed;
        prof.bar_note = "bar H1 " + h1.to_string() + " differs from the abelianization";
        return;
    }
    if (!prof.multiplier) {
        prof.bar_note = "skipped(no tails multiplier)";
        return;
    }
    AbelianInvariants h2 = bar_homology(t, 2, caps.oracle_cap);
    if (h2 != *prof.multiplier) {
        prof.bar_check = CheckStatus::failed;
        prof.bar_note = "bar H2 " + h2.to_string() + " differs from tails " + prof.multiplier->to_string();
        return;
    }
    prof.bar_check = CheckStatus::passed;
    prof.bar_note = "bar H1 and H2 agree";
}

}  // namespace

GroupProfile profile(const PcPresentation& p, const ProfileCaps& caps) {
    if (caps.oracle_cap > kBarMaxCap)
        throw std::invalid_argument("oracle cap above " + std::to_string(kBarMaxCap));
    GroupProfile prof;
    prof.name = p.name;
    auto prime = p.common_prime();
    if (!prime) throw std::invalid_argument("group '" + p.name + "' is not a p-group presentation");
    prof.prime = *prime;
    for (int o : p.relative_orders) {
        if (prof.order > caps.max_order) break;
        prof.order *= static_cast<std::uint64_t>(o);
    }

    try {
        prof.multiplier = schur_multiplier(p, MultiplierMethod::tails);
    } catch (const MultiplierError& e) {
        prof.multiplier_error = e.what();
    }
    if (prof.order > caps.max_order) {
        prof.skipped = "order above max-order " + std::to_string(caps.max_order);
        prof.exterior_note = "skipped(cap)";
        prof.bar_note = "skipped(cap)";
        return prof;
    }

    PcGroup g(p, caps.max_order);
    CharacteristicSubgroups cs = characteristic_subgroups(g);
    prof.flags = classify(g, cs);
    prof.exponent = prof.flags.exponent;
    prof.center_quotient_exponent = g.exponent(&cs.center);
    for (const auto& gamma : cs.lower_central) {
        prof.gamma_exponents.push_back(g.exponent_of(gamma));
        prof.gamma_quotient_exponents.push_back(g.exponent(&gamma));
    }
    prof.gamma2_exponent = cs.lower_central.size() > 1 ? prof.gamma_exponents[1] : 1;
    prof.abelianization = abelianization_invariants(g, cs.lower_central.size() > 1 ? cs.lower_central[1] : g.trivial());

    try {
        CoverResult cover = schur_cover(p, caps.max_order);
        prof.exterior_exponent = cover.exterior_exponent;
    } catch (const CapExceeded&) {
        prof.exterior_note = "skipped(cap)";
    } catch (const MultiplierError& e) {
        prof.exterior_note = std::string("error: ") + e.what();
    }

    bar_cross_check(prof, g, caps);
    prof.suites = run_structural_suites(g, cs, prof.flags);
    return prof;
}

}  // namespace schurlab

#include <functional>

#include "schurlab/verifier.hpp"

namespace schurlab {

const char* to_string(RuleStatus s) {
    switch (s) {
        case RuleStatus::holds: return "holds";
        case RuleStatus::violated: return "violated";
        case RuleStatus::not_applicable: return "not_applicable";
        case RuleStatus::skipped: return "skipped";
    }
    return "?";
}

std::vector<std::string> rule_ids() {
    std::vector<std::string> ids;
    for (int k = 1; k <= 14; ++k) ids.push_back("R" + std::to_string(k));
    return ids;
}

std::string rule_title(const std::string& id) {
    static const std::map<std::string, std::string> titles = {
        {"R1", "class p: e(gamma_2(G)) | e(G/Z)"},
        {"R2", "p odd, class <= p+1, p^n-central: e(gamma_2(G)) | p^n"},
        {"R3", "p odd, class <= p: e(G^G) | e(G)"},
        {"R4", "p odd, class 5: e(G^G) | e(G)"},
        {"R5", "p odd, powerful: e(G^G) | e(G)"},
        {"R6", "p odd, condition (1) or (2): e(G^G) | e(G)"},
        {"R7", "class > 1, e(G) odd: e(G^G) | e(G)^ceil(log3((c+1)/2))"},
        {"R8", "p odd, m = ceil((c+1)/3) <= p+1: e(G^G) | e(gamma_m) e(G/gamma_m)"},
        {"R9", "p odd: e(G^G) | e(G)^ceil(log_{p-1}(c+1))"},
        {"R10", "p odd, class c >= p: e(G^G) | e(G)^(1+ceil(log_{p-1}((c+1)/(p+1))))"},
        {"R11", "p-central metabelian: e(M) | e(G)"},
        {"R12", "derived length d: e(M) | e(G)^d, times 2^(d-1) for even exponent"},
        {"R13", "e(M) | p e(G)"},
        {"R14", "structural suites"},
    };
    auto it = titles.find(id);
    if (it == titles.end()) throw std::invalid_argument("unknown rule '" + id + "'");
    return it->second;
}

namespace {

mpz_class big(std::uint64_t x) { return mpz_class(static_cast<unsigned long>(x)); }

mpz_class ipow(std::uint64_t base, int k) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(base), static_cast<unsigned long>(k));
    return r;
}

RuleResult divides(const std::string& id, const std::string& lhs_label, const mpz_class& lhs,
                   const std::string& rhs_label, const mpz_class& rhs) {
    RuleResult r{id, RuleStatus::holds, ""};
    bool ok = mpz_divisible_p(rhs.get_mpz_t(), lhs.get_mpz_t()) != 0;
    r.status = ok ? RuleStatus::holds : RuleStatus::violated;
    r.witness = lhs_label + " = " + lhs.get_str() + (ok ? " divides " : " does not divide ") + rhs_label + " = " +
                rhs.get_str();
    return r;
}

RuleResult not_applicable(const std::string& id, const std::string& why) {
    return {id, RuleStatus::not_applicable, why};
}

RuleResult skipped(const std::string& id, const std::string& why) { return {id, RuleStatus::skipped, why}; }

struct Context {
    const GroupProfile& g;
    int p, c, d;
    bool odd_p;
};

// exterior-square rules share the skip handling
RuleResult exterior_rule(const std::string& id, const Context& x, const std::string& rhs_label, const mpz_class& rhs) {
    if (!x.g.exterior_exponent) return skipped(id, "exterior exponent " + x.g.exterior_note);
    return divides(id, "e(G^G)", big(*x.g.exterior_exponent), rhs_label, rhs);
}

RuleResult multiplier_rule(const std::string& id, const Context& x, const std::string& rhs_label,
                           const mpz_class& rhs) {
    if (!x.g.multiplier) return skipped(id, "multiplier unavailable: " + x.g.multiplier_error);
    return divides(id, "e(M)", x.g.multiplier->exponent(), rhs_label, rhs);
}

RuleResult evaluate(const std::string& id, const Context& x) {
    const GroupProfile& g = x.g;
    const std::string odd = "p = " + std::to_string(x.p) + " is not odd";
    const std::string e = "e(G)";
    if (id == "R1") {
        if (x.c != x.p) return not_applicable(id, "class " + std::to_string(x.c) + " != p");
        return divides(id, "e(gamma_2)", big(g.gamma2_exponent), "e(G/Z)", big(g.center_quotient_exponent));
    }
    if (id == "R2") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (x.c > x.p + 1) return not_applicable(id, "class " + std::to_string(x.c) + " > p+1");
        int n = g.flags.central_pn;
        return divides(id, "e(gamma_2)", big(g.gamma2_exponent), "p^" + std::to_string(n), ipow(x.p, n));
    }
    if (id == "R3") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (x.c > x.p) return not_applicable(id, "class " + std::to_string(x.c) + " > p");
        return exterior_rule(id, x, e, big(g.exponent));
    }
    if (id == "R4") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (x.c != 5) return not_applicable(id, "class " + std::to_string(x.c) + " != 5");
        return exterior_rule(id, x, e, big(g.exponent));
    }
    if (id == "R5") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (!g.flags.is_powerful) return not_applicable(id, "not powerful");
        return exterior_rule(id, x, e, big(g.exponent));
    }
    if (id == "R6") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (!g.flags.condition1_m && !g.flags.condition2) return not_applicable(id, "neither condition (1) nor (2)");
        return exterior_rule(id, x, e, big(g.exponent));
    }
    if (id == "R7") {
        if (x.c < 2) return not_applicable(id, "class < 2");
        if (g.exponent % 2 == 0) return not_applicable(id, "e(G) even");
        int n = odd_exponent_class_bound(x.c);
        return exterior_rule(id, x, "e(G)^" + std::to_string(n), ipow(g.exponent, n));
    }
    if (id == "R8") {
        if (!x.odd_p) return not_applicable(id, odd);
        int m = (x.c + 1 + 2) / 3;
        if (m > x.p + 1) return not_applicable(id, "m = " + std::to_string(m) + " > p+1");
        mpz_class rhs = big(g.gamma_exponents.at(m - 1)) * big(g.gamma_quotient_exponents.at(m - 1));
        return exterior_rule(id, x, "e(gamma_" + std::to_string(m) + ") e(G/gamma_" + std::to_string(m) + ")", rhs);
    }
    if (id == "R9") {
        if (!x.odd_p) return not_applicable(id, odd);
        int n = normal_class_bound(x.c, x.p);
        return exterior_rule(id, x, "e(G)^" + std::to_string(n), ipow(g.exponent, n));
    }
    if (id == "R10") {
        if (!x.odd_p) return not_applicable(id, odd);
        if (x.c < x.p) return not_applicable(id, "class " + std::to_string(x.c) + " < p");
        int n = large_class_bound(x.c, x.p);
        return exterior_rule(id, x, "e(G)^" + std::to_string(n), ipow(g.exponent, n));
    }
    if (id == "R11") {
        if (g.flags.central_pn > 1) return not_applicable(id, "not p-central");
        if (!g.flags.is_metabelian) return not_applicable(id, "not metabelian");
        return multiplier_rule(id, x, e, big(g.exponent));
    }
    if (id == "R12") {
        if (x.d < 1) return not_applicable(id, "trivial group");
        DerivedLengthBound b = derived_length_bound(x.d, g.exponent % 2 == 1);
        std::string label = "e(G)^" + std::to_string(b.exponent_power);
        if (b.two_power) label = "2^" + std::to_string(b.two_power) + " " + label;
        return multiplier_rule(id, x, label, ipow(2, b.two_power) * ipow(g.exponent, b.exponent_power));
    }
    if (id == "R13") return multiplier_rule(id, x, "p e(G)", big(g.exponent) * x.p);
    if (id == "R14") {
        std::string applied, failed;
        for (const auto& s : g.suites) {
            if (!s.applicable) continue;
            applied += (applied.empty() ? "" : ", ") + s.suite;
            if (!s.passed) failed += (failed.empty() ? "" : "; ") + s.suite + ": " + s.detail;
        }
        if (applied.empty()) return not_applicable(id, "no suite applies");
        if (!failed.empty()) return {id, RuleStatus::violated, failed};
        return {id, RuleStatus::holds, "passed: " + applied};
    }
    throw std::invalid_argument("unknown rule '" + id + "'");
}

}  // namespace

TheoremReport evaluate_rules(const GroupProfile& profile) {
    TheoremReport rep;
    Context x{profile, profile.prime, profile.flags.nilpotency_class, profile.flags.derived_length,
              profile.prime % 2 == 1};
    for (const auto& id : rule_ids()) {
        if (profile.skipped) rep.rules.push_back(skipped(id, *profile.skipped));
        else rep.rules.push_back(evaluate(id, x));
    }
    if (!profile.skipped && profile.flags.is_regular == Tri::yes) {
        if (profile.exterior_exponent) {
            bool ok = profile.exponent % *profile.exterior_exponent == 0;
            rep.observation = "regular: e(G^G) = " + std::to_string(*profile.exterior_exponent) +
                              (ok ? " divides" : " does not divide") + " e(G) = " + std::to_string(profile.exponent);
        } else {
            rep.observation = "regular: e(G^G) " + profile.exterior_note;
        }
    }
    return rep;
}

}  // namespace schurlab

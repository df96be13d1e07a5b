#include <gtest/gtest.h>

#include "schurlab/catalog.hpp"
#include "schurlab/verifier.hpp"

using namespace schurlab;

namespace {

const PcPresentation& bundled(const std::string& name) { return find_entry(load_bundled(), name)->presentation; }

const RuleResult& rule(const TheoremReport& r, const std::string& id) {
    for (const auto& x : r.rules)
        if (x.id == id) return x;
    throw std::runtime_error("no rule " + id);
}

// smallest k with b^k >= x, by repeated multiplication in doubles (exact for
// the small values used here)
int ceil_log_reference(double b, double x) {
    int k = 0;
    for (double acc = 1; acc < x - 1e-12; acc *= b) ++k;
    return k;
}

}  // namespace

TEST(Bounds, IntegerLogs) {
    EXPECT_EQ(ceil_log_ratio(3, 4, 2), 1);
    EXPECT_EQ(ceil_log_ratio(3, 18, 2), 2);  // (17+1)/2 = 9 = 3^2 exactly
    EXPECT_EQ(ceil_log_ratio(4, 25, 6), 2);
    EXPECT_EQ(floor_log(2, 161), 7);
    EXPECT_EQ(floor_log(12, 168), 2);
    EXPECT_THROW(ceil_log_ratio(1, 4, 2), std::domain_error);
    EXPECT_THROW(floor_log(2, 0), std::domain_error);
    for (int c = 2; c <= 400; ++c) {
        EXPECT_EQ(odd_exponent_class_bound(c), ceil_log_reference(3, (c + 1) / 2.0)) << c;
        for (int p : {3, 5, 7, 13})
            if (c >= p) EXPECT_EQ(large_class_bound(c, p), 1 + ceil_log_reference(p - 1, (c + 1.0) / (p + 1))) << c;
    }
}

TEST(Bounds, PrintedExamples) {
    EXPECT_EQ(odd_exponent_class_bound(17), 2);
    BoundsRow r = bounds(3, 3, 1, 2, true);
    EXPECT_EQ(r.ellis, 2);
    EXPECT_EQ(r.moravec, 2);
    EXPECT_EQ(r.odd_exponent, 1);
    EXPECT_EQ(bounds(5, 3, 1, 2, true).large_class, 2);
    EXPECT_EQ(bounds(53, 3, 1, 2, true).odd_exponent, 3);
    EXPECT_FALSE(bounds(4, 5, 1, 2, true).large_class.has_value());
    EXPECT_THROW(bounds(1, 3, 1, 1, true), std::domain_error);
    EXPECT_THROW(large_class_bound(2, 3), std::domain_error);
    EXPECT_THROW(sambonet_bound(5, 2), std::domain_error);
    DerivedLengthBound d = derived_length_bound(3, false);
    EXPECT_EQ(d.exponent_power, 3);
    EXPECT_EQ(d.two_power, 2);
}

TEST(Tables, ClassBoundsMatchPrintedRows) {
    auto rows = class_bounds_table();
    ASSERT_EQ(rows.size(), 7u);
    for (const auto& r : rows) EXPECT_TRUE(r.matches()) << r.c;
    EXPECT_EQ(rows[5].c, 53);
    EXPECT_EQ(rows[5].ellis, 27);
    EXPECT_EQ(rows[5].moravec, 10);
    EXPECT_EQ(rows[5].odd_exponent, 3);
}

TEST(Tables, PrimeBoundsAndFlaggedRows) {
    for (const auto& r : prime_bounds_table()) {
        EXPECT_TRUE(r.sambonet_matches()) << r.c << "," << r.p;
        bool flagged = (r.c == 24 && r.p == 5) || (r.c == 168 && r.p == 13);
        EXPECT_EQ(r.large_class_matches(), !flagged) << r.c << "," << r.p;
        if (flagged) {
            EXPECT_EQ(r.large_class_power, 3);
            EXPECT_EQ(r.printed_large_class_power, 2);
        }
        if (r.c == 7) EXPECT_EQ(r.large_class_power, 1);
    }
    std::string text = format_tables();
    EXPECT_NE(text.find("formula gives 5^3, printed 5^2"), std::string::npos);
    EXPECT_NE(text.find("formula gives 13^3, printed 13^2"), std::string::npos);
}

TEST(Profile, Heisenberg) {
    GroupProfile p = profile(bundled("heisenberg_3"));
    EXPECT_EQ(p.order, 27u);
    EXPECT_EQ(p.flags.nilpotency_class, 2);
    EXPECT_EQ(p.exponent, 3u);
    EXPECT_EQ(p.multiplier->to_string(), "[3,3]");
    EXPECT_EQ(p.exterior_exponent, 3u);
    EXPECT_EQ(p.bar_check, CheckStatus::passed);
}

TEST(Profile, CyclicAndDihedral) {
    GroupProfile c9 = profile(bundled("cyclic_9"));
    EXPECT_EQ(c9.flags.nilpotency_class, 1);
    EXPECT_TRUE(c9.multiplier->torsion.empty());
    EXPECT_EQ(c9.exterior_exponent, 1u);
    GroupProfile d8 = profile(bundled("dihedral_8"));
    EXPECT_EQ(d8.flags.nilpotency_class, 2);
    EXPECT_EQ(d8.exponent, 4u);
    EXPECT_EQ(d8.multiplier->to_string(), "[2]");
    EXPECT_EQ(d8.exterior_exponent, 4u);
}

TEST(Profile, CapsMarkFieldsSkipped) {
    ProfileCaps caps;
    caps.max_order = 64;
    GroupProfile big = profile(bundled("dihedral_128"), caps);
    EXPECT_TRUE(big.skipped.has_value());
    EXPECT_FALSE(big.exterior_exponent.has_value());
    for (const auto& r : evaluate_rules(big).rules) EXPECT_EQ(r.status, RuleStatus::skipped);
    caps.max_order = 16;
    GroupProfile d8 = profile(bundled("dihedral_8"), caps);  // cover of order 16 still fits
    EXPECT_EQ(d8.exterior_exponent, 4u);
    GroupProfile q16 = profile(bundled("elementary_2_4"), caps);  // cover needs 2^10
    EXPECT_FALSE(q16.exterior_exponent.has_value());
    EXPECT_EQ(q16.exterior_note, "skipped(cap)");
    EXPECT_EQ(rule(evaluate_rules(q16), "R13").status, RuleStatus::holds);
}

TEST(Rules, Examples) {
    TheoremReport h = evaluate_rules(profile(bundled("heisenberg_3")));
    EXPECT_EQ(rule(h, "R3").status, RuleStatus::holds);
    EXPECT_NE(rule(h, "R3").witness.find("3 divides e(G) = 3"), std::string::npos);
    EXPECT_TRUE(h.observation.has_value());
    TheoremReport v4 = evaluate_rules(profile(bundled("elementary_2_2")));
    EXPECT_EQ(rule(v4, "R13").status, RuleStatus::holds);
    EXPECT_NE(rule(v4, "R13").witness.find("e(M) = 2 divides p e(G) = 4"), std::string::npos);
    TheoremReport d8 = evaluate_rules(profile(bundled("dihedral_8")));
    EXPECT_EQ(rule(d8, "R4").status, RuleStatus::not_applicable);
    EXPECT_EQ(rule(d8, "R1").status, RuleStatus::holds);
}

TEST(Rules, PureInTheProfile) {
    GroupProfile p = profile(bundled("wreath_3_3"));
    TheoremReport a = evaluate_rules(p), b = evaluate_rules(p);
    ASSERT_EQ(a.rules.size(), b.rules.size());
    for (size_t k = 0; k < a.rules.size(); ++k) {
        EXPECT_EQ(a.rules[k].status, b.rules[k].status);
        EXPECT_EQ(a.rules[k].witness, b.rules[k].witness);
    }
}

TEST(Rules, FabricatedViolationIsReported) {
    GroupProfile p = profile(bundled("heisenberg_3"));
    p.exterior_exponent = 9;  // not a real group; checks the reporting path only
    TheoremReport r = evaluate_rules(p);
    EXPECT_EQ(rule(r, "R3").status, RuleStatus::violated);
    EXPECT_NE(rule(r, "R3").witness.find("does not divide"), std::string::npos);
}

TEST(Run, SelectionStrictAndExitCodes) {
    std::vector<CatalogEntry> few;
    for (const char* n : {"heisenberg_3", "dihedral_8", "cyclic_9"}) few.push_back(*find_entry(load_bundled(), n));
    RunConfig cfg;
    cfg.rules = {"R13", "R3"};
    RunResult r = run(few, cfg);
    EXPECT_EQ(r.exit_code, 0);
    EXPECT_EQ(r.groups.front().profile.name, "cyclic_9");
    EXPECT_EQ(r.groups.front().report.rules.size(), 2u);
    cfg.strict = true;
    cfg.caps.oracle_cap = 0;
    EXPECT_EQ(run(few, cfg).exit_code, 3);
    cfg.rules = {"R77"};
    EXPECT_THROW(run(few, cfg), std::invalid_argument);
    cfg.rules = {};
    cfg.caps.oracle_cap = 100;
    EXPECT_THROW(run(few, cfg), std::invalid_argument);
}

TEST(Run, ParallelOutputIsIdentical) {
    std::vector<CatalogEntry> some;
    for (const auto& e : load_bundled())
        if (e.presentation.ngens <= 4) some.push_back(e);
    RunConfig one, many;
    many.jobs = 4;
    EXPECT_EQ(format_run(run(some, one), OutputFormat::json), format_run(run(some, many), OutputFormat::json));
    std::string csv = format_run(run(some, one), OutputFormat::csv);
    EXPECT_EQ(csv.rfind("group,order,rule,status,witness\n", 0), 0u);
}

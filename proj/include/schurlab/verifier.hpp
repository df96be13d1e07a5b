#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "schurlab/catalog.hpp"
#include "schurlab/multiplier.hpp"
#include "schurlab/pcgroup.hpp"

namespace schurlab {

// ---- bound functions, exact integer logs ----

// Smallest k >= 0 with base^k * den >= num.  Needs base >= 2, num >= den > 0.
int ceil_log_ratio(long long base, long long num, long long den);
// Largest k with base^k <= x.  Needs base >= 2, x >= 1.
int floor_log(long long base, long long x);

int ellis_bound(int c);                   // ceil(c/2)
int moravec_bound(int c);                 // 2 floor(log2 c)
int odd_exponent_class_bound(int c);      // ceil(log3((c+1)/2)), c > 1
int sambonet_bound(int c, int p);         // floor(log_{p-1} c) + 1, p odd
int normal_class_bound(int c, int p);     // ceil(log_{p-1}(c+1)), p odd
int large_class_bound(int c, int p);      // 1 + ceil(log_{p-1}((c+1)/(p+1))), p odd, c >= p

struct DerivedLengthBound {
    int exponent_power = 0;  // e(G)^d
    int two_power = 0;       // extra 2^{d-1} when e(G) is even
};
DerivedLengthBound derived_length_bound(int d, bool exponent_odd);

struct BoundsRow {
    int c = 0, p = 0, n = 0, d = 0;
    int ellis = 0, moravec = 0;
    std::optional<int> odd_exponent;  // needs c > 1
    std::optional<int> sambonet;      // needs p odd
    std::optional<int> large_class;   // needs p odd and c >= p
    DerivedLengthBound derived;
};
// Throws std::domain_error when c < 2.
BoundsRow bounds(int c, int p, int n, int d, bool exponent_odd);

struct ClassBoundsRow {
    int c;
    int ellis, moravec, odd_exponent;
    int printed_ellis, printed_moravec, printed_odd_exponent;
    bool matches() const {
        return ellis == printed_ellis && moravec == printed_moravec && odd_exponent == printed_odd_exponent;
    }
};

struct PrimeBoundsRow {
    int c, p, n;
    std::string moravec_printed;  // echoed; its constant is not available here
    int sambonet_power, large_class_power;  // computed, as powers of p
    int printed_sambonet_power, printed_large_class_power;
    bool sambonet_matches() const { return sambonet_power == printed_sambonet_power; }
    bool large_class_matches() const { return large_class_power == printed_large_class_power; }
};

std::vector<ClassBoundsRow> class_bounds_table();
std::vector<PrimeBoundsRow> prime_bounds_table();
std::string format_tables();

// ---- per-group profile ----

struct ProfileCaps {
    std::uint64_t max_order = kDefaultEnumerationCap;  // enumeration and cover
    std::uint64_t oracle_cap = kBarDefaultCap;         // bar cross-check
};

enum class CheckStatus { passed, failed, skipped };
const char* to_string(CheckStatus s);

struct GroupProfile {
    std::string name;
    std::uint64_t order = 1;
    int prime = 0;
    // set when the group itself is above max_order; only order and the
    // tails multiplier are filled in then
    std::optional<std::string> skipped;
    GroupFlags flags;
    std::uint64_t exponent = 1;
    std::uint64_t center_quotient_exponent = 1;  // e(G/Z)
    std::uint64_t gamma2_exponent = 1;
    // index m-1: e(gamma_m(G)) and e(G/gamma_m(G)), m = 1..c+1
    std::vector<std::uint64_t> gamma_exponents, gamma_quotient_exponents;
    std::vector<std::uint64_t> abelianization;
    std::optional<AbelianInvariants> multiplier;
    std::string multiplier_error;
    std::optional<std::uint64_t> exterior_exponent;
    std::string exterior_note;  // reason when absent
    CheckStatus bar_check = CheckStatus::skipped;
    std::string bar_note;
    std::vector<SuiteOutcome> suites;
};

GroupProfile profile(const PcPresentation& p, const ProfileCaps& caps = {});

// ---- rules ----

enum class RuleStatus { holds, violated, not_applicable, skipped };
const char* to_string(RuleStatus s);

struct RuleResult {
    std::string id;  // R1..R14
    RuleStatus status = RuleStatus::not_applicable;
    std::string witness;  // the divisibility checked, or the reason
};

struct TheoremReport {
    std::vector<RuleResult> rules;           // R1..R14 in order
    std::optional<std::string> observation;  // regular groups only; never fails
};

std::vector<std::string> rule_ids();
std::string rule_title(const std::string& id);
TheoremReport evaluate_rules(const GroupProfile& profile);

// ---- catalog runs ----

enum class OutputFormat { text, json, csv };

struct RunConfig {
    std::vector<std::string> catalogs;  // extra files on top of the bundle
    std::vector<std::string> rules;     // empty means all
    ProfileCaps caps;
    bool strict = false;
    OutputFormat format = OutputFormat::text;
    unsigned jobs = 1;
};

struct GroupResult {
    GroupProfile profile;
    TheoremReport report;
};

struct RunResult {
    std::vector<GroupResult> groups;  // sorted by name
    std::map<std::string, std::map<RuleStatus, int>> summary;
    std::vector<std::string> vacuity_notes;
    int exit_code = 0;
};

// Input problems are thrown (CatalogError, InconsistentPresentation,
// std::invalid_argument); the caller maps them to exit code 2.
RunResult run(const std::vector<CatalogEntry>& entries, const RunConfig& config);
std::string format_run(const RunResult& r, OutputFormat format);

}  // namespace schurlab

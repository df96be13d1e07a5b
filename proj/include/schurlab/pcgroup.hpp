#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schurlab {

// Exponent tuple of a normal word g_1^e_1 ... g_n^e_n, 0 <= e_i < o_i.
using NormalWord = std::vector<int>;

struct Letter {
    int gen;        // 0-based generator index
    long long exp;  // any integer
};
using Word = std::vector<Letter>;

inline constexpr std::uint64_t kDefaultEnumerationCap = 200000;

// Catalog syntax or constraint error; line is 1-based (0 when unknown).
class CatalogError : public std::runtime_error {
public:
    CatalogError(int line, const std::string& msg);
    int line() const { return line_; }

private:
    int line_;
};

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct PcPresentation {
    std::string name;
    int ngens = 0;
    std::optional<int> prime;
    std::vector<int> relative_orders;
    // power_words[i]: right side of g_i^{o_i}, over indices > i.
    std::vector<NormalWord> power_words;
    // comm_words[j][i] (j > i): w_ji in g_j g_i = g_i g_j w_ji, over indices > j.
    std::vector<std::vector<NormalWord>> comm_words;
    int source_line = 0;

    static PcPresentation make(std::string name, std::vector<int> orders);
    void set_power(int i, NormalWord w);
    void set_comm(int j, int i, NormalWord w);
    bool is_trivial_word(const NormalWord& w) const;
    // Validates index constraints and primality; throws CatalogError.
    void validate() const;
    // The common prime when every relative order agrees.
    std::optional<int> common_prime() const;
};

std::vector<PcPresentation> parse_catalog(const std::string& text);
std::string format_presentation(const PcPresentation& p);
std::string format_word(const NormalWord& w);

bool is_prime(long long n);

struct ConsistencyViolation {
    char family;              // 'a', 'b', 'c' or 'd'
    std::vector<int> indices; // 1-based generator indices, as printed
    NormalWord left, right;
    std::string describe() const;
};

// Rewriting engine for a fixed presentation.  Tails, when requested, count
// applications of each relation: index i for power relation i, and
// n + comm_tail_index(j, i) for commutation relation (j, i).
class Collector {
public:
    explicit Collector(const PcPresentation& p);

    const PcPresentation& presentation() const { return *pres_; }
    int ngens() const { return pres_->ngens; }
    int tail_count() const;
    int power_tail(int i) const { return i; }
    int comm_tail(int j, int i) const;

    // r := r * g_gen^exp with exp >= 0.
    void multiply_gen(NormalWord& r, int gen, long long exp,
                      std::vector<long long>* tails = nullptr) const;
    // r := r * w for a normal word w.
    void multiply_word(NormalWord& r, const NormalWord& w,
                       std::vector<long long>* tails = nullptr) const;

    NormalWord normalize(const Word& word) const;
    NormalWord multiply(const NormalWord& u, const NormalWord& v) const;
    NormalWord inverse(const NormalWord& u) const;
    NormalWord power(const NormalWord& u, long long k) const;
    NormalWord power(const NormalWord& u, const mpz_class& k) const;
    NormalWord commutator(const NormalWord& u, const NormalWord& v) const;
    // Right-normed: [x1, x2, ..., xk] = [x1, [x2, ..., xk]].
    NormalWord iterated_commutator(const std::vector<NormalWord>& xs) const;
    NormalWord identity() const { return NormalWord(pres_->ngens, 0); }
    NormalWord generator(int i) const;
    bool is_identity(const NormalWord& u) const;

private:
    void collect(NormalWord& r, std::vector<std::pair<int, long long>>& stack,
                 std::vector<long long>* tails) const;

    std::shared_ptr<const PcPresentation> pres_;
    std::vector<NormalWord> gen_inverse_;
};

// All overlap tests; empty result iff the presentation is consistent.
std::vector<ConsistencyViolation> check_consistency(const PcPresentation& p);

struct OverlapTest {
    char family;
    std::vector<int> indices;  // 0-based
    NormalWord left_word, right_word;
    std::vector<long long> left_tails, right_tails;
};
// Evaluates every overlap with relation tails tracked.
std::vector<OverlapTest> evaluate_overlaps(const Collector& col);

struct Subgroup {
    std::vector<NormalWord> generators;
    std::vector<std::uint64_t> elements;  // sorted codes
    std::uint64_t order() const { return elements.size(); }
    bool contains(std::uint64_t code) const;
    bool is_trivial() const { return elements.size() <= 1; }
    bool subset_of(const Subgroup& other) const;
};

// A consistent presentation with element coding and cached enumeration.
class PcGroup {
public:
    explicit PcGroup(PcPresentation p, std::uint64_t cap = kDefaultEnumerationCap);

    const PcPresentation& presentation() const { return col_.presentation(); }
    const Collector& collector() const { return col_; }
    const std::string& name() const { return presentation().name; }
    int ngens() const { return col_.ngens(); }
    std::uint64_t order() const { return order_; }
    std::uint64_t cap() const { return cap_; }
    std::optional<int> prime() const;

    std::uint64_t encode(const NormalWord& w) const;
    NormalWord decode(std::uint64_t code) const;

    NormalWord multiply(const NormalWord& u, const NormalWord& v) const { return col_.multiply(u, v); }
    NormalWord inverse(const NormalWord& u) const { return col_.inverse(u); }
    NormalWord power(const NormalWord& u, long long k) const { return col_.power(u, k); }
    NormalWord commutator(const NormalWord& u, const NormalWord& v) const { return col_.commutator(u, v); }
    NormalWord normalize(const Word& w) const { return col_.normalize(w); }
    NormalWord generator(int i) const { return col_.generator(i); }
    NormalWord identity() const { return col_.identity(); }

    // Code arithmetic; uses a multiplication table for small groups.
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t pow(std::uint64_t a, long long k) const;
    std::uint64_t comm(std::uint64_t a, std::uint64_t b) const;

    std::uint64_t element_order(const NormalWord& u) const;
    std::uint64_t element_order_code(std::uint64_t a) const;
    // Without modulo: max element order.  With modulo N: max over g of the
    // least k with g^k in N.
    std::uint64_t exponent(const Subgroup* modulo = nullptr) const;
    std::uint64_t exponent_of(const Subgroup& h) const;

    // Codes 0..order-1; throws CapExceeded above the cap.
    const std::vector<std::uint64_t>& enumerate() const;
    void require_within_cap() const;

    // Closure of gens; with normal_closure, also under conjugation by the
    // elements of conjugators (default: the pc generators).
    Subgroup subgroup(const std::vector<NormalWord>& gens, bool normal_closure,
                      const std::vector<NormalWord>* conjugators = nullptr) const;
    Subgroup whole() const;
    Subgroup trivial() const;
    // Subgroup generated by all k-th powers of elements of h.
    Subgroup power_subgroup(const Subgroup& h, long long k) const;
    // [h, h] computed inside the normalizer given by conjugators.
    Subgroup commutator_subgroup(const Subgroup& a, const Subgroup& b,
                                 const std::vector<NormalWord>& conjugators) const;
    std::vector<NormalWord> generator_words() const;

private:
    void build_table() const;

    Collector col_;
    std::uint64_t order_ = 1;
    std::uint64_t cap_;
    std::vector<std::uint64_t> radix_;
    mutable std::once_flag enum_once_, table_once_;
    mutable std::vector<std::uint64_t> all_;
    mutable std::vector<std::uint32_t> table_;
    mutable std::vector<std::uint32_t> inv_table_;
    bool use_table_ = false;
};

struct CharacteristicSubgroups {
    std::vector<Subgroup> lower_central;  // gamma_1 = G, ..., ending with trivial
    std::vector<Subgroup> derived;        // G^(0) = G, ..., ending with trivial
    Subgroup center;
    Subgroup power_p;   // G^p
    Subgroup power_p2;  // G^{p^2}
    Subgroup power_4;   // G^4 (used for p = 2)
};

CharacteristicSubgroups characteristic_subgroups(const PcGroup& g);

enum class Tri { no, yes, unknown };
const char* to_string(Tri t);

struct GroupFlags {
    int prime = 0;
    int nilpotency_class = 0;
    int derived_length = 0;
    std::uint64_t exponent = 1;
    Tri is_regular = Tri::unknown;
    std::uint64_t regular_pairs_tested = 0;
    bool regular_exhaustive = false;
    bool is_powerful = false;
    std::optional<int> condition1_m;
    bool condition2 = false;
    int central_pn = 0;
    bool is_metabelian = false;
};

inline constexpr std::uint64_t kRegularExhaustiveLimit = 81;
inline constexpr std::uint64_t kRegularSamplePairs = 1500;

// Requires a p-group.
GroupFlags classify(const PcGroup& g, const CharacteristicSubgroups& cs);
GroupFlags classify(const PcGroup& g);

// Exhaustive-in-a-window checks of structural lemmas.
struct SuiteOutcome {
    std::string suite;  // e.g. "regular-power-commutator"
    bool applicable = false;
    bool passed = true;
    std::string detail;
};

inline constexpr std::uint64_t kSuiteOrderLimit = 81;

std::vector<SuiteOutcome> run_structural_suites(const PcGroup& g, const CharacteristicSubgroups& cs,
                                                const GroupFlags& flags);

// Abelian invariants of G / gamma_2(G) for a p-group, from coset orders.
std::vector<std::uint64_t> abelianization_invariants(const PcGroup& g, const Subgroup& gamma2);

}  // namespace schurlab

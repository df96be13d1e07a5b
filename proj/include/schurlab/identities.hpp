#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace schurlab {

// Nested binomial sum over 1 <= i_1 < ... < i_{m-1} < n of
// C(n, i_{m-1}) C(i_{m-1}, i_{m-2}) ... C(i_2, i_1).  Requires 2 <= m <= n.
mpz_class alpha(int m, int n);

// Formal integer combination of the symbols [x_{p-1}, ..., x_1, [b, a]],
// keyed by the slot string x_{p-1} ... x_1 over {'a', 'b'}.
struct FormalSum {
    int prime = 0;
    std::map<std::string, mpz_class> terms;

    FormalSum operator+(const FormalSum& o) const;
    FormalSum operator-(const FormalSum& o) const;
    FormalSum& operator+=(const FormalSum& o);
    bool operator==(const FormalSum& o) const;
    void prune();
};

// Symbols whose slots contain exactly r letters b.
std::vector<std::string> symbol_class(int p, int r);
// Sum of all symbols in symbol_class(p, r).
FormalSum symbol_class_sum(int p, int r);
// Replace a by ab in every slot: each a-slot independently stays a or turns b.
FormalSum substitute_ab(const FormalSum& s);
// Coefficients on the class sums, when s is constant on every class.
std::optional<std::vector<mpz_class>> class_coefficients(const FormalSum& s);
// Coefficient vectors over classes 1..p-1, starting from all ones and
// repeatedly replacing v by substitute_ab(v) - v.
std::vector<std::vector<mpz_class>> er_chain(int p);

struct ControlOutcome {
    std::string description;
    bool failed_as_expected = false;
    std::string detail;
};

struct LemmaReport {
    std::string id;
    std::string parameters;
    bool passed = true;
    long long cases = 0;
    std::optional<std::string> counterexample;
    std::vector<std::string> notes;
    std::vector<ControlOutcome> controls;
};

struct LemmaParams {
    long long n_max = 0;  // 0: per-lemma default
    std::uint64_t seed = 1;
};

const std::vector<std::string>& lemma_ids();
// Throws std::invalid_argument for an unknown id.
LemmaReport verify_collection_lemma(const std::string& id, const LemmaParams& params = {});

}  // namespace schurlab

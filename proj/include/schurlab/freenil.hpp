#pragma once

#include <gmpxx.h>

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace schurlab {

inline constexpr int kMaxLetters = 3;
inline constexpr int kMaxClass = 7;

// Element of Z<<x_1..x_k>> truncated above degree c.  Monomials are stored
// densely: degree-d words start at offset(d), ordered as base-k numbers with
// the first letter most significant.
class TruncatedSeries {
public:
    TruncatedSeries(int letters, int cls);

    static TruncatedSeries one(int letters, int cls);
    // 1 + x_i
    static TruncatedSeries generator(int letters, int cls, int i);

    int letters() const { return letters_; }
    int cls() const { return cls_; }
    size_t size() const { return coef_.size(); }
    size_t offset(int degree) const { return offsets_[degree]; }
    size_t index(const std::vector<int>& word) const;
    std::vector<int> word_at(size_t index) const;

    const mpz_class& operator[](size_t i) const { return coef_[i]; }
    mpz_class& operator[](size_t i) { return coef_[i]; }
    const mpz_class& constant() const { return coef_[0]; }

    TruncatedSeries operator*(const TruncatedSeries& o) const;
    TruncatedSeries operator+(const TruncatedSeries& o) const;
    TruncatedSeries operator-(const TruncatedSeries& o) const;
    bool operator==(const TruncatedSeries& o) const { return letters_ == o.letters_ && cls_ == o.cls_ && coef_ == o.coef_; }
    bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

    // Requires constant term 1.
    TruncatedSeries inverse() const;
    TruncatedSeries power(const mpz_class& e) const;
    TruncatedSeries power(long long e) const { return power(mpz_class(static_cast<long>(e))); }

    // Lowest degree > 0 with a nonzero coefficient, or cls+1 if none.
    int min_degree_above_constant() const;
    std::vector<mpz_class> component(int degree) const;
    bool is_one() const;
    std::string to_string(const std::vector<std::string>& names = {}) const;

private:
    int letters_, cls_;
    std::vector<size_t> offsets_;  // size cls+2
    std::vector<mpz_class> coef_;
};

// Group commutator x y x^-1 y^-1 and conjugate x y x^-1.
TruncatedSeries commutator(const TruncatedSeries& x, const TruncatedSeries& y);
TruncatedSeries conjugate(const TruncatedSeries& x, const TruncatedSeries& y);

// Image of a word over letters 0..k-1 with integer exponents.
TruncatedSeries magnus(const std::vector<std::pair<int, long long>>& word, int letters, int cls);

struct BasicCommutator {
    int letter = -1;  // >= 0 for a generator
    int left = -1, right = -1;  // basis positions for a bracket
    int weight = 1;
};

// Basic commutators of weight <= c, ordered by weight and within a weight
// by (left position, right position).  [L, R] is basic when L > R and, for
// L = [L1, L2], also L2 <= R.
class HallBasis {
public:
    HallBasis(int letters, int cls);

    int letters() const { return letters_; }
    int cls() const { return cls_; }
    size_t size() const { return elems_.size(); }
    const BasicCommutator& operator[](size_t i) const { return elems_[i]; }
    std::vector<size_t> count_by_weight() const;  // index w-1
    std::string name(size_t i, const std::vector<std::string>& letter_names = {}) const;
    const TruncatedSeries& image(size_t i) const { return images_[i]; }
    const std::vector<TruncatedSeries>& images() const { return images_; }
    std::vector<int> weights() const;

private:
    int letters_, cls_;
    std::vector<BasicCommutator> elems_;
    std::vector<TruncatedSeries> images_;
};

// Witt's necklace count (1/w) sum_{d | w} mu(d) k^{w/d}.
mpz_class witt_number(int letters, int weight);

class NonIntegralSolution : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An ordered list of group elements whose lowest-degree components are
// independent within each weight.  Decomposes s as prod_i elem_i^{e_i}
// taken in list order.
class ProductBasis {
public:
    ProductBasis(std::vector<TruncatedSeries> elems, std::vector<int> weights);
    explicit ProductBasis(const HallBasis& hb);

    size_t size() const { return elems_.size(); }
    const TruncatedSeries& element(size_t i) const { return elems_[i]; }
    int weight(size_t i) const { return weights_[i]; }

    std::vector<mpz_class> decompose(const TruncatedSeries& s) const;
    TruncatedSeries compose(const std::vector<mpz_class>& exps) const;

private:
    struct WeightSolver {
        std::vector<size_t> members;     // basis indices of this weight
        std::vector<size_t> pivot_rows;  // monomial indices used for the square solve
        std::vector<mpq_class> inverse;  // row-major, members.size() squared
    };
    void prepare(int weight) const;

    std::vector<TruncatedSeries> elems_;
    std::vector<int> weights_;
    int letters_, cls_;
    mutable std::vector<std::unique_ptr<WeightSolver>> solvers_;
};

std::vector<mpz_class> normal_form(const TruncatedSeries& s, const HallBasis& basis);

// f(n) = sum_{t>=0} coef[t] C(n, t)
struct BinomialPoly {
    std::vector<mpz_class> coef;

    mpz_class operator()(const mpz_class& n) const;
    int degree() const;
    bool operator==(const BinomialPoly& o) const;
    std::string to_string(const std::string& var = "n") const;
};

mpz_class binomial(const mpz_class& n, unsigned long k);

class FitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Fits a_1..a_w from f(1..w) (with f(0) = 0) and checks f at n = w+1..w+10.
BinomialPoly fit_binomial(const std::function<mpz_class(long long)>& family, int w);

// Symbolic words over named letters: products of letters, right-normed
// brackets and parenthesised products, each with an optional exponent that
// is an integer combination of C(n, t).
class CommutatorExpr {
public:
    enum class Kind { letter, product, bracket };

    static CommutatorExpr parse(const std::string& text);
    static CommutatorExpr letter(std::string name);
    static CommutatorExpr product(std::vector<CommutatorExpr> factors);
    static CommutatorExpr bracket(std::vector<CommutatorExpr> slots);

    CommutatorExpr& raise(BinomialPoly e);

    Kind kind() const { return kind_; }
    const std::string& name() const { return name_; }
    const std::vector<CommutatorExpr>& children() const { return children_; }
    const std::optional<BinomialPoly>& exponent() const { return exponent_; }

    std::vector<std::string> letters() const;
    std::string to_string() const;

    using Binding = std::map<std::string, TruncatedSeries>;
    // Throws std::invalid_argument for an unbound letter.
    TruncatedSeries eval(const Binding& binding, long long n) const;

private:
    Kind kind_ = Kind::product;
    std::string name_;
    std::vector<CommutatorExpr> children_;
    std::optional<BinomialPoly> exponent_;
};

class ExprParseError : public std::runtime_error {
public:
    ExprParseError(size_t pos, const std::string& msg);
    size_t position() const { return pos_; }

private:
    size_t pos_;
};

struct IdentityReport {
    bool passed = true;
    long long cases = 0;
    std::optional<long long> failing_n;
    std::string detail;
};

// Binding defaults to the letters of both sides, sorted, mapped to x_1..x_k.
IdentityReport verify_identity(const CommutatorExpr& lhs, const CommutatorExpr& rhs, int letters, int cls,
                               long long n_from, long long n_to,
                               const std::optional<CommutatorExpr::Binding>& binding = std::nullopt);

}  // namespace schurlab

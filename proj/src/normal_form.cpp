#include <algorithm>
#include <map>
#include <mutex>

#include "schurlab/freenil.hpp"

namespace schurlab {

namespace {

constexpr long long kModulus = 2147483629LL;  // prime below 2^31

long long mod_pow(long long b, long long e) {
    long long r = 1;
    b %= kModulus;
    while (e) {
        if (e & 1) r = r * b % kModulus;
        b = b * b % kModulus;
        e >>= 1;
    }
    return r;
}

long long reduce(const mpz_class& v) {
    mpz_class r;
    mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(kModulus));
    return r.get_si();
}

}  // namespace

ProductBasis::ProductBasis(std::vector<TruncatedSeries> elems, std::vector<int> weights)
    : elems_(std::move(elems)), weights_(std::move(weights)) {
    if (elems_.empty()) throw std::invalid_argument("empty product basis");
    if (elems_.size() != weights_.size()) throw std::invalid_argument("weights do not match elements");
    letters_ = elems_[0].letters();
    cls_ = elems_[0].cls();
    for (size_t i = 0; i < elems_.size(); ++i) {
        if (elems_[i].letters() != letters_ || elems_[i].cls() != cls_)
            throw std::invalid_argument("product basis elements have different shapes");
        if (elems_[i].constant() != 1 || elems_[i].min_degree_above_constant() != weights_[i])
            throw std::invalid_argument("element " + std::to_string(i) + " does not start in degree " +
                                        std::to_string(weights_[i]));
    }
    solvers_.resize(cls_ + 1);
    for (int w = 1; w <= cls_; ++w) prepare(w);
}

ProductBasis::ProductBasis(const HallBasis& hb) : ProductBasis(hb.images(), hb.weights()) {}

void ProductBasis::prepare(int w) const {
    auto solver = std::make_unique<WeightSolver>();
    for (size_t i = 0; i < elems_.size(); ++i)
        if (weights_[i] == w) solver->members.push_back(i);
    const size_t m = solver->members.size();
    if (m == 0) {
        solvers_[w] = std::move(solver);
        return;
    }
    const size_t base = elems_[0].offset(w);
    const size_t rows = elems_[0].offset(w + 1) - base;

    // Greedy row selection by elimination mod a prime.
    std::vector<std::vector<long long>> echelon;
    std::vector<size_t> lead;
    for (size_t r = 0; r < rows && solver->pivot_rows.size() < m; ++r) {
        std::vector<long long> v(m);
        bool any = false;
        for (size_t j = 0; j < m; ++j) {
            v[j] = reduce(elems_[solver->members[j]][base + r]);
            any = any || v[j] != 0;
        }
        if (!any) continue;
        for (size_t e = 0; e < echelon.size(); ++e) {
            long long f = v[lead[e]];
            if (!f) continue;
            for (size_t j = 0; j < m; ++j) v[j] = ((v[j] - f * echelon[e][j]) % kModulus + kModulus) % kModulus;
        }
        size_t piv = m;
        for (size_t j = 0; j < m; ++j)
            if (v[j]) {
                piv = j;
                break;
            }
        if (piv == m) continue;
        long long invp = mod_pow(v[piv], kModulus - 2);
        for (auto& x : v) x = x * invp % kModulus;
        echelon.push_back(std::move(v));
        lead.push_back(piv);
        solver->pivot_rows.push_back(base + r);
    }
    if (solver->pivot_rows.size() < m)
        throw std::invalid_argument("basis elements of weight " + std::to_string(w) + " are not independent");

    // Exact inverse of the selected square block by Gauss-Jordan over Q.
    std::vector<mpq_class> a(m * m), inv(m * m);
    for (size_t r = 0; r < m; ++r)
        for (size_t j = 0; j < m; ++j) {
            a[r * m + j] = mpq_class(elems_[solver->members[j]][solver->pivot_rows[r]]);
            inv[r * m + j] = r == j ? 1 : 0;
        }
    for (size_t col = 0; col < m; ++col) {
        size_t p = col;
        while (p < m && sgn(a[p * m + col]) == 0) ++p;
        if (p == m) throw std::logic_error("singular block after modular selection");
        if (p != col)
            for (size_t j = 0; j < m; ++j) {
                std::swap(a[p * m + j], a[col * m + j]);
                std::swap(inv[p * m + j], inv[col * m + j]);
            }
        mpq_class d = a[col * m + col];
        for (size_t j = 0; j < m; ++j) {
            a[col * m + j] /= d;
            inv[col * m + j] /= d;
        }
        for (size_t r = 0; r < m; ++r) {
            if (r == col || sgn(a[r * m + col]) == 0) continue;
            mpq_class f = a[r * m + col];
            for (size_t j = 0; j < m; ++j) {
                if (sgn(a[col * m + j]) != 0) a[r * m + j] -= f * a[col * m + j];
                if (sgn(inv[col * m + j]) != 0) inv[r * m + j] -= f * inv[col * m + j];
            }
        }
    }
    solver->inverse = std::move(inv);
    solvers_[w] = std::move(solver);
}

TruncatedSeries ProductBasis::compose(const std::vector<mpz_class>& exps) const {
    TruncatedSeries r = TruncatedSeries::one(letters_, cls_);
    for (size_t i = 0; i < elems_.size(); ++i)
        if (sgn(exps.at(i)) != 0) r = r * elems_[i].power(exps[i]);
    return r;
}

std::vector<mpz_class> ProductBasis::decompose(const TruncatedSeries& s) const {
    if (s.letters() != letters_ || s.cls() != cls_) throw std::invalid_argument("series shape mismatch");
    if (s.constant() != 1) throw NonIntegralSolution("constant term is not 1");
    std::vector<mpz_class> exps(elems_.size(), mpz_class(0));
    const bool ascending = std::is_sorted(weights_.begin(), weights_.end());
    TruncatedSeries prefix = TruncatedSeries::one(letters_, cls_);
    for (int w = 1; w <= cls_; ++w) {
        TruncatedSeries y = (ascending ? prefix : compose(exps)).inverse() * s;
        const WeightSolver& ws = *solvers_[w];
        const size_t m = ws.members.size();
        const size_t base = s.offset(w), end = s.offset(w + 1);
        std::vector<mpz_class> sol(m);
        for (size_t i = 0; i < m; ++i) {
            mpq_class acc = 0;
            for (size_t j = 0; j < m; ++j) acc += ws.inverse[i * m + j] * y[ws.pivot_rows[j]];
            if (acc.get_den() != 1)
                throw NonIntegralSolution("non-integral exponent " + acc.get_str() + " in weight " + std::to_string(w));
            sol[i] = acc.get_num();
        }
        for (size_t r = base; r < end; ++r) {
            mpz_class v = 0;
            for (size_t i = 0; i < m; ++i) v += sol[i] * elems_[ws.members[i]][r];
            if (v != y[r])
                throw NonIntegralSolution("degree-" + std::to_string(w) + " component outside the span of the basis");
        }
        for (size_t i = 0; i < m; ++i) {
            exps[ws.members[i]] = sol[i];
            if (ascending && sgn(sol[i]) != 0) prefix = prefix * elems_[ws.members[i]].power(sol[i]);
        }
    }
    if ((ascending ? prefix : compose(exps)) != s) throw NonIntegralSolution("reconstructed product differs");
    return exps;
}

std::vector<mpz_class> normal_form(const TruncatedSeries& s, const HallBasis& basis) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::shared_ptr<const ProductBasis>> cache;
    std::shared_ptr<const ProductBasis> pb;
    {
        std::lock_guard<std::mutex> lock(mu);
        auto& slot = cache[{basis.letters(), basis.cls()}];
        if (!slot) slot = std::make_shared<const ProductBasis>(basis);
        pb = slot;
    }
    return pb->decompose(s);
}

}  // namespace schurlab

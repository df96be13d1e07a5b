#include <sstream>

#include "schurlab/freenil.hpp"

namespace schurlab {

TruncatedSeries::TruncatedSeries(int letters, int cls) : letters_(letters), cls_(cls) {
    if (letters < 1 || letters > kMaxLetters) throw std::invalid_argument("letter count out of range");
    if (cls < 1 || cls > kMaxClass) throw std::invalid_argument("class out of range");
    offsets_.resize(cls + 2);
    size_t width = 1;
    offsets_[0] = 0;
    for (int d = 0; d <= cls; ++d) {
        offsets_[d + 1] = offsets_[d] + width;
        width *= letters;
    }
    coef_.assign(offsets_[cls + 1], mpz_class(0));
}

TruncatedSeries TruncatedSeries::one(int letters, int cls) {
    TruncatedSeries s(letters, cls);
    s.coef_[0] = 1;
    return s;
}

TruncatedSeries TruncatedSeries::generator(int letters, int cls, int i) {
    TruncatedSeries s = one(letters, cls);
    if (i < 0 || i >= letters) throw std::out_of_range("generator index out of range");
    s.coef_[s.offsets_[1] + i] = 1;
    return s;
}

size_t TruncatedSeries::index(const std::vector<int>& word) const {
    size_t v = 0;
    for (int l : word) v = v * letters_ + l;
    return offsets_[word.size()] + v;
}

std::vector<int> TruncatedSeries::word_at(size_t index) const {
    int d = 0;
    while (offsets_[d + 1] <= index) ++d;
    size_t v = index - offsets_[d];
    std::vector<int> w(d);
    for (int i = d - 1; i >= 0; --i) {
        w[i] = static_cast<int>(v % letters_);
        v /= letters_;
    }
    return w;
}

TruncatedSeries TruncatedSeries::operator*(const TruncatedSeries& o) const {
    if (letters_ != o.letters_ || cls_ != o.cls_) throw std::invalid_argument("series shape mismatch");
    TruncatedSeries r(letters_, cls_);
    // nonzero positions of o, grouped by degree
    std::vector<std::vector<size_t>> nz(cls_ + 1);
    for (int d = 0; d <= cls_; ++d)
        for (size_t i = o.offsets_[d]; i < o.offsets_[d + 1]; ++i)
            if (sgn(o.coef_[i]) != 0) nz[d].push_back(i - o.offsets_[d]);
    std::vector<size_t> width(cls_ + 1);
    width[0] = 1;
    for (int d = 1; d <= cls_; ++d) width[d] = width[d - 1] * letters_;
    for (int d1 = 0; d1 <= cls_; ++d1)
        for (size_t i = offsets_[d1]; i < offsets_[d1 + 1]; ++i) {
            if (sgn(coef_[i]) == 0) continue;
            size_t u = i - offsets_[d1];
            for (int d2 = 0; d1 + d2 <= cls_; ++d2) {
                size_t base = offsets_[d1 + d2] + u * width[d2];
                for (size_t v : nz[d2])
                    mpz_addmul(r.coef_[base + v].get_mpz_t(), coef_[i].get_mpz_t(),
                               o.coef_[o.offsets_[d2] + v].get_mpz_t());
            }
        }
    return r;
}

TruncatedSeries TruncatedSeries::operator+(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (size_t i = 0; i < coef_.size(); ++i) r.coef_[i] += o.coef_[i];
    return r;
}

TruncatedSeries TruncatedSeries::operator-(const TruncatedSeries& o) const {
    TruncatedSeries r = *this;
    for (size_t i = 0; i < coef_.size(); ++i) r.coef_[i] -= o.coef_[i];
    return r;
}

int TruncatedSeries::min_degree_above_constant() const {
    for (int d = 1; d <= cls_; ++d)
        for (size_t i = offsets_[d]; i < offsets_[d + 1]; ++i)
            if (sgn(coef_[i]) != 0) return d;
    return cls_ + 1;
}

std::vector<mpz_class> TruncatedSeries::component(int degree) const {
    return std::vector<mpz_class>(coef_.begin() + offsets_[degree], coef_.begin() + offsets_[degree + 1]);
}

bool TruncatedSeries::is_one() const {
    if (coef_[0] != 1) return false;
    for (size_t i = 1; i < coef_.size(); ++i)
        if (sgn(coef_[i]) != 0) return false;
    return true;
}

TruncatedSeries TruncatedSeries::power(const mpz_class& e) const {
    if (coef_[0] != 1) throw std::invalid_argument("power needs constant term 1");
    // (1 + X)^e = sum_i C(e, i) X^i; X^i vanishes once i * mindeg(X) > c.
    TruncatedSeries x = *this;
    x.coef_[0] = 0;
    int low = x.min_degree_above_constant();
    TruncatedSeries r = one(letters_, cls_);
    if (low > cls_ || sgn(e) == 0) return r;
    TruncatedSeries xi = x;
    for (unsigned long i = 1; static_cast<int>(i) * low <= cls_; ++i) {
        if (i > 1) xi = xi * x;
        mpz_class b = binomial(e, i);
        if (sgn(b) == 0) break;  // e >= 0 and i > e
        for (size_t j = 0; j < coef_.size(); ++j)
            if (sgn(xi.coef_[j]) != 0) mpz_addmul(r.coef_[j].get_mpz_t(), b.get_mpz_t(), xi.coef_[j].get_mpz_t());
    }
    return r;
}

TruncatedSeries TruncatedSeries::inverse() const { return power(mpz_class(-1)); }

std::string TruncatedSeries::to_string(const std::vector<std::string>& names) const {
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < coef_.size(); ++i) {
        if (sgn(coef_[i]) == 0) continue;
        if (!first) os << (sgn(coef_[i]) > 0 ? " + " : " - ");
        else if (sgn(coef_[i]) < 0) os << "-";
        first = false;
        mpz_class a = abs(coef_[i]);
        std::vector<int> w = word_at(i);
        if (w.empty() || a != 1) os << a.get_str();
        for (int l : w) {
            if (l < static_cast<int>(names.size())) os << names[l];
            else os << "x" << (l + 1);
        }
    }
    return first ? "0" : os.str();
}

TruncatedSeries commutator(const TruncatedSeries& x, const TruncatedSeries& y) {
    return x * y * x.inverse() * y.inverse();
}

TruncatedSeries conjugate(const TruncatedSeries& x, const TruncatedSeries& y) { return x * y * x.inverse(); }

TruncatedSeries magnus(const std::vector<std::pair<int, long long>>& word, int letters, int cls) {
    TruncatedSeries r = TruncatedSeries::one(letters, cls);
    for (auto [l, e] : word) r = r * TruncatedSeries::generator(letters, cls, l).power(e);
    return r;
}

mpz_class binomial(const mpz_class& n, unsigned long k) {
    mpz_class r;
    mpz_bin_ui(r.get_mpz_t(), n.get_mpz_t(), k);
    return r;
}

mpz_class BinomialPoly::operator()(const mpz_class& n) const {
    mpz_class v = 0;
    for (size_t t = 0; t < coef.size(); ++t)
        if (sgn(coef[t]) != 0) v += coef[t] * binomial(n, t);
    return v;
}

int BinomialPoly::degree() const {
    for (int t = static_cast<int>(coef.size()) - 1; t >= 0; --t)
        if (sgn(coef[t]) != 0) return t;
    return -1;
}

bool BinomialPoly::operator==(const BinomialPoly& o) const {
    size_t n = std::max(coef.size(), o.coef.size());
    for (size_t t = 0; t < n; ++t) {
        mpz_class a = t < coef.size() ? coef[t] : mpz_class(0);
        mpz_class b = t < o.coef.size() ? o.coef[t] : mpz_class(0);
        if (a != b) return false;
    }
    return true;
}

std::string BinomialPoly::to_string(const std::string& var) const {
    std::ostringstream os;
    bool first = true;
    for (size_t t = 0; t < coef.size(); ++t) {
        if (sgn(coef[t]) == 0) continue;
        mpz_class a = abs(coef[t]);
        if (!first) os << (sgn(coef[t]) > 0 ? "+" : "-");
        else if (sgn(coef[t]) < 0) os << "-";
        first = false;
        if (t == 0) {
            os << a.get_str();
            continue;
        }
        if (a != 1) os << a.get_str();
        if (t == 1) os << var;
        else os << "C(" << var << "," << t << ")";
    }
    return first ? "0" : os.str();
}

BinomialPoly fit_binomial(const std::function<mpz_class(long long)>& family, int w) {
    if (w < 1) throw std::invalid_argument("fit_binomial needs w >= 1");
    BinomialPoly p;
    p.coef.assign(w + 1, mpz_class(0));
    // f(n) = sum_{t<=n} a_t C(n,t) with C(n,n) = 1, so a_n is forced.
    for (int n = 1; n <= w; ++n) {
        mpz_class v = family(n);
        for (int t = 1; t < n; ++t) v -= p.coef[t] * binomial(n, t);
        p.coef[n] = v;
    }
    for (int n = w + 1; n <= w + 10; ++n) {
        mpz_class got = family(n);
        mpz_class want = p(n);
        if (got != want)
            throw FitError("binomial fit of degree " + std::to_string(w) + " misses at n=" + std::to_string(n) + ": " +
                           got.get_str() + " vs " + want.get_str());
    }
    return p;
}

}  // namespace schurlab

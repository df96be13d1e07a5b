#include <cctype>
#include <set>

#include "schurlab/freenil.hpp"

namespace schurlab {

ExprParseError::ExprParseError(size_t pos, const std::string& msg)
    : std::runtime_error("at offset " + std::to_string(pos) + ": " + msg), pos_(pos) {}

CommutatorExpr CommutatorExpr::letter(std::string name) {
    CommutatorExpr e;
    e.kind_ = Kind::letter;
    e.name_ = std::move(name);
    return e;
}

CommutatorExpr CommutatorExpr::product(std::vector<CommutatorExpr> factors) {
    CommutatorExpr e;
    e.kind_ = Kind::product;
    e.children_ = std::move(factors);
    return e;
}

CommutatorExpr CommutatorExpr::bracket(std::vector<CommutatorExpr> slots) {
    if (slots.empty()) throw std::invalid_argument("empty bracket");
    CommutatorExpr e;
    e.kind_ = Kind::bracket;
    e.children_ = std::move(slots);
    return e;
}

CommutatorExpr& CommutatorExpr::raise(BinomialPoly e) {
    if (exponent_) {
        // (x^f)^g is only needed for integer g; wrap to keep the tree honest
        CommutatorExpr inner = *this;
        *this = product({std::move(inner)});
    }
    exponent_ = std::move(e);
    return *this;
}

namespace {

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    CommutatorExpr parse_all() {
        CommutatorExpr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ExprParseError(pos_, msg); }

    void skip() {
        while (pos_ < s_.size() && (std::isspace(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '*')) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("expected '") + c + "'");
        ++pos_;
    }
    bool at_atom_start() {
        skip();
        if (pos_ >= s_.size()) return false;
        char c = s_[pos_];
        return c == '[' || c == '(' || std::isalpha(static_cast<unsigned char>(c));
    }

    long long integer() {
        skip();
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return std::stoll(s_.substr(start, pos_ - start));
    }

    CommutatorExpr expr() {
        std::vector<CommutatorExpr> items;
        while (at_atom_start()) items.push_back(item());
        if (items.empty()) fail("expected a letter, '[' or '('");
        if (items.size() == 1) return std::move(items[0]);
        return CommutatorExpr::product(std::move(items));
    }

    CommutatorExpr item() {
        CommutatorExpr a = atom();
        while (peek('^')) {
            ++pos_;
            a.raise(exponent());
        }
        return a;
    }

    CommutatorExpr atom() {
        skip();
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            CommutatorExpr e = expr();
            expect(')');
            // keep "(a b)" as one factor so that an exponent binds to the product
            if (e.kind() != CommutatorExpr::Kind::product || e.exponent()) e = CommutatorExpr::product({std::move(e)});
            return e;
        }
        if (c == '[') {
            ++pos_;
            std::vector<CommutatorExpr> slots;
            do {
                if (peek('_')) {
                    ++pos_;
                    long long t = integer();
                    if (t < 1 || t > 64) fail("repeat count out of range");
                    CommutatorExpr e = expr();
                    for (long long i = 0; i < t; ++i) slots.push_back(e);
                } else {
                    slots.push_back(expr());
                }
            } while (peek(',') && (++pos_, true));
            expect(']');
            return CommutatorExpr::bracket(std::move(slots));
        }
        size_t start = pos_;
        while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
        return CommutatorExpr::letter(s_.substr(start, pos_ - start));
    }

    BinomialPoly exponent() {
        skip();
        if (peek('{')) {
            ++pos_;
            BinomialPoly p = binomial_sum('}');
            expect('}');
            return p;
        }
        if (peek('(')) {
            ++pos_;
            BinomialPoly p = binomial_sum(')');
            expect(')');
            return p;
        }
        bool neg = false;
        if (peek('-')) {
            ++pos_;
            neg = true;
        }
        BinomialPoly p = term();
        if (neg)
            for (auto& c : p.coef) c = -c;
        return p;
    }

    // [int] ('n' | 'C(n,t)')? ; at least one part present
    BinomialPoly term() {
        skip();
        mpz_class k = 1;
        bool have_k = false;
        if (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            k = mpz_class(std::to_string(integer()));
            have_k = true;
        }
        skip();
        BinomialPoly p;
        if (pos_ < s_.size() && s_[pos_] == 'n' &&
            (pos_ + 1 == s_.size() || !std::isalnum(static_cast<unsigned char>(s_[pos_ + 1])))) {
            ++pos_;
            p.coef = {0, k};
        } else if (s_.compare(pos_, 2, "C(") == 0) {
            pos_ += 2;
            skip();
            if (pos_ >= s_.size() || s_[pos_] != 'n') fail("expected n in C(n,t)");
            ++pos_;
            expect(',');
            long long t = integer();
            if (t < 0 || t > 64) fail("binomial index out of range");
            expect(')');
            p.coef.assign(t + 1, 0);
            p.coef[t] = k;
        } else if (have_k) {
            p.coef = {k};
        } else {
            fail("expected an exponent");
        }
        return p;
    }

    BinomialPoly binomial_sum(char close) {
        BinomialPoly acc;
        int sign = 1;
        if (peek('-')) {
            ++pos_;
            sign = -1;
        }
        for (;;) {
            BinomialPoly t = term();
            if (acc.coef.size() < t.coef.size()) acc.coef.resize(t.coef.size(), 0);
            for (size_t i = 0; i < t.coef.size(); ++i) acc.coef[i] += sign * t.coef[i];
            if (peek('+')) {
                ++pos_;
                sign = 1;
            } else if (peek('-')) {
                ++pos_;
                sign = -1;
            } else if (peek(close)) {
                break;
            } else {
                fail("expected '+', '-' or closing bracket in exponent");
            }
        }
        return acc;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

void collect_letters(const CommutatorExpr& e, std::set<std::string>& out) {
    if (e.kind() == CommutatorExpr::Kind::letter) out.insert(e.name());
    for (const auto& c : e.children()) collect_letters(c, out);
}

std::string exponent_text(const BinomialPoly& p) {
    std::string s = p.to_string("n");
    bool simple = true;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-') simple = false;
    if (s.size() > 1 && s[0] != '-' && !std::isdigit(static_cast<unsigned char>(s[0]))) simple = false;
    if (s.find('n') != std::string::npos && s != "n" && s != "-n") simple = false;
    return simple ? s : "{" + s + "}";
}

}  // namespace

CommutatorExpr CommutatorExpr::parse(const std::string& text) { return Parser(text).parse_all(); }

std::vector<std::string> CommutatorExpr::letters() const {
    std::set<std::string> s;
    collect_letters(*this, s);
    return {s.begin(), s.end()};
}

std::string CommutatorExpr::to_string() const {
    std::string body;
    switch (kind_) {
        case Kind::letter:
            body = name_;
            break;
        case Kind::bracket:
            body = "[";
            for (size_t i = 0; i < children_.size(); ++i) body += (i ? "," : "") + children_[i].to_string();
            body += "]";
            break;
        case Kind::product:
            for (size_t i = 0; i < children_.size(); ++i) body += (i ? " " : "") + children_[i].to_string();
            if (exponent_ || children_.size() != 1) body = "(" + body + ")";
            break;
    }
    if (exponent_) body += "^" + exponent_text(*exponent_);
    return body;
}

TruncatedSeries CommutatorExpr::eval(const Binding& binding, long long n) const {
    if (binding.empty()) throw std::invalid_argument("empty binding");
    const TruncatedSeries& any = binding.begin()->second;
    TruncatedSeries v = TruncatedSeries::one(any.letters(), any.cls());
    switch (kind_) {
        case Kind::letter: {
            auto it = binding.find(name_);
            if (it == binding.end()) throw std::invalid_argument("unbound letter '" + name_ + "'");
            v = it->second;
            break;
        }
        case Kind::product:
            for (const auto& c : children_) v = v * c.eval(binding, n);
            break;
        case Kind::bracket: {
            v = children_.back().eval(binding, n);
            for (int i = static_cast<int>(children_.size()) - 2; i >= 0; --i)
                v = commutator(children_[i].eval(binding, n), v);
            break;
        }
    }
    if (exponent_) v = v.power((*exponent_)(mpz_class(static_cast<long>(n))));
    return v;
}

IdentityReport verify_identity(const CommutatorExpr& lhs, const CommutatorExpr& rhs, int letters, int cls,
                               long long n_from, long long n_to,
                               const std::optional<CommutatorExpr::Binding>& binding) {
    CommutatorExpr::Binding b;
    if (binding) {
        b = *binding;
    } else {
        std::set<std::string> names;
        collect_letters(lhs, names);
        collect_letters(rhs, names);
        if (static_cast<int>(names.size()) > letters)
            throw std::invalid_argument("identity uses " + std::to_string(names.size()) + " letters, only " +
                                        std::to_string(letters) + " available");
        int i = 0;
        for (const auto& nm : names) b.emplace(nm, TruncatedSeries::generator(letters, cls, i++));
    }
    IdentityReport rep;
    for (long long n = n_from; n <= n_to; ++n) {
        ++rep.cases;
        TruncatedSeries l = lhs.eval(b, n), r = rhs.eval(b, n);
        if (l != r) {
            rep.passed = false;
            rep.failing_n = n;
            rep.detail = "n=" + std::to_string(n) + ": sides first differ in degree " +
                         std::to_string((l - r).min_degree_above_constant());
            return rep;
        }
    }
    rep.detail = std::to_string(rep.cases) + " values of n";
    return rep;
}

}  // namespace schurlab

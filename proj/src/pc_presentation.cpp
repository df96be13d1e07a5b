#include "schurlab/pcgroup.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace schurlab {

CatalogError::CatalogError(int line, const std::string& msg)
    : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

PcPresentation PcPresentation::make(std::string name, std::vector<int> orders) {
    PcPresentation p;
    p.name = std::move(name);
    p.ngens = static_cast<int>(orders.size());
    p.relative_orders = std::move(orders);
    p.power_words.assign(p.ngens, NormalWord(p.ngens, 0));
    p.comm_words.assign(p.ngens, std::vector<NormalWord>(p.ngens, NormalWord(p.ngens, 0)));
    p.prime = p.common_prime();
    return p;
}

void PcPresentation::set_power(int i, NormalWord w) { power_words.at(i) = std::move(w); }

void PcPresentation::set_comm(int j, int i, NormalWord w) { comm_words.at(j).at(i) = std::move(w); }

bool PcPresentation::is_trivial_word(const NormalWord& w) const {
    return std::all_of(w.begin(), w.end(), [](int e) { return e == 0; });
}

std::optional<int> PcPresentation::common_prime() const {
    if (relative_orders.empty()) return std::nullopt;
    int q = relative_orders.front();
    for (int o : relative_orders)
        if (o != q) return std::nullopt;
    return q;
}

namespace {

void check_word(const PcPresentation& p, const NormalWord& w, int min_index, int line,
                const std::string& what) {
    if (static_cast<int>(w.size()) != p.ngens)
        throw CatalogError(line, what + ": word has wrong length");
    for (int k = 0; k < p.ngens; ++k) {
        if (w[k] == 0) continue;
        if (k <= min_index)
            throw CatalogError(line, what + ": word uses g" + std::to_string(k + 1) +
                                         ", expected indices above " + std::to_string(min_index + 1));
        if (w[k] < 0 || w[k] >= p.relative_orders[k])
            throw CatalogError(line, what + ": exponent of g" + std::to_string(k + 1) + " out of range");
    }
}

}  // namespace

void PcPresentation::validate() const {
    int line = source_line;
    if (ngens < 0) throw CatalogError(line, "negative generator count");
    if (static_cast<int>(relative_orders.size()) != ngens)
        throw CatalogError(line, "orders list has " + std::to_string(relative_orders.size()) +
                                     " entries, ngens is " + std::to_string(ngens));
    for (int o : relative_orders)
        if (!is_prime(o)) throw CatalogError(line, "relative order " + std::to_string(o) + " is not prime");
    if (prime) {
        if (!is_prime(*prime)) throw CatalogError(line, "prime " + std::to_string(*prime) + " is not prime");
        for (int o : relative_orders)
            if (o != *prime) throw CatalogError(line, "relative order " + std::to_string(o) + " differs from prime");
    }
    for (int i = 0; i < ngens; ++i) check_word(*this, power_words[i], i, line, "pow " + std::to_string(i + 1));
    for (int j = 0; j < ngens; ++j)
        for (int i = 0; i < j; ++i)
            check_word(*this, comm_words[j][i], j, line,
                       "comm " + std::to_string(j + 1) + " " + std::to_string(i + 1));
}

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

long long parse_int(const std::string& tok, int line, const std::string& what) {
    if (tok.empty()) throw CatalogError(line, "missing " + what);
    size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw CatalogError(line, "invalid " + what + " '" + tok + "'");
    }
    if (pos != tok.size()) throw CatalogError(line, "invalid " + what + " '" + tok + "'");
    return v;
}

struct PendingRelation {
    int line;
    bool is_comm;
    int j, i;  // 1-based as written; for pow only i is used
    std::string word;
};

struct Block {
    int line = 0;
    std::optional<std::string> name;
    std::optional<int> prime;
    std::optional<int> ngens;
    std::optional<std::vector<int>> orders;
    int orders_line = 0;
    std::vector<PendingRelation> relations;
};

NormalWord parse_word(const std::string& text, const std::vector<int>& orders, int line) {
    NormalWord w(orders.size(), 0);
    std::istringstream in(text);
    std::string tok;
    int last = -1;
    while (in >> tok) {
        if (tok.size() < 2 || tok[0] != 'g') throw CatalogError(line, "bad word token '" + tok + "'");
        size_t caret = tok.find('^');
        std::string idx = tok.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
        long long k = parse_int(idx, line, "generator index");
        long long e = 1;
        if (caret != std::string::npos) e = parse_int(tok.substr(caret + 1), line, "exponent");
        if (k < 1 || k > static_cast<long long>(orders.size()))
            throw CatalogError(line, "generator g" + std::to_string(k) + " out of range");
        if (e < 1) throw CatalogError(line, "exponent must be at least 1 in '" + tok + "'");
        if (e >= orders[k - 1])
            throw CatalogError(line, "exponent in '" + tok + "' is not below the relative order");
        if (k - 1 <= last) throw CatalogError(line, "word indices must be strictly increasing");
        last = static_cast<int>(k - 1);
        w[k - 1] = static_cast<int>(e);
    }
    return w;
}

PcPresentation finish_block(const Block& b) {
    if (!b.name) throw CatalogError(b.line, "group block without a name");
    if (!b.ngens) throw CatalogError(b.line, "group '" + *b.name + "' has no ngens");
    std::vector<int> orders = b.orders.value_or(std::vector<int>{});
    if (!b.orders && *b.ngens > 0) throw CatalogError(b.line, "group '" + *b.name + "' has no orders");
    if (static_cast<int>(orders.size()) != *b.ngens)
        throw CatalogError(b.orders_line ? b.orders_line : b.line,
                           "orders list has " + std::to_string(orders.size()) + " entries, ngens is " +
                               std::to_string(*b.ngens));
    for (int o : orders)
        if (!is_prime(o))
            throw CatalogError(b.orders_line, "relative order " + std::to_string(o) + " is not prime");
    PcPresentation p = PcPresentation::make(*b.name, orders);
    p.source_line = b.line;
    if (b.prime) p.prime = b.prime;
    std::vector<std::vector<bool>> seen_comm(p.ngens, std::vector<bool>(p.ngens, false));
    std::vector<bool> seen_pow(p.ngens, false);
    for (const auto& r : b.relations) {
        NormalWord w = parse_word(r.word, orders, r.line);
        if (r.is_comm) {
            if (r.j < 1 || r.j > p.ngens || r.i < 1 || r.i > p.ngens)
                throw CatalogError(r.line, "comm index out of range");
            if (r.j <= r.i) throw CatalogError(r.line, "comm requires j > i");
            if (seen_comm[r.j - 1][r.i - 1]) throw CatalogError(r.line, "duplicate comm relation");
            seen_comm[r.j - 1][r.i - 1] = true;
            check_word(p, w, r.j - 1, r.line, "comm " + std::to_string(r.j) + " " + std::to_string(r.i));
            p.set_comm(r.j - 1, r.i - 1, w);
        } else {
            if (r.i < 1 || r.i > p.ngens) throw CatalogError(r.line, "pow index out of range");
            if (seen_pow[r.i - 1]) throw CatalogError(r.line, "duplicate pow relation");
            seen_pow[r.i - 1] = true;
            check_word(p, w, r.i - 1, r.line, "pow " + std::to_string(r.i));
            p.set_power(r.i - 1, w);
        }
    }
    p.validate();
    return p;
}

}  // namespace

std::vector<PcPresentation> parse_catalog(const std::string& text) {
    std::vector<PcPresentation> out;
    std::optional<Block> cur;
    std::istringstream in(text);
    std::string raw;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        if (line == "[group]") {
            if (cur) out.push_back(finish_block(*cur));
            cur = Block{};
            cur->line = lineno;
            continue;
        }
        if (!cur) throw CatalogError(lineno, "content outside a [group] block");
        if (line.rfind("pow", 0) == 0 || line.rfind("comm", 0) == 0) {
            auto colon = line.find(':');
            if (colon == std::string::npos) throw CatalogError(lineno, "relation without ':'");
            std::istringstream head(line.substr(0, colon));
            std::string kw;
            head >> kw;
            PendingRelation r{lineno, kw == "comm", 0, 0, trim(line.substr(colon + 1))};
            std::string a, bstr, extra;
            if (kw == "pow") {
                head >> a;
                r.i = static_cast<int>(parse_int(a, lineno, "pow index"));
            } else if (kw == "comm") {
                head >> a >> bstr;
                r.j = static_cast<int>(parse_int(a, lineno, "comm index"));
                r.i = static_cast<int>(parse_int(bstr, lineno, "comm index"));
            } else {
                throw CatalogError(lineno, "unknown relation keyword '" + kw + "'");
            }
            if (head >> extra) throw CatalogError(lineno, "trailing tokens before ':'");
            cur->relations.push_back(r);
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) throw CatalogError(lineno, "expected 'key = value'");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key == "name") {
            if (val.empty()) throw CatalogError(lineno, "empty name");
            for (char ch : val)
                if (!(std::isalnum(static_cast<unsigned char>(ch)) || ch == '_' || ch == '-' || ch == '.'))
                    throw CatalogError(lineno, "invalid character in name '" + val + "'");
            cur->name = val;
        } else if (key == "prime") {
            long long q = parse_int(val, lineno, "prime");
            if (!is_prime(q)) throw CatalogError(lineno, "prime " + val + " is not prime");
            cur->prime = static_cast<int>(q);
        } else if (key == "ngens") {
            long long n = parse_int(val, lineno, "ngens");
            if (n < 0 || n > 64) throw CatalogError(lineno, "ngens out of range");
            cur->ngens = static_cast<int>(n);
        } else if (key == "orders") {
            std::istringstream vs(val);
            std::string tok;
            std::vector<int> orders;
            while (vs >> tok) orders.push_back(static_cast<int>(parse_int(tok, lineno, "relative order")));
            cur->orders = orders;
            cur->orders_line = lineno;
        } else {
            throw CatalogError(lineno, "unknown key '" + key + "'");
        }
    }
    if (cur) out.push_back(finish_block(*cur));
    return out;
}

std::string format_word(const NormalWord& w) {
    std::string s;
    for (size_t k = 0; k < w.size(); ++k) {
        if (w[k] == 0) continue;
        if (!s.empty()) s += ' ';
        s += "g" + std::to_string(k + 1);
        if (w[k] != 1) s += "^" + std::to_string(w[k]);
    }
    return s;
}

std::string format_presentation(const PcPresentation& p) {
    std::ostringstream os;
    os << "[group]\n";
    os << "name = " << p.name << "\n";
    if (p.prime) os << "prime = " << *p.prime << "\n";
    os << "ngens = " << p.ngens << "\n";
    os << "orders =";
    for (int o : p.relative_orders) os << ' ' << o;
    os << "\n";
    for (int i = 0; i < p.ngens; ++i)
        if (!p.is_trivial_word(p.power_words[i]))
            os << "pow " << i + 1 << " : " << format_word(p.power_words[i]) << "\n";
    for (int j = 0; j < p.ngens; ++j)
        for (int i = 0; i < j; ++i)
            if (!p.is_trivial_word(p.comm_words[j][i]))
                os << "comm " << j + 1 << " " << i + 1 << " : " << format_word(p.comm_words[j][i]) << "\n";
    return os.str();
}

}  // namespace schurlab

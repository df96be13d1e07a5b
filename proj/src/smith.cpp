#include <algorithm>
#include <sstream>

#include "schurlab/multiplier.hpp"

namespace schurlab {

void SparseIntMatrix::set(size_t r, size_t c, const mpz_class& v) {
    if (r >= rows || c >= cols) throw std::out_of_range("matrix index out of range");
    if (sgn(v) == 0) row_entries[r].erase(c);
    else row_entries[r][c] = v;
}

void SparseIntMatrix::add(size_t r, size_t c, const mpz_class& v) {
    if (r >= rows || c >= cols) throw std::out_of_range("matrix index out of range");
    if (sgn(v) == 0) return;
    auto [it, fresh] = row_entries[r].emplace(c, v);
    if (!fresh) {
        it->second += v;
        if (sgn(it->second) == 0) row_entries[r].erase(it);
    }
}

mpz_class SparseIntMatrix::get(size_t r, size_t c) const {
    auto it = row_entries.at(r).find(c);
    return it == row_entries[r].end() ? mpz_class(0) : it->second;
}

size_t SparseIntMatrix::nonzeros() const {
    size_t n = 0;
    for (const auto& r : row_entries) n += r.size();
    return n;
}

size_t SparseIntMatrix::append_row(const std::map<size_t, mpz_class>& entries) {
    row_entries.emplace_back();
    ++rows;
    for (const auto& [c, v] : entries) set(rows - 1, c, v);
    return rows - 1;
}

namespace {

DenseMatrix identity(size_t n) {
    DenseMatrix m(n, std::vector<mpz_class>(n, 0));
    for (size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

// In-place Smith form of a; u and v (optional) accumulate the row and
// column operations.
void dense_snf(DenseMatrix& a, DenseMatrix* u, DenseMatrix* v) {
    const size_t m = a.size();
    const size_t n = m ? a[0].size() : 0;
    auto row_axpy = [&](size_t dst, size_t src, const mpz_class& q) {  // row_dst -= q row_src
        for (size_t j = 0; j < n; ++j)
            if (sgn(a[src][j]) != 0) a[dst][j] -= q * a[src][j];
        if (u)
            for (size_t j = 0; j < m; ++j)
                if (sgn((*u)[src][j]) != 0) (*u)[dst][j] -= q * (*u)[src][j];
    };
    auto col_axpy = [&](size_t dst, size_t src, const mpz_class& q) {  // col_dst -= q col_src
        for (size_t i = 0; i < m; ++i)
            if (sgn(a[i][src]) != 0) a[i][dst] -= q * a[i][src];
        if (v)
            for (size_t i = 0; i < n; ++i)
                if (sgn((*v)[i][src]) != 0) (*v)[i][dst] -= q * (*v)[i][src];
    };
    auto swap_rows = [&](size_t x, size_t y) {
        if (x == y) return;
        std::swap(a[x], a[y]);
        if (u) std::swap((*u)[x], (*u)[y]);
    };
    auto swap_cols = [&](size_t x, size_t y) {
        if (x == y) return;
        for (auto& row : a) std::swap(row[x], row[y]);
        if (v)
            for (auto& row : *v) std::swap(row[x], row[y]);
    };

    for (size_t t = 0; t < std::min(m, n); ++t) {
        for (;;) {
            size_t pi = m, pj = n;
            for (size_t i = t; i < m; ++i)
                for (size_t j = t; j < n; ++j)
                    if (sgn(a[i][j]) != 0 && (pi == m || mpz_cmpabs(a[i][j].get_mpz_t(), a[pi][pj].get_mpz_t()) < 0)) {
                        pi = i;
                        pj = j;
                    }
            if (pi == m) return;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (size_t i = t + 1; i < m; ++i) {
                if (sgn(a[i][t]) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
                row_axpy(i, t, q);
                if (sgn(a[i][t]) != 0) clean = false;
            }
            for (size_t j = t + 1; j < n; ++j) {
                if (sgn(a[t][j]) == 0) continue;
                mpz_class q;
                mpz_tdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
                col_axpy(j, t, q);
                if (sgn(a[t][j]) != 0) clean = false;
            }
            if (!clean) continue;
            size_t bad = m;
            for (size_t i = t + 1; i < m && bad == m; ++i)
                for (size_t j = t + 1; j < n; ++j)
                    if (!mpz_divisible_p(a[i][j].get_mpz_t(), a[t][t].get_mpz_t())) {
                        bad = i;
                        break;
                    }
            if (bad == m) break;
            row_axpy(t, bad, mpz_class(-1));  // row_t += row_bad
        }
        if (sgn(a[t][t]) < 0) {
            for (size_t j = 0; j < n; ++j) a[t][j] = -a[t][j];
            if (u)
                for (size_t j = 0; j < m; ++j) (*u)[t][j] = -(*u)[t][j];
        }
    }
}

using SparseRow = std::vector<std::pair<size_t, mpz_class>>;

// dst -= f * src, both sorted by column
SparseRow row_combine(const SparseRow& dst, const mpz_class& f, const SparseRow& src) {
    SparseRow out;
    out.reserve(dst.size() + src.size());
    size_t i = 0, j = 0;
    while (i < dst.size() || j < src.size()) {
        if (j == src.size() || (i < dst.size() && dst[i].first < src[j].first)) {
            out.push_back(dst[i++]);
        } else if (i == dst.size() || src[j].first < dst[i].first) {
            out.emplace_back(src[j].first, -f * src[j].second);
            ++j;
        } else {
            mpz_class v = dst[i].second - f * src[j].second;
            if (sgn(v) != 0) out.emplace_back(dst[i].first, std::move(v));
            ++i;
            ++j;
        }
    }
    return out;
}

// x*p + y*q, sorted rows
SparseRow row_mix(const mpz_class& x, const SparseRow& p, const mpz_class& y, const SparseRow& q) {
    SparseRow out;
    size_t i = 0, j = 0;
    while (i < p.size() || j < q.size()) {
        mpz_class v;
        size_t c;
        if (j == q.size() || (i < p.size() && p[i].first < q[j].first)) {
            c = p[i].first;
            v = x * p[i++].second;
        } else if (i == p.size() || q[j].first < p[i].first) {
            c = q[j].first;
            v = y * q[j++].second;
        } else {
            c = p[i].first;
            v = x * p[i++].second + y * q[j++].second;
        }
        if (sgn(v) != 0) out.emplace_back(c, std::move(v));
    }
    return out;
}

bool has_unit(const SparseRow& r) {
    for (const auto& e : r)
        if (mpz_cmpabs_ui(e.second.get_mpz_t(), 1) == 0) return true;
    return false;
}

SNFResult sparse_snf(const SparseIntMatrix& a) {
    std::vector<SparseRow> rows(a.rows);
    std::vector<std::vector<size_t>> col_rows(a.cols);
    for (size_t r = 0; r < a.rows; ++r)
        for (const auto& [c, v] : a.row_entries[r]) {
            rows[r].emplace_back(c, v);
            col_rows[c].push_back(r);
        }
    std::vector<char> active(a.rows, 1), unit(a.rows, 0);
    for (size_t r = 0; r < a.rows; ++r) unit[r] = has_unit(rows[r]);

    size_t ones = 0;
    for (;;) {
        size_t best = a.rows;
        for (size_t r = 0; r < a.rows; ++r)
            if (active[r] && unit[r] && (best == a.rows || rows[r].size() < rows[best].size())) best = r;
        if (best == a.rows) break;
        size_t col = a.cols;
        mpz_class pv;
        for (const auto& [c, v] : rows[best])
            if (mpz_cmpabs_ui(v.get_mpz_t(), 1) == 0 && (col == a.cols || col_rows[c].size() < col_rows[col].size())) {
                col = c;
                pv = v;
            }
        const SparseRow piv = rows[best];
        active[best] = 0;
        for (size_t r : col_rows[col]) {
            if (!active[r]) continue;
            auto it = std::lower_bound(rows[r].begin(), rows[r].end(), std::make_pair(col, mpz_class(0)),
                                       [](const auto& x, const auto& y) { return x.first < y.first; });
            if (it == rows[r].end() || it->first != col) continue;
            mpz_class f = it->second * pv;  // pv = +-1, so f = coefficient / pv
            std::vector<size_t> before;
            before.reserve(rows[r].size());
            for (const auto& e : rows[r]) before.push_back(e.first);
            rows[r] = row_combine(rows[r], f, piv);
            for (const auto& e : rows[r])
                if (!std::binary_search(before.begin(), before.end(), e.first)) col_rows[e.first].push_back(r);
            unit[r] = has_unit(rows[r]);
            if (rows[r].empty()) active[r] = 0;
        }
        col_rows[col].clear();
        ++ones;
    }

    // Remaining rows: incremental lattice echelon keyed by leading column.
    std::map<size_t, SparseRow> basis;
    for (size_t r = 0; r < a.rows; ++r) {
        if (!active[r] || rows[r].empty()) continue;
        SparseRow row = std::move(rows[r]);
        while (!row.empty()) {
            size_t c = row[0].first;
            auto it = basis.find(c);
            if (it == basis.end()) {
                if (sgn(row[0].second) < 0)
                    for (auto& e : row) e.second = -e.second;
                basis.emplace(c, std::move(row));
                break;
            }
            SparseRow& b = it->second;
            const mpz_class a1 = b[0].second, a2 = row[0].second;
            if (mpz_divisible_p(a2.get_mpz_t(), a1.get_mpz_t())) {
                row = row_combine(row, a2 / a1, b);
                continue;
            }
            mpz_class g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a1.get_mpz_t(), a2.get_mpz_t());
            SparseRow nb = row_mix(s, b, t, row);
            SparseRow nr = row_mix(mpz_class(a1 / g), row, mpz_class(-(a2 / g)), b);
            b = std::move(nb);
            if (sgn(b[0].second) < 0)
                for (auto& e : b) e.second = -e.second;
            row = std::move(nr);
        }
    }

    std::vector<size_t> used;
    for (const auto& [c, r] : basis)
        for (const auto& e : r) used.push_back(e.first);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    DenseMatrix d(basis.size(), std::vector<mpz_class>(used.size(), 0));
    size_t i = 0;
    for (const auto& [c, r] : basis) {
        for (const auto& e : r) d[i][std::lower_bound(used.begin(), used.end(), e.first) - used.begin()] = e.second;
        ++i;
    }
    dense_snf(d, nullptr, nullptr);

    SNFResult res;
    const size_t len = std::min(a.rows, a.cols);
    res.diagonal.assign(ones, mpz_class(1));
    for (size_t t = 0; t < std::min(d.size(), used.size()); ++t)
        if (sgn(d[t][t]) != 0) res.diagonal.push_back(d[t][t]);
    res.rank = res.diagonal.size();
    res.diagonal.resize(len, mpz_class(0));
    return res;
}

}  // namespace

SNFResult snf(const SparseIntMatrix& a, bool want_transforms) {
    if (!want_transforms) return sparse_snf(a);
    DenseMatrix d(a.rows, std::vector<mpz_class>(a.cols, 0));
    for (size_t r = 0; r < a.rows; ++r)
        for (const auto& [c, v] : a.row_entries[r]) d[r][c] = v;
    DenseMatrix u = identity(a.rows), v = identity(a.cols);
    dense_snf(d, &u, &v);
    SNFResult res;
    for (size_t t = 0; t < std::min(a.rows, a.cols); ++t) {
        res.diagonal.push_back(d[t][t]);
        if (sgn(d[t][t]) != 0) ++res.rank;
    }
    res.row_transform = std::move(u);
    res.col_transform = std::move(v);
    return res;
}

mpz_class AbelianInvariants::order() const {
    mpz_class o = 1;
    for (const auto& t : torsion) o *= t;
    return o;
}

mpz_class AbelianInvariants::exponent() const { return torsion.empty() ? mpz_class(1) : torsion.back(); }

std::string AbelianInvariants::to_string() const {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < torsion.size(); ++i) os << (i ? "," : "") << torsion[i].get_str();
    os << "]";
    if (free_rank) os << " x Z^" << free_rank;
    return os.str();
}

AbelianInvariants cokernel_invariants(const SparseIntMatrix& a) {
    SNFResult s = snf(a, false);
    AbelianInvariants inv;
    for (const auto& d : s.diagonal)
        if (d > 1) inv.torsion.push_back(d);
    inv.free_rank = a.cols - s.rank;
    return inv;
}

}  // namespace schurlab

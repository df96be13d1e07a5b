#include <sstream>

#include "schurlab/verifier.hpp"

namespace schurlab {

int ceil_log_ratio(long long base, long long num, long long den) {
    if (base < 2 || den <= 0 || num < den) throw std::domain_error("ceil_log_ratio: need base >= 2 and num >= den > 0");
    int k = 0;
    for (long long acc = den; acc < num; ++k) acc *= base;
    return k;
}

int floor_log(long long base, long long x) {
    if (base < 2 || x < 1) throw std::domain_error("floor_log: need base >= 2 and x >= 1");
    int k = 0;
    for (long long acc = base; acc <= x; ++k) acc *= base;
    return k;
}

namespace {

void need_odd_prime(int p, const char* what) {
    if (p < 3 || !is_prime(p)) throw std::domain_error(std::string(what) + " needs an odd prime");
}

}  // namespace

int ellis_bound(int c) {
    if (c < 1) throw std::domain_error("class must be positive");
    return (c + 1) / 2;
}

int moravec_bound(int c) {
    if (c < 1) throw std::domain_error("class must be positive");
    return 2 * floor_log(2, c);
}

int odd_exponent_class_bound(int c) {
    if (c < 2) throw std::domain_error("odd-exponent class bound needs c > 1");
    return ceil_log_ratio(3, c + 1, 2);
}

int sambonet_bound(int c, int p) {
    need_odd_prime(p, "sambonet bound");
    return floor_log(p - 1, c) + 1;
}

int normal_class_bound(int c, int p) {
    need_odd_prime(p, "normal-subgroup class bound");
    return ceil_log_ratio(p - 1, c + 1, 1);
}

int large_class_bound(int c, int p) {
    need_odd_prime(p, "large-class bound");
    if (c < p) throw std::domain_error("large-class bound needs c >= p");
    return 1 + ceil_log_ratio(p - 1, c + 1, p + 1);
}

DerivedLengthBound derived_length_bound(int d, bool exponent_odd) {
    if (d < 1) throw std::domain_error("derived length must be positive");
    return {d, exponent_odd ? 0 : d - 1};
}

BoundsRow bounds(int c, int p, int n, int d, bool exponent_odd) {
    if (c < 2) throw std::domain_error("bounds need class c > 1");
    BoundsRow r;
    r.c = c;
    r.p = p;
    r.n = n;
    r.d = d;
    r.ellis = ellis_bound(c);
    r.moravec = moravec_bound(c);
    r.odd_exponent = odd_exponent_class_bound(c);
    if (p >= 3 && is_prime(p)) {
        r.sambonet = sambonet_bound(c, p);
        if (c >= p) r.large_class = large_class_bound(c, p);
    }
    if (d >= 1) r.derived = derived_length_bound(d, exponent_odd);
    return r;
}

std::vector<ClassBoundsRow> class_bounds_table() {
    struct Printed {
        int c, ellis, moravec, odd;
    };
    static const Printed printed[] = {{3, 2, 2, 1},   {4, 2, 4, 1},    {5, 3, 4, 1},    {6, 3, 4, 2},
                                      {17, 9, 8, 2}, {53, 27, 10, 3}, {161, 81, 14, 4}};
    std::vector<ClassBoundsRow> out;
    for (const auto& r : printed)
        out.push_back({r.c, ellis_bound(r.c), moravec_bound(r.c), odd_exponent_class_bound(r.c), r.ellis, r.moravec,
                       r.odd});
    return out;
}

std::vector<PrimeBoundsRow> prime_bounds_table() {
    struct Printed {
        int c, p, n;
        const char* moravec;
        int sambonet, large;  // printed powers of p
    };
    static const Printed printed[] = {{5, 3, 1, "3^2", 3, 2},    {5, 3, 2, "3^8", 6, 4},
                                      {7, 7, 1, "7^2", 2, 1},    {15, 13, 2, "13^9", 4, 4},
                                      {24, 5, 1, "5^4", 3, 2},   {168, 13, 1, "13^14", 3, 2}};
    std::vector<PrimeBoundsRow> out;
    for (const auto& r : printed)
        out.push_back({r.c, r.p, r.n, r.moravec, r.n * sambonet_bound(r.c, r.p), r.n * large_class_bound(r.c, r.p),
                       r.sambonet, r.large});
    return out;
}

std::string format_tables() {
    std::ostringstream os;
    os << "Class bounds: m with e(M(G)) | e(G)^m\n";
    os << "  c     ceil(c/2)  2floor(log2 c)  ceil(log3((c+1)/2))\n";
    for (const auto& r : class_bounds_table()) {
        char line[128];
        std::snprintf(line, sizeof line, "  %-5d %-10d %-15d %d", r.c, r.ellis, r.moravec, r.odd_exponent);
        os << line;
        if (!r.matches())
            os << "   MISMATCH printed " << r.printed_ellis << " " << r.printed_moravec << " " << r.printed_odd_exponent;
        os << "\n";
    }
    os << "\nPrime bounds: e(M(G)) | p^m for class c, exponent p^n\n";
    os << "  c     p    n   p^(k floor(log2 c))  p^(n(floor(log_{p-1} c)+1))  p^(n(1+ceil(log_{p-1}((c+1)/(p+1)))))\n";
    auto power = [](int p, int k) { return k == 1 ? std::to_string(p) : std::to_string(p) + "^" + std::to_string(k); };
    for (const auto& r : prime_bounds_table()) {
        char line[160];
        std::snprintf(line, sizeof line, "  %-5d %-4d %-3d %-20s %-29s %s", r.c, r.p, r.n,
                      (r.moravec_printed + " (echoed)").c_str(), power(r.p, r.sambonet_power).c_str(),
                      power(r.p, r.large_class_power).c_str());
        os << line;
        if (!r.sambonet_matches())
            os << "   [sambonet: printed " << power(r.p, r.printed_sambonet_power) << "]";
        if (!r.large_class_matches())
            os << "   [DISCREPANCY: formula gives " << power(r.p, r.large_class_power) << ", printed "
               << power(r.p, r.printed_large_class_power) << "]";
        os << "\n";
    }
    return os.str();
}

}  // namespace schurlab

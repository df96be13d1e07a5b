#include "schurlab/freenil.hpp"

namespace schurlab {

HallBasis::HallBasis(int letters, int cls) : letters_(letters), cls_(cls) {
    if (letters < 1 || letters > kMaxLetters) throw std::invalid_argument("letter count out of range");
    if (cls < 1 || cls > kMaxClass) throw std::invalid_argument("class out of range");
    for (int i = 0; i < letters; ++i) {
        BasicCommutator b;
        b.letter = i;
        elems_.push_back(b);
        images_.push_back(TruncatedSeries::generator(letters, cls, i));
    }
    for (int w = 2; w <= cls; ++w) {
        const size_t known = elems_.size();
        for (size_t l = 0; l < known; ++l)
            for (size_t r = 0; r < l; ++r) {
                const BasicCommutator& L = elems_[l];
                if (L.weight + elems_[r].weight != w) continue;
                if (L.letter < 0 && static_cast<size_t>(L.right) > r) continue;
                BasicCommutator b;
                b.left = static_cast<int>(l);
                b.right = static_cast<int>(r);
                b.weight = w;
                elems_.push_back(b);
                images_.push_back(commutator(images_[l], images_[r]));
            }
    }
}

std::vector<size_t> HallBasis::count_by_weight() const {
    std::vector<size_t> c(cls_, 0);
    for (const auto& b : elems_) ++c[b.weight - 1];
    return c;
}

std::vector<int> HallBasis::weights() const {
    std::vector<int> w;
    for (const auto& b : elems_) w.push_back(b.weight);
    return w;
}

std::string HallBasis::name(size_t i, const std::vector<std::string>& letter_names) const {
    const BasicCommutator& b = elems_.at(i);
    if (b.letter >= 0) {
        if (b.letter < static_cast<int>(letter_names.size())) return letter_names[b.letter];
        return "x" + std::to_string(b.letter + 1);
    }
    return "[" + name(b.left, letter_names) + "," + name(b.right, letter_names) + "]";
}

mpz_class witt_number(int letters, int weight) {
    auto mobius = [](int d) {
        int m = 1;
        for (int p = 2; p * p <= d; ++p)
            if (d % p == 0) {
                d /= p;
                if (d % p == 0) return 0;
                m = -m;
            }
        return d > 1 ? -m : m;
    };
    mpz_class s = 0;
    for (int d = 1; d <= weight; ++d) {
        if (weight % d) continue;
        mpz_class t;
        mpz_ui_pow_ui(t.get_mpz_t(), letters, weight / d);
        s += mobius(d) * t;
    }
    return s / weight;
}

}  // namespace schurlab

#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schurlab/freenil.hpp"

using namespace schurlab;

namespace {

using Word = std::vector<std::pair<int, long long>>;

Word random_word(std::mt19937_64& rng, int letters, int len) {
    std::uniform_int_distribution<int> letter(0, letters - 1), exp(-2, 2);
    Word w;
    for (int k = 0; k < len; ++k) {
        int e = exp(rng);
        if (e) w.push_back({letter(rng), e});
    }
    return w;
}

}  // namespace

TEST(HallBasis, CountsMatchNecklaces) {
    for (auto [k, c] : {std::pair{2, 6}, std::pair{3, 5}}) {
        HallBasis hb(k, c);
        auto counts = hb.count_by_weight();
        ASSERT_EQ(counts.size(), static_cast<size_t>(c));
        for (int w = 1; w <= c; ++w) {
            EXPECT_EQ(static_cast<long long>(counts[w - 1]), oracle::necklaces(k, w)) << k << " letters, weight " << w;
            EXPECT_EQ(witt_number(k, w), mpz_class(static_cast<long>(oracle::necklaces(k, w))));
        }
    }
}

TEST(HallBasis, ImagesStartAtTheirWeight) {
    HallBasis hb(2, 5);
    auto weights = hb.weights();
    for (size_t i = 0; i < hb.size(); ++i) EXPECT_EQ(hb.image(i).min_degree_above_constant(), weights[i]) << hb.name(i);
}

TEST(Series, GroupLaws) {
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        TruncatedSeries a = magnus(random_word(rng, 3, 6), 3, 5), b = magnus(random_word(rng, 3, 6), 3, 5);
        EXPECT_TRUE((a * a.inverse()).is_one());
        EXPECT_EQ(a.power(3), a * a * a);
        EXPECT_EQ(a.power(-2), (a * a).inverse());
        EXPECT_EQ(commutator(a, b), a * b * a.inverse() * b.inverse());
    }
}

TEST(Series, MagnusIsAHomomorphism) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        Word u = random_word(rng, 2, 5), v = random_word(rng, 2, 5), uv = u;
        uv.insert(uv.end(), v.begin(), v.end());
        EXPECT_EQ(magnus(uv, 2, 6), magnus(u, 2, 6) * magnus(v, 2, 6));
    }
}

// Products of basic commutators with distinct exponent vectors have distinct
// images, and decomposition recovers the exponents.
TEST(NormalForm, RoundTripAndFaithfulness) {
    HallBasis hb(2, 5);
    ProductBasis pb(hb);
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<int> e(-3, 3);
    std::vector<std::vector<mpz_class>> seen;
    std::vector<TruncatedSeries> images;
    for (int trial = 0; trial < 25; ++trial) {
        std::vector<mpz_class> exps(hb.size());
        for (auto& x : exps) x = e(rng);
        TruncatedSeries s = pb.compose(exps);
        EXPECT_EQ(pb.decompose(s), exps);
        for (size_t k = 0; k < seen.size(); ++k)
            if (seen[k] != exps) EXPECT_NE(images[k], s);
        seen.push_back(exps);
        images.push_back(s);
    }
}

TEST(NormalForm, ArbitraryWordDecomposes) {
    HallBasis hb(3, 4);
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        TruncatedSeries s = magnus(random_word(rng, 3, 8), 3, 4);
        auto exps = normal_form(s, hb);
        EXPECT_EQ(ProductBasis(hb).compose(exps), s);
    }
}

TEST(Binomial, FitRecoversKnownPolynomials) {
    auto family = [](long long n) -> mpz_class {
        mpz_class m = static_cast<long>(n);
        return 6 * binomial(m, 3) + 18 * binomial(m, 4) + 12 * binomial(m, 5);
    };
    BinomialPoly p = fit_binomial(family, 5);
    ASSERT_EQ(p.coef.size(), 6u);
    EXPECT_EQ(p.coef[3], 6);
    EXPECT_EQ(p.coef[4], 18);
    EXPECT_EQ(p.coef[5], 12);
    EXPECT_EQ(p.coef[1], 0);
    EXPECT_THROW(fit_binomial([](long long n) -> mpz_class { return mpz_class(1) << static_cast<mp_bitcnt_t>(n); }, 4), FitError);
}

TEST(Expr, ParseAndPrint) {
    auto e = CommutatorExpr::parse("x^n [y,x]^{C(n,2)} [y,x,x]^{C(n,3)}");
    EXPECT_EQ(e.letters(), (std::vector<std::string>{"x", "y"}));
    EXPECT_THROW(CommutatorExpr::parse("[x,y"), ExprParseError);
    EXPECT_THROW(CommutatorExpr::parse("x^"), ExprParseError);
}

TEST(Expr, VerifyIdentitySeparatesTrueFromFalse) {
    auto inv = CommutatorExpr::parse("[x,y]^-1");
    EXPECT_TRUE(verify_identity(inv, CommutatorExpr::parse("[y,x]"), 2, 4, 1, 3).passed);
    EXPECT_FALSE(verify_identity(inv, CommutatorExpr::parse("[x,y]"), 2, 4, 1, 3).passed);
    // (xy)^n in class 2: x^n y^n [y,x]^{C(n,2)} under x y x^-1 y^-1 brackets
    auto lhs = CommutatorExpr::parse("(x y)^n");
    auto good = CommutatorExpr::parse("x^n y^n [y,x]^{C(n,2)}");
    auto bad = CommutatorExpr::parse("x^n y^n [y,x]^{C(n,2)+C(n,3)}");
    EXPECT_TRUE(verify_identity(lhs, good, 2, 2, 1, 12).passed);
    EXPECT_FALSE(verify_identity(lhs, bad, 2, 2, 1, 12).passed);
}

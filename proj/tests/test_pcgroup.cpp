#include <gtest/gtest.h>

#include <random>

#include "oracles.hpp"
#include "schurlab/catalog.hpp"
#include "schurlab/pcgroup.hpp"

using namespace schurlab;

namespace {

const char* kHeisenberg = R"(
[group]
name = h
ngens = 3
orders = 3 3 3
comm 2 1 : g3
)";

PcPresentation only(const std::string& text) {
    auto v = parse_catalog(text);
    EXPECT_EQ(v.size(), 1u);
    return v.at(0);
}

const PcPresentation& bundled(const std::string& name) {
    const CatalogEntry* e = find_entry(load_bundled(), name);
    if (!e) throw std::runtime_error("missing " + name);
    return e->presentation;
}

}  // namespace

TEST(Parse, HeisenbergBlock) {
    PcPresentation p = only(kHeisenberg);
    EXPECT_EQ(p.ngens, 3);
    EXPECT_EQ(p.comm_words[1][0], (NormalWord{0, 0, 1}));
    EXPECT_EQ(p.common_prime(), 3);
}

TEST(Parse, CyclicFour) {
    PcPresentation p = only("[group]\nname = c4\nngens = 2\norders = 2 2\npow 1 : g2\n");
    PcGroup g(p);
    EXPECT_EQ(g.order(), 4u);
    EXPECT_EQ(g.exponent(), 4u);
}

TEST(Parse, RejectsBadInput) {
    EXPECT_THROW(parse_catalog("[group]\nname = x\nngens = 3\norders = 3 3 3\ncomm 1 2 : g3\n"), CatalogError);
    EXPECT_THROW(parse_catalog("[group]\nname = x\nngens = 2\norders = 4 2\n"), CatalogError);
    EXPECT_THROW(parse_catalog("[group]\nname = x\nngens = 2\norders = 2 2\npow 2 : g1\n"), CatalogError);
    EXPECT_THROW(parse_catalog("[group]\nname = x\nngens = 3\norders = 3 3 3\ncomm 3 2 : g2\n"), CatalogError);
    try {
        parse_catalog("[group]\nname = x\nngens = 2\norders = 2 2\nbogus line\n");
        FAIL();
    } catch (const CatalogError& e) {
        EXPECT_EQ(e.line(), 5);
    }
}

TEST(Parse, FormatRoundTrip) {
    for (const auto& e : load_bundled()) {
        PcPresentation q = only(format_presentation(e.presentation));
        EXPECT_EQ(q.power_words, e.presentation.power_words) << e.name();
        EXPECT_EQ(q.comm_words, e.presentation.comm_words) << e.name();
    }
}

TEST(Consistency, KnownGood) {
    EXPECT_TRUE(check_consistency(only(kHeisenberg)).empty());
    EXPECT_TRUE(check_consistency(only("[group]\nname = d8\nngens = 3\norders = 2 2 2\npow 2 : g3\ncomm 2 1 : g3\n"))
                    .empty());
}

TEST(Consistency, DetectsBrokenPowerRelation) {
    // g1^2 = g2 with [g2,g1] = g3: g1 cannot fail to commute with its own power
    auto v = check_consistency(
        only("[group]\nname = bad\nngens = 3\norders = 2 2 2\npow 1 : g2\ncomm 2 1 : g3\n"));
    ASSERT_FALSE(v.empty());
    EXPECT_FALSE(v[0].describe().empty());
}

TEST(Collector, GroupAxiomsOnRandomTriples) {
    std::mt19937_64 rng(7);
    for (const char* name : {"wreath_3_3", "dihedral_32", "quaternion_16", "maxclass_81_b", "heisenberg_5"}) {
        PcGroup g(bundled(name));
        std::uniform_int_distribution<std::uint64_t> pick(0, g.order() - 1);
        for (int k = 0; k < 300; ++k) {
            NormalWord a = g.decode(pick(rng)), b = g.decode(pick(rng)), c = g.decode(pick(rng));
            EXPECT_EQ(g.multiply(g.multiply(a, b), c), g.multiply(a, g.multiply(b, c))) << name;
            EXPECT_EQ(g.multiply(a, g.inverse(a)), g.identity()) << name;
            EXPECT_EQ(g.power(a, 5), g.multiply(g.power(a, 2), g.power(a, 3))) << name;
        }
    }
}

TEST(Collector, CodesAgreeWithWords) {
    PcGroup g(bundled("c9_semidirect_c9"));
    for (std::uint64_t a = 0; a < g.order(); a += 7)
        for (std::uint64_t b = 0; b < g.order(); b += 5)
            EXPECT_EQ(g.decode(g.mul(a, b)), g.multiply(g.decode(a), g.decode(b)));
}

// Invariants of the pc groups against the same groups built from explicit
// multiplication rules.
TEST(Structure, MatchesConcreteGroups) {
    std::vector<int> wreath_t{3, 4, 5, 6, 7, 8, 0, 1, 2}, wreath_x{1, 2, 0, 3, 4, 5, 6, 7, 8};
    std::vector<std::pair<std::string, oracle::TableGroup>> cases = {
        {"dihedral_8", oracle::metacyclic(4, 2, -1, 0)},
        {"quaternion_8", oracle::metacyclic(4, 2, -1, 2)},
        {"dihedral_64", oracle::metacyclic(32, 2, -1, 0)},
        {"quaternion_32", oracle::metacyclic(16, 2, -1, 8)},
        {"semidihedral_32", oracle::metacyclic(16, 2, 7, 0)},
        {"modular_16", oracle::metacyclic(8, 2, 5, 0)},
        {"modular_27", oracle::metacyclic(9, 3, 4, 0)},
        {"modular_81", oracle::metacyclic(27, 3, 10, 0)},
        {"c9_semidirect_c9", oracle::metacyclic(9, 9, 4, 0)},
        {"heisenberg_3", oracle::heisenberg(3)},
        {"heisenberg_5", oracle::heisenberg(5)},
        {"wreath_3_3", oracle::permutations({wreath_t, wreath_x})},
        {"abelian_3_3_9", oracle::abelian({3, 3, 9})},
        {"heisenberg_3_x_cyclic_3", oracle::direct_product(oracle::heisenberg(3), oracle::abelian({3}))},
        {"abelian_2_x_dihedral_8", oracle::direct_product(oracle::metacyclic(4, 2, -1, 0), oracle::abelian({2}))},
    };
    for (const auto& [name, ref] : cases) {
        PcGroup g(bundled(name));
        CharacteristicSubgroups cs = characteristic_subgroups(g);
        GroupFlags f = classify(g, cs);
        EXPECT_EQ(g.order(), ref.order()) << name;
        EXPECT_EQ(f.exponent, ref.exponent()) << name;
        EXPECT_EQ(f.nilpotency_class, ref.nilpotency_class()) << name;
        EXPECT_EQ(f.derived_length, ref.derived_length()) << name;
        EXPECT_EQ(cs.center.order(), ref.center_order()) << name;
        EXPECT_EQ(cs.lower_central.at(1).order(), ref.derived_order()) << name;
    }
}

TEST(Structure, FlagsOnSmallGroups) {
    {
        PcGroup g(bundled("heisenberg_3"));
        GroupFlags f = classify(g);
        EXPECT_EQ(f.is_regular, Tri::yes);  // class 2 < p
        EXPECT_FALSE(f.is_powerful);
        EXPECT_EQ(f.central_pn, 1);
        EXPECT_TRUE(f.is_metabelian);
    }
    {
        PcGroup g(bundled("modular_81"));
        GroupFlags f = classify(g);
        EXPECT_TRUE(f.is_powerful);  // gamma_2 = <r^9> lies in G^3
    }
    {
        PcGroup g(bundled("dihedral_8"));
        EXPECT_EQ(classify(g).is_regular, Tri::no);
    }
}

TEST(Structure, AbelianizationOfDihedral) {
    PcGroup g(bundled("dihedral_16"));
    auto cs = characteristic_subgroups(g);
    auto ab = abelianization_invariants(g, cs.lower_central.at(1));
    std::sort(ab.begin(), ab.end());
    EXPECT_EQ(ab, (std::vector<std::uint64_t>{2, 2}));
}

TEST(Structure, CapExceededAboveLimit) {
    EXPECT_THROW(
        {
            PcGroup g(bundled("cyclic_128"), 64);
            g.enumerate();
        },
        CapExceeded);
}

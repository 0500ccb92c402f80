#include <irrcount/irrcount.hpp>

#include <gtest/gtest.h>

using namespace irrcount;

namespace
{
    CountSpec spec(u64 p, unsigned r, unsigned m, u64 s, u64 h, u64 a)
    {
        CountSpec sp{p, r, m, s, h, FieldElement{a}, std::nullopt};
        sp.validate();
        return sp;
    }

    std::vector<u64> codes(PolyRecord const& poly)
    {
        std::vector<u64> out;
        for (auto c : poly.coeffs)
            out.push_back(c.code);
        return out;
    }
}

TEST(Oracle, ListCubicOverF2)
{
    auto polys = list_polys(spec(2, 1, 3, 1, 0, 0));
    ASSERT_EQ(polys.size(), 1u);
    EXPECT_EQ(codes(polys[0]), (std::vector<u64>{1, 1, 0, 1}));
    EXPECT_TRUE(list_polys(spec(2, 1, 2, 1, 0, 0)).empty());
    auto ones = list_polys(spec(2, 1, 3, 1, 0, 1));
    ASSERT_EQ(ones.size(), 1u);
    EXPECT_EQ(codes(ones[0]), (std::vector<u64>{1, 0, 1, 1}));
}

TEST(Oracle, ListMatchesCountAndIsSorted)
{
    for (u64 a = 0; a < 5; ++a)
        for (u64 h = 0; h < 2; ++h)
        {
            auto sp = spec(5, 1, 4, 2, h, a);
            auto polys = list_polys(sp);
            EXPECT_EQ(BigInt(polys.size()), brute_p_m(sp));
            for (std::size_t i = 1; i < polys.size(); ++i)
                EXPECT_LT(codes(polys[i - 1]), codes(polys[i]));
        }
}

TEST(Oracle, ScanPartitions)
{
    auto scan = brute_scan(3, 2, 3, 4);
    u64 all = 0;
    BigInt exact = 0;
    for (u64 a = 0; a < 9; ++a)
        for (u64 h = 0; h < 4; ++h)
        {
            all += scan.any_cell(FieldElement{a}, h);
            exact += scan.p_m(FieldElement{a}, h);
        }
    EXPECT_EQ(all, 728u);
    EXPECT_EQ(exact, necklace_count(9, 3));
}

TEST(Oracle, Caps)
{
    Limits tight;
    tight.oracle_cap = 1000;
    EXPECT_THROW(brute_scan(2, 1, 10, 1, std::nullopt, tight), Error);
    tight.oracle_cap = u64{1} << 22;
    tight.listing_cap = 2;
    EXPECT_THROW(list_polys(spec(2, 1, 8, 1, 0, 0), tight), Error);
}

TEST(Semiprimitive, Exponent)
{
    EXPECT_EQ(semiprimitive_exponent(2, 3), 1u);
    EXPECT_EQ(semiprimitive_exponent(2, 9), 3u);
    EXPECT_EQ(semiprimitive_exponent(3, 4), 1u);
    EXPECT_FALSE(semiprimitive_exponent(2, 7).has_value());
}

TEST(Semiprimitive, MonomialValues)
{
    // q = 4, t = 3, s = 3 over F_64^*
    EXPECT_EQ(semiprimitive_monomial_value(2, 1, 1, 3, 3, 0), 15);
    EXPECT_EQ(semiprimitive_monomial_value(2, 1, 1, 3, 3, 1), -9);
    // p = 3, e = 1, s = 4, nt odd: k_s = 2
    EXPECT_EQ(semiprimitive_k(3, 1, 1, 4), 2u);
    EXPECT_EQ(semiprimitive_monomial_value(3, 1, 1, 1, 4, 2), 8);
    EXPECT_EQ(semiprimitive_monomial_value(3, 1, 1, 1, 4, 0), -4);
    TowerCtx const tower(3, 2, 1);
    for (u64 i = 0; i < 4; ++i)
        EXPECT_EQ(monomial_sum(tower, 1, i, 4).as_integer(), semiprimitive_monomial_value(3, 1, 1, 1, 4, i));
}

TEST(Semiprimitive, CharacteristicTwoWholeField)
{
    EXPECT_EQ(semiprimitive_sum_char2(3, 1, 2, 1), -2);
    EXPECT_EQ(semiprimitive_sum_char2(3, 1, 2, 0), 4);
    EXPECT_THROW(semiprimitive_sum_char2(7, 1, 3, 0), Error);
}

TEST(Serialize, FieldRoundTrip)
{
    TowerCtx const tower(2, 3, 1);
    json j = field_json(tower);
    EXPECT_EQ(j["modulus"], (std::vector<u64>{1, 1, 0, 1}));
    PinnedField const pf = field_from_json(j);
    EXPECT_EQ(pf.g, tower.g_base());
    j["generator_index"] = 1; // the constant 1 is not primitive
    EXPECT_THROW(field_from_json(j), Error);
    j["generator_index"] = tower.g_base().code;
    j["modulus"] = std::vector<u64>{1, 0, 1, 1};
    EXPECT_THROW(field_from_json(j), Error);
}

TEST(Engine, ClosedDispatch)
{
    Engine eng;
    EXPECT_EQ(eng.count_closed(spec(5, 1, 5, 2, 0, 0)).method, "prime-closed");
    EXPECT_EQ(eng.count_closed(spec(2, 2, 5, 3, 0, 0)).method, "catalog");
    EXPECT_EQ(eng.count_closed(spec(2, 2, 5, 3, 0, 0)).value, 17);
    EXPECT_THROW(eng.count_closed(spec(5, 1, 4, 2, 0, 0)), Error);
    // catalog over a coarser coset sums the fixed-b cells
    EXPECT_EQ(eng.count(spec(2, 4, 5, 5, 2, 0), Method::Catalog).value, eng.count(spec(2, 4, 5, 5, 2, 0), Method::Brute).value);
}

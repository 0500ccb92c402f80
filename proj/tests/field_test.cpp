#include <irrcount/tower.hpp>

#include <gtest/gtest.h>

#include <set>

using namespace irrcount;

TEST(BuildField, PrimeFieldTwo)
{
    auto const f = FieldCtx::build(2, 1);
    EXPECT_EQ(f.order(), 2u);
    EXPECT_EQ(f.primitive(), f.one());
}

TEST(BuildField, F4Modulus)
{
    auto const f = FieldCtx::build(2, 2);
    EXPECT_EQ(f.modulus(), (PolyFp{1, 1, 1}));
}

TEST(BuildField, F5Primitive)
{
    auto const f = FieldCtx::build(5, 1);
    EXPECT_EQ(f.primitive().code, 2u);
}

TEST(BuildField, F8Modulus)
{
    auto const f = FieldCtx::build(2, 3);
    EXPECT_EQ(f.modulus(), (PolyFp{1, 1, 0, 1}));
}

TEST(BuildField, Errors)
{
    try
    {
        (void)FieldCtx::build(6, 1);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidPrime);
    }
    try
    {
        (void)FieldCtx::build(7, 0);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::InvalidDegree);
    }
}

TEST(BuildField, ModulusIsIrreducibleAndSmallest)
{
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{2, 4}, {3, 3}, {5, 2}, {2, 6}, {7, 2}})
    {
        auto const f = FieldCtx::build(p, r);
        EXPECT_TRUE(is_irreducible(p, f.modulus()));
        EXPECT_TRUE(f.is_primitive(f.primitive()));
        for (u64 code = 1; code < f.primitive().code; ++code)
            EXPECT_FALSE(f.is_primitive({code}));
    }
}

TEST(Irreducible, RabinRejectsProductOfSmallFactors)
{
    // (x^2+x+1)(x^4+x+1) has factor degrees {2,4}; gcd checks at k < 6 must catch it
    PolyFp f{1, 0, 1, 1, 1, 1, 1};
    EXPECT_FALSE(is_irreducible(2, f));
    EXPECT_TRUE(is_irreducible(2, PolyFp{1, 1, 0, 0, 0, 0, 1}));
}

TEST(BuildTower, F4OverF2)
{
    TowerCtx t(2, 1, 2);
    EXPECT_EQ(t.top().multiplicative_order(t.gamma()), 3u);
    EXPECT_EQ(t.g(), t.top().one());
    EXPECT_EQ(t.top().pow(t.gamma(), 3), t.top().one());
}

TEST(BuildTower, F64OverF4)
{
    TowerCtx t(2, 2, 3);
    EXPECT_EQ(t.top().pow(t.gamma(), 21), t.g());
    EXPECT_EQ(t.top().multiplicative_order(t.g()), 3u);
    EXPECT_EQ(t.restrict_to_base(t.g()), t.g_base());
}

TEST(BuildTower, F9OverF3)
{
    TowerCtx t(3, 1, 2);
    EXPECT_EQ(t.top().pow(t.gamma(), 4), t.g());
    EXPECT_EQ(t.g_base().code, 2u);
    EXPECT_EQ(t.g(), t.top().constant(2));
}

TEST(BuildTower, GammaTOrdersAndNorms)
{
    for (auto [p, r, m] : std::vector<std::tuple<u64, unsigned, unsigned>>{{2, 2, 6}, {3, 1, 6}, {5, 1, 4}, {2, 3, 4}})
    {
        TowerCtx tw(p, r, m);
        for (auto t64 : nt::divisors(m))
        {
            auto const t = static_cast<unsigned>(t64);
            auto const gt = tw.gamma_t(t);
            EXPECT_EQ(tw.top().multiplicative_order(gt), tw.subfield_order(t) - 1);
            EXPECT_TRUE(tw.in_subfield(gt, t));
            EXPECT_EQ(tw.norm_rel(gt, t), tw.g());
        }
    }
}

TEST(BuildTower, GIsIndependentOfM)
{
    for (unsigned m = 1; m <= 6; ++m)
    {
        TowerCtx tw(2, 2, m);
        EXPECT_EQ(tw.g_base().code, FieldCtx::build(2, 2).primitive().code);
        EXPECT_EQ(tw.restrict_to_base(tw.g()), tw.g_base());
    }
}

TEST(TraceNorm, ConstantsAndF4)
{
    TowerCtx tw(3, 1, 3);
    for (u64 c = 0; c < 3; ++c)
    {
        auto const x = tw.top().constant(static_cast<std::int64_t>(c));
        EXPECT_EQ(tw.trace_rel(x, 3), tw.top().constant(static_cast<std::int64_t>(3 * c)));
        EXPECT_EQ(tw.norm_rel(x, 3), tw.top().pow(x, 3));
    }
    TowerCtx f4(2, 1, 2);
    auto const omega = f4.top().x();
    EXPECT_EQ(f4.trace_rel(omega, 2), f4.top().one());
}

TEST(TraceNorm, F9NormOfGamma)
{
    TowerCtx tw(3, 1, 2);
    EXPECT_EQ(tw.norm_rel(tw.gamma_t(2), 2), tw.top().constant(2));
}

TEST(TraceNorm, SubfieldViolation)
{
    TowerCtx tw(2, 1, 4);
    try
    {
        (void)tw.trace_rel(tw.gamma(), 2);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::SubfieldViolation);
    }
}

TEST(TraceNorm, TowerPropertiesExhaustive)
{
    for (auto [p, r, m] : std::vector<std::tuple<u64, unsigned, unsigned>>{
             {2, 1, 6}, {2, 2, 6}, {3, 1, 4}, {5, 1, 4}, {2, 1, 12}, {7, 1, 4}, {3, 2, 4}})
    {
        TowerCtx tw(p, r, m);
        auto const& F = tw.top();
        for (auto t64 : nt::divisors(m))
        {
            auto const t = static_cast<unsigned>(t64);
            std::set<u64> trace_image, norm_image;
            u64 const step = (F.order() - 1) / (tw.subfield_order(t) - 1);
            std::vector<FieldElement> sub{F.zero()};
            for (u64 k = 0; k < tw.subfield_order(t) - 1; ++k)
                sub.push_back(tw.top_log().exp(k * step));
            for (auto x : sub)
            {
                auto const tr_m = tw.trace_rel(x, m);
                auto const tr_t = tw.trace_rel(x, t);
                EXPECT_EQ(tr_m, F.scale(tr_t, (m / t) % p));
                EXPECT_EQ(tw.norm_rel(x, m), tw.norm_rel(F.pow(x, m / t), t));
                EXPECT_EQ(tw.abs_trace(x, t), tw.base().abs_trace(tw.restrict_to_base(tr_t)));
                trace_image.insert(tr_t.code);
                norm_image.insert(tw.norm_rel(x, t).code);
            }
            EXPECT_EQ(trace_image.size(), tw.q());
            EXPECT_EQ(norm_image.size(), tw.q());
            // multiplicativity and linearity on a sample
            for (std::size_t i = 1; i < sub.size(); i += 97)
                for (std::size_t j = 1; j < sub.size(); j += 89)
                {
                    auto const x = sub[i], y = sub[j];
                    EXPECT_EQ(tw.norm_rel(F.mul(x, y), t), F.mul(tw.norm_rel(x, t), tw.norm_rel(y, t)));
                    EXPECT_EQ(tw.trace_rel(F.add(x, y), t), F.add(tw.trace_rel(x, t), tw.trace_rel(y, t)));
                }
        }
    }
}

TEST(Dlog, Basics)
{
    TowerCtx tw(2, 2, 3);
    auto const& F = tw.top();
    EXPECT_EQ(F.dlog(F.one(), tw.gamma()), 0u);
    EXPECT_EQ(F.dlog(tw.gamma(), tw.gamma()), 1u);
    EXPECT_EQ(F.dlog(tw.g(), tw.gamma()), 21u);
    try
    {
        (void)F.dlog(F.zero(), tw.gamma());
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::ZeroHasNoLog);
    }
}

TEST(Dlog, RoundTripAndLargeField)
{
    TowerCtx tw(3, 1, 6);
    auto const& F = tw.top();
    for (u64 k = 0; k < F.order() - 1; ++k)
        ASSERT_EQ(F.dlog(F.pow(tw.gamma(), k), tw.gamma()), k);
    // outside table range: F_{2^40}
    auto const big = FieldCtx::build(2, 40);
    auto const g = big.primitive();
    for (u64 k : {u64{0}, u64{1}, u64{123456789}, (u64{1} << 40) - 2})
        EXPECT_EQ(big.dlog(big.pow(g, k), g), k);
}

TEST(MinPoly, Examples)
{
    TowerCtx f4(2, 1, 2);
    auto const mp = f4.min_poly(f4.top().x());
    EXPECT_EQ(mp.degree, 2u);
    ASSERT_EQ(mp.coeffs.size(), 3u);
    EXPECT_EQ(mp.coeffs[0].code, 1u);
    EXPECT_EQ(mp.coeffs[1].code, 1u);
    EXPECT_EQ(mp.coeffs[2].code, 1u);

    TowerCtx f8(2, 1, 3);
    EXPECT_EQ(f8.gamma(), f8.top().x());
    auto const mp8 = f8.min_poly(f8.gamma());
    std::vector<u64> codes;
    for (auto c : mp8.coeffs)
        codes.push_back(c.code);
    EXPECT_EQ(codes, (std::vector<u64>{1, 1, 0, 1}));

    TowerCtx t5(5, 1, 2);
    auto const c = t5.top().constant(3);
    auto const mp5 = t5.min_poly(c);
    EXPECT_EQ(mp5.degree, 1u);
    EXPECT_EQ(mp5.coeffs[0].code, 2u); // x - 3
}

TEST(MinPoly, RootsAndIrreducibility)
{
    TowerCtx tw(2, 2, 3);
    for (u64 code = 0; code < tw.top().order(); code += 5)
    {
        FieldElement const x{code};
        auto const mp = tw.min_poly(x);
        EXPECT_TRUE(tw.evaluate(mp.coeffs, x).is_zero());
        EXPECT_EQ(mp.coeffs.size(), mp.degree + 1);
        EXPECT_EQ(mp.coeffs.back(), tw.base().one());
    }
}

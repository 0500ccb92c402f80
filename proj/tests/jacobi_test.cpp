#include <irrcount/char_sums.hpp>
#include <irrcount/jacobi_closed.hpp>

#include <gtest/gtest.h>

using namespace irrcount;

TEST(QuarticParams, Examples)
{
    auto const a = quartic_params(5, 2);
    EXPECT_EQ(a.a4, 1);
    EXPECT_EQ(a.b4, 2);
    EXPECT_EQ(a.pi.norm(), 5);
    auto const b = quartic_params(13, 2);
    EXPECT_EQ(b.a4, -3);
    EXPECT_EQ(b.b4, 2);
    EXPECT_EQ(b.pi * b.pi.conj(), (GaussianInt{13, 0}));
}

TEST(CubicParams, Examples)
{
    auto const a = cubic_params(7, 3);
    EXPECT_EQ(a.a3, 2);
    EXPECT_EQ(a.b3, 1);
    EXPECT_EQ(a.pi.norm(), 7);
    auto const b = cubic_params(13, 2);
    EXPECT_EQ(b.a3, -1);
    EXPECT_EQ(b.b3, 2);
    EXPECT_EQ(b.pi * b.pi.conj(), (EisensteinInt{13, 0}));
}

TEST(JacobiParams, Errors)
{
    try
    {
        (void)quartic_params(7, 3);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::BadResidue);
    }
    try
    {
        (void)cubic_params(11, 2);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::BadResidue);
    }
    TowerCtx f9(3, 2, 1);
    try
    {
        (void)jacobi_closed(4, 2, f9);
        FAIL();
    }
    catch (Error const& e)
    {
        EXPECT_EQ(e.kind(), ErrorKind::UnsupportedGeneralQ);
    }
}

TEST(JacobiClosed, Examples)
{
    TowerCtx f5(5, 1, 1);
    EXPECT_EQ(jacobi_closed(2, 2, f5).as_integer(), BigInt(-1));
    EXPECT_EQ(jacobi_closed(4, 1, f5).as_integer(), BigInt(1));
    TowerCtx f7(7, 1, 1);
    auto const cp = cubic_params(7, f7.g_base().code);
    EXPECT_EQ(jacobi_closed(3, 3, f7), (-cp.pi).to_cyc());
    EXPECT_EQ(jacobi_closed(3, 3, f7), jacobi_brute(f7, {3, 1}, 3));
}

TEST(JacobiClosed, MatchesBruteOnSmallPrimes)
{
    for (u64 p = 3; p <= 37; p += 2)
    {
        if (!nt::is_prime(p))
            continue;
        TowerCtx tw(p, 1, 1);
        for (unsigned order : {2u, 3u, 4u})
        {
            if ((p - 1) % order != 0)
                continue;
            for (unsigned t = 1; t <= 4; ++t)
            {
                auto const brute = jacobi_brute(tw, {order, 1}, t);
                EXPECT_EQ(jacobi_closed(order, t, tw), brute) << p << " " << order << " " << t;
                if (t % order != 0)
                    EXPECT_EQ((brute * brute.conj()).as_integer(), BigInt(nt::checked_pow(p, t - 1)));
            }
        }
    }
}

TEST(JacobiClosed, QuadraticOverPrimePowers)
{
    for (auto [p, r] : std::vector<std::pair<u64, unsigned>>{{3, 2}, {5, 2}, {3, 3}})
    {
        TowerCtx tw(p, r, 1);
        for (unsigned t = 1; t <= 3; ++t)
            EXPECT_EQ(jacobi_closed(2, t, tw), jacobi_brute(tw, {2, 1}, t));
    }
}

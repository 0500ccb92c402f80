#include <irrcount/counting.hpp>

#include <gtest/gtest.h>

using namespace irrcount;

namespace
{
    Counter& counter()
    {
        static Counter c;
        return c;
    }

    CountSpec spec(u64 p, unsigned r, unsigned m, u64 s, u64 h, u64 a)
    {
        CountSpec sp{p, r, m, s, h, FieldElement{a}, std::nullopt};
        sp.validate();
        return sp;
    }
}

TEST(Params, Derivation)
{
    auto tp = derive_params(spec(5, 1, 12, 4, 0, 0), 6);
    EXPECT_EQ(tp.d, 2u);
    EXPECT_EQ(tp.l, 2u);
    for (u64 h = 0; h < 4; ++h)
    {
        EXPECT_EQ(*derive_params(spec(5, 1, 3, 4, h, 0), 3).i0, h);
        EXPECT_EQ(*derive_params(spec(5, 1, 3, 4, h, 0), 1).i0, 3 * h % 4);
    }
    auto absent = derive_params(spec(5, 1, 4, 4, 1, 0), 2);
    EXPECT_EQ(absent.d, 2u);
    EXPECT_FALSE(absent.i0.has_value());
}

TEST(Params, A0)
{
    // q = 5, m/t = 3, a = 1: a0 = -3 = 2
    auto tp = derive_params(spec(5, 1, 3, 2, 0, 1), 1);
    ASSERT_TRUE(tp.a0.has_value());
    EXPECT_EQ(tp.a0->code, 2u);
    EXPECT_FALSE(derive_params(spec(5, 1, 5, 2, 0, 1), 1).a0.has_value());
}

TEST(Special, SmallCases)
{
    EXPECT_EQ(*Counter::n_t_special(spec(5, 1, 5, 2, 0, 0), 1), 2);
    EXPECT_EQ(*Counter::n_t_special(spec(5, 1, 5, 2, 0, 3), 1), 0);
    EXPECT_EQ(*Counter::n_t_special(spec(5, 1, 4, 4, 1, 0), 2), 0);
    EXPECT_FALSE(Counter::n_t_special(spec(5, 1, 3, 2, 0, 0), 3).has_value());
    EXPECT_EQ(brute_n_t(spec(5, 1, 5, 2, 0, 0), 1), 2);
}

TEST(MT, GeneralExamples)
{
    auto& c = counter();
    EXPECT_EQ(c.m_t_general(spec(2, 2, 3, 3, 0, 0), 3), 45);
    EXPECT_EQ(c.n_t(spec(2, 2, 3, 3, 0, 0), 3, Method::General).value, 9);
    // a = 0, l = 1: M_t = 1 - q
    EXPECT_EQ(c.m_t_general(spec(5, 1, 3, 2, 0, 0), 3), -4);
    // a != 0, s/d = 1: M_t = 1
    EXPECT_EQ(c.m_t_general(spec(5, 1, 3, 1, 0, 2), 3), 1);
    // q = 5, m = t = 3, a = 1, h = 0
    EXPECT_EQ(c.m_t_general(spec(5, 1, 3, 2, 0, 1), 3), 26);
}

TEST(MT, ClosedPathsAgree)
{
    auto& c = counter();
    struct Case { u64 p; unsigned r, m, t; u64 s; };
    for (auto cs : {Case{5, 1, 3, 3, 2}, Case{5, 1, 4, 2, 4}, Case{7, 1, 6, 3, 3}, Case{7, 1, 4, 4, 6}, Case{2, 2, 3, 3, 3},
                    Case{2, 2, 2, 2, 3}, Case{13, 1, 2, 2, 4}, Case{3, 2, 4, 4, 8}, Case{2, 3, 3, 3, 7}})
    {
        u64 const q = nt::checked_pow(cs.p, cs.r);
        for (u64 a = 0; a < q; ++a)
            for (u64 h = 0; h < cs.s; ++h)
            {
                auto sp = spec(cs.p, cs.r, cs.m, cs.s, h, a);
                if (Counter::n_t_special(sp, cs.t))
                    continue;
                SCOPED_TRACE("p=" + std::to_string(cs.p) + " r=" + std::to_string(cs.r) + " t=" + std::to_string(cs.t) +
                             " s=" + std::to_string(cs.s) + " h=" + std::to_string(h) + " a=" + std::to_string(a));
                BigInt const M = c.m_t_general(sp, cs.t);
                EXPECT_EQ(c.m_t_monomial(sp, cs.t), M);
                EXPECT_EQ(c.m_t_gauss(sp, cs.t), M);
                EXPECT_EQ(c.m_t_gauss_dh(sp, cs.t), M);
                EXPECT_EQ(c.m_t_jacobi(sp, cs.t, true, true), M);
                EXPECT_EQ(c.m_t_jacobi(sp, cs.t, false, true), M);
                EXPECT_EQ(c.m_t_closed(sp, cs.t, a == 0 ? MtPath::Lemma4 : MtPath::Lemma7), M);
                EXPECT_EQ(c.m_t_closed(sp, cs.t, a == 0 ? MtPath::Lemma5 : MtPath::Lemma6), M);
                EXPECT_EQ(Counter::n_t_from_m(sp, derive_params(sp, cs.t), M), brute_n_t(sp, cs.t));
            }
    }
}

TEST(MT, PathPreconditions)
{
    auto& c = counter();
    EXPECT_THROW(c.m_t_closed(spec(5, 1, 3, 2, 0, 1), 3, MtPath::Lemma4), Error);
    EXPECT_THROW(c.m_t_closed(spec(5, 1, 3, 2, 0, 0), 3, MtPath::Lemma6), Error);
    EXPECT_THROW(c.m_t_general(spec(5, 1, 5, 2, 0, 0), 1), Error);
}

TEST(Table, Examples)
{
    auto& c = counter();
    EXPECT_EQ(c.n_t_table(spec(5, 1, 3, 2, 0, 0), 3, NtTable::S2), 12);
    EXPECT_EQ(c.n_t_table(spec(5, 1, 6, 2, 0, 1), 3, NtTable::S2), 25);
    EXPECT_EQ(c.n_t_table(spec(13, 1, 4, 4, 0, 0), 2, NtTable::S4), 0);
    EXPECT_EQ(c.n_t_from_m(spec(13, 1, 4, 4, 0, 0), derive_params(spec(13, 1, 4, 4, 0, 0), 2),
                           c.m_t_general(spec(13, 1, 4, 4, 0, 0), 2)),
              0);
    EXPECT_EQ(c.n_t_table(spec(2, 2, 3, 3, 0, 0), 3, NtTable::Semiprimitive), 9);
    EXPECT_THROW(c.n_t_table(spec(2, 2, 3, 3, 0, 0), 3, NtTable::S2), Error);
    EXPECT_THROW(c.n_t_table(spec(7, 1, 3, 3, 0, 0), 3, NtTable::S4), Error);
}

TEST(PM, Examples)
{
    auto& c = counter();
    EXPECT_EQ(c.p_m(spec(2, 1, 12, 1, 0, 0), Method::Auto).value, 165);
    auto b1 = CountSpec::with_b(2, 2, 5, 3, FieldElement{1}, FieldElement{0});
    EXPECT_EQ(c.p_m(b1, Method::Auto).value, 17);
    EXPECT_EQ(c.p_m(b1, Method::Brute).value, 17);
    for (u64 h = 0; h < 7; ++h)
        EXPECT_EQ(c.p_m(spec(2, 3, 3, 7, h, 0), Method::Auto).value, 3);
}

TEST(PM, PrimeClosedExamples)
{
    auto& c = counter();
    EXPECT_EQ(c.p_m_prime_closed(spec(5, 1, 3, 2, 0, 0)), 4);
    EXPECT_EQ(c.p_m_prime_closed(spec(5, 1, 5, 2, 0, 0)), 62);
    EXPECT_EQ(c.p_m_prime_closed(spec(7, 1, 5, 3, 0, 0)), 160);
    EXPECT_THROW(c.p_m_prime_closed(spec(5, 1, 4, 2, 0, 0)), Error);
    EXPECT_THROW(c.p_m_prime_closed(spec(3, 2, 5, 4, 0, 0)), Error);
}

namespace
{
    void check_all_paths(u64 p, unsigned r, unsigned m, u64 s)
    {
        auto& c = counter();
        u64 const q = nt::checked_pow(p, r);
        auto const scan = brute_scan(p, r, m, s);
        for (u64 a = 0; a < q; ++a)
            for (u64 h = 0; h < s; ++h)
            {
                auto sp = spec(p, r, m, s, h, a);
                SCOPED_TRACE("p=" + std::to_string(p) + " r=" + std::to_string(r) + " m=" + std::to_string(m) +
                             " s=" + std::to_string(s) + " h=" + std::to_string(h) + " a=" + std::to_string(a));
                BigInt const truth = scan.p_m(FieldElement{a}, h);
                EXPECT_EQ(c.p_m(sp, Method::General).value, truth);
                EXPECT_EQ(c.p_m(sp, Method::Auto).value, truth);
                EXPECT_EQ(c.p_m(sp, Method::GaussDh).value, truth);
                bool table = false;
                for (auto tb : {NtTable::S2, NtTable::S3, NtTable::S4, NtTable::Semiprimitive})
                    table = table || Counter::table_applicable(sp, tb);
                if (table)
                    EXPECT_EQ(c.p_m(sp, Method::Table).value, truth);
                if (nt::is_prime(m) && m > 2 && ((s == 2 && p != 2) || ((s == 3 || s == 4) && r == 1 && !(s == 3 && m == 3))))
                    EXPECT_EQ(c.p_m_prime_closed(sp), truth);
            }
    }
}

TEST(Grid, SquareClass)
{
    for (u64 q : {3, 5, 7})
        for (unsigned m = 2; m <= 6; ++m)
            check_all_paths(q, 1, m, 2);
    for (unsigned m = 2; m <= 4; ++m)
        check_all_paths(3, 2, m, 2);
}

TEST(Grid, QuarticAndCubic)
{
    for (unsigned m = 2; m <= 5; ++m)
        check_all_paths(5, 1, m, 4);
    for (unsigned m = 2; m <= 3; ++m)
        check_all_paths(13, 1, m, 4);
    for (unsigned m = 2; m <= 5; ++m)
        check_all_paths(7, 1, m, 3);
    for (unsigned m = 2; m <= 3; ++m)
        check_all_paths(13, 1, m, 3);
}

TEST(Grid, Semiprimitive)
{
    for (unsigned m = 2; m <= 6; ++m)
        check_all_paths(2, 2, m, 3);
    for (unsigned m = 2; m <= 4; ++m)
        check_all_paths(3, 2, m, 4);
    for (unsigned m = 2; m <= 3; ++m)
        check_all_paths(2, 4, m, 5);
}

#pragma once

#include <irrcount/counting.hpp>
#include <irrcount/quadratic.hpp>

#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <tuple>
#include <vector>

namespace irrcount
{
    enum class Index2Kind
    {
        Semiprimitive,
        Case1, // N = p2 = 7 mod 8
        Case2, // N = p1 p2, p1 = 5, p2 = 3 mod 8, 2 primitive mod both
        Case3, // N = p1 p2, p1 = 3, 5 mod 8, p2 = 7 mod 8, ord_{p1} 2 = p1 - 1, ord_{p2} 2 = (p2 - 1)/2
        Other,
    };

    constexpr std::string_view to_string(Index2Kind k) noexcept
    {
        switch (k)
        {
        case Index2Kind::Semiprimitive: return "semiprimitive";
        case Index2Kind::Case1: return "index2-case1";
        case Index2Kind::Case2: return "index2-case2";
        case Index2Kind::Case3: return "index2-case3";
        case Index2Kind::Other: return "other";
        }
        return "?";
    }

    struct Index2Class
    {
        u64 N = 0;
        Index2Kind kind = Index2Kind::Other;
        u64 ord = 0; // ord_N 2
        u64 p1 = 0;
        u64 p2 = 0;
    };

    inline Index2Class classify(u64 N)
    {
        if (N < 3 || N % 2 == 0)
            throw Error(ErrorKind::InvalidInput, "N must be odd and greater than 1");
        Index2Class out;
        out.N = N;
        out.ord = nt::mult_order(2, N);
        if (semiprimitive_exponent(2, N))
        {
            out.kind = Index2Kind::Semiprimitive;
            return out;
        }
        if (2 * out.ord != nt::euler_phi(N))
            return out;
        auto const f = nt::factorize(N);
        if (f.size() == 1 && f[0].second == 1 && N % 8 == 7)
        {
            out.kind = Index2Kind::Case1;
            out.p2 = N;
            return out;
        }
        if (f.size() == 2 && f[0].second == 1 && f[1].second == 1)
        {
            for (int swap = 0; swap < 2; ++swap)
            {
                u64 const a = swap ? f[1].first : f[0].first;
                u64 const b = swap ? f[0].first : f[1].first;
                bool const a_prim = nt::mult_order(2, a) == a - 1;
                if (a % 8 == 5 && b % 8 == 3 && a_prim && nt::mult_order(2, b) == b - 1)
                {
                    out.kind = Index2Kind::Case2;
                    out.p1 = a;
                    out.p2 = b;
                    return out;
                }
                if ((a % 8 == 3 || a % 8 == 5) && b % 8 == 7 && a_prim && nt::mult_order(2, b) == (b - 1) / 2 &&
                    !semiprimitive_exponent(2, b))
                {
                    out.kind = Index2Kind::Case3;
                    out.p1 = a;
                    out.p2 = b;
                    return out;
                }
            }
        }
        return out;
    }

    /// The 2-cyclotomic coset mod N containing i.
    inline std::set<u64> coset2(u64 N, u64 i)
    {
        if (N == 0)
            throw Error(ErrorKind::InvalidInput, "N must be positive");
        std::set<u64> out;
        for (u64 x = i % N; out.insert(x).second; x = 2 * x % N)
        {
        }
        return out;
    }

    struct GaussResolution
    {
        u64 N = 0;
        unsigned r_prime = 0;
        int c = 0;
        QuadPow value;  // F_{r'}(chi) as a quadratic integer
        CycInt direct;  // the same sum computed over F_{2^{r'}}
    };

    namespace detail
    {
        inline QuadPow gauss_candidate(u64 N, int c)
        {
            switch (N)
            {
            case 7: return QuadPow(7, -1, c);
            case 15: return QuadPow(15, 1, c);
            case 21: return QuadPow(7, -6, -2 * c);
            case 23: return QuadPow(23, -24, 8 * c);
            default: throw Error(ErrorKind::InvalidInput, "no two-candidate Gauss sum form for N = " + std::to_string(N));
            }
        }
    }

    /// F_{r'}(chi) over F_{2^{r'}}, r' = ord_N 2, with chi(delta) = zeta_N for delta the norm of the
    /// tower's primitive element; matched against the two sign candidates.
    inline GaussResolution resolve_gauss(TowerCtx const& tower, u64 N, Limits const& limits = default_limits())
    {
        if (tower.characteristic() != 2)
            throw Error(ErrorKind::InvalidInput, "Gauss sign resolution is for characteristic 2");
        GaussResolution out;
        out.N = N;
        out.r_prime = static_cast<unsigned>(nt::mult_order(2, N));
        if (tower.top().degree() % out.r_prime != 0)
            throw Error(ErrorKind::SubfieldViolation, "F_2^" + std::to_string(out.r_prime) + " is not a subfield of the tower");
        out.direct = gauss_sum_prime_subfield(tower, out.r_prime, MultChar{N, 1}, limits);
        for (int c : {1, -1})
        {
            QuadPow const cand = detail::gauss_candidate(N, c);
            if (cand.to_cyc().embed(2 * N) == out.direct)
            {
                ensure(out.c == 0, "both sign candidates match");
                out.c = c;
                out.value = cand;
            }
        }
        if (out.c == 0)
            throw Error(ErrorKind::NoCandidateMatch, "Gauss sum for N = " + std::to_string(N) + " matches neither candidate: " +
                                                         out.direct.to_string());
        return out;
    }

    /// Resolution on the canonical F_{2^{r'}} (no tower context).
    inline GaussResolution resolve_gauss(u64 N, Limits const& limits = default_limits())
    {
        TowerCtx const tower(2, static_cast<unsigned>(nt::mult_order(2, N)), 1, std::nullopt, limits);
        return resolve_gauss(tower, N, limits);
    }

    /// Evaluation context for one catalog cell.
    struct CatalogCtx
    {
        unsigned r = 1;
        u64 h = 0;                          // ind_g b
        std::function<int(u64)> c_of;       // resolved sign for N in {7, 15, 21, 23}

        BigInt q() const { return big_pow(2, r); }
        QSqrt2 Q(u64 k) const { return QSqrt2(big_pow(2, u64{r} * k)); }
        /// sqrt(q)^k
        QSqrt2 SQ(u64 k) const { return QSqrt2::sqrt2_pow(static_cast<std::int64_t>(r * k)); }
        static QSqrt2 frac(BigInt const& a, BigInt const& b) { return QSqrt2(BigRational(a, b)); }
        QSqrt2 over_qm1(QSqrt2 const& x) const { return x * frac(1, q() - 1); }
        int pm(u64 ord) const { return (r / ord) % 2 == 0 ? 1 : -1; }
        bool div(u64 n) const { return h % n == 0; }
        /// ind b in C_{sign c * i}^N
        bool in_c(u64 N, u64 i, int sign, u64 resolved_N) const
        {
            int const c = c_of(resolved_N) * sign;
            u64 const label = c > 0 ? i % N : (N - i % N) % N;
            return coset2(N, label).count(h % N) != 0;
        }
    };

    struct CatalogBranch
    {
        unsigned m = 0;
        std::string_view name;
        std::function<bool(unsigned)> r_guard;
        std::function<bool(CatalogCtx const&)> coset_guard;
        std::function<QSqrt2(CatalogCtx const&)> value; // P_m
    };

    namespace catalog
    {
        using C = CatalogCtx const&;
        inline QuadPow omega7() { return QuadPow(7, 1, 1, 3); }
        inline QuadPow omega15() { return QuadPow(15, -1, -1, 4); }
        inline QuadPow omega21() { return QuadPow(7, 3, 1, 0); }
        inline QuadPow omega23() { return QuadPow(23, 3, -1, 0); }
        inline QSqrt2 tr(QuadPow const& w, u64 k) { return w.pow(k).trace(); }
        inline QSqrt2 re_times(QuadPow const& w, u64 k, int sign)
        {
            return (w.pow(k) * QuadPow(w.D(), 1, sign)).real_part();
        }
        inline QSqrt2 sqrt2() { return QSqrt2::sqrt2_pow(1); }
        inline QSqrt2 I(BigInt const& x) { return QSqrt2(x); }
        inline QSqrt2 R(std::int64_t a, std::int64_t b) { return CatalogCtx::frac(a, b); }
        inline bool always(unsigned) { return true; }
        inline bool any_coset(C) { return true; }
        inline std::function<bool(unsigned)> r_div(unsigned k) { return [k](unsigned r) { return r % k == 0; }; }
        inline std::function<bool(unsigned)> r_ndiv(unsigned k) { return [k](unsigned r) { return r % k != 0; }; }

        inline void add_semiprimitive_prime(std::vector<CatalogBranch>& out, unsigned v)
        {
            auto const o = static_cast<unsigned>(nt::mult_order(2, v));
            auto base = [v](C c) { return c.over_qm1(I(big_pow(c.q(), v - 1) - 1)) * R(1, v); };
            out.push_back({v, "v: ord_v 2 does not divide r", r_ndiv(o), any_coset, base});
            out.push_back({v, "v: v does not divide ind b", r_div(o), [v](C c) { return !c.div(v); },
                           [v, o, base](C c) { return base(c) + I(c.pm(o)) * R(1, v) * c.SQ(v - 2); }});
            out.push_back({v, "v: v divides ind b", r_div(o), [v](C c) { return c.div(v); },
                           [v, o, base](C c) { return base(c) - I(c.pm(o)) * R(v - 1, v) * c.SQ(v - 2); }});
            unsigned const m2 = 2 * v;
            auto base2 = [v](C c) { return c.over_qm1(c.Q(2 * v - 1) - c.Q(v)) * R(1, 2 * v); };
            out.push_back({m2, "2v: ord_v 2 does not divide r", r_ndiv(o), any_coset, base2});
            out.push_back({m2, "2v: v does not divide ind b", r_div(o), [v](C c) { return !c.div(v); },
                           [v, base2](C c) { return base2(c) + c.Q(v - 1) * R(1, 2 * v); }});
            out.push_back({m2, "2v: v divides ind b", r_div(o), [v](C c) { return c.div(v); },
                           [v, base2](C c) { return base2(c) - c.Q(v - 1) * R(v - 1, 2 * v); }});
            if (4 * v > 30)
                return;
            unsigned const m4 = 4 * v;
            auto base4 = [v](C c) { return c.over_qm1(c.Q(2 * v) * (c.Q(2 * v - 1) - 1)) * R(1, 4 * v); };
            out.push_back({m4, "4v: ord_v 2 does not divide r", r_ndiv(o), any_coset,
                           [v, base4](C c) { return base4(c) - c.Q(2) * R(1, 4 * v); }});
            out.push_back({m4, "4v: v does not divide ind b", r_div(o), [v](C c) { return !c.div(v); },
                           [v, base4](C c) { return base4(c) + c.Q(2 * v - 1) * R(1, 4 * v); }});
            out.push_back({m4, "4v: v divides ind b", r_div(o), [v](C c) { return c.div(v); },
                           [v, base4](C c) {
                               QSqrt2 const half_q = c.Q(1) * R(1, 2);
                               return base4(c) - c.Q(2 * v - 1) * R(v - 1, 4 * v) - half_q * half_q;
                           }});
        }

        inline void add_square(std::vector<CatalogBranch>& out, unsigned v)
        {
            unsigned const m = v * v;
            auto const o1 = static_cast<unsigned>(nt::mult_order(2, v));
            auto const o2 = static_cast<unsigned>(nt::mult_order(2, m));
            auto base = [m](C c) { return c.over_qm1(c.Q(m - 1) - 1) * R(1, m); };
            auto small = [v](C c) { return c.over_qm1(c.Q(v - 1) - 1); };
            // t = v enters with mu(v) = -1
            out.push_back({m, "v^2: ord_v 2 does not divide r", r_ndiv(o1), any_coset,
                           [m, base, small](C c) { return base(c) - small(c) * R(1, m); }});
            auto mid = [o1, o2](unsigned r) { return r % o1 == 0 && r % o2 != 0; };
            out.push_back({m, "v^2: mid, v does not divide ind b", mid, [v](C c) { return !c.div(v); },
                           [m, o1, base](C c) { return base(c) + I(c.pm(o1)) * R(1, m) * c.SQ(m - 2); }});
            out.push_back({m, "v^2: mid, v divides ind b", mid, [v](C c) { return c.div(v); },
                           [v, m, o1, base, small](C c) {
                               return base(c) - small(c) * R(1, v) - I(c.pm(o1)) * R(v - 1, m) * c.SQ(m - 2);
                           }});
            out.push_back({m, "v^2: top, v does not divide ind b", r_div(o2), [v](C c) { return !c.div(v); },
                           [m, o2, base](C c) { return base(c) + I(c.pm(o2)) * R(1, m) * c.SQ(m - 2); }});
            out.push_back({m, "v^2: top, v divides ind b, v^2 does not", r_div(o2),
                           [v, m](C c) { return c.div(v) && !c.div(m); },
                           [v, m, o1, o2, base, small](C c) {
                               return base(c) + I(c.pm(o2)) * R(1, m) * c.SQ(m - 2) -
                                      (small(c) + I(c.pm(o1)) * c.SQ(v - 2)) * R(1, v);
                           }});
            out.push_back({m, "v^2: top, v^2 divides ind b", r_div(o2), [m](C c) { return c.div(m); },
                           [v, m, o1, o2, base, small](C c) {
                               return base(c) - I(c.pm(o2)) * R(m - 1, m) * c.SQ(m - 2) -
                                      (small(c) - I(c.pm(o1)) * I(v - 1) * c.SQ(v - 2)) * R(1, v);
                           }});
        }

        inline std::vector<CatalogBranch> build()
        {
            std::vector<CatalogBranch> out;
            for (unsigned m : {2u, 4u, 8u, 16u})
                out.push_back({m, "2^k", always, any_coset, [m](C c) {
                                   return c.over_qm1(c.Q(m - 1) - c.Q(m / 2)) * R(1, m);
                               }});
            for (unsigned v : {3u, 5u, 11u, 13u, 17u, 19u, 29u})
                add_semiprimitive_prime(out, v);
            {
                auto base = [](C c) { return c.over_qm1(c.Q(12) * (c.Q(11) - 1)) * R(1, 24); };
                auto tail = [](C c) { return c.over_qm1(c.Q(4) * (c.Q(3) - 1)); };
                out.push_back({24, "24: r odd", r_ndiv(2), any_coset, [base, tail](C c) { return base(c) - tail(c) * R(1, 24); }});
                out.push_back({24, "24: 3 does not divide ind b", r_div(2), [](C c) { return !c.div(3); },
                               [base](C c) { return base(c) + c.Q(11) * R(1, 24); }});
                out.push_back({24, "24: 3 divides ind b", r_div(2), [](C c) { return c.div(3); },
                               [base, tail](C c) { return base(c) - c.Q(11) * R(1, 12) - tail(c) * R(1, 8); }});
            }
            add_square(out, 3);
            add_square(out, 5);
            {
                auto base = [](C c) { return c.over_qm1(c.Q(9) * (c.Q(8) - 1)) * R(1, 18); };
                auto mid = [](unsigned r) { return r % 2 == 0 && r % 6 != 0; };
                out.push_back({18, "18: r odd", r_ndiv(2), any_coset,
                               [base](C c) { return base(c) - c.Q(3) * (c.Q(1) + 1) * R(1, 18); }});
                out.push_back({18, "18: mid, 3 does not divide ind b", mid, [](C c) { return !c.div(3); },
                               [base](C c) { return base(c) + c.Q(8) * R(1, 18); }});
                out.push_back({18, "18: mid, 3 divides ind b", mid, [](C c) { return c.div(3); },
                               [base](C c) {
                                   return base(c) - c.Q(3) * R(1, 3) * (c.Q(5) * R(1, 3) + (c.Q(1) + 1) * R(1, 2));
                               }});
                out.push_back({18, "18: 6 | r, 3 does not divide ind b", r_div(6), [](C c) { return !c.div(3); },
                               [base](C c) { return base(c) + c.Q(8) * R(1, 18); }});
                out.push_back({18, "18: 6 | r, 3 divides ind b, 9 does not", r_div(6),
                               [](C c) { return c.div(3) && !c.div(9); },
                               [base](C c) {
                                   return base(c) + c.Q(8) * R(1, 18) - c.over_qm1(c.Q(2) * (c.Q(3) - 1)) * R(1, 6);
                               }});
                out.push_back({18, "18: 6 | r, 9 divides ind b", r_div(6), [](C c) { return c.div(9); },
                               [base](C c) {
                                   return base(c) -
                                          c.Q(2) * (I(8) * c.Q(6) + I(3) * c.Q(1) * (c.Q(1) + 1) - 6) * R(1, 18);
                               }});
            }
            {
                auto base = [](C c) { return c.over_qm1(c.Q(26) - 1) * R(1, 27); };
                auto e8 = [](C c) { return c.over_qm1(c.Q(8) - 1); };
                auto pm = [](C c) { return I(c.pm(2)); };
                auto mid = [](unsigned r) { return r % 2 == 0 && r % 6 != 0; };
                auto hi = [](unsigned r) { return r % 6 == 0 && r % 18 != 0; };
                out.push_back({27, "27: r odd", r_ndiv(2), any_coset, [base, e8](C c) { return base(c) - e8(c) * R(1, 27); }});
                for (auto guard : std::vector<std::function<bool(unsigned)>>{mid, hi, r_div(18)})
                    out.push_back({27, "27: 3 does not divide ind b", guard, [](C c) { return !c.div(3); },
                                   [base, pm](C c) { return base(c) + pm(c) * R(1, 27) * c.SQ(25); }});
                out.push_back({27, "27: 2 | r, 6 does not, 3 divides ind b", mid, [](C c) { return c.div(3); },
                               [base, e8, pm](C c) {
                                   return base(c) - (I(3) * e8(c) + pm(c) * I(2) * c.SQ(25)) * R(1, 27);
                               }});
                out.push_back({27, "27: 6 | r, 18 does not, 3 divides ind b, 9 does not", hi,
                               [](C c) { return c.div(3) && !c.div(9); },
                               [base, e8, pm](C c) {
                                   return base(c) - e8(c) * R(1, 9) + pm(c) * R(1, 27) * (c.SQ(25) - I(3) * c.SQ(7));
                               }});
                out.push_back({27, "27: 6 | r, 18 does not, 9 divides ind b", hi, [](C c) { return c.div(9); },
                               [base, e8, pm](C c) {
                                   return base(c) - e8(c) * R(1, 9) -
                                          pm(c) * R(2, 27) * (I(4) * c.SQ(25) - I(3) * c.SQ(7));
                               }});
                out.push_back({27, "27: 18 | r, 3 divides ind b, 27 does not", r_div(18),
                               [](C c) { return c.div(3) && !c.div(27); },
                               [base, e8, pm](C c) {
                                   return base(c) - e8(c) * R(1, 9) + pm(c) * R(1, 27) * (c.SQ(25) - I(3) * c.SQ(7));
                               }});
                out.push_back({27, "27: 18 | r, 27 divides ind b", r_div(18), [](C c) { return c.div(27); },
                               [base, e8, pm](C c) {
                                   return base(c) - e8(c) * R(1, 9) -
                                          pm(c) * R(2, 27) * (I(13) * c.SQ(25) - I(12) * c.SQ(7));
                               }});
            }
            // index 2, case 1: 7, 14, 28 with omega_7
            for (unsigned m : {7u, 14u, 28u})
            {
                auto base = [m](C c) {
                    if (m == 7)
                        return c.over_qm1(c.Q(6) - 1) * R(1, 7);
                    if (m == 14)
                        return c.over_qm1(c.Q(7) * (c.Q(6) - 1)) * R(1, 14);
                    return c.over_qm1(c.Q(14) * (c.Q(13) - 1)) * R(1, 28);
                };
                auto scale = [m](C c) { return m == 7 ? c.SQ(5) : m == 14 ? c.Q(6) : c.Q(13); };
                auto extra = [m](C c) {
                    QSqrt2 const half_q = c.Q(1) * R(1, 2);
                    return m == 28 ? half_q * half_q : QSqrt2(0);
                };
                auto k = [m](C c) { return u64{m} * c.r / 3; };
                out.push_back({m, "7-family: 3 does not divide r", r_ndiv(3), any_coset, [m, base](C c) {
                                   return m == 28 ? base(c) - c.Q(2) * R(1, 28) : base(c);
                               }});
                out.push_back({m, "7-family: 7 divides ind b", r_div(3), [](C c) { return c.div(7); },
                               [m, base, scale, extra, k](C c) {
                                   return base(c) - R(3, m) * tr(omega7(), k(c)) * scale(c) - extra(c);
                               }});
                out.push_back({m, "7-family: ind b in C_c", r_div(3), [](C c) { return c.in_c(7, 1, 1, 7); },
                               [m, base, scale, k](C c) {
                                   return base(c) + sqrt2() * R(1, m) * tr(omega7(), k(c) - 1) * scale(c);
                               }});
                out.push_back({m, "7-family: ind b in C_-c", r_div(3), [](C c) { return c.in_c(7, 1, -1, 7); },
                               [m, base, scale, k](C c) {
                                   return base(c) + sqrt2() * R(1, m) * tr(omega7(), k(c) + 1) * scale(c);
                               }});
            }
            {
                auto base = [](C c) { return c.over_qm1(c.Q(22) - 1) * R(1, 23); };
                // sqrt(q)^21 / |omega_23|^{23r/11} = 2^{58 r / 11}
                auto scale = [](C c) { return QSqrt2(big_pow(2, u64{58} * c.r / 11)); };
                auto k = [](C c) { return u64{23} * c.r / 11; };
                out.push_back({23, "23: 11 does not divide r", r_ndiv(11), any_coset, base});
                out.push_back({23, "23: 23 divides ind b", r_div(11), [](C c) { return c.div(23); },
                               [base, scale, k](C c) { return base(c) - R(11, 23) * tr(omega23(), k(c)) * scale(c); }});
                out.push_back({23, "23: ind b in C_c", r_div(11), [](C c) { return c.in_c(23, 1, 1, 23); },
                               [base, scale, k](C c) { return base(c) + scale(c) * R(1, 23) * re_times(omega23(), k(c), 1); }});
                out.push_back({23, "23: ind b in C_-c", r_div(11), [](C c) { return c.in_c(23, 1, -1, 23); },
                               [base, scale, k](C c) { return base(c) + scale(c) * R(1, 23) * re_times(omega23(), k(c), -1); }});
            }
            // index 2, case 2: 15, 30 with omega_15
            {
                auto base = [](C c) { return c.over_qm1(c.Q(14) - 1) * R(1, 15); };
                auto e4 = [](C c) { return c.over_qm1(c.Q(4) - 1); };
                auto mid = [](unsigned r) { return r % 2 == 0 && r % 4 != 0; };
                auto T = [](C c, int shift) { return tr(omega15(), u64{15} * c.r / 4 + shift); };
                auto pm = [](C c) { return I(c.pm(4)); };
                out.push_back({15, "15: r odd", r_ndiv(2), any_coset, [base](C c) {
                                   return base(c) - c.over_qm1(c.Q(4) + c.Q(2) - 2) * R(1, 15);
                               }});
                out.push_back({15, "15: mid, 3 does not divide ind b", mid, [](C c) { return !c.div(3); },
                               [base](C c) { return base(c) - (c.Q(1) + 1 + c.SQ(13) - c.SQ(1)) * R(1, 15); }});
                out.push_back({15, "15: mid, 3 divides ind b", mid, [](C c) { return c.div(3); },
                               [base, e4](C c) {
                                   QSqrt2 const sq1 = c.SQ(1) + 1;
                                   return base(c) - (I(3) * e4(c) - I(2) * c.SQ(13) + sq1 * sq1) * R(1, 15);
                               }});
                out.push_back({15, "15: 15 divides ind b", r_div(4), [](C c) { return c.div(15); },
                               [base, e4, T, pm](C c) {
                                   QSqrt2 const sq1 = c.SQ(1) - 1;
                                   return base(c) - R(2, 15) * (I(2) * T(c, 0) + 1 + I(2) * pm(c)) * c.SQ(13) -
                                          (e4(c) - I(4) * pm(c) * c.SQ(3)) * R(1, 5) - sq1 * sq1 * R(1, 3);
                               }});
                out.push_back({15, "15: ind b in C_3", r_div(4), [](C c) { return coset2(15, 3).count(c.h % 15) != 0; },
                               [base, e4, T, pm](C c) {
                                   return base(c) + (T(c, 0) - 2 + pm(c)) * c.SQ(13) * R(1, 15) -
                                          (e4(c) + pm(c) * c.SQ(3)) * R(1, 5);
                               }});
                out.push_back({15, "15: ind b in C_5", r_div(4), [](C c) { return coset2(15, 5).count(c.h % 15) != 0; },
                               [base, T, pm](C c) {
                                   return base(c) + (I(2) * T(c, 0) + 1 - I(4) * pm(c)) * c.SQ(13) * R(1, 15) -
                                          (c.Q(1) + 1 + c.SQ(1)) * R(1, 3);
                               }});
                // with c read off the direct Gauss sum, the k+1 row sits on C_-c
                out.push_back({15, "15: ind b in C_-c (k+1 row)", r_div(4), [](C c) { return c.in_c(15, 1, -1, 15); },
                               [base, T, pm](C c) { return base(c) + (I(2) * T(c, 1) + 1 + pm(c)) * c.SQ(13) * R(1, 15); }});
                out.push_back({15, "15: ind b in C_c (k-1 row)", r_div(4), [](C c) { return c.in_c(15, 1, 1, 15); },
                               [base, T, pm](C c) { return base(c) + (I(2) * T(c, -1) + 1 + pm(c)) * c.SQ(13) * R(1, 15); }});
            }
            {
                auto base = [](C c) { return c.over_qm1(c.Q(15) * (c.Q(14) - 1)) * R(1, 30); };
                auto mid = [](unsigned r) { return r % 2 == 0 && r % 4 != 0; };
                auto T = [](C c, int shift) { return tr(omega15(), u64{15} * c.r / 2 + shift); };
                out.push_back({30, "30: r odd", r_ndiv(2), any_coset, [base](C c) {
                                   return base(c) - c.over_qm1(c.Q(3) * (c.Q(6) - 1)) * R(1, 30);
                               }});
                out.push_back({30, "30: mid, 3 does not divide ind b", mid, [](C c) { return !c.div(3); },
                               [base](C c) {
                                   return base(c) - c.over_qm1(c.Q(3) * (c.Q(2) - 1)) * R(1, 30) +
                                          c.Q(2) * (c.Q(12) - 1) * R(1, 30);
                               }});
                out.push_back({30, "30: mid, 3 divides ind b", mid, [](C c) { return c.div(3); },
                               [base](C c) {
                                   return base(c) - c.over_qm1(c.Q(3) * (I(3) * c.Q(6) - I(2) * c.Q(2) - 1)) * R(1, 30) -
                                          c.Q(2) * (c.Q(12) - 1) * R(1, 15);
                               }});
                out.push_back({30, "30: 15 divides ind b", r_div(4), [](C c) { return c.div(15); },
                               [base, T](C c) {
                                   return base(c) - (I(2) * T(c, 0) + 3) * c.Q(14) * R(1, 15) -
                                          c.over_qm1(c.Q(5) * (c.Q(4) - 1)) * R(1, 10) - c.Q(3) * (c.Q(1) + 1) * R(1, 6) +
                                          c.Q(2) * (I(6) * c.Q(2) + 5) * R(1, 15);
                               }});
                out.push_back({30, "30: ind b in C_3", r_div(4), [](C c) { return coset2(15, 3).count(c.h % 15) != 0; },
                               [base, T](C c) {
                                   return base(c) + (T(c, 0) - 1) * c.Q(14) * R(1, 30) -
                                          c.over_qm1(c.Q(4) * (c.Q(5) - 1)) * R(1, 10);
                               }});
                out.push_back({30, "30: ind b in C_5", r_div(4), [](C c) { return coset2(15, 5).count(c.h % 15) != 0; },
                               [base, T](C c) {
                                   return base(c) + (I(2) * T(c, 0) - 3) * c.Q(14) * R(1, 30) -
                                          c.over_qm1(c.Q(2) * (c.Q(3) - 1)) * R(1, 6);
                               }});
                // same label swap as for 15
                out.push_back({30, "30: ind b in C_-c (k+1 row)", r_div(4), [](C c) { return c.in_c(15, 1, -1, 15); },
                               [base, T](C c) { return base(c) + (T(c, 1) + 1) * c.Q(14) * R(1, 15); }});
                out.push_back({30, "30: ind b in C_c (k-1 row)", r_div(4), [](C c) { return c.in_c(15, 1, 1, 15); },
                               [base, T](C c) { return base(c) + (T(c, -1) + 1) * c.Q(14) * R(1, 15); }});
            }
            // index 2, case 3: 21 with omega_7 and omega_21
            {
                auto base = [](C c) { return c.over_qm1(c.Q(20) - 1) * R(1, 21); };
                auto e6 = [](C c) { return c.over_qm1(c.Q(6) - 1); };
                auto T7 = [](C c, u64 num, u64 den, int shift) { return tr(omega7(), u64{num} * c.r / den + shift); };
                auto pm = [](C c) { return I(c.pm(2)); };
                auto r_odd_3 = [](unsigned r) { return r % 2 == 1 && r % 3 == 0; };
                auto r_even_n3 = [](unsigned r) { return r % 2 == 0 && r % 3 != 0; };
                out.push_back({21, "21: 2 and 3 do not divide r", [](unsigned r) { return r % 2 != 0 && r % 3 != 0; },
                               any_coset, [base](C c) { return base(c) - c.over_qm1(c.Q(6) + c.Q(2) - 2) * R(1, 21); }});
                out.push_back({21, "21: 2 | r, 3 does not, 3 does not divide ind b", r_even_n3, [](C c) { return !c.div(3); },
                               [base, pm](C c) {
                                   return base(c) - (c.Q(1) + 1 - pm(c) * (c.Q(9) - 1) * c.SQ(1)) * R(1, 21);
                               }});
                out.push_back({21, "21: 2 | r, 3 does not, 3 divides ind b", r_even_n3, [](C c) { return c.div(3); },
                               [base, pm](C c) {
                                   return base(c) - (c.over_qm1(I(3) * c.Q(6) + c.Q(2) - 4) +
                                                     I(2) * pm(c) * (c.Q(9) - 1) * c.SQ(1)) *
                                                        R(1, 21);
                               }});
                // the two traces enter with opposite signs
                out.push_back({21, "21: r odd, 3 | r, 7 divides ind b", r_odd_3, [](C c) { return c.div(7); },
                               [base, T7](C c) {
                                   return base(c) - (c.over_qm1(c.Q(6) + I(7) * c.Q(2) - 8) * R(1, 21) +
                                                     c.SQ(5) * R(1, 7) * (T7(c, 7, 1, 0) * c.Q(7) - T7(c, 7, 3, 0)));
                               }});
                out.push_back({21, "21: r odd, 3 | r, ind b in C_c^7", r_odd_3, [](C c) { return c.in_c(7, 1, 1, 7); },
                               [base, e6, T7](C c) {
                                   return base(c) - e6(c) * R(1, 21) +
                                          sqrt2() * c.SQ(5) * R(1, 21) * (T7(c, 7, 1, -1) * c.Q(7) - T7(c, 7, 3, 1));
                               }});
                out.push_back({21, "21: r odd, 3 | r, ind b in C_-c^7", r_odd_3, [](C c) { return c.in_c(7, 1, -1, 7); },
                               [base, e6, T7](C c) {
                                   return base(c) - e6(c) * R(1, 21) +
                                          sqrt2() * c.SQ(5) * R(1, 21) * (T7(c, 7, 1, 1) * c.Q(7) - T7(c, 7, 3, -1));
                               }});
                auto W = [](C c) { return omega21().pow(u64{7} * c.r / 2); };
                auto T21 = [W](C c) { return W(c).trace(); };
                auto Rp = [W](C c) { return (W(c) * QuadPow(7, 1, 1)).real_part(); };
                auto Rm = [W](C c) { return (W(c) * QuadPow(7, 1, -1)).real_part(); };
                out.push_back({21, "21: 6 | r, 21 divides ind b", r_div(6), [](C c) { return c.div(21); },
                               [base, e6, T7, pm, T21](C c) {
                                   QSqrt2 const sq = I(1) - pm(c) * c.SQ(1);
                                   return base(c) -
                                          ((I(3) * (I(2) + pm(c)) * T21(c) + I(2) * pm(c) * c.Q(7)) * c.SQ(5) * R(1, 21) +
                                           (e6(c) - I(3) * T7(c, 7, 3, 0) * c.SQ(5)) * R(1, 7) + sq * sq * R(1, 3));
                               }});
                out.push_back({21, "21: 6 | r, ind b in C_7^21", r_div(6), [](C c) { return coset2(21, 7).count(c.h % 21) != 0; },
                               [base, pm, T21](C c) {
                                   return base(c) + (I(3) * (I(1) - pm(c)) * T21(c) + pm(c) * c.Q(7)) * c.SQ(5) * R(1, 21) -
                                          (c.Q(1) + 1 + pm(c) * c.SQ(1)) * R(1, 3);
                               }});
                out.push_back({21, "21: 6 | r, ind b in C_3c^21", r_div(6), [](C c) { return c.in_c(21, 3, 1, 21); },
                               [base, e6, T7, pm, Rp, Rm](C c) {
                                   return base(c) + c.SQ(5) * R(1, 21) * (I(2) * Rp(c) + pm(c) * Rm(c) - I(2) * pm(c) * c.Q(7)) -
                                          (e6(c) + T7(c, 7, 3, -1) * sqrt2() * c.SQ(5)) * R(1, 7);
                               }});
                out.push_back({21, "21: 6 | r, ind b in C_-3c^21", r_div(6), [](C c) { return c.in_c(21, 3, -1, 21); },
                               [base, e6, T7, pm, Rp, Rm](C c) {
                                   return base(c) + c.SQ(5) * R(1, 21) * (I(2) * Rm(c) + pm(c) * Rp(c) - I(2) * pm(c) * c.Q(7)) -
                                          (e6(c) + T7(c, 7, 3, 1) * sqrt2() * c.SQ(5)) * R(1, 7);
                               }});
                out.push_back({21, "21: 6 | r, ind b in C_c^21", r_div(6), [](C c) { return c.in_c(21, 1, 1, 21); },
                               [base, pm, Rp, Rm](C c) {
                                   return base(c) + c.SQ(5) * R(1, 21) * (I(0) - Rm(c) + pm(c) * Rp(c) + pm(c) * c.Q(7));
                               }});
                out.push_back({21, "21: 6 | r, ind b in C_-c^21", r_div(6), [](C c) { return c.in_c(21, 1, -1, 21); },
                               [base, pm, Rp, Rm](C c) {
                                   return base(c) + c.SQ(5) * R(1, 21) * (I(0) - Rp(c) + pm(c) * Rm(c) + pm(c) * c.Q(7));
                               }});
            }
            return out;
        }

        inline std::vector<CatalogBranch> const& branches()
        {
            static std::vector<CatalogBranch> const all = build();
            return all;
        }
    }

    struct CatalogResult
    {
        BigInt value;
        std::string branch;
        std::map<u64, int> signs; // resolved c per N
    };

    /// P_m(0, q - 1, ind b) for q = 2^r and m <= 30 from the closed catalog.
    class P2Catalog
    {
    public:
        explicit P2Catalog(Limits limits = default_limits()) : limits_(limits), towers_(limits) {}

        CatalogResult evaluate(unsigned r, unsigned m, u64 h, std::optional<FieldElement> g = std::nullopt)
        {
            if (r == 0 || r > 62)
                throw Error(ErrorKind::InvalidDegree, "r must lie in [1, 62]");
            if (m < 2)
                throw Error(ErrorKind::InvalidDegree, "m must be at least 2");
            if (m > 30)
                throw Error(ErrorKind::OutOfCatalog, "the catalog covers m <= 30; use the general path");
            u64 const q1 = (u64{1} << r) - 1;
            CatalogResult out;
            CatalogCtx ctx;
            ctx.r = r;
            ctx.h = h % q1;
            ctx.c_of = [&](u64 N) {
                int const c = sign(r, N, g);
                out.signs[N] = c;
                return c;
            };
            CatalogBranch const* hit = nullptr;
            for (auto const& b : catalog::branches())
            {
                if (b.m != m || !b.r_guard(r) || !b.coset_guard(ctx))
                    continue;
                ensure(hit == nullptr, "two catalog branches match for m = " + std::to_string(m));
                hit = &b;
            }
            ensure(hit != nullptr, "no catalog branch for m = " + std::to_string(m));
            QSqrt2 const v = hit->value(ctx);
            ensure(v.is_integer(), "catalog branch '" + std::string(hit->name) + "' gave " + v.to_string());
            out.value = v.to_integer();
            ensure(out.value >= 0, "catalog branch '" + std::string(hit->name) + "' gave a negative count");
            out.branch = std::string(hit->name);
            return out;
        }

        /// Sign c of F_{r'}(chi) relative to the F_q tower with primitive element g.
        int sign(unsigned r, u64 N, std::optional<FieldElement> g = std::nullopt)
        {
            auto key = std::make_tuple(r, N, g ? g->code : UINT64_MAX);
            {
                std::lock_guard lock(mutex_);
                if (auto it = signs_.find(key); it != signs_.end())
                    return it->second;
            }
            auto tower = towers_.get(2, r, 1, g);
            int const c = resolve_gauss(*tower, N, limits_).c;
            std::lock_guard lock(mutex_);
            signs_.emplace(key, c);
            return c;
        }

    private:
        Limits limits_;
        TowerCache towers_;
        std::mutex mutex_;
        std::map<std::tuple<unsigned, u64, u64>, int> signs_;
    };

    /// The same count through the general pipeline (a = 0, s = q - 1).
    inline BigInt p2_general_pm(Counter& counter, unsigned r, unsigned m, u64 h, Method method = Method::GaussDh,
                                std::optional<FieldElement> g = std::nullopt)
    {
        u64 const q1 = (u64{1} << r) - 1;
        CountSpec spec{2, r, m, q1, h % q1, FieldElement{0}, g};
        return counter.p_m(spec, method).value;
    }
}

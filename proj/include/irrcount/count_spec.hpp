#pragma once

#include <irrcount/bigint.hpp>
#include <irrcount/tower.hpp>

#include <numeric>
#include <optional>
#include <string>

namespace irrcount
{
    /// Counting query: monic irreducibles of degree m over F_q, q = p^r, with trace
    /// coefficient a and norm coefficient in the coset g^h <g^s>.
    struct CountSpec
    {
        u64 p = 2;
        unsigned r = 1;
        unsigned m = 2;
        u64 s = 1;
        u64 h = 0;
        FieldElement a{0};                 // standalone F_q model
        std::optional<FieldElement> g;     // primitive element of F_q; canonical when empty

        u64 q() const { return nt::checked_pow(p, r); }

        /// Coset given by an explicit b != 0: h = ind_g(b) mod s.
        static CountSpec with_b(u64 p, unsigned r, unsigned m, u64 s, FieldElement b, FieldElement a,
                                std::optional<FieldElement> g = std::nullopt)
        {
            if (b.is_zero())
                throw Error(ErrorKind::InvalidInput, "b must be nonzero");
            CountSpec spec{p, r, m, s, 0, a, g};
            TowerCtx const base(p, r, 1, g);
            if (!base.base().contains(b))
                throw Error(ErrorKind::InvalidInput, "b is not an element of F_q");
            spec.h = base.ind_g(b) % s;
            spec.validate();
            return spec;
        }

        void validate() const
        {
            if (!nt::is_prime(p))
                throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
            if (r == 0)
                throw Error(ErrorKind::InvalidDegree, "r must be positive");
            if (m < 2)
                throw Error(ErrorKind::InvalidDegree, "m must be at least 2");
            if (std::log2(static_cast<double>(p)) * r > 62.0)
                throw Error(ErrorKind::InvalidDegree, "q exceeds 2^62");
            u64 const qq = q();
            if (s == 0 || (qq - 1) % s != 0)
                throw Error(ErrorKind::InvalidInput, "s must divide q - 1");
            if (h >= s)
                throw Error(ErrorKind::InvalidInput, "h must lie in [0, s)");
            if (a.code >= qq)
                throw Error(ErrorKind::InvalidInput, "a is not an element of F_q");
            if (g && (g->code >= qq || g->is_zero()))
                throw Error(ErrorKind::InvalidInput, "g is not an element of F_q^*");
        }
    };

    /// Per-t quantities for t | m.
    struct TParams
    {
        unsigned t = 1;
        u64 m_over_t = 1;
        u64 d = 1;      // gcd(m/t, s)
        u64 s_over_d = 1;
        u64 l = 1;      // gcd(t, s/d)
        u64 u = 1;      // s/(d l)
        u64 t0_mod = 0; // (q^t - 1)/(q - 1) mod s/d
        std::optional<u64> i0;
        std::optional<FieldElement> a0; // -(m/t mod p) a^{-1}, when a != 0 and p does not divide m/t
        bool restpd = false;            // p does not divide m/t and d | h
    };

    inline TParams derive_params(CountSpec const& spec, unsigned t)
    {
        if (t == 0 || spec.m % t != 0)
            throw Error(ErrorKind::InvalidInput, "t must divide m");
        TParams tp;
        tp.t = t;
        tp.m_over_t = spec.m / t;
        tp.d = std::gcd(tp.m_over_t, spec.s);
        tp.s_over_d = spec.s / tp.d;
        tp.l = std::gcd(u64{t}, tp.s_over_d);
        tp.u = tp.s_over_d / tp.l;
        u64 const q = spec.q();
        u64 t0 = 0, power = 1 % tp.s_over_d;
        for (unsigned i = 0; i < t; ++i)
        {
            t0 = (t0 + power) % tp.s_over_d;
            power = nt::mul_mod(power, q % tp.s_over_d, tp.s_over_d);
        }
        tp.t0_mod = t0;
        ensure(std::gcd(t0, tp.s_over_d) == tp.l, "l differs from gcd(t0, s/d)");
        if (spec.h % tp.d == 0)
        {
            u64 const coeff = (tp.m_over_t / tp.d) % tp.s_over_d;
            u64 const inv = tp.s_over_d == 1 ? 0 : *nt::inv_mod(coeff, tp.s_over_d);
            tp.i0 = nt::mul_mod((spec.h / tp.d) % tp.s_over_d, inv, tp.s_over_d);
        }
        bool const p_divides = tp.m_over_t % spec.p == 0;
        tp.restpd = !p_divides && tp.i0.has_value();
        if (!spec.a.is_zero() && !p_divides)
        {
            FieldCtx const F = FieldCtx::build(spec.p, spec.r);
            tp.a0 = F.neg(F.scale(F.inv(spec.a), tp.m_over_t % spec.p));
        }
        return tp;
    }

    /// Number of monic irreducibles of degree m over F_q.
    inline BigInt necklace_count(u64 q, unsigned m)
    {
        BigInt total = 0;
        for (auto t : nt::divisors(m))
            total += nt::mobius(m / t) * big_pow(q, t);
        return exact_div(total, m, "necklace count");
    }
}

#pragma once

#include <irrcount/quadratic.hpp>
#include <irrcount/tower.hpp>

#include <cmath>
#include <vector>

namespace irrcount
{
    namespace detail
    {
        inline void require_primitive_root(u64 p, u64 g)
        {
            if (!nt::is_prime(p))
                throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
            FieldCtx const F = FieldCtx::build(p, 1);
            if (g % p == 0 || !F.is_primitive({g % p}))
                throw Error(ErrorKind::InvalidInput, std::to_string(g) + " is not a primitive root mod " + std::to_string(p));
        }

        /// All (a, b) with a^2 + k b^2 = p.
        inline std::vector<std::pair<std::int64_t, std::int64_t>> norm_form_solutions(u64 p, std::int64_t k)
        {
            std::vector<std::pair<std::int64_t, std::int64_t>> out;
            auto const bound = static_cast<std::int64_t>(std::sqrt(static_cast<double>(p))) + 1;
            for (std::int64_t a = -bound; a <= bound; ++a)
                for (std::int64_t b = -bound; b <= bound; ++b)
                    if (a * a + k * b * b == static_cast<std::int64_t>(p))
                        out.emplace_back(a, b);
            return out;
        }

        inline u64 residue(std::int64_t x, u64 p) { return static_cast<u64>(nt::mod_floor(x, static_cast<std::int64_t>(p))); }
    }

    struct QuarticParams
    {
        u64 p = 0;
        u64 g = 0;
        std::int64_t a4 = 0;
        std::int64_t b4 = 0;
        u64 f = 0;
        GaussianInt pi; // (-1)^f (a4 + i b4)
    };

    struct CubicParams
    {
        u64 p = 0;
        u64 g = 0;
        std::int64_t a3 = 0;
        std::int64_t b3 = 0;
        EisensteinInt pi; // chi(2) (a3 + i b3 sqrt 3), chi(g) = w
    };

    /// The unique (a4, b4) with a4^2 + b4^2 = p, a4 = -(2|p) mod 4, b4 = a4 g^{(p-1)/4} mod p.
    inline QuarticParams quartic_params(u64 p, u64 g)
    {
        if (p % 4 != 1)
            throw Error(ErrorKind::BadResidue, "quartic parameters need p = 1 mod 4");
        detail::require_primitive_root(p, g);
        int const leg2 = nt::jacobi_symbol(2, p);
        u64 const root = nt::pow_mod(g % p, (p - 1) / 4, p);
        std::vector<QuarticParams> found;
        for (auto [a, b] : detail::norm_form_solutions(p, 1))
        {
            if (nt::mod_floor(a + leg2, 4) != 0)
                continue;
            if (detail::residue(b, p) != nt::mul_mod(detail::residue(a, p), root, p))
                continue;
            QuarticParams qp;
            qp.p = p;
            qp.g = g;
            qp.a4 = a;
            qp.b4 = b;
            qp.f = (p - 1) / 4;
            qp.pi = GaussianInt{a, b} * BigInt(qp.f % 2 ? -1 : 1);
            found.push_back(qp);
        }
        ensure(found.size() == 1, "quartic parameter search found " + std::to_string(found.size()) + " candidates");
        ensure(found[0].pi.norm() == p, "pi_4 has wrong norm");
        return found[0];
    }

    /// The unique (a3, b3) with a3^2 + 3 b3^2 = p, a3 = -1 mod 3, 3 b3 = (2 g^{(p-1)/3} + 1) a3 mod p.
    inline CubicParams cubic_params(u64 p, u64 g)
    {
        if (p % 3 != 1)
            throw Error(ErrorKind::BadResidue, "cubic parameters need p = 1 mod 3");
        detail::require_primitive_root(p, g);
        u64 const root = nt::pow_mod(g % p, (p - 1) / 3, p);
        u64 const factor = (2 * root + 1) % p;
        // chi(2) = w^{ind_g 2}
        u64 ind2 = 0;
        for (u64 y = 1; y != 2 % p; y = nt::mul_mod(y, g % p, p))
            ++ind2;
        std::vector<CubicParams> found;
        for (auto [a, b] : detail::norm_form_solutions(p, 3))
        {
            if (nt::mod_floor(a, 3) != 2)
                continue;
            if (detail::residue(3 * b, p) != nt::mul_mod(factor, detail::residue(a, p), p))
                continue;
            CubicParams cp;
            cp.p = p;
            cp.g = g;
            cp.a3 = a;
            cp.b3 = b;
            // i sqrt 3 = 2w + 1
            cp.pi = EisensteinInt::unit_root(static_cast<std::int64_t>(ind2 % 3)) * EisensteinInt{a + b, 2 * b};
            found.push_back(cp);
        }
        ensure(found.size() == 1, "cubic parameter search found " + std::to_string(found.size()) + " candidates");
        ensure(found[0].pi.norm() == p, "pi_3 has wrong norm");
        return found[0];
    }

    /// J_t(rho) for the quadratic character of F_q, q odd.
    inline BigInt jacobi_quadratic(u64 q, unsigned t)
    {
        if (q % 2 == 0)
            throw Error(ErrorKind::BadResidue, "quadratic character needs odd q");
        if (t == 0)
            throw Error(ErrorKind::InvalidInput, "t must be positive");
        int const rho_minus_one = ((q - 1) / 2) % 2 == 0 ? 1 : -1;
        auto rho_pow = [&](unsigned k) { return (k % 2 == 0 || rho_minus_one == 1) ? 1 : -1; };
        if (t % 2 == 0)
            return -rho_pow(t / 2) * big_pow(q, (t - 2) / 2);
        return rho_pow((t - 1) / 2) * big_pow(q, (t - 1) / 2);
    }

    /// J_t(chi_4), chi_4(g) = i, over F_p.
    inline GaussianInt jacobi_quartic(QuarticParams const& qp, unsigned t)
    {
        if (t == 0)
            throw Error(ErrorKind::InvalidInput, "t must be positive");
        BigInt const p = qp.p;
        BigInt const sign_f = qp.f % 2 ? -1 : 1;
        switch (t % 4)
        {
        case 0: return qp.pi.pow(t / 2) * (-big_pow(p, (t - 4) / 4));
        case 1: return qp.pi.pow((t - 1) / 2) * big_pow(p, (t - 1) / 4);
        case 2: return qp.pi.pow(t / 2) * big_pow(p, (t - 2) / 4);
        default: return qp.pi.pow((t + 1) / 2) * (sign_f * big_pow(p, (t - 3) / 4));
        }
    }

    /// J_t(chi_3), chi_3(g) = w, over F_p.
    inline EisensteinInt jacobi_cubic(CubicParams const& cp, unsigned t)
    {
        if (t == 0)
            throw Error(ErrorKind::InvalidInput, "t must be positive");
        BigInt const p = cp.p;
        switch (t % 3)
        {
        case 0: return cp.pi.pow(t / 3) * (-big_pow(p, (t - 3) / 3));
        case 1: return cp.pi.pow((t - 1) / 3) * big_pow(p, (t - 1) / 3);
        default: return cp.pi.pow((t + 1) / 3) * big_pow(p, (t - 2) / 3);
        }
    }

    /// J_t(lambda) for the character lambda(g) = zeta_n, n in {2, 3, 4}, as an element of Z[zeta_n].
    inline CycInt jacobi_closed(unsigned order, unsigned t, TowerCtx const& tower)
    {
        u64 const q = tower.q();
        switch (order)
        {
        case 2: return CycInt::integer(2, jacobi_quadratic(q, t));
        case 3:
        case 4:
        {
            if (tower.r() != 1)
                throw Error(ErrorKind::UnsupportedGeneralQ, "closed cubic and quartic Jacobi sums need q = p; use the brute path");
            u64 const g = tower.g_base().code;
            if (order == 3)
                return jacobi_cubic(cubic_params(q, g), t).to_cyc();
            return jacobi_quartic(quartic_params(q, g), t).to_cyc();
        }
        default: throw Error(ErrorKind::InvalidInput, "closed Jacobi sums exist for orders 2, 3, 4 only");
        }
    }
}

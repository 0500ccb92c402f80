#pragma once

#include <irrcount/bigint.hpp>
#include <irrcount/error.hpp>
#include <irrcount/numtheory.hpp>

#include <optional>

namespace irrcount
{
    using nt::u64;

    /// Smallest e >= 1 with s | p^e + 1, if any.
    inline std::optional<u64> semiprimitive_exponent(u64 p, u64 s)
    {
        if (s == 0)
            throw Error(ErrorKind::InvalidInput, "s must be positive");
        if (s == 1)
            return 1;
        u64 power = 1;
        for (u64 e = 1; e <= s; ++e)
        {
            power = nt::mul_mod(power, p % s, s);
            if ((power + 1) % s == 0)
                return e;
        }
        return std::nullopt;
    }

    /// k_s: s/2 when p > 2, nt is odd and (p^e + 1)/s is odd; 0 otherwise.
    inline u64 semiprimitive_k(u64 p, u64 e, u64 nt_product, u64 s)
    {
        if (p > 2 && nt_product % 2 == 1)
        {
            BigInt const quotient = exact_div(big_pow(p, e) + 1, s, "p^e + 1 over s");
            if (quotient % 2 == 1)
                return s / 2;
        }
        return 0;
    }

    /// Value of sum over x in F_{q^t}^* of e_t(gamma_t^i x^s) for s | p^e + 1, q = p^{2en}.
    inline BigInt semiprimitive_monomial_value(u64 p, u64 e, u64 n, unsigned t, u64 s, u64 i)
    {
        if (s == 0 || (big_pow(p, e) + 1) % s != 0)
            throw Error(ErrorKind::NotApplicable, "s does not divide p^e + 1");
        BigInt const root = big_pow(p, e * n * t); // sqrt(q^t)
        u64 const k = semiprimitive_k(p, e, n * t, s);
        bool const even = (n * t) % 2 == 0;
        if (i % s != k % s)
            return (even ? root : -root) - 1;
        BigInt const lead = BigInt(s - 1) * root;
        return (even ? -lead : lead) - 1;
    }

    /// For p = 2: sum over all x in F_{2^{rt}} of e_t(gamma_t^a x^N), -1 a power of 2 mod N, ord_N 2 | rt.
    inline BigInt semiprimitive_sum_char2(u64 N, unsigned r, unsigned t, u64 a)
    {
        if (N < 3 || N % 2 == 0)
            throw Error(ErrorKind::InvalidInput, "N must be odd and greater than 1");
        u64 const ord = nt::mult_order(2, N);
        if (!semiprimitive_exponent(2, N))
            throw Error(ErrorKind::NotApplicable, "-1 is not a power of 2 modulo N");
        u64 const rt = u64{r} * t;
        if (rt % ord != 0)
            throw Error(ErrorKind::NotApplicable, "ord_N 2 does not divide rt");
        u64 const n_prime = rt / ord;
        BigInt const root = big_pow(2, rt / 2);
        if (a % N != 0)
            return n_prime % 2 == 0 ? root : BigInt(-root);
        BigInt const lead = BigInt(N - 1) * root;
        return n_prime % 2 == 0 ? BigInt(-lead) : lead;
    }
}

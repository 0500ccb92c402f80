#pragma once

#include <irrcount/error.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <tuple>
#include <vector>

namespace irrcount::nt
{
    using u64 = std::uint64_t;
    using u128 = unsigned __int128;

    inline u64 mul_mod(u64 a, u64 b, u64 m) noexcept
    {
        return static_cast<u64>(static_cast<u128>(a) * b % m);
    }

    inline u64 pow_mod(u64 base, u64 exp, u64 m) noexcept
    {
        u64 result = 1 % m;
        base %= m;
        while (exp)
        {
            if (exp & 1)
                result = mul_mod(result, base, m);
            base = mul_mod(base, base, m);
            exp >>= 1;
        }
        return result;
    }

    inline std::int64_t mod_floor(std::int64_t a, std::int64_t m) noexcept
    {
        auto r = a % m;
        return r < 0 ? r + m : r;
    }

    /// Inverse of a modulo m, or nullopt when gcd(a, m) != 1.
    inline std::optional<u64> inv_mod(u64 a, u64 m)
    {
        std::int64_t t = 0, new_t = 1;
        std::int64_t r = static_cast<std::int64_t>(m), new_r = static_cast<std::int64_t>(a % m);
        while (new_r != 0)
        {
            auto quotient = r / new_r;
            std::tie(t, new_t) = std::pair{new_t, t - quotient * new_t};
            std::tie(r, new_r) = std::pair{new_r, r - quotient * new_r};
        }
        if (r != 1)
            return std::nullopt;
        return static_cast<u64>(mod_floor(t, static_cast<std::int64_t>(m)));
    }

    /// Deterministic Miller-Rabin for 64-bit integers.
    inline bool is_prime(u64 n) noexcept
    {
        if (n < 2)
            return false;
        for (u64 small : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        {
            if (n % small == 0)
                return n == small;
        }
        u64 d = n - 1;
        int s = 0;
        while ((d & 1) == 0)
        {
            d >>= 1;
            ++s;
        }
        for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull})
        {
            u64 x = pow_mod(a, d, n);
            if (x == 1 || x == n - 1)
                continue;
            bool composite = true;
            for (int i = 1; i < s; ++i)
            {
                x = mul_mod(x, x, n);
                if (x == n - 1)
                {
                    composite = false;
                    break;
                }
            }
            if (composite)
                return false;
        }
        return true;
    }

    namespace detail
    {
        inline u64 pollard_rho(u64 n)
        {
            if (n % 2 == 0)
                return 2;
            for (u64 c = 1;; ++c)
            {
                auto f = [&](u64 x) { return (mul_mod(x, x, n) + c) % n; };
                u64 x = 2, y = 2, d = 1;
                while (d == 1)
                {
                    x = f(x);
                    y = f(f(y));
                    d = std::gcd(x > y ? x - y : y - x, n);
                }
                if (d != n)
                    return d;
            }
        }

        inline void factor_into(u64 n, std::map<u64, unsigned>& out)
        {
            if (n == 1)
                return;
            if (is_prime(n))
            {
                ++out[n];
                return;
            }
            u64 d = pollard_rho(n);
            factor_into(d, out);
            factor_into(n / d, out);
        }
    }

    /// Prime factorization as (prime, exponent) pairs in increasing prime order.
    inline std::vector<std::pair<u64, unsigned>> factorize(u64 n)
    {
        std::map<u64, unsigned> found;
        for (u64 p = 2; p < 1000 && p * p <= n; ++p)
        {
            while (n % p == 0)
            {
                ++found[p];
                n /= p;
            }
        }
        detail::factor_into(n, found);
        return {found.begin(), found.end()};
    }

    inline std::vector<u64> prime_divisors(u64 n)
    {
        std::vector<u64> out;
        for (auto [p, e] : factorize(n))
            out.push_back(p);
        return out;
    }

    inline std::vector<u64> divisors(u64 n)
    {
        std::vector<u64> out{1};
        for (auto [p, e] : factorize(n))
        {
            auto const current = out.size();
            u64 power = 1;
            for (unsigned i = 1; i <= e; ++i)
            {
                power *= p;
                for (std::size_t j = 0; j < current; ++j)
                    out.push_back(out[j] * power);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

    inline int mobius(u64 n)
    {
        int sign = 1;
        for (auto [p, e] : factorize(n))
        {
            if (e > 1)
                return 0;
            sign = -sign;
        }
        return sign;
    }

    inline u64 euler_phi(u64 n)
    {
        u64 result = n;
        for (auto [p, e] : factorize(n))
            result = result / p * (p - 1);
        return result;
    }

    /// Multiplicative order of a modulo n (gcd(a, n) must be 1).
    inline u64 mult_order(u64 a, u64 n)
    {
        if (n == 1)
            return 1;
        if (std::gcd(a % n, n) != 1)
            throw Error(ErrorKind::InvalidInput, "mult_order: element is not a unit");
        u64 order = euler_phi(n);
        for (auto [p, e] : factorize(order))
        {
            for (unsigned i = 0; i < e && order % p == 0 && pow_mod(a, order / p, n) == 1; ++i)
                order /= p;
        }
        return order;
    }

    /// Exact integer power; throws when the result does not fit in 64 bits.
    inline u64 checked_pow(u64 base, u64 exp)
    {
        u64 result = 1;
        for (u64 i = 0; i < exp; ++i)
        {
            if (base != 0 && result > UINT64_MAX / base)
                throw Error(ErrorKind::EnumerationCapExceeded, "integer power overflows 64 bits");
            result *= base;
        }
        return result;
    }

    /// Legendre/Jacobi symbol (a | n) for odd positive n.
    inline int jacobi_symbol(std::int64_t a, u64 n)
    {
        if (n % 2 == 0)
            throw Error(ErrorKind::InvalidInput, "jacobi_symbol: modulus must be odd");
        u64 x = static_cast<u64>(mod_floor(a, static_cast<std::int64_t>(n)));
        int result = 1;
        while (x != 0)
        {
            while (x % 2 == 0)
            {
                x /= 2;
                if (n % 8 == 3 || n % 8 == 5)
                    result = -result;
            }
            std::swap(x, n);
            if (x % 4 == 3 && n % 4 == 3)
                result = -result;
            x %= n;
        }
        return n == 1 ? result : 0;
    }
}

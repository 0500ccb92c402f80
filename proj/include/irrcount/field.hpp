#pragma once

#include <irrcount/error.hpp>
#include <irrcount/numtheory.hpp>

#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <string>
#include <thread>
#include <unordered_map>
#include <vector>

namespace irrcount
{
    using nt::u64;

    /// Work limits shared by every enumeration-based operation.
    struct Limits
    {
        u64 enumeration_cap = u64{1} << 24; // largest field iterated element by element
        u64 oracle_cap = u64{1} << 22;      // largest q^m the brute-force oracle will walk
        u64 listing_cap = 100000;           // most polynomials `list` will emit
        unsigned workers = std::max(1u, std::thread::hardware_concurrency());

        /// Defaults overridden by IRRCOUNT_ENUM_CAP, IRRCOUNT_ORACLE_CAP, IRRCOUNT_LIST_CAP, IRRCOUNT_WORKERS.
        static Limits from_env()
        {
            Limits limits;
            auto read = [](char const* name, u64& target) {
                if (char const* value = std::getenv(name))
                    target = std::strtoull(value, nullptr, 0);
            };
            read("IRRCOUNT_ENUM_CAP", limits.enumeration_cap);
            read("IRRCOUNT_ORACLE_CAP", limits.oracle_cap);
            read("IRRCOUNT_LIST_CAP", limits.listing_cap);
            u64 workers = limits.workers;
            read("IRRCOUNT_WORKERS", workers);
            limits.workers = static_cast<unsigned>(std::max<u64>(1, workers));
            return limits;
        }
    };

    inline Limits& default_limits()
    {
        static Limits limits = Limits::from_env();
        return limits;
    }

    /// Element of F_{p^n} packed as the integer sum c_i p^i of its coordinates.
    struct FieldElement
    {
        u64 code = 0;

        friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
        constexpr bool is_zero() const noexcept { return code == 0; }
    };

    /// Dense polynomial over F_p, low degree first.
    using PolyFp = std::vector<u64>;

    namespace poly
    {
        inline void trim(PolyFp& a)
        {
            while (!a.empty() && a.back() == 0)
                a.pop_back();
        }

        inline PolyFp mod(PolyFp a, PolyFp const& b, u64 p)
        {
            trim(a);
            auto const db = b.size() - 1;
            u64 const lead_inv = *nt::inv_mod(b.back(), p);
            while (a.size() >= b.size())
            {
                u64 const factor = nt::mul_mod(a.back(), lead_inv, p);
                auto const shift = a.size() - 1 - db;
                for (std::size_t i = 0; i <= db; ++i)
                    a[shift + i] = (a[shift + i] + p - nt::mul_mod(factor, b[i], p)) % p;
                trim(a);
            }
            return a;
        }

        inline PolyFp gcd(PolyFp a, PolyFp b, u64 p)
        {
            trim(a);
            trim(b);
            while (!b.empty())
            {
                auto r = mod(a, b, p);
                a = std::move(b);
                b = std::move(r);
            }
            return a;
        }
    }

    /// Arithmetic in F_p[x]/(f) for a monic f; the engine behind FieldCtx.
    class QuotientRing
    {
    public:
        QuotientRing(u64 p, PolyFp modulus) : p_(p), modulus_(std::move(modulus))
        {
            n_ = static_cast<unsigned>(modulus_.size() - 1);
            order_ = nt::checked_pow(p_, n_);
            if (p_ == 2)
            {
                for (unsigned i = 0; i < n_; ++i)
                    if (modulus_[i])
                        low_mask_ |= u64{1} << i;
            }
        }

        u64 characteristic() const noexcept { return p_; }
        unsigned degree() const noexcept { return n_; }
        u64 order() const noexcept { return order_; }
        PolyFp const& modulus() const noexcept { return modulus_; }

        std::vector<u64> digits(u64 code) const
        {
            std::vector<u64> out(n_);
            for (unsigned i = 0; i < n_; ++i)
            {
                out[i] = code % p_;
                code /= p_;
            }
            return out;
        }

        u64 pack(std::span<u64 const> digits) const
        {
            u64 code = 0;
            for (std::size_t i = digits.size(); i-- > 0;)
                code = code * p_ + digits[i] % p_;
            return code;
        }

        u64 add(u64 a, u64 b) const
        {
            if (p_ == 2)
                return a ^ b;
            if (n_ == 1)
                return (a + b) % p_;
            u64 out = 0, scale = 1;
            for (unsigned i = 0; i < n_; ++i)
            {
                out += ((a % p_ + b % p_) % p_) * scale;
                a /= p_;
                b /= p_;
                scale *= p_;
            }
            return out;
        }

        u64 neg(u64 a) const
        {
            if (p_ == 2)
                return a;
            u64 out = 0, scale = 1;
            for (unsigned i = 0; i < n_; ++i)
            {
                out += ((p_ - a % p_) % p_) * scale;
                a /= p_;
                scale *= p_;
            }
            return out;
        }

        u64 sub(u64 a, u64 b) const { return add(a, neg(b)); }

        u64 scale(u64 a, u64 c) const
        {
            c %= p_;
            u64 out = 0, s = 1;
            for (unsigned i = 0; i < n_; ++i)
            {
                out += nt::mul_mod(a % p_, c, p_) * s;
                a /= p_;
                s *= p_;
            }
            return out;
        }

        u64 mul(u64 a, u64 b) const
        {
            if (n_ == 1)
                return nt::mul_mod(a, b, p_);
            if (p_ == 2)
                return mul_binary(a, b);
            // p^n <= 2^62 keeps every unreduced convolution term sum below 2^64
            std::array<u64, 128> prod{};
            std::array<u64, 64> da{}, db{};
            for (unsigned i = 0; i < n_; ++i)
            {
                da[i] = a % p_;
                a /= p_;
                db[i] = b % p_;
                b /= p_;
            }
            for (unsigned i = 0; i < n_; ++i)
            {
                if (da[i] == 0)
                    continue;
                for (unsigned j = 0; j < n_; ++j)
                    prod[i + j] += da[i] * db[j];
            }
            for (unsigned k = 0; k < 2 * n_ - 1; ++k)
                prod[k] %= p_;
            for (unsigned k = 2 * n_ - 2; k >= n_; --k)
            {
                u64 const c = prod[k];
                if (c == 0)
                    continue;
                prod[k] = 0;
                for (unsigned j = 0; j < n_; ++j)
                    prod[k - n_ + j] = (prod[k - n_ + j] + (p_ - c) * modulus_[j]) % p_;
            }
            return pack(std::span<u64 const>(prod.data(), n_));
        }

        u64 pow(u64 a, u64 e) const
        {
            u64 result = 1;
            while (e)
            {
                if (e & 1)
                    result = mul(result, a);
                e >>= 1;
                if (e)
                    a = mul(a, a);
            }
            return result;
        }

    private:
        u64 mul_binary(u64 a, u64 b) const
        {
            nt::u128 prod = 0;
            for (u64 bits = b; bits; bits &= bits - 1)
                prod ^= static_cast<nt::u128>(a) << std::countr_zero(bits);
            for (int k = 2 * static_cast<int>(n_) - 2; k >= static_cast<int>(n_); --k)
            {
                if ((prod >> k) & 1)
                {
                    prod ^= static_cast<nt::u128>(1) << k;
                    prod ^= static_cast<nt::u128>(low_mask_) << (k - n_);
                }
            }
            return static_cast<u64>(prod);
        }

        u64 p_;
        PolyFp modulus_;
        unsigned n_ = 0;
        u64 order_ = 0;
        u64 low_mask_ = 0;
    };

    /// Rabin's test: f of degree n is irreducible over F_p iff x^{p^n} = x mod f and
    /// gcd(x^{p^{n/l}} - x, f) = 1 for every prime l dividing n.
    inline bool is_irreducible(u64 p, PolyFp const& f)
    {
        auto const n = f.size() - 1;
        if (n == 0 || f.back() != 1)
            return false;
        if (n == 1)
            return true;
        if (f[0] == 0)
            return false;
        QuotientRing ring(p, f);
        u64 const x = p; // code of the class of x
        auto frobenius_power = [&](u64 k) {
            u64 y = x;
            for (u64 i = 0; i < k; ++i)
                y = ring.pow(y, p);
            return y;
        };
        if (frobenius_power(n) != x)
            return false;
        for (auto ell : nt::prime_divisors(n))
        {
            auto h = ring.digits(ring.sub(frobenius_power(n / ell), x));
            if (poly::gcd(f, h, p).size() != 1)
                return false;
        }
        return true;
    }

    /// F_{p^n} with a fixed monic irreducible modulus.
    class FieldCtx
    {
    public:
        /// Canonical field: the modulus is the monic irreducible of degree n whose lower
        /// coefficients, read as the integer sum c_i p^i, are smallest.
        static FieldCtx build(u64 p, unsigned degree)
        {
            if (!nt::is_prime(p))
                throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
            if (degree == 0)
                throw Error(ErrorKind::InvalidDegree, "extension degree must be positive");
            if (std::log2(static_cast<double>(p)) * degree > 62.0)
                throw Error(ErrorKind::InvalidDegree, "field order exceeds 2^62");
            u64 const count = nt::checked_pow(p, degree);
            for (u64 code = 0; code < count; ++code)
            {
                PolyFp f(degree + 1);
                u64 c = code;
                for (unsigned i = 0; i < degree; ++i)
                {
                    f[i] = c % p;
                    c /= p;
                }
                f[degree] = 1;
                if (is_irreducible(p, f))
                    return FieldCtx(p, std::move(f), Trusted{});
            }
            throw Error(ErrorKind::InvariantViolation, "no irreducible polynomial found");
        }

        FieldCtx(u64 p, PolyFp modulus) : FieldCtx(p, std::move(modulus), Trusted{})
        {
            if (!nt::is_prime(p))
                throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
            if (!is_irreducible(p, ring_.modulus()))
                throw Error(ErrorKind::InvalidInput, "modulus is not irreducible");
        }

        u64 characteristic() const noexcept { return ring_.characteristic(); }
        unsigned degree() const noexcept { return ring_.degree(); }
        u64 order() const noexcept { return ring_.order(); }
        PolyFp const& modulus() const noexcept { return ring_.modulus(); }

        bool contains(FieldElement x) const noexcept { return x.code < order(); }

        FieldElement zero() const noexcept { return {0}; }
        FieldElement one() const noexcept { return {1}; }
        FieldElement constant(std::int64_t c) const
        {
            return {static_cast<u64>(nt::mod_floor(c, static_cast<std::int64_t>(characteristic())))};
        }
        /// Class of x (the generator of the polynomial basis).
        FieldElement x() const { return degree() == 1 ? FieldElement{0} : FieldElement{characteristic()}; }

        std::vector<u64> coords(FieldElement a) const { return ring_.digits(a.code); }
        FieldElement from_coords(std::span<u64 const> coords) const
        {
            if (coords.size() > degree())
                throw Error(ErrorKind::InvalidInput, "too many coordinates for field");
            return {ring_.pack(coords)};
        }

        FieldElement add(FieldElement a, FieldElement b) const { return {ring_.add(a.code, b.code)}; }
        FieldElement sub(FieldElement a, FieldElement b) const { return {ring_.sub(a.code, b.code)}; }
        FieldElement neg(FieldElement a) const { return {ring_.neg(a.code)}; }
        FieldElement mul(FieldElement a, FieldElement b) const { return {ring_.mul(a.code, b.code)}; }
        FieldElement scale(FieldElement a, u64 c) const { return {ring_.scale(a.code, c)}; }
        FieldElement pow(FieldElement a, u64 e) const { return {ring_.pow(a.code, e)}; }
        FieldElement inv(FieldElement a) const
        {
            if (a.is_zero())
                throw Error(ErrorKind::InvalidInput, "inverse of zero");
            return pow(a, order() - 2);
        }
        /// x^{p^k}
        FieldElement frobenius(FieldElement a, u64 k) const
        {
            for (u64 i = 0; i < k % degree(); ++i)
                a = pow(a, characteristic());
            return a;
        }

        std::vector<std::pair<u64, unsigned>> const& group_factorization() const { return group_factors_; }

        u64 multiplicative_order(FieldElement a) const
        {
            if (a.is_zero())
                throw Error(ErrorKind::ZeroHasNoLog, "zero has no multiplicative order");
            u64 order = this->order() - 1;
            for (auto [ell, e] : group_factors_)
            {
                for (unsigned i = 0; i < e && pow(a, order / ell) == one(); ++i)
                    order /= ell;
            }
            return order;
        }

        bool is_primitive(FieldElement a) const
        {
            if (a.is_zero())
                return false;
            for (auto [ell, e] : group_factors_)
                if (pow(a, (order() - 1) / ell) == one())
                    return false;
            return true;
        }

        /// First element, in increasing code order, of multiplicative order p^n - 1.
        FieldElement primitive() const { return primitive_; }

        /// Absolute trace to F_p as a residue in [0, p).
        u64 abs_trace(FieldElement a) const
        {
            if (characteristic() == 2)
                return static_cast<u64>(std::popcount(a.code & trace_mask_) & 1);
            u64 sum = 0;
            u64 code = a.code;
            for (unsigned i = 0; i < degree(); ++i)
            {
                sum = (sum + nt::mul_mod(code % characteristic(), basis_trace_[i], characteristic())) % characteristic();
                code /= characteristic();
            }
            return sum;
        }

        /// Discrete logarithm of x to a base of order `base_order` (Pohlig-Hellman with
        /// baby-step giant-step in each prime-order layer).
        u64 dlog(FieldElement x, FieldElement base, u64 base_order) const
        {
            if (x.is_zero())
                throw Error(ErrorKind::ZeroHasNoLog, "zero has no discrete logarithm");
            u64 result = 0, modulus = 1;
            for (auto [ell, e] : nt::factorize(base_order))
            {
                u64 const prime_power = nt::checked_pow(ell, e);
                u64 const cofactor = base_order / prime_power;
                FieldElement const h = pow(x, cofactor);
                FieldElement const b = pow(base, cofactor);
                FieldElement const b_top = pow(b, prime_power / ell); // order ell
                u64 digit_sum = 0, ell_power = 1;
                for (unsigned k = 0; k < e; ++k)
                {
                    // (h * b^{-digit_sum})^{ell^{e-1-k}} lies in <b_top>
                    FieldElement const shifted = mul(h, pow(inv(b), digit_sum));
                    FieldElement const target = pow(shifted, prime_power / ell / ell_power);
                    u64 const d = bsgs(target, b_top, ell);
                    digit_sum += d * ell_power;
                    ell_power *= ell;
                }
                // CRT merge of result mod `modulus` with digit_sum mod prime_power
                u64 const combined_modulus = modulus * prime_power;
                u64 const adjust = nt::mul_mod((digit_sum + prime_power - result % prime_power) % prime_power,
                                               *nt::inv_mod(modulus % prime_power, prime_power), prime_power);
                result = (result + nt::mul_mod(adjust, modulus, combined_modulus)) % combined_modulus;
                modulus = combined_modulus;
            }
            if (pow(base, result) != x)
                throw Error(ErrorKind::InvalidInput, "element is not in the subgroup generated by the base");
            return result;
        }

        u64 dlog(FieldElement x, FieldElement base) const { return dlog(x, base, multiplicative_order(base)); }

    private:
        struct Trusted
        {
        };

        FieldCtx(u64 p, PolyFp modulus, Trusted) : ring_(p, std::move(modulus))
        {
            group_factors_ = nt::factorize(order() - 1);
            basis_trace_.resize(degree());
            for (unsigned i = 0; i < degree(); ++i)
            {
                FieldElement basis{nt::checked_pow(p, i)};
                FieldElement sum = zero(), y = basis;
                for (unsigned k = 0; k < degree(); ++k)
                {
                    sum = add(sum, y);
                    y = pow(y, p);
                }
                ensure(sum.code < p, "trace of basis element is not in the prime field");
                basis_trace_[i] = sum.code;
                if (p == 2 && sum.code)
                    trace_mask_ |= u64{1} << i;
            }
            for (u64 code = 1; code < order(); ++code)
            {
                if (is_primitive({code}))
                {
                    primitive_ = {code};
                    break;
                }
            }
        }

        u64 bsgs(FieldElement target, FieldElement base, u64 group_order) const
        {
            if (group_order > (u64{1} << 44))
                throw Error(ErrorKind::Unsupported, "discrete log layer too large for baby-step giant-step");
            u64 const step = static_cast<u64>(std::ceil(std::sqrt(static_cast<double>(group_order))));
            std::unordered_map<u64, u64> baby;
            baby.reserve(step * 2);
            FieldElement y = one();
            for (u64 j = 0; j < step; ++j)
            {
                baby.emplace(y.code, j);
                y = mul(y, base);
            }
            FieldElement const giant = inv(pow(base, step));
            FieldElement gamma = target;
            for (u64 i = 0; i <= step; ++i)
            {
                if (auto it = baby.find(gamma.code); it != baby.end())
                    return (i * step + it->second) % group_order;
                gamma = mul(gamma, giant);
            }
            throw Error(ErrorKind::InvalidInput, "element is not in the subgroup generated by the base");
        }

        QuotientRing ring_;
        std::vector<std::pair<u64, unsigned>> group_factors_;
        std::vector<u64> basis_trace_;
        u64 trace_mask_ = 0;
        FieldElement primitive_{1};
    };
}

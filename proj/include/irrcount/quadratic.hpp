#pragma once

#include <irrcount/cyclotomic.hpp>

#include <string>

namespace irrcount
{
    /// a + b sqrt(2) with rational a, b.
    struct QSqrt2
    {
        BigRational a{0};
        BigRational b{0};

        QSqrt2() = default;
        QSqrt2(BigRational a_, BigRational b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}
        QSqrt2(BigInt const& n) : a(n), b(0) {}
        QSqrt2(int n) : a(n), b(0) {}

        /// sqrt(2)^k for any integer k.
        static QSqrt2 sqrt2_pow(std::int64_t k)
        {
            std::int64_t const half = k >= 0 ? k / 2 : -((-k + 1) / 2);
            bool const odd = (k - 2 * half) != 0;
            BigRational scale = half >= 0 ? BigRational(big_pow(2, static_cast<u64>(half)))
                                          : BigRational(BigInt(1), big_pow(2, static_cast<u64>(-half)));
            return odd ? QSqrt2(0, scale) : QSqrt2(scale, 0);
        }

        friend QSqrt2 operator+(QSqrt2 const& x, QSqrt2 const& y) { return {x.a + y.a, x.b + y.b}; }
        friend QSqrt2 operator-(QSqrt2 const& x, QSqrt2 const& y) { return {x.a - y.a, x.b - y.b}; }
        QSqrt2 operator-() const { return {-a, -b}; }
        friend QSqrt2 operator*(QSqrt2 const& x, QSqrt2 const& y)
        {
            return {x.a * y.a + 2 * x.b * y.b, x.a * y.b + x.b * y.a};
        }
        QSqrt2& operator+=(QSqrt2 const& y) { return *this = *this + y; }
        QSqrt2& operator-=(QSqrt2 const& y) { return *this = *this - y; }
        QSqrt2& operator*=(QSqrt2 const& y) { return *this = *this * y; }
        friend bool operator==(QSqrt2 const& x, QSqrt2 const& y) { return x.a == y.a && x.b == y.b; }

        bool is_integer() const { return b == 0 && denominator(a) == 1; }
        BigInt to_integer() const
        {
            ensure(is_integer(), "value " + to_string() + " is not a rational integer");
            return numerator(a);
        }
        std::string to_string() const { return a.str() + (b == 0 ? "" : " + (" + b.str() + ")*sqrt2"); }
    };

    /// (u + v sqrt(-D)) / sqrt(2)^k.
    class QuadPow
    {
    public:
        QuadPow() = default;
        QuadPow(u64 D, BigInt u, BigInt v, std::int64_t k = 0) : D_(D), u_(std::move(u)), v_(std::move(v)), k_(k)
        {
            if (D == 0)
                throw Error(ErrorKind::InvalidInput, "D must be positive");
            normalize();
        }

        u64 D() const noexcept { return D_; }
        BigInt const& u() const noexcept { return u_; }
        BigInt const& v() const noexcept { return v_; }
        std::int64_t k() const noexcept { return k_; }

        QuadPow conj() const { return {D_, u_, -v_, k_}; }
        QuadPow operator-() const { return {D_, -u_, -v_, k_}; }

        friend QuadPow operator*(QuadPow const& x, QuadPow const& y)
        {
            x.check_same(y);
            BigInt const D = x.D_;
            return {x.D_, x.u_ * y.u_ - D * x.v_ * y.v_, x.u_ * y.v_ + x.v_ * y.u_, x.k_ + y.k_};
        }

        /// Sum; the sqrt(2) gradings must have equal parity.
        friend QuadPow operator+(QuadPow const& x, QuadPow const& y)
        {
            x.check_same(y);
            if ((x.k_ - y.k_) % 2 != 0)
                throw Error(ErrorKind::Unsupported, "sum of QuadPow values with odd sqrt(2) grading difference");
            std::int64_t const k = std::max(x.k_, y.k_);
            BigInt const sx = big_pow(2, static_cast<u64>((k - x.k_) / 2));
            BigInt const sy = big_pow(2, static_cast<u64>((k - y.k_) / 2));
            return {x.D_, x.u_ * sx + y.u_ * sy, x.v_ * sx + y.v_ * sy, k};
        }
        friend QuadPow operator-(QuadPow const& x, QuadPow const& y) { return x + (-y); }

        /// Multiply by sqrt(2)^j.
        QuadPow times_sqrt2_pow(std::int64_t j) const { return {D_, u_, v_, k_ - j}; }
        QuadPow times(BigInt const& c) const { return {D_, u_ * c, v_ * c, k_}; }

        QuadPow pow(u64 n) const
        {
            QuadPow result(D_, 1, 0, 0), base = *this;
            while (n)
            {
                if (n & 1)
                    result = result * base;
                n >>= 1;
                if (n)
                    base = base * base;
            }
            return result;
        }

        /// z * conj(z) = (u^2 + D v^2) / 2^k
        BigRational norm() const
        {
            BigInt const num = u_ * u_ + BigInt(D_) * v_ * v_;
            return k_ >= 0 ? BigRational(num, big_pow(2, static_cast<u64>(k_)))
                           : BigRational(num * big_pow(2, static_cast<u64>(-k_)));
        }

        /// z + conj(z) = 2u / sqrt(2)^k
        QSqrt2 trace() const { return QSqrt2(2 * u_) * QSqrt2::sqrt2_pow(-k_); }
        QSqrt2 real_part() const { return QSqrt2(u_) * QSqrt2::sqrt2_pow(-k_); }

        /// Value in Z[zeta_L] with L = D (k even) or lcm(8, D) (k odd); requires k <= 0.
        CycInt to_cyc() const
        {
            if (k_ > 0)
                throw Error(ErrorKind::Unsupported, "QuadPow with a sqrt(2) denominator is not a cyclotomic integer");
            u64 const L = (k_ % 2 == 0) ? D_ : std::lcm<u64>(8, D_);
            CycInt const root = sqrt_neg(D_).embed(L);
            CycInt value = CycInt::integer(L, u_) + root * v_;
            value *= big_pow(2, static_cast<u64>(-k_ / 2));
            if (k_ % 2 != 0)
                value *= CycInt::root(L, static_cast<std::int64_t>(L / 8)) + CycInt::root(L, -static_cast<std::int64_t>(L / 8));
            return value;
        }

        friend bool operator==(QuadPow const& x, QuadPow const& y)
        {
            return x.D_ == y.D_ && x.u_ == y.u_ && x.v_ == y.v_ && x.k_ == y.k_;
        }

        std::string to_string() const
        {
            return "(" + u_.str() + " + " + v_.str() + "*sqrt(-" + std::to_string(D_) + "))/sqrt2^" + std::to_string(k_);
        }

    private:
        void check_same(QuadPow const& o) const
        {
            if (o.D_ != D_)
                throw Error(ErrorKind::OrderMismatch, "QuadPow discriminants differ");
        }

        void normalize()
        {
            if (u_ == 0 && v_ == 0)
            {
                k_ = 0;
                return;
            }
            while (k_ >= 2 && (u_ & 1) == 0 && (v_ & 1) == 0)
            {
                u_ >>= 1;
                v_ >>= 1;
                k_ -= 2;
            }
        }

        u64 D_ = 1;
        BigInt u_{0};
        BigInt v_{0};
        std::int64_t k_ = 0;
    };

    /// a + b i in Z[i].
    struct GaussianInt
    {
        BigInt a{0};
        BigInt b{0};

        friend GaussianInt operator+(GaussianInt const& x, GaussianInt const& y) { return {x.a + y.a, x.b + y.b}; }
        friend GaussianInt operator-(GaussianInt const& x, GaussianInt const& y) { return {x.a - y.a, x.b - y.b}; }
        GaussianInt operator-() const { return {-a, -b}; }
        friend GaussianInt operator*(GaussianInt const& x, GaussianInt const& y)
        {
            return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a};
        }
        friend GaussianInt operator*(GaussianInt const& x, BigInt const& c) { return {x.a * c, x.b * c}; }
        friend bool operator==(GaussianInt const& x, GaussianInt const& y) { return x.a == y.a && x.b == y.b; }

        GaussianInt conj() const { return {a, -b}; }
        BigInt norm() const { return a * a + b * b; }
        GaussianInt pow(u64 n) const
        {
            GaussianInt result{1, 0}, base = *this;
            for (; n; n >>= 1, base = base * base)
                if (n & 1)
                    result = result * base;
            return result;
        }
        /// zeta_4 = i
        CycInt to_cyc() const { return CycInt(4, {a, b, 0, 0}); }
        std::string to_string() const { return a.str() + (b < 0 ? " - " : " + ") + abs(b).str() + "i"; }
    };

    /// a + b w in Z[w], w = zeta_3.
    struct EisensteinInt
    {
        BigInt a{0};
        BigInt b{0};

        friend EisensteinInt operator+(EisensteinInt const& x, EisensteinInt const& y) { return {x.a + y.a, x.b + y.b}; }
        friend EisensteinInt operator-(EisensteinInt const& x, EisensteinInt const& y) { return {x.a - y.a, x.b - y.b}; }
        EisensteinInt operator-() const { return {-a, -b}; }
        friend EisensteinInt operator*(EisensteinInt const& x, EisensteinInt const& y)
        {
            // w^2 = -1 - w
            return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
        }
        friend EisensteinInt operator*(EisensteinInt const& x, BigInt const& c) { return {x.a * c, x.b * c}; }
        friend bool operator==(EisensteinInt const& x, EisensteinInt const& y) { return x.a == y.a && x.b == y.b; }

        /// w^k
        static EisensteinInt unit_root(std::int64_t k)
        {
            switch (nt::mod_floor(k, 3))
            {
            case 0: return {1, 0};
            case 1: return {0, 1};
            default: return {-1, -1};
            }
        }

        EisensteinInt conj() const { return {a - b, -b}; }
        BigInt norm() const { return a * a - a * b + b * b; }
        EisensteinInt pow(u64 n) const
        {
            EisensteinInt result{1, 0}, base = *this;
            for (; n; n >>= 1, base = base * base)
                if (n & 1)
                    result = result * base;
            return result;
        }
        CycInt to_cyc() const { return CycInt(3, {a, b, 0}); }
        std::string to_string() const { return a.str() + (b < 0 ? " - " : " + ") + abs(b).str() + "w"; }
    };
}

#pragma once

#include <irrcount/field.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>

namespace irrcount
{
    /// Discrete log tables for a cyclic group F^* with a fixed generator.
    class LogTable
    {
    public:
        static constexpr std::uint32_t no_log = UINT32_MAX;

        LogTable() = default;

        LogTable(FieldCtx const& field, FieldElement generator)
        {
            u64 const n = field.order() - 1;
            exp_.resize(n);
            log_.assign(field.order(), no_log);
            FieldElement y = field.one();
            for (u64 k = 0; k < n; ++k)
            {
                ensure(log_[y.code] == no_log, "log table generator is not primitive");
                exp_[k] = static_cast<std::uint32_t>(y.code);
                log_[y.code] = static_cast<std::uint32_t>(k);
                y = field.mul(y, generator);
            }
            ensure(y == field.one(), "log table generator has wrong order");
        }

        bool empty() const noexcept { return exp_.empty(); }
        u64 group_order() const noexcept { return exp_.size(); }
        FieldElement exp(u64 k) const { return {exp_[k % exp_.size()]}; }
        u64 log(FieldElement x) const
        {
            if (x.is_zero())
                throw Error(ErrorKind::ZeroHasNoLog, "zero has no discrete logarithm");
            return log_[x.code];
        }

    private:
        std::vector<std::uint32_t> exp_;
        std::vector<std::uint32_t> log_;
    };

    /// Minimal polynomial over F_q: monic coefficients (low degree first) in the base field.
    struct MinPoly
    {
        std::vector<FieldElement> coeffs;
        unsigned degree = 0;
    };

    /// F_q = F_{p^r} together with F_{q^m} and the distinguished primitive elements
    /// gamma_m (of F_{q^m}) and g = Norm_m(gamma_m) (of F_q).
    ///
    /// F_q has two models: the standalone canonical field `base()` and its image inside
    /// `top()`. The embedding sends the class of x in `base()` to the root of the base
    /// modulus with the smallest code in `top()`. The generator g is fixed first (the
    /// canonical primitive element of `base()` unless chosen explicitly); gamma_m is then
    /// the first primitive element of `top()` whose norm is the image of g. This makes
    /// the labels h = ind_g(b) independent of m.
    class TowerCtx
    {
    public:
        TowerCtx(u64 p, unsigned r, unsigned m, std::optional<FieldElement> g_choice = std::nullopt,
                 Limits const& limits = default_limits())
            : base_(FieldCtx::build(p, r)), top_(m == 1 ? base_ : build_top(p, r, m)), r_(r), m_(m)
        {
            if (m == 0)
                throw Error(ErrorKind::InvalidDegree, "tower degree must be positive");
            q_ = base_.order();
            g_base_ = g_choice.value_or(base_.primitive());
            if (!base_.contains(g_base_) || !base_.is_primitive(g_base_))
                throw Error(ErrorKind::InvalidInput, "chosen g is not a primitive element of F_q");
            if (q_ <= limits.enumeration_cap)
                base_log_ = LogTable(base_, g_base_);

            if (m == 1)
            {
                embed_root_ = base_.x();
                gamma_ = g_base_;
            }
            else
            {
                if (q_ > limits.enumeration_cap)
                    throw Error(ErrorKind::EnumerationCapExceeded, "base field too large to embed");
                embed_root_ = find_embedding_root();
                FieldElement const g_top = embed(g_base_);
                u64 const norm_exp = (top_.order() - 1) / (q_ - 1);
                for (u64 code = 1; code < top_.order(); ++code)
                {
                    FieldElement const candidate{code};
                    if (top_.pow(candidate, norm_exp) == g_top && top_.is_primitive(candidate))
                    {
                        gamma_ = candidate;
                        break;
                    }
                }
                ensure(!gamma_.is_zero(), "no primitive element with the prescribed norm");
            }
            if (top_.order() <= limits.enumeration_cap)
                top_log_ = LogTable(top_, gamma_);
        }

        u64 characteristic() const noexcept { return base_.characteristic(); }
        unsigned r() const noexcept { return r_; }
        unsigned m() const noexcept { return m_; }
        u64 q() const noexcept { return q_; }
        /// q^t for t | m
        u64 subfield_order(unsigned t) const { return nt::checked_pow(q_, t); }

        FieldCtx const& base() const noexcept { return base_; }
        FieldCtx const& top() const noexcept { return top_; }

        /// Primitive element g of F_q in the standalone model.
        FieldElement g_base() const noexcept { return g_base_; }
        /// g embedded in F_{q^m}.
        FieldElement g() const { return embed(g_base_); }
        FieldElement gamma() const noexcept { return gamma_; }
        /// gamma_t = Norm from F_{q^m} to F_{q^t} of gamma_m.
        FieldElement gamma_t(unsigned t) const
        {
            check_divides(t);
            return top_.pow(gamma_, (top_.order() - 1) / (subfield_order(t) - 1));
        }

        FieldElement embed(FieldElement a) const
        {
            if (m_ == 1)
                return a;
            auto const c = base_.coords(a);
            FieldElement result = top_.zero(), power = top_.one();
            for (auto coeff : c)
            {
                result = top_.add(result, top_.scale(power, coeff));
                power = top_.mul(power, embed_root_);
            }
            return result;
        }

        /// Inverse of `embed`; x must lie in the F_q subfield.
        FieldElement restrict_to_base(FieldElement x) const
        {
            if (m_ == 1)
                return x;
            if (!in_subfield(x, 1))
                throw Error(ErrorKind::SubfieldViolation, "element does not lie in F_q");
            if (x.is_zero())
                return base_.zero();
            u64 const k = dlog_gamma(x) / ((top_.order() - 1) / (q_ - 1));
            return base_pow_g(k);
        }

        bool in_subfield(FieldElement x, unsigned t) const
        {
            check_divides(t);
            return frobenius_q(x, t) == x;
        }

        /// x^{q^k}
        FieldElement frobenius_q(FieldElement x, unsigned k) const { return top_.frobenius(x, u64{r_} * k); }

        /// Tr_t(x) in F_q (top model).
        FieldElement trace_rel(FieldElement x, unsigned t) const
        {
            require_subfield(x, t);
            FieldElement sum = top_.zero(), y = x;
            for (unsigned i = 0; i < t; ++i)
            {
                sum = top_.add(sum, y);
                y = frobenius_q(y, 1);
            }
            ensure(in_subfield(sum, 1), "relative trace left F_q");
            return sum;
        }

        /// Norm_t(x) in F_q (top model).
        FieldElement norm_rel(FieldElement x, unsigned t) const
        {
            require_subfield(x, t);
            if (x.is_zero())
                return top_.zero();
            FieldElement const n = top_.pow(x, (subfield_order(t) - 1) / (q_ - 1));
            ensure(in_subfield(n, 1), "relative norm left F_q");
            return n;
        }

        /// Absolute trace from F_{q^t} to F_p.
        u64 abs_trace(FieldElement x, unsigned t) const
        {
            require_subfield(x, t);
            u64 const p = characteristic();
            u64 const ratio = (m_ / t) % p;
            if (ratio != 0)
                return nt::mul_mod(top_.abs_trace(x), *nt::inv_mod(ratio, p), p);
            FieldElement sum = top_.zero(), y = x;
            for (u64 i = 0; i < u64{r_} * t; ++i)
            {
                sum = top_.add(sum, y);
                y = top_.pow(y, p);
            }
            ensure(sum.code < p, "absolute trace left F_p");
            return sum.code;
        }

        /// Absolute trace of an element of the standalone F_q.
        u64 base_abs_trace(FieldElement a) const { return base_.abs_trace(a); }

        bool has_tables() const noexcept { return !top_log_.empty(); }
        LogTable const& top_log() const
        {
            if (top_log_.empty())
                throw Error(ErrorKind::EnumerationCapExceeded, "top field exceeds the enumeration cap");
            return top_log_;
        }
        LogTable const& base_log() const
        {
            if (base_log_.empty())
                throw Error(ErrorKind::EnumerationCapExceeded, "base field exceeds the enumeration cap");
            return base_log_;
        }

        /// Logarithm to the base gamma_m.
        u64 dlog_gamma(FieldElement x) const
        {
            if (x.is_zero())
                throw Error(ErrorKind::ZeroHasNoLog, "zero has no discrete logarithm");
            if (!top_log_.empty())
                return top_log_.log(x);
            return top_.dlog(x, gamma_, top_.order() - 1);
        }

        /// ind_g(a) for a in the standalone F_q.
        u64 ind_g(FieldElement a) const
        {
            if (a.is_zero())
                throw Error(ErrorKind::ZeroHasNoLog, "zero has no discrete logarithm");
            if (!base_log_.empty())
                return base_log_.log(a);
            return base_.dlog(a, g_base_, q_ - 1);
        }

        FieldElement base_pow_g(u64 k) const
        {
            if (!base_log_.empty())
                return base_log_.exp(k % (q_ - 1));
            return base_.pow(g_base_, k % (q_ - 1));
        }

        /// Minimal polynomial over F_q and its degree (least t | m with x^{q^t} = x).
        MinPoly min_poly(FieldElement x) const
        {
            unsigned degree = m_;
            for (auto t : nt::divisors(m_))
            {
                if (frobenius_q(x, static_cast<unsigned>(t)) == x)
                {
                    degree = static_cast<unsigned>(t);
                    break;
                }
            }
            std::vector<FieldElement> coeffs{top_.one()};
            FieldElement conj = x;
            for (unsigned i = 0; i < degree; ++i)
            {
                // multiply by (X - conj)
                std::vector<FieldElement> next(coeffs.size() + 1, top_.zero());
                for (std::size_t j = 0; j < coeffs.size(); ++j)
                {
                    next[j + 1] = top_.add(next[j + 1], coeffs[j]);
                    next[j] = top_.sub(next[j], top_.mul(coeffs[j], conj));
                }
                coeffs = std::move(next);
                conj = frobenius_q(conj, 1);
            }
            MinPoly out;
            out.degree = degree;
            for (auto c : coeffs)
                out.coeffs.push_back(restrict_to_base(c));
            return out;
        }

        /// Evaluate a polynomial with standalone F_q coefficients at x in F_{q^m}.
        FieldElement evaluate(std::span<FieldElement const> coeffs, FieldElement x) const
        {
            FieldElement acc = top_.zero();
            for (std::size_t i = coeffs.size(); i-- > 0;)
                acc = top_.add(top_.mul(acc, x), embed(coeffs[i]));
            return acc;
        }

    private:
        static FieldCtx build_top(u64 p, unsigned r, unsigned m)
        {
            if (std::log2(static_cast<double>(p)) * r * m > 62.0)
                throw Error(ErrorKind::EnumerationCapExceeded, "q^m exceeds 2^62");
            return FieldCtx::build(p, r * m);
        }

        void check_divides(unsigned t) const
        {
            if (t == 0 || m_ % t != 0)
                throw Error(ErrorKind::InvalidInput, "t must divide m");
        }

        void require_subfield(FieldElement x, unsigned t) const
        {
            if (!top_.contains(x) || !in_subfield(x, t))
                throw Error(ErrorKind::SubfieldViolation, "element does not lie in F_{q^t}");
        }

        FieldElement find_embedding_root() const
        {
            if (r_ == 1)
                return top_.zero(); // F_p: the modulus is x itself
            // roots of the base modulus all lie in the F_q subfield, generated by g0
            FieldElement const g0 = top_.pow(top_.primitive(), (top_.order() - 1) / (q_ - 1));
            auto const& f = base_.modulus();
            std::optional<FieldElement> best;
            FieldElement y = top_.one();
            for (u64 k = 0; k < q_ - 1; ++k)
            {
                FieldElement acc = top_.zero();
                for (std::size_t i = f.size(); i-- > 0;)
                    acc = top_.add(top_.mul(acc, y), top_.constant(static_cast<std::int64_t>(f[i])));
                if (acc.is_zero() && (!best || y < *best))
                    best = y;
                y = top_.mul(y, g0);
            }
            ensure(best.has_value(), "base modulus has no root in F_{q^m}");
            return *best;
        }

        FieldCtx base_;
        FieldCtx top_;
        unsigned r_;
        unsigned m_;
        u64 q_ = 0;
        FieldElement g_base_{};
        FieldElement embed_root_{};
        FieldElement gamma_{};
        LogTable base_log_;
        LogTable top_log_;
    };

    /// Shared cache of towers keyed by (p, r, m, g).
    class TowerCache
    {
    public:
        explicit TowerCache(Limits limits = default_limits()) : limits_(limits) {}

        std::shared_ptr<TowerCtx const> get(u64 p, unsigned r, unsigned m,
                                            std::optional<FieldElement> g_choice = std::nullopt)
        {
            auto key = std::make_tuple(p, r, m, g_choice ? g_choice->code : UINT64_MAX);
            std::lock_guard lock(mutex_);
            auto it = towers_.find(key);
            if (it != towers_.end())
                return it->second;
            auto tower = std::make_shared<TowerCtx const>(p, r, m, g_choice, limits_);
            towers_.emplace(key, tower);
            return tower;
        }

        Limits const& limits() const noexcept { return limits_; }

    private:
        Limits limits_;
        std::mutex mutex_;
        std::map<std::tuple<u64, unsigned, unsigned, u64>, std::shared_ptr<TowerCtx const>> towers_;
    };
}

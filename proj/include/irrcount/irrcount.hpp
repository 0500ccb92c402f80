#pragma once

#include <irrcount/char_sums.hpp>
#include <irrcount/count_spec.hpp>
#include <irrcount/counting.hpp>
#include <irrcount/cyclotomic.hpp>
#include <irrcount/field.hpp>
#include <irrcount/jacobi_closed.hpp>
#include <irrcount/oracle.hpp>
#include <irrcount/p2_catalog.hpp>
#include <irrcount/quadratic.hpp>
#include <irrcount/semiprimitive.hpp>
#include <irrcount/serialize.hpp>
#include <irrcount/tower.hpp>

#include <set>

namespace irrcount
{
    struct CountResult
    {
        BigInt value;
        std::string method;
        std::string detail;        // per-t methods or catalog branches
        std::map<u64, int> signs;  // resolved Gauss-sum signs c, keyed by N
    };

    inline bool prime_closed_applicable(CountSpec const& spec)
    {
        if (spec.r != 1 || !nt::is_prime(spec.m) || spec.m < 3)
            return false;
        if (spec.s == 2)
            return spec.p != 2;
        return (spec.s == 3 || spec.s == 4) && !(spec.s == 3 && spec.m == 3);
    }

    inline bool catalog_applicable(CountSpec const& spec)
    {
        return spec.p == 2 && spec.a.is_zero() && spec.m <= 30;
    }

    /// Front door: Counter methods plus the p = 2 catalog.
    class Engine
    {
    public:
        explicit Engine(Limits limits = default_limits()) : limits_(limits), counter_(limits), catalog_(limits) {}

        Counter& counter() noexcept { return counter_; }
        P2Catalog& catalog() noexcept { return catalog_; }
        Limits const& limits() const noexcept { return limits_; }

        CountResult count(CountSpec const& spec, Method method)
        {
            spec.validate();
            if (method == Method::Catalog)
                return count_catalog(spec);
            PmResult const pm = counter_.p_m(spec, method);
            CountResult out;
            out.value = pm.value;
            out.method = pm.method;
            for (auto const& term : pm.terms)
                out.detail += (out.detail.empty() ? "" : ",") + ("N_" + std::to_string(term.t) + ":" + term.method);
            return out;
        }

        /// "closed": prime-closed formula if it applies, otherwise the catalog.
        CountResult count_closed(CountSpec const& spec)
        {
            spec.validate();
            if (prime_closed_applicable(spec))
                return count(spec, Method::PrimeClosed);
            if (catalog_applicable(spec))
                return count_catalog(spec);
            throw Error(ErrorKind::NotApplicable,
                        "no closed form: prime-closed needs r = 1, m prime, s in {2, 3, 4}; the catalog needs p = 2, a = 0, m <= 30");
        }

    private:
        /// P_m(0, s, h) as the sum of the catalog cells ind b = h mod s.
        CountResult count_catalog(CountSpec const& spec)
        {
            if (!catalog_applicable(spec))
            {
                if (spec.p == 2 && spec.a.is_zero())
                    throw Error(ErrorKind::OutOfCatalog, "the catalog covers m <= 30");
                throw Error(ErrorKind::NotApplicable, "the catalog needs p = 2 and a = 0");
            }
            u64 const q1 = spec.q() - 1;
            CountResult out;
            out.method = "catalog";
            std::set<std::string> branches;
            for (u64 h = spec.h; h < q1; h += spec.s)
            {
                CatalogResult const cell = catalog_.evaluate(spec.r, spec.m, h, spec.g);
                out.value += cell.value;
                branches.insert(cell.branch);
                out.signs.insert(cell.signs.begin(), cell.signs.end());
            }
            for (auto const& b : branches)
                out.detail += (out.detail.empty() ? "" : "; ") + b;
            return out;
        }

        Limits limits_;
        Counter counter_;
        P2Catalog catalog_;
    };
}

#pragma once

#include <irrcount/quadratic.hpp>
#include <irrcount/tower.hpp>

#include <json.hpp>

namespace irrcount
{
    using json = nlohmann::ordered_json;

    /// {p, r, modulus: [c0..cr], generator_index}; generator_index is the code of g.
    inline json field_json(FieldCtx const& F, FieldElement g)
    {
        json out;
        out["p"] = F.characteristic();
        out["r"] = F.degree();
        out["modulus"] = F.modulus();
        out["generator_index"] = g.code;
        return out;
    }

    inline json field_json(TowerCtx const& tower) { return field_json(tower.base(), tower.g_base()); }

    struct PinnedField
    {
        u64 p = 0;
        unsigned r = 0;
        FieldElement g;
    };

    /// Reads a field description back; only the canonical modulus is accepted.
    inline PinnedField field_from_json(json const& j)
    {
        PinnedField out;
        try
        {
            out.p = j.at("p").get<u64>();
            out.r = j.at("r").get<unsigned>();
            out.g = FieldElement{j.at("generator_index").get<u64>()};
        }
        catch (json::exception const& e)
        {
            throw Error(ErrorKind::InvalidInput, std::string("field description: ") + e.what());
        }
        FieldCtx const F = FieldCtx::build(out.p, out.r);
        if (j.contains("modulus") && j.at("modulus").get<std::vector<u64>>() != F.modulus())
            throw Error(ErrorKind::Unsupported, "field description uses a non-canonical modulus");
        if (!F.contains(out.g) || !F.is_primitive(out.g))
            throw Error(ErrorKind::InvalidInput, "generator_index is not a primitive element");
        return out;
    }

    inline json cyc_json(CycInt const& z)
    {
        json coeffs = json::array();
        for (auto const& c : z.coeffs())
            coeffs.push_back(c.str());
        return {{"order", z.order()}, {"coeffs", coeffs}};
    }

    inline json quad_json(QuadPow const& z)
    {
        return {{"u", z.u().str()}, {"v", z.v().str()}, {"D", z.D()}, {"k", z.k()}};
    }
}

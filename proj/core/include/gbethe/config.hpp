#pragma once

#include "builder.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace gbethe {

using Json = nlohmann::ordered_json;

// Model block: {"m":2,"n":1,"c":"1","L":2,"inhomogeneities":["0","1/3"],
// "twist":["1","2","3"]}. twist is optional and defaults to ones.
inline SpinChainModel<Rational> model_from_json(const Json& j)
{
    if (!j.contains("m") || !j.contains("n") || !j.contains("c") || !j.contains("L"))
        throw ContractError("model config: need m, n, c and L");
    GradingProfile<Rational> gp;
    gp.m = j.at("m").get<int>();
    gp.n = j.at("n").get<int>();
    if (gp.m < 1 || gp.n < 1)
        throw ContractError("model config: m and n must be positive");
    gp.c = parse_rational(j.at("c").get<std::string>());

    int len = j.at("L").get<int>();
    std::vector<Rational> zs;
    if (j.contains("inhomogeneities"))
        for (const auto& v : j.at("inhomogeneities"))
            zs.push_back(parse_rational(v.get<std::string>()));
    std::vector<Rational> twist;
    if (j.contains("twist"))
        for (const auto& v : j.at("twist"))
            twist.push_back(parse_rational(v.get<std::string>()));
    return SpinChainModel<Rational>(gp, len, std::move(zs), std::move(twist));
}

inline Json model_to_json(const SpinChainModel<Rational>& model)
{
    Json j;
    j["m"] = model.grading.m;
    j["n"] = model.grading.n;
    j["c"] = scalar_to_string(model.grading.c);
    j["L"] = model.length;
    Json zs = Json::array();
    for (const auto& z : model.inhomogeneities)
        zs.push_back(scalar_to_string(z));
    j["inhomogeneities"] = zs;
    Json tw = Json::array();
    for (const auto& k : model.twist)
        tw.push_back(scalar_to_string(k));
    j["twist"] = tw;
    return j;
}

inline ParamTable<Rational> table_from_json(const Json& j)
{
    ParamTable<Rational> t;
    for (const auto& level : j) {
        ParameterSet<Rational> set;
        for (const auto& v : level)
            set.push_back(parse_rational(v.get<std::string>()));
        t.push_back(std::move(set));
    }
    return t;
}

inline Json table_to_json(const ParamTable<Rational>& t)
{
    Json j = Json::array();
    for (const auto& level : t) {
        Json row = Json::array();
        for (const auto& v : level)
            row.push_back(scalar_to_string(v));
        j.push_back(row);
    }
    return j;
}

inline Json state_to_json(const GradedState<Rational>& st)
{
    Json j;
    j["width"] = st.width;
    Json terms = Json::array();
    for (const auto& [w, c] : st.terms) {
        Json rec;
        rec["sites"] = w;
        rec["coeff"] = scalar_to_string(c);
        terms.push_back(rec);
    }
    j["terms"] = terms;
    return j;
}

inline GradedState<Rational> state_from_json(const Json& j)
{
    GradedState<Rational> st(j.at("width").get<int>());
    for (const auto& rec : j.at("terms")) {
        BasisWord w = rec.at("sites").get<BasisWord>();
        st.add(w, parse_rational(rec.at("coeff").get<std::string>()));
    }
    return st;
}

} // namespace gbethe

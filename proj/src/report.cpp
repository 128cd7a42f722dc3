#include "decoy/report.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace decoy {

std::string format_real(const real& v) {
    std::ostringstream os;
    os.precision(30);
    os << v;
    return os.str();
}

real parse_real(const std::string& s) {
    try {
        return real(s);
    } catch (const std::exception&) {
        throw SchemaError("number: cannot parse '" + s + "'");
    }
}

nlohmann::json report_to_json(const BoundsReport& rep, const IntensitySet& set) {
    nlohmann::json j;
    j["intensities"] = nlohmann::json::array();
    for (const real& m : rep.mu) j["intensities"].push_back(format_real(m));
    j["y0"] = format_real(set.y0);

    nlohmann::json x;
    x["values"] = nlohmann::json::array();
    for (const real& v : rep.x.values) x["values"].push_back(format_real(v));
    j["x_config"] = x;

    nlohmann::json z;
    z["values"] = nlohmann::json::array();
    for (const real& v : rep.z.values) z["values"].push_back(format_real(v));
    z["L0"] = rep.z.L0;
    z["a0"] = format_real(rep.z.a0);
    z["branch"] = rep.z.branch == ZBranch::equality ? "equality" : "saturated";
    j["z_config"] = z;

    j["intervals"] = nlohmann::json::array();
    for (std::size_t n = 1; n <= rep.intervals.size(); ++n) {
        const Interval& iv = rep.intervals[n - 1];
        j["intervals"].push_back({{"n", n},
                                  {"lo", format_real(iv.lo)},
                                  {"hi", format_real(iv.hi)},
                                  {"exact", iv.exact}});
    }
    j["exact"] = rep.exact;
    j["feasible"] = rep.feasible;
    j["warnings"] = rep.warnings;
    j["errors"] = nlohmann::json::array();
    return j;
}

BoundsReport report_from_json(const nlohmann::json& j) {
    BoundsReport rep;
    for (const auto& m : j.at("intensities")) rep.mu.push_back(parse_real(m.get<std::string>()));
    for (const auto& v : j.at("x_config").at("values")) {
        rep.x.values.push_back(parse_real(v.get<std::string>()));
    }
    for (const auto& v : j.at("z_config").at("values")) {
        rep.z.values.push_back(parse_real(v.get<std::string>()));
    }
    rep.z.L0 = j.at("z_config").at("L0").get<unsigned>();
    rep.z.a0 = parse_real(j.at("z_config").at("a0").get<std::string>());
    rep.z.branch = j.at("z_config").at("branch").get<std::string>() == "equality"
                       ? ZBranch::equality
                       : ZBranch::saturated;
    for (const auto& iv : j.at("intervals")) {
        rep.intervals.push_back(Interval{parse_real(iv.at("lo").get<std::string>()),
                                         parse_real(iv.at("hi").get<std::string>()),
                                         iv.at("exact").get<bool>()});
    }
    rep.exact = j.at("exact").get<bool>();
    rep.feasible = j.at("feasible").get<bool>();
    for (const auto& w : j.at("warnings")) rep.warnings.push_back(w.get<std::string>());
    return rep;
}

}  // namespace decoy

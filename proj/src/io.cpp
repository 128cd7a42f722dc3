#include "decoy/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include <nlohmann/json.hpp>

#include "decoy/report.hpp"

namespace decoy {

namespace {

real json_number(const nlohmann::json& v, const std::string& field) {
    if (v.is_string()) return parse_real(v.get<std::string>());
    if (v.is_number()) {
        std::ostringstream os;
        os.precision(17);
        os << v.get<double>();
        return parse_real(os.str());
    }
    throw SchemaError("field '" + field + "': expected number or decimal string");
}

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

Dataset parse_csv(std::istream& in) {
    Dataset d;
    std::map<std::string, real> keys;
    std::vector<real> mu, Q, E;
    bool any_e = false;
    std::string line;
    unsigned lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string t = trim(line);
        if (!t.empty() && t[0] == '#') t = trim(t.substr(1));
        if (t.empty()) continue;
        auto where = [&] { return " (line " + std::to_string(lineno) + ")"; };
        if (t.find('=') != std::string::npos) {
            auto pos = t.find('=');
            std::string k = trim(t.substr(0, pos));
            try {
                keys[k] = parse_real(trim(t.substr(pos + 1)));
            } catch (const SchemaError& e) {
                throw SchemaError(std::string(e.what()) + where());
            }
            continue;
        }
        if (t.find_first_not_of("muQE, \t") == std::string::npos &&
            t.find_first_of("0123456789") == std::string::npos) {
            continue;  // column header row
        }
        std::vector<std::string> cells;
        std::stringstream ss(t);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (cells.size() != 2 && cells.size() != 3) {
            throw SchemaError("csv: expected 2 or 3 columns" + where());
        }
        try {
            mu.push_back(parse_real(cells[0]));
            Q.push_back(parse_real(cells[1]));
            if (cells.size() == 3) {
                E.push_back(parse_real(cells[2]));
                any_e = true;
            } else if (any_e) {
                throw SchemaError("csv: inconsistent E column" + where());
            }
        } catch (const SchemaError& e) {
            std::string msg = e.what();
            if (msg.find("(line") == std::string::npos) msg += where();
            throw SchemaError(msg);
        }
    }
    d.set.mu = std::move(mu);
    d.rec.Q = std::move(Q);
    if (any_e) {
        if (E.size() != d.set.mu.size()) throw SchemaError("csv: E column incomplete");
        d.rec.E = std::move(E);
    }
    if (keys.count("y0")) d.set.y0 = keys["y0"];
    if (keys.count("A") || keys.count("B") || keys.count("eta")) {
        if (!(keys.count("A") && keys.count("B") && keys.count("eta"))) {
            throw SchemaError("csv: model requires all of A, B, eta");
        }
        d.model = ChannelParams{keys["A"], keys["B"], keys["eta"]};
    }
    if (keys.count("e_det")) d.e_det = keys["e_det"];
    if (keys.count("p_dark")) d.p_dark = keys["p_dark"];
    return d;
}

}  // namespace

Dataset dataset_from_json(const nlohmann::json& j) {
    Dataset d;
    if (!j.contains("intensities") || !j.contains("Q")) {
        throw SchemaError("json: required fields 'intensities' and 'Q'");
    }
    for (const auto& v : j.at("intensities")) d.set.mu.push_back(json_number(v, "intensities"));
    for (const auto& v : j.at("Q")) d.rec.Q.push_back(json_number(v, "Q"));
    if (j.contains("E") && !j.at("E").is_null()) {
        std::vector<real> e;
        for (const auto& v : j.at("E")) e.push_back(json_number(v, "E"));
        d.rec.E = std::move(e);
    }
    if (j.contains("y0")) d.set.y0 = json_number(j.at("y0"), "y0");
    if (j.contains("model") && !j.at("model").is_null()) {
        const auto& m = j.at("model");
        d.model = ChannelParams{json_number(m.at("A"), "model.A"), json_number(m.at("B"), "model.B"),
                                json_number(m.at("eta"), "model.eta")};
    }
    if (j.contains("e_det")) d.e_det = json_number(j.at("e_det"), "e_det");
    if (j.contains("p_dark")) d.p_dark = json_number(j.at("p_dark"), "p_dark");
    return d;
}

nlohmann::json dataset_to_json(const Dataset& d) {
    nlohmann::json j;
    j["intensities"] = nlohmann::json::array();
    for (const real& m : d.set.mu) j["intensities"].push_back(format_real(m));
    j["y0"] = format_real(d.set.y0);
    j["Q"] = nlohmann::json::array();
    for (const real& q : d.rec.Q) j["Q"].push_back(format_real(q));
    if (d.rec.E) {
        j["E"] = nlohmann::json::array();
        for (const real& e : *d.rec.E) j["E"].push_back(format_real(e));
    }
    if (d.model) {
        j["model"] = {{"A", format_real(d.model->A)},
                      {"B", format_real(d.model->B)},
                      {"eta", format_real(d.model->eta)}};
    }
    if (d.e_det) j["e_det"] = format_real(*d.e_det);
    if (d.p_dark) j["p_dark"] = format_real(*d.p_dark);
    return j;
}

std::string dataset_to_csv(const Dataset& d) {
    std::ostringstream os;
    os << "# y0=" << format_real(d.set.y0) << "\n";
    if (d.model) {
        os << "# A=" << format_real(d.model->A) << "\n";
        os << "# B=" << format_real(d.model->B) << "\n";
        os << "# eta=" << format_real(d.model->eta) << "\n";
    }
    if (d.e_det) os << "# e_det=" << format_real(*d.e_det) << "\n";
    if (d.p_dark) os << "# p_dark=" << format_real(*d.p_dark) << "\n";
    os << (d.rec.E ? "mu,Q,E\n" : "mu,Q\n");
    for (std::size_t i = 0; i < d.set.mu.size(); ++i) {
        os << format_real(d.set.mu[i]) << "," << format_real(d.rec.Q[i]);
        if (d.rec.E) os << "," << format_real((*d.rec.E)[i]);
        os << "\n";
    }
    return os.str();
}

Dataset parse_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("input: cannot open '" + path + "'");
    Dataset d;
    if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") {
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("json: " + std::string(e.what()));
        }
        d = dataset_from_json(j);
    } else {
        d = parse_csv(in);
    }
    d.set.validate();  // strictly increasing mu, y0 in range
    for (const real& q : d.rec.Q) {
        if (q < 0 || q > 1) throw ValidationError("record: Q must lie in [0,1]");
    }
    if (d.rec.E) {
        for (const real& e : *d.rec.E) {
            if (e < 0 || e > real(1) / 2) throw ValidationError("record: E must lie in [0, 0.5]");
        }
    }
    if (d.model) d.model->validate();
    return d;
}

}  // namespace decoy

#include "neumann/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace neumann {

namespace {

std::vector<double> real_array(const json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_array()) {
        throw InputError(std::string("potential JSON: missing array '") + key + "'");
    }
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
        if (!v.is_number()) throw InputError(std::string("potential JSON: non-numeric entry in '") + key + "'");
        const double x = v.get<double>();
        if (!std::isfinite(x)) throw InputError(std::string("potential JSON: non-finite entry in '") + key + "'");
        out.push_back(x);
    }
    return out;
}

json margins_object(const std::vector<std::pair<std::string, double>>& margins) {
    json m = json::object();
    for (const auto& [name, value] : margins) m[name] = value;
    return m;
}

}  // namespace

json to_json(const Potential& a) {
    const std::vector<double> nodes(a.nodes().begin(), a.nodes().end());
    const std::vector<double> values(a.values().begin(), a.values().end());
    if (a.kind() == Potential::Kind::PiecewiseConstant) {
        return {{"L", a.length()}, {"kind", "piecewise_constant"}, {"breakpoints", nodes}, {"values", values}};
    }
    return {{"L", a.length()}, {"kind", "sampled"}, {"grid", nodes}, {"values", values}, {"interpolation", "linear"}};
}

Potential potential_from_json(const json& j) {
    if (!j.is_object()) throw InputError("potential JSON must be an object");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("potential JSON: missing 'kind'");
    if (!j.contains("L") || !j.at("L").is_number()) throw InputError("potential JSON: missing numeric 'L'");
    const double L = j.at("L").get<double>();
    if (!(L > 0.0) || !std::isfinite(L)) throw InputError("potential JSON: L must be positive and finite");

    const std::string kind = j.at("kind").get<std::string>();
    std::vector<double> nodes;
    if (kind == "piecewise_constant") {
        nodes = real_array(j, "breakpoints");
    } else if (kind == "sampled") {
        if (j.contains("interpolation") && j.at("interpolation") != "linear") {
            throw InputError("potential JSON: only linear interpolation is supported");
        }
        nodes = real_array(j, "grid");
    } else {
        throw InputError("potential JSON: unknown kind '" + kind + "'");
    }
    if (nodes.empty() || std::abs(nodes.back() - L) > 1e-12 * L) {
        throw InputError("potential JSON: last node must equal L");
    }
    nodes.back() = L;
    auto values = real_array(j, "values");
    try {
        return kind == "piecewise_constant" ? Potential::piecewise_constant(std::move(nodes), std::move(values))
                                            : Potential::sampled(std::move(nodes), std::move(values));
    } catch (const std::exception& e) {
        throw InputError(std::string("potential JSON: ") + e.what());
    }
}

json read_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError("malformed JSON in " + path.string() + ": " + e.what());
    }
}

Potential load_potential(const std::filesystem::path& path) { return potential_from_json(read_json(path)); }

Partition partition_from_json(const json& j) {
    const json& arr = j.is_object() && j.contains("points") ? j.at("points") : j;
    if (!arr.is_array()) throw InputError("partition must be an array of points");
    std::vector<double> pts;
    for (const auto& v : arr) {
        if (!v.is_number()) throw InputError("partition entries must be numbers");
        pts.push_back(v.get<double>());
    }
    try {
        return Partition(std::move(pts));
    } catch (const std::exception& e) {
        throw InputError(std::string("partition: ") + e.what());
    }
}

json to_json(const Certificate& c) {
    json out;
    out["verdict"] = to_string(c.verdict);
    out["method"] = to_string(c.method);
    out["n"] = c.n;
    if (c.partition) {
        out["partition"] = std::vector<double>(c.partition->points().begin(), c.partition->points().end());
    } else {
        out["partition"] = nullptr;
    }
    out["margins"] = margins_object(c.margins);
    out["tolerances"] = {{"ae", c.tolerances.ae},
                         {"strict", c.tolerances.strict},
                         {"mass_per_length", c.tolerances.mass_per_length},
                         {"margin_rel", c.tolerances.margin_rel},
                         {"residual", c.tolerances.residual}};
    out["assumptions"] = c.assumptions;
    out["attempted"] = c.attempted;
    if (c.witness) {
        out["witness"] = {{"neumann_residual", c.witness_residual}, {"nodes", c.witness->nodes().size()}};
    } else {
        out["witness"] = nullptr;
    }
    return out;
}

json to_json(const Trajectory& t) {
    json arr = json::array();
    for (std::size_t i = 0; i < t.nodes().size(); ++i) {
        arr.push_back({{"x", t.nodes()[i]}, {"u", t.u()[i]}, {"du", t.du()[i]}, {"theta", t.theta()[i]}});
    }
    return arr;
}

json to_json(const ClosedFormSolution& s) {
    json pieces = json::array();
    for (const auto& p : s.pieces()) {
        pieces.push_back({{"lo", p.lo}, {"hi", p.hi}, {"formula", p.formula}, {"params", margins_object(p.params)}});
    }
    return {{"name", s.name()}, {"breakpoints", s.breakpoints()}, {"pieces", pieces}};
}

json to_json(const ZeroDistributionReport& r) {
    json checks = json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}, {"slack", c.slack}});
    return {{"pass", r.all_pass()},
            {"m", r.profile.m},
            {"zeros", r.profile.zeros},
            {"dprime_zeros", r.profile.dprime_zeros},
            {"checks", checks}};
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path.string());
    out << text;
}

}  // namespace neumann

#include "hyperb/serialize.hpp"

namespace hyperb {

using nlohmann::json;

json measure_to_json(const Measure& m) {
    json out = json::object();
    for (auto& [v, q] : m) out[std::to_string(v)] = fraction_string(q);
    return out;
}

Measure measure_from_json(const json& j) {
    Measure m;
    for (auto& [k, v] : j.items()) m[std::stoi(k)] = parse_fraction(v.get<std::string>());
    return m;
}

json chain_to_json(const RipsComplex& rips, const Chain& f) {
    json out = json::array();
    for (auto& [idx, q] : f.coef) {
        json e;
        e["simplex"] = rips.simplex(f.p, idx);
        e["coeff"] = fraction_string(q);
        out.push_back(std::move(e));
    }
    return out;
}

Chain chain_from_json(const RipsComplex& rips, const json& j) {
    Chain f;
    bool first = true;
    for (auto& e : j) {
        Simplex s = e.at("simplex").get<std::vector<Vertex>>();
        if (first) {
            f.p = static_cast<int>(s.size());
            first = false;
        }
        int idx = rips.index_of(static_cast<int>(s.size()), s);
        if (idx < 0) throw std::invalid_argument("chain entry is not a simplex of the complex");
        f.add(idx, parse_fraction(e.at("coeff").get<std::string>()));
    }
    return f;
}

json operator_to_json(const GradedOp& op) {
    json out;
    out["shift"] = op.shift;
    json blocks = json::array();
    for (size_t p = 0; p < op.block.size(); ++p) {
        json b;
        b["degree"] = p;
        b["rows"] = op.block[p].rows;
        b["cols"] = op.block[p].cols;
        json entries = json::array();
        for (int j = 0; j < op.block[p].cols; ++j)
            for (auto& [i, q] : op.block[p].col[j])
                entries.push_back({i, j, fraction_string(q)});
        b["entries"] = std::move(entries);
        blocks.push_back(std::move(b));
    }
    out["blocks"] = std::move(blocks);
    return out;
}

}  // namespace hyperb

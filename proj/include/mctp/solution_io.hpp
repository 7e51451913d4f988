#pragma once

#include "instance_io.hpp"
#include "model.hpp"

#include <unordered_map>

namespace mctp {

    // Solution document with node ids as labelled in the instance file.
    inline nlohmann::json solution_to_json(const Solution &sol, const Instance &inst, const std::string &heuristic = {}) {
        nlohmann::json routes = nlohmann::json::array();
        for (const auto &r : sol.routes) {
            nlohmann::json seq = nlohmann::json::array();
            for (NodeId i : r.seq) seq.push_back(inst.label(i));
            routes.push_back(std::move(seq));
        }
        nlohmann::json doc{{"routes", std::move(routes)}, {"total_length", sol.total_length}};
        if (!heuristic.empty()) doc["heuristic"] = heuristic;
        return doc;
    }

    inline nlohmann::json report_to_json(const FeasibilityReport &report) {
        nlohmann::json out = nlohmann::json::array();
        for (const auto &v : report.violations) out.push_back({{"constraint", v.constraint}, {"detail", v.detail}});
        return out;
    }

    // Maps labelled routes back onto `inst`. The cached length is recomputed.
    inline Solution solution_from_json(const nlohmann::json &doc, const Instance &inst) {
        std::unordered_map<int, NodeId> by_label;
        for (NodeId i = 0; i < inst.num_nodes(); ++i) by_label.emplace(inst.label(i), i);
        try {
            std::vector<Route> routes;
            for (const auto &seq : doc.at("routes")) {
                Route r;
                for (const auto &id : seq) {
                    const auto it = by_label.find(id.get<int>());
                    if (it == by_label.end()) throw StructuralError("route names unknown node " + id.dump());
                    r.seq.push_back(it->second);
                }
                routes.push_back(std::move(r));
            }
            return make_solution(std::move(routes), inst);
        } catch (const nlohmann::json::exception &e) {
            throw StructuralError(std::string("malformed solution file: ") + e.what());
        }
    }

    inline Solution load_solution(const std::filesystem::path &path, const Instance &inst) {
        std::ifstream in(path);
        if (!in) throw std::runtime_error("cannot open " + path.string());
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::exception &e) {
            throw StructuralError(std::string("malformed solution file: ") + e.what());
        }
        return solution_from_json(doc, inst);
    }

}  // namespace mctp

#pragma once

#include "instance.hpp"

#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

namespace mctp {

    namespace detail {

        inline const char *role_name(const Instance &inst, NodeId i) {
            if (i == base_node) return "base";
            if (inst.is_t(i)) return "T";
            if (inst.is_v(i)) return "V";
            return "W";
        }

    }  // namespace detail

    // Instance document: {"nodes": [{id, x, y, role}], "m", "r", "c"?}. Distances are not stored.
    inline nlohmann::json instance_to_json(const Instance &inst) {
        nlohmann::json nodes = nlohmann::json::array();
        for (NodeId i = 0; i < inst.num_nodes(); ++i) {
            nodes.push_back({{"id", inst.label(i)},
                             {"x", inst.point(i).x},
                             {"y", inst.point(i).y},
                             {"role", detail::role_name(inst, i)}});
        }
        return {{"nodes", std::move(nodes)}, {"m", inst.m()}, {"r", inst.r()}, {"c", inst.c()}};
    }

    /// Parses an instance document.
    ///
    /// The base is placed first, followed by the remaining T and V nodes in file order,
    /// then the W nodes in file order. When `c` is absent it is computed with select_c
    /// (or set to 0 if there is no W node).
    inline Instance instance_from_json(const nlohmann::json &doc) {
        try {
            if (!doc.is_object() || !doc.contains("nodes") || !doc.at("nodes").is_array()) {
                throw InvalidInstance("instance file needs a 'nodes' array");
            }
            struct Raw {
                int id;
                Point p;
                std::string role;
            };
            std::optional<Raw> base;
            std::vector<Raw> v_side;
            std::vector<Raw> w_side;
            for (const auto &node : doc.at("nodes")) {
                Raw raw{node.at("id").get<int>(), {node.at("x").get<double>(), node.at("y").get<double>()},
                        node.at("role").get<std::string>()};
                if (raw.role == "base") {
                    if (base) throw InvalidInstance("duplicate base node");
                    if (raw.id != 0) throw InvalidInstance("the base node must have id 0");
                    base = raw;
                } else if (raw.role == "T" || raw.role == "V") {
                    if (raw.id == 0) throw InvalidInstance("node 0 must have role 'base'");
                    v_side.push_back(raw);
                } else if (raw.role == "W") {
                    if (raw.id == 0) throw InvalidInstance("node 0 must have role 'base'");
                    w_side.push_back(raw);
                } else {
                    throw InvalidInstance("unknown role '" + raw.role + "'");
                }
            }
            if (!base) throw InvalidInstance("instance has no base node (role 'base', id 0)");

            std::vector<Point> coords{base->p};
            std::vector<int> ids{0};
            std::vector<char> in_t{1};
            for (const auto &raw : v_side) {
                coords.push_back(raw.p);
                ids.push_back(raw.id);
                in_t.push_back(raw.role == "T" ? 1 : 0);
            }
            for (const auto &raw : w_side) {
                coords.push_back(raw.p);
                ids.push_back(raw.id);
            }
            const int num_v = static_cast<int>(in_t.size());
            const int m = doc.at("m").get<int>();
            const int r = doc.at("r").get<int>();
            double c = 0.0;
            if (doc.contains("c") && !doc.at("c").is_null()) {
                c = doc.at("c").get<double>();
            } else if (!w_side.empty()) {
                c = select_c(coords, num_v, in_t);
            }
            return Instance(std::move(coords), num_v, std::move(in_t), m, c, r, std::move(ids));
        } catch (const nlohmann::json::exception &e) {
            throw InvalidInstance(std::string("malformed instance document: ") + e.what());
        }
    }

    inline Instance load_instance(const std::filesystem::path &path) {
        std::ifstream in(path);
        if (!in) throw InvalidInstance("cannot open instance file " + path.string());
        nlohmann::json doc;
        try {
            in >> doc;
        } catch (const nlohmann::json::parse_error &e) {
            throw InvalidInstance("instance file " + path.string() + " is not valid JSON: " + e.what());
        }
        return instance_from_json(doc);
    }

    inline void save_instance(const Instance &inst, const std::filesystem::path &path) {
        std::ofstream out(path);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << instance_to_json(inst).dump(1) << '\n';
    }

}  // namespace mctp

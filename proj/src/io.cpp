#include "rearrange/io.hpp"

#include <fstream>

namespace rearrange {

using nlohmann::json;

namespace {

json pose_to_json(const Pose &p) { return json::array({p.x, p.y, p.theta}); }

Pose pose_from_json(const json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 3 || !j[0].is_number() || !j[1].is_number() || !j[2].is_number())
        throw SchemaError(where + ": pose must be [x, y, theta]");
    return Pose(j[0].get<double>(), j[1].get<double>(), j[2].get<double>());
}

json arrangement_to_json(const Arrangement &arr) {
    json out = json::object();
    for (std::size_t i = 0; i < arr.size(); ++i)
        out[std::to_string(i)] = pose_to_json(arr[i]);
    return out;
}

Arrangement arrangement_from_json(const json &j, std::size_t n, const std::string &name) {
    if (!j.is_object())
        throw SchemaError(name + " must be an object keyed by id");
    if (j.size() != n)
        throw SchemaError(name + " must list exactly " + std::to_string(n) + " poses");
    Arrangement arr(n);
    for (std::size_t i = 0; i < n; ++i) {
        const auto key = std::to_string(i);
        if (!j.contains(key))
            throw SchemaError(name + " is missing object " + key);
        arr[i] = pose_from_json(j.at(key), name + "." + key);
    }
    return arr;
}

const json &field(const json &j, const char *key, const std::string &where) {
    if (!j.is_object() || !j.contains(key))
        throw SchemaError(where + ": missing '" + key + "'");
    return j.at(key);
}

double number(const json &j, const char *key, const std::string &where) {
    const json &v = field(j, key, where);
    if (!v.is_number())
        throw SchemaError(where + "." + key + " must be a number");
    return v.get<double>();
}

} // namespace

json instance_to_json(const Instance &inst) {
    json objects = json::array();
    for (const auto &o : inst.objects) {
        json shape;
        if (o.shape.is_disc())
            shape = {{"type", "disc"}, {"radius", o.shape.as_disc().radius}};
        else
            shape = {{"type", "rect"}, {"width", o.shape.as_rect().width}, {"height", o.shape.as_rect().height}};
        objects.push_back({{"id", o.id}, {"shape", shape}});
    }
    return {{"workspace", {{"width", inst.workspace.width}, {"height", inst.workspace.height}}},
            {"objects", objects},
            {"start", arrangement_to_json(inst.start)},
            {"goal", arrangement_to_json(inst.goal)}};
}

Instance instance_from_json(const json &j) {
    Instance inst;
    const json &ws = field(j, "workspace", "instance");
    inst.workspace = {number(ws, "width", "workspace"), number(ws, "height", "workspace")};
    if (!(inst.workspace.width > 0.0 && inst.workspace.height > 0.0))
        throw SchemaError("workspace dimensions must be positive");

    const json &objects = field(j, "objects", "instance");
    if (!objects.is_array())
        throw SchemaError("objects must be an array");
    inst.objects.resize(objects.size(), ObjectSpec{0, Shape::disc(1.0)});
    std::vector<bool> seen(objects.size(), false);
    for (const json &o : objects) {
        const json &idj = field(o, "id", "object");
        if (!idj.is_number_integer())
            throw SchemaError("object id must be an integer");
        const auto id = idj.get<long long>();
        if (id < 0 || static_cast<std::size_t>(id) >= objects.size() || seen[static_cast<std::size_t>(id)])
            throw SchemaError("object ids must be unique and contiguous from 0");
        seen[static_cast<std::size_t>(id)] = true;
        const json &s = field(o, "shape", "object");
        const json &type = field(s, "type", "shape");
        try {
            if (type == "disc") {
                inst.objects[static_cast<std::size_t>(id)] = {static_cast<ObjectId>(id),
                                                              Shape::disc(number(s, "radius", "shape"))};
            } else if (type == "rect") {
                inst.objects[static_cast<std::size_t>(id)] = {
                    static_cast<ObjectId>(id), Shape::rect(number(s, "width", "shape"), number(s, "height", "shape"))};
            } else {
                throw SchemaError("shape type must be 'disc' or 'rect'");
            }
        } catch (const InvalidShape &e) {
            throw SchemaError(e.what());
        }
    }
    inst.start = arrangement_from_json(field(j, "start", "instance"), objects.size(), "start");
    inst.goal = arrangement_from_json(field(j, "goal", "instance"), objects.size(), "goal");
    return inst;
}

json plan_to_json(const Plan &plan, const PlanStats &stats) {
    json actions = json::array();
    for (const Action &a : plan)
        actions.push_back({{"object", a.object}, {"target", pose_to_json(a.target)}, {"kind", to_string(a.kind)}});
    return {{"actions", actions},
            {"stats", {{"actions", stats.actions}, {"time_s", stats.time_s}, {"collision_checks", stats.collision_checks}}}};
}

Plan plan_from_json(const json &j, PlanStats *stats) {
    const json &actions = field(j, "actions", "plan");
    if (!actions.is_array())
        throw SchemaError("actions must be an array");
    Plan plan;
    for (const json &a : actions) {
        const json &obj = field(a, "object", "action");
        const json &kind = field(a, "kind", "action");
        if (!obj.is_number_integer() || !kind.is_string())
            throw SchemaError("action needs integer 'object' and string 'kind'");
        try {
            plan.push_back({obj.get<ObjectId>(), pose_from_json(field(a, "target", "action"), "action.target"),
                            action_kind_from_string(kind.get<std::string>())});
        } catch (const std::invalid_argument &e) {
            throw SchemaError(e.what());
        }
    }
    if (stats && j.contains("stats")) {
        const json &s = j.at("stats");
        stats->actions = s.value("actions", plan.size());
        stats->time_s = s.value("time_s", 0.0);
        stats->collision_checks = s.value("collision_checks", std::uint64_t{0});
    }
    return plan;
}

json read_json_file(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error &e) {
        throw SchemaError(path.string() + ": " + e.what());
    }
}

void write_json_file(const std::filesystem::path &path, const json &j) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

Instance load_instance(const std::filesystem::path &path) { return instance_from_json(read_json_file(path)); }

void save_instance(const std::filesystem::path &path, const Instance &inst) {
    write_json_file(path, instance_to_json(inst));
}

} // namespace rearrange

#include "gridsched/dsm_json.hpp"

#include <set>

#include "json.hpp"

namespace gridsched {

namespace {

using nlohmann::json;

void reject_unknown_fields(const json& obj, const std::set<std::string>& allowed,
                           const std::string& where) {
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (!allowed.contains(key))
            throw ParseError("unknown field \"" + key + "\" in " + where);
    }
}

}  // namespace

std::string dsm_instance_to_json(const DsmInstance& instance, int indent) {
    json doc;
    doc["horizon"] = instance.horizon;
    doc["slot_hours"] = instance.tariff.slot_hours;
    doc["prices"] = instance.tariff.prices;
    doc["capacity"] = instance.capacity;
    json apps = json::array();
    for (const Appliance& a : instance.appliances) {
        json app;
        app["id"] = a.id;
        app["category"] = to_string(a.category);
        app["power_kw"] = a.power_kw;
        app["duration"] = a.duration;
        app["preferred_start"] = a.preferred_start;
        app["window"] = json::array({a.window.lo, a.window.hi});
        apps.push_back(std::move(app));
    }
    doc["appliances"] = std::move(apps);
    return doc.dump(indent) + "\n";
}

DsmInstance dsm_instance_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
    try {
        if (!doc.is_object()) throw ParseError("instance document must be a JSON object");
        reject_unknown_fields(
            doc, {"horizon", "slot_hours", "prices", "capacity", "appliances"},
            "instance");
        DsmInstance instance;
        instance.horizon = doc.at("horizon").get<int>();
        instance.tariff.slot_hours = doc.at("slot_hours").get<double>();
        instance.tariff.prices = doc.at("prices").get<std::vector<double>>();
        instance.capacity = doc.at("capacity").get<std::vector<double>>();
        for (const json& app : doc.at("appliances")) {
            reject_unknown_fields(app,
                                  {"id", "category", "power_kw", "duration",
                                   "preferred_start", "window"},
                                  "appliance");
            Appliance a;
            a.id = app.at("id").get<std::string>();
            a.category = appliance_category_from_string(app.at("category").get<std::string>());
            a.power_kw = app.at("power_kw").get<double>();
            a.duration = app.at("duration").get<int>();
            a.preferred_start = app.at("preferred_start").get<int>();
            const auto window = app.at("window");
            if (!window.is_array() || window.size() != 2)
                throw ParseError("appliance window must be [lo, hi]");
            a.window.lo = window.at(0).get<int>();
            a.window.hi = window.at(1).get<int>();
            instance.appliances.push_back(std::move(a));
        }
        instance.validate();
        return instance;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed instance document: ") + e.what());
    }
}

}  // namespace gridsched

#include "osl/model_json.hpp"

#include "osl/errors.hpp"

namespace osl {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<double> tail_of(const json& j) {
    return j.contains("fixed_tail") ? j.at("fixed_tail").get<std::vector<double>>() : std::vector<double>{};
}

}  // namespace

void to_json(json& j, const SupportSpec& s) {
    std::visit(Overloaded{
                   [&](const Box& b) { j = {{"type", "box"}, {"lo", b.lo}, {"hi", b.hi}}; },
                   [&](const Annulus& a) {
                       j = {{"type", "annulus"}, {"center", a.center}, {"inner", a.inner}, {"outer", a.outer}};
                   },
                   [&](const SineSegment& c) {
                       j = {{"type", "sine"},
                            {"t_min", c.t_min},
                            {"t_max", c.t_max},
                            {"amplitude", c.amplitude},
                            {"thickness", c.thickness}};
                   },
                   [&](const PointMass& p) { j = {{"type", "point"}, {"location", p.location}}; },
                   [&](const Interval& iv) { j = {{"type", "interval"}, {"lo", iv.lo}, {"hi", iv.hi}}; },
               },
               s.shape);
    if (!s.fixed_tail.empty()) {
        j["fixed_tail"] = s.fixed_tail;
    }
}

void from_json(const json& j, SupportSpec& s) {
    const auto type = j.at("type").get<std::string>();
    if (type == "box") {
        s.shape = Box{j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>()};
    } else if (type == "annulus") {
        s.shape = Annulus{j.at("center").get<std::array<double, 2>>(), j.at("inner").get<double>(),
                          j.at("outer").get<double>()};
    } else if (type == "sine") {
        s.shape = SineSegment{j.at("t_min").get<double>(), j.at("t_max").get<double>(),
                              j.value("amplitude", 1.0), j.value("thickness", 0.0)};
    } else if (type == "point") {
        s.shape = PointMass{j.at("location").get<std::vector<double>>()};
    } else if (type == "interval") {
        s.shape = Interval{j.at("lo").get<double>(), j.at("hi").get<double>()};
    } else {
        throw InvalidInput("unknown support type '" + type + "'");
    }
    s.fixed_tail = tail_of(j);
}

void to_json(json& j, const OutlierSpec& o) {
    std::visit(Overloaded{
                   [&](const UniformBoxOutliers& b) { j = {{"type", "uniform_box"}, {"lo", b.lo}, {"hi", b.hi}}; },
                   [&](const UniformAnnulusOutliers& a) {
                       j = {{"type", "uniform_annulus"}, {"center", a.center}, {"inner", a.inner}, {"outer", a.outer}};
                   },
                   [&](const GaussianOutliers& g) {
                       j = {{"type", "gaussian"},
                            {"mean", g.mean},
                            {"var_x", g.var_x},
                            {"var_y", g.var_y},
                            {"rho", g.rho}};
                   },
               },
               o.shape);
    if (!o.fixed_tail.empty()) {
        j["fixed_tail"] = o.fixed_tail;
    }
}

void from_json(const json& j, OutlierSpec& o) {
    const auto type = j.at("type").get<std::string>();
    if (type == "uniform_box") {
        o.shape = UniformBoxOutliers{j.at("lo").get<std::vector<double>>(), j.at("hi").get<std::vector<double>>()};
    } else if (type == "uniform_annulus") {
        o.shape = UniformAnnulusOutliers{j.at("center").get<std::array<double, 2>>(), j.at("inner").get<double>(),
                                         j.at("outer").get<double>()};
    } else if (type == "gaussian") {
        o.shape = GaussianOutliers{j.at("mean").get<std::array<double, 2>>(), j.at("var_x").get<double>(),
                                   j.at("var_y").get<double>(), j.value("rho", 0.0)};
    } else {
        throw InvalidInput("unknown outlier type '" + type + "'");
    }
    o.fixed_tail = tail_of(j);
}

void to_json(json& j, const MixtureModel& m) {
    j = {{"name", m.name},       {"epsilon", m.epsilon},         {"weights", m.weights},
         {"delta", m.delta},     {"ambient_dim", m.ambient_dim}, {"supports", m.supports},
         {"outliers", m.outliers}};
}

void from_json(const json& j, MixtureModel& m) {
    m.name = j.value("name", std::string{"custom"});
    m.epsilon = j.value("epsilon", 0.0);
    m.weights = j.at("weights").get<std::vector<double>>();
    m.delta = j.value("delta", 0.0);
    m.ambient_dim = j.at("ambient_dim").get<std::size_t>();
    m.supports = j.at("supports").get<std::vector<SupportSpec>>();
    m.outliers = j.at("outliers").get<OutlierSpec>();
}

MixtureModel model_from_json(const json& j) {
    MixtureModel m;
    try {
        m = j.get<MixtureModel>();
    } catch (const json::exception& e) {
        throw InvalidInput(std::string{"malformed model document: "} + e.what());
    }
    validate(m);
    return m;
}

}  // namespace osl

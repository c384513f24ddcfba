#include "boundarylab/io.hpp"

#include <fstream>

namespace bl {

json to_json(cplx z) { return json::array({z.real(), z.imag()}); }

cplx cplx_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2)
        throw std::invalid_argument("expected [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

json to_json(const MoebiusMap& m) {
    return json::array({to_json(m.a), to_json(m.b), to_json(m.c), to_json(m.d)});
}

MoebiusMap moebius_from_json(const json& j) {
    if (!j.is_array() || j.size() != 4)
        throw std::invalid_argument("matrix: expected four [re, im] entries");
    return MoebiusMap(cplx_from_json(j[0]), cplx_from_json(j[1]), cplx_from_json(j[2]),
                      cplx_from_json(j[3]));
}

json to_json(const Arc& a) { return json::array({a.lo, a.hi()}); }

Arc arc_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) throw std::invalid_argument("arc: expected [a, b]");
    return Arc::from_endpoints_ccw(j[0].get<double>(), j[1].get<double>());
}

json to_json(const Geodesic& g) {
    json j;
    j["endpoints"] = json::array({g.e1.theta, g.e2.theta});
    if (g.is_diameter()) {
        j["kind"] = "diameter";
        j["direction"] = std::get<Geodesic::Diameter>(g.rep).direction;
    } else {
        const auto& oc = std::get<Geodesic::Orthocircle>(g.rep);
        j["kind"] = "orthocircle";
        j["center"] = to_json(oc.center);
        j["radius"] = oc.radius;
    }
    return j;
}

json to_json(const Crosscut& c) {
    json j;
    if (c.degenerate()) {
        j["kind"] = "horocycle";
        j["base"] = c.e1.theta;
        j["R"] = c.horo_R;
    } else {
        j["kind"] = "geodesic";
        j["endpoints"] = json::array({c.e1.theta, c.e2.theta});
    }
    return j;
}

json to_json(const GeneratorSpec& g) {
    json j;
    j["matrix"] = to_json(g.map.map);
    j["level"] = g.level;
    j["source_arc"] = to_json(g.source_arc);
    j["target_arc"] = to_json(g.target_arc);
    j["kind"] = g.kind == MapClass::Parabolic ? "parabolic" : "hyperbolic";
    return j;
}

json to_json(const SchottkySystem& sys) {
    json j;
    j["basepoint"] = to_json(sys.basepoint);
    if (!sys.name.empty()) j["name"] = sys.name;
    j["generators"] = json::array();
    for (const auto& g : sys.gens) j["generators"].push_back(to_json(g));
    return j;
}

SchottkySystem system_from_json(const json& j) {
    SchottkySystem sys;
    if (j.contains("basepoint")) sys.basepoint = cplx_from_json(j["basepoint"]);
    if (j.contains("name")) sys.name = j["name"].get<std::string>();
    if (!j.contains("generators") || !j["generators"].is_array())
        throw std::invalid_argument("schottky system: missing generators array");
    for (const auto& je : j["generators"]) {
        GeneratorSpec g;
        g.map = DiskAutomorphism(moebius_from_json(je.at("matrix")));
        g.level = je.value("level", 1);
        const std::string kind = je.value("kind", "hyperbolic");
        g.kind = kind == "parabolic" ? MapClass::Parabolic : MapClass::Hyperbolic;
        if (je.contains("source_arc") && je.contains("target_arc")) {
            g.source_arc = arc_from_json(je["source_arc"]);
            g.target_arc = arc_from_json(je["target_arc"]);
        } else {
            auto [s, t] = ford_arcs(g.map);
            g.source_arc = s;
            g.target_arc = t;
        }
        sys.gens.push_back(g);
    }
    // Branch metadata is not serialized; rebuild root classes.
    const GapClasses gc = gap_classes(sys);
    for (const auto& c : gc.classes) {
        BranchNode node;
        node.territory = c.span;
        node.terminal = true;
        sys.nodes.push_back(node);
    }
    return sys;
}

DomainSpec domain_spec_from_json(const json& j) {
    DomainSpec spec;
    const std::string d = j.at("domain").get<std::string>();
    if (d == "annulus") {
        spec.kind = DomainSpec::Kind::Annulus;
        spec.R = j.at("R").get<double>();
    } else if (d == "punctured_disk") {
        spec.kind = DomainSpec::Kind::PuncturedDisk;
    } else if (d == "schottky") {
        spec.kind = DomainSpec::Kind::Schottky;
        if (j.contains("file")) spec.file = j["file"].get<std::string>();
        if (j.contains("name")) spec.name = j["name"].get<std::string>();
    } else if (d == "example") {
        spec.kind = DomainSpec::Kind::Example;
        spec.name = j.at("name").get<std::string>();
    } else {
        throw std::invalid_argument("domain spec: unknown domain '" + d + "'");
    }
    return spec;
}

SchottkySystem load_system(const std::string& name_or_path) {
    if (auto sys = named_system(name_or_path)) return *sys;
    std::ifstream in(name_or_path);
    if (!in) throw std::invalid_argument("cannot open system file: " + name_or_path);
    json j = json::parse(in);
    if (j.contains("domain")) {
        const DomainSpec spec = domain_spec_from_json(j);
        switch (spec.kind) {
            case DomainSpec::Kind::Annulus: return cyclic_system(spec.R);
            case DomainSpec::Kind::PuncturedDisk: return punctured_cyclic_system();
            case DomainSpec::Kind::Schottky:
                if (!spec.name.empty()) {
                    if (auto sys = named_system(spec.name)) return *sys;
                    throw std::invalid_argument("unknown system name: " + spec.name);
                }
                return load_system(spec.file);
            case DomainSpec::Kind::Example:
                if (auto sys = named_system(spec.name)) return *sys;
                throw std::invalid_argument("example '" + spec.name +
                                            "' has no schottky system");
        }
    }
    return system_from_json(j);
}

json report_json(const CodingStream& cs) {
    json j;
    j["itinerary"] = json::array();
    for (const Letter& l : cs.itinerary)
        j["itinerary"].push_back(json::array({l.gen, l.exp}));
    j["finite"] = cs.finite();
    if (cs.terminal_gap) j["terminal_gap"] = *cs.terminal_gap;
    if (cs.cycle_start) {
        j["cycle_start"] = *cs.cycle_start;
        j["cycle_period"] = cs.cycle_period;
    }
    j["horizon"] = cs.horizon;
    return j;
}

json report_json(const DepthSequence& d) {
    json j;
    j["entries"] = d.entries;
    j["terminated"] = d.terminated;
    if (d.terminal_gap) j["terminal_gap"] = *d.terminal_gap;
    j["horizon"] = d.horizon;
    return j;
}

json report_json(const Impression& imp) {
    json j;
    j["kind"] = to_string(imp.kind);
    switch (imp.carrier.carrier) {
        case AlphaImage::Carrier::Point:
            j["carrier"] = {{"point", imp.carrier.arc.lo}};
            break;
        case AlphaImage::Carrier::OpenArc:
            j["carrier"] = {{"open_arc", to_json(imp.carrier.arc)}};
            break;
        case AlphaImage::Carrier::ClosedArc:
            j["carrier"] = {{"closed_arc", to_json(imp.carrier.arc)}};
            break;
    }
    if (imp.gap_class >= 0) j["component_class"] = imp.gap_class;
    if (!imp.address.digits.empty()) j["address"] = imp.address.digits;
    return j;
}

}  // namespace bl

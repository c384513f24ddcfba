#pragma once

#include <json.hpp>

#include "boundarylab/exhaustion.hpp"
#include "boundarylab/primeends.hpp"
#include "boundarylab/systems.hpp"

namespace bl {

using json = nlohmann::ordered_json;

json to_json(cplx z);
cplx cplx_from_json(const json& j);

json to_json(const MoebiusMap& m);
MoebiusMap moebius_from_json(const json& j);

json to_json(const Arc& a);
Arc arc_from_json(const json& j);

json to_json(const Geodesic& g);
json to_json(const Crosscut& c);

json to_json(const GeneratorSpec& g);
json to_json(const SchottkySystem& sys);
SchottkySystem system_from_json(const json& j);

// Domain specification document:
//   {"domain":"annulus","R":2.0}
//   {"domain":"punctured_disk"}
//   {"domain":"schottky","file":"sys.json"}    (or "name":"cyclic", ...)
//   {"domain":"example","name":"reef_point"}
struct DomainSpec {
    enum class Kind { Annulus, PuncturedDisk, Schottky, Example };
    Kind kind = Kind::Annulus;
    double R = 2.0;
    std::string name;  // builtin system or example name
    std::string file;  // schottky file path
};

DomainSpec domain_spec_from_json(const json& j);

// Resolve a --system argument: builtin fixture name, or a JSON file holding
// either a SchottkySystem or a DomainSpec selecting one.
SchottkySystem load_system(const std::string& name_or_path);

json report_json(const CodingStream& cs);
json report_json(const DepthSequence& d);
json report_json(const Impression& imp);

}  // namespace bl

#pragma once

#include "tropcalc/affine_map.hpp"
#include "tropcalc/deltaform.hpp"
#include "tropcalc/polyhedron.hpp"
#include "tropcalc/superform.hpp"

#include <json.hpp>

#include <map>
#include <string>
#include <variant>

namespace tc::io {

using Json = nlohmann::json;  // object keys sorted

Json to_json(const Polyhedron& P);
Json to_json(const Superform& a);
Json to_json(const DeltaForm& a);
Json to_json(const PSForm& w);
Json to_json(const AffineMap& F);

Polyhedron polyhedron_from_json(const Json& j);
Superform superform_from_json(const Json& j);
DeltaForm deltaform_from_json(const Json& j);
PSForm psform_from_json(const Json& j);
AffineMap affine_map_from_json(const Json& j);

using Object = std::variant<Polyhedron, Superform, DeltaForm, PSForm, AffineMap>;
const char* kind_name(const Object& o);
Json to_json(const Object& o);
// Kind inferred from the keys present.
Object object_from_json(const Json& j);
// Semantic equality (DeltaForm via equal()).
bool same(const Object& a, const Object& b);

struct Document {
    std::string version = "1";
    std::map<std::string, Object> objects;

    const Object& at(const std::string& name) const;
};

Json to_json(const Document& d);
Document document_from_json(const Json& j);
std::string serialize(const Document& d);
Document parse_document(const std::string& text);
Document load_document(const std::string& path);

}  // namespace tc::io

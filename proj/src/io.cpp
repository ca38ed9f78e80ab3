#include "tropcalc/io.hpp"

#include "tropcalc/errors.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace tc::io {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(ErrorKind::Parse, msg); }

Json int_json(const Int& x) {
    if (x.fits_slong_p()) return Json(x.get_si());
    return Json(x.get_str());
}

Json rat_json(const Rat& x) { return Json(fmt(x)); }

Rat rat_from(const Json& j) {
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_integer()) return Rat(Int(j.dump()));
    bad("expected a rational string, got " + j.dump());
}

Int int_from(const Json& j) {
    Rat x = rat_from(j);
    if (x.get_den() != 1) bad("expected an integer, got " + j.dump());
    return x.get_num();
}

int small_int(const Json& j, const char* what) {
    if (!j.is_number_integer()) bad(std::string(what) + " must be an integer");
    long v = j.get<long>();
    if (v < 0 || v > 64) bad(std::string(what) + " out of range");
    return int(v);
}

const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
    return j.at(key);
}

const Json& array_field(const Json& j, const char* key) {
    const Json& a = field(j, key);
    if (!a.is_array()) bad(std::string("field '") + key + "' must be an array");
    return a;
}

Json poly_json(const Poly& f) {
    Json out = Json::array();
    for (auto& [e, c] : f.terms()) out.push_back({{"exp", e}, {"coef", rat_json(c)}});
    return out;
}

Poly poly_from(const Json& j, int r) {
    if (!j.is_array()) bad("polynomial must be an array of monomials");
    Poly f(r);
    for (auto& m : j) {
        const Json& e = array_field(m, "exp");
        if (int(e.size()) != r) bad("exponent length differs from rank");
        Exp ex;
        for (auto& x : e) ex.push_back(small_int(x, "exponent"));
        f.add_term(ex, rat_from(field(m, "coef")));
    }
    return f;
}

std::vector<int> index_list(const Json& j, int r) {
    if (!j.is_array()) bad("index list must be an array");
    std::vector<int> out;
    for (auto& x : j) {
        int i = small_int(x, "index");
        if (i < 1 || i > r) bad("index " + std::to_string(i) + " outside 1.." + std::to_string(r));
        out.push_back(i - 1);
    }
    if (std::set<int>(out.begin(), out.end()).size() != out.size()) bad("repeated index");
    return out;
}

Json one_based(Mask m) {
    Json out = Json::array();
    for (int i : mask_indices(m)) out.push_back(i + 1);
    return out;
}

std::vector<Constraint> rows_from(const Json& j, int r) {
    if (!j.is_array()) bad("constraint list must be an array");
    std::vector<Constraint> out;
    for (auto& row : j) {
        if (!row.is_array() || int(row.size()) != r + 1) bad("constraint row needs rank + 1 entries");
        Vec a;
        for (int i = 0; i < r; ++i) a.push_back(int_from(row[i]));
        out.push_back({a, rat_from(row[r])});
    }
    return out;
}

Json rows_json(const std::vector<HalfSpace>& hs) {
    Json out = Json::array();
    for (auto& h : hs) {
        Json row = Json::array();
        for (auto& x : h.a) row.push_back(int_json(x));
        row.push_back(rat_json(h.b));
        out.push_back(row);
    }
    return out;
}

}  // namespace

Json to_json(const Polyhedron& P) {
    int r = P.ambient_rank();
    if (P.empty()) {
        Json row = Json::array();
        for (int i = 0; i < r; ++i) row.push_back(0);
        row.push_back("-1");
        return {{"rank", r}, {"ineqs", Json::array({row})}, {"eqs", Json::array()}};
    }
    return {{"rank", r}, {"ineqs", rows_json(P.facet_ineqs())}, {"eqs", rows_json(P.hull_eqs())}};
}

Polyhedron polyhedron_from_json(const Json& j) {
    int r = small_int(field(j, "rank"), "rank");
    auto ineqs = j.contains("ineqs") ? rows_from(j.at("ineqs"), r) : std::vector<Constraint>{};
    auto eqs = j.contains("eqs") ? rows_from(j.at("eqs"), r) : std::vector<Constraint>{};
    return Polyhedron::make(r, ineqs, eqs);
}

Json to_json(const Superform& a) {
    Json terms = Json::array();
    for (auto& [k, f] : a.terms()) terms.push_back({{"I", one_based(k.first)}, {"J", one_based(k.second)}, {"poly", poly_json(f)}});
    return {{"rank", a.rank()}, {"p", a.p()}, {"q", a.q()}, {"terms", terms}};
}

Superform superform_from_json(const Json& j) {
    int r = small_int(field(j, "rank"), "rank");
    int p = small_int(field(j, "p"), "p"), q = small_int(field(j, "q"), "q");
    if (p > r || q > r) bad("bidegree exceeds rank");
    Superform a(r, p, q);
    for (auto& t : array_field(j, "terms")) {
        auto I = index_list(field(t, "I"), r), J = index_list(field(t, "J"), r);
        if (int(I.size()) != p || int(J.size()) != q) bad("term bidegree differs from (p, q)");
        a += Superform::term(r, I, J, poly_from(field(t, "poly"), r));
    }
    return a;
}

Json to_json(const DeltaForm& in) {
    DeltaForm a = make_complex(in);
    std::vector<const Cell*> cs;
    for (auto& c : a.cells()) cs.push_back(&c);
    std::sort(cs.begin(), cs.end(), [](const Cell* x, const Cell* y) { return x->poly.key() < y->poly.key(); });
    Json cells = Json::array();
    for (auto* c : cs) {
        Json e = {{"poly", to_json(c->poly)}};
        auto it = c->coeff.terms().begin();
        bool constant = a.p() == 0 && a.q() == 0 && c->coeff.terms().size() == 1 && it->second.degree() == 0;
        if (constant)
            e["weight"] = rat_json(it->second.constant_term());
        else
            e["coeff"] = to_json(c->coeff);
        cells.push_back(e);
    }
    return {{"rank", a.rank()}, {"type", {a.p(), a.q(), a.l()}}, {"cells", cells}};
}

DeltaForm deltaform_from_json(const Json& j) {
    int r = small_int(field(j, "rank"), "rank");
    const Json& t = array_field(j, "type");
    if (t.size() != 3) bad("type must be [p, q, l]");
    int p = small_int(t[0], "p"), q = small_int(t[1], "q"), l = small_int(t[2], "l");
    std::vector<Cell> cells;
    for (auto& c : array_field(j, "cells")) {
        Polyhedron P = polyhedron_from_json(field(c, "poly"));
        if (c.contains("weight") == c.contains("coeff")) bad("cell needs exactly one of 'weight' and 'coeff'");
        Superform a = c.contains("weight") ? Superform::constant(r, rat_from(c.at("weight"))) : superform_from_json(c.at("coeff"));
        cells.push_back({P, a});
    }
    return DeltaForm::from_cells(r, p, q, l, cells);
}

Json to_json(const PSForm& w) {
    std::vector<const Cell*> cs;
    for (auto& c : w.pieces()) cs.push_back(&c);
    std::sort(cs.begin(), cs.end(), [](const Cell* x, const Cell* y) { return x->poly.key() < y->poly.key(); });
    Json regions = Json::array(), pieces = Json::array();
    for (auto* c : cs) {
        regions.push_back(to_json(c->poly));
        pieces.push_back(to_json(c->coeff));
    }
    return {{"rank", w.rank()}, {"type", {w.p(), w.q()}}, {"complex", regions}, {"pieces", pieces}};
}

PSForm psform_from_json(const Json& j) {
    if (j.contains("kind")) {
        std::string kind = field(j, "kind").is_string() ? j.at("kind").get<std::string>() : "";
        if (kind != "max" && kind != "min") bad("kind must be 'max' or 'min'");
        const Json& ts = array_field(j, "terms");
        if (ts.empty() || !ts[0].is_array() || ts[0].empty()) bad("a tropical polynomial needs at least one term");
        int r = int(ts[0].size()) - 1;
        std::vector<AffineForm> fs;
        for (auto& t : ts) {
            if (!t.is_array() || int(t.size()) != r + 1) bad("all terms need rank + 1 entries");
            IVec a;
            for (int i = 0; i < r; ++i) a.push_back(int_from(t[i]));
            fs.push_back({a, rat_from(t[r])});
        }
        return kind == "max" ? PSForm::max_of(r, fs) : PSForm::min_of(r, fs);
    }
    int r = small_int(field(j, "rank"), "rank");
    const Json& t = array_field(j, "type");
    if (t.size() != 2) bad("type must be [p, q]");
    const Json& regions = array_field(j, "complex");
    const Json& pieces = array_field(j, "pieces");
    if (regions.size() != pieces.size()) bad("'complex' and 'pieces' differ in length");
    std::vector<Cell> cs;
    for (size_t i = 0; i < regions.size(); ++i) cs.push_back({polyhedron_from_json(regions[i]), superform_from_json(pieces[i])});
    return PSForm::from_pieces(r, small_int(t[0], "p"), small_int(t[1], "q"), std::move(cs));
}

Json to_json(const AffineMap& F) {
    Json m = Json::array(), t = Json::array();
    for (int i = 0; i < F.target_rank(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < F.source_rank(); ++j) row.push_back(int_json(F.linear(i, j)));
        m.push_back(row);
        t.push_back(rat_json(F.translate[i]));
    }
    return {{"source_rank", F.source_rank()}, {"target_rank", F.target_rank()}, {"matrix", m}, {"translate", t}};
}

AffineMap affine_map_from_json(const Json& j) {
    int s = small_int(field(j, "source_rank"), "source_rank"), r = small_int(field(j, "target_rank"), "target_rank");
    const Json& m = array_field(j, "matrix");
    const Json& t = array_field(j, "translate");
    if (int(m.size()) != r || int(t.size()) != r) bad("matrix and translate need target_rank rows");
    IntMat M(r, s);
    Vec tr;
    for (int i = 0; i < r; ++i) {
        if (!m[i].is_array() || int(m[i].size()) != s) bad("matrix rows need source_rank entries");
        for (int k = 0; k < s; ++k) M(i, k) = int_from(m[i][k]);
        tr.push_back(rat_from(t[i]));
    }
    return AffineMap::make(M, tr);
}

const char* kind_name(const Object& o) {
    static const char* names[] = {"polyhedron", "superform", "deltaform", "psform", "affine_map"};
    return names[o.index()];
}

Json to_json(const Object& o) {
    return std::visit([](const auto& x) { return to_json(x); }, o);
}

Object object_from_json(const Json& j) {
    if (!j.is_object()) bad("object entry must be a JSON object");
    if (j.contains("cells")) return deltaform_from_json(j);
    if (j.contains("kind") || j.contains("pieces")) return psform_from_json(j);
    if (j.contains("source_rank")) return affine_map_from_json(j);
    if (j.contains("terms")) return superform_from_json(j);
    if (j.contains("ineqs") || j.contains("eqs")) return polyhedron_from_json(j);
    bad("cannot tell the object kind from its fields");
}

bool same(const Object& a, const Object& b) {
    if (a.index() != b.index()) return false;
    if (auto* x = std::get_if<DeltaForm>(&a)) {
        const auto& y = std::get<DeltaForm>(b);
        if (x->rank() != y.rank() || x->p() != y.p() || x->q() != y.q() || x->l() != y.l()) return false;
        return equal(*x, y);
    }
    if (auto* x = std::get_if<PSForm>(&a)) {
        const auto& y = std::get<PSForm>(b);
        if (x->rank() != y.rank() || x->p() != y.p() || x->q() != y.q()) return false;
        return equal(x->as_delta(), y.as_delta());
    }
    if (auto* x = std::get_if<Polyhedron>(&a)) return *x == std::get<Polyhedron>(b);
    if (auto* x = std::get_if<Superform>(&a)) return *x == std::get<Superform>(b);
    return std::get<AffineMap>(a) == std::get<AffineMap>(b);
}

const Object& Document::at(const std::string& name) const {
    auto it = objects.find(name);
    if (it == objects.end()) fail(ErrorKind::Usage, "no object named '" + name + "'");
    return it->second;
}

Json to_json(const Document& d) {
    Json objs = Json::object();
    for (auto& [name, o] : d.objects) objs[name] = to_json(o);
    return {{"version", d.version}, {"objects", objs}};
}

Document document_from_json(const Json& j) {
    Document d;
    if (!j.is_object()) bad("document must be a JSON object");
    if (j.contains("version")) {
        if (!j.at("version").is_string()) bad("version must be a string");
        d.version = j.at("version").get<std::string>();
    }
    const Json& objs = field(j, "objects");
    if (!objs.is_object()) bad("'objects' must map names to objects");
    for (auto& [name, o] : objs.items()) {
        try {
            d.objects.emplace(name, object_from_json(o));
        } catch (const Error& e) {
            fail(ErrorKind::Parse, "object '" + name + "': " + (e.kind() == ErrorKind::Parse ? e.message() : std::string(e.what())));
        }
    }
    return d;
}

std::string serialize(const Document& d) { return to_json(d).dump(2) + "\n"; }

Document parse_document(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const Json::exception& e) {
        fail(ErrorKind::Parse, e.what());
    }
    return document_from_json(j);
}

Document load_document(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::Usage, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return parse_document(ss.str());
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::Parse) throw;
        fail(ErrorKind::Parse, path + ": " + e.message());
    }
}

}  // namespace tc::io

#include "doctest.h"

#include "gen.hpp"
#include "tropcalc/cli.hpp"
#include "tropcalc/errors.hpp"
#include "tropcalc/io.hpp"
#include "tropcalc/morphisms.hpp"
#include "tropcalc/products.hpp"

#include <filesystem>
#include <sstream>

using namespace tc;

namespace {

const std::string FIXTURES = TROPCALC_FIXTURE_DIR;

std::vector<std::string> fixture_files() {
    std::vector<std::string> out;
    for (auto& e : std::filesystem::directory_iterator(FIXTURES))
        if (e.path().extension() == ".json") out.push_back(e.path().string());
    std::sort(out.begin(), out.end());
    return out;
}

io::Object round_trip(const io::Object& o) { return io::object_from_json(io::Json::parse(io::to_json(o).dump())); }

struct Run {
    int code;
    std::string out, err;
};

Run tropcalc(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

io::Document result(const Run& r) { return io::parse_document(r.out); }

}  // namespace

TEST_CASE("fixtures round-trip through serialization") {
    auto files = fixture_files();
    REQUIRE(files.size() >= 5);
    for (auto& f : files) {
        auto doc = io::load_document(f);
        std::string once = io::serialize(doc);
        auto back = io::parse_document(once);
        REQUIRE(back.objects.size() == doc.objects.size());
        for (auto& [name, o] : doc.objects) CHECK_MESSAGE(io::same(o, back.at(name)), f, " ", name);
        CHECK(io::serialize(back) == once);
    }
}

TEST_CASE("random objects round-trip") {
    std::mt19937_64 g(71);
    for (int it = 0; it < 20; ++it) {
        int r = int(gen::small(g, 1, 3));
        std::vector<io::Object> objs = {
            gen::polytope(g, r, 4),
            gen::superform(g, r, int(gen::small(g, 0, r)), int(gen::small(g, 0, r)), 3),
            gen::balanced(g, r, int(gen::small(g, 0, 1)), int(gen::small(g, 0, 1)), int(gen::small(g, 0, r)), 2),
            gen::pl_function(g, r, 3),
            dP2(gen::pl_function(g, r, 3)),
            gen::affine_map(g, r, int(gen::small(g, 1, 3))),
        };
        for (auto& o : objs) {
            auto back = round_trip(o);
            CHECK(io::same(o, back));
            CHECK(io::to_json(back).dump() == io::to_json(o).dump());
        }
    }
    CHECK(io::same(round_trip(Polyhedron::empty_set(2)), Polyhedron::empty_set(2)));
}

TEST_CASE("rationals and large integers serialize exactly") {
    Rat big(Int("123456789012345678901234567891"), Int(7));
    big.canonicalize();
    auto P = Polyhedron::make(1, {{Vec{Rat(1)}, big}, {Vec{Rat(-1)}, Rat(0)}});
    auto j = io::to_json(P);
    CHECK(j["ineqs"][1][1] == "123456789012345678901234567891/7");
    CHECK(io::same(io::polyhedron_from_json(j), P));
    AffineMap F = AffineMap::make(IntMat(1, 1), Vec{Rat(0)});
    F.linear(0, 0) = Int("99999999999999999999999");
    auto back = io::affine_map_from_json(io::to_json(F));
    CHECK(back == F);
}

TEST_CASE("malformed input is a parse error") {
    auto parse_kind = [](const std::string& text) {
        try {
            io::parse_document(text);
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::Internal;
    };
    CHECK(parse_kind("{\"objects\": {") == ErrorKind::Parse);
    CHECK(parse_kind("{\"objects\": {\"a\": {\"foo\": 1}}}") == ErrorKind::Parse);
    CHECK(parse_kind("{\"objects\": {\"a\": {\"rank\": 1, \"p\": 1, \"q\": 0, \"terms\": [{\"I\": [2], \"J\": [], \"poly\": []}]}}}") ==
          ErrorKind::Parse);
    CHECK(parse_kind("{\"objects\": {\"a\": {\"rank\": 1, \"ineqs\": [[1, \"1/0\"]]}}}") == ErrorKind::Parse);
    CHECK(parse_kind("{\"objects\": {\"a\": {\"rank\": 1, \"type\": [0, 0, 0], \"cells\": [{\"poly\": {\"rank\": 1}}]}}}") ==
          ErrorKind::Parse);
}

TEST_CASE("check-balance command") {
    auto ok = tropcalc({"check-balance", FIXTURES + "/line.json", "L"});
    CHECK(ok.code == 0);
    auto bad = tropcalc({"check-balance", FIXTURES + "/line.json", "two_rays"});
    CHECK(bad.code == 1);
    CHECK(bad.out.find("verts (0,0)") != std::string::npos);
    CHECK(tropcalc({"check-balance", FIXTURES + "/missing.json", "L"}).code == 2);
    CHECK(tropcalc({"check-balance", FIXTURES + "/line.json", "nobody"}).code == 2);
    CHECK(tropcalc({"check-balance"}).code == 2);
}

TEST_CASE("compute command") {
    auto line = FIXTURES + "/line.json";
    auto doc = io::load_document(line);
    auto c = tropcalc({"compute", line, "corner(max_x_0, fullspace)"});
    REQUIRE(c.code == 0);
    auto point = DeltaForm::weighted(1, 1, {{Polyhedron::point(Vec{Rat(0)}), Rat(1)}});
    CHECK(io::same(result(c).at("result"), point));
    auto w = tropcalc({"compute", line, "wedge(L, L)"});
    REQUIRE(w.code == 0);
    CHECK(io::same(result(w).at("result"), DeltaForm::weighted(2, 2, {{Polyhedron::point(Vec{Rat(0), Rat(0)}), Rat(1)}})));
    auto p = tropcalc({"compute", line, "pull(idmap, L)"});
    REQUIRE(p.code == 0);
    CHECK(io::same(result(p).at("result"), doc.at("L")));
    auto nested = tropcalc({"compute", line, "bnd1(dP1(corner(max_xy0, fullspace(2))))"});
    CHECK(nested.code == 0);
    CHECK(tropcalc({"compute", line, "wedge(L)"}).code == 2);
    CHECK(tropcalc({"compute", line, "frobnicate(L)"}).code == 2);
    CHECK(tropcalc({"compute", line, "wedge(two_rays, L)"}).code == 1);
}

TEST_CASE("verify command") {
    auto pl = tropcalc({"verify", FIXTURES + "/pl.json", "--suite", "pl"});
    CHECK(pl.code == 0);
    auto bad = tropcalc({"verify", FIXTURES + "/corrupted.json", "--suite", "pl"});
    CHECK(bad.code == 1);
    auto dump = io::Json::parse(bad.out.substr(bad.out.find('{')));
    REQUIRE(dump["failures"].size() == 1);
    CHECK(dump["failures"][0].contains("lhs"));
    CHECK(dump["failures"][0].contains("rhs"));
    CHECK(tropcalc({"verify", FIXTURES + "/pl.json", "--suite", "nonsense"}).code == 2);
    for (auto s : {"stokes", "green"}) CHECK(tropcalc({"verify", FIXTURES + "/integration.json", "--suite", s}).code == 0);
    CHECK(tropcalc({"verify", FIXTURES + "/projection.json", "--suite", "projection"}).code == 0);
    CHECK(tropcalc({"verify", FIXTURES + "/assoc.json", "--suite", "assoc"}).code == 0);
    CHECK(tropcalc({"verify", "--random", "--suite", "pl", "--size", "rank=9"}).code == 2);
}

TEST_CASE("random verification is deterministic") {
    for (auto s : {"stokes", "green", "pl", "projection", "assoc"}) {
        auto a = tropcalc({"verify", "--random", "--suite", s, "--seed", "5", "--count", "4"});
        auto b = tropcalc({"verify", "--random", "--suite", s, "--seed", "5", "--count", "4"});
        CHECK(a.code == 0);
        CHECK(a.out == b.out);
    }
}

TEST_CASE("integrate command") {
    auto f = FIXTURES + "/integration.json";
    auto a = tropcalc({"integrate", f, "xform", "I"});
    CHECK(a.code == 0);
    CHECK(a.out == "1/2\n");
    auto b = tropcalc({"integrate", f, "top", "Q"});
    CHECK(b.out == "1\n");
    CHECK(tropcalc({"integrate", f, "I", "xform"}).code == 2);
}

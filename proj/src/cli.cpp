#include "tropcalc/cli.hpp"

#include "tropcalc/errors.hpp"
#include "tropcalc/integration.hpp"
#include "tropcalc/io.hpp"
#include "tropcalc/morphisms.hpp"
#include "tropcalc/products.hpp"
#include "tropcalc/random.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <thread>

namespace tc::cli {

namespace {

using io::Json;
using io::Object;

[[noreturn]] void usage(const std::string& msg) { fail(ErrorKind::Usage, msg); }

// ---- expressions ----

struct Value {
    std::variant<Object, long> v;
};

class Parser {
public:
    Parser(const std::string& s, const io::Document& doc) : s_(s), doc_(doc) {}

    Value parse() {
        Value v = expr();
        skip();
        if (i_ != s_.size()) usage("unexpected '" + s_.substr(i_) + "' in expression");
        return v;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }

    std::string ident() {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_' || s_[i_] == '.')) ++i_;
        if (b == i_) usage("expected a name at position " + std::to_string(b));
        return s_.substr(b, i_ - b);
    }

    Value expr() {
        std::string name = ident();
        skip();
        if (std::isdigit(static_cast<unsigned char>(name[0]))) {
            try {
                return {std::stol(name)};
            } catch (...) {
                usage("bad integer literal '" + name + "'");
            }
        }
        if (i_ >= s_.size() || s_[i_] != '(') return {doc_.at(name)};
        ++i_;
        std::vector<Value> args;
        skip();
        if (i_ < s_.size() && s_[i_] == ')') {
            ++i_;
        } else {
            for (;;) {
                args.push_back(expr());
                skip();
                if (i_ < s_.size() && s_[i_] == ',') {
                    ++i_;
                    continue;
                }
                if (i_ < s_.size() && s_[i_] == ')') {
                    ++i_;
                    break;
                }
                usage("expected ',' or ')' in call to " + name);
            }
        }
        return apply(name, args);
    }

    static void arity(const std::string& f, const std::vector<Value>& a, size_t n) {
        if (a.size() != n) usage(f + " takes " + std::to_string(n) + " argument(s)");
    }

    template <class T>
    static const T& as(const Value& v, const std::string& f, const char* what) {
        if (auto* o = std::get_if<Object>(&v.v))
            if (auto* x = std::get_if<T>(o)) return *x;
        usage(f + ": expected " + what);
    }

    static DeltaForm form(const Value& v, const std::string& f) {
        if (auto* o = std::get_if<Object>(&v.v)) {
            if (auto* x = std::get_if<DeltaForm>(o)) return *x;
            if (auto* x = std::get_if<PSForm>(o)) return x->as_delta();
        }
        usage(f + ": expected a delta-form");
    }

    static Value apply(const std::string& f, const std::vector<Value>& a) {
        auto obj = [](auto x) { return Value{Object(std::move(x))}; };
        if (f == "fullspace") {
            arity(f, a, 1);
            auto* n = std::get_if<long>(&a[0].v);
            if (!n || *n < 0 || *n > 16) usage("fullspace takes a rank");
            return obj(gen::fullspace(int(*n)));
        }
        if (f == "wedge") {
            arity(f, a, 2);
            if (auto* o = std::get_if<Object>(&a[0].v))
                if (auto* w = std::get_if<PSForm>(o)) return obj(ps_wedge(*w, form(a[1], f)));
            return obj(diagonal_wedge(form(a[0], f), form(a[1], f)));
        }
        if (f == "corner") {
            arity(f, a, 2);
            return obj(corner_locus(as<PSForm>(a[0], f, "a piecewise function"), form(a[1], f)));
        }
        if (f == "cross") {
            arity(f, a, 2);
            return obj(cross(form(a[0], f), form(a[1], f)));
        }
        if (f == "push" || f == "pushhat") {
            arity(f, a, 2);
            const auto& F = as<AffineMap>(a[0], f, "an affine map");
            return obj(f == "push" ? pushforward_cells(F, form(a[1], f)) : pushforward_hat(F, form(a[1], f)));
        }
        if (f == "pull") {
            arity(f, a, 2);
            const auto& F = as<AffineMap>(a[0], f, "an affine map");
            if (auto* o = std::get_if<Object>(&a[1].v))
                if (auto* w = std::get_if<PSForm>(o)) return obj(pullback(F, *w));
            return obj(pullback(F, form(a[1], f)));
        }
        if (f == "dP1" || f == "dP2") {
            arity(f, a, 1);
            if (auto* o = std::get_if<Object>(&a[0].v))
                if (auto* w = std::get_if<PSForm>(o)) return obj(f == "dP1" ? dP1(*w) : dP2(*w));
            return obj(f == "dP1" ? dP1(form(a[0], f)) : dP2(form(a[0], f)));
        }
        if (f == "bnd1" || f == "bnd2") {
            arity(f, a, 1);
            return obj(f == "bnd1" ? boundary1(form(a[0], f)) : boundary2(form(a[0], f)));
        }
        if (f == "graph") {
            arity(f, a, 1);
            return obj(graph_cycle(as<AffineMap>(a[0], f, "an affine map")));
        }
        usage("unknown function '" + f + "'");
    }

    const std::string& s_;
    const io::Document& doc_;
    size_t i_ = 0;
};

// ---- verification ----

struct Outcome {
    bool ok = true;
    Json lhs, rhs;
    std::string note;
};

struct Instance {
    std::string label;
    io::Document inputs;
    std::function<Outcome()> run;
};

Json rat_json(const Rat& x) { return Json(fmt(x)); }

Outcome scalar(const CheckResult& c) { return {c.ok, rat_json(c.lhs), rat_json(c.rhs), ""}; }

Outcome forms(bool ok, const DeltaForm& l, const DeltaForm& r) {
    if (ok) return {true, nullptr, nullptr, ""};
    return {false, io::to_json(l), io::to_json(r), ""};
}

// The balancing condition as an identity: the defect sums on the left, zero on the right.
Outcome unbalanced(const DeltaForm& a, const std::string& name) {
    auto b = check_balanced(a);
    Json defects = Json::array();
    for (size_t i = 0; i < b.failing.size(); ++i)
        for (auto& [j, s] : b.components[i])
            defects.push_back({{"face", io::to_json(b.failing[i])}, {"row", j}, {"sum", io::to_json(s)}});
    return {false, defects, Json::array(), name + " is not balanced"};
}

bool weighted_cellset(const Object& o, WeightedCells& out) {
    if (auto* P = std::get_if<Polyhedron>(&o)) {
        if (P->empty() || !P->bounded()) return false;
        out = {{*P, Rat(1)}};
        return true;
    }
    if (auto* a = std::get_if<DeltaForm>(&o)) {
        if (!a->is_weighted() || a->is_zero()) return false;
        for (auto& c : a->cells())
            if (!c.poly.bounded()) return false;
        out = weighted_cells(*a);
        return true;
    }
    return false;
}

Rat sign_pow(int e) { return e % 2 ? Rat(-1) : Rat(1); }

Outcome run_stokes(const WeightedCells& c, const Superform& eta) { return scalar(stokes_check(c, eta)); }
Outcome run_green(const WeightedCells& c, const Superform& a, const Superform& b) { return scalar(green_check(c, a, b)); }

Outcome run_pl(const PSForm& phi, const DeltaForm& a) {
    if (!check_balanced(a).balanced) return unbalanced(a, "form");
    auto c = tropical_pl_check(phi, a);
    return forms(c.ok, c.lhs, c.rhs);
}

Outcome run_projection(const AffineMap& F, const DeltaForm& a, const DeltaForm& b) {
    if (!check_balanced(a).balanced) return unbalanced(a, "source form");
    if (!check_balanced(b).balanced) return unbalanced(b, "target form");
    auto c = projection_formula_check(F, a, b);
    return forms(c.ok, c.lhs, c.rhs);
}

Outcome run_assoc(const DeltaForm& a, const DeltaForm& b, const DeltaForm& c) {
    for (auto* x : {&a, &b, &c})
        if (!check_balanced(*x).balanced) return unbalanced(*x, "form");
    auto ab = diagonal_wedge(a, b);
    auto ba = diagonal_wedge(b, a) * sign_pow((a.p() + a.q()) * (b.p() + b.q()));
    if (!equal(ab, ba)) return {false, io::to_json(ab), io::to_json(ba), "graded commutativity"};
    auto l = diagonal_wedge(ab, c), r = diagonal_wedge(a, diagonal_wedge(b, c));
    Outcome o = forms(equal(l, r), l, r);
    if (!o.ok) o.note = "associativity";
    return o;
}

const std::vector<std::string> SUITES = {"stokes", "green", "pl", "projection", "assoc"};

std::vector<Instance> file_instances(const io::Document& doc, const std::string& suite) {
    std::vector<Instance> out;
    auto inputs = [&](std::initializer_list<std::string> names) {
        io::Document d;
        for (auto& n : names) d.objects.emplace(n, doc.at(n));
        return d;
    };
    const auto& objs = doc.objects;
    if (suite == "stokes" || suite == "green") {
        for (auto& [cn, co] : objs) {
            WeightedCells cells;
            if (!weighted_cellset(co, cells)) continue;
            int k = cells[0].first.dim(), r = cells[0].first.ambient_rank();
            for (auto& [an, ao] : objs) {
                auto* a = std::get_if<Superform>(&ao);
                if (!a || a->rank() != r) continue;
                if (suite == "stokes") {
                    bool fits = (a->p() == k - 1 && a->q() == k) || (a->p() == k && a->q() == k - 1);
                    if (!fits) continue;
                    Superform eta = *a;
                    out.push_back({cn + " " + an, inputs({cn, an}), [cells, eta] { return run_stokes(cells, eta); }});
                    continue;
                }
                if (!is_symmetric(*a)) continue;
                for (auto& [bn, bo] : objs) {
                    auto* b = std::get_if<Superform>(&bo);
                    if (!b || b->rank() != r || !is_symmetric(*b) || a->p() + b->p() != k - 1) continue;
                    Superform x = *a, y = *b;
                    out.push_back({cn + " " + an + " " + bn, inputs({cn, an, bn}), [cells, x, y] { return run_green(cells, x, y); }});
                }
            }
        }
    } else if (suite == "pl") {
        for (auto& [fn, fo] : objs) {
            auto* phi = std::get_if<PSForm>(&fo);
            if (!phi || phi->p() || phi->q()) continue;
            for (auto& [an, ao] : objs) {
                auto* a = std::get_if<DeltaForm>(&ao);
                if (!a || a->rank() != phi->rank()) continue;
                PSForm f = *phi;
                DeltaForm x = *a;
                out.push_back({fn + " " + an, inputs({fn, an}), [f, x] { return run_pl(f, x); }});
            }
        }
    } else if (suite == "projection") {
        for (auto& [mn, mo] : objs) {
            auto* F = std::get_if<AffineMap>(&mo);
            if (!F) continue;
            for (auto& [an, ao] : objs) {
                auto* a = std::get_if<DeltaForm>(&ao);
                if (!a || a->rank() != F->source_rank()) continue;
                for (auto& [bn, bo] : objs) {
                    auto* b = std::get_if<DeltaForm>(&bo);
                    if (!b || b->rank() != F->target_rank()) continue;
                    AffineMap G = *F;
                    DeltaForm x = *a, y = *b;
                    out.push_back({mn + " " + an + " " + bn, inputs({mn, an, bn}), [G, x, y] { return run_projection(G, x, y); }});
                }
            }
        }
    } else {
        std::vector<std::string> names;
        for (auto& [n, o] : objs)
            if (std::holds_alternative<DeltaForm>(o)) names.push_back(n);
        for (size_t i = 0; i < names.size(); ++i)
            for (size_t j = i; j < names.size(); ++j)
                for (size_t k = j; k < names.size(); ++k) {
                    const auto& a = std::get<DeltaForm>(doc.at(names[i]));
                    const auto& b = std::get<DeltaForm>(doc.at(names[j]));
                    const auto& c = std::get<DeltaForm>(doc.at(names[k]));
                    if (a.rank() != b.rank() || b.rank() != c.rank()) continue;
                    out.push_back({names[i] + " " + names[j] + " " + names[k], inputs({names[i], names[j], names[k]}),
                                   [a, b, c] { return run_assoc(a, b, c); }});
                }
    }
    return out;
}

struct Size {
    int rank = 2, cells = 6, degree = 2;
};

Size parse_size(const std::string& spec) {
    Size s;
    if (spec.empty()) return s;
    size_t b = 0;
    while (b <= spec.size()) {
        size_t e = spec.find(',', b);
        if (e == std::string::npos) e = spec.size();
        std::string item = spec.substr(b, e - b);
        auto eq = item.find('=');
        if (eq == std::string::npos) usage("size items look like rank=2,cells=6,degree=2");
        std::string k = item.substr(0, eq);
        int v;
        try {
            v = std::stoi(item.substr(eq + 1));
        } catch (...) {
            usage("bad size value in '" + item + "'");
        }
        if (k == "rank" && v >= 1 && v <= 4)
            s.rank = v;
        else if (k == "cells" && v >= 2 && v <= 12)
            s.cells = v;
        else if (k == "degree" && v >= 0 && v <= 4)
            s.degree = v;
        else
            usage("size item '" + item + "' out of range (rank 1..4, cells 2..12, degree 0..4)");
        b = e + 1;
    }
    return s;
}

std::vector<Instance> random_instances(const std::string& suite, unsigned long seed, const Size& sz, int count) {
    std::mt19937_64 g(seed);
    std::vector<Instance> out;
    auto npieces = [&] { return int(gen::small(g, 2, std::max(2, sz.cells / 2))); };
    for (int n = 0; n < count; ++n) {
        Instance in;
        in.label = "random " + std::to_string(n);
        auto& d = in.inputs.objects;
        if (suite == "stokes" || suite == "green") {
            Polyhedron P;
            do {
                int r = int(gen::small(g, 1, sz.rank));
                P = gen::polytope(g, r, int(gen::small(g, 2, sz.cells)));
            } while (P.dim() == 0 || (suite == "green" && P.dim() < 1));
            int k = P.dim(), r = P.ambient_rank();
            d.emplace("cell", P);
            WeightedCells cells{{P, Rat(1)}};
            if (suite == "stokes") {
                bool first = gen::small(g, 0, 1);
                Superform eta = gen::superform(g, r, first ? k - 1 : k, first ? k : k - 1, sz.degree);
                d.emplace("eta", eta);
                in.run = [cells, eta] { return run_stokes(cells, eta); };
            } else {
                int p = int(gen::small(g, 0, k - 1));
                Superform a = gen::symmetric(g, r, p, sz.degree), b = gen::symmetric(g, r, k - 1 - p, sz.degree);
                d.emplace("alpha", a);
                d.emplace("beta", b);
                in.run = [cells, a, b] { return run_green(cells, a, b); };
            }
        } else if (suite == "pl") {
            int r = int(gen::small(g, 1, std::min(sz.rank, 3)));
            int l = int(gen::small(g, 0, r - 1));
            PSForm phi = sz.degree <= 1 ? gen::pl_function(g, r, npieces()) : gen::pp_function(g, r, npieces(), std::min(sz.degree, 3));
            DeltaForm a = gen::balanced(g, r, int(gen::small(g, 0, 1)), int(gen::small(g, 0, 1)), l, 2);
            d.emplace("phi", phi);
            d.emplace("alpha", a);
            in.run = [phi, a] { return run_pl(phi, a); };
        } else if (suite == "projection") {
            int s = int(gen::small(g, 1, std::min(sz.rank, 3))), r = int(gen::small(g, 1, std::min(sz.rank, 3)));
            AffineMap F = gen::affine_map(g, s, r);
            DeltaForm a = gen::balanced(g, s, 0, 0, int(gen::small(g, 0, s)), 2);
            DeltaForm b = gen::balanced(g, r, int(gen::small(g, 0, 1)), 0, int(gen::small(g, 0, r)), 2);
            d.emplace("F", F);
            d.emplace("alpha", a);
            d.emplace("beta", b);
            in.run = [F, a, b] { return run_projection(F, a, b); };
        } else {
            int r = int(gen::small(g, 1, std::min(sz.rank, 3)));
            auto one = [&] {
                int l = int(gen::small(g, 0, 1));
                return gen::balanced(g, r, int(gen::small(g, 0, 1)) * (l == 0), 0, l, 2);
            };
            DeltaForm a = one(), b = one(), c = one();
            d.emplace("a", a);
            d.emplace("b", b);
            d.emplace("c", c);
            in.run = [a, b, c] { return run_assoc(a, b, c); };
        }
        out.push_back(std::move(in));
    }
    return out;
}

std::vector<Outcome> run_all(const std::vector<Instance>& inst) {
    std::vector<Outcome> res(inst.size());
    std::atomic<size_t> next{0};
    auto worker = [&] {
        for (size_t i; (i = next++) < inst.size();) {
            try {
                res[i] = inst[i].run();
            } catch (const Error& e) {
                res[i] = {false, nullptr, nullptr, e.what()};
            }
        }
    };
    unsigned n = std::min<unsigned>(thread_count(), unsigned(std::max<size_t>(1, inst.size())));
    std::vector<std::thread> ts;
    for (unsigned t = 1; t < n; ++t) ts.emplace_back(worker);
    worker();
    for (auto& t : ts) t.join();
    return res;
}

void write_text(const std::string& path, const std::string& text, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path);
    if (!f) usage("cannot write " + path);
    f << text;
}

// ---- commands ----

int cmd_check_balance(const std::string& file, const std::string& name, std::ostream& out) {
    io::Document doc = io::load_document(file);
    const Object& o = doc.at(name);
    DeltaForm a;
    if (auto* x = std::get_if<DeltaForm>(&o))
        a = *x;
    else if (auto* w = std::get_if<PSForm>(&o))
        a = w->as_delta();
    else
        usage(name + " is a " + io::kind_name(o) + ", not a delta-form");
    auto b = check_balanced(a);
    if (b.balanced) {
        out << name << ": balanced\n";
        return 0;
    }
    out << name << ": not balanced at " << b.failing.size() << " face(s)\n";
    for (size_t i = 0; i < b.failing.size(); ++i) {
        out << "  face " << describe(b.failing[i]) << "\n";
        for (auto& [j, s] : b.components[i]) out << "    complement component " << j << ": " << s.str() << "\n";
    }
    return 1;
}

int cmd_compute(const std::string& file, const std::string& expr, const std::string& output, std::ostream& out) {
    io::Document doc = io::load_document(file);
    Value v = Parser(expr, doc).parse();
    auto* o = std::get_if<Object>(&v.v);
    if (!o) usage("expression evaluates to a number");
    io::Document res;
    res.objects.emplace("result", *o);
    write_text(output, io::serialize(res), out);
    return 0;
}

int cmd_verify(const std::string& file, bool random, const std::string& suite, unsigned long seed, const std::string& size, int count,
               const std::string& dump, std::ostream& out) {
    if (std::find(SUITES.begin(), SUITES.end(), suite) == SUITES.end()) usage("unknown suite '" + suite + "'");
    if (random == !file.empty()) usage("give either a file or --random");
    if (count < 1) usage("--count must be positive");
    std::vector<Instance> inst;
    if (random) {
        inst = random_instances(suite, seed, parse_size(size), count);
    } else {
        inst = file_instances(io::load_document(file), suite);
        if (inst.empty()) usage("no instances of suite '" + suite + "' in " + file);
    }
    auto res = run_all(inst);
    int failed = 0;
    Json dumps = Json::array();
    for (size_t i = 0; i < inst.size(); ++i) {
        out << "[" << i << "] " << inst[i].label << ": " << (res[i].ok ? "ok" : "FAIL");
        if (!res[i].note.empty()) out << " (" << res[i].note << ")";
        out << "\n";
        if (res[i].ok) continue;
        ++failed;
        dumps.push_back({{"instance", i}, {"label", inst[i].label}, {"inputs", io::to_json(inst[i].inputs)}, {"lhs", res[i].lhs},
                         {"rhs", res[i].rhs}, {"note", res[i].note}});
    }
    out << suite << ": " << inst.size() - failed << "/" << inst.size() << " passed\n";
    if (failed) write_text(dump, Json({{"suite", suite}, {"failures", dumps}}).dump(2) + "\n", out);
    return failed ? 1 : 0;
}

int cmd_integrate(const std::string& file, const std::string& form, const std::string& cellset, std::ostream& out) {
    io::Document doc = io::load_document(file);
    const Object& f = doc.at(form);
    auto* a = std::get_if<Superform>(&f);
    if (!a) usage(form + " is a " + io::kind_name(f) + ", not a superform");
    WeightedCells cells;
    const Object& c = doc.at(cellset);
    if (!weighted_cellset(c, cells)) usage(cellset + " is not a bounded polyhedron or weighted cell set");
    out << fmt(integrate_cells(cells, *a)) << "\n";
    return 0;
}

}  // namespace

unsigned thread_count() {
    if (const char* s = std::getenv("TROPCALC_THREADS")) {
        char* end = nullptr;
        long v = std::strtol(s, &end, 10);
        if (end != s && *end == 0 && v > 0) return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact delta-form calculus on affine spaces", "tropcalc"};
    app.require_subcommand(1);

    std::string file, name, expr, output, suite, size, dump, form, cellset;
    bool random = false;
    unsigned long seed = 1;
    int count = 10;

    auto* bal = app.add_subcommand("check-balance", "Check the balancing condition of a named delta-form");
    bal->add_option("file", file)->required();
    bal->add_option("name", name)->required();

    auto* comp = app.add_subcommand("compute", "Evaluate an expression over the named objects of a document");
    comp->add_option("file", file)->required();
    comp->add_option("expr", expr)->required();
    comp->add_option("-o,--output", output, "output document (default stdout)");

    auto* ver = app.add_subcommand("verify", "Check an identity on a document's objects or on random instances");
    ver->add_option("file", file);
    ver->add_flag("--random", random, "generate instances instead of reading a file");
    ver->add_option("--suite", suite, "stokes|green|pl|projection|assoc")->required();
    ver->add_option("--seed", seed, "random seed");
    ver->add_option("--size", size, "rank=R,cells=C,degree=D with R <= 4, C <= 12, D <= 4");
    ver->add_option("--count", count, "number of random instances");
    ver->add_option("--dump", dump, "counterexample file (default stdout)");

    auto* integ = app.add_subcommand("integrate", "Integrate a superform over a polytope or weighted cell set");
    integ->add_option("file", file)->required();
    integ->add_option("form", form)->required();
    integ->add_option("cells", cellset)->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (bal->parsed()) return cmd_check_balance(file, name, out);
        if (comp->parsed()) return cmd_compute(file, expr, output, out);
        if (ver->parsed()) return cmd_verify(file, random, suite, seed, size, count, dump, out);
        return cmd_integrate(file, form, cellset, out);
    } catch (const Error& e) {
        err << "tropcalc: " << e.what() << "\n";
        return e.kind() == ErrorKind::Parse || e.kind() == ErrorKind::Usage ? 2 : 1;
    } catch (const std::exception& e) {
        err << "tropcalc: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace tc::cli

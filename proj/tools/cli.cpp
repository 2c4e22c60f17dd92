#include "cli.hpp"

#include <cstdlib>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fg/cocycles.hpp"
#include "fg/error.hpp"
#include "fg/fgl.hpp"
#include "fg/gamma.hpp"
#include "fg/homology.hpp"
#include "fg/series_json.hpp"

namespace fgcalc {

namespace {

using nlohmann::json;
using namespace fg;

struct Options {
    // global
    std::string ring = "z";
    unsigned precision = 6;
    std::uint64_t seed = 0;
    std::string output = "json";
    std::uint64_t budget = default_enumeration_budget;

    // per command
    std::string fgl;
    std::string input;
    std::string phi;
    std::string b;
    std::string cocycle;
    std::string a;
    std::optional<std::size_t> set;
    std::string f, g;
    std::string matrix;
    long n = 0;
    unsigned k = 0;
    unsigned i = 0;
    unsigned bound = 0;
    std::size_t rank = 0;
    std::size_t top = 0;
    std::size_t trials = 100;
    std::size_t max_set = 3;
};

struct Outcome {
    json report;
    int code = 0;
};

json integer(const mpz_class& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

json scalar_json(const Scalar& v) {
    if (v.is_integer()) return integer(v.to_mpq().get_num());
    return v.to_string();
}

json series_report(const Series& s) { return json{{"series", series_to_json(s)}, {"text", s.to_string()}}; }

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(Errc::invalid_argument, "cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        fail(Errc::parse_error, "'" + path + "' is not valid JSON: " + e.what());
    }
}

Series read_series(const std::string& path) { return series_from_json(read_json_file(path)); }

Ring ring_of(const Options& o) { return Ring::parse(o.ring); }

FormalGroupBud load_fgl(const Options& o) {
    if (!o.input.empty()) return FormalGroupBud::validate(read_series(o.input));
    const Ring r = ring_of(o);
    if (o.fgl == "additive") return additive_fgl(r, o.precision);
    if (o.fgl == "multiplicative") return multiplicative_fgl(r, o.precision);
    if (o.fgl.empty()) fail(Errc::invalid_argument, "give --fgl additive|multiplicative or --input FILE");
    fail(Errc::invalid_argument, "unknown formal group law '" + o.fgl + "'");
}

json fgl_report(const FormalGroupBud& F) {
    return json{{"ring", F.ring().to_string()}, {"order", F.order()}, {"law", series_report(F.law())}};
}

std::vector<mpz_class> parse_integer_list(const std::string& text) {
    std::vector<mpz_class> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        mpz_class v;
        if (item.empty() || v.set_str(item, 10) != 0) fail(Errc::parse_error, "malformed integer '" + item + "'");
        out.push_back(v);
    }
    return out;
}

json property_report(const PropertyResult& p) {
    return json{{"name", p.name}, {"checked", p.checked}, {"failed", p.failed}, {"counterexamples", p.counterexamples}};
}

json check_report(const CheckReport& r) {
    json props = json::array();
    for (const auto& p : r.properties) props.push_back(property_report(p));
    return json{{"seed", r.seed}, {"trials", r.trials}, {"passed", r.passed()}, {"properties", props}};
}

json group_report(const AbelianGroupIso& h) {
    json torsion = json::array();
    for (const auto& t : h.torsion) torsion.push_back(integer(t));
    return json{{"free", h.free_rank}, {"torsion", torsion}, {"text", h.to_string()}};
}

json matrix_report(const IntMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(integer(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

IntMatrix parse_matrix(const json& j) {
    if (!j.is_array()) fail(Errc::parse_error, "a matrix is a JSON array of rows");
    std::vector<std::vector<mpz_class>> rows;
    for (const auto& row : j) {
        if (!row.is_array()) fail(Errc::parse_error, "matrix rows must be arrays");
        std::vector<mpz_class> r;
        for (const auto& v : row) {
            mpz_class x;
            if (v.is_number_integer()) x = mpz_class(std::to_string(v.get<long long>()));
            else if (v.is_string() && x.set_str(v.get<std::string>(), 10) == 0) {
            } else fail(Errc::parse_error, "matrix entries must be integers");
            r.push_back(x);
        }
        rows.push_back(std::move(r));
    }
    return IntMatrix::from_rows(rows);
}

void require(bool ok, const std::string& message) {
    if (!ok) fail(Errc::invalid_argument, message);
}

// ---- command handlers

Outcome fgl_validate(const Options& o) {
    Series law = !o.input.empty() ? read_series(o.input) : load_fgl(o).law();
    json r{{"law", series_report(law)}};
    if (auto v = find_bud_violation(law)) {
        r["valid"] = false;
        r["violation"] = json{{"axiom", v->axiom}, {"monomial", v->monomial}};
        return {r, 1};
    }
    r["valid"] = true;
    return {r, 0};
}

Outcome fgl_nseries(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    json r = fgl_report(F);
    r["n"] = o.n;
    r["nseries"] = series_report(n_series(F, o.n));
    return {r, 0};
}

Outcome fgl_height(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    const unsigned bound = o.bound ? o.bound : F.order();
    json r = fgl_report(F);
    r["bound"] = bound;
    const HeightResult h = height(F, bound);
    if (const auto* f = std::get_if<HeightFinite>(&h)) {
        r["finite"] = true;
        r["height"] = f->height;
        r["unit"] = f->unit.to_string();
    } else {
        r["finite"] = false;
        r["at_least"] = std::get<HeightAtLeast>(h).bound;
    }
    return {r, 0};
}

Outcome fgl_log(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    json r = fgl_report(F);
    r["logarithm"] = series_report(logarithm(F).series());
    return {r, 0};
}

StrictIso load_iso(const Options& o, const FormalGroupBud& F) {
    if (!o.phi.empty()) return StrictIso::from_series(read_series(o.phi));
    require(!o.b.empty(), "give --phi FILE or --b VALUE for x + b*x^k");
    const unsigned k = o.k ? o.k : F.order();
    return StrictIso::elementary(RingElement::parse(F.ring(), o.b), k, F.order());
}

Outcome fgl_conjugate(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    const StrictIso phi = load_iso(o, F);
    json r = fgl_report(conjugate(F, phi));
    r["phi"] = series_report(phi.series());
    return {r, 0};
}

Outcome fgl_add_cocycle(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    require(!o.cocycle.empty() || !o.b.empty(), "give --cocycle FILE or --b VALUE for b*c_k");
    const SymCocycle c =
        !o.cocycle.empty()
            ? SymCocycle::certify(read_series(o.cocycle), F.order())
            : SymCocycle::certify(universal_cocycle(F.order(), F.ring()).series().scaled(F.ring().parse_value(o.b)),
                                  F.order());
    json r = fgl_report(add_cocycle(F, c));
    r["cocycle"] = series_report(c.series());
    return {r, 0};
}

json coefficients(const SymCocycle& c) {
    json a = json::array();
    for (const auto& s : c.coefficients()) a.push_back(scalar_json(s));
    return a;
}

Outcome cocycle_universal(const Options& o) {
    require(o.k >= 2, "--k must be at least 2");
    const SymCocycle c = universal_cocycle(o.k, ring_of(o));
    json r = series_report(c.series());
    r["k"] = o.k;
    r["ring"] = o.ring;
    r["d_k"] = integer(binomial_gcd(o.k));
    r["coefficients"] = coefficients(c);
    return {r, 0};
}

Outcome cocycle_classify(const Options& o) {
    require(o.k >= 2, "--k must be at least 2");
    const Ring ring = ring_of(o);
    const auto all = classify_cocycles(ring, o.k, o.budget);
    const GroupoidInvariants inv = groupoid_invariants(ring, o.k, o.budget);
    json list = json::array();
    for (const auto& c : all) list.push_back(coefficients(c));
    return {json{{"k", o.k},
                 {"ring", o.ring},
                 {"count", all.size()},
                 {"cocycles", list},
                 {"pi0", inv.pi0_size},
                 {"stabilizer", inv.stabilizer_size}},
            0};
}

Outcome cocycle_invariants(const Options& o) {
    require(o.k >= 2, "--k must be at least 2");
    const GroupoidInvariants inv = groupoid_invariants(ring_of(o), o.k, o.budget);
    return {json{{"k", o.k},
                 {"ring", o.ring},
                 {"cocycles", inv.cocycle_count},
                 {"image", inv.image_size},
                 {"pi0", inv.pi0_size},
                 {"stabilizer", inv.stabilizer_size}},
            0};
}

Outcome gamma_check(const Options& o) {
    const CheckReport axioms = check_gammaring_axioms(ring_of(o), o.precision, o.max_set, o.trials, o.seed);
    json r{{"ring", o.ring}, {"precision", o.precision}, {"max_set", o.max_set}, {"gammaring", check_report(axioms)}};
    bool passed = axioms.passed();
    if (!o.fgl.empty() || !o.input.empty()) {
        const CheckReport fs = check_fstar_homomorphism(load_fgl(o), o.max_set, o.trials, o.seed);
        r["fstar"] = check_report(fs);
        passed = passed && fs.passed();
    }
    r["passed"] = passed;
    return {r, passed ? 0 : 1};
}

Outcome gamma_fstar(const Options& o) {
    const FormalGroupBud F = load_fgl(o);
    const std::vector<mpz_class> coeffs = parse_integer_list(o.a);
    if (o.set && *o.set != coeffs.size())
        fail(Errc::shape_mismatch, "--element has " + std::to_string(coeffs.size()) + " entries but --set is " +
                                       std::to_string(*o.set));
    HZElement a{PointedSet{coeffs.size()}, coeffs};
    const DBElement v = fstar(F, a);
    json r = fgl_report(F);
    r["set"] = v.set.size;
    r["image"] = series_report(v.series);
    return {r, 0};
}

Outcome gamma_mul(const Options& o) {
    require(!o.f.empty() && !o.g.empty(), "give --f FILE and --g FILE");
    const Series sf = read_series(o.f), sg = read_series(o.g);
    const DBElement p = db_mul(DBElement(PointedSet{sf.vars()}, sf), DBElement(PointedSet{sg.vars()}, sg));
    json r = series_report(p.series);
    r["set"] = p.set.size;
    return {r, 0};
}

Outcome gamma_decompose(const Options& o) {
    require(!o.input.empty(), "give --input FILE");
    const Series s = read_series(o.input);
    const auto slots = homogeneous_decomposition(DBElement(PointedSet{s.vars()}, s));
    json degrees = json::array();
    for (const auto& [k, slot] : slots) {
        json entries = json::array();
        for (std::size_t j = 0; j < slot.multisets.size(); ++j)
            if (!slot.coefficients[j].is_zero())
                entries.push_back(json{{"multiset", slot.multisets[j]}, {"coef", slot.coefficients[j].to_string()}});
        degrees.push_back(json{{"degree", k}, {"dimension", slot.multisets.size()}, {"entries", entries}});
    }
    return {json{{"set", s.vars()}, {"slots", degrees}}, 0};
}

Outcome homology_ctilde(const Options& o) {
    require(o.rank >= 1 && o.top >= 1, "--rank and --top must be at least 1");
    const IntChainComplex c = build_ctilde(o.rank, o.top);
    json r{{"rank", o.rank}, {"top", o.top}, {"dims", c.dims()}};
    for (std::size_t i = 0; i + 1 <= o.top; ++i) r[std::to_string(i)] = group_report(stable_derived_lambda2(i, o.rank, o.top));
    return {r, 0};
}

Outcome homology_snf(const Options& o) {
    json m;
    if (!o.matrix.empty()) {
        try {
            m = json::parse(o.matrix);
        } catch (const json::exception& e) {
            fail(Errc::parse_error, std::string("--matrix is not valid JSON: ") + e.what());
        }
    } else {
        require(!o.input.empty(), "give --matrix JSON or --input FILE");
        m = read_json_file(o.input);
    }
    const SmithForm s = smith_normal_form(parse_matrix(m));
    json inv = json::array();
    for (const auto& d : s.invariants) inv.push_back(integer(d));
    return {json{{"U", matrix_report(s.U)},
                 {"D", matrix_report(s.D)},
                 {"V", matrix_report(s.V)},
                 {"rank", s.rank()},
                 {"invariants", inv}},
            0};
}

Outcome functors_binom_check(const Options& o) {
    const ComultCheck c = comult_binomial_check(o.k, o.i, o.rank);
    json r{{"k", o.k}, {"i", o.i}, {"rank", o.rank}, {"holds", c.holds}, {"binomial", integer(c.binomial)},
           {"composite", matrix_report(c.composite)}};
    if (c.counterexample) r["counterexample"] = *c.counterexample;
    return {r, c.holds ? 0 : 1};
}

Outcome functors_dk_witness(const Options& o) {
    require(o.k >= 2, "--k must be at least 2");
    json lambda = json::array();
    for (const auto& l : dk_factorization_witness(o.k)) lambda.push_back(integer(l));
    return {json{{"k", o.k}, {"d_k", integer(binomial_gcd(o.k))}, {"lambda", lambda}}, 0};
}

// ---- rendering

void render_text(const json& j, std::ostream& out, const std::string& prefix) {
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            if (key == "series") continue; // "text" carries the same data
            const std::string name = prefix.empty() ? key : prefix + "." + key;
            if (value.is_object()) render_text(value, out, name);
            else out << name << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << '\n';
        }
    } else {
        out << (prefix.empty() ? "" : prefix + ": ") << j.dump() << '\n';
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    if (const char* env = std::getenv("FGCALC_BUDGET")) {
        try {
            std::size_t used = 0;
            o.budget = std::stoull(env, &used);
            if (used != std::string(env).size()) throw std::invalid_argument(env);
        } catch (const std::exception&) {
            err << "error: FGCALC_BUDGET must be a non-negative integer, got '" << env << "'\n";
            return 2;
        }
    }

    CLI::App app{"Formal group laws, symmetric cocycles, Gamma-rings and functor homology", "fgcalc"};
    app.require_subcommand(1);
    app.fallthrough();
    bool version = false;
    app.add_flag("--version", version, "Print the report schema version and exit");
    app.add_option("--ring", o.ring, "Coefficient ring: z, q or zmod:N")->capture_default_str();
    app.add_option("--precision", o.precision, "Truncation degree N")->capture_default_str()->check(CLI::PositiveNumber);
    app.add_option("--seed", o.seed, "Seed for randomized checks")->capture_default_str();
    app.add_option("--output", o.output, "Report format")->check(CLI::IsMember({"json", "text"}))->capture_default_str();
    app.add_option("--budget", o.budget, "Enumeration budget (also FGCALC_BUDGET)")->capture_default_str();

    std::function<Outcome(const Options&)> handler;
    std::string command;
    auto group = [&](const std::string& name, const std::string& help) {
        CLI::App* g = app.add_subcommand(name, help);
        g->require_subcommand(1);
        g->fallthrough();
        return g;
    };
    auto leaf = [&](CLI::App* parent, const std::string& name, const std::string& help, Outcome (*fn)(const Options&)) {
        CLI::App* c = parent->add_subcommand(name, help);
        c->fallthrough();
        c->callback([&, fn, full = parent->get_name() + " " + name] {
            handler = fn;
            command = full;
        });
        return c;
    };
    auto fgl_source = [&](CLI::App* c) {
        c->add_option("--fgl", o.fgl, "Built-in law: additive or multiplicative");
        c->add_option("--input", o.input, "Law as a series JSON file");
    };

    CLI::App* fgl = group("fgl", "Formal group law buds");
    fgl_source(leaf(fgl, "validate", "Check the formal group law axioms", fgl_validate));
    CLI::App* ns = leaf(fgl, "nseries", "The n-series [n]_F", fgl_nseries);
    fgl_source(ns);
    ns->add_option("--n", o.n, "Integer n")->required();
    CLI::App* ht = leaf(fgl, "height", "Height over a prime field", fgl_height);
    fgl_source(ht);
    ht->add_option("--bound", o.bound, "Read [p]_F through this degree (default: the bud order)");
    fgl_source(leaf(fgl, "log", "Logarithm over Q", fgl_log));
    CLI::App* cj = leaf(fgl, "conjugate", "Conjugate by a strict isomorphism", fgl_conjugate);
    fgl_source(cj);
    cj->add_option("--phi", o.phi, "Isomorphism as a univariate series JSON file");
    cj->add_option("--b", o.b, "Use x + b*x^k");
    cj->add_option("--k", o.k, "Degree k for --b (default: the bud order)");
    CLI::App* ac = leaf(fgl, "add-cocycle", "Add a cocycle of degree equal to the bud order", fgl_add_cocycle);
    fgl_source(ac);
    ac->add_option("--cocycle", o.cocycle, "Cocycle as a series JSON file");
    ac->add_option("--b", o.b, "Use b*c_k");

    CLI::App* coc = group("cocycle", "Symmetric 2-cocycles");
    leaf(coc, "universal", "Lazard's cocycle c_k", cocycle_universal)->add_option("--k", o.k, "Degree")->required();
    leaf(coc, "classify", "All cocycles over a finite ring", cocycle_classify)->add_option("--k", o.k, "Degree")->required();
    leaf(coc, "invariants", "Components and stabilizers of the cocycle groupoid", cocycle_invariants)
        ->add_option("--k", o.k, "Degree")
        ->required();

    CLI::App* gam = group("gamma", "The Gamma-rings HZ and DB");
    CLI::App* gc = leaf(gam, "check", "Randomized Gamma-ring axiom checks", gamma_check);
    gc->add_option("--trials", o.trials, "Number of trials")->capture_default_str();
    gc->add_option("--max-set", o.max_set, "Largest pointed set size")->capture_default_str();
    fgl_source(gc);
    CLI::App* gf = leaf(gam, "fstar", "F_* on an element of HZ", gamma_fstar);
    fgl_source(gf);
    gf->add_option("--element", o.a, "Coefficients a_1,...,a_m, comma separated")->required();
    gf->add_option("--set", o.set, "Size m of the pointed set (checked against --element)");
    CLI::App* gm = leaf(gam, "mul", "Product f ^ g -> DB(K ^ L)", gamma_mul);
    gm->add_option("--f", o.f, "Series JSON file")->required();
    gm->add_option("--g", o.g, "Series JSON file")->required();
    leaf(gam, "decompose", "Homogeneous parts indexed by multisets", gamma_decompose)
        ->add_option("--input", o.input, "Series JSON file")
        ->required();

    CLI::App* hom = group("homology", "Integer chain complexes");
    CLI::App* hc = leaf(hom, "ctilde", "Homology of the complex for Lambda^2", homology_ctilde);
    hc->add_option("--rank", o.rank, "Rank r")->required();
    hc->add_option("--top", o.top, "Top degree")->required();
    CLI::App* hs = leaf(hom, "snf", "Smith normal form", homology_snf);
    hs->add_option("--matrix", o.matrix, "Matrix as a JSON array of rows");
    hs->add_option("--input", o.input, "Matrix JSON file");

    CLI::App* fun = group("functors", "Polynomial functor identities");
    CLI::App* fb = leaf(fun, "binom-check", "Product after comultiplication is C(k,i)", functors_binom_check);
    fb->add_option("--k", o.k, "Degree k")->required();
    fb->add_option("--i", o.i, "Split i")->required();
    fb->add_option("--rank", o.rank, "Rank r")->required();
    leaf(fun, "dk-witness", "Integers with sum lambda_i C(k,i) = d_k", functors_dk_witness)
        ->add_option("--k", o.k, "Degree")
        ->required();

    if (std::find(args.begin(), args.end(), "--version") != args.end()) {
        out << "fgcalc schema " << schema_version << '\n';
        return 0;
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        err << app.help();
        return 2;
    }
    if (!handler) {
        err << app.help();
        return 2;
    }

    Outcome outcome;
    try {
        outcome = handler(o);
    } catch (const Error& e) {
        if (!e.is_math_failure()) {
            err << "error [" << errc_name(e.code()) << "]: " << e.what() << '\n';
            return 2;
        }
        outcome = {json{{"failure", json{{"code", std::string(errc_name(e.code()))}, {"message", e.what()}}}}, 1};
        err << "check failed [" << errc_name(e.code()) << "]: " << e.what() << '\n';
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }

    outcome.report["command"] = command;
    outcome.report["schema_version"] = schema_version;
    if (o.output == "text") render_text(outcome.report, out, "");
    else out << outcome.report.dump(2) << '\n';
    return outcome.code;
}

} // namespace fgcalc

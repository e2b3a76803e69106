// trqf: command-line front end to the core library.
// Exit status: 0 completed, 1 some item failed, 2 usage error.

#include "trqf/cyclotomic.hpp"
#include "trqf/fieldscan.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace trqf;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string data_dir() {
    if (const char* e = std::getenv("TRQF_DATA")) return e;
#ifdef TRQF_DATA_DIR
    return TRQF_DATA_DIR;
#else
    return "data";
#endif
}

// A field given as a record file, a file under the data directory, a label in
// --fields, or one of the built-ins "q" and "qsqrt2".
FieldContext resolve_field(const std::string& spec, const std::string& table) {
    if (spec == "q" || spec == "Q") return FieldContext::rationals();
    if (!table.empty()) {
        FieldTable t = ingest_fields(table);
        if (const FieldRecord* r = t.find_label(spec)) return FieldContext::load(*r);
    }
    for (const fs::path& p : {fs::path(spec), fs::path(data_dir()) / spec, fs::path(data_dir()) / "fields" / spec,
                              fs::path(data_dir()) / "fields" / (spec + ".json")})
        if (fs::is_regular_file(p)) return load_field_file(p.string());
    if (spec == "qsqrt2") return FieldContext::q_sqrt2();
    throw UsageError("--field: no field '" + spec + "'");
}

Element element_arg(const FieldContext& K, const std::string& text, const std::string& flag) {
    try {
        return parse_element(K, text);
    } catch (const Error& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

std::vector<Element> element_list(const FieldContext& K, const std::string& text, const std::string& flag) {
    std::vector<Element> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(element_arg(K, item, flag));
    if (out.empty()) throw UsageError(flag + ": empty list");
    return out;
}

json ejson(const Element& e) {
    json c = json::array();
    for (const auto& x : e.coords()) c.push_back(x.get_str());
    json j{{"coords", c}, {"text", pretty(e)}};
    if (e.denom() != 1) j["denom"] = e.denom().get_str();
    return j;
}

json ejson(const std::vector<Element>& v) {
    json a = json::array();
    for (const auto& e : v) a.push_back(ejson(e));
    return a;
}

void write_out(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    std::ofstream f(path);
    if (!f) throw UsageError("--out: cannot write " + path);
    f << text;
}

void write_out(const std::string& path, const json& j) { write_out(path, j.dump(2) + "\n"); }

struct Common {
    std::string field = "qsqrt2";
    std::string fields;
    std::string out;
    double ceiling = 1e8;
    EnumerationOptions opt() const { return EnumerationOptions{ceiling}; }
};

void add_common(CLI::App* sub, Common& c, bool field = true) {
    if (field) sub->add_option("--field", c.field, "field record file, data-relative name, or label in --fields");
    sub->add_option("--fields", c.fields, "field table (JSON lines)");
    sub->add_option("--out", c.out, "write a JSON report");
    sub->add_option("--ceiling", c.ceiling, "enumeration candidate cap");
}

// ---------------------------------------------------------------- subcommands

int cmd_small_elements(const Common& c, const std::string& bound, const std::string& mode) {
    FieldContext K = resolve_field(c.field, c.fields);
    Element B = element_arg(K, bound, "--bound");
    DominanceMode m;
    if (mode == "square")
        m = DominanceMode::SquareDominated;
    else if (mode == "interval")
        m = DominanceMode::Interval;
    else
        throw UsageError("--mode: expected square or interval");
    auto r = enumerate_dominated_report({B, m}, c.opt());
    std::cout << r.elements.size() << " elements with "
              << (m == DominanceMode::SquareDominated ? "omega^2 <= " : "0 <= omega <= ") << pretty(B) << " over "
              << K.label() << "\n";
    for (const auto& e : r.elements) std::cout << "  " << pretty(e) << "\n";
    json box{{"bits", r.box.bits}};
    for (const auto& x : r.box.lo) box["lo"].push_back(x.get_str());
    for (const auto& x : r.box.hi) box["hi"].push_back(x.get_str());
    write_out(c.out, json{{"command", "small-elements"},
                          {"field", K.label()},
                          {"bound", ejson(B)},
                          {"mode", mode},
                          {"box", box},
                          {"count", r.elements.size()},
                          {"elements", ejson(r.elements)}});
    return 0;
}

int cmd_indecomposables(const Common& c, const std::string& bound) {
    FieldContext K = resolve_field(c.field, c.fields);
    Rational T;
    try {
        T = Rational(bound);
        T.canonicalize();
    } catch (const std::exception&) {
        throw UsageError("--bound: expected a rational trace bound");
    }
    auto v = indecomposables_classify(K, T, c.opt());
    std::cout << v.size() << " indecomposables with trace <= " << T.get_str() << " over " << K.label() << "\n";
    json a = json::array();
    for (const auto& e : v) {
        std::cout << "  " << pretty(e.alpha) << "  norm " << e.norm.get_str() << "  trace " << e.trace.get_str() << "  "
                  << to_string(e.kind) << "\n";
        a.push_back(json{{"alpha", ejson(e.alpha)},
                         {"norm", e.norm.get_str()},
                         {"trace", e.trace.get_str()},
                         {"kind", std::string(to_string(e.kind))}});
    }
    write_out(c.out, json{{"command", "indecomposables"}, {"field", K.label()}, {"trace_bound", T.get_str()}, {"entries", a}});
    return 0;
}

int cmd_dual(const Common& c, const std::string& diag, const std::string& gamma) {
    FieldContext K = resolve_field(c.field, c.fields);
    auto d = element_list(K, diag, "--diag");
    Element g = element_arg(K, gamma, "--gamma");
    auto t = dual_nonrepresentation(d, g, c.opt());
    std::cout << pretty(g) << (t.represented ? " is" : " is not") << " represented by the dual of <";
    for (std::size_t i = 0; i < d.size(); ++i) std::cout << (i ? ", " : "") << pretty(d[i]);
    std::cout << ">\n  cleared form: ";
    for (std::size_t i = 0; i < t.cleared.size(); ++i)
        std::cout << (i ? " + " : "") << "(" << pretty(t.cleared[i]) << ")*x" << i + 1 << "^2";
    std::cout << " = " << pretty(t.cleared_target) << "\n";
    json j{{"command", "dual"},
           {"field", K.label()},
           {"diag", ejson(d)},
           {"gamma", ejson(g)},
           {"cleared", ejson(t.cleared)},
           {"cleared_target", ejson(t.cleared_target)},
           {"represented", t.represented}};
    if (t.vector) {
        std::cout << "  solution:";
        for (const auto& x : *t.vector) std::cout << " " << pretty(x);
        std::cout << "\n";
        j["vector"] = ejson(*t.vector);
    }
    write_out(c.out, j);
    return 0;
}

int cmd_classify_ternary(const Common& c) {
    FieldContext K = resolve_field(c.field, c.fields);
    auto cases = ternary_classification(K, c.opt());
    json a = json::array();
    for (const auto& t : cases) {
        std::cout << "  w13 = " << pretty(t.w13) << ", w23 = " << pretty(t.w23) << ": ";
        if (!t.psd)
            std::cout << "not totally positive semidefinite\n";
        else
            std::cout << to_string(t.cls) << "  det " << pretty(t.det) << "\n";
        a.push_back(json{{"w13", ejson(t.w13)},
                         {"w23", ejson(t.w23)},
                         {"psd", t.psd},
                         {"det", ejson(t.det)},
                         {"class", t.psd ? json(std::string(to_string(t.cls))) : json(nullptr)}});
    }
    write_out(c.out, json{{"command", "classify-ternary"}, {"field", K.label()}, {"cases", a}});
    return 0;
}

CaseMode case_mode_arg(const std::string& s) {
    if (s == "L1") return CaseMode::L1Extension;
    if (s == "L3") return CaseMode::L3Extension;
    if (s == "two") return CaseMode::NonsquarefreeTwo;
    try {
        return parse_case_mode(s);
    } catch (const Error&) {
        throw UsageError("--mode: expected L1, L3, two, L1_extension, L3_extension or nonsquarefree_two");
    }
}

int cmd_case_analysis(const Common& c, const std::string& mode) {
    CaseMode m = case_mode_arg(mode);
    auto r = quartic_case_analysis(m, c.opt());
    std::cout << "mode " << to_string(m) << "\n";
    json j{{"command", "case-analysis"},
           {"mode", std::string(to_string(m))},
           {"det_symbolic", r.det_symbolic},
           {"det_formula", r.det_formula},
           {"det_formula_matches", r.det_formula_matches}};
    if (m == CaseMode::NonsquarefreeTwo) {
        json br = json::array();
        for (const auto& b : r.branches) {
            std::cout << "  " << b.label << ": det = " << b.det << "\n    => " << b.reduced << "  (" << b.conclusion
                      << ")\n";
            br.push_back(json{{"label", b.label},
                              {"gram", b.gram},
                              {"det", b.det},
                              {"reduced", b.reduced},
                              {"conclusion", b.conclusion}});
        }
        j["branches"] = br;
    } else {
        std::cout << "  det = " << r.det_symbolic << "\n";
        json cs = json::array();
        for (const auto& e : r.cases) {
            if (e.status == "not_totally_positive") continue;
            std::cout << "  alpha = " << pretty(e.alpha) << ", beta = " << pretty(e.beta) << ": ";
            json jc{{"alpha", ejson(e.alpha)}, {"beta", ejson(e.beta)}, {"status", e.status}};
            if (e.x_squared) {
                std::cout << "x^2 = " << pretty(*e.x_squared);
                jc["x_squared"] = ejson(*e.x_squared);
            }
            if (e.square_class) {
                std::cout << " = (" << pretty(e.square_class->residual) << ")*(" << pretty(e.square_class->s) << ")^2";
                jc["residual"] = ejson(e.square_class->residual);
                jc["s"] = ejson(e.square_class->s);
            }
            if (e.x) jc["x"] = ejson(*e.x);
            std::cout << "  [" << e.status << "]\n";
            cs.push_back(std::move(jc));
        }
        std::cout << "  residuals:";
        for (const auto& x : r.residuals) std::cout << " " << pretty(x);
        std::cout << "\n";
        j["cases"] = cs;
        j["x_squared"] = ejson(r.x_squared);
        j["residuals"] = ejson(r.residuals);
    }
    std::cout << "  determinant formula " << (r.det_formula_matches ? "matches" : "DOES NOT match") << "\n";
    write_out(c.out, j);
    return r.det_formula_matches ? 0 : 1;
}

int cmd_overlattice(const Common& c) {
    FieldContext K = resolve_field(c.field, c.fields);
    auto t = free_overlattice_test(K, c.opt());
    json j{{"command", "overlattice-test"}, {"field", K.label()}, {"proper_overlattice", t.proper_overlattice}};
    if (t.witness) {
        std::cout << "5+3*sqrt2 = (" << pretty(t.witness->gamma) << ")*(" << pretty(t.witness->t) << ")^2: L3 has a proper "
                  << "classical free overlattice over " << K.label() << "\n";
        j["gamma"] = ejson(t.witness->gamma);
        j["t"] = ejson(t.witness->t);
    } else {
        std::cout << "5+3*sqrt2 is squarefree over " << K.label() << ": no proper classical free overlattice\n";
    }
    write_out(c.out, j);
    return 0;
}

std::vector<long> k_range(long k, long max_k) {
    if (k && max_k) throw UsageError("--k and --max-k are exclusive");
    if (!k && !max_k) throw UsageError("one of --k or --max-k is required");
    std::vector<long> ks;
    if (k) ks.push_back(k);
    for (long i = 3; i <= max_k; ++i) ks.push_back(i);
    return ks;
}

int cmd_cyclotomic(const Common& c, long k, long max_k) {
    int status = 0;
    json a = json::array();
    for (long i : k_range(k, max_k)) {
        try {
            auto r = alpha_beta_verify(i, c.opt());
            std::cout << "k = " << i << ": [F_k:Q] = " << r.degree << ", mu = " << r.mu << ", N(alpha) = " << r.norm_alpha
                      << ", N(beta) = " << r.norm_beta << ", Tr(alpha) = " << r.trace_alpha
                      << ", Tr(beta) = " << r.trace_beta;
            if (r.alpha_indecomposable) std::cout << ", indecomposable";
            std::cout << "\n";
            json jr{{"k", i},
                    {"degree", r.degree},
                    {"mu", r.mu},
                    {"minpoly", minpoly_cos(i).to_string()},
                    {"norm_alpha", r.norm_alpha.get_str()},
                    {"norm_beta", r.norm_beta.get_str()},
                    {"trace_alpha", r.trace_alpha.get_str()},
                    {"trace_beta", r.trace_beta.get_str()},
                    {"ok", true}};
            if (r.alpha_indecomposable) jr["indecomposable"] = *r.alpha_indecomposable && *r.beta_indecomposable;
            a.push_back(jr);
        } catch (const Error& e) {
            if (e.code() == ErrorCode::UnsupportedK) throw UsageError(std::string("--k: ") + e.what());
            std::cout << "k = " << i << ": " << e.what() << "\n";
            a.push_back(json{{"k", i}, {"ok", false}, {"error", e.what()}});
            status = 1;
        }
    }
    write_out(c.out, json{{"command", "cyclotomic"}, {"results", a}});
    return status;
}

int cmd_subfield(const Common& c, long k, long max_k, const std::string& policy) {
    if (policy != "all" && policy != "prime-power") throw UsageError("--policy: expected all or prime-power");
    FieldContext K = resolve_field(c.field, c.fields);
    json a = json::array();
    for (long i : k_range(k, max_k)) {
        if (i < 3) throw UsageError("--k: must be at least 3");
        if (policy == "prime-power" && !prime_power_base(i)) continue;
        if (K.degree() % (mobius_phi(i).phi / 2) != 0) continue;
        auto w = subfield_test(K, i, c.opt());
        std::cout << "F_" << i << (w ? " is" : " is not") << " contained in " << K.label();
        if (w) std::cout << "  (zeta+zeta^-1 = " << pretty(*w) << ")";
        std::cout << "\n";
        json jr{{"k", i}, {"contained", w.has_value()}};
        if (w) jr["generator"] = ejson(*w);
        a.push_back(jr);
    }
    write_out(c.out, json{{"command", "subfield"}, {"field", K.label()}, {"policy", policy}, {"results", a}});
    return 0;
}

int cmd_obstruct(const Common& c, std::size_t pool, const std::string& certificate) {
    FieldContext K = resolve_field(c.field, c.fields);
    if (!certificate.empty()) {
        std::ifstream f(certificate);
        if (!f) throw UsageError("--certificate: cannot read " + certificate);
        std::stringstream ss;
        ss << f.rdbuf();
        bool ok = revalidate(certificate_from_json(K, ss.str()), c.opt());
        std::cout << "certificate " << (ok ? "re-validates" : "FAILS to re-validate") << "\n";
        return ok ? 0 : 1;
    }
    auto cert = obstruction_search(K, pool, c.opt());
    if (!cert) {
        std::cout << "no obstruction certificate within the candidate pool of " << K.label() << "\n";
        write_out(c.out, json{{"command", "obstruct"}, {"field", K.label()}, {"certificate", nullptr}});
        return 0;
    }
    std::cout << "certificate for " << K.label() << ":\n  triple:";
    for (const auto& a : cert->triple) std::cout << " " << pretty(a) << " (norm " << K.norm(a).get_str() << ")";
    std::cout << "\n  gamma: " << pretty(cert->gamma) << " (norm " << K.norm(cert->gamma).get_str()
              << "), not represented by the dual\n";
    write_out(c.out, certificate_to_json(*cert) + "\n");
    return 0;
}

int cmd_scan(const Common& c, ScanOptions so, const std::string& command, bool no_unit_filter) {
    if (c.fields.empty()) throw UsageError("--fields is required");
    so.unit_filter = !no_unit_filter;
    so.enumeration = c.opt();
    FieldTable t = ingest_fields(c.fields);
    int status = 0;
    if (command == "small") {
        auto s = scan_small_condition(t, so);
        for (const auto& v : s.verdicts) {
            std::cout << v.label << ": " << v.status;
            for (const auto& b : v.bounds)
                if (b.exceptional) std::cout << "  exceptional for B=" << b.bound << " (omega = " << pretty(*b.witness) << ")";
            if (!v.error.empty()) {
                std::cout << "  " << v.error;
                status = 1;
            }
            std::cout << "\n";
        }
        for (const char* b : {"3lambda", "6"}) {
            std::cout << "exceptional for B=" << b << ":";
            for (const auto& l : s.exceptional(b)) std::cout << " " << l;
            std::cout << "\n";
        }
        write_out(c.out, report_json(s));
    } else if (command == "obstruct") {
        auto s = scan_obstructions(t, so);
        for (const auto& v : s.verdicts) {
            std::cout << v.label << ": " << v.verdict;
            if (v.certificate) std::cout << "  (gamma = " << pretty(v.certificate->gamma) << ")";
            if (v.verdict == "error") {
                std::cout << "  " << v.error;
                status = 1;
            }
            std::cout << "\n";
        }
        write_out(c.out, report_json(s));
    } else {
        throw UsageError("--command: expected small or obstruct");
    }
    return status;
}

int cmd_verify_identities(const Common& c) {
    auto r = verify_identities();
    for (const auto& i : r.identities) std::cout << (i.ok ? "ok   " : "FAIL ") << i.name << ": " << i.lhs << "\n";
    std::printf("%s  max of the Vandermonde product on [-1,1]^4: %.12f (expected %.12f)\n", r.max_ok ? "ok  " : "FAIL",
                r.refined_max, r.expected_max);
    std::printf("%s  disc bound at house sqrt(6+3sqrt2): %.4f = %s\n", r.bound_ok ? "ok  " : "FAIL", r.bound_value,
                r.bound_exact.c_str());
    write_out(c.out, report_json(r));
    return r.ok() ? 0 : 1;
}

int cmd_sum_of_squares(const Common& c, const std::string& element, int n) {
    FieldContext K = resolve_field(c.field, c.fields);
    Element g = element_arg(K, element, "--element");
    if (n < 1) throw UsageError("--squares: must be positive");
    auto r = sum_of_squares_test(g, n, c.opt());
    json j{{"command", "sum-of-squares"}, {"field", K.label()}, {"element", ejson(g)}, {"squares", n}};
    if (r) {
        std::cout << pretty(g) << " =";
        for (std::size_t i = 0; i < r->size(); ++i) std::cout << (i ? " + " : " ") << "(" << pretty((*r)[i]) << ")^2";
        std::cout << "\n";
        j["terms"] = ejson(*r);
    } else {
        std::cout << pretty(g) << " is not a sum of " << n << " squares\n";
        j["terms"] = nullptr;
    }
    write_out(c.out, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Universal ternary quadratic lattices over totally real fields"};
    app.require_subcommand(1);
    Common c;

    std::string bound, mode = "square", diag, gamma, element, policy = "all", certificate, command = "small";
    long k = 0, max_k = 0;
    std::size_t pool = 0;
    int squares = 4;
    bool no_unit_filter = false;
    ScanOptions so;
    std::string max_disc = "20000";

    auto* small = app.add_subcommand("small-elements", "integers omega with omega^2 <= B (or 0 <= omega <= B)");
    add_common(small, c);
    small->add_option("--bound", bound, "bound B")->required();
    small->add_option("--mode", mode, "square or interval");

    auto* indec = app.add_subcommand("indecomposables", "classify indecomposables up to a trace bound");
    add_common(indec, c);
    indec->add_option("--bound", bound, "trace bound")->required();

    auto* dual = app.add_subcommand("dual", "is gamma represented by the dual of a diagonal lattice");
    add_common(dual, c);
    dual->add_option("--diag", diag, "comma-separated diagonal entries")->required();
    dual->add_option("--gamma", gamma, "target")->required();

    auto* ternary = app.add_subcommand("classify-ternary", "classify the nine ternary Gram cases");
    add_common(ternary, c);

    auto* cases = app.add_subcommand("case-analysis", "4x4 determinant case analyses");
    add_common(cases, c, false);
    cases->add_option("--mode", mode, "L1, L3 or two")->required();

    auto* over = app.add_subcommand("overlattice-test", "proper classical free overlattices of L3");
    add_common(over, c);

    auto* cyclo = app.add_subcommand("cyclotomic", "alpha_k, beta_k against the closed forms");
    add_common(cyclo, c, false);
    cyclo->add_option("--k", k, "single k");
    cyclo->add_option("--max-k", max_k, "all 3 <= k <= max");

    auto* sub = app.add_subcommand("subfield", "search the field for zeta_k + zeta_k^-1");
    add_common(sub, c);
    sub->add_option("--k", k, "single k");
    sub->add_option("--max-k", max_k, "all 3 <= k <= max");
    sub->add_option("--policy", policy, "all or prime-power");

    auto* obs = app.add_subcommand("obstruct", "search for an obstruction certificate");
    add_common(obs, c);
    obs->add_option("--pool", pool, "candidate pool cap (0 = whole pool)");
    obs->add_option("--certificate", certificate, "re-validate a certificate file instead of searching");

    auto* scan = app.add_subcommand("scan", "scan a field table");
    add_common(scan, c, false);
    scan->add_option("--max-disc", max_disc, "discriminant cap");
    scan->add_option("--command", command, "small or obstruct");
    scan->add_option("--threads", so.threads, "worker threads (0 = all cores)");
    scan->add_option("--pool", so.pool_size, "obstruction pool cap");
    scan->add_flag("--no-unit-filter", no_unit_filter, "include fields with U+ != U^2");
    scan->add_flag("--deterministic", so.deterministic, "omit timings so reports are byte-reproducible");

    auto* ids = app.add_subcommand("verify-identities", "sum-of-squares identities and discriminant bound");
    add_common(ids, c, false);

    auto* sos = app.add_subcommand("sum-of-squares", "write an element as a sum of squares");
    add_common(sos, c);
    sos->add_option("--element", element, "element")->required();
    sos->add_option("--squares", squares, "number of squares");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        if (*small) return cmd_small_elements(c, bound, mode);
        if (*indec) return cmd_indecomposables(c, bound);
        if (*dual) return cmd_dual(c, diag, gamma);
        if (*ternary) return cmd_classify_ternary(c);
        if (*cases) return cmd_case_analysis(c, mode);
        if (*over) return cmd_overlattice(c);
        if (*cyclo) return cmd_cyclotomic(c, k, max_k);
        if (*sub) return cmd_subfield(c, k, max_k, policy);
        if (*obs) return cmd_obstruct(c, pool, certificate);
        if (*scan) {
            try {
                so.disc_cap = Integer(max_disc);
            } catch (const std::exception&) {
                throw UsageError("--max-disc: expected an integer");
            }
            return cmd_scan(c, so, command, no_unit_filter);
        }
        if (*ids) return cmd_verify_identities(c);
        if (*sos) return cmd_sum_of_squares(c, element, squares);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include "trqf/fieldscan.hpp"

#include "json_util.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>
#include <tuple>

namespace trqf {

using nlohmann::json;
using namespace detail;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool first_nonzero_positive(const Element& a) {
    for (const auto& c : a.coords())
        if (c != 0) return c > 0;
    return true;
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
    unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, jobs)));
}

// Runs f(i) for i in [0, n) on a bounded pool; f must not throw.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F f) {
    unsigned w = worker_count(threads, n);
    if (w <= 1) {
        for (std::size_t i = 0; i < n; ++i) f(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < w; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++) f(i);
        });
    for (auto& th : pool) th.join();
}

// Records with disc <= cap in (disc, label) order.
std::vector<const FieldRecord*> selected(const FieldTable& table, const Integer& cap) {
    std::vector<const FieldRecord*> out;
    for (const auto& r : table.records())
        if (r.disc <= cap) out.push_back(&r);
    std::stable_sort(out.begin(), out.end(), [](const FieldRecord* a, const FieldRecord* b) {
        if (a->disc != b->disc) return a->disc < b->disc;
        return a->label < b->label;
    });
    return out;
}

json units_json(const std::optional<UnitSquareStatus>& u) {
    if (!u) return nullptr;
    return json{{"holds", u->holds}, {"source", u->source}};
}

json options_json(const ScanOptions& o) {
    json j{{"disc_cap", integer_json(o.disc_cap)},
           {"unit_filter", o.unit_filter},
           {"ceiling", o.enumeration.ceiling},
           {"pool_size", o.pool_size}};
    if (!o.deterministic) j["threads"] = worker_count(o.threads, 1u << 20);
    return j;
}

}  // namespace

UnitSquareStatus unit_square_status(const FieldContext& K) {
    const auto& r = K.record();
    if (r.h > 0 && r.h_plus > 0) return {r.h_plus == r.h, "h_plus"};
    return {units_realize_all_signatures(K), "signatures"};
}

bool in_q_sqrt2(const Element& a) {
    FieldContext K = a.field();
    auto s = K.sqrt2();
    if (!s) throw Error(ErrorCode::InvalidArgument, K.label() + ": field record carries no sqrt2");
    const Element one = K.one();
    const auto& u = one.coords();
    const auto& v = s->coords();
    const auto& w = a.coords();
    const int d = K.degree();
    // Solve w = x u + y v on a pair of rows with nonzero minor, then check the rest.
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            Integer m = u[i] * v[j] - u[j] * v[i];
            if (m == 0) continue;
            Rational x(w[i] * v[j] - w[j] * v[i], m), y(u[i] * w[j] - u[j] * w[i], m);
            x.canonicalize();
            y.canonicalize();
            for (int k = 0; k < d; ++k)
                if (x * u[k] + y * v[k] != Rational(w[k])) return false;
            return true;
        }
    return false;
}

double quartic_disc_bound(double house) { return 4096.0 / 3125.0 * std::pow(house, 12); }

// ---------------------------------------------------------------- small condition

SmallConditionVerdict small_condition(const FieldRecord& rec, const ScanOptions& opt) {
    auto t0 = Clock::now();
    SmallConditionVerdict v;
    v.label = rec.label;
    v.disc = rec.disc;
    v.h = rec.h;
    v.h_plus = rec.h_plus;
    try {
        FieldContext K = FieldContext::load(rec);
        auto s2 = K.sqrt2();
        if (!s2) {
            v.status = "not_applicable";
            v.seconds = seconds_since(t0);
            return v;
        }
        v.units = unit_square_status(K);
        if (opt.unit_filter && !v.units->holds) {
            v.status = "filtered";
            v.seconds = seconds_since(t0);
            return v;
        }
        Element lam = K.from_int(2) + *s2;
        const std::vector<std::pair<std::string, Element>> bounds = {{"3lambda", K.from_int(3) * lam},
                                                                     {"6", K.from_int(6)}};
        for (const auto& [name, B] : bounds) {
            BoundResult b;
            b.bound = name;
            b.value = B;
            auto rep = enumerate_dominated_report({B, DominanceMode::SquareDominated}, opt.enumeration);
            b.solutions = rep.elements.size();
            b.box = rep.box;
            for (const auto& w : rep.elements) {
                if (in_q_sqrt2(w)) continue;
                if (!b.witness || (!first_nonzero_positive(*b.witness) && first_nonzero_positive(w))) b.witness = w;
            }
            b.exceptional = b.witness.has_value();
            if (b.witness) {
                const Element& w = *b.witness;
                if (!K.totally_nonnegative(B - w * w) || in_q_sqrt2(w))
                    throw Error(ErrorCode::ValidationError, rec.label + ": witness does not re-verify");
                b.witness_house = K.house(w, Rational(1, 1 << 20)).hi.get_d();
                Poly f = K.charpoly(w);
                b.generates = gcd(f, f.derivative()).degree() == 0;
                if (*b.generates && K.degree() == 4)
                    b.disc_bound_ok = K.disc().get_d() <= quartic_disc_bound(b.witness_house);
            }
            v.bounds.push_back(std::move(b));
        }
        v.status = "checked";
    } catch (const Error& e) {
        v.status = "error";
        v.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    v.seconds = seconds_since(t0);
    return v;
}

std::vector<std::string> SmallConditionScan::exceptional(const std::string& bound) const {
    std::vector<std::string> out;
    for (const auto& v : verdicts)
        for (const auto& b : v.bounds)
            if (b.bound == bound && b.exceptional) out.push_back(v.label);
    return out;
}

SmallConditionScan scan_small_condition(const FieldTable& table, const ScanOptions& opt) {
    auto t0 = Clock::now();
    auto recs = selected(table, opt.disc_cap);
    SmallConditionScan s;
    s.options = opt;
    s.verdicts.resize(recs.size());
    parallel_for(recs.size(), opt.threads, [&](std::size_t i) { s.verdicts[i] = small_condition(*recs[i], opt); });
    s.seconds = seconds_since(t0);
    return s;
}

// ---------------------------------------------------------------- obstructions

ObstructionVerdict obstruction_verdict(const FieldRecord& rec, const ScanOptions& opt) {
    auto t0 = Clock::now();
    ObstructionVerdict v;
    v.label = rec.label;
    v.disc = rec.disc;
    v.h = rec.h;
    v.h_plus = rec.h_plus;
    try {
        FieldContext K = FieldContext::load(rec);
        if (K.degree() != 4) {
            v.verdict = "not_applicable";
        } else {
            v.units = unit_square_status(K);
            if (!v.units->holds) {
                v.verdict = "excluded_unit_signs";
            } else if (rec.h == 1) {
                v.verdict = "covered_free";
            } else {
                v.certificate = obstruction_search(K, opt.pool_size, opt.enumeration);
                v.verdict = v.certificate ? "certificate" : "no_certificate";
            }
        }
    } catch (const Error& e) {
        v.verdict = e.code() == ErrorCode::PoolExhausted ? "pool_exhausted" : "error";
        v.error = std::string(to_string(e.code())) + ": " + e.what();
    }
    v.seconds = seconds_since(t0);
    return v;
}

ObstructionScan scan_obstructions(const FieldTable& table, const ScanOptions& opt) {
    auto t0 = Clock::now();
    auto recs = selected(table, opt.disc_cap);
    ObstructionScan s;
    s.options = opt;
    s.verdicts.resize(recs.size());
    parallel_for(recs.size(), opt.threads, [&](std::size_t i) { s.verdicts[i] = obstruction_verdict(*recs[i], opt); });
    s.seconds = seconds_since(t0);
    return s;
}

// ---------------------------------------------------------------- identities

bool IdentityReport::ok() const {
    return max_ok && bound_ok &&
           std::all_of(identities.begin(), identities.end(), [](const IdentityCheck& c) { return c.ok; });
}

IdentityReport verify_identities() {
    IdentityReport r;
    FieldContext K = FieldContext::q_sqrt2();
    const std::vector<std::string> names = {"x", "y", "z"};
    MPoly zero = MPoly::constant(K, names, K.zero());
    auto c = [&](const char* s) { return zero.constant(parse_element(K, s)); };
    MPoly x = zero.variable(0), y = zero.variable(1), z = zero.variable(2);
    auto sq = [](const MPoly& p) { return p * p; };

    MPoly q1 = x * x + y * y + c("2+sqrt2") * z * z;
    MPoly q2 = x * x + c("2+sqrt2") * y * y + c("2") * y * z + c("2-sqrt2") * z * z;
    MPoly q3 = x * x + c("2+sqrt2") * y * y + c("2") * y * z + c("3") * z * z;
    MPoly q3p = x * x + c("2-sqrt2") * y * y + c("2") * y * z + c("3") * z * z;
    const std::vector<std::tuple<std::string, MPoly, MPoly>> ids = {
        {"2Q1 as four squares", c("2") * q1, sq(c("sqrt2") * x) + sq(c("sqrt2") * y) + sq(c("1+sqrt2") * z) + sq(z)},
        {"2Q2 as three squares", c("2") * q2, sq(c("sqrt2") * x) + sq(c("1+sqrt2") * y + c("-1+sqrt2") * z) + sq(y + z)},
        {"2Q3 as four squares", c("2") * q3,
         sq(c("sqrt2") * x) + sq(c("1+sqrt2") * y) + sq(y + c("2") * z) + sq(c("sqrt2") * z)},
        {"2Q3' as four squares", c("2") * q3p,
         sq(c("sqrt2") * x) + sq(c("1-sqrt2") * y) + sq(y + c("2") * z) + sq(c("sqrt2") * z)},
    };
    for (const auto& [name, lhs, rhs] : ids) {
        IdentityCheck ch{name, lhs.to_string(), rhs.to_string(), lhs == rhs};
        if (!ch.ok) throw Error(ErrorCode::IdentityMismatch, name + ": " + ch.lhs + " != " + ch.rhs);
        r.identities.push_back(std::move(ch));
    }

    // max of prod_{i<j} |x_j - x_i| on [-1, 1]^4
    auto g = [](const std::array<double, 4>& p) {
        double v = 1;
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) v *= std::abs(p[j] - p[i]);
        return v;
    };
    r.expected_max = 64.0 * std::pow(5.0, -2.5);
    const int N = 21;
    std::array<double, 4> best{}, p{};
    double bv = -1;
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            for (int cc = 0; cc < N; ++cc)
                for (int d = 0; d < N; ++d) {
                    p = {-1 + 2.0 * a / (N - 1), -1 + 2.0 * b / (N - 1), -1 + 2.0 * cc / (N - 1), -1 + 2.0 * d / (N - 1)};
                    double val = g(p);
                    if (val > bv) {
                        bv = val;
                        best = p;
                    }
                }
    r.grid_max = bv;
    for (double h = 2.0 / (N - 1); h > 1e-14;) {
        bool moved = false;
        for (int i = 0; i < 4; ++i)
            for (double dir : {-1.0, 1.0}) {
                auto q = best;
                q[i] = std::clamp(q[i] + dir * h, -1.0, 1.0);
                double val = g(q);
                if (val > bv) {
                    bv = val;
                    best = q;
                    moved = true;
                }
            }
        if (!moved) h /= 2;
    }
    r.refined_max = bv;
    r.maximizer.assign(best.begin(), best.end());
    std::sort(r.maximizer.begin(), r.maximizer.end());
    const double s5 = 1 / std::sqrt(5.0);
    r.critical_value = g({-1, -s5, s5, 1});
    const std::array<double, 4> crit = {-1, -s5, s5, 1};
    bool near = true;
    for (int i = 0; i < 4; ++i) near = near && std::abs(r.maximizer[i] - crit[i]) < 1e-6;
    r.max_ok = near && std::abs(r.refined_max - r.expected_max) <= 1e-9 &&
               std::abs(r.critical_value - r.expected_max) <= 1e-9 && r.grid_max <= r.expected_max + 1e-12;

    // 2^12/5^5 house^12 with house^2 = 6 + 3 sqrt2
    Element b = Rational(4096, 3125) * parse_element(K, "6+3*sqrt2").pow(6);
    r.bound_exact = pretty(b);
    auto pb = K.to_power_basis(b);
    auto ps = K.to_power_basis(*K.sqrt2());
    Rational coef = pb[1] / ps[1];
    r.bound_value = Rational(pb[0] - coef * ps[0]).get_d() + coef.get_d() * std::sqrt(2.0);
    r.bound_ok = std::abs(r.bound_value - 1513496.96) <= 0.01;
    return r;
}

// ---------------------------------------------------------------- reports

std::string report_json(const SmallConditionScan& s) {
    json verdicts = json::array();
    for (const auto& v : s.verdicts) {
        json bounds = json::array();
        for (const auto& b : v.bounds) {
            json jb{{"bound", b.bound},
                    {"value", element_json(b.value)},
                    {"solutions", b.solutions},
                    {"box", box_json(b.box)},
                    {"exceptional", b.exceptional}};
            if (b.witness) {
                jb["witness"] = element_json(*b.witness);
                jb["witness_house"] = b.witness_house;
                jb["generates"] = *b.generates;
                jb["disc_bound_ok"] = b.disc_bound_ok ? json(*b.disc_bound_ok) : json(nullptr);
            }
            bounds.push_back(std::move(jb));
        }
        json jv{{"label", v.label},   {"disc", integer_json(v.disc)}, {"h", v.h},
                {"h_plus", v.h_plus}, {"status", v.status},           {"units", units_json(v.units)},
                {"bounds", bounds}};
        if (!v.error.empty()) jv["error"] = v.error;
        if (!s.options.deterministic) jv["seconds"] = v.seconds;
        verdicts.push_back(std::move(jv));
    }
    json meta = options_json(s.options);
    meta["command"] = "small_condition";
    meta["fields"] = s.verdicts.size();
    if (!s.options.deterministic) meta["seconds"] = s.seconds;
    json j{{"metadata", meta},
           {"verdicts", verdicts},
           {"exceptional", {{"3lambda", s.exceptional("3lambda")}, {"6", s.exceptional("6")}}}};
    return j.dump(2) + "\n";
}

std::string report_json(const ObstructionScan& s) {
    json verdicts = json::array();
    for (const auto& v : s.verdicts) {
        json jv{{"label", v.label},   {"disc", integer_json(v.disc)}, {"h", v.h},
                {"h_plus", v.h_plus}, {"verdict", v.verdict},         {"units", units_json(v.units)}};
        if (v.certificate) jv["certificate"] = json::parse(certificate_to_json(*v.certificate));
        if (!v.error.empty()) jv["error"] = v.error;
        if (!s.options.deterministic) jv["seconds"] = v.seconds;
        verdicts.push_back(std::move(jv));
    }
    json meta = options_json(s.options);
    meta["command"] = "obstruct";
    meta["fields"] = s.verdicts.size();
    if (!s.options.deterministic) meta["seconds"] = s.seconds;
    return json{{"metadata", meta}, {"verdicts", verdicts}}.dump(2) + "\n";
}

std::string report_json(const IdentityReport& r) {
    json ids = json::array();
    for (const auto& c : r.identities) ids.push_back(json{{"name", c.name}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"ok", c.ok}});
    json j{{"metadata", {{"command", "verify_identities"}}},
           {"identities", ids},
           {"maximum",
            {{"expected", r.expected_max},
             {"grid", r.grid_max},
             {"refined", r.refined_max},
             {"critical_value", r.critical_value},
             {"maximizer", r.maximizer},
             {"ok", r.max_ok}}},
           {"disc_bound", {{"exact", r.bound_exact}, {"value", r.bound_value}, {"ok", r.bound_ok}}},
           {"ok", r.ok()}};
    return j.dump(2) + "\n";
}

}  // namespace trqf

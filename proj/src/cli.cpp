#include "pretsums/cli.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/circle.hpp"
#include "pretsums/errors.hpp"
#include "pretsums/expsum.hpp"
#include "pretsums/oscint.hpp"
#include "pretsums/pretentious.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace pretsums {

using arith::i64;
using arith::u64;
using Json = nlohmann::ordered_json;

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

double to_double(const std::string& s, const std::string& ctx) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        throw ParseError("bad number '" + s + "' in '" + ctx + "'");
    }
}

i64 to_i64(const std::string& s, const std::string& ctx) {
    const double v = to_double(s, ctx);
    if (v != std::floor(v) || std::fabs(v) > 9.0e15) throw ParseError("expected an integer, got '" + s + "' in '" + ctx + "'");
    return static_cast<i64>(v);
}

u64 to_u64(const std::string& s, const std::string& ctx) {
    const i64 v = to_i64(s, ctx);
    if (v < 0) throw ParseError("expected a non-negative integer, got '" + s + "' in '" + ctx + "'");
    return static_cast<u64>(v);
}

// key=value arguments; every key must be consumed
class Args {
public:
    explicit Args(const std::vector<std::string>& items) {
        for (const auto& it : items) {
            const auto eq = it.find('=');
            if (eq == std::string::npos || eq == 0) throw ParseError("expected key=value, got '" + it + "'");
            const auto key = it.substr(0, eq);
            if (kv_.count(key)) throw ParseError("duplicate argument '" + key + "'");
            kv_[key] = it.substr(eq + 1);
        }
    }
    bool has(const std::string& k) const { return kv_.count(k) != 0; }
    std::string str(const std::string& k) {
        used_.insert(k);
        const auto it = kv_.find(k);
        if (it == kv_.end()) throw ParseError("missing argument '" + k + "='");
        return it->second;
    }
    std::string str(const std::string& k, const std::string& def) { return has(k) ? str(k) : def; }
    double real(const std::string& k) { return to_double(str(k), k + "=" + kv_[k]); }
    double real(const std::string& k, double def) { return has(k) ? real(k) : def; }
    i64 integer(const std::string& k) { return to_i64(str(k), k + "=" + kv_[k]); }
    i64 integer(const std::string& k, i64 def) { return has(k) ? integer(k) : def; }
    u64 count(const std::string& k) { return to_u64(str(k), k + "=" + kv_[k]); }
    u64 count(const std::string& k, u64 def) { return has(k) ? count(k) : def; }
    MultFunc func(const std::string& k) { return parse_multfunc(str(k)); }
    void finish() const {
        for (const auto& [k, v] : kv_)
            if (!used_.count(k)) throw ParseError("unknown argument '" + k + "=" + v + "'");
    }

private:
    std::map<std::string, std::string> kv_;
    std::set<std::string> used_;
};

Json cjson(cplx v) { return Json{{"re", v.real()}, {"im", v.imag()}}; }

Json frame_json(const PretentiousFrame& fr) {
    return Json{{"psi", fr.psi.label()}, {"r", fr.r}, {"t", fr.t}, {"score", fr.score}};
}

Json arc_json(const ArcDecomposition& arc) {
    Json j{{"alpha", arc.alpha}, {"a", arc.a},         {"q", arc.q},   {"beta", arc.beta},
           {"major", arc.major}, {"Q", arc.Q},         {"Q1", arc.Q1}, {"Q3", nullptr},
           {"eps", arc.eps},     {"theorem1_range", arc.theorem1_range}};
    if (arc.Q3) j["Q3"] = *arc.Q3;
    return j;
}

Json prediction_json(const PredictionReport& rep) {
    Json terms = Json::array();
    for (const auto& t : rep.terms)
        terms.push_back(Json{{"psi", t.psi},
                             {"r", t.r},
                             {"t", t.t},
                             {"score", t.score},
                             {"included", t.included},
                             {"coefficient", cjson(t.coefficient)},
                             {"value", cjson(t.value)}});
    Json j{{"x", rep.x}, {"predicted", cjson(rep.predicted)}, {"oracle", nullptr}, {"err", rep.err}};
    if (rep.oracle) j["oracle"] = cjson(*rep.oracle);
    j["abs_discrepancy"] = rep.abs_discrepancy();
    j["rel_discrepancy"] = rep.rel_discrepancy();
    j["terms"] = terms;
    return j;
}

SievePtr sieve_for(u64 n) { return make_sieve(std::max<u64>(n, 16)); }

std::string fmt12(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_scalar(const Json& v) {
    if (v.is_null()) return "";
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer() || v.is_number_unsigned()) return v.dump();
    if (v.is_number()) return fmt12(v.get<double>());
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s.find_first_of(",\"\n") == std::string::npos) return s;
        std::string q = "\"";
        for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
        return q + "\"";
    }
    return "\"" + v.dump() + "\"";
}

void flatten(const Json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
    } else if (v.is_array()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "." + std::to_string(i), out);
    } else {
        out.emplace_back(prefix, csv_scalar(v));
    }
}

// arrays of flat objects become a table; anything else becomes key,value rows
std::string to_csv(const Json& j) {
    std::ostringstream os;
    if (j.is_array()) {
        if (j.empty()) return "";
        std::vector<std::pair<std::string, std::string>> head;
        flatten(j[0], "", head);
        for (std::size_t i = 0; i < head.size(); ++i) os << (i ? "," : "") << head[i].first;
        os << "\n";
        for (const auto& row : j) {
            std::vector<std::pair<std::string, std::string>> cells;
            flatten(row, "", cells);
            for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i].second;
            os << "\n";
        }
        return os.str();
    }
    std::vector<std::pair<std::string, std::string>> cells;
    flatten(j, "", cells);
    os << "key,value\n";
    for (const auto& [k, v] : cells) os << k << "," << v << "\n";
    return os.str();
}

// ---- subcommands ---------------------------------------------------------------------------------

Json cmd_expsum(const std::string& mode, Args& a) {
    if (mode == "scan") {
        const auto f = a.func("f");
        const u64 x = a.count("x"), grid = a.count("grid", 256);
        const double eps = a.real("eps", 0.1);
        const u64 maxc = a.count("maxcond", 12);
        a.finish();
        const auto sv = sieve_for(x);
        Json rows = Json::array();
        for (const auto& r : expsum_scan(f, x, grid, *sv, eps, maxc))
            rows.push_back(Json{{"alpha", r.alpha},
                                {"R_abs", r.R_abs},
                                {"regime", r.major ? "major" : "minor"},
                                {"M_abs", r.M_abs},
                                {"E_abs", r.E_abs}});
        return rows;
    }
    if (mode != "direct" && mode != "predict") throw ParseError("unknown expsum mode '" + mode + "'");
    const auto f = a.func("f");
    const double alpha = parse_alpha(a.str("alpha"));
    const u64 x = a.count("x");
    PredictOptions opt;
    opt.J = static_cast<int>(a.integer("J", 3));
    opt.eps = a.real("eps", 0.1);
    std::optional<double> qmax;
    if (a.has("qmax")) qmax = a.real("qmax");
    a.finish();
    const auto sv = sieve_for(x);
    const auto arc = classify_alpha(alpha, static_cast<double>(x), opt.eps, qmax);
    if (mode == "direct") {
        const cplx R = direct_sum(f, alpha, x, *sv);
        return Json{{"x", x}, {"alpha", alpha}, {"R", cjson(R)}, {"R_abs", std::abs(R)}, {"arc", arc_json(arc)}};
    }
    const auto rep = predict_theorem1(f, arc.a, arc.q, arc.beta, x, *sv, opt);
    Json j{{"alpha", alpha}, {"arc", arc_json(arc)}};
    const Json pj = prediction_json(rep);
    for (auto it = pj.begin(); it != pj.end(); ++it) j[it.key()] = it.value();
    return j;
}

Json cmd_pretend(Args& a) {
    const auto f = a.func("f");
    const u64 x = a.count("x"), q = a.count("q", 1);
    const int J = static_cast<int>(a.integer("J", 3));
    a.finish();
    const auto sv = sieve_for(x);
    Json frames = Json::array();
    for (const auto& fr : select_frames(f, static_cast<double>(x), q, J, *sv)) {
        auto j = frame_json(fr);
        j["distance"] = pretentious_distance(f, fr.psi, fr.t, 1.0, static_cast<double>(x), *sv);
        frames.push_back(j);
    }
    return Json{{"x", x}, {"q", q}, {"J", J}, {"frames", frames}};
}

Json cmd_oscint(Args& a) {
    const double x = a.real("x"), beta = a.real("beta", 0.0), t = a.real("t", 0.0);
    a.finish();
    if (!(x > 0.0)) throw DomainError("oscint needs x > 0");
    const auto r = osc_integral(x, beta, t);
    return Json{{"re", r.value.real()}, {"im", r.value.imag()}, {"bound", osc_bound(x, beta, t)}, {"method", r.method}};
}

Json triple_json(const TripleProblem& prob, const TripleOptions& opt, const SieveTable& sieve) {
    const auto rep = predict_triples(prob, sieve, opt);
    Json ep = Json::array();
    for (const auto& lf : rep.Ep) ep.push_back(Json{{"p", lf.p}, {"e", lf.e}, {"value", cjson(lf.value)}});
    Json j{{"oracle", cjson(rep.oracle)},
           {"oracle_density", rep.oracle_density},
           {"predicted_density", cjson(rep.predicted_density)},
           {"realform_density", nullptr},
           {"z", rep.z},
           {"factors", Json{{"Einf", cjson(rep.Einf)}, {"Ep", ep}, {"delta_principal", rep.delta_principal}}},
           {"means", Json{{"F_l", cjson(rep.mean_Fl)}, {"G_l", cjson(rep.mean_Gl)}, {"H_l", cjson(rep.mean_Hl)}}},
           {"frames", Json{{"f", frame_json(rep.frame_f)}, {"g", frame_json(rep.frame_g)}, {"h", frame_json(rep.frame_h)}}}};
    if (rep.realform_density) j["realform_density"] = *rep.realform_density;
    return j;
}

TripleOptions triple_options(Args& a) {
    TripleOptions opt;
    if (a.has("z")) opt.z = a.real("z");
    opt.max_conductor = a.count("maxcond", 12);
    const auto frames = a.str("frames", "auto");
    if (frames != "auto" && frames != "trivial") throw ParseError("frames must be auto or trivial, got '" + frames + "'");
    opt.trivial_frames = frames == "trivial";
    return opt;
}

Json cmd_triples(Args& a) {
    TripleProblem prob{a.func("f"), a.func("g"), a.func("h"), a.integer("a", 1), a.integer("b", 1), a.integer("c", 1),
                       a.count("x"), TripleMode::linear};
    const auto opt = triple_options(a);
    a.finish();
    const auto sv = sieve_for(prob.x);
    return triple_json(prob, opt, *sv);
}

Json cmd_partition(Args& a) {
    TripleProblem prob{a.func("f"), a.func("g"), a.func("h"), 1, 1, 1, a.count("N"), TripleMode::partition};
    const auto opt = triple_options(a);
    a.finish();
    const auto sv = sieve_for(prob.x);
    return triple_json(prob, opt, *sv);
}

Json cmd_constants(Args& a) {
    const u64 P = a.count("P", 1000000);
    a.finish();
    const auto sv = sieve_for(P);
    const auto tab = extremal_table(*sv, P);
    const auto k = cor2_constants();
    auto ext = [](const ExtremalCase& c) { return Json{{"P", c.P}, {"t", c.t}, {"value", c.value}}; };
    return Json{{"delta0", delta0()},
                {"kappa", k.kappa},
                {"kappa_prime", k.kappa_prime},
                {"C2_product", tab.c2_product},
                {"C2_product_limit", P},
                {"eight_forty_fifths", tab.eight_forty_fifths},
                {"p3_delta0_value", tab.p3_value},
                {"extremal_plus", ext(tab.two_plus_one_minus)},
                {"extremal_minus", ext(tab.two_minus_one_plus)},
                {"mixed_max", tab.mixed_max},
                {"Einf_1_1_m1", archimedean_E(1, 1, -1, 0.0, 0.0, 0.0).real()}};
}

Json cmd_arcs(Args& a) {
    const auto f = a.func("f");
    const double alpha = parse_alpha(a.str("alpha"));
    const u64 x = a.count("x");
    const double eps = a.real("eps", 0.1);
    std::optional<double> qmax;
    if (a.has("qmax")) qmax = a.real("qmax");
    const u64 maxc = a.count("maxcond", 12);
    a.finish();
    const auto sv = sieve_for(x);
    const auto s = arc_decompose_Rf(f, alpha, x, *sv, eps, maxc, qmax);
    const auto b = bound_report(f, alpha, x, *sv, eps);
    return Json{{"x", x},
                {"arc", arc_json(s.arc)},
                {"frame", frame_json(s.frame)},
                {"R", cjson(s.R)},
                {"M", cjson(s.M)},
                {"E", cjson(s.E)},
                {"bounds", Json{{"bound_11", b.bound_11},
                                {"bound_12", b.bound_12},
                                {"bound_12b", b.bound_12b},
                                {"ratio_11", b.ratio_11},
                                {"ratio_12", b.ratio_12},
                                {"ratio_12b", b.ratio_12b}}}};
}

Json cmd_energy(Args& a) {
    const auto f = a.func("f");
    const u64 x = a.count("x");
    const i64 grid = a.integer("grid", 0);
    const double eps = a.real("eps", 0.1);
    const u64 check = a.count("check", 0);
    const double threshold = a.real("threshold", 0.25);
    a.finish();
    const u64 limit = std::max(x, check * check);
    const auto sv = sieve_for(limit);
    const auto r = minor_arc_energy(f, x, *sv, grid, eps);
    Json j{{"x", r.x},
           {"grid", r.grid},
           {"parseval", r.parseval},
           {"grid_total", r.grid_total},
           {"grid_minor", r.grid_minor},
           {"major_exact", r.major_exact},
           {"minor_exact", r.minor_exact},
           {"minor_ratio", r.minor_ratio()},
           {"major_arcs", r.arcs},
           {"brudern", nullptr}};
    if (check > 0) {
        const auto b = brudern_check(f, check, threshold, *sv);
        j["brudern"] = Json{{"x", check},
                            {"psi", b.psi.label()},
                            {"t", b.t},
                            {"distance_x", b.distance_x},
                            {"distance_x2", b.distance_x2},
                            {"increment", b.increment},
                            {"bounded", b.bounded}};
    }
    return j;
}

Json cmd_twisted(Args& a) {
    const auto f = a.func("f");
    const u64 q = a.count("q");
    if (q == 0) throw DomainError("period q must be positive");
    const auto h = parse_periodic(a.str("h"), q);
    const u64 x = a.count("x");
    PredictOptions opt;
    opt.J = static_cast<int>(a.integer("J", 3));
    a.finish();
    const auto sv = sieve_for(x);
    auto j = prediction_json(predict_twisted(f, h, x, *sv, opt));
    j["period"] = h.period;
    return j;
}

}  // namespace

double parse_alpha(const std::string& s) {
    const auto slash = s.find('/');
    if (slash == std::string::npos) return to_double(s, s);
    const double num = static_cast<double>(to_i64(s.substr(0, slash), s));
    const double den = static_cast<double>(to_i64(s.substr(slash + 1), s));
    if (den == 0.0) throw ParseError("zero denominator in '" + s + "'");
    return num / den;
}

PeriodicFunction parse_periodic(const std::string& spec, u64 q) {
    if (spec.empty()) throw ParseError("empty periodic spec");
    if (q == 0) throw ParseError("period must be positive");
    std::optional<PeriodicFunction> acc;
    for (const auto& tok : split(spec, '*')) {
        const auto colon = tok.find(':');
        const std::string head = tok.substr(0, colon);
        const std::string rest = colon == std::string::npos ? "" : tok.substr(colon + 1);
        PeriodicFunction h;
        if (tok == "one") {
            h = periodic_constant(q);
        } else if (head == "expmod" && rest.rfind("poly=", 0) == 0) {
            std::vector<i64> coeffs;
            for (const auto& c : split(rest.substr(5), ',')) coeffs.push_back(to_i64(c, tok));
            h = periodic_expmod(q, coeffs);
        } else if (head == "kloosterman" && !rest.empty()) {
            const auto parts = split(rest, ',');
            if (parts.size() != 2) throw ParseError("expected kloosterman:a,b, got '" + tok + "'");
            h = periodic_kloosterman(q, to_i64(parts[0], tok), to_i64(parts[1], tok));
        } else if (head == "charshift" && !rest.empty()) {
            const auto comma = rest.rfind(',');
            if (comma == std::string::npos) throw ParseError("expected charshift:INDEX,SHIFT, got '" + tok + "'");
            h = periodic_charshift(parse_character_index(q, rest.substr(0, comma)), to_i64(rest.substr(comma + 1), tok));
        } else if (head == "table" && !rest.empty()) {
            std::ifstream in(rest);
            if (!in) throw ParseError("cannot open table file '" + rest + "'");
            std::vector<cplx> values(q, 0.0);
            std::vector<bool> seen(q, false);
            std::string line;
            while (std::getline(in, line)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
                std::istringstream ls(line);
                u64 n;
                double re, im;
                if (!(ls >> n >> re >> im) || n >= q) throw ParseError("bad table line '" + line + "' in " + rest);
                values[n] = {re, im};
                seen[n] = true;
            }
            for (u64 n = 0; n < q; ++n)
                if (!seen[n]) throw ParseError("table " + rest + " is missing residue " + std::to_string(n));
            h = periodic_table(std::move(values));
        } else {
            throw ParseError("unknown periodic token '" + tok + "'");
        }
        acc = acc ? periodic_product(*acc, h) : h;
    }
    return *acc;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"pretsums: exponential sums with multiplicative coefficients"};
    std::string format = "json", out_path;
    bool timings = false;
    std::vector<std::string> rest;
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--out", out_path, "write the result to this file");
    app.add_flag("--timings", timings, "append wall-clock timings");
    app.add_option("command", rest, "subcommand followed by key=value arguments");
    app.allow_extras(false);

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        out << "subcommands: expsum direct|predict|scan, pretend, oscint, triples, partition, constants, arcs, energy, "
               "twisted\n";
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (rest.empty()) throw ParseError("missing subcommand");
        const auto t0 = std::chrono::steady_clock::now();
        const std::string cmd = rest[0];
        std::string mode;
        std::size_t first = 1;
        if (cmd == "expsum") {
            if (rest.size() < 2) throw ParseError("expsum needs direct, predict or scan");
            mode = rest[1];
            first = 2;
        }
        Args a({rest.begin() + static_cast<std::ptrdiff_t>(first), rest.end()});
        Json result;
        if (cmd == "expsum") result = cmd_expsum(mode, a);
        else if (cmd == "pretend") result = cmd_pretend(a);
        else if (cmd == "oscint") result = cmd_oscint(a);
        else if (cmd == "triples") result = cmd_triples(a);
        else if (cmd == "partition") result = cmd_partition(a);
        else if (cmd == "constants") result = cmd_constants(a);
        else if (cmd == "arcs") result = cmd_arcs(a);
        else if (cmd == "energy") result = cmd_energy(a);
        else if (cmd == "twisted") result = cmd_twisted(a);
        else throw ParseError("unknown subcommand '" + cmd + "'");

        if (timings) {
            const double ms =
                std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
            if (result.is_object()) result["timings_ms"] = ms;
            else err << "timing_ms " << ms << "\n";
        }
        const std::string text = format == "csv" ? to_csv(result) : result.dump(2) + "\n";
        if (out_path.empty()) {
            out << text;
        } else {
            std::ofstream f(out_path);
            if (!f) throw DomainError("cannot write '" + out_path + "'");
            f << text;
        }
        return 0;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace pretsums

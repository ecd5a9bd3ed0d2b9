#include "pretsums/multfunc.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace pretsums {

using arith::u64;
using arith::i64;

ValueClass product_class(ValueClass a, ValueClass b) {
    if (a == ValueClass::general || b == ValueClass::general) return ValueClass::general;
    if (a == b) return a;
    return ValueClass::ternary;
}

ValueClass union_class(ValueClass a, ValueClass b) { return product_class(a, b); }

// ---- prime rules ----------------------------------------------------------

namespace {

u64 parse_u64(const std::string& s, const std::string& token) {
    u64 v = 0;
    const auto* end = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc() || ptr != end || s.empty()) throw ParseError("bad integer '" + s + "' in '" + token + "'");
    return v;
}

double parse_double(const std::string& s, const std::string& token) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw ParseError("bad number '" + s + "' in '" + token + "'");
        return v;
    } catch (const std::logic_error&) {
        throw ParseError("bad number '" + s + "' in '" + token + "'");
    }
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

std::string join_set(const std::set<u64>& s) {
    std::string out;
    for (u64 v : s) {
        if (!out.empty()) out += ',';
        out += std::to_string(v);
    }
    return out;
}

std::string fmt_real(double v) {
    std::ostringstream o;
    o.precision(12);
    o << v;
    return o.str();
}

u64 splitmix64(u64 z) {
    z += 0x9E3779B97F4A7C15ull;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

}  // namespace

bool PrimeRule::operator()(u64 p) const {
    switch (kind) {
        case Kind::residue: return members.count(p % modulus) > 0;
        case Kind::list: return members.count(p) > 0;
        case Kind::le: return static_cast<double>(p) <= threshold;
        case Kind::gt: return static_cast<double>(p) > threshold;
        case Kind::all: return true;
        case Kind::none: return false;
    }
    return false;
}

std::string PrimeRule::text() const {
    switch (kind) {
        case Kind::residue: return "res:" + std::to_string(modulus) + ":" + join_set(members);
        case Kind::list: return "list:" + join_set(members);
        case Kind::le: return "le:" + fmt_real(threshold);
        case Kind::gt: return "gt:" + fmt_real(threshold);
        case Kind::all: return "all";
        case Kind::none: return "none";
    }
    return "";
}

PrimeRule PrimeRule::parse(const std::string& s) {
    PrimeRule r;
    const auto parts = split(s, ':');
    if (parts.empty()) throw ParseError("empty prime rule");
    const std::string& head = parts[0];
    if (head == "all" && parts.size() == 1) {
        r.kind = Kind::all;
    } else if (head == "none" && parts.size() == 1) {
        r.kind = Kind::none;
    } else if (head == "res" && parts.size() == 3) {
        r.kind = Kind::residue;
        r.modulus = parse_u64(parts[1], s);
        if (r.modulus == 0) throw ParseError("zero modulus in '" + s + "'");
        for (const auto& v : split(parts[2], ',')) r.members.insert(parse_u64(v, s) % r.modulus);
    } else if (head == "list" && parts.size() == 2) {
        r.kind = Kind::list;
        for (const auto& v : split(parts[1], ',')) r.members.insert(parse_u64(v, s));
    } else if ((head == "le" || head == "gt") && parts.size() == 2) {
        r.kind = head == "le" ? Kind::le : Kind::gt;
        r.threshold = parse_double(parts[1], s);
    } else {
        throw ParseError("unknown prime rule '" + s + "'");
    }
    return r;
}

// ---- MultFunc ---------------------------------------------------------------

MultFunc::MultFunc(std::string label, PrimeFn fn, ValueClass cls)
    : label_(std::move(label)), cls_(cls), terms_{Term{std::move(fn), cls}} {}

MultFunc MultFunc::minus_all() {
    return {"minus-all", [](u64) { return cplx(-1.0, 0.0); }, ValueClass::sign};
}

MultFunc MultFunc::sign(const PrimeRule& rule) {
    return {"sign:" + rule.text(), [rule](u64 p) { return cplx(rule(p) ? -1.0 : 1.0, 0.0); }, ValueClass::sign};
}

MultFunc MultFunc::smooth_indicator(const PrimeRule& rule) {
    return {"smoothset:" + rule.text(), [rule](u64 p) { return cplx(rule(p) ? 1.0 : 0.0, 0.0); },
            ValueClass::indicator};
}

MultFunc MultFunc::character(const DirichletCharacter& chi) {
    ValueClass cls = ValueClass::general;
    if (chi.is_principal())
        cls = chi.modulus() == 1 ? ValueClass::sign : ValueClass::indicator;
    else if (chi.is_real())
        cls = ValueClass::ternary;
    return {"char:" + chi.label(), [chi](u64 p) { return chi(static_cast<i64>(p)); }, cls};
}

MultFunc MultFunc::nit(double t) {
    if (t == 0.0) return {"nit:0", [](u64) { return cplx(1.0, 0.0); }, ValueClass::sign};
    return {"nit:" + fmt_real(t), [t](u64 p) { return pretsums::nit(static_cast<double>(p), t); },
            ValueClass::general};
}

MultFunc MultFunc::table(std::map<u64, cplx> values) {
    ValueClass cls = ValueClass::sign;
    for (const auto& [p, v] : values) {
        if (std::abs(v) > 1.0 + 1e-12) throw DomainError("table value at p=" + std::to_string(p) + " exceeds 1 in modulus");
        ValueClass c = ValueClass::general;
        if (v == cplx(1.0, 0.0) || v == cplx(-1.0, 0.0))
            c = ValueClass::sign;
        else if (v == cplx(0.0, 0.0))
            c = ValueClass::indicator;
        cls = product_class(cls, c);
    }
    auto shared = std::make_shared<const std::map<u64, cplx>>(std::move(values));
    return {"table", [shared](u64 p) {
                const auto it = shared->find(p);
                return it == shared->end() ? cplx(1.0, 0.0) : it->second;
            },
            cls};
}

MultFunc MultFunc::random_sign(u64 seed) {
    return {"rand:" + std::to_string(seed),
            [seed](u64 p) { return cplx((splitmix64(seed ^ (p * 0xD6E8FEB86659FD93ull)) >> 63) ? -1.0 : 1.0, 0.0); },
            ValueClass::sign};
}

MultFunc MultFunc::random_ternary(u64 seed) {
    return {"rand0:" + std::to_string(seed),
            [seed](u64 p) {
                return cplx(static_cast<double>(static_cast<int>(splitmix64(seed ^ (p * 0xD6E8FEB86659FD93ull)) % 3) - 1),
                            0.0);
            },
            ValueClass::ternary};
}

MultFunc MultFunc::piecewise(double z, const MultFunc& below, const MultFunc& above) {
    return {"piecewise(" + below.label() + "|" + fmt_real(z) + "|" + above.label() + ")",
            [z, below, above](u64 p) { return static_cast<double>(p) <= z ? below.at_prime(p) : above.at_prime(p); },
            union_class(below.value_class(), above.value_class())};
}

MultFunc MultFunc::relabeled(std::string label) const {
    MultFunc out = *this;
    out.label_ = std::move(label);
    return out;
}

MultFunc MultFunc::operator*(const MultFunc& other) const {
    if (terms_.empty()) return other;
    if (other.terms_.empty()) return *this;
    MultFunc out = *this;
    out.label_ = label_ + "*" + other.label_;
    out.cls_ = product_class(cls_, other.cls_);
    out.terms_.insert(out.terms_.end(), other.terms_.begin(), other.terms_.end());
    return out;
}

cplx MultFunc::at_prime(u64 p) const {
    cplx v(1.0, 0.0);
    for (const auto& t : terms_) v *= t.fn(p);
    return v;
}

cplx MultFunc::eval(u64 n, const SieveTable& sieve) const {
    cplx v(1.0, 0.0);
    for (const auto& [p, e] : sieve.factor(n)) {
        const cplx fp = at_prime(p);
        for (int k = 0; k < e; ++k) v *= fp;
    }
    return v;
}

std::vector<cplx> MultFunc::eval_range(u64 x, const SieveTable& sieve) const {
    if (x == 0) return {};
    if (x > sieve.limit()) throw DomainError("eval_range beyond sieve limit");
    std::vector<cplx> val(x + 1, cplx(0.0, 0.0));
    val[1] = 1.0;
    for (u64 p : sieve.primes_upto(x)) val[p] = at_prime(p);
    for (u64 n = 4; n <= x; ++n) {
        const u64 p = sieve.spf(n);
        if (p != n) val[n] = val[n / p] * val[p];
    }
    return val;
}

std::vector<cplx> MultFunc::eval_range(u64 x) const {
    if (x == 0) return {};
    const SieveTable sieve(x);
    return eval_range(x, sieve);
}

std::vector<std::int8_t> MultFunc::eval_range_int(u64 x, const SieveTable& sieve) const {
    if (cls_ == ValueClass::general) throw DomainError("integer evaluation of a complex-valued function: " + label_);
    if (x == 0) return {};
    if (x > sieve.limit()) throw DomainError("eval_range beyond sieve limit");
    std::vector<std::int8_t> val(x + 1, 0);
    val[1] = 1;
    for (u64 p : sieve.primes_upto(x)) val[p] = static_cast<std::int8_t>(std::lround(at_prime(p).real()));
    for (u64 n = 4; n <= x; ++n) {
        const u64 p = sieve.spf(n);
        if (p != n) val[n] = static_cast<std::int8_t>(val[n / p] * val[p]);
    }
    return val;
}

// ---- twists and splits ----------------------------------------------------------

MultFunc twist(const MultFunc& f, const DirichletCharacter& psi, double t) {
    MultFunc out = f;
    if (psi.modulus() != 1) out = out * MultFunc::character(psi.conj());
    if (t != 0.0) out = out * MultFunc::nit(-t);
    return out;
}

SmallLargeSplit split_small_large(const MultFunc& f, const DirichletCharacter& psi, double t, double z) {
    if (z < 2.0) throw DomainError("split threshold z must be at least 2");
    const MultFunc large = MultFunc::character(psi) * MultFunc::nit(t);
    return {MultFunc::piecewise(z, f, large), MultFunc::piecewise(z, MultFunc::one(), twist(f, psi, t)), z, psi, t};
}

std::pair<MultFunc, MultFunc> structure_split(const MultFunc& f, double t, double z) {
    return {MultFunc::piecewise(z, f * MultFunc::nit(-t), MultFunc::one()),
            MultFunc::piecewise(z, MultFunc::nit(t), f)};
}

KappaFunction::KappaFunction(MultFunc f, DirichletCharacter psi, double t)
    : f_(std::move(f)), psi_(std::move(psi)), t_(t), fstar_(twist(f_, psi_, t_)) {}

cplx KappaFunction::at_prime_power(u64 p, int b) const {
    if (b == 0) return {1.0, 0.0};
    if (psi_.modulus() % p == 0) {
        const cplx fp = f_.at_prime(p);
        cplx v(1.0, 0.0);
        for (int k = 0; k < b; ++k) v *= fp;
        return v * nit(static_cast<double>(p), -t_ * b);
    }
    const cplx fs = fstar_.at_prime(p);
    const cplx ps = psi_(static_cast<i64>(p));
    cplx psi_pb(1.0, 0.0), fs_prev(1.0, 0.0);
    for (int k = 0; k < b; ++k) psi_pb *= ps;
    for (int k = 0; k < b - 1; ++k) fs_prev *= fs;
    return psi_pb * (fs_prev * fs - fs_prev);
}

cplx KappaFunction::operator()(u64 m) const {
    if (m == 0) throw DomainError("kappa(0) is undefined");
    cplx v(1.0, 0.0);
    for (const auto& pp : arith::factor(m)) v *= at_prime_power(pp.p, pp.e);
    return v;
}

cplx KappaFunction::eval(u64 m, const SieveTable& sieve) const {
    cplx v(1.0, 0.0);
    for (const auto& [p, e] : sieve.factor(m)) v *= at_prime_power(p, e);
    return v;
}

cplx k_factor(const MultFunc& fstar, u64 m) {
    if (m == 0) throw DomainError("k(0) is undefined");
    cplx v(1.0, 0.0);
    for (const auto& pp : arith::factor(m)) v *= 1.0 - fstar.at_prime(pp.p) / static_cast<double>(pp.p);
    return v;
}

cplx mean_value(const MultFunc& f, u64 x, const SieveTable& sieve, const DirichletCharacter* chi) {
    if (x == 0) return {0.0, 0.0};
    const auto vals = f.eval_range(x, sieve);
    KahanSum s;
    for (u64 n = 1; n <= x; ++n) s.add(chi ? vals[n] * std::conj((*chi)(static_cast<i64>(n))) : vals[n]);
    return s.value();
}

std::vector<cplx> prefix_sums(const std::vector<cplx>& vals) {
    std::vector<cplx> out(vals.size(), cplx(0.0, 0.0));
    KahanSum s;
    for (std::size_t n = 1; n < vals.size(); ++n) {
        s.add(vals[n]);
        out[n] = s.value();
    }
    return out;
}

// ---- spec parser ------------------------------------------------------------

DirichletCharacter parse_character_index(u64 q, const std::string& index) {
    if (q == 0) throw ParseError("character modulus must be positive");
    const auto group = CharacterGroup::get(q);
    if (index.find(',') == std::string::npos) {
        const u64 idx = parse_u64(index, index);
        if (idx >= group->size())
            throw ParseError("character index " + index + " out of range mod " + std::to_string(q));
        return DirichletCharacter::from_index(q, idx);
    }
    std::vector<u64> e;
    for (const auto& s : split(index, ',')) e.push_back(parse_u64(s, index));
    if (e.size() != group->components().size())
        throw ParseError("character mod " + std::to_string(q) + " needs " +
                         std::to_string(group->components().size()) + " exponents, got '" + index + "'");
    return DirichletCharacter(group, std::move(e));
}

namespace {

MultFunc parse_table_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open table file '" + path + "'");
    std::map<u64, cplx> values;
    std::string line;
    u64 last = 0;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        std::istringstream ls(line);
        u64 p;
        double re, im;
        if (!(ls >> p >> re >> im)) throw ParseError("bad table line '" + line + "' in " + path);
        if (!arith::is_prime(p)) throw ParseError("table key " + std::to_string(p) + " is not prime in " + path);
        if (p <= last) throw ParseError("table primes must be ascending in " + path);
        last = p;
        values[p] = {re, im};
    }
    return MultFunc::table(std::move(values));
}

MultFunc parse_factor(const std::string& tok) {
    const auto colon = tok.find(':');
    const std::string head = tok.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : tok.substr(colon + 1);
    const bool has_arg = colon != std::string::npos;
    if (tok == "one") return MultFunc::one();
    if (tok == "minus-all") return MultFunc::minus_all();
    if (has_arg && head == "legendre") {
        const u64 q = parse_u64(rest, tok);
        try {
            return MultFunc::character(legendre_character(q));
        } catch (const DomainError& e) {
            throw ParseError(std::string(e.what()) + " in '" + tok + "'");
        }
    }
    if (has_arg && head == "char") {
        const auto c2 = rest.find(':');
        if (c2 == std::string::npos) throw ParseError("expected char:Q:INDEX, got '" + tok + "'");
        return MultFunc::character(parse_character_index(parse_u64(rest.substr(0, c2), tok), rest.substr(c2 + 1)));
    }
    if (has_arg && head == "nit") return MultFunc::nit(parse_double(rest, tok));
    if (has_arg && head == "smoothset") return MultFunc::smooth_indicator(PrimeRule::parse(rest));
    if (has_arg && head == "sign") return MultFunc::sign(PrimeRule::parse(rest));
    if (has_arg && head == "rand") return MultFunc::random_sign(parse_u64(rest, tok));
    if (has_arg && head == "rand0") return MultFunc::random_ternary(parse_u64(rest, tok));
    if (has_arg && head == "table") return parse_table_file(rest);
    throw ParseError("unknown function token '" + tok + "'");
}

}  // namespace

MultFunc parse_multfunc(const std::string& spec) {
    if (spec.empty()) throw ParseError("empty function spec");
    MultFunc f;
    for (const auto& tok : split(spec, '*')) {
        if (tok.empty()) throw ParseError("empty factor in '" + spec + "'");
        f = f * parse_factor(tok);
    }
    return f.relabeled(spec);
}

}  // namespace pretsums

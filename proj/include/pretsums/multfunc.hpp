#pragma once
// Completely multiplicative functions with values in the closed unit disc.
//
// A MultFunc is a product of terms, each a rule p -> value on primes.  Values
// on prime powers and composites follow by complete multiplicativity.

#include "pretsums/characters.hpp"
#include "pretsums/numeric.hpp"
#include "pretsums/sieve.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace pretsums {

// Which values a function can take; products and piecewise joins propagate it.
enum class ValueClass {
    sign,       // {-1, 1}
    indicator,  // {0, 1}
    ternary,    // {-1, 0, 1}
    general,    // closed unit disc
};

ValueClass product_class(ValueClass a, ValueClass b);
ValueClass union_class(ValueClass a, ValueClass b);

// Predicate on primes.  Text forms: res:M:R1,R2,...  list:p1,p2,...  le:Y  gt:Y  all  none
struct PrimeRule {
    enum class Kind { residue, list, le, gt, all, none } kind = Kind::all;
    std::uint64_t modulus = 1;
    std::set<std::uint64_t> members;  // residues or primes
    double threshold = 0.0;

    bool operator()(std::uint64_t p) const;
    std::string text() const;
    static PrimeRule parse(const std::string& s);
};

class MultFunc {
public:
    using PrimeFn = std::function<cplx(std::uint64_t)>;

    MultFunc() = default;  // constant one
    MultFunc(std::string label, PrimeFn fn, ValueClass cls);

    static MultFunc one() { return {}; }
    static MultFunc minus_all();
    // f(p) = -1 when rule(p), else 1
    static MultFunc sign(const PrimeRule& rule);
    // f(p) = 1 when rule(p), else 0: indicator of integers built from those primes
    static MultFunc smooth_indicator(const PrimeRule& rule);
    static MultFunc character(const DirichletCharacter& chi);
    static MultFunc nit(double t);
    // unlisted primes map to 1
    static MultFunc table(std::map<std::uint64_t, cplx> values);
    // pseudo-random +-1 and {-1,0,1} values keyed by (seed, p)
    static MultFunc random_sign(std::uint64_t seed);
    static MultFunc random_ternary(std::uint64_t seed);
    // below(p) for p <= z, above(p) for p > z
    static MultFunc piecewise(double z, const MultFunc& below, const MultFunc& above);

    MultFunc operator*(const MultFunc& other) const;
    MultFunc relabeled(std::string label) const;

    cplx at_prime(std::uint64_t p) const;
    // throws DomainError for n = 0 or n > sieve.limit()
    cplx eval(std::uint64_t n, const SieveTable& sieve) const;
    // entry n holds f(n) for 1 <= n <= x, entry 0 holds 0; empty for x = 0
    std::vector<cplx> eval_range(std::uint64_t x, const SieveTable& sieve) const;
    std::vector<cplx> eval_range(std::uint64_t x) const;
    // integer fast path; throws DomainError for the general class
    std::vector<std::int8_t> eval_range_int(std::uint64_t x, const SieveTable& sieve) const;

    ValueClass value_class() const { return cls_; }
    bool is_integer_valued() const { return cls_ != ValueClass::general; }
    const std::string& label() const { return label_; }

private:
    struct Term {
        PrimeFn fn;
        ValueClass cls;
    };
    std::string label_ = "one";
    ValueClass cls_ = ValueClass::sign;
    std::vector<Term> terms_;
};

// f_*(p) = f(p) conj(psi(p)) p^{-it}
MultFunc twist(const MultFunc& f, const DirichletCharacter& psi, double t);

struct SmallLargeSplit {
    MultFunc F_s, F_l;
    double z;
    DirichletCharacter psi;
    double t;
};
// F_s(p) = f(p) for p <= z, psi(p) p^{it} above; F_l(p) = 1 for p <= z, f_*(p) above
SmallLargeSplit split_small_large(const MultFunc& f, const DirichletCharacter& psi, double t, double z);

// f^(s)(p) = f(p) p^{-it} for p <= z, 1 above; f^(l)(p) = p^{it} for p <= z, f(p) above
std::pair<MultFunc, MultFunc> structure_split(const MultFunc& f, double t, double z);

// kappa(p^b) = f(p^b) p^{-ibt} if p | r, psi(p^b)(f_*(p^b) - f_*(p^{b-1})) otherwise
class KappaFunction {
public:
    KappaFunction(MultFunc f, DirichletCharacter psi, double t);
    cplx at_prime_power(std::uint64_t p, int b) const;
    cplx operator()(std::uint64_t m) const;  // trial-division factorization
    cplx eval(std::uint64_t m, const SieveTable& sieve) const;
    const MultFunc& twisted() const { return fstar_; }

private:
    MultFunc f_;
    DirichletCharacter psi_;
    double t_;
    MultFunc fstar_;
};

// prod_{p | m} (1 - f_*(p)/p)
cplx k_factor(const MultFunc& fstar, std::uint64_t m);

// S_f(x, chi) = sum_{n <= x} f(n) conj(chi(n))
cplx mean_value(const MultFunc& f, std::uint64_t x, const SieveTable& sieve,
                const DirichletCharacter* chi = nullptr);

// Prefix sums P[n] = sum_{k <= n} vals[k] for a value vector from eval_range.
std::vector<cplx> prefix_sums(const std::vector<cplx>& vals);

// Parses the function mini-language: one, minus-all, legendre:Q, char:Q:INDEX,
// nit:T, smoothset:RULE, sign:RULE, rand:SEED, rand0:SEED, table:FILE, and
// '*'-products of these.  Throws ParseError naming the offending token.
MultFunc parse_multfunc(const std::string& spec);

// Character by CLI index: "k1,k2,..." exponent tuple or a flat enumeration index.
DirichletCharacter parse_character_index(std::uint64_t q, const std::string& index);

}  // namespace pretsums

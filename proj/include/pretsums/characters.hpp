#pragma once
// Dirichlet characters mod q.
//
// (Z/qZ)^* is split into cyclic components, one per odd prime power p^e
// (generated by the least primitive root mod p^e) and up to two for the
// 2-part: 3 for 2^2, {-1, 5} for 2^e with e >= 3.  A character is the tuple
// of exponents (k_i) with chi(g_i) = e(k_i / ord(g_i)).  Enumeration order is
// lexicographic in that tuple, so the principal character comes first.

#include "pretsums/numeric.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pretsums {

class CharacterGroup {
public:
    struct Component {
        std::uint64_t p;
        std::uint64_t pe;         // modulus of the prime-power part this generator lives in
        std::uint64_t generator;  // as a residue mod pe
        std::uint64_t order;
        std::vector<std::int64_t> dlog;  // residue mod pe -> exponent, -1 off units
    };

    // Shared, immutable group for modulus q (cached).
    static std::shared_ptr<const CharacterGroup> get(std::uint64_t q);

    explicit CharacterGroup(std::uint64_t q);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t size() const { return phi_; }
    // lcm of component orders; every character value is e(k / exponent())
    std::uint64_t exponent() const { return exponent_; }
    const std::vector<Component>& components() const { return comps_; }
    const std::vector<std::uint64_t>& primes() const { return primes_; }
    bool is_unit(std::int64_t n) const;

private:
    std::uint64_t q_;
    std::uint64_t phi_ = 1;
    std::uint64_t exponent_ = 1;
    std::vector<Component> comps_;
    std::vector<std::uint64_t> primes_;
};

class DirichletCharacter {
public:
    using GroupPtr = std::shared_ptr<const CharacterGroup>;

    // principal character mod q
    explicit DirichletCharacter(std::uint64_t q = 1);
    DirichletCharacter(GroupPtr group, std::vector<std::uint64_t> exponents);

    // character by flat enumeration index (0 = principal)
    static DirichletCharacter from_index(std::uint64_t q, std::uint64_t index);

    std::uint64_t modulus() const { return group_->modulus(); }
    const GroupPtr& group() const { return group_; }
    const std::vector<std::uint64_t>& exponents() const { return exps_; }
    std::uint64_t index() const;

    // chi(n) = e(angle(n) / group().exponent()); nullopt when gcd(n, q) > 1
    std::optional<std::uint64_t> angle(std::int64_t n) const;
    cplx operator()(std::int64_t n) const;
    // the p-component chi_p(n) (a character mod the exact power of p in q)
    cplx local(std::uint64_t p, std::int64_t n) const;

    bool is_principal() const;
    bool is_real() const;
    std::uint64_t order() const;
    DirichletCharacter conj() const;
    DirichletCharacter operator*(const DirichletCharacter& other) const;
    bool operator==(const DirichletCharacter& other) const;

    std::uint64_t conductor() const;
    // the primitive character psi mod r inducing this one
    DirichletCharacter primitive() const;
    bool is_primitive() const { return conductor() == modulus(); }

    // "q:k1,k2,..." (exponent tuple in the fixed generator basis)
    std::string label() const;

private:
    std::uint64_t local_angle(std::uint64_t p, std::int64_t n) const;

    GroupPtr group_;
    std::vector<std::uint64_t> exps_;
};

std::vector<DirichletCharacter> enumerate_characters(std::uint64_t q);
// primitive characters with conductor exactly r
std::vector<DirichletCharacter> primitive_characters(std::uint64_t r);
// the real character (n / p) mod an odd prime p
DirichletCharacter legendre_character(std::uint64_t p);

// g(chi) = sum_{m mod q} chi(m) e(m/q)  (chi(0) = 1 only when q = 1)
cplx gauss_sum(const DirichletCharacter& chi);

struct AdditiveExpansion {
    std::vector<DirichletCharacter> characters;
    std::vector<cplx> coefficients;  // conj(chi)(b) g(chi) / phi(q)
    cplx reconstruct() const;
};
// e(b/q) as a combination of characters; requires gcd(b, q) = 1
AdditiveExpansion additive_char_expand(std::int64_t b, std::uint64_t q);

}  // namespace pretsums

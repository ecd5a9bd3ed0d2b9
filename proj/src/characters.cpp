#include "pretsums/characters.hpp"

#include "pretsums/arith.hpp"
#include "pretsums/errors.hpp"

#include <map>
#include <mutex>
#include <numeric>

namespace pretsums {

using arith::u64;
using arith::i64;

namespace {

u64 least_primitive_root(u64 p, u64 pe) {
    if (pe == 2) return 1;
    const u64 phi = pe / p * (p - 1);
    std::vector<u64> ells;
    for (const auto& pp : arith::factor(phi)) ells.push_back(pp.p);
    for (u64 g = 2; g < pe; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (u64 l : ells)
            if (arith::powmod(g, phi / l, pe) == 1) {
                ok = false;
                break;
            }
        if (ok) return g;
    }
    throw DomainError("no primitive root modulo " + std::to_string(pe));
}

}  // namespace

CharacterGroup::CharacterGroup(u64 q) : q_(q) {
    if (q == 0) throw DomainError("character modulus must be positive");
    for (const auto& pp : arith::factor(q)) {
        primes_.push_back(pp.p);
        phi_ *= pp.pe / pp.p * (pp.p - 1);
        if (pp.p == 2) {
            if (pp.e == 1) continue;  // (Z/2Z)^* is trivial
            if (pp.e == 2) {
                comps_.push_back({2, 4, 3, 2, {-1, 0, -1, 1}});
                continue;
            }
            const u64 m = pp.pe;
            Component neg{2, m, m - 1, 2, std::vector<i64>(m, -1)};
            Component five{2, m, 5, m / 4, std::vector<i64>(m, -1)};
            u64 x = 1;
            for (u64 k = 0; k < m / 4; ++k) {
                five.dlog[x] = five.dlog[m - x] = static_cast<i64>(k);
                neg.dlog[x] = 0;
                neg.dlog[m - x] = 1;
                x = x * 5 % m;
            }
            comps_.push_back(std::move(neg));
            comps_.push_back(std::move(five));
            continue;
        }
        const u64 g = least_primitive_root(pp.p, pp.pe);
        const u64 ord = pp.pe / pp.p * (pp.p - 1);
        Component c{pp.p, pp.pe, g, ord, std::vector<i64>(pp.pe, -1)};
        u64 x = 1;
        for (u64 k = 0; k < ord; ++k) {
            c.dlog[x] = static_cast<i64>(k);
            x = x * g % pp.pe;
        }
        comps_.push_back(std::move(c));
    }
    for (const auto& c : comps_) exponent_ = std::lcm(exponent_, c.order);
}

std::shared_ptr<const CharacterGroup> CharacterGroup::get(u64 q) {
    static std::mutex mu;
    static std::map<u64, std::shared_ptr<const CharacterGroup>> cache;
    {
        std::lock_guard lock(mu);
        if (auto it = cache.find(q); it != cache.end()) return it->second;
    }
    auto g = std::make_shared<const CharacterGroup>(q);
    std::lock_guard lock(mu);
    return cache.emplace(q, std::move(g)).first->second;
}

bool CharacterGroup::is_unit(i64 n) const {
    for (u64 p : primes_)
        if (arith::mod(n, static_cast<i64>(p)) == 0) return false;
    return true;
}

DirichletCharacter::DirichletCharacter(u64 q)
    : group_(CharacterGroup::get(q)), exps_(group_->components().size(), 0) {}

DirichletCharacter::DirichletCharacter(GroupPtr group, std::vector<u64> exponents)
    : group_(std::move(group)), exps_(std::move(exponents)) {
    const auto& comps = group_->components();
    if (exps_.size() != comps.size())
        throw DomainError("character mod " + std::to_string(group_->modulus()) + " needs " +
                          std::to_string(comps.size()) + " exponents");
    for (std::size_t i = 0; i < comps.size(); ++i) exps_[i] %= comps[i].order;
}

DirichletCharacter DirichletCharacter::from_index(u64 q, u64 index) {
    auto g = CharacterGroup::get(q);
    if (index >= g->size())
        throw DomainError("character index " + std::to_string(index) + " out of range mod " +
                          std::to_string(q));
    const auto& comps = g->components();
    std::vector<u64> e(comps.size());
    for (std::size_t i = comps.size(); i-- > 0;) {
        e[i] = index % comps[i].order;
        index /= comps[i].order;
    }
    return DirichletCharacter(std::move(g), std::move(e));
}

u64 DirichletCharacter::index() const {
    u64 idx = 0;
    const auto& comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i) idx = idx * comps[i].order + exps_[i];
    return idx;
}

std::optional<u64> DirichletCharacter::angle(i64 n) const {
    if (!group_->is_unit(n)) return std::nullopt;
    const u64 L = group_->exponent();
    const auto& comps = group_->components();
    u64 a = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        if (exps_[i] == 0) continue;
        const auto& c = comps[i];
        const u64 k = static_cast<u64>(c.dlog[arith::mod(n, static_cast<i64>(c.pe))]);
        a = (a + static_cast<unsigned __int128>(k) * exps_[i] % c.order * (L / c.order)) % L;
    }
    return a;
}

cplx DirichletCharacter::operator()(i64 n) const {
    const auto a = angle(n);
    if (!a) return {0.0, 0.0};
    return root_of_unity(static_cast<i64>(*a), static_cast<i64>(group_->exponent()));
}

cplx DirichletCharacter::local(u64 p, i64 n) const {
    if (arith::mod(n, static_cast<i64>(p)) == 0) {
        for (u64 pr : group_->primes())
            if (pr == p) return {0.0, 0.0};
        return {1.0, 0.0};
    }
    return root_of_unity(static_cast<i64>(local_angle(p, n)), static_cast<i64>(group_->exponent()));
}

bool DirichletCharacter::is_principal() const {
    for (u64 k : exps_)
        if (k != 0) return false;
    return true;
}

bool DirichletCharacter::is_real() const {
    const auto& comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i)
        if (2 * exps_[i] % comps[i].order != 0) return false;
    return true;
}

u64 DirichletCharacter::order() const {
    u64 o = 1;
    const auto& comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i)
        o = std::lcm(o, comps[i].order / std::gcd(comps[i].order, exps_[i]));
    return o;
}

DirichletCharacter DirichletCharacter::conj() const {
    std::vector<u64> e(exps_.size());
    const auto& comps = group_->components();
    for (std::size_t i = 0; i < comps.size(); ++i) e[i] = (comps[i].order - exps_[i]) % comps[i].order;
    return DirichletCharacter(group_, std::move(e));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    if (modulus() != other.modulus()) throw DomainError("character product needs equal moduli");
    std::vector<u64> e(exps_.size());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + other.exps_[i];
    return DirichletCharacter(group_, std::move(e));
}

bool DirichletCharacter::operator==(const DirichletCharacter& other) const {
    return modulus() == other.modulus() && exps_ == other.exps_;
}

// angle (over group exponent) of the p-part of chi at n
u64 DirichletCharacter::local_angle(u64 p, i64 n) const {
    const u64 L = group_->exponent();
    const auto& comps = group_->components();
    u64 a = 0;
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const auto& c = comps[i];
        if (c.p != p || exps_[i] == 0) continue;
        const u64 k = static_cast<u64>(c.dlog[arith::mod(n, static_cast<i64>(c.pe))]);
        a = (a + static_cast<unsigned __int128>(k) * exps_[i] % c.order * (L / c.order)) % L;
    }
    return a;
}

u64 DirichletCharacter::conductor() const {
    u64 r = 1;
    for (const auto& pp : arith::factor(modulus())) {
        // least p^f such that chi_p is trivial on n = 1 mod p^f
        u64 pf = 1;
        for (int f = 0; f <= pp.e; ++f, pf *= pp.p) {
            bool trivial = true;
            for (u64 n = 1; n < pp.pe && trivial; n += pf)
                if (n % pp.p != 0 && local_angle(pp.p, static_cast<i64>(n)) != 0) trivial = false;
            if (trivial) break;
        }
        r *= pf;
    }
    return r;
}

DirichletCharacter DirichletCharacter::primitive() const {
    const u64 r = conductor();
    auto g = CharacterGroup::get(r);
    const auto& comps = g->components();
    const u64 L = group_->exponent();
    std::vector<u64> e(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        // psi(g') must equal chi_p at any lift of g'; the residue itself is a lift
        const u64 a = local_angle(comps[i].p, static_cast<i64>(comps[i].generator));
        e[i] = static_cast<u64>(static_cast<unsigned __int128>(a) * comps[i].order / L);
    }
    return DirichletCharacter(std::move(g), std::move(e));
}

std::string DirichletCharacter::label() const {
    std::string s = std::to_string(modulus()) + ":";
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(exps_[i]);
    }
    return s;
}

std::vector<DirichletCharacter> enumerate_characters(u64 q) {
    if (q == 0) throw DomainError("character modulus must be positive");
    auto g = CharacterGroup::get(q);
    std::vector<DirichletCharacter> out;
    out.reserve(g->size());
    for (u64 i = 0; i < g->size(); ++i) out.push_back(DirichletCharacter::from_index(q, i));
    return out;
}

std::vector<DirichletCharacter> primitive_characters(u64 r) {
    std::vector<DirichletCharacter> out;
    for (auto& chi : enumerate_characters(r))
        if (chi.is_primitive()) out.push_back(std::move(chi));
    return out;
}

DirichletCharacter legendre_character(u64 p) {
    if (p < 3 || !arith::is_prime(p)) throw DomainError("Legendre symbol needs an odd prime, got " + std::to_string(p));
    return DirichletCharacter(CharacterGroup::get(p), {(p - 1) / 2});
}

cplx gauss_sum(const DirichletCharacter& chi) {
    const u64 q = chi.modulus();
    if (q == 1) return {1.0, 0.0};
    KahanSum s;
    for (u64 m = 1; m < q; ++m) {
        const auto a = chi.angle(static_cast<i64>(m));
        if (!a) continue;
        s.add(root_of_unity(static_cast<i64>(*a), static_cast<i64>(chi.group()->exponent())) *
              root_of_unity(static_cast<i64>(m), static_cast<i64>(q)));
    }
    return s.value();
}

cplx AdditiveExpansion::reconstruct() const {
    KahanSum s;
    for (const auto& c : coefficients) s.add(c);
    return s.value();
}

AdditiveExpansion additive_char_expand(i64 b, u64 q) {
    if (q == 0) throw DomainError("modulus must be positive");
    if (std::gcd(static_cast<u64>(arith::mod(b, static_cast<i64>(q))), q) != 1)
        throw DomainError("e(b/q) has no character expansion when gcd(b, q) > 1");
    AdditiveExpansion out;
    out.characters = enumerate_characters(q);
    const double phi = static_cast<double>(out.characters.front().group()->size());
    out.coefficients.reserve(out.characters.size());
    for (const auto& chi : out.characters) out.coefficients.push_back(std::conj(chi(b)) * gauss_sum(chi) / phi);
    return out;
}

}  // namespace pretsums

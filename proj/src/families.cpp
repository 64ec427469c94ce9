#include "ecm/families.hpp"

#include <cmath>
#include <numeric>

#include "ecm/special.hpp"

namespace ecm::families {

void FamilySpec::validate() const {
    if (X <= 0) throw InvalidSpec("box parameter X must be positive");
    if (q <= 0 || std::gcd(q, static_cast<i64>(6)) != 1 || !arith::is_squarefree(q))
        throw InvalidSpec("q must be positive, squarefree, and coprime to 6");
    if (variant == Variant::PositiveRank && q != 1)
        throw InvalidSpec("the positive-rank family uses q = 1");
    i128 m = i128(4) * r * r * r + i128(27) * t * t;
    i64 mm = static_cast<i64>(((m % (6 * q)) + 6 * q) % (6 * q));
    if (std::gcd(mm, 6 * q) != 1)
        throw InvalidSpec("(4r^3 + 27t^2, 6q) must be 1");
}

namespace {

// a-indexed table of small primes with p^4 | a, for the power condition
std::vector<std::vector<i64>> sieve_fourth_powers(i64 amin, i64 amax, i64 skip_mod) {
    std::vector<std::vector<i64>> hits(amax - amin + 1);
    double bound = std::pow(static_cast<double>(std::max(std::llabs(amin), std::llabs(amax))),
                            0.25);
    for (i64 p : arith::primes_up_to(static_cast<i64>(bound) + 1)) {
        if (skip_mod % p == 0) continue;
        i64 p4 = p * p * p * p;
        i64 start = (amin / p4) * p4;
        while (start < amin) start += p4;
        for (i64 a = start; a <= amax; a += p4) hits[a - amin].push_back(p);
    }
    return hits;
}

}  // namespace

void for_each_member(const FamilySpec& spec,
                     const std::function<void(const FamilyMember&)>& fn) {
    spec.validate();
    const i64 mod = spec.modulus();
    const i64 abound = static_cast<i64>(std::floor(std::cbrt(spec.X)));
    const i64 bbound = static_cast<i64>(std::floor(
        spec.variant == Variant::All ? std::sqrt(spec.X) : std::pow(spec.X, 0.25)));

    auto hits = sieve_fourth_powers(-abound, abound, 6 * spec.q);

    i64 a0 = arith::mod_floor(spec.r, mod);
    i64 b0 = arith::mod_floor(spec.t, mod);
    i64 astart = -abound + arith::mod_floor(a0 - (-abound), mod);
    for (i64 a = astart; a <= abound; a += mod) {
        const auto& ps = hits[a - (-abound)];
        i64 bstart = -bbound + arith::mod_floor(b0 - (-bbound), mod);
        for (i64 b = bstart; b <= bbound; b += mod) {
            bool excluded = false;
            for (i64 p : ps) {
                // power condition: p^4 | a forbids p^6 | b (All) or p^3 | b
                i64 pk = (spec.variant == Variant::All) ? p * p * p * p * p * p : p * p * p;
                if (b % pk == 0) { excluded = true; break; }
            }
            if (excluded) continue;
            if (spec.variant == Variant::All) {
                i128 m = i128(4) * a * a * a + i128(27) * b * b;
                if (m == 0) continue;  // cannot happen under the congruence, kept as a guard
                FamilyMember fm{curves::CurvePair(a, b), b, false};
                fn(fm);
            } else {
                i64 c = b * b;
                i128 m = i128(4) * a * a * a + i128(27) * c * c;
                if (m == 0) continue;
                FamilyMember fm{curves::CurvePair(a, c), b, curves::is_torsion_candidate(a, b)};
                fn(fm);
            }
        }
    }
}

std::vector<FamilyMember> enumerate(const FamilySpec& spec) {
    std::vector<FamilyMember> out;
    for_each_member(spec, [&](const FamilyMember& m) { out.push_back(m); });
    return out;
}

i64 count(const FamilySpec& spec) {
    i64 n = 0;
    for_each_member(spec, [&](const FamilyMember&) { ++n; });
    return n;
}

double count_asymptotic(const FamilySpec& spec) {
    spec.validate();
    if (spec.variant == Variant::All) {
        std::vector<i64> excl{2, 3};
        for (auto [p, e] : arith::factorize(spec.q)) {
            (void)e;
            excl.push_back(p);
        }
        double z = special::zeta_partial(10.0, excl);
        return std::pow(spec.X, 5.0 / 6.0) / (9.0 * spec.q * spec.q * z);
    }
    double z = special::zeta_partial(7.0, {2, 3});
    return std::pow(spec.X, 7.0 / 12.0) / (9.0 * z);
}

}  // namespace ecm::families

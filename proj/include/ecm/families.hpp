#pragma once

#include <functional>
#include <vector>

#include "ecm/arith.hpp"
#include "ecm/curves.hpp"

namespace ecm::families {

struct InvalidSpec : Error {
    explicit InvalidSpec(const std::string& m) : Error(m) {}
};

enum class Variant { All, PositiveRank };

// Box-ordered congruence families:
//   All:          y^2 = x^3+ax+b, a = r, b = t (mod 6q), |a| <= X^{1/3},
//                 |b| <= X^{1/2}, no prime with p^4 | a and p^6 | b.
//   PositiveRank: y^2 = x^3+ax+b^2, a = r, b = t (mod 6), |a| <= X^{1/3},
//                 |b| <= X^{1/4}, no prime with p^4 | a and p^3 | b.
struct FamilySpec {
    Variant variant = Variant::All;
    i64 r = 1;
    i64 t = 1;
    i64 q = 1;     // squarefree, coprime to 6; q = 1 for PositiveRank
    double X = 0;  // box parameter

    void validate() const;
    i64 modulus() const { return variant == Variant::All ? 6 * q : 6; }
};

struct FamilyMember {
    curves::CurvePair curve;   // (a, b) or (a, b^2)
    i64 gen_b = 0;             // the generator b for PositiveRank, else curve.b
    bool torsion_flag = false; // PositiveRank only: b^2 | 4a^3
};

// Deterministic order: a ascending, then b ascending.
std::vector<FamilyMember> enumerate(const FamilySpec& spec);

// Streaming variant for large boxes.
void for_each_member(const FamilySpec& spec, const std::function<void(const FamilyMember&)>& fn);

i64 count(const FamilySpec& spec);

// X^{5/6} / (9 q^2 zeta_{6q}(10))  or  X^{7/12} / (9 zeta_6(7)).
double count_asymptotic(const FamilySpec& spec);

}  // namespace ecm::families

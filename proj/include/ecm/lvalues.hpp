#pragma once

#include <memory>
#include <vector>

#include "ecm/arith.hpp"
#include "ecm/curves.hpp"

namespace ecm::lvalues {

struct AmbiguousConductor : Error {
    AmbiguousConductor() : Error("two conductor candidates tie within defect 1e-8") {}
};
struct NeedsMoreTerms : Error {
    NeedsMoreTerms() : Error("series defect above target after term cap") {}
};
struct IndeterminateSign : Error {
    IndeterminateSign() : Error("root-number defect gap below the 10x criterion") {}
};

enum class Method { ExactOddPart, SearchAt2 };

struct ConductorResult {
    i64 N = 0;
    int exp2 = 0;
    int exp3 = 0;
    Method method = Method::SearchAt2;
    double defect = 0;
    i64 a2 = 0;  // Dirichlet coefficient at 2 selected by the search
    i64 a3 = 0;
};

struct CentralValue {
    double value = 0;
    int w = 0;
    i64 terms_used = 0;
    double defect = 0;
};

enum class Kernel { Exponential, Gaussian };

// Smoothed dual-sum evaluator for L(1/2 + alpha, E) with the Gamma(s+1/2)
// factor.  The exponential kernel is the incomplete-Gamma smoothing exact
// for this gamma factor; the split parameter rebalances the two sums and is
// an identity of the completed function, which the conductor/root-number
// search exploits as a self-consistency defect.
class LSeries {
public:
    explicit LSeries(const curves::CurvePair& e, double target_defect = 1e-9);

    const ConductorResult& conductor() const { return cond_; }
    int root_number() const { return w_; }
    double root_number_gap() const { return gap_; }

    CentralValue value_shifted(double alpha) const;
    CentralValue value_shifted(double alpha, double split, Kernel kernel) const;
    CentralValue derivative_central() const;

    // truncation bound under |lambda(n)| <= d(n)
    double tail_bound(double alpha, double split, i64 nmax) const;

    const curves::CurvePair& curve() const { return e_; }

private:
    double afe(double alpha, double split, Kernel kernel, i64 n_conductor, int w,
               i64 a2, int exp2, i64 a3, int exp3, i64* terms = nullptr) const;
    double candidate_defect(i64 n_cand, int w, i64 a2, int exp2, i64 a3, int exp3) const;
    void resolve();
    void ensure_coeffs(i64 nmax) const;

    curves::CurvePair e_;
    double target_;
    ConductorResult cond_;
    int w_ = 0;
    double gap_ = 0;
    i64 odd_part_ = 1;     // conductor part at p >= 5 (times exact 3-part if known)
    bool three_known_ = true;
    mutable std::vector<double> lam_odd_;  // lambda at integers coprime to 6
    mutable std::vector<i64> spf_;         // smallest prime factor sieve
};

// Convenience wrappers
ConductorResult conductor(const curves::CurvePair& e);
int root_number_numeric(const curves::CurvePair& e);

}  // namespace ecm::lvalues

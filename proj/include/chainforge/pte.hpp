#ifndef CHAINFORGE_PTE_HPP
#define CHAINFORGE_PTE_HPP

#include <optional>
#include <string>
#include <vector>

#include "chainforge/chain.hpp"

namespace chainforge {

struct SizeMismatch : Error {
    using Error::Error;
};
struct WrongPosition : Error {
    using Error::Error;
};
struct NotPeriodicCospectral : Error {
    using Error::Error;
};
struct WrongClass : Error {
    using Error::Error;
};
struct ParityMismatch : Error {
    using Error::Error;
};
struct CertificationFailure : Error {
    using Error::Error;
};

// Ideal power-sum solutions: sum e^k = sum f^k for k = 1..n-1.
// Pte0: E and F disjoint sets. Pte1: at most one element of the joint
// multiset appears twice. General: anything else.
enum class PTEClass { General, Pte1, Pte0 };

struct PTESolution {
    int n = 0;
    std::vector<Integer> E, F;  // sorted ascending
    PTEClass cls = PTEClass::General;
};

std::string pte_class_name(PTEClass cls);

// Empty optional = not a solution (reason explains why). Power sums and the
// polynomial-difference characterization are both checked and must agree.
std::optional<PTESolution> verify_pte(std::vector<Integer> E, std::vector<Integer> F,
                                      std::string* reason = nullptr);

// The constant p_E - p_F when it is constant; empty otherwise.
std::optional<Integer> pte_poly_gap(const std::vector<Integer>& E,
                                    const std::vector<Integer>& F);

// Alternating-block ordering e_1 < f_1 <= f_2 < e_2 <= e_3 < ... that every
// solution satisfies (after orienting e_1 < f_1).
bool pte_interlacing_check(const PTESolution& sol);

// From a chain with 0 and m = ceil((d+1)/2) periodic cospectral: split the
// normalized spectrum by the sign of p_m; even d adjoins the integer
// xi = sum(S_+) - sum(S_-) to the smaller side.
PTESolution chain_to_pte(const Chain& c, int m);

// Reverse direction: spectrum = E ⊔ F (one copy of the repeated or pruned
// element dropped on the even-d branch), p_m = (p_E + p_F)/2, realized via
// the OPS construction and re-certified. force_even_d prunes an interior
// element of a Pte0 solution to exercise the even-d branch.
Chain pte_to_chain(const PTESolution& sol, bool force_even_d = false);

// Pte0 solution with exactly one odd element on each side: halve, drop the
// two halved odds, build transfer between 0 and n on the remaining integers.
Chain pte_to_pst_chain(const PTESolution& sol);

// Exhaustive search over n-multisets (multiplicity <= 2) drawn from
// [lo, hi], bucketed by power sums; output oriented e_1 < f_1.
std::vector<PTESolution> search_pte(int n, long lo, long hi,
                                    std::optional<PTEClass> class_filter = {});

}  // namespace chainforge

#endif

#pragma once
// The verification engine: bounded-degree ideal spans, oriented rewriting,
// certificate-based ideal membership, PBW certification, and the named
// identity suites (reflection, moment condition, g-element relations,
// Fourier transforms, equivariance, rank cross-checks).

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qmqv/moment.hpp"
#include "qmqv/relations.hpp"
#include "qmqv/report.hpp"

namespace qmqv {

struct VerifyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Word-count guard for degree-bounded enumerations; QMQV_MAX_WORDS overrides
// the default of 160000.
long long max_word_guard();

// Number of words of length <= n over g letters, capped at the guard;
// throws VerifyError when the guard would be exceeded.
long long words_up_to(int g, int n);

// Echelonized basis of span{x r y : r relation, |x| + deg(r) + |y| <= D},
// rows keyed by their leading word, leading coefficient one.  The bound can
// be raised in place; rank is recorded per stage by the caller.
class DegreeSpan {
public:
    DegreeSpan(const Presentation& p, int D);

    int bound() const { return bound_; }
    int rank() const { return int(rows_.size()); }
    void extend(int new_bound);

    // Remainder after eliminating every row's leading word; zero remainder
    // certifies membership in the spanned subspace.
    NCPoly reduce(NCPoly x) const;
    bool contains(const NCPoly& x) const { return reduce(x).is_zero(); }

    const std::map<Word, NCPoly, DegLex>& rows() const { return rows_; }

private:
    int n_gens_ = 0;
    std::vector<NCPoly> rels_;
    int bound_ = -1;
    std::map<Word, NCPoly, DegLex> rows_;

    void insert(NCPoly x);
};

DegreeSpan ideal_span(const Presentation& p, int D);

// Relations oriented into rules leading word -> lower tail (deg-lex) and
// inter-reduced.  A relation reducing to a nonzero constant cannot be
// oriented; the system records it and reduces everything to zero, since the
// ideal is then the whole algebra.
class RewriteSystem {
public:
    explicit RewriteSystem(const Presentation& p);
    explicit RewriteSystem(std::vector<NCPoly> rels);

    bool orientable() const { return witness_.empty(); }
    const std::string& failure_witness() const { return witness_; }
    size_t rule_count() const { return rules_.size(); }
    const std::map<Word, NCPoly, DegLex>& rules() const { return rules_; }

    NCPoly normal_form(NCPoly x) const;

private:
    std::map<Word, NCPoly, DegLex> rules_;  // lead -> tail, lead - tail in the ideal
    std::string witness_;
    size_t max_lead_ = 0;

    void build(std::vector<NCPoly> rels);
};

// Rewrite-first membership with a degree-span fallback; the span is built
// lazily on the first element rewriting does not settle.
class MembershipChecker {
public:
    MembershipChecker(const Presentation& p, int D);

    int bound() const { return bound_; }

    // nullopt: certified member (reduced to zero).  Otherwise the surviving
    // remainder; never a definitive negative.
    std::optional<NCPoly> remainder(const NCPoly& elem);

private:
    const Presentation* p_;
    int bound_;
    RewriteSystem rs_;
    std::optional<DegreeSpan> span_;
};

// pass iff elem reduces to zero at this bound; otherwise inconclusive.
CheckReport ideal_membership(const NCPoly& elem, const Presentation& p, int D);

// (number of words of length <= n) - rank(ideal_span(p, n)).
long long filtered_dimension(const Presentation& p, int n);

// The same for every n = 0..D, sharing one incrementally extended span.
std::vector<long long> filtered_dimensions(const Presentation& p, int D);

// Cumulative count of standard monomials (words with non-decreasing letter
// codes) of length <= n over g letters: C(n + g, g).
long long standard_monomial_count(int g, int n);

// Certifies the standard-monomial basis up to degree D: every word of
// length <= D rewrites onto standard monomials (spanning) and the filtered
// dimensions match the commutative counts (independence).  Localized
// presentations are refused: inverses collapse the filtration.
CheckReport pbw_check(const Presentation& p, int D);

CheckReport qybe_check(int n);
CheckReport hecke_check(int n);

// M2 R21 M1 R12 - R21 M1 R12 M2 componentwise in the ideal.
CheckReport reflection_check(const MomentMatrix& m, const Presentation& p, int D);

// Companion form for the source-side matrix:
// M2 R^{-1} M1 R21^{-1} - R^{-1} M1 R21^{-1} M2.
CheckReport reflection_check_bar(const MomentMatrix& m, const Presentation& p, int D);

// A2 R21 M1 R12 - M1 A2 and R21 M1 R12 D2 - D2 M1 componentwise, plus the
// scalar forms g a - q^2 a g and g d - q^{-2} d g when both ends are 1x1.
CheckReport moment_condition_check(int edge, const Presentation& p, int D);

// The seven g-element matrix identities for one non-loop edge.
CheckReport manyrelns_check(int edge, const Presentation& p, int D = 4);

enum class FourierVariant { NonLoop, Loop };

// Localized presentation of one edge's algebra together with the image of
// each generator under the Fourier substitution.
struct FourierData {
    Presentation p;
    std::map<std::uint8_t, NCPoly> images;
};

FourierData fourier_data(const Quiver& q, int edge, FourierVariant variant);
NCPoly fourier_apply(const FourierData& f, const NCPoly& x);

// Applies the substitution to every defining relation (unit relations
// included) and certifies each image in the localized ideal.
CheckReport fourier_check(const Quiver& q, int edge, FourierVariant variant);

// Invariance of the relation span under the l^{+-} generator actions of
// every vertex, extended to words by the coproduct.
CheckReport equivariance_check(const Presentation& p, int D);

// Exact span rank re-derived at random rational q0 points; disagreement is
// impossible for valid specializations, so this cross-checks transcription,
// never verdicts.
struct RankCrossCheck {
    std::uint64_t seed = 0;
    int exact_rank = 0;
    std::vector<std::string> points;
    std::vector<int> numeric_ranks;
    bool agreed = true;
};

RankCrossCheck rank_cross_check(const Presentation& p, int D, std::uint64_t seed);
CheckReport rank_agreement_check(const Presentation& p, int D, std::uint64_t seed);

}  // namespace qmqv

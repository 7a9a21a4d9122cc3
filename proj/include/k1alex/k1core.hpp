#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k1alex/metarep.hpp"
#include "k1alex/novikov.hpp"
#include "k1alex/presentation.hpp"

namespace k1alex {

/// Square matrix over Q[H]_kappa((tau)), row-major.
class NovikovMatrix {
public:
    NovikovMatrix(AutPtr kappa, std::size_t n);

    std::size_t size() const { return n_; }
    const AutPtr& kappa() const { return kappa_; }
    NovikovSeries& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
    const NovikovSeries& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }
    /// Every entry a Laurent polynomial.
    bool is_exact() const;

    friend NovikovMatrix operator*(const NovikovMatrix& a, const NovikovMatrix& b);

private:
    AutPtr kappa_;
    std::size_t n_;
    std::vector<NovikovSeries> entries_;
};

NovikovMatrix identity_matrix(AutPtr kappa, std::size_t n);

enum class Verdict { yes, no, indeterminate };
std::string to_string(Verdict v);

struct EliminationStep {
    enum class Kind { row_swap, col_swap, pivot, row_combine };
    Kind kind;
    std::size_t a = 0;  // stage, or first index
    std::size_t b = 0;  // second index
    long degree = 0;    // pivot valuation
    bool monomial = false;

    std::string to_string() const;
};

struct K1Report {
    Verdict invertible = Verdict::indeterminate;
    std::vector<NovikovSeries> diagonal;
    int swap_sign = 1;                   // the unit recorded by the trace
    std::optional<NovikovSeries> delta;  // tau^-g * swap_sign * product of diagonal
    std::optional<WittNormalForm> witt;  // delta = unit * tau^degree * witt
    std::optional<LogClass> logs;
    std::vector<EliminationStep> pivot_trace;
    /// Exact invertibility from det(Upsilon(A)), when it was evaluated.
    std::optional<bool> upsilon_unit;
    long precision = kDefaultPrecision;
};

/// Entry (j, i) = tau * rho(d y_j / d x_i) - rho(d z_j / d x_i): one row per relator.
/// Throws ValidationError if r does not satisfy the relators of p.
NovikovMatrix build_fox_matrix(const MeridianPresentation& p, const MetaRep& r);

/// rho applied to an element of Z[F].
GroupAlgebraElem evaluate(const MetaRep& r, const FreeRingElem& a);

/// Gaussian elimination with unit-leading pivots. Fills diagonal, swap_sign
/// and the trace; verdict is yes or indeterminate.
K1Report eliminate(const NovikovMatrix& m, long precision = kDefaultPrecision);

/// eliminate() on the Fox matrix, then delta, its Witt form, logs, and the
/// exact Upsilon certificate.
K1Report k1_invariant(const MeridianPresentation& p, const MetaRep& r, long precision = kDefaultPrecision);

struct FiberedVerdict {
    Verdict invertible;
    K1Report report;
};

/// Per rep: yes if elimination or the Upsilon certificate proves A invertible,
/// no if the certificate proves it singular.
std::vector<FiberedVerdict> fibered_obstruction(const MeridianPresentation& p, const std::vector<MetaRep>& reps,
                                                long precision = kDefaultPrecision);

/// "non-fibered certified" if some verdict is no, otherwise "no obstruction found"
/// (consistent-with-fibered) or "inconclusive".
std::string fibered_summary(const std::vector<FiberedVerdict>& verdicts);

}  // namespace k1alex

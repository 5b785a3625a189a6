#include "rht/dichotomy.hpp"

#include <sstream>

namespace rht {

std::string CatBound::source_str() const {
    switch (source) {
        case Source::User: return "user-supplied";
        case Source::FourManifoldDefault: return "4-manifold default";
        case Source::HalfDimensionDefault: return "half-dimension default";
    }
    return "?";
}

int euler_characteristic(const BettiData& betti) {
    int chi = 0;
    for (int k = 0; k < static_cast<int>(betti.b.size()); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * betti.b[k];
    return chi;
}

std::string verdict_str(Verdict v) {
    switch (v) {
        case Verdict::Elliptic: return "Elliptic";
        case Verdict::Hyperbolic: return "Hyperbolic";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "?";
}

DichotomyVerdict classify(const RankSequence& ranks, const BettiData& betti,
                          const CatBound& cat) {
    const int n = ranks.formal_dimension;
    const int N = ranks.truncation;
    if (N < n)
        throw PreconditionError("classify: truncation " + std::to_string(N) +
                                " is below the formal dimension " + std::to_string(n));
    DichotomyVerdict out;
    out.cat = cat.value;
    out.euler = euler_characteristic(betti);
    out.formal_dimension = n;
    out.truncation = N;
    long long even = 0, odd = 0;
    std::optional<DichotomyWitness> witness;
    for (int k = 2; k <= N && !witness; ++k) {
        if (k % 2 == 0)
            even += ranks.at(k);
        else
            odd += ranks.at(k);
        if (even > cat.value) {
            witness = DichotomyWitness{
                "even-rank", k, even, cat.value,
                "dim pi_even = " + std::to_string(even) + " > cat = " +
                    std::to_string(cat.value) + " (cumulative through degree " +
                    std::to_string(k) + ")"};
        } else if (odd > cat.value) {
            witness = DichotomyWitness{
                "odd-rank", k, odd, cat.value,
                "dim pi_odd = " + std::to_string(odd) + " > cat = " +
                    std::to_string(cat.value) + " (cumulative through degree " +
                    std::to_string(k) + ")"};
        }
    }
    // totals over the whole window
    even = odd = 0;
    for (int k = 2; k <= N; ++k)
        (k % 2 == 0 ? even : odd) += ranks.at(k);
    out.even_total = even;
    out.odd_total = odd;

    if (out.euler < 0) {
        out.verdict = Verdict::Hyperbolic;
        out.witness = DichotomyWitness{"euler", betti.top_degree(),
                                       out.euler, 0,
                                       "chi = " + std::to_string(out.euler) + " < 0"};
        return out;
    }
    if (witness) {
        out.verdict = Verdict::Hyperbolic;
        out.witness = witness;
        return out;
    }
    // Elliptic: stabilization heuristic. Elliptic spaces carry no rational
    // homotopy above 2n - 1, so an empty generator window (2n-1, N] with
    // N >= 2n counts as stabilization evidence.
    bool window_ok = N >= 2 * n;
    bool window_empty = true;
    for (int k = 2 * n; k <= N; ++k)
        if (ranks.at(k) != 0)
            window_empty = false;
    bool inequalities = even <= odd && odd <= cat.value;
    if (window_ok && window_empty && inequalities) {
        out.verdict = Verdict::Elliptic;
        out.stabilization_note =
            "no generators in degrees (" + std::to_string(2 * n - 1) + ", " +
            std::to_string(N) + "]; dim pi_even = " + std::to_string(even) +
            " <= dim pi_odd = " + std::to_string(odd) +
            " <= cat = " + std::to_string(cat.value) + " (stabilization heuristic)";
        return out;
    }
    out.verdict = Verdict::Inconclusive;
    if (!window_ok)
        out.binding_constraint = "truncation " + std::to_string(N) +
                                 " < 2 * formal dimension = " + std::to_string(2 * n);
    else if (!window_empty)
        out.binding_constraint = "generators still appear in degrees (" +
                                 std::to_string(2 * n - 1) + ", " + std::to_string(N) + "]";
    else
        out.binding_constraint =
            "rank inequalities not satisfied on the window: even = " +
            std::to_string(even) + ", odd = " + std::to_string(odd) +
            ", cat = " + std::to_string(cat.value);
    return out;
}

GrowthReport growth_report(const RankSequence& ranks) {
    const int N = ranks.truncation;
    if (N < 6)
        throw PreconditionError("growth_report: truncation must be >= 6");
    GrowthReport out;
    out.truncation = N;
    out.cumulative.assign(N + 1, 0);
    long long s = 0;
    for (int k = 0; k <= N; ++k) {
        s += ranks.at(k);
        out.cumulative[k] = s;
    }
    for (int k = 2; k <= N; ++k)
        if (out.cumulative[k - 2] > 0)
            out.window_ratios.emplace_back(
                k, Rational(out.cumulative[k], out.cumulative[k - 2]));
    int first_growth = -1;
    for (int k = 0; k <= N; ++k)
        if (out.cumulative[k] > 0) {
            first_growth = k;
            break;
        }
    bool monotone = first_growth >= 0;
    if (first_growth >= 0)
        for (int k = first_growth + 1; k <= N; ++k)
            if (out.cumulative[k] <= out.cumulative[k - 1])
                monotone = false;
    out.monotone_from_first_growth = monotone;
    bool finite_tail = true;
    for (int k = std::max(2, N - 2); k <= N; ++k)
        if (ranks.at(k) != 0)
            finite_tail = false;
    if (finite_tail) {
        out.flag = "finite";
    } else {
        bool all_ratios_grow = !out.window_ratios.empty();
        for (const auto& [k, r] : out.window_ratios)
            if (r <= 1)
                all_ratios_grow = false;
        out.flag = (all_ratios_grow && monotone) ? "growing" : "mixed";
    }
    return out;
}

}  // namespace rht

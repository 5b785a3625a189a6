#include "rht/les.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

namespace {

constexpr long long kNoBound = -1;  // internal marker for "unbounded above"

struct Ivl {
    long long lo = 0;
    long long hi = kNoBound;  // kNoBound = +infinity

    bool bounded() const { return hi != kNoBound; }
    bool empty() const { return bounded() && lo > hi; }
};

bool tighten_lo(Ivl& v, long long lo) {
    if (lo > v.lo) {
        v.lo = lo;
        return true;
    }
    return false;
}

bool tighten_hi(Ivl& v, long long hi) {
    if (!v.bounded() || hi < v.hi) {
        v.hi = hi;  // may go negative; empty() then reports the violation
        return true;
    }
    return false;
}

std::string node_name(int p) {
    static const char* rows[3] = {"B", "E", "F"};
    return std::string("Pi^") + std::to_string(p / 3 + 1) + "(" + rows[p % 3] + ")";
}

std::string map_name(int p, int nnodes) {
    if (p + 1 >= nnodes)
        return node_name(p) + " -> (beyond window)";
    return node_name(p) + " -> " + node_name(p + 1);
}

struct Propagator {
    int nnodes;
    std::vector<Ivl> x;  // node dims
    std::vector<Ivl> r;  // map ranks; r[p]: node p -> node p+1 (last one trailing)

    // returns the description of the first violated variable, or empty
    std::optional<std::string> propagate() {
        bool changed = true;
        int guard = 0;
        while (changed) {
            changed = false;
            if (++guard > 20 * nnodes + 200)
                throw std::logic_error("interval propagation failed to converge");
            for (int p = 0; p < nnodes; ++p) {
                // rank caps
                if (x[p].bounded())
                    changed |= tighten_hi(r[p], x[p].hi);
                if (p + 1 < nnodes && x[p + 1].bounded())
                    changed |= tighten_hi(r[p], x[p + 1].hi);
                // exactness x_p = r_{p-1} + r_p  (r_{-1} = 0)
                long long in_lo = p > 0 ? r[p - 1].lo : 0;
                bool in_bounded = p > 0 ? r[p - 1].bounded() : true;
                long long in_hi = p > 0 ? (in_bounded ? r[p - 1].hi : 0) : 0;
                changed |= tighten_lo(x[p], in_lo + r[p].lo);
                if (in_bounded && r[p].bounded())
                    changed |= tighten_hi(x[p], in_hi + r[p].hi);
                if (in_bounded && x[p].lo - in_hi > r[p].lo)
                    changed |= tighten_lo(r[p], x[p].lo - in_hi);
                if (x[p].bounded())
                    changed |= tighten_hi(r[p], x[p].hi - in_lo);
                if (p > 0) {
                    if (r[p].bounded())
                        changed |= tighten_lo(r[p - 1], x[p].lo - r[p].hi);
                    if (x[p].bounded())
                        changed |= tighten_hi(r[p - 1], x[p].hi - r[p].lo);
                }
                if (x[p].empty())
                    return "dimension of " + node_name(p);
                if (r[p].empty())
                    return "rank of " + map_name(p, nnodes);
            }
        }
        return std::nullopt;
    }
};

std::string segment_description(const LESInstance& inst, int p) {
    // the constraint segment between the nearest known entries around node p
    auto known_at = [&](int node) -> bool {
        int k = node / 3 + 1;
        switch (node % 3) {
            case 0: return inst.dims_B[k].has_value();
            case 1: return inst.dims_E[k].has_value();
            default: return inst.dims_F[k].has_value();
        }
    };
    int nnodes = 3 * inst.max_degree;
    int lo = p, hi = p;
    while (lo > 0 && !known_at(lo))
        --lo;
    while (hi + 1 < nnodes && !known_at(hi))
        ++hi;
    std::ostringstream os;
    os << "exactness constraints between " << node_name(lo) << " and " << node_name(hi);
    return os.str();
}

LESWitness extract_witness(Propagator state) {
    const int nnodes = state.nnodes;
    for (int p = 0; p < nnodes; ++p) {
        state.r[p].hi = state.r[p].lo;
        auto bad = state.propagate();
        if (bad)
            throw std::logic_error("witness extraction failed at " + *bad);
    }
    LESWitness w;
    w.dims.resize(nnodes);
    w.ranks.resize(nnodes);
    for (int p = 0; p < nnodes; ++p) {
        w.ranks[p] = state.r[p].lo;
        w.dims[p] = (p > 0 ? state.r[p - 1].lo : 0) + state.r[p].lo;
    }
    return w;
}

}  // namespace

LESSolution solve_les(const LESInstance& inst) {
    const int N = inst.max_degree;
    if (N < 1)
        throw PreconditionError("solve_les: degree range must be nonempty");
    auto row_ok = [&](const std::vector<std::optional<int>>& v) {
        if (static_cast<int>(v.size()) != N + 1)
            return false;
        for (const auto& e : v)
            if (e && *e < 0)
                return false;
        return true;
    };
    if (!row_ok(inst.dims_B) || !row_ok(inst.dims_E) || !row_ok(inst.dims_F))
        throw PreconditionError(
            "solve_les: dimension rows must cover degrees 1..N with nonnegative entries");
    for (int k : inst.zero_b_to_e)
        if (k < 1 || k > N)
            throw PreconditionError("solve_les: zero-map annotation outside the range");

    const int nnodes = 3 * N;
    Propagator base;
    base.nnodes = nnodes;
    base.x.assign(nnodes, Ivl{});
    base.r.assign(nnodes, Ivl{});
    auto known = [&](int p) -> const std::optional<int>& {
        int k = p / 3 + 1;
        switch (p % 3) {
            case 0: return inst.dims_B[k];
            case 1: return inst.dims_E[k];
            default: return inst.dims_F[k];
        }
    };
    for (int p = 0; p < nnodes; ++p)
        if (known(p))
            base.x[p] = Ivl{*known(p), *known(p)};
    for (int k : inst.zero_b_to_e)
        base.r[3 * (k - 1)] = Ivl{0, 0};

    if (auto bad = base.propagate()) {
        int p = 0;
        // locate the failing node for the segment description
        for (; p < nnodes; ++p)
            if (base.x[p].empty() || base.r[p].empty())
                break;
        throw InfeasibleError("infeasible instance: " + *bad + "; violated " +
                              segment_description(inst, std::min(p, nnodes - 1)));
    }

    LESSolution sol;
    sol.max_degree = N;
    sol.B.resize(N + 1);
    sol.E.resize(N + 1);
    sol.F.resize(N + 1);
    for (int p = 0; p < nnodes; ++p) {
        int k = p / 3 + 1;
        EntrySolution entry;
        entry.interval.lo = base.x[p].lo;
        if (base.x[p].bounded())
            entry.interval.hi = base.x[p].hi;
        else
            sol.any_unbounded = true;
        if (!known(p)) {
            // certify endpoints with witness assignments
            {
                Propagator pinned = base;
                pinned.x[p] = Ivl{base.x[p].lo, base.x[p].lo};
                if (auto bad = pinned.propagate())
                    throw std::logic_error("endpoint certification failed: " + *bad);
                entry.lo_witness = extract_witness(std::move(pinned));
            }
            if (base.x[p].bounded()) {
                Propagator pinned = base;
                pinned.x[p] = Ivl{base.x[p].hi, base.x[p].hi};
                if (auto bad = pinned.propagate())
                    throw std::logic_error("endpoint certification failed: " + *bad);
                entry.hi_witness = extract_witness(std::move(pinned));
            }
        }
        switch (p % 3) {
            case 0: sol.B[k] = std::move(entry); break;
            case 1: sol.E[k] = std::move(entry); break;
            default: sol.F[k] = std::move(entry); break;
        }
    }
    return sol;
}

std::optional<std::string> witness_violation(const LESInstance& inst, const LESWitness& w) {
    const int N = inst.max_degree;
    const int nnodes = 3 * N;
    if (static_cast<int>(w.dims.size()) != nnodes ||
        static_cast<int>(w.ranks.size()) != nnodes)
        return "witness has wrong shape";
    auto known = [&](int p) -> const std::optional<int>& {
        int k = p / 3 + 1;
        switch (p % 3) {
            case 0: return inst.dims_B[k];
            case 1: return inst.dims_E[k];
            default: return inst.dims_F[k];
        }
    };
    for (int p = 0; p < nnodes; ++p) {
        if (w.dims[p] < 0 || w.ranks[p] < 0)
            return "negative value at " + node_name(p);
        if (known(p) && w.dims[p] != *known(p))
            return "witness disagrees with the known dimension of " + node_name(p);
        long long in = p > 0 ? w.ranks[p - 1] : 0;
        if (w.dims[p] != in + w.ranks[p])
            return "exactness fails at " + node_name(p);
        if (w.ranks[p] > w.dims[p])
            return "rank exceeds source dimension at " + map_name(p, nnodes);
        if (p + 1 < nnodes && w.ranks[p] > w.dims[p + 1])
            return "rank exceeds target dimension at " + map_name(p, nnodes);
    }
    for (int k : inst.zero_b_to_e)
        if (w.ranks[3 * (k - 1)] != 0)
            return "annotated zero map has nonzero rank at degree " + std::to_string(k);
    return std::nullopt;
}

BoundReport isotropy_lower_bounds(const RankSequence& ranks_X, const GottliebBudget& budget) {
    const int N = ranks_X.truncation;
    BoundReport out;
    out.max_degree = N;
    out.cat = budget.cat.value;
    out.allowance.assign(N + 1, 0);
    out.bounds.assign(std::max(0, N), 0);
    // worst case: the evaluation image consumes the budget at the lowest odd
    // degrees where ranks exist (even degrees carry no allowance)
    int remaining = budget.total;
    int last_spent = 0;
    for (int j = 1; j <= N && remaining > 0; j += 2) {
        int take = std::min(remaining, ranks_X.at(j));
        if (take > 0) {
            out.allowance[j] = take;
            remaining -= take;
            last_spent = j;
        }
    }
    out.exhausted_within_window = (remaining == 0);
    out.total_shaved = budget.total - remaining;
    out.k0 = out.exhausted_within_window ? std::max(1, last_spent) : N + 1;
    for (int k = 1; k <= N - 1; ++k)
        out.bounds[k] = std::max(0, ranks_X.at(k + 1) - out.allowance[k + 1]);

    // feasibility pass: the bounds are realized by an explicit assignment
    LESInstance check;
    check.max_degree = N;
    check.dims_B.assign(N + 1, std::nullopt);
    check.dims_E.assign(N + 1, std::nullopt);
    check.dims_F.assign(N + 1, std::nullopt);
    LESWitness w;
    w.dims.assign(3 * N, 0);
    w.ranks.assign(3 * N, 0);
    for (int k = 1; k <= N; ++k) {
        long long b = ranks_X.at(k);
        long long e = out.allowance[k];
        long long f = k <= N - 1 ? out.bounds[k] : 0;
        check.dims_B[k] = static_cast<int>(b);
        check.dims_E[k] = static_cast<int>(e);
        if (k <= N - 1)
            check.dims_F[k] = static_cast<int>(f);
        else
            check.dims_F[k] = 0;
        int p = 3 * (k - 1);
        w.dims[p] = b;
        w.dims[p + 1] = e;
        w.dims[p + 2] = k <= N - 1 ? f : 0;
        w.ranks[p] = e;                        // B -> E with rank = allowance
        w.ranks[p + 1] = 0;                    // E -> F
        w.ranks[p + 2] = k <= N - 1 ? f : 0;   // F -> B' carries the bound
        // incoming to B_{k+1} must equal ranks[p+2]; checked below
    }
    // fix exactness at B nodes: dim B_k = rank(F_{k-1} -> B_k) + allowance(k)
    for (int k = 2; k <= N; ++k) {
        int p = 3 * (k - 1);
        w.ranks[p - 1] = ranks_X.at(k) - out.allowance[k];
    }
    if (auto bad = witness_violation(check, w))
        throw std::logic_error("isotropy bound feasibility pass failed: " + *bad);
    return out;
}

BlowupReport blowup_scenario(const RankSequence& ranks_M, int b2, const CatBound& cat) {
    if (b2 <= 2)
        throw PreconditionError(
            "blow-up scenario requires b2 = dim H^2(M) > 2 (got b2 = " +
            std::to_string(b2) + ")");
    const int N = ranks_M.truncation;
    BlowupReport out;
    out.b2 = b2;
    out.structure_group_ranks.assign(N + 1, 0);
    if (N >= 1)
        out.structure_group_ranks[1] = 1;
    if (N >= 3)
        out.structure_group_ranks[3] = 1;
    out.bounds = isotropy_lower_bounds(ranks_M, GottliebBudget::from_cat(cat));
    out.degree2_note =
        "degree 2 excluded: the embedding-space comparison depends on the first Chern "
        "class; degree 4 is covered (no nonzero degree map S^4 -> M)";
    out.cumulative_bounds.assign(N, 0);
    long long s = 0;
    for (int k = 2; k <= N - 1; ++k) {
        s += out.bounds.bounds[k];
        out.cumulative_bounds[k] = s;
    }
    bool growth = out.bounds.exhausted_within_window;
    for (int k = std::max(2, out.bounds.k0); k <= N - 1 && growth; ++k)
        if (ranks_M.at(k + 1) > 0 && out.bounds.bounds[k] <= 0)
            growth = false;
    out.unbounded_cumulative_growth = growth;
    return out;
}

// ------------------------------------------------------------------ parsing

namespace {

std::string trim_copy(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::optional<int>> parse_dim_row(const std::string& rhs, int n,
                                              const std::string& row) {
    std::vector<std::optional<int>> out(n + 1, std::nullopt);
    std::istringstream is(rhs);
    std::string tok;
    int k = 0;
    while (is >> tok) {
        ++k;
        if (k > n)
            throw ParseError("row " + row + " has more than " + std::to_string(n) +
                             " entries");
        if (tok == "?")
            continue;
        try {
            int v = std::stoi(tok);
            if (v < 0)
                throw ParseError("negative dimension in row " + row);
            out[k] = v;
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw ParseError("bad entry '" + tok + "' in row " + row);
        }
    }
    if (k != n)
        throw ParseError("row " + row + " has " + std::to_string(k) + " entries, expected " +
                         std::to_string(n));
    return out;
}

}  // namespace

LESInstance LESInstance::parse_document(std::istream& in) {
    LESInstance inst;
    std::string line;
    bool have_degrees = false;
    std::vector<std::pair<std::string, std::string>> rows;
    std::optional<int> cat_value;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim_copy(line);
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string kw;
        ls >> kw;
        if (kw == "degrees") {
            if (!(ls >> inst.max_degree) || inst.max_degree < 1)
                throw ParseError("bad degrees line: " + line);
            have_degrees = true;
        } else if (kw == "B" || kw == "E" || kw == "F") {
            auto eq = line.find('=');
            if (eq == std::string::npos)
                throw ParseError("dimension row needs '=': " + line);
            rows.emplace_back(kw, trim_copy(line.substr(eq + 1)));
        } else if (kw == "zero") {
            std::string which;
            int deg;
            if (!(ls >> which >> deg) || which != "B->E")
                throw ParseError("zero-map annotation must be 'zero B->E <degree>': " + line);
            inst.zero_b_to_e.push_back(deg);
        } else if (kw == "cat") {
            int v;
            if (!(ls >> v) || v < 0)
                throw ParseError("bad cat line: " + line);
            cat_value = v;
        } else {
            throw ParseError("unknown directive '" + kw + "'");
        }
    }
    if (!have_degrees)
        throw ParseError("missing 'degrees <N>' line");
    inst.dims_B.assign(inst.max_degree + 1, std::nullopt);
    inst.dims_E.assign(inst.max_degree + 1, std::nullopt);
    inst.dims_F.assign(inst.max_degree + 1, std::nullopt);
    for (const auto& [row, rhs] : rows) {
        auto parsed = parse_dim_row(rhs, inst.max_degree, row);
        if (row == "B")
            inst.dims_B = parsed;
        else if (row == "E")
            inst.dims_E = parsed;
        else
            inst.dims_F = parsed;
    }
    if (cat_value)
        inst.budget = GottliebBudget::from_cat(CatBound::user(std::max(1, *cat_value)));
    return inst;
}

LESInstance LESInstance::parse_document(const std::string& text) {
    std::istringstream is(text);
    return parse_document(is);
}

}  // namespace rht

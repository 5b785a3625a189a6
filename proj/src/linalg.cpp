#include "rht/linalg.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace rht {

void SparseMatrix::set(int r, int c, const Rational& v) {
    if (r < 0 || r >= rows || c < 0 || c >= cols)
        throw std::invalid_argument("SparseMatrix::set: index out of range");
    auto& col = columns[c].entries;
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const auto& e, int key) { return e.first < key; });
    if (it != col.end() && it->first == r) {
        if (v == 0)
            col.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        col.insert(it, {r, v});
    }
}

SparseVec matrix_apply(const SparseMatrix& m, const SparseVec& x) {
    std::map<int, Rational> acc;
    for (const auto& [c, xv] : x.entries) {
        if (c < 0 || c >= m.cols)
            throw std::invalid_argument("matrix_apply: dimension mismatch");
        for (const auto& [r, a] : m.columns[c].entries) {
            Rational v = acc[r] + a * xv;
            if (v == 0)
                acc.erase(r);
            else
                acc[r] = v;
        }
    }
    SparseVec out;
    out.entries.assign(acc.begin(), acc.end());
    return out;
}

namespace {

void content_strip(Echelon::Row& row) {
    BigInt g = 0;
    for (const auto& [c, v] : row) {
        g = gcd(g, abs(v));
        if (g == 1)
            return;
    }
    if (g > 1)
        for (auto& [c, v] : row)
            v /= g;
}

// new_row = a*r - b*piv, merging sorted sparse rows
Echelon::Row row_combine(const Echelon::Row& r, const Echelon::Row& piv, const BigInt& a,
                         const BigInt& b) {
    Echelon::Row out;
    out.reserve(r.size() + piv.size());
    auto ir = r.begin();
    auto ip = piv.begin();
    while (ir != r.end() || ip != piv.end()) {
        if (ip == piv.end() || (ir != r.end() && ir->first < ip->first)) {
            out.emplace_back(ir->first, a * ir->second);
            ++ir;
        } else if (ir == r.end() || ip->first < ir->first) {
            out.emplace_back(ip->first, -b * ip->second);
            ++ip;
        } else {
            BigInt v = a * ir->second - b * ip->second;
            if (v != 0)
                out.emplace_back(ir->first, std::move(v));
            ++ir;
            ++ip;
        }
    }
    return out;
}

}  // namespace

Echelon::Echelon(std::vector<Row> rows, int ncols) : ncols_(ncols) {
    if (ncols < 0)
        throw std::invalid_argument("Echelon: negative column count");
    pivot_of_col_.assign(ncols, -1);
    struct Pending {
        Row row;
        unsigned seq;
    };
    std::vector<std::vector<Pending>> bucket(ncols);
    unsigned seq = 0;
    auto enqueue = [&](Row&& r) {
        content_strip(r);
        if (r.empty())
            return;
        int lead = r.front().first;
        if (lead < 0 || lead >= ncols_)
            throw std::invalid_argument("Echelon: column index out of range");
        bucket[lead].push_back(Pending{std::move(r), seq++});
    };
    for (auto& r : rows) {
        if (!std::is_sorted(r.begin(), r.end(),
                            [](const auto& x, const auto& y) { return x.first < y.first; }))
            std::sort(r.begin(), r.end());
        enqueue(std::move(r));
    }
    for (int c = 0; c < ncols_; ++c) {
        auto& cand = bucket[c];
        if (cand.empty())
            continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < cand.size(); ++i) {
            if (std::pair(cand[i].row.size(), cand[i].seq) <
                std::pair(cand[best].row.size(), cand[best].seq))
                best = i;
        }
        Row piv = std::move(cand[best].row);
        const BigInt& p = piv.front().second;
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (i == best)
                continue;
            Row& r = cand[i].row;
            const BigInt& rc = r.front().second;
            BigInt g = gcd(p, rc);
            Row next = row_combine(r, piv, p / g, rc / g);
            enqueue(std::move(next));
        }
        cand.clear();
        cand.shrink_to_fit();
        pivot_of_col_[c] = static_cast<int>(pivot_cols_.size());
        pivot_cols_.push_back(c);
        pivot_rows_.push_back(std::move(piv));
    }
}

bool Echelon::is_pivot(int col) const {
    return col >= 0 && col < ncols_ && pivot_of_col_[col] >= 0;
}

const Echelon::Row* Echelon::pivot_row(int col) const {
    if (!is_pivot(col))
        return nullptr;
    return &pivot_rows_[pivot_of_col_[col]];
}

std::vector<int> Echelon::free_columns() const {
    std::vector<int> out;
    for (int c = 0; c < ncols_; ++c)
        if (pivot_of_col_[c] < 0)
            out.push_back(c);
    return out;
}

namespace {

SparseVec normalize_rational_solution(std::unordered_map<int, Rational>& x) {
    std::vector<std::pair<int, Rational>> entries;
    entries.reserve(x.size());
    for (auto& [i, v] : x)
        if (v != 0)
            entries.emplace_back(i, v);
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    BigInt den = 1;
    for (const auto& [i, v] : entries)
        den = lcm(den, denominator(v));
    BigInt g = 0;
    std::vector<std::pair<int, BigInt>> ints;
    ints.reserve(entries.size());
    for (const auto& [i, v] : entries) {
        BigInt w = numerator(v) * (den / denominator(v));
        g = gcd(g, abs(w));
        ints.emplace_back(i, std::move(w));
    }
    if (g > 1)
        for (auto& [i, w] : ints)
            w /= g;
    if (!ints.empty() && ints.front().second < 0)
        for (auto& [i, w] : ints)
            w = -w;
    SparseVec out;
    out.entries.reserve(ints.size());
    for (auto& [i, w] : ints)
        out.entries.emplace_back(i, Rational(w));
    return out;
}

}  // namespace

SparseVec Echelon::kernel_vector(int free_col) const {
    if (is_pivot(free_col))
        throw std::invalid_argument("kernel_vector: column is a pivot");
    std::unordered_map<int, Rational> x;
    x[free_col] = 1;
    // only pivots left of the free column can acquire nonzero values
    for (auto it = pivot_cols_.rbegin(); it != pivot_cols_.rend(); ++it) {
        int p = *it;
        if (p >= free_col)
            continue;
        const Row& row = pivot_rows_[pivot_of_col_[p]];
        Rational s = 0;
        for (const auto& [j, v] : row) {
            if (j == p)
                continue;
            auto found = x.find(j);
            if (found != x.end())
                s += Rational(v) * found->second;
        }
        if (s != 0)
            x[p] = -s / Rational(row.front().second);
    }
    return normalize_rational_solution(x);
}

std::optional<SparseVec> Echelon::solve_augmented() const {
    const int rhs_col = ncols_ - 1;
    if (is_pivot(rhs_col))
        return std::nullopt;  // a row reduced to 0 = nonzero rhs
    std::unordered_map<int, Rational> x;
    for (auto it = pivot_cols_.rbegin(); it != pivot_cols_.rend(); ++it) {
        int p = *it;
        const Row& row = pivot_rows_[pivot_of_col_[p]];
        Rational s = 0;
        for (const auto& [j, v] : row) {
            if (j == p)
                continue;
            if (j == rhs_col) {
                s -= Rational(v);  // move rhs across
                continue;
            }
            auto found = x.find(j);
            if (found != x.end())
                s += Rational(v) * found->second;
        }
        Rational xp = -s / Rational(row.front().second);
        if (xp != 0)
            x[p] = xp;
    }
    std::vector<std::pair<int, Rational>> entries(x.begin(), x.end());
    std::sort(entries.begin(), entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SparseVec out;
    out.entries = std::move(entries);
    return out;
}

Echelon::Row integer_row(const std::vector<std::pair<int, Rational>>& entries) {
    BigInt den = 1;
    for (const auto& [i, v] : entries)
        den = lcm(den, denominator(v));
    Echelon::Row out;
    out.reserve(entries.size());
    for (const auto& [i, v] : entries) {
        if (v == 0)
            continue;
        out.emplace_back(i, numerator(v) * (den / denominator(v)));
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
}

Echelon row_echelon(const SparseMatrix& m) {
    // gather rows from the column-major storage
    std::vector<std::vector<std::pair<int, Rational>>> rows(m.rows);
    for (int c = 0; c < m.cols; ++c)
        for (const auto& [r, v] : m.columns[c].entries)
            rows[r].emplace_back(c, v);
    std::vector<Echelon::Row> irows;
    irows.reserve(rows.size());
    for (auto& r : rows)
        if (!r.empty())
            irows.push_back(integer_row(r));
    return Echelon(std::move(irows), m.cols);
}

Echelon column_space_echelon(const SparseMatrix& m) {
    std::vector<Echelon::Row> irows;
    irows.reserve(m.cols);
    for (int c = 0; c < m.cols; ++c)
        if (!m.columns[c].entries.empty())
            irows.push_back(integer_row(m.columns[c].entries));
    return Echelon(std::move(irows), m.rows);
}

std::vector<SparseVec> kernel_of_columns(const SparseMatrix& m,
                                         const std::vector<int>& allowed) {
    std::vector<std::vector<std::pair<int, Rational>>> rows(m.rows);
    for (std::size_t pos = 0; pos < allowed.size(); ++pos) {
        int c = allowed[pos];
        for (const auto& [r, v] : m.columns.at(c).entries)
            rows[r].emplace_back(static_cast<int>(pos), v);
    }
    std::vector<Echelon::Row> irows;
    irows.reserve(rows.size());
    for (auto& r : rows)
        if (!r.empty())
            irows.push_back(integer_row(r));
    Echelon ech(std::move(irows), static_cast<int>(allowed.size()));
    std::vector<SparseVec> out;
    for (int f : ech.free_columns()) {
        SparseVec kv = ech.kernel_vector(f);
        SparseVec mapped;
        mapped.entries.reserve(kv.entries.size());
        for (const auto& [i, v] : kv.entries)
            mapped.entries.emplace_back(allowed[i], v);
        std::sort(mapped.entries.begin(), mapped.entries.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        out.push_back(std::move(mapped));
    }
    return out;
}

LinearSolution::LinearSolution(SparseMatrix m)
    : matrix_(std::move(m)), ech_(row_echelon(matrix_)) {}

std::vector<SparseVec> LinearSolution::kernel_basis() const {
    std::vector<SparseVec> out;
    for (int f : ech_.free_columns())
        out.push_back(ech_.kernel_vector(f));
    return out;
}

std::vector<SparseVec> LinearSolution::image_basis() const {
    std::vector<SparseVec> out;
    for (int c : ech_.pivot_columns())
        out.push_back(matrix_.columns[c]);
    return out;
}

std::optional<SparseVec> LinearSolution::preimage(const SparseVec& b) const {
    for (const auto& [i, v] : b.entries)
        if (i < 0 || i >= matrix_.rows)
            throw std::invalid_argument("preimage: dimension mismatch");
    std::vector<std::vector<std::pair<int, Rational>>> rows(matrix_.rows);
    for (int c = 0; c < matrix_.cols; ++c)
        for (const auto& [r, v] : matrix_.columns[c].entries)
            rows[r].emplace_back(c, v);
    for (const auto& [r, v] : b.entries)
        rows[r].emplace_back(matrix_.cols, v);
    std::vector<Echelon::Row> irows;
    irows.reserve(rows.size());
    for (auto& r : rows)
        if (!r.empty())
            irows.push_back(integer_row(r));
    Echelon aug(std::move(irows), matrix_.cols + 1);
    return aug.solve_augmented();
}

LinearSolution solve_linear(const SparseMatrix& m) {
    return LinearSolution(m);
}

int matrix_rank(const SparseMatrix& m) {
    return row_echelon(m).rank();
}

}  // namespace rht

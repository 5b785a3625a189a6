#include "rht/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace rht {

void IntersectionForm::validate() const {
    const int n = b2();
    for (int i = 0; i < n; ++i)
        if (static_cast<int>(q[i].size()) != n)
            throw ValidationError("intersection form is not square");
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (q[i][j] != q[j][i])
                throw ValidationError("intersection form is not symmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
    // nondegenerate over Q (Poincare duality): full rank
    SparseMatrix m = SparseMatrix::zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (q[i][j] != 0)
                m.set(i, j, Rational(q[i][j]));
    if (matrix_rank(m) != n)
        throw ValidationError("intersection form is degenerate (duality fails)");
}

IntersectionForm IntersectionForm::diagonal(const std::vector<long long>& entries) {
    IntersectionForm f;
    const int n = static_cast<int>(entries.size());
    f.q.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        f.q[i][i] = entries[i];
    return f;
}

IntersectionForm IntersectionForm::block_sum(const IntersectionForm& a,
                                             const IntersectionForm& b) {
    IntersectionForm f;
    const int n = a.b2() + b.b2();
    f.q.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < a.b2(); ++i)
        for (int j = 0; j < a.b2(); ++j)
            f.q[i][j] = a.q[i][j];
    for (int i = 0; i < b.b2(); ++i)
        for (int j = 0; j < b.b2(); ++j)
            f.q[a.b2() + i][a.b2() + j] = b.q[i][j];
    return f;
}

namespace {

FiniteDGA validated(FiniteDGA a, const std::string& what) {
    ValidationReport r = validate_dga(a);
    if (!r.ok)
        throw ValidationError(what + " failed validation [" + r.first_failure->check +
                              "]: " + r.first_failure->witness);
    return a;
}

}  // namespace

FiniteDGA four_manifold(const IntersectionForm& form) {
    form.validate();
    const int n = form.b2();
    FiniteDGA::Builder b;
    b.add_class("one", 0);
    for (int i = 0; i < n; ++i)
        b.add_class("x" + std::to_string(i + 1), 2);
    b.add_class("vol", 4);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (form.q[i][j] == 0)
                continue;
            FiniteElement v;
            v.degree = 4;
            v.coords.entries = {{0, Rational(form.q[i][j])}};
            b.set_product("x" + std::to_string(i + 1), "x" + std::to_string(j + 1), v);
        }
    }
    return validated(b.build(), "four_manifold");
}

FiniteDGA sphere(int n) {
    if (n <= 1)
        throw PreconditionError("sphere: n must be >= 2");
    FiniteDGA::Builder b;
    b.add_class("one", 0);
    b.add_class("u", n);
    // the top class squares to zero (absent table entry); for odd n this is
    // also forced by graded commutativity
    return validated(b.build(), "sphere");
}

FiniteDGA projective(int n) {
    if (n < 1)
        throw PreconditionError("projective: n must be >= 1");
    FiniteDGA::Builder b;
    b.add_class("one", 0);
    for (int p = 1; p <= n; ++p)
        b.add_class("u" + std::to_string(p), 2 * p);
    for (int p = 1; p <= n; ++p)
        for (int r = 1; r <= n; ++r) {
            if (p + r > n)
                continue;
            FiniteElement v;
            v.degree = 2 * (p + r);
            v.coords.entries = {{0, Rational(1)}};
            b.set_product("u" + std::to_string(p), "u" + std::to_string(r), v);
        }
    return validated(b.build(), "projective");
}

FiniteDGA point() {
    FiniteDGA::Builder b;
    b.add_class("one", 0);
    return validated(b.build(), "point");
}

FiniteDGA product(const FiniteDGA& a, const FiniteDGA& b) {
    FiniteDGA::Builder out;
    // class of the pair (a_i, b_j); unit pairs collapse to readable names
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, std::string> name_of;
    std::set<std::string> used;
    auto pair_name = [&](int da, int ia, int db, int ib) -> std::string {
        const std::string& na = a.class_name(da, ia);
        const std::string& nb = b.class_name(db, ib);
        std::string n;
        if (da == 0 && db == 0)
            n = "one";
        else if (da == 0)
            n = nb;
        else if (db == 0)
            n = na;
        else
            n = na + "_" + nb;
        std::string candidate = n;
        int serial = 1;
        while (used.count(candidate))
            candidate = n + "_" + std::to_string(++serial);
        used.insert(candidate);
        return candidate;
    };
    int top = a.top_degree() + b.top_degree();
    for (int deg = 0; deg <= top; ++deg)
        for (int da = 0; da <= std::min(deg, a.top_degree()); ++da) {
            int db = deg - da;
            for (int ia = 0; ia < a.dim(da); ++ia)
                for (int ib = 0; ib < b.dim(db); ++ib) {
                    std::string n = pair_name(da, ia, db, ib);
                    name_of[{{da, ia}, {db, ib}}] = n;
                    out.add_class(n, deg);
                }
        }
    FiniteDGA skeleton = out.peek();
    auto as_element = [&](int da, const FiniteElement& ea, int db, const FiniteElement& eb,
                          const Rational& c) -> FiniteElement {
        // c * (ea tensor eb), expanded over pair classes
        FiniteElement res;
        res.degree = da + db;
        for (const auto& [ia, ca] : ea.coords.entries)
            for (const auto& [ib, cb] : eb.coords.entries) {
                auto key = skeleton.find_class(name_of.at({{da, ia}, {db, ib}}));
                FiniteElement term;
                term.degree = key.first;
                term.coords.entries = {{key.second, c * ca * cb}};
                res = skeleton.add(res, term);
            }
        return res;
    };
    // (x tensor y)(x' tensor y') = (-1)^{|y||x'|} xx' tensor yy'
    for (const auto& [key1, n1] : name_of)
        for (const auto& [key2, n2] : name_of) {
            auto [ka, kb] = key1;
            auto [la, lb] = key2;
            FiniteElement xx = a.product_of_basis(ka.first, ka.second, la.first, la.second);
            FiniteElement yy = b.product_of_basis(kb.first, kb.second, lb.first, lb.second);
            if (xx.is_zero() || yy.is_zero())
                continue;
            int sign = (kb.first % 2 == 1 && la.first % 2 == 1) ? -1 : 1;
            FiniteElement v = as_element(xx.degree, xx, yy.degree, yy, Rational(sign));
            if (!v.is_zero())
                out.set_product(n1, n2, v);
        }
    // d(x tensor y) = dx tensor y + (-1)^{|x|} x tensor dy
    bool any_d = !a.has_zero_differential() || !b.has_zero_differential();
    if (any_d) {
        for (const auto& [key, n] : name_of) {
            auto [ka, kb] = key;
            FiniteElement dx = a.d(a.basis_element(ka.first, ka.second));
            FiniteElement y = b.basis_element(kb.first, kb.second);
            FiniteElement x = a.basis_element(ka.first, ka.second);
            FiniteElement dy = b.d(y);
            FiniteElement v = skeleton.zero();
            v.degree = ka.first + kb.first + 1;
            if (!dx.is_zero())
                v = skeleton.add(v, as_element(dx.degree, dx, kb.first, y, 1));
            if (!dy.is_zero())
                v = skeleton.add(
                    v, as_element(ka.first, x, dy.degree, dy, ka.first % 2 ? -1 : 1));
            if (!v.is_zero())
                out.set_differential(n, v);
        }
    }
    return validated(out.build(), "product");
}

FiniteDGA connected_sum_4d(const IntersectionForm& a, const IntersectionForm& b) {
    return four_manifold(IntersectionForm::block_sum(a, b));
}

BettiData betti_data(const FiniteDGA& a) {
    BettiData out;
    for (int k = 0; k <= a.top_degree(); ++k)
        out.b.push_back(cohomology_dimension(a, k));
    while (!out.b.empty() && out.b.back() == 0)
        out.b.pop_back();
    return out;
}

IntersectionForm parse_intersection_form(const std::string& literal) {
    std::string s;
    for (char c : literal)
        if (!std::isspace(static_cast<unsigned char>(c)))
            s += c;
    if (s.rfind("diag(", 0) == 0 && s.back() == ')') {
        std::string inner = s.substr(5, s.size() - 6);
        std::vector<long long> entries;
        std::istringstream is(inner);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            try {
                entries.push_back(std::stoll(tok));
            } catch (const std::exception&) {
                throw ParseError("bad diagonal entry '" + tok + "' in " + literal);
            }
        }
        if (entries.empty())
            throw ParseError("diag() needs at least one entry");
        return IntersectionForm::diagonal(entries);
    }
    if (s.size() >= 4 && s.substr(0, 2) == "[[" && s.substr(s.size() - 2) == "]]") {
        std::string inner = s.substr(2, s.size() - 4);
        std::vector<std::vector<long long>> rows;
        std::size_t pos = 0;
        std::string row;
        // rows separated by "],["
        while (pos <= inner.size()) {
            std::size_t sep = inner.find("],[", pos);
            row = sep == std::string::npos ? inner.substr(pos) : inner.substr(pos, sep - pos);
            std::vector<long long> r;
            std::istringstream is(row);
            std::string tok;
            while (std::getline(is, tok, ',')) {
                try {
                    r.push_back(std::stoll(tok));
                } catch (const std::exception&) {
                    throw ParseError("bad matrix entry '" + tok + "' in " + literal);
                }
            }
            rows.push_back(std::move(r));
            if (sep == std::string::npos)
                break;
            pos = sep + 3;
        }
        IntersectionForm f;
        f.q = std::move(rows);
        return f;
    }
    throw ParseError("unrecognized intersection form literal: " + literal);
}

std::vector<std::string> preset_names() {
    return {"point", "S2",   "S3",   "S4",   "S5",   "S6",  "CP2",
            "CP3",   "CP4",  "S2xS2", "2CP2", "3CP2", "4CP2", "5CP2"};
}

Preset resolve_preset(const std::string& name) {
    if (name == "point")
        return Preset{name, point(), false, std::nullopt, "a single point (Q in degree 0)"};
    if (name.size() >= 2 && name[0] == 'S' &&
        std::all_of(name.begin() + 1, name.end(),
                    [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        int n = std::stoi(name.substr(1));
        if (n >= 2 && n <= 16)
            return Preset{name, sphere(n), false, std::nullopt,
                          "the " + std::to_string(n) + "-sphere"};
    }
    if (name.rfind("CP", 0) == 0 && name.size() > 2) {
        int n = std::stoi(name.substr(2));
        if (n >= 1 && n <= 16) {
            Preset p{name, projective(n), n == 2, std::nullopt,
                     "complex projective " + std::to_string(n) + "-space"};
            if (n == 2)
                p.b2 = 1;
            return p;
        }
    }
    if (name == "S2xS2") {
        IntersectionForm f;
        f.q = {{0, 1}, {1, 0}};
        return Preset{name, four_manifold(f), true, 2, "S^2 x S^2 (hyperbolic form)"};
    }
    if (name.size() > 3 && name.substr(name.size() - 3) == "CP2" &&
        std::isdigit(static_cast<unsigned char>(name[0]))) {
        int m = std::stoi(name.substr(0, name.size() - 3));
        if (m >= 1 && m <= 24) {
            IntersectionForm f =
                IntersectionForm::diagonal(std::vector<long long>(m, 1));
            return Preset{name, four_manifold(f), true, m,
                          "connected sum of " + std::to_string(m) + " copies of CP^2"};
        }
    }
    // fall back to an intersection-form literal
    try {
        IntersectionForm f = parse_intersection_form(name);
        return Preset{name, four_manifold(f), true, f.b2(),
                      "4-manifold with intersection form " + name};
    } catch (const ParseError&) {
        throw ParseError("unknown preset or form literal: '" + name + "'");
    }
}

}  // namespace rht

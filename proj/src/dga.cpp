#include "rht/dga.hpp"

#include <algorithm>
#include <cctype>
#include <random>
#include <sstream>

namespace rht {

// ---------------------------------------------------------------- free side

Differential::Differential(const FreeGradedAlgebra& alg) : alg_(alg) {
    images_.assign(alg.generator_count(), alg.zero());
}

Differential::Differential(const FreeGradedAlgebra& alg, std::vector<Element> images)
    : alg_(alg) {
    if (images.size() != alg.generator_count())
        throw std::invalid_argument("Differential: one image per generator required");
    images_.reserve(images.size());
    for (std::size_t pos = 0; pos < images.size(); ++pos) {
        Element im = alg.adopt(images[pos]);
        if (!im.is_zero() && im.degree() != alg.generator_degree(static_cast<int>(pos)) + 1)
            throw std::invalid_argument("Differential: image of '" +
                                        alg.generator(static_cast<int>(pos)).name +
                                        "' must have degree deg+1");
        images_.push_back(std::move(im));
    }
}

bool Differential::is_zero() const {
    for (const auto& im : images_)
        if (!im.is_zero())
            return false;
    return true;
}

Element Differential::apply_monomial(const Monomial& m) const {
    // d(f1 ... fr) = sum_i (-1)^{deg(f1..f_{i-1})} f1..f_{i-1} d(f_i) f_{i+1}..fr
    Element out = alg_.zero();
    int prefix_deg = 0;
    for (std::size_t i = 0; i < m.factors.size(); ++i) {
        auto [pos, exp] = m.factors[i];
        const Element& dg = images_[pos];
        if (!dg.is_zero()) {
            Monomial prefix;
            prefix.factors.assign(m.factors.begin(), m.factors.begin() + i);
            Monomial suffix;
            suffix.factors.assign(m.factors.begin() + i + 1, m.factors.end());
            // d(g^e) = e g^{e-1} dg (g even; for odd g, e = 1)
            Element mid = dg;
            if (exp > 1) {
                Monomial reduced;
                reduced.factors = {{pos, exp - 1}};
                mid = alg_.multiply(Element(alg_, reduced, exp), dg);
            }
            Element term = alg_.multiply(Element(alg_, prefix, prefix_deg % 2 ? -1 : 1), mid);
            term = alg_.multiply(term, Element(alg_, suffix, 1));
            out += term;
        }
        prefix_deg += exp * alg_.generator_degree(pos);
    }
    return out;
}

Element Differential::apply(const Element& e) const {
    if (!alg_.accepts(e))
        throw std::invalid_argument("Differential::apply: element from a different algebra");
    Element out = alg_.zero();
    for (const auto& [m, c] : e.terms()) {
        Element dm = apply_monomial(m);
        dm *= c;
        out += dm;
    }
    return out;
}

SparseMatrix Differential::matrix(int degree) const {
    const auto& dom = alg_.monomial_basis(degree);
    const auto& cod = alg_.monomial_basis(degree + 1);
    SparseMatrix m = SparseMatrix::zero(static_cast<int>(cod.size()),
                                        static_cast<int>(dom.size()));
    for (std::size_t j = 0; j < dom.size(); ++j) {
        Element dm = apply_monomial(dom[j]);
        auto& col = m.columns[j].entries;
        col.reserve(dm.term_count());
        for (const auto& [mono, c] : dm.terms())
            col.emplace_back(alg_.basis_index(degree + 1, mono), c);
        std::sort(col.begin(), col.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
    }
    return m;
}

Differential Differential::extended_to(const FreeGradedAlgebra& bigger,
                                       std::vector<Element> new_images) const {
    if (!alg_.is_prefix_of(bigger))
        throw std::invalid_argument("extended_to: not an extension of the current algebra");
    if (alg_.generator_count() + new_images.size() != bigger.generator_count())
        throw std::invalid_argument("extended_to: wrong number of new images");
    std::vector<Element> images;
    images.reserve(bigger.generator_count());
    for (const auto& im : images_)
        images.push_back(bigger.adopt(im));
    for (auto& im : new_images)
        images.push_back(bigger.adopt(im));
    return Differential(bigger, std::move(images));
}

// -------------------------------------------------------------- finite side

int FiniteDGA::dim(int degree) const {
    if (degree < 0 || degree >= static_cast<int>(names_.size()))
        return 0;
    return static_cast<int>(names_[degree].size());
}

long long FiniteDGA::total_dim() const {
    long long t = 0;
    for (const auto& v : names_)
        t += static_cast<long long>(v.size());
    return t;
}

const std::string& FiniteDGA::class_name(int degree, int i) const {
    return names_.at(degree).at(i);
}

std::pair<int, int> FiniteDGA::find_class(const std::string& name) const {
    for (int d = 0; d < static_cast<int>(names_.size()); ++d)
        for (int i = 0; i < static_cast<int>(names_[d].size()); ++i)
            if (names_[d][i] == name)
                return {d, i};
    throw ParseError("unknown class '" + name + "'");
}

FiniteElement FiniteDGA::basis_element(int degree, int i) const {
    if (i < 0 || i >= dim(degree))
        throw std::invalid_argument("basis_element: index out of range");
    FiniteElement e;
    e.degree = degree;
    e.coords.entries = {{i, Rational(1)}};
    return e;
}

FiniteElement FiniteDGA::product_of_basis(int da, int ia, int db, int ib) const {
    auto it = products_.find({{da, ia}, {db, ib}});
    if (it == products_.end()) {
        FiniteElement z;
        z.degree = da + db;
        return z;
    }
    return it->second;
}

FiniteElement FiniteDGA::add(const FiniteElement& a, const FiniteElement& b) const {
    if (a.is_zero())
        return b;
    if (b.is_zero())
        return a;
    if (a.degree != b.degree)
        throw std::invalid_argument("add: mixed degrees");
    FiniteElement out;
    out.degree = a.degree;
    auto ia = a.coords.entries.begin(), ib = b.coords.entries.begin();
    while (ia != a.coords.entries.end() || ib != b.coords.entries.end()) {
        if (ib == b.coords.entries.end() ||
            (ia != a.coords.entries.end() && ia->first < ib->first)) {
            out.coords.entries.push_back(*ia++);
        } else if (ia == a.coords.entries.end() || ib->first < ia->first) {
            out.coords.entries.push_back(*ib++);
        } else {
            Rational v = ia->second + ib->second;
            if (v != 0)
                out.coords.entries.emplace_back(ia->first, v);
            ++ia;
            ++ib;
        }
    }
    return out;
}

FiniteElement FiniteDGA::scale(const Rational& c, const FiniteElement& a) const {
    if (c == 0)
        return zero();
    FiniteElement out = a;
    for (auto& [i, v] : out.coords.entries)
        v *= c;
    return out;
}

FiniteElement FiniteDGA::multiply(const FiniteElement& a, const FiniteElement& b) const {
    FiniteElement out;
    out.degree = a.degree + b.degree;
    if (a.is_zero() || b.is_zero())
        return out;
    for (const auto& [ia, ca] : a.coords.entries) {
        for (const auto& [ib, cb] : b.coords.entries) {
            FiniteElement p = product_of_basis(a.degree, ia, b.degree, ib);
            if (!p.is_zero())
                out = add(out, scale(ca * cb, p));
        }
    }
    return out;
}

FiniteElement FiniteDGA::d(const FiniteElement& a) const {
    FiniteElement out;
    out.degree = a.degree + 1;
    auto it = d_.find(a.degree);
    if (it == d_.end() || a.is_zero())
        return out;
    SparseVec v = matrix_apply(it->second, a.coords);
    out.coords = std::move(v);
    return out;
}

SparseMatrix FiniteDGA::differential_matrix(int degree) const {
    auto it = d_.find(degree);
    if (it != d_.end())
        return it->second;
    return SparseMatrix::zero(dim(degree + 1), dim(degree));
}

std::string FiniteDGA::str(const FiniteElement& e) const {
    if (e.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [i, c] : e.coords.entries) {
        Rational a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        if (a != 1)
            os << to_string(a) << "*";
        os << class_name(e.degree, i);
        first = false;
    }
    return os.str();
}

// ------------------------------------------------------------------ builder

FiniteDGA::Builder& FiniteDGA::Builder::add_class(const std::string& name, int degree) {
    if (degree < 0)
        throw ParseError("class degree must be nonnegative: " + name);
    if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0])))
        throw ParseError("bad class name '" + name + "'");
    for (const auto& per_deg : a_.names_)
        for (const auto& n : per_deg)
            if (n == name)
                throw ParseError("duplicate class '" + name + "'");
    if (degree >= static_cast<int>(a_.names_.size()))
        a_.names_.resize(degree + 1);
    a_.names_[degree].push_back(name);
    return *this;
}

FiniteDGA::Builder& FiniteDGA::Builder::set_product(const std::string& a, const std::string& b,
                                                    const FiniteElement& v) {
    auto ka = a_.find_class(a);
    auto kb = a_.find_class(b);
    if (!v.is_zero() && v.degree != ka.first + kb.first)
        throw ParseError("product " + a + "*" + b + " has wrong degree");
    FiniteElement w = v;
    w.degree = ka.first + kb.first;
    a_.products_[{ka, kb}] = std::move(w);
    given_[{ka, kb}] = true;
    return *this;
}

FiniteDGA::Builder& FiniteDGA::Builder::set_differential(const std::string& name,
                                                         const FiniteElement& v) {
    auto k = a_.find_class(name);
    if (!v.is_zero() && v.degree != k.first + 1)
        throw ParseError("d " + name + " must land in degree " + std::to_string(k.first + 1));
    auto it = a_.d_.find(k.first);
    if (it == a_.d_.end()) {
        it = a_.d_.emplace(k.first,
                           SparseMatrix::zero(a_.dim(k.first + 1), a_.dim(k.first))).first;
    }
    for (const auto& [r, c] : v.coords.entries)
        it->second.set(r, k.second, c);
    return *this;
}

FiniteDGA FiniteDGA::Builder::build() {
    // unit products act as identity unless the document overrode them
    if (a_.dim(0) == 1) {
        std::pair<int, int> unit{0, 0};
        for (int d = 0; d < static_cast<int>(a_.names_.size()); ++d) {
            for (int i = 0; i < a_.dim(d); ++i) {
                std::pair<int, int> k{d, i};
                if (!given_.count({unit, k}))
                    a_.products_[{unit, k}] = a_.basis_element(d, i);
                if (!given_.count({k, unit}))
                    a_.products_[{k, unit}] = a_.basis_element(d, i);
            }
        }
    }
    // fill Koszul-symmetric counterparts of one-sidedly given products
    for (const auto& [key, flag] : given_) {
        auto [ka, kb] = key;
        if (given_.count({kb, ka}))
            continue;
        auto it = a_.products_.find({ka, kb});
        if (it == a_.products_.end())
            continue;
        int sign = (ka.first % 2 == 1 && kb.first % 2 == 1) ? -1 : 1;
        a_.products_[{kb, ka}] = a_.scale(sign, it->second);
    }
    return a_;
}

// ------------------------------------------------------------------- parser

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos)
        return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

FiniteElement FiniteDGA::parse_combination(const std::string& text) const {
    std::string t = trim(text);
    if (t == "0")
        return zero();
    FiniteElement out = zero();
    std::size_t i = 0;
    bool first = true;
    int degree = -1;
    while (i < t.size()) {
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
            ++i;
        if (i >= t.size())
            break;
        int sign = 1;
        if (t[i] == '+' || t[i] == '-') {
            sign = t[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError("expected '+' or '-' in combination: " + text);
        }
        first = false;
        while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
            ++i;
        Rational coeff(sign);
        if (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) {
            std::size_t j = i;
            while (j < t.size() &&
                   (std::isdigit(static_cast<unsigned char>(t[j])) || t[j] == '/'))
                ++j;
            coeff *= parse_rational(t.substr(i, j - i));
            i = j;
            while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
                ++i;
            if (i < t.size() && t[i] == '*')
                ++i;
            else
                throw ParseError("coefficient must multiply a class name: " + text);
            while (i < t.size() && std::isspace(static_cast<unsigned char>(t[i])))
                ++i;
        }
        std::size_t j = i;
        while (j < t.size() && (std::isalnum(static_cast<unsigned char>(t[j])) || t[j] == '_'))
            ++j;
        if (j == i)
            throw ParseError("expected class name in combination: " + text);
        auto [d, idx] = find_class(t.substr(i, j - i));
        i = j;
        if (degree < 0)
            degree = d;
        else if (degree != d)
            throw ParseError("mixed degrees in combination: " + text);
        FiniteElement term;
        term.degree = d;
        term.coords.entries = {{idx, coeff}};
        out = out.is_zero() ? term : add(out, term);
    }
    return out;
}

FiniteDGA FiniteDGA::parse_document(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty())
            lines.push_back(line);
    }
    Builder b;
    for (const auto& l : lines) {
        std::istringstream ls(l);
        std::string kw;
        ls >> kw;
        if (kw == "class") {
            std::string name;
            int degree;
            if (!(ls >> name >> degree))
                throw ParseError("bad class line: " + l);
            b.add_class(name, degree);
        } else if (kw != "product" && kw != "d") {
            throw ParseError("unknown directive '" + kw + "' in: " + l);
        }
    }
    for (const auto& l : lines) {
        std::istringstream ls(l);
        std::string kw;
        ls >> kw;
        if (kw == "product") {
            auto eq = l.find('=');
            if (eq == std::string::npos)
                throw ParseError("product line needs '=': " + l);
            std::string lhs = trim(l.substr(7, eq - 7));
            std::string rhs = trim(l.substr(eq + 1));
            auto star = lhs.find('*');
            if (star == std::string::npos)
                throw ParseError("product line needs 'a*b': " + l);
            std::string a = trim(lhs.substr(0, star));
            std::string bn = trim(lhs.substr(star + 1));
            b.set_product(a, bn, b.peek().parse_combination(rhs));
        } else if (kw == "d") {
            auto eq = l.find('=');
            if (eq == std::string::npos)
                throw ParseError("d line needs '=': " + l);
            std::string name = trim(l.substr(1, eq - 1));
            std::string rhs = trim(l.substr(eq + 1));
            b.set_differential(name, b.peek().parse_combination(rhs));
        }
    }
    return b.build();
}

FiniteDGA FiniteDGA::parse_document(const std::string& text) {
    std::istringstream is(text);
    return parse_document(is);
}

// --------------------------------------------------------------- validation

ValidationReport validate_dga(const FreeDGA& dga) {
    const auto& alg = dga.algebra;
    const int n = static_cast<int>(alg.generator_count());
    for (int p = 0; p < n; ++p)
        if (alg.generator_degree(p) < 2)
            return ValidationReport::fail(
                "simply-connected", "generator '" + alg.generator(p).name +
                                        "' has degree " +
                                        std::to_string(alg.generator_degree(p)) +
                                        " (degrees 0 and 1 are not allowed)");
    // triangularity: d(v) lies in the subalgebra on strictly earlier generators
    for (int p = 0; p < n; ++p) {
        const Element& im = dga.d.image(p);
        for (const auto& [m, c] : im.terms())
            for (const auto& [pos, exp] : m.factors)
                if (pos >= p)
                    return ValidationReport::fail(
                        "triangularity", "d(" + alg.generator(p).name + ") involves '" +
                                             alg.generator(pos).name +
                                             "', which does not precede it");
    }
    // d^2 = 0 generator-by-generator
    for (int p = 0; p < n; ++p) {
        Element dd = dga.d.apply(dga.d.image(p));
        if (!dd.is_zero())
            return ValidationReport::fail(
                "d-squared", "d^2(" + alg.generator(p).name + ") = " + dd.str());
    }
    // Leibniz on deterministically sampled pairs (the extension is defined by
    // the rule; this guards the implementation of apply)
    if (n > 0) {
        std::mt19937 rng(0x5eed);
        std::uniform_int_distribution<int> pick(0, n - 1);
        int samples = std::min(128, n * n);
        for (int s = 0; s < samples; ++s) {
            Element a = alg.generator_element(pick(rng));
            Element b = alg.generator_element(pick(rng));
            if (s % 3 == 2) {
                Element c = alg.generator_element(pick(rng));
                Element ab = alg.multiply(a, b);
                if (ab.is_zero())
                    continue;
                a = ab;
                b = c;
            }
            Element lhs = dga.d.apply(alg.multiply(a, b));
            int sign = a.degree() % 2 ? -1 : 1;
            Element rhs = alg.multiply(dga.d.apply(a), b) +
                          Rational(sign) * alg.multiply(a, dga.d.apply(b));
            if (!(lhs == rhs))
                return ValidationReport::fail("leibniz",
                                              "pair (" + a.str() + ", " + b.str() + ")");
        }
    }
    return ValidationReport::pass();
}

ValidationReport validate_dga(const FiniteDGA& a) {
    if (a.dim(0) != 1)
        return ValidationReport::fail("unit", "degree-0 component must be one-dimensional");
    for (int d = 0; d <= a.top_degree(); ++d) {
        for (int i = 0; i < a.dim(d); ++i) {
            FiniteElement e = a.basis_element(d, i);
            FiniteElement ue = a.multiply(a.unit(), e);
            FiniteElement eu = a.multiply(e, a.unit());
            if (!(ue.coords.entries == e.coords.entries) ||
                !(eu.coords.entries == e.coords.entries))
                return ValidationReport::fail("unit", "unit does not act as identity on '" +
                                                          a.class_name(d, i) + "'");
        }
    }
    // graded commutativity on all basis pairs
    for (int da = 0; da <= a.top_degree(); ++da)
        for (int ia = 0; ia < a.dim(da); ++ia)
            for (int db = 0; db <= a.top_degree(); ++db)
                for (int ib = 0; ib < a.dim(db); ++ib) {
                    FiniteElement ab = a.product_of_basis(da, ia, db, ib);
                    FiniteElement ba = a.product_of_basis(db, ib, da, ia);
                    int sign = (da % 2 == 1 && db % 2 == 1) ? -1 : 1;
                    FiniteElement want = a.scale(sign, ba);
                    if (!(ab.coords.entries == want.coords.entries))
                        return ValidationReport::fail(
                            "graded-commutativity",
                            a.class_name(da, ia) + " * " + a.class_name(db, ib));
                }
    // associativity on all basis triples
    for (int da = 0; da <= a.top_degree(); ++da)
        for (int ia = 0; ia < a.dim(da); ++ia)
            for (int db = 0; db <= a.top_degree(); ++db)
                for (int ib = 0; ib < a.dim(db); ++ib)
                    for (int dc = 0; dc <= a.top_degree(); ++dc)
                        for (int ic = 0; ic < a.dim(dc); ++ic) {
                            FiniteElement x = a.basis_element(da, ia);
                            FiniteElement y = a.basis_element(db, ib);
                            FiniteElement z = a.basis_element(dc, ic);
                            FiniteElement l = a.multiply(a.multiply(x, y), z);
                            FiniteElement r = a.multiply(x, a.multiply(y, z));
                            if (!(l.coords.entries == r.coords.entries))
                                return ValidationReport::fail(
                                    "associativity",
                                    a.class_name(da, ia) + " * " + a.class_name(db, ib) +
                                        " * " + a.class_name(dc, ic));
                        }
    // d^2 = 0 and Leibniz on all basis pairs
    for (int d = 0; d <= a.top_degree(); ++d) {
        for (int i = 0; i < a.dim(d); ++i) {
            FiniteElement e = a.basis_element(d, i);
            FiniteElement dd = a.d(a.d(e));
            if (!dd.is_zero())
                return ValidationReport::fail("d-squared",
                                              "d^2(" + a.class_name(d, i) + ") != 0");
        }
    }
    for (int da = 0; da <= a.top_degree(); ++da)
        for (int ia = 0; ia < a.dim(da); ++ia)
            for (int db = 0; db <= a.top_degree(); ++db)
                for (int ib = 0; ib < a.dim(db); ++ib) {
                    FiniteElement x = a.basis_element(da, ia);
                    FiniteElement y = a.basis_element(db, ib);
                    FiniteElement lhs = a.d(a.multiply(x, y));
                    FiniteElement rhs = a.add(
                        a.multiply(a.d(x), y),
                        a.scale(da % 2 ? -1 : 1, a.multiply(x, a.d(y))));
                    FiniteElement diff = a.add(lhs, a.scale(-1, rhs));
                    if (!diff.is_zero())
                        return ValidationReport::fail(
                            "leibniz", a.class_name(da, ia) + " * " + a.class_name(db, ib));
                }
    if (cohomology_dimension(a, 1) != 0)
        return ValidationReport::fail("simply-connected", "H^1 is nonzero");
    return ValidationReport::pass();
}

// --------------------------------------------------------------- cohomology

namespace {

// representatives of ker(d_out)/im(d_in) as coordinate vectors: cocycles
// supported away from the leading coordinates of the coboundary space
std::vector<SparseVec> cohomology_reps_core(const SparseMatrix& d_out,
                                            const SparseMatrix& d_in) {
    Echelon prev = column_space_echelon(d_in);
    std::vector<int> allowed;
    allowed.reserve(d_out.cols);
    for (int c = 0; c < d_out.cols; ++c)
        if (!prev.is_pivot(c))
            allowed.push_back(c);
    return kernel_of_columns(d_out, allowed);
}

}  // namespace

CohomologyReport<Element> cohomology(const FreeDGA& dga, int k, bool with_coboundaries) {
    if (k < 0)
        throw std::invalid_argument("cohomology: negative degree");
    const auto& alg = dga.algebra;
    CohomologyReport<Element> rep;
    rep.degree = k;
    if (k == 0) {
        rep.dimension = 1;
        rep.representatives.push_back(alg.unit());
        return rep;
    }
    SparseMatrix d_out = dga.d.matrix(k);
    SparseMatrix d_in = k >= 1 ? dga.d.matrix(k - 1)
                               : SparseMatrix::zero(d_out.cols, 0);
    const auto& basis = alg.monomial_basis(k);
    for (const auto& v : cohomology_reps_core(d_out, d_in)) {
        Element e = alg.zero();
        for (const auto& [i, c] : v.entries)
            e.add_term(basis[i], c);
        rep.representatives.push_back(std::move(e));
    }
    rep.dimension = static_cast<int>(rep.representatives.size());
    if (with_coboundaries && k >= 1) {
        LinearSolution sol(d_in);
        const auto& lower = alg.monomial_basis(k - 1);
        for (int c : sol.pivot_columns()) {
            Element img = dga.d.apply_monomial(lower[c]);
            rep.coboundaries.push_back(std::move(img));
        }
    }
    return rep;
}

CohomologyReport<FiniteElement> cohomology(const FiniteDGA& a, int k, bool with_coboundaries) {
    if (k < 0)
        throw std::invalid_argument("cohomology: negative degree");
    CohomologyReport<FiniteElement> rep;
    rep.degree = k;
    SparseMatrix d_out = a.differential_matrix(k);
    SparseMatrix d_in = k >= 1 ? a.differential_matrix(k - 1) : SparseMatrix::zero(a.dim(k), 0);
    for (const auto& v : cohomology_reps_core(d_out, d_in)) {
        FiniteElement e;
        e.degree = k;
        e.coords = v;
        rep.representatives.push_back(std::move(e));
    }
    rep.dimension = static_cast<int>(rep.representatives.size());
    if (with_coboundaries && k >= 1) {
        LinearSolution sol(d_in);
        for (int c : sol.pivot_columns()) {
            FiniteElement img = a.d(a.basis_element(k - 1, c));
            rep.coboundaries.push_back(std::move(img));
        }
    }
    return rep;
}

int cohomology_dimension(const FreeDGA& dga, int k) {
    if (k == 0)
        return 1;
    long long ck = dga.algebra.dimension(k);
    int rank_out = row_echelon(dga.d.matrix(k)).rank();
    int rank_in = k >= 1 ? row_echelon(dga.d.matrix(k - 1)).rank() : 0;
    return static_cast<int>(ck - rank_out - rank_in);
}

int cohomology_dimension(const FiniteDGA& a, int k) {
    if (k < 0)
        return 0;
    int ck = a.dim(k);
    int rank_out = row_echelon(a.differential_matrix(k)).rank();
    int rank_in = k >= 1 ? row_echelon(a.differential_matrix(k - 1)).rank() : 0;
    return ck - rank_out - rank_in;
}

// ---------------------------------------------------------------- morphisms

ModelMorphism::ModelMorphism(FreeGradedAlgebra source, FiniteDGA target,
                             std::vector<FiniteElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.generator_count())
        throw std::invalid_argument("ModelMorphism: one image per generator required");
    for (std::size_t p = 0; p < images_.size(); ++p)
        if (!images_[p].is_zero() &&
            images_[p].degree != source_.generator_degree(static_cast<int>(p)))
            throw std::invalid_argument("ModelMorphism: image of '" +
                                        source_.generator(static_cast<int>(p)).name +
                                        "' has wrong degree");
}

FiniteElement ModelMorphism::apply(const Element& e) const {
    FiniteElement out;
    out.degree = std::max(e.degree(), 0);
    for (const auto& [m, c] : e.terms()) {
        FiniteElement v = target_.unit();
        for (const auto& [pos, exp] : m.factors) {
            for (int t = 0; t < exp && !v.is_zero(); ++t)
                v = target_.multiply(v, images_[pos]);
            if (v.is_zero())
                break;
        }
        if (!v.is_zero())
            out = target_.add(out, target_.scale(c, v));
    }
    out.degree = std::max(e.degree(), 0);
    return out;
}

std::optional<std::string> ModelMorphism::chain_map_violation(const Differential& d) const {
    for (std::size_t p = 0; p < images_.size(); ++p) {
        FiniteElement lhs = apply(d.image(static_cast<int>(p)));
        FiniteElement rhs = target_.d(images_[p]);
        FiniteElement diff = target_.add(lhs, target_.scale(-1, rhs));
        if (!diff.is_zero())
            return source_.generator(static_cast<int>(p)).name;
    }
    return std::nullopt;
}

ModelMorphism ModelMorphism::extended_to(FreeGradedAlgebra bigger,
                                         std::vector<FiniteElement> new_images) const {
    if (!source_.is_prefix_of(bigger))
        throw std::invalid_argument("extended_to: not an extension of the source");
    std::vector<FiniteElement> images = images_;
    for (auto& im : new_images)
        images.push_back(std::move(im));
    return ModelMorphism(std::move(bigger), target_, std::move(images));
}

FiniteMorphism::FiniteMorphism(FiniteDGA source, FiniteDGA target,
                               std::map<std::pair<int, int>, FiniteElement> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {}

FiniteMorphism FiniteMorphism::identity(const FiniteDGA& a) {
    std::map<std::pair<int, int>, FiniteElement> images;
    for (int d = 0; d <= a.top_degree(); ++d)
        for (int i = 0; i < a.dim(d); ++i)
            images[{d, i}] = a.basis_element(d, i);
    return FiniteMorphism(a, a, std::move(images));
}

FiniteElement FiniteMorphism::apply(const FiniteElement& e) const {
    FiniteElement out;
    out.degree = e.degree;
    for (const auto& [i, c] : e.coords.entries) {
        auto it = images_.find({e.degree, i});
        if (it == images_.end())
            continue;
        out = target_.add(out, target_.scale(c, it->second));
    }
    out.degree = e.degree;
    return out;
}

std::optional<std::string> FiniteMorphism::chain_map_violation() const {
    for (int d = 0; d <= source_.top_degree(); ++d)
        for (int i = 0; i < source_.dim(d); ++i) {
            FiniteElement lhs = apply(source_.d(source_.basis_element(d, i)));
            auto it = images_.find({d, i});
            FiniteElement img = it != images_.end() ? it->second : target_.zero();
            FiniteElement rhs = target_.d(img);
            FiniteElement diff = target_.add(lhs, target_.scale(-1, rhs));
            if (!diff.is_zero())
                return source_.class_name(d, i);
        }
    return std::nullopt;
}

// -------------------------------------------------------------- induced map

namespace {

InducedMap induced_core(int k, const std::vector<SparseVec>& source_classes,
                        const CohomologyReport<FiniteElement>& target_reps,
                        const FiniteDGA& target) {
    InducedMap out;
    out.degree = k;
    out.source_dim = static_cast<int>(source_classes.size());
    out.target_dim = target_reps.dimension;
    int tdim = target.dim(k);
    // express each mapped class against [representatives | coboundaries]
    SparseMatrix combined = SparseMatrix::zero(
        tdim, target_reps.dimension + (k >= 1 ? target.dim(k - 1) : 0));
    for (int j = 0; j < target_reps.dimension; ++j)
        for (const auto& [i, v] : target_reps.representatives[j].coords.entries)
            combined.set(i, j, v);
    if (k >= 1) {
        SparseMatrix din = target.differential_matrix(k - 1);
        for (int c = 0; c < din.cols; ++c)
            for (const auto& [i, v] : din.columns[c].entries)
                combined.set(i, target_reps.dimension + c, v);
    }
    LinearSolution sol(combined);
    out.matrix = SparseMatrix::zero(target_reps.dimension, out.source_dim);
    for (int j = 0; j < out.source_dim; ++j) {
        auto x = sol.preimage(source_classes[j]);
        if (!x)
            throw std::logic_error("induced map: image class not representable");
        for (const auto& [i, v] : x->entries)
            if (i < target_reps.dimension)
                out.matrix.set(i, j, v);
    }
    out.rank = matrix_rank(out.matrix);
    return out;
}

}  // namespace

InducedMap induced_map_on_cohomology(const FreeDGA& source, const ModelMorphism& phi, int k) {
    if (auto bad = phi.chain_map_violation(source.d))
        throw ValidationError("morphism does not commute with differentials at generator '" +
                              *bad + "'");
    auto src = cohomology(source, k, false);
    auto tgt = cohomology(phi.target(), k, false);
    std::vector<SparseVec> mapped;
    mapped.reserve(src.representatives.size());
    for (const auto& z : src.representatives)
        mapped.push_back(phi.apply(z).coords);
    return induced_core(k, mapped, tgt, phi.target());
}

InducedMap induced_map_on_cohomology(const FiniteMorphism& phi, int k) {
    if (auto bad = phi.chain_map_violation())
        throw ValidationError("morphism does not commute with differentials at class '" +
                              *bad + "'");
    auto src = cohomology(phi.source(), k, false);
    auto tgt = cohomology(phi.target(), k, false);
    std::vector<SparseVec> mapped;
    mapped.reserve(src.representatives.size());
    for (const auto& z : src.representatives)
        mapped.push_back(phi.apply(z).coords);
    return induced_core(k, mapped, tgt, phi.target());
}

}  // namespace rht

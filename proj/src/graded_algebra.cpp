#include "rht/graded_algebra.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <sstream>

namespace rht {

namespace detail {

struct BasisEntry {
    std::vector<Monomial> monos;
    std::map<Monomial, int, MonomialOrder> index;
    explicit BasisEntry(const AlgebraData* d) : index(MonomialOrder{d}) {}
};

struct AlgebraData {
    std::vector<Generator> gens;
    mutable std::shared_mutex memo_mutex;
    mutable std::map<int, std::shared_ptr<const BasisEntry>> basis_memo;
};

}  // namespace detail

namespace {

// Saturation guard for dimension counting; real budgets sit far below this.
constexpr long long kDimSaturation = std::numeric_limits<long long>::max() / 4;

long long sat_add(long long a, long long b) {
    if (a >= kDimSaturation || b >= kDimSaturation || a + b >= kDimSaturation)
        return kDimSaturation;
    return a + b;
}

int mono_degree(const detail::AlgebraData& d, const Monomial& m) {
    int deg = 0;
    for (const auto& [pos, exp] : m.factors)
        deg += exp * d.gens[pos].degree;
    return deg;
}

}  // namespace

bool MonomialOrder::operator()(const Monomial& a, const Monomial& b) const {
    int da = mono_degree(*data, a);
    int db = mono_degree(*data, b);
    if (da != db)
        return da < db;
    // lexicographic on the exponent vector with earlier generators taking
    // precedence: powers of the first generator come first (x^2, x*y, y^2)
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        int pa = (ia != a.factors.end()) ? ia->first : std::numeric_limits<int>::max();
        int pb = (ib != b.factors.end()) ? ib->first : std::numeric_limits<int>::max();
        if (pa < pb)
            return true;  // a has a positive exponent where b has zero
        if (pb < pa)
            return false;
        if (ia->second != ib->second)
            return ia->second > ib->second;
        ++ia;
        ++ib;
    }
    return false;
}

Element::Element(const FreeGradedAlgebra& owner)
    : data_(owner.data_), terms_(MonomialOrder{owner.data_.get()}) {}

Element::Element(const FreeGradedAlgebra& owner, const Monomial& m, const Rational& c)
    : Element(owner) {
    add_term(m, c);
}

FreeGradedAlgebra Element::owner() const {
    return FreeGradedAlgebra(data_);
}

int Element::degree() const {
    if (terms_.empty())
        return -1;
    return mono_degree(*data_, terms_.begin()->first);
}

void Element::add_term(const Monomial& m, const Rational& c) {
    if (c == 0)
        return;
    if (!terms_.empty() &&
        mono_degree(*data_, m) != mono_degree(*data_, terms_.begin()->first))
        throw std::invalid_argument("element terms must share one degree");
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Element& Element::operator+=(const Element& o) {
    for (const auto& [m, c] : o.terms_)
        add_term(m, c);
    return *this;
}

Element& Element::operator-=(const Element& o) {
    for (const auto& [m, c] : o.terms_)
        add_term(m, -c);
    return *this;
}

Element& Element::operator*=(const Rational& c) {
    if (c == 0) {
        terms_.clear();
        return *this;
    }
    for (auto& [m, v] : terms_)
        v *= c;
    return *this;
}

bool Element::operator==(const Element& o) const {
    if (terms_.size() != o.terms_.size())
        return false;
    auto it = terms_.begin();
    auto jt = o.terms_.begin();
    for (; it != terms_.end(); ++it, ++jt) {
        if (!(it->first == jt->first) || it->second != jt->second)
            return false;
    }
    return true;
}

std::string monomial_str(const FreeGradedAlgebra& alg, const Monomial& m) {
    if (m.is_unit())
        return "1";
    std::ostringstream os;
    bool first = true;
    for (const auto& [pos, exp] : m.factors) {
        if (!first)
            os << "*";
        os << alg.generator(pos).name;
        if (exp > 1)
            os << "^" << exp;
        first = false;
    }
    return os.str();
}

std::string Element::str() const {
    if (terms_.empty())
        return "0";
    FreeGradedAlgebra alg = owner();
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
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
        if (a != 1 || m.is_unit()) {
            os << to_string(a);
            if (!m.is_unit())
                os << "*";
        }
        if (!m.is_unit())
            os << monomial_str(alg, m);
        first = false;
    }
    return os.str();
}

FreeGradedAlgebra::FreeGradedAlgebra()
    : data_(std::make_shared<detail::AlgebraData>()) {}

FreeGradedAlgebra::FreeGradedAlgebra(std::shared_ptr<const detail::AlgebraData> data)
    : data_(std::move(data)) {}

FreeGradedAlgebra::FreeGradedAlgebra(std::vector<Generator> gens) {
    std::sort(gens.begin(), gens.end(), [](const Generator& a, const Generator& b) {
        return std::pair(a.degree, a.id) < std::pair(b.degree, b.id);
    });
    std::vector<int> ids;
    ids.reserve(gens.size());
    for (const auto& g : gens) {
        if (g.degree < 1)
            throw std::invalid_argument("generator degree must be >= 1: " + g.name);
        ids.push_back(g.id);
    }
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end())
        throw std::invalid_argument("duplicate generator id");
    auto data = std::make_shared<detail::AlgebraData>();
    data->gens = std::move(gens);
    data_ = std::move(data);
}

std::size_t FreeGradedAlgebra::generator_count() const { return data_->gens.size(); }
const std::vector<Generator>& FreeGradedAlgebra::generators() const { return data_->gens; }
const Generator& FreeGradedAlgebra::generator(int pos) const { return data_->gens.at(pos); }
int FreeGradedAlgebra::generator_degree(int pos) const { return data_->gens[pos].degree; }

int FreeGradedAlgebra::generator_position(const std::string& name) const {
    for (std::size_t p = 0; p < data_->gens.size(); ++p)
        if (data_->gens[p].name == name)
            return static_cast<int>(p);
    return -1;
}

FreeGradedAlgebra FreeGradedAlgebra::extended(const std::vector<Generator>& more) const {
    std::vector<Generator> gens = data_->gens;
    for (const auto& g : more) {
        if (!gens.empty() &&
            std::pair(g.degree, g.id) <= std::pair(gens.back().degree, gens.back().id))
            throw std::invalid_argument("extension generators must sort after existing ones");
        gens.push_back(g);
    }
    return FreeGradedAlgebra(std::move(gens));
}

bool FreeGradedAlgebra::is_prefix_of(const FreeGradedAlgebra& larger) const {
    if (data_ == larger.data_)
        return true;
    const auto& a = data_->gens;
    const auto& b = larger.data_->gens;
    if (a.size() > b.size())
        return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].id != b[i].id || a[i].degree != b[i].degree || a[i].name != b[i].name)
            return false;
    return true;
}

bool FreeGradedAlgebra::accepts(const Element& e) const {
    return e.data_ == data_ || e.owner().is_prefix_of(*this);
}

Element FreeGradedAlgebra::adopt(const Element& e) const {
    if (e.data_ == data_)
        return e;
    if (!accepts(e))
        throw std::invalid_argument("adopt: element not from a prefix algebra");
    Element out(*this);
    for (const auto& [m, c] : e.terms())
        out.add_term(m, c);
    return out;
}

int FreeGradedAlgebra::monomial_degree(const Monomial& m) const {
    return mono_degree(*data_, m);
}

std::optional<std::pair<int, Monomial>> FreeGradedAlgebra::multiply(const Monomial& a,
                                                                    const Monomial& b) const {
    const auto& gens = data_->gens;
    // Koszul sign: each pair of odd-degree factors (g from a, h from b) with
    // h < g in the generator order contributes one transposition.
    int inversions = 0;
    {
        auto ib = b.factors.begin();
        int odd_b_seen = 0;
        for (const auto& [pos, exp] : a.factors) {
            if (gens[pos].degree % 2 == 0)
                continue;
            while (ib != b.factors.end() && ib->first < pos) {
                if (gens[ib->first].degree % 2 == 1)
                    ++odd_b_seen;
                ++ib;
            }
            inversions += odd_b_seen;
        }
    }
    Monomial out;
    out.factors.reserve(a.factors.size() + b.factors.size());
    auto ia = a.factors.begin(), ib = b.factors.begin();
    while (ia != a.factors.end() || ib != b.factors.end()) {
        if (ib == b.factors.end() || (ia != a.factors.end() && ia->first < ib->first)) {
            out.factors.push_back(*ia++);
        } else if (ia == a.factors.end() || ib->first < ia->first) {
            out.factors.push_back(*ib++);
        } else {
            if (gens[ia->first].degree % 2 == 1)
                return std::nullopt;  // odd square
            out.factors.emplace_back(ia->first, ia->second + ib->second);
            ++ia;
            ++ib;
        }
    }
    return std::pair{inversions % 2 == 0 ? 1 : -1, std::move(out)};
}

Element FreeGradedAlgebra::multiply(const Element& a, const Element& b) const {
    if (!accepts(a) || !accepts(b))
        throw std::invalid_argument("multiply: operands from a different algebra");
    Element out(*this);
    for (const auto& [ma, ca] : a.terms()) {
        for (const auto& [mb, cb] : b.terms()) {
            auto r = multiply(ma, mb);
            if (!r)
                continue;
            out.add_term(r->second, r->first * ca * cb);
        }
    }
    return out;
}

Element FreeGradedAlgebra::unit() const {
    return Element(*this, Monomial{}, 1);
}

Element FreeGradedAlgebra::generator_element(int pos) const {
    if (pos < 0 || pos >= static_cast<int>(data_->gens.size()))
        throw std::invalid_argument("generator_element: bad position");
    Monomial m;
    m.factors.emplace_back(pos, 1);
    return Element(*this, m, 1);
}

const std::vector<Monomial>& FreeGradedAlgebra::monomial_basis(int degree) const {
    if (degree < 0)
        throw std::invalid_argument("monomial_basis: negative degree");
    {
        std::shared_lock lock(data_->memo_mutex);
        auto it = data_->basis_memo.find(degree);
        if (it != data_->basis_memo.end())
            return it->second->monos;
    }
    auto entry = std::make_shared<detail::BasisEntry>(data_.get());
    const auto& gens = data_->gens;
    const int n = static_cast<int>(gens.size());
    std::vector<std::pair<int, int>> acc;
    // generators are sorted by degree, so the scan can stop early
    auto rec = [&](auto&& self, int i, int rem) -> void {
        if (rem == 0) {
            entry->monos.push_back(Monomial{acc});
            return;
        }
        for (int j = i; j < n; ++j) {
            int g = gens[j].degree;
            if (g > rem)
                break;
            if (g % 2 == 1) {
                acc.emplace_back(j, 1);
                self(self, j + 1, rem - g);
                acc.pop_back();
            } else {
                for (int e = 1; e * g <= rem; ++e) {
                    acc.emplace_back(j, e);
                    self(self, j + 1, rem - e * g);
                    acc.pop_back();
                }
            }
        }
    };
    rec(rec, 0, degree);
    std::sort(entry->monos.begin(), entry->monos.end(), MonomialOrder{data_.get()});
    for (std::size_t i = 0; i < entry->monos.size(); ++i)
        entry->index.emplace(entry->monos[i], static_cast<int>(i));
    std::unique_lock lock(data_->memo_mutex);
    auto [it, inserted] = data_->basis_memo.emplace(degree, std::move(entry));
    return it->second->monos;
}

int FreeGradedAlgebra::basis_index(int degree, const Monomial& m) const {
    monomial_basis(degree);
    std::shared_lock lock(data_->memo_mutex);
    const auto& entry = *data_->basis_memo.at(degree);
    auto it = entry.index.find(m);
    if (it == entry.index.end())
        throw std::invalid_argument("basis_index: monomial not in basis of degree " +
                                    std::to_string(degree));
    return it->second;
}

long long FreeGradedAlgebra::dimension(int degree) const {
    if (degree < 0)
        return 0;
    std::vector<long long> c(degree + 1, 0);
    c[0] = 1;
    for (const auto& g : data_->gens) {
        int d = g.degree;
        if (d > degree)
            continue;
        if (d % 2 == 1) {
            for (int j = degree; j >= d; --j)
                c[j] = sat_add(c[j], c[j - d]);
        } else {
            for (int j = d; j <= degree; ++j)
                c[j] = sat_add(c[j], c[j - d]);
        }
    }
    return c[degree];
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t i = 0;
    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
};

}  // namespace

Element FreeGradedAlgebra::parse(const std::string& text) const {
    Lexer lx{text};
    Element out(*this);
    if (lx.eof())
        throw std::invalid_argument("empty element literal");
    bool first = true;
    while (!lx.eof()) {
        int sign = 1;
        char c = lx.peek();
        if (c == '+' || c == '-') {
            sign = (c == '-') ? -1 : 1;
            ++lx.i;
        } else if (!first) {
            throw std::invalid_argument("expected '+' or '-' in element literal");
        }
        first = false;
        Rational coeff(sign);
        Monomial mono;
        bool saw_factor = false;
        bool expect_factor = true;
        while (expect_factor) {
            lx.skip_ws();
            if (lx.i < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[lx.i]))) {
                std::size_t j = lx.i;
                while (j < lx.s.size() &&
                       (std::isdigit(static_cast<unsigned char>(lx.s[j])) || lx.s[j] == '/'))
                    ++j;
                coeff *= parse_rational(lx.s.substr(lx.i, j - lx.i));
                lx.i = j;
                saw_factor = true;
            } else if (lx.i < lx.s.size() &&
                       (std::isalpha(static_cast<unsigned char>(lx.s[lx.i])) ||
                        lx.s[lx.i] == '_')) {
                std::size_t j = lx.i;
                while (j < lx.s.size() &&
                       (std::isalnum(static_cast<unsigned char>(lx.s[j])) || lx.s[j] == '_'))
                    ++j;
                std::string name = lx.s.substr(lx.i, j - lx.i);
                lx.i = j;
                int pos = generator_position(name);
                if (pos < 0)
                    throw std::invalid_argument("unknown generator '" + name + "'");
                int exp = 1;
                lx.skip_ws();
                if (lx.i < lx.s.size() && lx.s[lx.i] == '^') {
                    ++lx.i;
                    lx.skip_ws();
                    std::size_t k = lx.i;
                    while (k < lx.s.size() && std::isdigit(static_cast<unsigned char>(lx.s[k])))
                        ++k;
                    if (k == lx.i)
                        throw std::invalid_argument("missing exponent after '^'");
                    exp = std::stoi(lx.s.substr(lx.i, k - lx.i));
                    lx.i = k;
                }
                if (generator_degree(pos) % 2 == 1 && exp > 1)
                    coeff = 0;  // odd square: the whole term vanishes
                if (coeff != 0) {
                    Monomial f;
                    f.factors.emplace_back(pos, exp);
                    auto r = multiply(mono, f);
                    if (!r) {
                        coeff = 0;
                    } else {
                        coeff *= r->first;
                        mono = r->second;
                    }
                }
                saw_factor = true;
            } else {
                throw std::invalid_argument("bad element literal near position " +
                                            std::to_string(lx.i));
            }
            lx.skip_ws();
            if (lx.i < lx.s.size() && lx.s[lx.i] == '*') {
                ++lx.i;
            } else {
                expect_factor = false;
            }
        }
        if (!saw_factor)
            throw std::invalid_argument("empty term in element literal");
        if (coeff != 0)
            out.add_term(mono, coeff);
    }
    return out;
}

}  // namespace rht

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "rht/rational.hpp"

namespace rht {

// A generator of a free graded-commutative algebra. Generators are totally
// ordered by (degree, id); ids are unique within an algebra.
struct Generator {
    int id = 0;
    std::string name;
    int degree = 0;
};

// A monomial in canonical form: factors sorted by generator position,
// odd-degree generators with exponent 1 (odd squares vanish identically).
// Positions refer to the owning algebra's generator list.
struct Monomial {
    // (generator position, exponent), sorted by position, exponents >= 1
    std::vector<std::pair<int, int>> factors;

    bool is_unit() const { return factors.empty(); }
    bool operator==(const Monomial& o) const { return factors == o.factors; }
};

namespace detail {
struct AlgebraData;
}

// Canonical monomial order: by degree, then ascending lexicographic on the
// exponent vector indexed by generator position. Makes element equality a
// structural comparison.
struct MonomialOrder {
    const detail::AlgebraData* data;
    bool operator()(const Monomial& a, const Monomial& b) const;
};

class FreeGradedAlgebra;

// A homogeneous element: finite rational combination of canonical monomials
// of one common degree. The zero element has no terms; degree() reports -1.
// Elements share ownership of their algebra's data, so they never dangle.
class Element {
  public:
    using TermMap = std::map<Monomial, Rational, MonomialOrder>;

    explicit Element(const FreeGradedAlgebra& owner);
    Element(const FreeGradedAlgebra& owner, const Monomial& m, const Rational& c);

    FreeGradedAlgebra owner() const;
    bool is_zero() const { return terms_.empty(); }
    int degree() const;  // -1 for zero
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }

    void add_term(const Monomial& m, const Rational& c);  // keeps homogeneity
    Element& operator+=(const Element& o);
    Element& operator-=(const Element& o);
    Element& operator*=(const Rational& c);
    friend Element operator+(Element a, const Element& b) { return a += b; }
    friend Element operator-(Element a, const Element& b) { return a -= b; }
    friend Element operator*(const Rational& c, Element a) { return a *= c; }
    bool operator==(const Element& o) const;

    // Canonical serialization, e.g. "3/2*x^2*y - z"; "0" for zero.
    std::string str() const;

  private:
    friend class FreeGradedAlgebra;
    std::shared_ptr<const detail::AlgebraData> data_;
    TermMap terms_;
};

// Free graded-commutative algebra on finitely many generators of positive
// degree. A cheap value handle over immutable shared data; extension returns
// a new algebra whose generator list has the old one as a prefix. The
// per-degree basis memo is safe under concurrent reads and idempotent
// inserts.
class FreeGradedAlgebra {
  public:
    FreeGradedAlgebra();
    explicit FreeGradedAlgebra(std::vector<Generator> gens);

    std::size_t generator_count() const;
    const std::vector<Generator>& generators() const;
    const Generator& generator(int pos) const;
    int generator_degree(int pos) const;
    int generator_position(const std::string& name) const;  // -1 if absent

    // New algebra with extra generators appended; they must sort after all
    // existing ones in the (degree, id) order.
    FreeGradedAlgebra extended(const std::vector<Generator>& more) const;

    // True when `e` was built over this algebra or a prefix of it.
    bool accepts(const Element& e) const;
    bool is_prefix_of(const FreeGradedAlgebra& larger) const;
    bool same_data(const FreeGradedAlgebra& o) const { return data_ == o.data_; }
    // Reinterprets an element of a prefix algebra as one of this algebra.
    Element adopt(const Element& e) const;

    int monomial_degree(const Monomial& m) const;
    // Graded-commutative product of monomials; nullopt when an odd generator
    // squares to zero, otherwise (sign, canonical monomial).
    std::optional<std::pair<int, Monomial>> multiply(const Monomial& a,
                                                     const Monomial& b) const;
    Element multiply(const Element& a, const Element& b) const;

    Element zero() const { return Element(*this); }
    Element unit() const;
    Element generator_element(int pos) const;

    // All monomials of exactly the given degree, once each, in canonical
    // order; degree 0 is the unit. Memoized.
    const std::vector<Monomial>& monomial_basis(int degree) const;
    // Position of a canonical monomial inside monomial_basis(degree).
    int basis_index(int degree, const Monomial& m) const;
    // dim of the degree-d component, from the generating function
    //   prod_{even g} 1/(1-t^deg g) * prod_{odd g} (1+t^deg g);
    // cheap to call before materializing a basis.
    long long dimension(int degree) const;

    Element parse(const std::string& text) const;

  private:
    friend class Element;
    explicit FreeGradedAlgebra(std::shared_ptr<const detail::AlgebraData> data);
    std::shared_ptr<const detail::AlgebraData> data_;
};

std::string monomial_str(const FreeGradedAlgebra& alg, const Monomial& m);

}  // namespace rht

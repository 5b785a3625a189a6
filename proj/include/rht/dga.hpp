#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rht/errors.hpp"
#include "rht/graded_algebra.hpp"
#include "rht/linalg.hpp"

namespace rht {

// Differential on a free graded algebra: generator images of degree +1,
// extended to everything by the graded Leibniz rule.
class Differential {
  public:
    explicit Differential(const FreeGradedAlgebra& alg);  // zero differential
    Differential(const FreeGradedAlgebra& alg, std::vector<Element> images);

    const FreeGradedAlgebra& algebra() const { return alg_; }
    const Element& image(int pos) const { return images_.at(pos); }
    bool is_zero() const;

    Element apply(const Element& e) const;
    Element apply_monomial(const Monomial& m) const;
    // matrix of d: basis(degree) -> basis(degree+1)
    SparseMatrix matrix(int degree) const;

    // Same differential over an extension of the algebra, with images for the
    // appended generators.
    Differential extended_to(const FreeGradedAlgebra& bigger,
                             std::vector<Element> new_images) const;

  private:
    FreeGradedAlgebra alg_;
    std::vector<Element> images_;
};

// A free DGA: the pair (Lambda V, d).
struct FreeDGA {
    FreeGradedAlgebra algebra;
    Differential d;
};

// Homogeneous element of a finite-dimensional graded algebra, as coordinates
// over the basis of one degree. Zero has empty coords (any degree).
struct FiniteElement {
    int degree = 0;
    SparseVec coords;

    bool is_zero() const { return coords.is_zero(); }
};

// Finite-dimensional graded algebra with structure-constant product table and
// an optional differential (absent = zero). Serves as the target of minimal
// model construction, e.g. the cohomology ring of a closed 4-manifold.
class FiniteDGA {
  public:
    class Builder;

    int top_degree() const { return static_cast<int>(names_.size()) - 1; }
    int dim(int degree) const;
    long long total_dim() const;
    const std::string& class_name(int degree, int i) const;
    // position of a named class, as (degree, index); throws if unknown
    std::pair<int, int> find_class(const std::string& name) const;

    FiniteElement zero() const { return FiniteElement{0, {}}; }
    FiniteElement basis_element(int degree, int i) const;
    FiniteElement unit() const { return basis_element(0, 0); }
    FiniteElement multiply(const FiniteElement& a, const FiniteElement& b) const;
    FiniteElement add(const FiniteElement& a, const FiniteElement& b) const;
    FiniteElement scale(const Rational& c, const FiniteElement& a) const;

    bool has_zero_differential() const { return d_.empty(); }
    FiniteElement d(const FiniteElement& a) const;
    SparseMatrix differential_matrix(int degree) const;  // dim(k) -> dim(k+1)

    // structure constants; zero element when the pair is absent from the table
    FiniteElement product_of_basis(int da, int ia, int db, int ib) const;

    std::string str(const FiniteElement& e) const;
    FiniteElement parse_combination(const std::string& text) const;

    // Structured text document: `class <name> <degree>`, `product a*b = combo`,
    // `d <name> = combo`, comments with '#'. Omitted products/differentials
    // are zero; rational literals are exact `p/q`.
    static FiniteDGA parse_document(std::istream& in);
    static FiniteDGA parse_document(const std::string& text);

  private:
    friend class Builder;
    std::vector<std::vector<std::string>> names_;  // per degree
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, FiniteElement> products_;
    std::map<int, SparseMatrix> d_;  // degree -> matrix, absent entries zero
};

class FiniteDGA::Builder {
  public:
    Builder& add_class(const std::string& name, int degree);
    Builder& set_product(const std::string& a, const std::string& b, const FiniteElement& v);
    Builder& set_differential(const std::string& name, const FiniteElement& v);
    // Fills unit products and the Koszul-symmetric counterpart of every
    // one-sidedly given pair, then returns the algebra (unvalidated).
    FiniteDGA build();
    const FiniteDGA& peek() const { return a_; }

  private:
    FiniteDGA a_;
    std::map<std::pair<std::pair<int, int>, std::pair<int, int>>, bool> given_;
};

// Validation outcome; ok == true means no violation was found. The first
// violation is reported with the offending generator or basis pair.
struct ValidationIssue {
    std::string check;
    std::string witness;
};
struct ValidationReport {
    bool ok = true;
    std::optional<ValidationIssue> first_failure;

    static ValidationReport pass() { return {}; }
    static ValidationReport fail(std::string check, std::string witness) {
        return {false, ValidationIssue{std::move(check), std::move(witness)}};
    }
};

// Checks d^2 = 0 generator-by-generator, the triangularity condition (each
// d(v) lies in the subalgebra on strictly earlier generators), Leibniz on
// deterministically sampled pairs, and simple connectivity (no generators in
// degrees 0 or 1).
ValidationReport validate_dga(const FreeDGA& dga);
// Checks unit, graded commutativity and associativity of the product table,
// d^2 = 0 and Leibniz on all basis pairs, and H^1 = 0.
ValidationReport validate_dga(const FiniteDGA& dga);

template <typename Elem>
struct CohomologyReport {
    int degree = 0;
    int dimension = 0;
    std::vector<Elem> representatives;  // cocycles, independent mod coboundaries
    std::vector<Elem> coboundaries;     // basis of the coboundary space
};

// Degreewise cohomology with first-pivot echelon representatives (reduced
// against the coboundary space's leading coordinates). Set with_coboundaries
// = false to skip materializing the coboundary basis.
CohomologyReport<Element> cohomology(const FreeDGA& dga, int k, bool with_coboundaries = true);
CohomologyReport<FiniteElement> cohomology(const FiniteDGA& dga, int k,
                                           bool with_coboundaries = true);
int cohomology_dimension(const FreeDGA& dga, int k);
int cohomology_dimension(const FiniteDGA& dga, int k);

// Algebra morphism from a free DGA to a finite target, given on generators
// and extended multiplicatively.
class ModelMorphism {
  public:
    ModelMorphism(FreeGradedAlgebra source, FiniteDGA target, std::vector<FiniteElement> images);

    const FreeGradedAlgebra& source() const { return source_; }
    const FiniteDGA& target() const { return target_; }
    const FiniteElement& image(int pos) const { return images_.at(pos); }
    FiniteElement apply(const Element& e) const;
    // empty when phi commutes with the differentials; otherwise the name of
    // the first offending generator
    std::optional<std::string> chain_map_violation(const Differential& d) const;

    ModelMorphism extended_to(FreeGradedAlgebra bigger,
                              std::vector<FiniteElement> new_images) const;

  private:
    FreeGradedAlgebra source_;
    FiniteDGA target_;
    std::vector<FiniteElement> images_;
};

// Degree-preserving linear-algebra morphism between finite DGAs, given on
// basis elements.
class FiniteMorphism {
  public:
    FiniteMorphism(FiniteDGA source, FiniteDGA target,
                   std::map<std::pair<int, int>, FiniteElement> images);
    static FiniteMorphism identity(const FiniteDGA& a);

    const FiniteDGA& source() const { return source_; }
    const FiniteDGA& target() const { return target_; }
    FiniteElement apply(const FiniteElement& e) const;
    std::optional<std::string> chain_map_violation() const;

  private:
    FiniteDGA source_;
    FiniteDGA target_;
    std::map<std::pair<int, int>, FiniteElement> images_;
};

struct InducedMap {
    int degree = 0;
    int source_dim = 0;
    int target_dim = 0;
    SparseMatrix matrix;  // target_dim x source_dim, in representative bases
    int rank = 0;

    bool is_isomorphism() const {
        return source_dim == target_dim && rank == source_dim;
    }
};

// Matrix of H^k(source) -> H^k(target) in the chosen representative bases;
// rejects non-chain-map inputs naming the offending generator.
InducedMap induced_map_on_cohomology(const FreeDGA& source, const ModelMorphism& phi, int k);
InducedMap induced_map_on_cohomology(const FiniteMorphism& phi, int k);

}  // namespace rht

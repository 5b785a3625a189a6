#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/dga.hpp"

namespace rht {

// Symmetric nondegenerate integer pairing on H^2 of a closed simply
// connected 4-manifold; determines the rational cup structure.
struct IntersectionForm {
    std::vector<std::vector<long long>> q;

    int b2() const { return static_cast<int>(q.size()); }
    // throws ValidationError unless symmetric and nondegenerate
    void validate() const;
    static IntersectionForm diagonal(const std::vector<long long>& entries);
    static IntersectionForm block_sum(const IntersectionForm& a, const IntersectionForm& b);
};

// Degree-indexed cohomology dimensions; b0 = 1, b1 = 0 in scope.
struct BettiData {
    std::vector<int> b;

    int at(int k) const { return (k >= 0 && k < static_cast<int>(b.size())) ? b[k] : 0; }
    int top_degree() const { return static_cast<int>(b.size()) - 1; }
};

// Cohomology ring of the closed simply connected 4-manifold with the given
// intersection form: 1; x_1..x_{b2} in degree 2; vol in degree 4, with
// x_i x_j = q_ij vol and zero differential. Validated before returning.
FiniteDGA four_manifold(const IntersectionForm& form);

FiniteDGA sphere(int n);      // n >= 2
FiniteDGA projective(int n);  // CP^n, n >= 1
// graded tensor product with Koszul signs; chi multiplicative
FiniteDGA product(const FiniteDGA& a, const FiniteDGA& b);
FiniteDGA connected_sum_4d(const IntersectionForm& a, const IntersectionForm& b);
FiniteDGA point();  // Q in degree 0 only

BettiData betti_data(const FiniteDGA& a);

// `diag(1,1,1)` or explicit rows `[[0,1],[1,0]]`
IntersectionForm parse_intersection_form(const std::string& literal);

struct Preset {
    std::string name;
    FiniteDGA algebra;
    bool is_four_manifold = false;
    std::optional<int> b2;
    std::string description;
};

std::vector<std::string> preset_names();
// Resolves a named preset (S2..S6, CP2..CP4, S2xS2, 2CP2..5CP2, point) or an
// intersection-form literal.
Preset resolve_preset(const std::string& name);

}  // namespace rht

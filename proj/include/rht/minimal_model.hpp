#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rht/dga.hpp"

namespace rht {

// Why a generator was adjoined: cokernel-type generators (d = 0) hit new
// cohomology of the target; kernel-type generators kill excess cohomology of
// the model one degree up.
struct GeneratorProvenance {
    enum class Kind { Cokernel, Kernel };
    int degree = 0;
    Kind kind = Kind::Cokernel;
};

// Degree-indexed dual homotopy ranks dim V^k read off a model's generator
// ledger, with the truncation degree and the target's formal dimension.
struct RankSequence {
    std::vector<int> ranks;  // index 0..truncation; ranks[0] = ranks[1] = 0
    int truncation = 0;
    int formal_dimension = 0;

    int at(int k) const {
        return (k >= 0 && k < static_cast<int>(ranks.size())) ? ranks[k] : 0;
    }
};

struct CertificationEntry {
    int degree = 0;
    int model_dim = 0;
    int target_dim = 0;
    int rank = 0;
    bool iso = false;
};

struct CertificationSummary {
    bool certified = false;
    std::vector<CertificationEntry> entries;
    std::optional<std::string> failure;
};

struct BuildOptions {
    // hard cap on per-degree monomial-basis size; exceeding it aborts loudly
    long long basis_cap = 2'000'000;
    // skip the certification pass (used by tests that certify separately)
    bool certify = true;
};

// Truncated minimal Sullivan model of a simply connected finite target, with
// the quasi-isomorphism maintained degree by degree.
class MinimalModel {
  public:
    MinimalModel(FreeGradedAlgebra algebra, Differential d, ModelMorphism phi,
                 FiniteDGA target, int truncation, std::vector<GeneratorProvenance> ledger,
                 CertificationSummary certification);

    const FreeGradedAlgebra& algebra() const { return algebra_; }
    const Differential& differential() const { return d_; }
    const ModelMorphism& phi() const { return phi_; }
    const FiniteDGA& target() const { return target_; }
    int truncation() const { return truncation_; }
    const std::vector<GeneratorProvenance>& ledger() const { return ledger_; }
    const CertificationSummary& certification() const { return certification_; }
    FreeDGA dga() const { return FreeDGA{algebra_, d_}; }

    // Stable text export: one generator per line with provenance, the
    // differential image and the target image, in canonical element syntax.
    std::string export_document() const;

  private:
    FreeGradedAlgebra algebra_;
    Differential d_;
    ModelMorphism phi_;
    FiniteDGA target_;
    int truncation_ = 0;
    std::vector<GeneratorProvenance> ledger_;
    CertificationSummary certification_;
};

// Degree-by-degree construction: in each degree, first cokernel-type
// generators mapped to echelon representatives of coker H^k(phi), then
// kernel-type generators whose differentials represent the basis classes of
// ker H^{k+1}(phi) computed against the enlarged model. Requires a validated,
// simply connected target and truncation >= 2. Throws BudgetExceededError
// with a partial-model report when a per-degree basis would exceed the cap.
MinimalModel build_minimal_model(const FiniteDGA& target, int truncation,
                                 const BuildOptions& options = {});

RankSequence pi_ranks(const MinimalModel& model);

// top degree with nonzero cohomology
int formal_dimension(const FiniteDGA& target);

struct VerificationReport {
    bool ok = false;
    std::optional<ValidationIssue> failure;
    std::vector<CertificationEntry> iso_table;
    std::string summary() const;
};

// Independent re-check of a (claimed) minimal model: d^2 = 0, minimality (no
// linear term in any differential image), the chain-map property of phi, and
// H^k(phi) being an isomorphism for k <= truncation. Shares only the linear
// solver with the builder.
VerificationReport verify_model(const FreeGradedAlgebra& algebra, const Differential& d,
                                const ModelMorphism& phi, int truncation);
VerificationReport verify_model(const MinimalModel& model);

}  // namespace rht

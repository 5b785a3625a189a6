#include "rht/minimal_model.hpp"

#include <algorithm>
#include <sstream>

namespace rht {

namespace {

// Builder-side cohomology representatives in degree `deg`: cocycles reduced
// against the leading coordinates of the coboundary space. Kept separate from
// dga::cohomology so that verification shares only the linear solver with the
// construction.
std::vector<Element> stage_reps(const FreeGradedAlgebra& alg, const Differential& d,
                                int deg) {
    SparseMatrix d_out = d.matrix(deg);
    SparseMatrix d_in = deg >= 1 ? d.matrix(deg - 1) : SparseMatrix::zero(d_out.cols, 0);
    Echelon prev = column_space_echelon(d_in);
    std::vector<int> allowed;
    allowed.reserve(d_out.cols);
    for (int c = 0; c < d_out.cols; ++c)
        if (!prev.is_pivot(c))
            allowed.push_back(c);
    const auto& basis = alg.monomial_basis(deg);
    std::vector<Element> reps;
    for (const auto& v : kernel_of_columns(d_out, allowed)) {
        Element e = alg.zero();
        for (const auto& [i, c] : v.entries)
            e.add_term(basis[i], c);
        reps.push_back(std::move(e));
    }
    return reps;
}

// Coordinates of target cocycles' classes in the representative basis of
// H^k(target).
SparseMatrix class_coordinates(const FiniteDGA& target, int k,
                               const CohomologyReport<FiniteElement>& h,
                               const std::vector<FiniteElement>& cocycles) {
    int tdim = target.dim(k);
    SparseMatrix combined =
        SparseMatrix::zero(tdim, h.dimension + (k >= 1 ? target.dim(k - 1) : 0));
    for (int j = 0; j < h.dimension; ++j)
        for (const auto& [i, v] : h.representatives[j].coords.entries)
            combined.set(i, j, v);
    if (k >= 1) {
        SparseMatrix din = target.differential_matrix(k - 1);
        for (int c = 0; c < din.cols; ++c)
            for (const auto& [i, v] : din.columns[c].entries)
                combined.set(i, h.dimension + c, v);
    }
    LinearSolution sol(combined);
    SparseMatrix out = SparseMatrix::zero(h.dimension, static_cast<int>(cocycles.size()));
    for (std::size_t j = 0; j < cocycles.size(); ++j) {
        auto x = sol.preimage(cocycles[j].coords);
        if (!x)
            throw std::logic_error("class_coordinates: cocycle class not representable");
        for (const auto& [i, v] : x->entries)
            if (i < h.dimension)
                out.set(i, static_cast<int>(j), v);
    }
    return out;
}

std::string ledger_summary(const std::vector<GeneratorProvenance>& ledger, int reached) {
    std::ostringstream os;
    os << "generators by degree:";
    std::map<int, int> counts;
    for (const auto& g : ledger)
        ++counts[g.degree];
    for (const auto& [d, c] : counts)
        os << " " << d << ":" << c;
    os << "; construction reached degree " << reached;
    return os.str();
}

}  // namespace

MinimalModel::MinimalModel(FreeGradedAlgebra algebra, Differential d, ModelMorphism phi,
                           FiniteDGA target, int truncation,
                           std::vector<GeneratorProvenance> ledger,
                           CertificationSummary certification)
    : algebra_(std::move(algebra)),
      d_(std::move(d)),
      phi_(std::move(phi)),
      target_(std::move(target)),
      truncation_(truncation),
      ledger_(std::move(ledger)),
      certification_(std::move(certification)) {}

int formal_dimension(const FiniteDGA& target) {
    int top = 0;
    for (int k = 0; k <= target.top_degree() + 1; ++k)
        if (cohomology_dimension(target, k) > 0)
            top = k;
    return top;
}

MinimalModel build_minimal_model(const FiniteDGA& target, int truncation,
                                 const BuildOptions& options) {
    if (truncation < 2)
        throw PreconditionError("truncation degree must be >= 2");
    ValidationReport v = validate_dga(target);
    if (!v.ok)
        throw ValidationError("target fails validation [" + v.first_failure->check +
                              "]: " + v.first_failure->witness);
    if (cohomology_dimension(target, 0) != 1)
        throw ValidationError("target must be connected (H^0 = Q)");

    FreeGradedAlgebra alg{std::vector<Generator>{}};
    Differential d(alg);
    ModelMorphism phi(alg, target, {});
    std::vector<GeneratorProvenance> ledger;
    int next_id = 0;

    auto degree_count = [&](int k) {
        int c = 0;
        for (const auto& g : ledger)
            if (g.degree == k)
                ++c;
        return c;
    };

    auto adjoin = [&](int degree, GeneratorProvenance::Kind kind,
                      const std::vector<std::pair<Element, FiniteElement>>& batch) {
        if (batch.empty())
            return;
        std::vector<Generator> gens;
        int serial = degree_count(degree);
        for (std::size_t i = 0; i < batch.size(); ++i) {
            gens.push_back(Generator{next_id++,
                                     "v" + std::to_string(degree) + "_" +
                                         std::to_string(serial + static_cast<int>(i) + 1),
                                     degree});
        }
        FreeGradedAlgebra bigger = alg.extended(gens);
        std::vector<Element> d_images;
        std::vector<FiniteElement> phi_images;
        for (const auto& [dv, pv] : batch) {
            d_images.push_back(bigger.adopt(dv));
            phi_images.push_back(pv);
        }
        d = d.extended_to(bigger, std::move(d_images));
        phi = phi.extended_to(bigger, std::move(phi_images));
        alg = std::move(bigger);
        for (std::size_t i = 0; i < batch.size(); ++i)
            ledger.push_back(GeneratorProvenance{degree, kind});
    };

    for (int k = 2; k <= truncation; ++k) {
        for (int deg = k; deg <= k + 2; ++deg) {
            long long dim = alg.dimension(deg);
            if (dim > options.basis_cap)
                throw BudgetExceededError(
                    "monomial basis in degree " + std::to_string(deg) + " has size " +
                        std::to_string(dim) + " > cap " + std::to_string(options.basis_cap),
                    ledger_summary(ledger, k - 1));
        }

        // (a) cokernel-type generators: d = 0, phi hits the unreached classes
        auto tgt_h = cohomology(target, k, false);
        if (tgt_h.dimension > 0) {
            std::vector<Element> reps = stage_reps(alg, d, k);
            std::vector<FiniteElement> mapped;
            mapped.reserve(reps.size());
            for (const auto& z : reps)
                mapped.push_back(phi.apply(z));
            SparseMatrix classes = class_coordinates(target, k, tgt_h, mapped);
            Echelon image_span = column_space_echelon(classes);
            if (image_span.rank() != static_cast<int>(reps.size()))
                throw std::logic_error("H^" + std::to_string(k) +
                                       "(phi) lost injectivity during construction");
            std::vector<std::pair<Element, FiniteElement>> batch;
            for (int i = 0; i < tgt_h.dimension; ++i)
                if (!image_span.is_pivot(i))
                    batch.emplace_back(alg.zero(), tgt_h.representatives[i]);
            adjoin(k, GeneratorProvenance::Kind::Cokernel, batch);
        }

        // (b) kernel-type generators against the enlarged model
        std::vector<Element> reps = stage_reps(alg, d, k + 1);
        auto tgt_h1 = cohomology(target, k + 1, false);
        std::vector<Element> kill;
        if (tgt_h1.dimension == 0) {
            kill = std::move(reps);
        } else {
            std::vector<FiniteElement> mapped;
            mapped.reserve(reps.size());
            for (const auto& z : reps)
                mapped.push_back(phi.apply(z));
            SparseMatrix classes = class_coordinates(target, k + 1, tgt_h1, mapped);
            for (const auto& kv : LinearSolution(classes).kernel_basis()) {
                Element z = alg.zero();
                for (const auto& [j, c] : kv.entries)
                    z += c * reps[j];
                kill.push_back(std::move(z));
            }
        }
        if (!kill.empty()) {
            std::vector<std::pair<Element, FiniteElement>> batch;
            LinearSolution primitive_solver(target.differential_matrix(k));
            for (auto& z : kill) {
                FiniteElement pz = phi.apply(z);
                FiniteElement w;
                w.degree = k;
                if (!pz.is_zero()) {
                    auto x = primitive_solver.preimage(pz.coords);
                    if (!x)
                        throw std::logic_error(
                            "internal consistency: phi(dv) has no primitive in degree " +
                            std::to_string(k));
                    w.coords = *x;
                }
                batch.emplace_back(std::move(z), std::move(w));
            }
            adjoin(k, GeneratorProvenance::Kind::Kernel, batch);
        }
    }

    // certification: re-run the induced map degreewise
    CertificationSummary cert;
    if (options.certify) {
        FreeDGA dga{alg, d};
        cert.certified = true;
        for (int k = 0; k <= truncation; ++k) {
            InducedMap im = induced_map_on_cohomology(dga, phi, k);
            bool iso = im.is_isomorphism();
            cert.entries.push_back(
                CertificationEntry{k, im.source_dim, im.target_dim, im.rank, iso});
            if (!iso) {
                cert.certified = false;
                cert.failure = "H^" + std::to_string(k) + "(phi) is not an isomorphism (" +
                               std::to_string(im.source_dim) + " -> " +
                               std::to_string(im.target_dim) + ", rank " +
                               std::to_string(im.rank) + ")";
            }
        }
        if (!cert.certified)
            throw std::logic_error("built model failed certification: " + *cert.failure);
    }

    return MinimalModel(std::move(alg), std::move(d), std::move(phi), target, truncation,
                        std::move(ledger), std::move(cert));
}

RankSequence pi_ranks(const MinimalModel& model) {
    RankSequence out;
    out.truncation = model.truncation();
    out.formal_dimension = formal_dimension(model.target());
    out.ranks.assign(model.truncation() + 1, 0);
    for (const auto& g : model.ledger())
        if (g.degree <= model.truncation())
            ++out.ranks[g.degree];
    return out;
}

std::string MinimalModel::export_document() const {
    std::ostringstream os;
    os << "minimal-model\n";
    os << "truncation " << truncation_ << "\n";
    os << "formal-dimension " << formal_dimension(target_) << "\n";
    os << "generators " << algebra_.generator_count() << "\n";
    os << "certified " << (certification_.certified ? "yes" : "no") << "\n";
    for (std::size_t p = 0; p < algebra_.generator_count(); ++p) {
        const Generator& g = algebra_.generator(static_cast<int>(p));
        const auto& prov = ledger_.at(p);
        os << "generator " << g.name << " degree " << g.degree << " kind "
           << (prov.kind == GeneratorProvenance::Kind::Cokernel ? "cokernel" : "kernel")
           << " d = " << d_.image(static_cast<int>(p)).str()
           << " phi = " << target_.str(phi_.image(static_cast<int>(p))) << "\n";
    }
    return os.str();
}

std::string VerificationReport::summary() const {
    if (ok)
        return "verified: d^2 = 0, minimal, chain map, H^k(phi) iso for all checked degrees";
    return "FAILED [" + failure->check + "]: " + failure->witness;
}

VerificationReport verify_model(const FreeGradedAlgebra& algebra, const Differential& d,
                                const ModelMorphism& phi, int truncation) {
    VerificationReport rep;
    // minimality first: no differential image has a linear term
    for (std::size_t p = 0; p < algebra.generator_count(); ++p) {
        for (const auto& [m, c] : d.image(static_cast<int>(p)).terms()) {
            int length = 0;
            for (const auto& [pos, exp] : m.factors)
                length += exp;
            if (length < 2) {
                rep.failure = ValidationIssue{
                    "minimality", "d(" + algebra.generator(static_cast<int>(p)).name +
                                      ") has the linear term " + monomial_str(algebra, m)};
                return rep;
            }
        }
    }
    ValidationReport v = validate_dga(FreeDGA{algebra, d});
    if (!v.ok) {
        rep.failure = v.first_failure;
        return rep;
    }
    if (auto bad = phi.chain_map_violation(d)) {
        rep.failure = ValidationIssue{"chain-map", "phi does not commute with d at '" +
                                                       *bad + "'"};
        return rep;
    }
    FreeDGA dga{algebra, d};
    for (int k = 0; k <= truncation; ++k) {
        InducedMap im = induced_map_on_cohomology(dga, phi, k);
        rep.iso_table.push_back(
            CertificationEntry{k, im.source_dim, im.target_dim, im.rank, im.is_isomorphism()});
        if (!im.is_isomorphism()) {
            rep.failure = ValidationIssue{
                "quasi-isomorphism",
                "H^" + std::to_string(k) + "(phi): dim " + std::to_string(im.source_dim) +
                    " -> dim " + std::to_string(im.target_dim) + " with rank " +
                    std::to_string(im.rank)};
            return rep;
        }
    }
    rep.ok = true;
    return rep;
}

VerificationReport verify_model(const MinimalModel& model) {
    return verify_model(model.algebra(), model.differential(), model.phi(),
                        model.truncation());
}

}  // namespace rht

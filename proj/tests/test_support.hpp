#pragma once

#include <random>
#include <vector>

#include "rht/dga.hpp"
#include "rht/graded_algebra.hpp"
#include "rht/linalg.hpp"

namespace rht::testing {

// deterministic random algebra with a handful of generators of small degree
inline FreeGradedAlgebra random_algebra(std::mt19937& rng, int max_gens = 4,
                                        int max_degree = 6) {
    std::uniform_int_distribution<int> ngen(1, max_gens);
    std::uniform_int_distribution<int> deg(2, max_degree);
    int n = ngen(rng);
    std::vector<Generator> gens;
    for (int i = 0; i < n; ++i)
        gens.push_back(Generator{i, "g" + std::to_string(i), deg(rng)});
    return FreeGradedAlgebra(std::move(gens));
}

inline Element random_homogeneous(const FreeGradedAlgebra& alg, std::mt19937& rng,
                                  int degree, int max_terms = 3) {
    const auto& basis = alg.monomial_basis(degree);
    Element e = alg.zero();
    if (basis.empty())
        return e;
    std::uniform_int_distribution<int> idx(0, static_cast<int>(basis.size()) - 1);
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> nt(1, max_terms);
    int terms = nt(rng);
    for (int t = 0; t < terms; ++t)
        e.add_term(basis[idx(rng)], Rational(num(rng), den(rng)));
    return e;
}

// random element of any degree that has a nonempty basis
inline Element random_element(const FreeGradedAlgebra& alg, std::mt19937& rng,
                              int max_degree = 10) {
    std::vector<int> degrees;
    for (int d = 1; d <= max_degree; ++d)
        if (alg.dimension(d) > 0)
            degrees.push_back(d);
    if (degrees.empty())
        return alg.zero();
    std::uniform_int_distribution<int> pick(0, static_cast<int>(degrees.size()) - 1);
    return random_homogeneous(alg, rng, degrees[pick(rng)]);
}

// random differential satisfying d^2 = 0: each image is a random cocycle of
// the differential built so far, assigned in generator order
inline Differential random_valid_differential(const FreeGradedAlgebra& alg,
                                              std::mt19937& rng) {
    std::vector<Element> images;
    for (std::size_t p = 0; p < alg.generator_count(); ++p) {
        Differential partial(alg, [&] {
            std::vector<Element> im = images;
            for (std::size_t q = p; q < alg.generator_count(); ++q)
                im.push_back(alg.zero());
            return im;
        }());
        int target_degree = alg.generator_degree(static_cast<int>(p)) + 1;
        // cocycles among monomials on strictly earlier generators
        const auto& basis = alg.monomial_basis(target_degree);
        std::vector<Monomial> allowed;
        for (const auto& m : basis) {
            bool ok = true;
            for (const auto& [pos, exp] : m.factors)
                if (pos >= static_cast<int>(p))
                    ok = false;
            int length = 0;
            for (const auto& [pos, exp] : m.factors)
                length += exp;
            if (ok && length >= 2)
                allowed.push_back(m);
        }
        Element image = alg.zero();
        if (!allowed.empty() && std::uniform_int_distribution<int>(0, 2)(rng) != 0) {
            std::uniform_int_distribution<int> idx(0,
                                                   static_cast<int>(allowed.size()) - 1);
            std::uniform_int_distribution<int> coef(-3, 3);
            for (int t = 0; t < 2; ++t) {
                Element cand = image;
                cand.add_term(allowed[idx(rng)], Rational(coef(rng)));
                if (partial.apply(cand).is_zero())
                    image = cand;
            }
        }
        images.push_back(image);
    }
    return Differential(alg, images);
}

inline SparseMatrix random_sparse_matrix(std::mt19937& rng, int max_dim = 8) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    int rows = dim(rng), cols = dim(rng);
    SparseMatrix m = SparseMatrix::zero(rows, cols);
    std::uniform_int_distribution<int> num(-5, 5);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> fill(0, 99);
    for (int c = 0; c < cols; ++c)
        for (int r = 0; r < rows; ++r)
            if (fill(rng) < 40) {
                Rational v(num(rng), den(rng));
                if (v != 0)
                    m.set(r, c, v);
            }
    return m;
}

}  // namespace rht::testing

#pragma once

#include <random>
#include <vector>

#include <gmpxx.h>

#include "clusteraf/laurent.hpp"

namespace testsupport {

inline clusteraf::LaurentPoly random_poly(std::mt19937_64& rng, std::size_t arity, int max_terms = 4,
                                          int exp_lo = -2, int exp_hi = 3, int coeff = 5) {
    std::uniform_int_distribution<int> nterms(1, max_terms), ex(exp_lo, exp_hi), co(-coeff, coeff);
    clusteraf::LaurentPoly p(arity);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        clusteraf::Exponents e(arity);
        for (auto& v : e) v = ex(rng);
        p.add_term(e, co(rng));
    }
    return p;
}

/// Evaluates p at a rational point by direct summation of terms.
inline mpq_class evaluate(const clusteraf::LaurentPoly& p, const std::vector<mpq_class>& point) {
    mpq_class sum = 0;
    for (const auto& [e, c] : p.terms()) {
        mpq_class t = c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            int k = e[i];
            for (int j = 0; j < std::abs(k); ++j) t = k > 0 ? mpq_class(t * point[i]) : mpq_class(t / point[i]);
        }
        sum += t;
    }
    return sum;
}

inline std::vector<mpq_class> random_point(std::mt19937_64& rng, std::size_t arity) {
    std::uniform_int_distribution<int> num(1, 40), den(1, 9);
    std::vector<mpq_class> pt;
    for (std::size_t i = 0; i < arity; ++i) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        pt.push_back(q);
    }
    return pt;
}

}  // namespace testsupport

#pragma once

#include <map>
#include <span>
#include <vector>

namespace hyperdomain {

/// Sparse multivariate polynomial with real coefficients, keyed by exponent
/// vectors of length num_vars. Terms with coefficient exactly zero are never
/// stored. Immutable in practice once assembled.
class Polynomial {
public:
    using Exponents = std::vector<int>;

    explicit Polynomial(int num_vars);

    int num_vars() const { return num_vars_; }
    int degree() const;
    std::size_t term_count() const { return terms_.size(); }
    const std::map<Exponents, double>& terms() const { return terms_; }

    // Adds coeff to the monomial; drops the term if the sum is exactly zero.
    void add_term(const Exponents& exponents, double coeff);
    double coefficient(const Exponents& exponents) const;

    double eval(std::span<const double> x) const;
    std::vector<double> grad(std::span<const double> x) const;

    // Largest coefficient magnitude, used for residual scaling.
    double coeff_scale() const;

private:
    int num_vars_;
    std::map<Exponents, double> terms_;
};

} // namespace hyperdomain

#include "hyperdomain/polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace hyperdomain {

Polynomial::Polynomial(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1)
        throw std::invalid_argument("Polynomial: num_vars must be positive");
}

int Polynomial::degree() const {
    int deg = 0;
    for (const auto& [e, c] : terms_)
        deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
    return deg;
}

void Polynomial::add_term(const Exponents& exponents, double coeff) {
    if (static_cast<int>(exponents.size()) != num_vars_)
        throw std::invalid_argument("Polynomial::add_term: exponent vector length mismatch");
    for (int e : exponents)
        if (e < 0)
            throw std::invalid_argument("Polynomial::add_term: negative exponent");
    if (coeff == 0.0)
        return;
    auto it = terms_.find(exponents);
    if (it == terms_.end()) {
        terms_.emplace(exponents, coeff);
    } else {
        it->second += coeff;
        if (it->second == 0.0)
            terms_.erase(it);
    }
}

double Polynomial::coefficient(const Exponents& exponents) const {
    auto it = terms_.find(exponents);
    return it == terms_.end() ? 0.0 : it->second;
}

namespace {

double int_pow(double x, int e) {
    double r = 1.0;
    for (int i = 0; i < e; ++i)
        r *= x;
    return r;
}

} // namespace

double Polynomial::eval(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("Polynomial::eval: point dimension mismatch");
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double m = c;
        for (int i = 0; i < num_vars_; ++i)
            if (e[i] != 0)
                m *= int_pow(x[i], e[i]);
        sum += m;
    }
    return sum;
}

std::vector<double> Polynomial::grad(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != num_vars_)
        throw std::invalid_argument("Polynomial::grad: point dimension mismatch");
    std::vector<double> g(num_vars_, 0.0);
    for (const auto& [e, c] : terms_) {
        for (int k = 0; k < num_vars_; ++k) {
            if (e[k] == 0)
                continue;
            double m = c * e[k] * int_pow(x[k], e[k] - 1);
            for (int i = 0; i < num_vars_; ++i)
                if (i != k && e[i] != 0)
                    m *= int_pow(x[i], e[i]);
            g[k] += m;
        }
    }
    return g;
}

double Polynomial::coeff_scale() const {
    double s = 0.0;
    for (const auto& [e, c] : terms_)
        s = std::max(s, std::abs(c));
    return s;
}

} // namespace hyperdomain

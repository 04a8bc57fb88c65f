#pragma once

#include <string>
#include <vector>

namespace sweepout {

/// Unit ball volume pi^{k/2} / Gamma(k/2 + 1); omega(1) = 2, omega(0) = 1.
double omega(int k);

struct Constant {
    std::string name;
    double value = 0.0;
    double log10 = 0.0;
    std::string symbolic;
};

/// Every dimensional constant of the construction for one dimension n.
struct ConstantTable {
    int n = 0;
    std::vector<double> omegas; // omega(0..n)
    double c_n = 0.0;
    double lambda_n = 0.0; // equals alpha_n
    double r_coefficient = 0.0; // (omega_n (1 + 2 c_n))^{-1/n}
    double A_n = 0.0;
    double alpha_n = 0.0;
    double C_prev = 0.0; // C_{n-1}
    double I_n = 0.0;
    double K_n = 0.0;
    double A_prime = 0.0;
    double N0 = 0.0;
    double alpha_prime = 0.0;
    double C_n = 0.0;
    double single_cell = 0.0;
    // log10 of the entries that overflow double for large n
    double log10_N0 = 0.0;
    double log10_alpha_prime = 0.0;
    double log10_C_n = 0.0;

    /// Flat list with symbolic forms, in a fixed order.
    std::vector<Constant> entries() const;
};

/// 2 <= n <= 16, else UnsupportedDimension.
ConstantTable build_table(int n);

/// Lipschitz budget of the radial retraction onto a cell boundary.
double projection_lipschitz_bound(double lambda);
/// 6 cos t / sin(theta + t) with sin theta = 1/6, for t in (0, pi/2 - theta).
double projection_ratio(double t);
double projection_theta();

} // namespace sweepout

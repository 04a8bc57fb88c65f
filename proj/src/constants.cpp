#include "sweepout/constants.hpp"

#include "sweepout/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sweepout {

double omega(int k)
{
    if (k == 0) return 1.0;
    if (k == 1) return 2.0;
    return std::pow(std::numbers::pi, k / 2.0) / std::tgamma(k / 2.0 + 1.0);
}

namespace {

std::string int_str(long long x) { return std::to_string(x); }

long long ipow(long long b, int e)
{
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

std::string omega_symbol(int k)
{
    if (k == 0) return "1";
    if (k == 1) return "2";
    if (k % 2 == 0) {
        long long fact = 1;
        for (int i = 2; i <= k / 2; ++i) fact *= i;
        const std::string p = k == 2 ? "pi" : "pi^" + int_str(k / 2);
        return fact == 1 ? p : p + "/" + int_str(fact);
    }
    long long dfact = 1;
    for (int i = k; i > 1; i -= 2) dfact *= i;
    const int e = (k - 1) / 2;
    const std::string p = e == 1 ? "pi" : "pi^" + int_str(e);
    return int_str(ipow(2, (k + 1) / 2)) + "*" + p + "/" + int_str(dfact);
}

std::string root(const std::string& x, int n)
{
    if (n == 2) return "sqrt(" + x + ")";
    return "(" + x + ")^(1/" + int_str(n) + ")";
}

} // namespace

ConstantTable build_table(int n)
{
    if (n < 2 || n > 16) throw Error(ErrorCode::UnsupportedDimension, "constants need 2 <= n <= 16, got " + int_str(n));
    ConstantTable T;
    T.n = n;
    for (int k = 0; k <= n; ++k) T.omegas.push_back(omega(k));
    const double wn = T.omegas[n], wp = T.omegas[n - 1];
    const double dn = n;

    T.c_n = std::pow(9.0, n);
    T.alpha_n = 1.0 / (1.0 + 2.0 * T.c_n);
    T.lambda_n = T.alpha_n;
    T.A_n = std::pow(wn * (1.0 + 2.0 * T.c_n), 1.0 / dn);
    T.r_coefficient = 1.0 / T.A_n;
    T.C_prev = std::max(std::pow(36.0, n - 1), dn * wn * std::pow(6.0, n - 1) / (2.0 * wp));
    T.I_n = std::pow(1.0 / (std::pow(dn, n) * wn), 1.0 / (dn - 1.0));
    T.K_n = std::max(T.I_n * std::pow(1.0 + T.C_prev, dn / (dn - 1.0)), wn * std::pow(6.0, n));
    T.A_prime = std::max(T.C_prev * T.A_n, dn * std::pow(wn, 1.0 / dn) * std::pow(3.0, n - 1));

    // N0 and alpha' leave the double range quickly, so go through logs
    const double log_ratio = std::log(T.K_n) + std::log(T.A_prime) - std::log(T.alpha_n);
    const double log_N0 = dn * log_ratio - std::log(wn);
    const double log_ap =
        std::min(std::log(T.alpha_n / 2.0), std::log(wn) + dn * (std::log(T.alpha_n) - std::log(6.0) - std::log(T.K_n) - std::log(T.A_prime)));
    const double p = (dn - 1.0) / dn;
    const double ap = std::exp(log_ap);
    const double log_den = ap > 1e-300 ? std::log(-std::expm1(p * std::log1p(-ap))) : log_ap + std::log(p);
    const double log_split = std::log(2.0 * dn) + std::log(T.A_prime) - log_den;
    T.single_cell = std::pow(6.0, n - 1) * wp * std::pow(wn, -p);
    const double log_C = std::max(log_split, std::log(T.single_cell));

    T.N0 = std::exp(log_N0);
    T.alpha_prime = ap;
    T.C_n = std::exp(log_C);
    T.log10_N0 = log_N0 / std::numbers::ln10;
    T.log10_alpha_prime = log_ap / std::numbers::ln10;
    T.log10_C_n = log_C / std::numbers::ln10;
    return T;
}

std::vector<Constant> ConstantTable::entries() const
{
    const std::string N = int_str(n), Np = int_str(n - 1);
    const std::string wn = omega_symbol(n), wp = omega_symbol(n - 1);
    const long long c = ipow(9, n);
    const std::string one_2c = int_str(1 + 2 * c);
    auto e = [](std::string name, double v, std::string sym) {
        return Constant{std::move(name), v, std::log10(v), std::move(sym)};
    };
    std::vector<Constant> out;
    for (int k = 1; k <= n; ++k) out.push_back(e("omega_" + int_str(k), omegas[k], omega_symbol(k)));
    out.push_back(e("c_n", c_n, "9^" + N));
    out.push_back(e("lambda_n", lambda_n, "1/" + one_2c));
    out.push_back(e("alpha_n", alpha_n, "1/" + one_2c));
    out.push_back(e("r_coefficient", r_coefficient, "1/" + root(one_2c + "*" + wn, n)));
    out.push_back(e("A_n", A_n, root(one_2c + "*" + wn, n)));
    out.push_back(e("C_n-1", C_prev, "max(36^" + Np + ", " + N + "*(" + wn + ")*6^" + Np + "/(2*(" + wp + ")))"));
    out.push_back(e("I_n", I_n, "(1/(" + N + "^" + N + "*(" + wn + ")))^(1/" + Np + ")"));
    out.push_back(e("K_n", K_n, "max(I_n*(1+C_n-1)^(" + N + "/" + Np + "), (" + wn + ")*6^" + N + ")"));
    out.push_back(e("A'_n", A_prime, "max(C_n-1*A_n, " + N + "*(" + wn + ")^(1/" + N + ")*3^" + Np + ")"));
    out.push_back(Constant{"N_0", N0, log10_N0, "(1/(" + wn + "))*(K_n*A'_n/alpha_n)^" + N});
    out.push_back(Constant{"alpha'_n", alpha_prime, log10_alpha_prime,
                           "min(alpha_n/2, (" + wn + ")*(alpha_n/(6*K_n*A'_n))^" + N + ")"});
    out.push_back(e("single_cell", single_cell, "6^" + Np + "*(" + wp + ")*(" + wn + ")^(-" + Np + "/" + N + ")"));
    out.push_back(Constant{"C_n", C_n, log10_C_n,
                           "max(2*" + N + "*A'_n/(1-(1-alpha'_n)^(" + Np + "/" + N + ")), single_cell)"});
    return out;
}

double projection_theta() { return std::asin(1.0 / 6.0); }

double projection_ratio(double t) { return 6.0 * std::cos(t) / std::sin(projection_theta() + t); }

double projection_lipschitz_bound(double lambda) { return 36.0 * lambda * lambda; }

} // namespace sweepout

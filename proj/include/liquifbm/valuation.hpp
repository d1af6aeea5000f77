#pragma once

#include "liquifbm/types.hpp"

namespace liquifbm {

struct ValueBreakdown {
    double inventory_term = 0.0;  // -phi0^2 lambda / (2T)
    double drift_term = 0.0;      // phi0 E[M_0/T - S_0]
    double tracking_term = 0.0;   // E int (S - M_0/T - N)^2 dt / (2 lambda)
    double total = 0.0;
};

// Expected squared tracking distance E int_0^T (S - M_0/T - N)^2 dt for the
// unit problem (S = B^H, sigma = 1, no drift) under the given flow:
//   standard  T^{2H+1}/(2H+1) - int_0^T K(s)^2/(T-s) ds
//   delayed   int_D^T t^{2H} e(1-D/t) dt - int_0^{T-D} K_D(s)^2/(T-D-s) ds
//   insider   T^{2H+1}/(2H+1) - (1/T) int_0^D K^2 - int_D^T K^2/(T+D-s) ds
// with K(s) = int_s^T Z(u,s) du, K_D(s) = int_{s+D}^T Z(u,s) du and
// e(y) = int_0^y zeta(x)^2 dx. The expected P&L of the unit problem with
// lambda = 1 is half of this number.
double normalized_value(double h, double T, const InformationFlow& info);

// E int_0^T N_t^2 dt for the unit problem (the subtracted integral above).
double step1_rhs(double h, double T, const InformationFlow& info);

// Expected optimal P&L for general parameters:
//   total = -phi0^2 lambda/(2T) + phi0 mu T/2 + mu^2 T^3/(24 lambda)
//           + sigma^2 normalized_value / (2 lambda)
ValueBreakdown general_value(const LiquidationProblem& problem);

}  // namespace liquifbm

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace liquifbm {

// Bad input: out-of-range parameters, inconsistent grids, invalid flows.
class DomainError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// A numerical procedure failed (non-finite result, factorization breakdown).
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

double check_hurst(double h);

struct TimeGrid {
    double T = 1.0;
    std::size_t n = 2;

    TimeGrid() = default;
    TimeGrid(double horizon, std::size_t steps);

    double dt() const { return T / static_cast<double>(n); }
    double t(std::size_t i) const { return static_cast<double>(i) * T / static_cast<double>(n); }
    bool operator==(const TimeGrid& o) const { return T == o.T && n == o.n; }
};

struct MarketSpec {
    double s0 = 0.0;
    double mu = 0.0;
    double sigma = 1.0;
    double h = 0.5;

    void validate() const;
};

enum class InfoKind { Standard, Delayed, Insider };

struct InformationFlow {
    InfoKind kind = InfoKind::Standard;
    double delta = 0.0;  // ignored for Standard

    static InformationFlow standard() { return {InfoKind::Standard, 0.0}; }
    static InformationFlow delayed(double d) { return {InfoKind::Delayed, d}; }
    static InformationFlow insider(double d) { return {InfoKind::Insider, d}; }

    void validate(double T) const;
};

std::string to_string(InfoKind k);
InfoKind parse_info_kind(const std::string& s);

struct LiquidationProblem {
    double phi0 = 0.0;
    double lambda = 1.0;
    double T = 1.0;
    MarketSpec market;
    InformationFlow info;

    void validate() const;
};

}  // namespace liquifbm

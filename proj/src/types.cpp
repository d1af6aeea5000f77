#include "liquifbm/types.hpp"

#include <cmath>

namespace liquifbm {

double check_hurst(double h) {
    if (!(h > 0.0 && h < 1.0))
        throw DomainError("Hurst parameter must lie in (0,1), got " + std::to_string(h));
    return h;
}

TimeGrid::TimeGrid(double horizon, std::size_t steps) : T(horizon), n(steps) {
    if (!(horizon > 0.0) || !std::isfinite(horizon))
        throw DomainError("time grid horizon must be positive");
    if (steps < 2)
        throw DomainError("time grid needs at least 2 steps");
}

void MarketSpec::validate() const {
    check_hurst(h);
    // sigma = 0 is the deterministic-price limit and stays admissible
    if (!(sigma >= 0.0) || !std::isfinite(sigma))
        throw DomainError("sigma must be non-negative");
    if (!std::isfinite(s0) || !std::isfinite(mu))
        throw DomainError("s0 and mu must be finite");
}

void InformationFlow::validate(double T) const {
    if (kind == InfoKind::Standard) return;
    if (!(delta > 0.0 && delta <= T))
        throw DomainError("delta must lie in (0, T] for delayed/insider information");
}

std::string to_string(InfoKind k) {
    switch (k) {
        case InfoKind::Standard: return "standard";
        case InfoKind::Delayed: return "delayed";
        case InfoKind::Insider: return "insider";
    }
    return "unknown";
}

InfoKind parse_info_kind(const std::string& s) {
    if (s == "standard") return InfoKind::Standard;
    if (s == "delayed") return InfoKind::Delayed;
    if (s == "insider") return InfoKind::Insider;
    throw DomainError("unknown information flow '" + s + "'");
}

void LiquidationProblem::validate() const {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw DomainError("lambda must be positive");
    if (!(T > 0.0) || !std::isfinite(T))
        throw DomainError("horizon T must be positive");
    if (!std::isfinite(phi0))
        throw DomainError("phi0 must be finite");
    market.validate();
    info.validate(T);
}

}  // namespace liquifbm

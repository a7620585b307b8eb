#include "volswap/model.hpp"

#include <cmath>
#include <sstream>

namespace volswap {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw ConfigError(msg);
}

} // namespace

std::vector<std::string> validate(const ModelParams& p) {
    require(p.V0 > 0.0, "V0 must be > 0");
    require(p.lambda0 >= 0.0, "lambda0 must be >= 0");
    require(p.kappaV > 0.0, "kappaV must be > 0");
    require(p.kappaL > 0.0, "kappaL must be > 0");
    require(p.thetaV > 0.0, "thetaV must be > 0");
    require(p.thetaL >= 0.0, "thetaL must be >= 0");
    require(p.sigmaV >= 0.0, "sigmaV must be >= 0");
    require(p.sigmaL >= 0.0, "sigmaL must be >= 0");
    require(p.rho >= -1.0 && p.rho <= 1.0, "rho must lie in [-1, 1]");

    std::vector<std::string> warnings;
    if (2.0 * p.kappaV * p.thetaV < p.sigmaV * p.sigmaV) {
        std::ostringstream os;
        os << "Feller condition violated for variance: 2*kappaV*thetaV = "
           << 2.0 * p.kappaV * p.thetaV << " < sigmaV^2 = " << p.sigmaV * p.sigmaV;
        warnings.push_back(os.str());
    }
    if (2.0 * p.kappaL * p.thetaL < p.sigmaL * p.sigmaL) {
        std::ostringstream os;
        os << "Feller condition violated for intensity: 2*kappaL*thetaL = "
           << 2.0 * p.kappaL * p.thetaL << " < sigmaL^2 = " << p.sigmaL * p.sigmaL;
        warnings.push_back(os.str());
    }
    return warnings;
}

void validate(const JumpSpec& s) {
    switch (s.kind) {
    case JumpSpec::Kind::None:
        return;
    case JumpSpec::Kind::DoubleExponential:
        require(s.p >= 0.0 && s.p <= 1.0, "p must lie in [0, 1]");
        require(s.pPrime >= 0.0 && s.pPrime <= 1.0, "pPrime must lie in [0, 1]");
        require(s.eta1 > 1.0, "eta1 must be > 1");
        require(s.eta2 > 0.0, "eta2 must be > 0");
        require(s.eta3 > 1.0, "eta3 must be > 1");
        require(s.eta4 > 0.0, "eta4 must be > 0");
        return;
    case JumpSpec::Kind::GaussianExponential:
        require(s.delta >= 0.0, "delta must be >= 0");
        require(s.eta > 0.0, "eta must be > 0");
        return;
    }
}

void validate(const SwapContract& c) {
    require(c.T > 0.0, "T must be > 0");
    require(c.N >= 1, "N must be >= 1");
    require(c.notional > 0.0, "notional must be > 0");
    require(c.vol_points_scale > 0.0, "volPointsScale must be > 0");
}

bool jump_transform_admissible(const JumpSpec& s, Cplx omega, Cplx c) {
    switch (s.kind) {
    case JumpSpec::Kind::None:
        return true;
    case JumpSpec::Kind::DoubleExponential: {
        // only legs with positive weight constrain the strip
        if (s.p > 0.0 && omega.real() >= s.eta1) return false;
        if (s.p < 1.0 && omega.real() <= -s.eta2) return false;
        if (s.pPrime > 0.0 && c.real() >= s.eta3) return false;
        if (s.pPrime < 1.0 && c.real() <= -s.eta4) return false;
        return true;
    }
    case JumpSpec::Kind::GaussianExponential:
        return ((s.rhoJ * omega + c) * s.eta).real() < 1.0;
    }
    return false;
}

Cplx joint_jump_transform(const JumpSpec& s, Cplx omega, Cplx c) {
    switch (s.kind) {
    case JumpSpec::Kind::None:
        return 1.0;
    case JumpSpec::Kind::DoubleExponential: {
        if (!jump_transform_admissible(s, omega, c))
            throw DomainError("double-exponential jump transform diverges: need "
                              "Re(omega) in (-eta2, eta1) and Re(c) in (-eta4, eta3)");
        const double q = 1.0 - s.p, qPrime = 1.0 - s.pPrime;
        Cplx price = 0.0, var = 0.0;
        if (s.p > 0.0) price += s.p * s.eta1 / (s.eta1 - omega);
        if (q > 0.0) price += q * s.eta2 / (s.eta2 + omega);
        if (s.pPrime > 0.0) var += s.pPrime * s.eta3 / (s.eta3 - c);
        if (qPrime > 0.0) var += qPrime * s.eta4 / (s.eta4 + c);
        return price * var;
    }
    case JumpSpec::Kind::GaussianExponential: {
        if (!jump_transform_admissible(s, omega, c))
            throw DomainError("gaussian-exponential jump transform diverges: need "
                              "Re((rhoJ*omega + c)*eta) < 1");
        const Cplx gauss = std::exp(omega * s.nu + 0.5 * s.delta * s.delta * omega * omega);
        return gauss / (1.0 - (s.rhoJ * omega + c) * s.eta);
    }
    }
    return 1.0;
}

double mean_price_jump(const JumpSpec& s) {
    if (s.kind == JumpSpec::Kind::None) return 0.0;
    return joint_jump_transform(s, 1.0, 0.0).real() - 1.0;
}

Cplx big_lambda(const JumpSpec& s, Cplx omega, Cplx c) {
    if (s.kind == JumpSpec::Kind::None) return 0.0;
    if (s.paper_literal_transform && s.kind == JumpSpec::Kind::DoubleExponential) {
        // printed power form; A and B are the transforms at argument 1
        const double q = 1.0 - s.p, qPrime = 1.0 - s.pPrime;
        const double A = s.p * s.eta1 / (s.eta1 - 1.0) + q * s.eta2 / (s.eta2 + 1.0);
        const double B = s.pPrime * s.eta3 / (s.eta3 - 1.0) + qPrime * s.eta4 / (s.eta4 + 1.0);
        return std::exp(omega * std::log(A)) * std::exp(c * std::log(B)) - (A - 1.0) * omega - 1.0;
    }
    const double m = mean_price_jump(s);
    return -m * omega + joint_jump_transform(s, omega, c) - 1.0;
}

} // namespace volswap

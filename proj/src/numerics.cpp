#include "qcells/numerics.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include <boost/math/constants/constants.hpp>

#include "qcells/errors.hpp"

namespace qcells {

RootOfUnityContext RootOfUnityContext::at_altitude(int kappa, int precision, double tolerance) {
    if (kappa < 4) {
        throw ValidationError("altitude must be at least 4, got " + std::to_string(kappa));
    }
    if (precision < 15) {
        throw ValidationError("precision must be at least 15 digits");
    }
    return RootOfUnityContext{kappa, precision, tolerance};
}

RootOfUnityContext RootOfUnityContext::classical(int precision, double tolerance) {
    if (precision < 15) {
        throw ValidationError("precision must be at least 15 digits");
    }
    return RootOfUnityContext{std::nullopt, precision, tolerance};
}

int RootOfUnityContext::kappa() const {
    if (!altitude) {
        throw ValidationError("classical context has no finite altitude");
    }
    return *altitude;
}

RootOfUnityContext with_precision(const RootOfUnityContext& ctx, int digits) {
    if (digits < 15) {
        throw ValidationError("precision must be at least 15 digits");
    }
    RootOfUnityContext out = ctx;
    out.precision = digits;
    return out;
}

QReal qint(int n, const RootOfUnityContext& ctx) {
    if (n < 0) {
        throw std::invalid_argument("qint requires n >= 0");
    }
    if (ctx.is_classical()) {
        return static_cast<QReal>(n);
    }
    const int kappa = ctx.kappa();
    if (n % kappa == 0) {
        return 0.0;
    }
    const double pi = std::numbers::pi;
    return std::sin(n * pi / kappa) / std::sin(pi / kappa);
}

static void check_alcove(int k, int l, const RootOfUnityContext& ctx) {
    if (k < 0 || l < 0) {
        throw WeightOutsideAlcove("negative weight (" + std::to_string(k) + "," + std::to_string(l) + ")");
    }
    if (!ctx.is_classical() && k + l > ctx.kappa() - 3) {
        throw WeightOutsideAlcove("weight (" + std::to_string(k) + "," + std::to_string(l) +
                                  ") outside the alcove at altitude " + std::to_string(ctx.kappa()));
    }
}

QReal qdim_weight(int k, int l, const RootOfUnityContext& ctx) {
    check_alcove(k, l, ctx);
    return qint(k + 1, ctx) * qint(l + 1, ctx) * qint(k + l + 2, ctx) / qint(2, ctx);
}

PrecisionGuard::PrecisionGuard(int digits) : saved_(HighReal::default_precision()) {
    HighReal::default_precision(static_cast<unsigned>(digits));
}

PrecisionGuard::~PrecisionGuard() { HighReal::default_precision(saved_); }

HighReal qint_hp(int n, const RootOfUnityContext& ctx) {
    if (n < 0) {
        throw std::invalid_argument("qint requires n >= 0");
    }
    PrecisionGuard guard(ctx.precision + 10);
    if (ctx.is_classical()) {
        return HighReal(n);
    }
    const int kappa = ctx.kappa();
    if (n % kappa == 0) {
        return HighReal(0);
    }
    HighReal pi = boost::math::constants::pi<HighReal>();
    HighReal num = sin(HighReal(n) * pi / kappa);
    HighReal den = sin(pi / kappa);
    return HighReal(num / den);
}

HighReal qdim_weight_hp(int k, int l, const RootOfUnityContext& ctx) {
    check_alcove(k, l, ctx);
    PrecisionGuard guard(ctx.precision + 10);
    HighReal r = qint_hp(k + 1, ctx) * qint_hp(l + 1, ctx) * qint_hp(k + l + 2, ctx) / qint_hp(2, ctx);
    return r;
}

std::string to_string(const HighReal& x, int digits) {
    std::ostringstream os;
    os.precision(digits);
    os << x;
    return os.str();
}

int precision_from_env(int fallback) {
    const char* env = std::getenv("QCELLS_PRECISION");
    if (env == nullptr || *env == '\0') {
        return fallback;
    }
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || v < 15 || v > 1000) {
        return fallback;
    }
    return static_cast<int>(v);
}

}  // namespace qcells

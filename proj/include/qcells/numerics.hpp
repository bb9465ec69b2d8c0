#pragma once

#include <complex>
#include <optional>
#include <string>

#include <boost/multiprecision/mpfr.hpp>

namespace qcells {

using QReal = double;
using QComplex = std::complex<double>;
using HighReal = boost::multiprecision::mpfr_float;

/// Altitude kappa (nullopt = classical limit q = 1), working precision in
/// decimal digits and the verification tolerance.
struct RootOfUnityContext {
    std::optional<int> altitude;
    int precision = 15;
    double tolerance = 1e-9;

    static RootOfUnityContext at_altitude(int kappa, int precision = 15, double tolerance = 1e-9);
    static RootOfUnityContext classical(int precision = 15, double tolerance = 1e-9);

    bool is_classical() const { return !altitude.has_value(); }
    int kappa() const;
    int level() const { return kappa() - 3; }
};

RootOfUnityContext with_precision(const RootOfUnityContext& ctx, int digits);

QReal qint(int n, const RootOfUnityContext& ctx);
QReal qdim_weight(int k, int l, const RootOfUnityContext& ctx);

/// Multiprecision variants evaluated at ctx.precision decimal digits.
HighReal qint_hp(int n, const RootOfUnityContext& ctx);
HighReal qdim_weight_hp(int k, int l, const RootOfUnityContext& ctx);

/// Sets the default mpfr precision for the lifetime of the guard.
class PrecisionGuard {
public:
    explicit PrecisionGuard(int digits);
    ~PrecisionGuard();
    PrecisionGuard(const PrecisionGuard&) = delete;
    PrecisionGuard& operator=(const PrecisionGuard&) = delete;

private:
    unsigned saved_;
};

std::string to_string(const HighReal& x, int digits);

/// Precision from QCELLS_PRECISION if set and valid, else the fallback.
int precision_from_env(int fallback = 15);

}  // namespace qcells

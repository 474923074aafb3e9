#ifndef CDW_CURRENT_LAWS_HPP
#define CDW_CURRENT_LAWS_HPP

#include <cstddef>
#include <string>
#include <vector>

namespace cdw {

struct CurrentLawParams {
    double e_t = 1.0;      // threshold field E_T
    double c_v = 1.0;      // dimensionless constant c_V
    double c_tilde = 1.0;  // overall scale C~1 = C1 C2 / (2 m*)
    double g_p = 1.0;      // Zener scale G_p

    void validate() const;
};

// Soliton tunneling law
//   I = c_tilde cosh( sqrt(2E/(E_T c_V)) - sqrt(E_T c_V / E) ) exp(-E_T c_V / E),
// evaluated through explicit exponentials so the E -> 0+ tail underflows to 0
// instead of producing inf * 0. Throws for e <= 0.
double current_ss(double e, const CurrentLawParams& p);

/// Zener-style law: I = g_p (E - E_T) exp(-E_T / E) for E > E_T, else 0.
double current_zener(double e, const CurrentLawParams& p);

enum class CurrentLaw { ss, zener };
enum class FitLoss { linear, log };

struct CurrentSample {
    double e;
    double i;
};

struct FitResult {
    CurrentLawParams params;
    double rms_residual;
    bool converged;
    bool rank_deficient;      // fewer than 4 points or < 1 decade of field span
    std::size_t evals;
};

// Least squares over the law's free parameters, log-parameterized so they stay
// positive: (c_v, c_tilde) for the ss law with e_t pinned at its init value
// (E_T and c_V enter only through their product), (e_t, g_p) for Zener.
FitResult fit_current_law(const std::vector<CurrentSample>& data, CurrentLaw law,
                          const CurrentLawParams& init, FitLoss loss = FitLoss::linear,
                          std::size_t max_evals = 20000);

} // namespace cdw

#endif

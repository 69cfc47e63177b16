#ifndef QUADDEC_TYPES_HPP
#define QUADDEC_TYPES_HPP

#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace quaddec {

using cplx = std::complex<double>;

inline constexpr double pi = std::numbers::pi;

// Degree of the zero polynomial. Sentinel well below any valid degree;
// never -1, which callers could mistake for an off-by-one.
inline constexpr int deg_neg_inf = std::numeric_limits<int>::min();

// Base class for everything this library throws.
class qd_error : public std::runtime_error {
public:
    explicit qd_error(const std::string& what) : std::runtime_error(what) {}
};

// Input is structurally invalid (zero denominator, empty polynomial, ...).
class domain_error : public qd_error {
public:
    explicit domain_error(const std::string& what) : qd_error(what) {}
};

// Data degenerates on the target curve (e.g. denominator identically zero
// on |z| = 1).
class degenerate_data_error : public qd_error {
public:
    explicit degenerate_data_error(const std::string& what) : qd_error(what) {}
};

// Evaluation hit a pole. Carries the principal part so callers can inspect
// the singularity instead of just failing.
class pole_error : public qd_error {
public:
    cplx pole;
    // coefficient of (z - pole)^(-k) at index k-1
    std::vector<cplx> principal_part;

    pole_error(const std::string& what, cplx pole_, std::vector<cplx> pp)
        : qd_error(what), pole(pole_), principal_part(std::move(pp)) {}
};

// The conformal map failed a quadrature-domain validity check.
class univalence_error : public qd_error {
public:
    std::string diagnostic;
    univalence_error(const std::string& what, std::string diag)
        : qd_error(what), diagnostic(std::move(diag)) {}
};

// Boundary data does not extend to the double without boundary poles
// (membership test for the singularity-free subspace).
class membership_error : public qd_error {
public:
    cplx offending_pole;
    membership_error(const std::string& what, cplx pole_)
        : qd_error(what), offending_pole(pole_) {}
};

// A matching/interpolation system was numerically singular.
class conditioning_error : public qd_error {
public:
    double condition_estimate;
    conditioning_error(const std::string& what, double cond)
        : qd_error(what), condition_estimate(cond) {}
};

}  // namespace quaddec

#endif

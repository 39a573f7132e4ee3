#ifndef NEUMANN_CERTIFIER_HPP
#define NEUMANN_CERTIFIER_HPP

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "neumann/ode.hpp"
#include "neumann/potential.hpp"

namespace neumann {

/// Points 0 = y_0 < y_1 < ... < y_{2n+2} = L.
class Partition {
public:
    explicit Partition(std::vector<double> points);
    static Partition equal(int n, double L);

    int n() const { return static_cast<int>(points_.size() - 3) / 2; }
    double length() const { return points_.back(); }
    std::span<const double> points() const { return points_; }
    std::size_t interval_count() const { return points_.size() - 1; }
    Interval interval(std::size_t i) const { return {points_[i], points_[i + 1]}; }
    double gap(std::size_t i) const { return points_[i + 1] - points_[i]; }

    bool operator==(const Partition&) const = default;

private:
    std::vector<double> points_;
};

enum class Verdict { UniqueTrivial, ResonantWitness, Inconclusive };

enum class Method {
    ClassicalFirst,
    Dolph,
    L1Global,
    LinfPartition,
    L1Partition,
    GreedyPartition,
    Shooting,  ///< only used for resonance witnesses
};

std::string to_string(Verdict v);
std::string to_string(Method m);

struct CertifierTolerances {
    double ae = 1e-12;
    double strict = 1e-9;
    double mass_per_length = 1e-9;
    double margin_rel = 1e-9;
    double residual = kResidualTolerance;

    DominanceTolerances dominance() const { return {ae, strict, mass_per_length}; }
};

/// Audit record of one certification attempt.
///
/// Every condition a criterion needs is recorded as a named margin that must
/// be strictly positive; the verdict is UniqueTrivial exactly when all of
/// them are. Criteria never claim resonance.
struct Certificate {
    Verdict verdict = Verdict::Inconclusive;
    Method method = Method::ClassicalFirst;
    int n = 0;
    std::optional<Partition> partition;
    std::vector<std::pair<std::string, double>> margins;
    CertifierTolerances tolerances;
    std::vector<std::string> assumptions;
    std::vector<std::string> attempted;
    std::shared_ptr<const Trajectory> witness;
    double witness_residual = 0.0;

    double margin(const std::string& name) const;
    bool unique() const { return verdict == Verdict::UniqueTrivial; }
};

Certificate check_classical_first(const Potential& a, const CertifierTolerances& tol = {});
Certificate check_dolph(const Potential& a, int n, const CertifierTolerances& tol = {});
Certificate check_l1_global(const Potential& a, int n, const CertifierTolerances& tol = {});
Certificate check_linf_partition(const Potential& a, const Partition& part, const CertifierTolerances& tol = {});
Certificate check_l1_partition(const Potential& a, const Partition& part, const CertifierTolerances& tol = {});

/// Builds a partition on which the per-interval L^1 criterion holds by
/// choosing each point so that excess / cot hits n pi / L - eps.
std::optional<Partition> greedy_partition(const Potential& a, int n, double eps,
                                          const CertifierTolerances& tol = {});
/// Default eps = 1e-6 n pi / L, retried at 1e-3 n pi / L.
std::optional<Partition> greedy_partition(const Potential& a, int n, const CertifierTolerances& tol = {});

/// Ratio excess(a - lambda_n, [s, y]) / cot(n pi (y - s) / L), with a
/// extended by lambda_n past L.
double greedy_ratio(const Potential& a, int n, double s, double y);

struct LinfMode {
    Partition partition;
};
struct L1Mode {
    Partition partition;
};
struct GreedyMode {
    double eps;
};
using NonlinearMode = std::variant<LinfMode, L1Mode, GreedyMode>;

/// Uniqueness for u'' + f(x, u) = 0 with Neumann conditions given
/// lambda_n <= alpha <= f_u <= beta. Only the bounds are inspected.
Certificate check_nonlinear(const Potential& alpha, const Potential& beta, int n, const NonlinearMode& mode,
                            const CertifierTolerances& tol = {});

struct Assertion {
    std::string name;
    bool pass = false;
    double slack = 0.0;
};

struct ZeroDistributionReport {
    ZeroProfile profile;
    std::vector<Assertion> checks;

    bool all_pass() const;
};

/// Checks the zero distribution and per-interval energy bounds of the
/// nontrivial Neumann solution of a potential in Lambda_n.
ZeroDistributionReport verify_zero_distribution(const Potential& a, int n, const CertifierTolerances& tol = {});

/// Full pipeline used by the CLI. `auto` shoots first and then tries the
/// classical, Dolph, global L^1 and greedy criteria in that order.
enum class MethodSelector { Auto, Classical, Dolph, L1, LinfPartition, L1Partition, Greedy };

struct CertifyRequest {
    MethodSelector method = MethodSelector::Auto;
    int n = 1;
    std::optional<Partition> partition;
    std::optional<double> eps;
};

Certificate certify(const Potential& a, const CertifyRequest& request, const CertifierTolerances& tol = {});

}  // namespace neumann

#endif  // NEUMANN_CERTIFIER_HPP

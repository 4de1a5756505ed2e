#pragma once

#include <vector>

#include "catlab/numerics.hpp"
#include "catlab/parallel.hpp"

namespace catlab::two_sheet {

// Axisymmetric two-sheet configuration: a base minimal sheet plus the
// normal-line separation w to the opposite sheet, sampled on a radial grid.
// rho is the extrinsic distance to the neck center.
struct TwoSheetConfig {
    enum class Kind { catenoid, parallel_planes, double_neck };

    Kind kind = Kind::catenoid;
    int n = 2;
    double r = 1.0;   // neck radius (catenoid / double_neck primary neck)
    double w0 = 0.0;  // plane separation (parallel_planes)
    double r2 = 0.0;  // secondary neck radius (double_neck)
    double b = 0.0;   // distance between neck centers (double_neck)

    struct Node {
        double t = 0.0;  // cylindrical radius on the base sheet
        double rho = 0.0;
        double w = 0.0;
    };
    std::vector<Node> nodes;
};

// Exact catenoid sheets; nodes on a geometric grid in rho over [rho_min, rho_max].
TwoSheetConfig make_catenoid_config(int n, double r, double rho_min, double rho_max, int points);

// Two parallel flat sheets at separation w0 > 0; rho measured from a marked
// point of the base plane.
TwoSheetConfig make_plane_config(int n, double w0, double rho_min, double rho_max, int points);

// Two translated exact catenoids (radii r >= r2, centers b apart) glued by
// their asymptotic planes; bookkeeping fixture only (n >= 3).
TwoSheetConfig make_double_neck_config(int n, double r, double r2, double b);

// Pointwise accessors (closed forms / root solves under the hood).
double rho_at(const TwoSheetConfig& cfg, double t);
double t_of_rho(const TwoSheetConfig& cfg, double rho);
double w_at(const TwoSheetConfig& cfg, double t);
double dw_dt_at(const TwoSheetConfig& cfg, double t);
double phi_at(const TwoSheetConfig& cfg, double t);       // |grad rho| on the base
double metric_at(const TwoSheetConfig& cfg, double t);    // sqrt(1 + slope^2)
double a_norm_at(const TwoSheetConfig& cfg, double t);    // |A| of the base
double grad_a_norm_at(const TwoSheetConfig& cfg, double t);
double grad_w_at(const TwoSheetConfig& cfg, double t);    // |nabla w| (arclength derivative)
double hessian_w_norm_at(const TwoSheetConfig& cfg, double t, const numerics::DiffSpec& spec);
// Axisymmetric Laplace-Beltrami of w on the base sheet.
double laplacian_w_at(const TwoSheetConfig& cfg, double t, const numerics::DiffSpec& spec);

struct ResidualRow {
    double rho = 0.0;
    double w = 0.0;
    double lhs = 0.0;       // Delta w + |A|^2 w
    double rhs = 0.0;       // graph-inequality allowance, C(n) = 10^n
    double residual = 0.0;  // lhs - rhs
};

struct GraphResidualReport {
    std::vector<ResidualRow> rows;
    double tolerance = 0.0;  // 1e-6 * max w
    double c_min = 0.0;      // smallest C(n) that keeps every residual <= 0
    bool all_nonpositive = false;
};

// Residual of the minimal-graph inequality on each node (flat ambient:
// curvature allowances dropped). Requires every node at rho >= 10 r.
GraphResidualReport minimal_graph_residual(const TwoSheetConfig& cfg,
                                           const numerics::DiffSpec& spec = {},
                                           ExecPolicy policy = ExecPolicy::parallel);

// Pointwise check Delta w <= w + (1/8) w^3 / rho^4 on the grid.
bool laplace_inequality_check(const TwoSheetConfig& cfg, const numerics::DiffSpec& spec = {},
                              ExecPolicy policy = ExecPolicy::parallel);

// Concentric-sphere foliation in flat (n+1)-space: leaves of radius r0 + s,
// test function u = u_amp * <theta, e> - s extended off the base leaf.
struct SphereFoliation {
    int n = 2;
    double r0 = 1.0;
    double depth = 0.1;  // s ranges over [0, depth]
    int levels = 9;      // >= 5 s-levels
    double u_amp = 1.0;

    SphereFoliation(int n_, double r0_, double depth_, int levels_ = 9, double u_amp_ = 1.0);
};

struct EvolutionResiduals {
    double mean_curvature = 0.0;      // d/ds H  vs -Ric - |A|^2
    double second_fundamental = 0.0;  // d/ds |A|^2
    double gradient_norm = 0.0;       // d/ds |tilde grad u|^2
    double radial_gradient = 0.0;     // d/ds tilde grad u  vs -A(grad u)
    double div_shape_gradient = 0.0;  // div A(grad u)  vs <hess u, A> + ...
    double div_gradient = 0.0;        // d/ds div tilde grad u
    double hessian_norm = 0.0;        // d/ds |hess u|^2
    double max_residual = 0.0;
};

EvolutionResiduals evolution_identity_residuals(const SphereFoliation& fol,
                                                const numerics::DiffSpec& spec = {});

// |A(x,t)| <= 2|A(x)| + 2t and |grad u(x,t)| <= 2|grad u(x)| on the grid.
// Requires |A| * depth small (regime_error otherwise).
bool curvature_propagation_check(const SphereFoliation& fol);

}  // namespace catlab::two_sheet

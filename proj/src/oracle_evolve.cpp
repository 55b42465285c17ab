#include "midgap/oracle_evolve.hpp"

#include <cmath>
#include <cstdint>

namespace midgap {

namespace {

struct Endpoint {
    Eigen::VectorXd x, y;  // real and imaginary parts of psi(t_end)
};

// One fixed-step RK4 run. Mat is a dense or sparse real symmetric matrix;
// the state is kept split so each derivative costs two real products:
//   d(x + iy)/dt = (H y - g.x) + i(-H x - g.y).
template <class Mat>
Endpoint run_fixed(const Mat& hmat, const Eigen::VectorXd& g, const Eigen::VectorXd& x0,
                   const Eigen::VectorXd& y0, double dt, std::int64_t n_steps,
                   Trajectory* traj, const std::vector<std::int64_t>& sample_steps) {
    const auto dim = x0.size();
    Eigen::VectorXd x = x0, y = y0;
    Eigen::VectorXd k1x(dim), k1y(dim), k2x(dim), k2y(dim), k3x(dim), k3y(dim), k4x(dim),
        k4y(dim), tx(dim), ty(dim);

    auto deriv = [&](const Eigen::VectorXd& ax, const Eigen::VectorXd& ay, Eigen::VectorXd& ox,
                     Eigen::VectorXd& oy) {
        ox.noalias() = hmat * ay;
        ox -= g.cwiseProduct(ax);
        oy.noalias() = -(hmat * ax);
        oy -= g.cwiseProduct(ay);
    };

    std::size_t next_sample = 0;
    auto record = [&](std::int64_t step) {
        if (!traj) return;
        if (next_sample >= sample_steps.size() || sample_steps[next_sample] != step) return;
        double t = step * dt;
        double re = x0.dot(x) + y0.dot(y);
        double im = x0.dot(y) - y0.dot(x);
        double norm2 = x.squaredNorm() + y.squaredNorm();
        if (!std::isfinite(norm2) || norm2 > 1.0 + 1e-6)
            throw integration_error("state norm grew to " + std::to_string(norm2) +
                                    "; step too large for the spectral radius");
        traj->time.push_back(t);
        traj->survival.push_back(re * re + im * im);
        traj->norm2.push_back(norm2);
        tx.noalias() = hmat * x;
        ty.noalias() = hmat * y;
        traj->energy.push_back((x.dot(tx) + y.dot(ty)) / norm2);
        auto row = traj->populations.row(static_cast<long>(next_sample));
        for (long i = 0; i < dim; ++i) row[i] = x[i] * x[i] + y[i] * y[i];
        ++next_sample;
    };

    record(0);
    for (std::int64_t step = 0; step < n_steps; ++step) {
        deriv(x, y, k1x, k1y);
        tx = x + (0.5 * dt) * k1x;
        ty = y + (0.5 * dt) * k1y;
        deriv(tx, ty, k2x, k2y);
        tx = x + (0.5 * dt) * k2x;
        ty = y + (0.5 * dt) * k2y;
        deriv(tx, ty, k3x, k3y);
        tx = x + dt * k3x;
        ty = y + dt * k3y;
        deriv(tx, ty, k4x, k4y);
        x += (dt / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
        y += (dt / 6.0) * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
        record(step + 1);
    }
    return {std::move(x), std::move(y)};
}

template <class Mat>
Trajectory evolve_with(const Mat& hmat, const HamiltonianMatrix& h,
                       const Eigen::VectorXcd& psi0, double t_end, double dt_hint,
                       const EvolveOptions& opts) {
    auto n_steps = static_cast<std::int64_t>(std::ceil(t_end / dt_hint));
    if (n_steps < 1) n_steps = 1;
    if (n_steps > 4'000'000'000LL)
        throw capacity_error("step count " + std::to_string(n_steps) +
                             " is out of range; raise dt_hint or shorten t_end");
    double dt = t_end / static_cast<double>(n_steps);

    std::int64_t n_samples = std::min<std::int64_t>(opts.max_samples, n_steps + 1);
    std::vector<std::int64_t> sample_steps(static_cast<std::size_t>(n_samples));
    for (std::int64_t j = 0; j < n_samples; ++j)
        sample_steps[static_cast<std::size_t>(j)] = (j * n_steps) / (n_samples - 1);

    Eigen::VectorXd x0 = psi0.real(), y0 = psi0.imag();
    Trajectory traj;
    traj.dt = dt;
    traj.populations.resize(n_samples, h.dim);
    traj.time.reserve(static_cast<std::size_t>(n_samples));
    traj.survival.reserve(static_cast<std::size_t>(n_samples));

    Endpoint end = run_fixed(hmat, h.decay, x0, y0, dt, n_steps, &traj, sample_steps);

    if (opts.check_halving) {
        Endpoint fine = run_fixed(hmat, h.decay, x0, y0, 0.5 * dt, 2 * n_steps, nullptr, {});
        auto survival = [&](const Endpoint& e) {
            double re = x0.dot(e.x) + y0.dot(e.y);
            double im = x0.dot(e.y) - y0.dot(e.x);
            return re * re + im * im;
        };
        double err = std::abs(survival(end) - survival(fine));
        for (long i = 0; i < h.dim; ++i) {
            double p1 = end.x[i] * end.x[i] + end.y[i] * end.y[i];
            double p2 = fine.x[i] * fine.x[i] + fine.y[i] * fine.y[i];
            err = std::max(err, std::abs(p1 - p2) / std::max(std::max(p1, p2), 1e-6));
        }
        traj.achieved_halving_error = err;
        if (err > opts.halving_tol)
            throw integration_error("step-halving disagreement " + std::to_string(err) +
                                    " exceeds tolerance; shrink dt_hint");
    }
    return traj;
}

}  // namespace

Trajectory evolve(const HamiltonianMatrix& h, const Eigen::VectorXcd& psi0, double t_end,
                  double dt_hint, const EvolveOptions& opts) {
    if (h.dim < 1 || h.coherent.rows() != h.dim || h.decay.size() != h.dim)
        throw invalid_input("inconsistent hamiltonian dimensions");
    if (psi0.size() != h.dim) throw invalid_input("initial state has wrong dimension");
    if (!(t_end > 0.0) || !(dt_hint > 0.0)) throw invalid_input("t_end and dt_hint must be positive");
    if (opts.max_samples < 2) throw invalid_input("max_samples must be at least 2");
    if (std::abs(psi0.norm() - 1.0) > 1e-9)
        throw invalid_input("initial state must be normalized");

    if (h.dim <= 256) {
        Eigen::MatrixXd dense(h.coherent);
        return evolve_with(dense, h, psi0, t_end, dt_hint, opts);
    }
    return evolve_with(h.coherent, h, psi0, t_end, dt_hint, opts);
}

}  // namespace midgap

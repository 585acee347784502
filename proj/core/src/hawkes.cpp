#include "tgc/hawkes.hpp"

#include <algorithm>
#include <stdexcept>

#include "tgc/vecops.hpp"

namespace tgc::hawkes {

double base_intensity(std::span<const double> zx, std::span<const double> zy) {
    return -squared_distance(zx, zy);
}

double time_decay(double t_c, double t_i, double decay_rate) {
    return std::exp(-decay_rate * (t_c - t_i));
}

std::vector<double> neighbor_weights(NodeId x, NeighborView view, const EmbeddingTable& z) {
    if (view.empty()) throw std::invalid_argument("neighbor_weights: empty view");
    std::vector<double> mu(view.size());
    for (std::size_t j = 0; j < view.size(); ++j)
        mu[j] = base_intensity(z.row(view[j].node), z.row(x));
    const double hi = *std::max_element(mu.begin(), mu.end());
    double total = 0.0;
    for (double& m : mu) {
        m = std::exp(m - hi);
        total += m;
    }
    for (double& m : mu) m /= total;
    return mu;
}

double conditional_intensity(NodeId x, NodeId y, double t, NeighborView view,
                             const EmbeddingTable& z, const HawkesParams& params) {
    double lambda = base_intensity(z.row(x), z.row(y));
    if (view.empty()) return lambda;
    const auto omega = neighbor_weights(x, view, z);
    const double rate = params.decay();
    for (std::size_t j = 0; j < view.size(); ++j) {
        const double f = time_decay(t, view[j].time, rate);
        lambda += omega[j] * f * base_intensity(z.row(view[j].node), z.row(y));
    }
    return lambda;
}

namespace {

// Adds the gradient of `coeff * lambda(x, b)` given precomputed neighbor
// weights/decays; shared between the positive and every negative target.
void accumulate_lambda_grad(const Interaction& event, NodeId b, NeighborView view,
                            const EmbeddingTable& z, const HawkesParams& params,
                            const Workspace& ws, double coeff, GradAccumulator& grad) {
    const auto zx = z.row(event.source);
    const auto zb = z.row(b);

    // Base term.
    axpy_diff(-2.0 * coeff, zx, zb, grad.node_grad(event.source));
    axpy_diff(2.0 * coeff, zx, zb, grad.node_grad(b));

    if (view.empty()) return;

    const double rate = params.decay();
    // Hawkes term H = sum_j omega_j * f_j * mu(h_j, b).
    double hawkes_sum = 0.0;
    for (std::size_t j = 0; j < view.size(); ++j) hawkes_sum += ws.omega[j] * ws.hawkes_term[j];

    double d_log_decay = 0.0;
    for (std::size_t j = 0; j < view.size(); ++j) {
        const auto zh = z.row(view[j].node);
        const double of = ws.omega[j] * ws.decay_f[j];

        // Through mu(h_j, b).
        axpy_diff(-2.0 * coeff * of, zh, zb, grad.node_grad(view[j].node));
        axpy_diff(2.0 * coeff * of, zh, zb, grad.node_grad(b));

        // Through the softmax weight: d lambda / d mu(h_j, x)
        //   = omega_j * (f_j * mu(h_j, b) - H).
        const double s = coeff * ws.omega[j] * (ws.hawkes_term[j] - hawkes_sum);
        axpy_diff(-2.0 * s, zh, zx, grad.node_grad(view[j].node));
        axpy_diff(2.0 * s, zh, zx, grad.node_grad(event.source));

        // Through the decay: d f_j / d log_decay = -dt_j * rate * f_j.
        const double dt = event.time - view[j].time;
        d_log_decay += ws.omega[j] * ws.hawkes_term[j] * (-dt);
    }
    grad.log_decay_grad() += coeff * rate * d_log_decay;
}

}  // namespace

double interaction_loss(const Interaction& event, NeighborView view,
                        std::span<const NodeId> negatives, const EmbeddingTable& z,
                        const HawkesParams& params, NegativeForm form, Workspace& ws,
                        GradAccumulator* grad, double weight) {
    const std::size_t m = view.size();
    const auto zx = z.row(event.source);
    const double rate = params.decay();

    ws.mu_xh.resize(m);
    ws.omega.resize(m);
    ws.decay_f.resize(m);
    ws.hawkes_term.resize(m);

    if (m > 0) {
        for (std::size_t j = 0; j < m; ++j)
            ws.mu_xh[j] = base_intensity(z.row(view[j].node), zx);
        const double hi = *std::max_element(ws.mu_xh.begin(), ws.mu_xh.end());
        double total = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            ws.omega[j] = std::exp(ws.mu_xh[j] - hi);
            total += ws.omega[j];
        }
        for (std::size_t j = 0; j < m; ++j) {
            ws.omega[j] /= total;
            ws.decay_f[j] = time_decay(event.time, view[j].time, rate);
        }
    }

    auto lambda_of = [&](NodeId b) {
        const auto zb = z.row(b);
        double lambda = base_intensity(zx, zb);
        for (std::size_t j = 0; j < m; ++j) {
            ws.hawkes_term[j] = ws.decay_f[j] * base_intensity(z.row(view[j].node), zb);
            lambda += ws.omega[j] * ws.hawkes_term[j];
        }
        return lambda;
    };

    double loss = 0.0;

    // Positive target.
    {
        const double lambda = lambda_of(event.target);
        loss += -log_sigmoid(lambda);
        if (grad) {
            const double coeff = weight * (sigmoid(lambda) - 1.0);
            accumulate_lambda_grad(event, event.target, view, z, params, ws, coeff, *grad);
        }
    }

    // Negatives.
    for (NodeId n : negatives) {
        const double lambda = lambda_of(n);
        double coeff = 0.0;
        if (form == NegativeForm::unit_margin) {
            loss += -log_sigmoid(1.0 - lambda);
            coeff = weight * sigmoid(lambda - 1.0);
        } else {
            loss += -log_sigmoid(-lambda);
            coeff = weight * sigmoid(lambda);
        }
        if (grad) accumulate_lambda_grad(event, n, view, z, params, ws, coeff, *grad);
    }

    return loss;
}

double temporal_loss(std::span<const Interaction> batch, const TemporalGraph& g,
                     std::size_t neighbor_len, const EmbeddingTable& z,
                     const HawkesParams& params, const UnigramTable& sampler,
                     std::mt19937_64& rng, int n_neg, NegativeForm form,
                     GradAccumulator* grad, double weight) {
    if (n_neg < 1) throw std::invalid_argument("temporal_loss: n_neg must be >= 1");
    Workspace ws;
    double total = 0.0;
    for (const auto& event : batch) {
        const auto view = g.neighbor_view(event.source, event.time, neighbor_len);
        ws.negatives.clear();
        for (int s = 0; s < n_neg; ++s)
            ws.negatives.push_back(sampler.sample_excluding(rng, event.source, event.target));
        total += interaction_loss(event, view, ws.negatives, z, params, form, ws, grad, weight);
    }
    return total;
}

}  // namespace tgc::hawkes

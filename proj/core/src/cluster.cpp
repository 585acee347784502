#include "tgc/cluster.hpp"

#include <cmath>
#include <stdexcept>

#include "tgc/metrics.hpp"
#include "tgc/vecops.hpp"

namespace tgc::cluster {

namespace {

constexpr double kProbFloor = 1e-8;

// Unnormalized Student-t kernel values against every center.
void kernel_values(std::span<const double> zx, const ClusterModel& model,
                   std::vector<double>& u, std::vector<double>& d2) {
    const int k = model.k();
    u.resize(k);
    d2.resize(k);
    const double v = model.dof;
    const double expo = -(v + 1.0) / 2.0;
    for (int c = 0; c < k; ++c) {
        d2[c] = squared_distance(zx, model.centers.row(c));
        u[c] = std::pow(1.0 + d2[c] / v, expo);
    }
}

}  // namespace

AssignmentRow soft_assignment(std::span<const double> zx, const ClusterModel& model) {
    if (model.k() < 1) throw std::invalid_argument("soft_assignment: model has no centers");
    std::vector<double> u, d2;
    kernel_values(zx, model, u, d2);
    double total = 0.0;
    for (double val : u) total += val;
    AssignmentRow q(u.size());
    for (std::size_t c = 0; c < u.size(); ++c) q[c] = u[c] / total;
    return q;
}

std::vector<AssignmentRow> target_distribution(const std::vector<AssignmentRow>& q) {
    if (q.empty()) throw std::invalid_argument("target_distribution: empty assignment set");
    const std::size_t k = q.front().size();
    std::vector<double> freq(k, 0.0);
    for (const auto& row : q) {
        if (row.size() != k)
            throw std::invalid_argument("target_distribution: ragged assignment rows");
        for (std::size_t c = 0; c < k; ++c) freq[c] += row[c];
    }
    std::vector<AssignmentRow> p(q.size(), AssignmentRow(k));
    for (std::size_t i = 0; i < q.size(); ++i) {
        double total = 0.0;
        for (std::size_t c = 0; c < k; ++c) {
            p[i][c] = q[i][c] * q[i][c] / freq[c];
            total += p[i][c];
        }
        for (std::size_t c = 0; c < k; ++c) p[i][c] /= total;
    }
    return p;
}

double node_distribution_loss(std::span<const double> p, NodeId x, const EmbeddingTable& z,
                              const ClusterModel& model, GradAccumulator* grad,
                              double weight) {
    const int k = model.k();
    if (static_cast<int>(p.size()) != k)
        throw std::invalid_argument("node_distribution_loss: target row size mismatch");
    const auto zx = z.row(x);
    const double v = model.dof;

    std::vector<double> u, d2;
    kernel_values(zx, model, u, d2);
    double total = 0.0;
    for (double val : u) total += val;

    double loss = 0.0;
    std::vector<double> qp(k), dldq(k, 0.0);
    for (int c = 0; c < k; ++c) {
        qp[c] = u[c] / total;
        const double pc = std::max(p[c], kProbFloor);
        const double qc = std::max(qp[c], kProbFloor);
        loss += pc * (std::log(pc) - std::log(qc));
        if (qp[c] > kProbFloor) dldq[c] = -pc / qp[c];
    }

    if (grad) {
        double dot_dq = 0.0;
        for (int c = 0; c < k; ++c) dot_dq += dldq[c] * qp[c];
        auto gx = grad->node_grad(x);
        for (int c = 0; c < k; ++c) {
            const double dl_du = (dldq[c] - dot_dq) / total;
            const double du_dd2 = -(v + 1.0) / (2.0 * v) * u[c] / (1.0 + d2[c] / v);
            const double coeff = weight * dl_du * du_dd2;
            // d d2/dz = 2(z - c), d d2/dc = -2(z - c)
            axpy_diff(2.0 * coeff, zx, model.centers.row(c), gx);
            axpy_diff(-2.0 * coeff, zx, model.centers.row(c), grad->center_grad(c));
        }
    }
    return loss;
}

namespace {

// d cos(a, b) / da with the same norm floor cosine() uses.
void cosine_grad_a(std::span<const double> a, std::span<const double> b, double cos_ab,
                   double coeff, std::span<double> out) {
    const double na = std::max(norm(a), 1e-12);
    const double nb = std::max(norm(b), 1e-12);
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] += coeff * (b[i] / (na * nb) - cos_ab * a[i] / (na * na));
}

double sign_of(double a) { return a > 0.0 ? 1.0 : (a < 0.0 ? -1.0 : 0.0); }

}  // namespace

double batch_reconstruction_loss(NodeId x, NodeId y, std::span<const NodeId> neighbors,
                                 std::span<const NodeId> negatives, const EmbeddingTable& z,
                                 GradAccumulator* grad, double weight) {
    const auto zx = z.row(x);
    double loss = 0.0;

    // target 1 for the pair and neighbors, 0 for negatives; |target - cos|.
    auto term = [&](NodeId other, double target, double scale) {
        const auto zo = z.row(other);
        const double c = cosine(zx, zo);
        loss += scale * std::abs(target - c);
        if (grad) {
            const double s = -sign_of(target - c);  // d|target - cos|/dcos
            const double coeff = weight * scale * s;
            if (coeff != 0.0) {
                cosine_grad_a(zx, zo, c, coeff, grad->node_grad(x));
                cosine_grad_a(zo, zx, c, coeff, grad->node_grad(other));
            }
        }
    };

    term(y, 1.0, 1.0);
    if (!neighbors.empty()) {
        const double scale = 1.0 / static_cast<double>(neighbors.size());
        for (NodeId h : neighbors) term(h, 1.0, scale);
    }
    if (!negatives.empty()) {
        const double scale = 1.0 / static_cast<double>(negatives.size());
        for (NodeId n : negatives) term(n, 0.0, scale);
    }
    return loss;
}

ClusterModel init_centers(const EmbeddingTable& z0, int k, std::uint64_t seed, double dof) {
    if (k < 2) throw std::invalid_argument("init_centers: need at least 2 clusters");
    if (static_cast<std::size_t>(k) > z0.rows())
        throw std::invalid_argument("init_centers: k exceeds number of nodes");
    if (dof <= 0.0) throw std::invalid_argument("init_centers: dof must be positive");
    auto km = metrics::kmeans(z0, k, seed);
    return ClusterModel{std::move(km.centers), dof};
}

}  // namespace tgc::cluster

#include "bosegas/entropy.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace bosegas {

double sigma(double x) {
    if (x < 0.0) throw std::domain_error("sigma: requires x >= 0");
    if (x == 0.0) return 0.0;
    return x * std::log(x) - (1.0 + x) * std::log1p(x);
}

double sigma_prime(double x) {
    if (x <= 0.0) throw std::domain_error("sigma_prime: requires x > 0");
    return std::log(x / (1.0 + x));
}

double scalar_rel_entropy(double x, double y) {
    if (x < 0.0 || y < 0.0) throw std::domain_error("scalar_rel_entropy: negative argument");
    if (x == y) return 0.0;
    if (y == 0.0) return std::numeric_limits<double>::infinity();
    const double d = x - y;
    double s;
    if (std::abs(d) < 1e-5 * y) {
        const double c2 = 1.0 / (2.0 * y * (1.0 + y));
        const double c3 = -(2.0 * y + 1.0) / (6.0 * y * y * (1.0 + y) * (1.0 + y));
        s = d * d * (c2 + d * c3);
    } else {
        // sigma(x) - sigma(y) - sigma'(y)(x-y) = x ln(x/y) - (1+x) ln((1+x)/(1+y))
        const double t1 = (x > 0.0) ? x * std::log(x / y) : 0.0;
        const double t2 = (1.0 + x) * std::log1p(d / (1.0 + y));
        s = t1 - t2;
    }
    s = std::max(s, 0.0);
    const double lower = kScalarCoercivityC * d * d / ((x + y) * (1.0 + y));
    if (s < lower * (1.0 - 1e-9) - 1e-300)
        throw std::logic_error("scalar_rel_entropy: coercivity bound violated");
    return s;
}

SpectralOperator SpectralOperator::from_matrix(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() != symmetric.cols())
        throw std::invalid_argument("SpectralOperator: matrix not square");
    if (symmetric.rows() > 512)
        throw std::invalid_argument("SpectralOperator: dimension above the desk-scale cap (512)");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric);
    SpectralOperator op;
    op.eigenvalues = es.eigenvalues().cwiseMax(0.0);
    op.eigenvectors = es.eigenvectors();
    return op;
}

SpectralOperator SpectralOperator::diagonal(const Eigen::VectorXd& values) {
    SpectralOperator op;
    op.eigenvalues = values;
    op.eigenvectors = Eigen::MatrixXd::Identity(values.size(), values.size());
    op.validate();
    return op;
}

Eigen::MatrixXd SpectralOperator::matrix() const {
    return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

void SpectralOperator::validate() const {
    if (eigenvalues.size() != eigenvectors.cols() || eigenvectors.rows() != eigenvectors.cols())
        throw std::invalid_argument("SpectralOperator: inconsistent dimensions");
    if ((eigenvalues.array() < 0.0).any())
        throw std::invalid_argument("SpectralOperator: negative eigenvalue");
    const Eigen::MatrixXd gram = eigenvectors.transpose() * eigenvectors;
    const double err =
        (gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (err > 1e-12)
        throw std::invalid_argument("SpectralOperator: eigenvectors not orthonormal");
}

double rel_entropy(const SpectralOperator& gamma, const SpectralOperator& gamma0) {
    if (gamma.dim() != gamma0.dim())
        throw std::invalid_argument("rel_entropy: dimension mismatch");
    const Eigen::MatrixXd overlap = gamma.eigenvectors.transpose() * gamma0.eigenvectors;
    double s = 0.0;
    for (Eigen::Index i = 0; i < gamma.dim(); ++i) {
        const double x = gamma.eigenvalues[i];
        for (Eigen::Index j = 0; j < gamma0.dim(); ++j) {
            const double w = overlap(i, j) * overlap(i, j);
            if (w < 1e-28) continue;
            const double y = gamma0.eigenvalues[j];
            if (y <= kKernelFloor) {
                if (x <= kKernelFloor) continue;
                return std::numeric_limits<double>::infinity();
            }
            s += w * scalar_rel_entropy(x, y);
        }
    }
    return s;
}

double bose_entropy(const SpectralOperator& gamma) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < gamma.dim(); ++i) s -= sigma(std::max(0.0, gamma.eigenvalues[i]));
    return s;
}

namespace {
Eigen::MatrixXd apply_f(const SpectralOperator& op) {
    Eigen::VectorXd fe(op.eigenvalues.size());
    for (Eigen::Index i = 0; i < fe.size(); ++i) {
        const double x = std::max(0.0, op.eigenvalues[i]);
        fe[i] = x / std::sqrt(1.0 + x);
    }
    return op.eigenvectors * fe.asDiagonal() * op.eigenvectors.transpose();
}

double trace_norm(const Eigen::MatrixXd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
    return svd.singularValues().sum();
}
}  // namespace

EntropyReport verify_lemma_coercivity(const SpectralOperator& gamma,
                                      const SpectralOperator& gamma0, int n_lambda_samples,
                                      double c1, double c2) {
    EntropyReport rep;
    rep.rel_entropy = rel_entropy(gamma, gamma0);

    const Eigen::MatrixXd df = apply_f(gamma) - apply_f(gamma0);
    // tr[(1+g0)^{-1} df^2] in the gamma0 eigenbasis.
    const Eigen::MatrixXd df0 = gamma0.eigenvectors.transpose() * df * gamma0.eigenvectors;
    double t_op = 0.0;
    for (Eigen::Index i = 0; i < gamma0.dim(); ++i)
        t_op += df0.row(i).squaredNorm() / (1.0 + gamma0.eigenvalues[i]);
    rep.bound_operator = c1 * t_op;

    const double tr_diff = gamma.eigenvalues.sum() - gamma0.eigenvalues.sum();
    const Eigen::MatrixXd g = gamma.matrix();
    const Eigen::MatrixXd g0 = gamma0.matrix();
    const Eigen::MatrixXd one = Eigen::MatrixXd::Identity(g.rows(), g.cols());
    const double denom = ((g + g0) * (one + g0)).trace();
    rep.bound_trace = (denom > 0.0) ? c2 * tr_diff * tr_diff / denom : 0.0;

    const double tol = 1e-12 * (1.0 + std::abs(rep.rel_entropy));
    rep.margin_operator = rep.rel_entropy - rep.bound_operator;
    rep.margin_trace = rep.rel_entropy - rep.bound_trace;

    // lambda family around the optimizing lambda* = tr(g-g0)/denom.
    const double lstar = (denom > 0.0) ? tr_diff / denom : 0.0;
    rep.lambda_family_min_margin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_lambda_samples; ++k) {
        const double scale = -2.0 + 4.0 * (static_cast<double>(k) + 0.5) /
                                       static_cast<double>(n_lambda_samples);
        const double l = (lstar != 0.0) ? lstar * scale : scale;
        const double rhs = 4.0 / 27.0 * l * tr_diff - 2.0 / 27.0 * l * l * denom;
        rep.lambda_family_min_margin =
            std::min(rep.lambda_family_min_margin, rep.rel_entropy - rhs);
    }
    rep.ok = rep.margin_operator >= -tol && rep.margin_trace >= -tol &&
             rep.lambda_family_min_margin >= -tol;
    return rep;
}

TraceNormBoundReport trace_norm_bound_check(const SpectralOperator& gamma,
                                            const SpectralOperator& gamma0,
                                            const Eigen::MatrixXd& projection, double lambda) {
    if (lambda <= 0.0) throw std::invalid_argument("trace_norm_bound_check: lambda must be > 0");
    const Eigen::Index d = gamma.dim();
    if (projection.rows() != d || projection.cols() != d)
        throw std::invalid_argument("trace_norm_bound_check: projection size mismatch");
    if ((projection * projection - projection).cwiseAbs().maxCoeff() > 1e-10 ||
        (projection - projection.transpose()).cwiseAbs().maxCoeff() > 1e-10)
        throw std::invalid_argument("trace_norm_bound_check: not an orthogonal projection");

    const Eigen::MatrixXd g = gamma.matrix();
    const Eigen::MatrixXd g0 = gamma0.matrix();

    // gamma~ = 1(gamma <= lambda) gamma and the spilled part 1(gamma > lambda) gamma.
    Eigen::VectorXd ev_low = gamma.eigenvalues, ev_high = gamma.eigenvalues;
    for (Eigen::Index i = 0; i < d; ++i) {
        if (gamma.eigenvalues[i] > lambda)
            ev_low[i] = 0.0;
        else
            ev_high[i] = 0.0;
    }
    const Eigen::MatrixXd g_low =
        gamma.eigenvectors * ev_low.asDiagonal() * gamma.eigenvectors.transpose();
    const double spill = ev_high.sum();

    const Eigen::MatrixXd q = Eigen::MatrixXd::Identity(d, d) - projection;
    const double diff_p = trace_norm((g_low - g0) * projection);
    const double tr_tilde_diff = std::abs((g_low - g0).trace());
    const double q_g0_q = (q * g0 * q).trace();  // PSD, trace norm = trace
    const double g0_tn = gamma0.eigenvalues.sum();

    TraceNormBoundReport rep;
    rep.lhs = trace_norm(g - g0);
    rep.rhs = spill + diff_p +
              2.0 * std::sqrt(g0_tn + tr_tilde_diff) *
                  std::sqrt(q_g0_q + tr_tilde_diff + diff_p);
    rep.ok = rep.lhs <= rep.rhs + 1e-10 * (1.0 + rep.rhs);
    return rep;
}

SpectralOperator random_operator(int dim, double max_eigenvalue, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(dim, dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) a(i, j) = gauss(rng);
    // Orthonormal frame from a QR factorization of a gaussian matrix.
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    SpectralOperator op;
    op.eigenvectors = qr.householderQ() * Eigen::MatrixXd::Identity(dim, dim);
    op.eigenvalues.resize(dim);
    for (int i = 0; i < dim; ++i) op.eigenvalues[i] = max_eigenvalue * unif(rng);
    return op;
}

Eigen::MatrixXd random_projection(int dim, int rank, std::uint64_t seed) {
    if (rank < 0 || rank > dim) throw std::invalid_argument("random_projection: bad rank");
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::MatrixXd a(dim, rank);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < rank; ++j) a(i, j) = gauss(rng);
    Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
    const Eigen::MatrixXd quu =
        qr.householderQ() * Eigen::MatrixXd::Identity(dim, rank);
    return quu * quu.transpose();
}

}  // namespace bosegas

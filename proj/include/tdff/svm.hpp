#ifndef TDFF_SVM_HPP
#define TDFF_SVM_HPP

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "tdff/detail/rng.hpp"
#include "tdff/embedding.hpp"
#include "tdff/errors.hpp"
#include "tdff/media.hpp"

namespace tdff {

/**
 * @brief Linear decision function trained for one template.
 *
 * The bias is carried as an explicit field but is part of the regularized
 * weight vector during training (constant-feature augmentation).
 */
struct SvmModel {
    EmbeddingVector weights;
    double bias = 0.0;
    std::string owner_template;
};

struct SolverConfig {
    double C = 10.0;              ///< trade-off factor of the class-weight formulas
    double tolerance = 1e-4;      ///< stop when the max projected-gradient violation falls below this
    int max_iterations = 1000;    ///< epoch cap
    std::uint64_t seed = 1;       ///< permutation seed

    void validate() const {
        if (!(C > 0.0)) throw ConfigError("SolverConfig: C must be > 0");
        if (!(tolerance > 0.0)) throw ConfigError("SolverConfig: tolerance must be > 0");
        if (max_iterations < 1) throw ConfigError("SolverConfig: max_iterations must be >= 1");
    }
};

/// Class-balanced penalty weights: the positive class weight scales with
/// how outnumbered the positives are, and vice versa.
///   lambda_pos = C * (n_pos + n_neg) / (2 * n_pos)
///   lambda_neg = C * (n_pos + n_neg) / (2 * n_neg)
inline std::pair<double, double> class_weights(std::size_t n_pos, std::size_t n_neg, double C) {
    if (n_pos < 1 || n_neg < 1) throw Error("class_weights: both classes need at least one sample");
    if (!(C > 0.0)) throw ConfigError("class_weights: C must be > 0");
    const double total = static_cast<double>(n_pos + n_neg);
    return {C * total / (2.0 * static_cast<double>(n_pos)),
            C * total / (2.0 * static_cast<double>(n_neg))};
}

/**
 * @brief One binary training problem: target encodings vs. a large
 * negative set, with class-balanced penalties.
 */
struct TrainingProblem {
    std::vector<MediaEncoding> positives;
    std::vector<MediaEncoding> negatives;
    double lambda_pos = 0.0;
    double lambda_neg = 0.0;
};

inline TrainingProblem make_training_problem(std::vector<MediaEncoding> positives,
                                             std::vector<MediaEncoding> negatives, double C) {
    if (positives.empty()) throw Error("training problem needs at least one positive");
    if (negatives.empty()) throw EmptyNegativesError();
    const std::size_t d = positives.front().vector.size();
    for (const auto& e : positives) {
        if (e.vector.size() != d) throw DimMismatchError("positive encoding dim mismatch");
    }
    for (const auto& e : negatives) {
        if (e.vector.size() != d) throw DimMismatchError("negative encoding dim mismatch");
    }
    TrainingProblem p;
    p.positives = std::move(positives);
    p.negatives = std::move(negatives);
    std::tie(p.lambda_pos, p.lambda_neg) = class_weights(p.positives.size(), p.negatives.size(), C);
    return p;
}

/// Which negative set a template-specific SVM is trained against.
enum class NegativeSetRole {
    VerificationProbe,    ///< negatives: all training encodings
    IdentificationProbe,  ///< negatives: all training encodings
    GalleryTemplate,      ///< negatives: other gallery templates + all training encodings
};

/// Collects the negative sample encodings for one target template under
/// the given protocol role. The target's own encodings never appear.
inline std::vector<MediaEncoding> build_negative_set(NegativeSetRole role, const Template& target,
                                                     const std::vector<Template>& training,
                                                     const std::vector<Template>& gallery) {
    std::vector<MediaEncoding> negatives;
    const auto append_all = [&negatives, &target](const std::vector<Template>& pool) {
        for (const Template& t : pool) {
            if (t.template_id == target.template_id) continue;
            negatives.insert(negatives.end(), t.encodings.begin(), t.encodings.end());
        }
    };
    if (role == NegativeSetRole::GalleryTemplate) append_all(gallery);
    append_all(training);
    if (negatives.empty()) {
        throw EmptyNegativesError("no negatives for template " + target.template_id);
    }
    return negatives;
}

/// Primal objective over the augmented weight vector
/// w~ = [w; b] (bias regularized):
///   0.5 w~'w~ + sum_i lambda_{y_i} max(0, 1 - y_i w~'x~_i)^2
/// with x~ = [x; 1].
inline double svm_objective(const TrainingProblem& p, const EmbeddingVector& w_aug) {
    const std::size_t d = p.positives.front().vector.size();
    if (w_aug.size() != d + 1) throw DimMismatchError("svm_objective: augmented dim mismatch");
    double f = 0.5 * squared_norm(w_aug);
    const auto margin = [&w_aug, d](const EmbeddingVector& x) {
        double m = w_aug[d];
        for (std::size_t k = 0; k < d; ++k) m += w_aug[k] * x[k];
        return m;
    };
    for (const auto& e : p.positives) {
        const double h = std::max(0.0, 1.0 - margin(e.vector));
        f += p.lambda_pos * h * h;
    }
    for (const auto& e : p.negatives) {
        const double h = std::max(0.0, 1.0 + margin(e.vector));
        f += p.lambda_neg * h * h;
    }
    return f;
}

/// Analytic gradient of svm_objective (the squared hinge is C^1):
///   grad = w~ - sum_i 2 lambda_{y_i} max(0, 1 - y_i w~'x~_i) y_i x~_i
inline EmbeddingVector svm_gradient(const TrainingProblem& p, const EmbeddingVector& w_aug) {
    const std::size_t d = p.positives.front().vector.size();
    if (w_aug.size() != d + 1) throw DimMismatchError("svm_gradient: augmented dim mismatch");
    EmbeddingVector g = w_aug;
    const auto accumulate = [&](const EmbeddingVector& x, double y, double lambda) {
        double m = w_aug[d];
        for (std::size_t k = 0; k < d; ++k) m += w_aug[k] * x[k];
        const double h = std::max(0.0, 1.0 - y * m);
        if (h > 0.0) {
            const double c = 2.0 * lambda * h * y;
            for (std::size_t k = 0; k < d; ++k) g[k] -= c * x[k];
            g[d] -= c;
        }
    };
    for (const auto& e : p.positives) accumulate(e.vector, +1.0, p.lambda_pos);
    for (const auto& e : p.negatives) accumulate(e.vector, -1.0, p.lambda_neg);
    return g;
}

inline double primal_objective(const TrainingProblem& p, const SvmModel& m) {
    EmbeddingVector w_aug = m.weights;
    w_aug.push_back(m.bias);
    return svm_objective(p, w_aug);
}

struct TrainOutcome {
    SvmModel model;
    int epochs = 0;              ///< outer passes actually run
    bool converged = false;      ///< true iff stopped by tolerance
    double final_violation = 0.0;
    double dual_objective = 0.0;
};

// A coordinate descent solver for the dual of the class-weighted
// L2-regularized L2-loss SVM:
//
//   min_alpha  0.5 alpha' (Q + D) alpha - e' alpha,   alpha_i >= 0,
//
// where Q_ij = y_i y_j x~_i' x~_j over bias-augmented samples and
// D_ii = 1 / (2 lambda_{y_i}).  w~ = sum_i y_i alpha_i x~_i recovers the
// primal solution.  Samples are visited in a freshly seeded random
// permutation each epoch; the epoch's maximal projected-gradient
// violation drives the stopping test.  See Hsieh et al., ICML 2008,
// Algorithm 3.
//
// When dual_trace is given it receives the dual objective after every
// epoch (exact coordinate minimization makes it non-increasing).
inline TrainOutcome solve_svm_dual(const TrainingProblem& problem, const SolverConfig& config,
                                   std::string owner_template = {},
                                   std::vector<double>* dual_trace = nullptr) {
    config.validate();
    const std::size_t n_pos = problem.positives.size();
    const std::size_t n_neg = problem.negatives.size();
    if (n_pos == 0) throw Error("solver: no positives");
    if (n_neg == 0) throw EmptyNegativesError();
    const std::size_t l = n_pos + n_neg;
    const std::size_t d = problem.positives.front().vector.size();
    const std::size_t da = d + 1;  // bias-augmented

    // Flatten samples: row i = [x_i, 1].
    std::vector<double> x(l * da);
    std::vector<double> y(l);
    std::vector<double> diag(l);
    for (std::size_t i = 0; i < l; ++i) {
        const bool pos = i < n_pos;
        const EmbeddingVector& v = pos ? problem.positives[i].vector : problem.negatives[i - n_pos].vector;
        if (v.size() != d) throw DimMismatchError("solver: encoding dim mismatch");
        double* row = &x[i * da];
        for (std::size_t k = 0; k < d; ++k) row[k] = v[k];
        row[d] = 1.0;
        y[i] = pos ? 1.0 : -1.0;
        diag[i] = 1.0 / (2.0 * (pos ? problem.lambda_pos : problem.lambda_neg));
    }

    std::vector<double> qd(l);
    for (std::size_t i = 0; i < l; ++i) {
        const double* row = &x[i * da];
        double s = 0.0;
        for (std::size_t k = 0; k < da; ++k) s += row[k] * row[k];
        qd[i] = s + diag[i];
    }

    std::vector<double> alpha(l, 0.0);
    std::vector<double> w(da, 0.0);
    std::vector<std::size_t> order(l);
    std::iota(order.begin(), order.end(), std::size_t{0});
    detail::Rng rng(config.seed);

    const auto dual_objective = [&] {
        double dual = 0.0;
        for (std::size_t k = 0; k < da; ++k) dual += w[k] * w[k];
        for (std::size_t i = 0; i < l; ++i) dual += alpha[i] * (alpha[i] * diag[i] - 2.0);
        return 0.5 * dual;
    };

    TrainOutcome out;
    double violation = 0.0;
    for (int epoch = 0; epoch < config.max_iterations; ++epoch) {
        rng.shuffle(order);
        violation = 0.0;
        for (std::size_t s = 0; s < l; ++s) {
            const std::size_t i = order[s];
            const double* row = &x[i * da];
            double g = 0.0;
            for (std::size_t k = 0; k < da; ++k) g += w[k] * row[k];
            g = y[i] * g - 1.0 + alpha[i] * diag[i];

            double pg = g;
            if (alpha[i] == 0.0 && g > 0.0) pg = 0.0;
            violation = std::max(violation, std::abs(pg));

            if (std::abs(pg) > 1e-12) {
                const double a_new = std::max(alpha[i] - g / qd[i], 0.0);
                const double delta = (a_new - alpha[i]) * y[i];
                for (std::size_t k = 0; k < da; ++k) w[k] += delta * row[k];
                alpha[i] = a_new;
            }
        }
        out.epochs = epoch + 1;
        if (dual_trace != nullptr) dual_trace->push_back(dual_objective());
        if (violation < config.tolerance) {
            out.converged = true;
            break;
        }
    }
    out.final_violation = violation;
    out.dual_objective = dual_objective();

    out.model.weights.assign(w.begin(), w.end() - 1);
    out.model.bias = w.back();
    out.model.owner_template = std::move(owner_template);
    return out;
}

/// Trains a template-specific SVM. Throws NonConvergenceError when the
/// epoch cap is hit with the violation still above tolerance, which
/// signals a C/tolerance misconfiguration.
inline SvmModel train_template_svm(const TrainingProblem& problem, const SolverConfig& config,
                                   std::string owner_template = {}) {
    TrainOutcome out = solve_svm_dual(problem, config, std::move(owner_template));
    if (!out.converged) {
        throw NonConvergenceError("svm solver for template '" + out.model.owner_template + "' hit " +
                                  std::to_string(out.epochs) + " epochs with violation " +
                                  std::to_string(out.final_violation) + " > tolerance " +
                                  std::to_string(config.tolerance));
    }
    return std::move(out.model);
}

/// Raw signed margin w'x + b. No probability calibration.
inline double decision_value(const SvmModel& model, const EmbeddingVector& x) {
    if (x.size() != model.weights.size()) {
        throw DimMismatchError("decision_value: dim " + std::to_string(x.size()) + " vs model dim " +
                               std::to_string(model.weights.size()));
    }
    double s = model.bias;
    for (std::size_t k = 0; k < x.size(); ++k) s += model.weights[k] * x[k];
    return s;
}

}  // namespace tdff

#endif  // TDFF_SVM_HPP

/*
 * Copyright 2026 The Driftscope Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "driftscope/regression.hpp"

#include "driftscope/error.hpp"

#include <algorithm>
#include <cmath>

namespace driftscope {

bool TransformPlan::numeric_logged(std::string_view name) const {
    auto it = log_numeric.find(name);
    return it != log_numeric.end() && it->second;
}

TransformPlan plan_from_spec(const ModelSpec& spec) {
    TransformPlan plan;
    plan.log_response = spec.response.log_transform;
    for (const auto& term : spec.terms) {
        if (const auto* num = std::get_if<NumericTerm>(&term)) {
            plan.log_numeric[num->name] = num->log_transform;
        } else {
            const auto& cat = std::get<CategoricalTerm>(term);
            plan.active_levels[cat.name] = cat.levels;
            plan.reference[cat.name] = cat.reference_level;
        }
    }
    return plan;
}

namespace {

struct CatEncoding {
    std::string term;
    std::vector<std::string> dummy_levels; // one column per entry
    std::string reference;
};

// Column layout (shared by design build and prediction): intercept, numeric
// terms in spec order, then dummy columns per categorical term in spec level
// order with the reference omitted.
struct Layout {
    std::vector<std::string> column_names;
    std::vector<const NumericTerm*> numeric_terms;
    std::vector<CatEncoding> cat_encodings;
};

Layout make_layout(const ModelSpec& spec, const TransformPlan& plan) {
    Layout layout;
    layout.column_names.push_back("(intercept)");
    for (const auto& term : spec.terms) {
        if (const auto* num = std::get_if<NumericTerm>(&term)) {
            layout.numeric_terms.push_back(num);
            layout.column_names.push_back(plan.numeric_logged(num->name) ? "ln_" + num->name
                                                                         : num->name);
        }
    }
    for (const auto& term : spec.terms) {
        const auto* cat = std::get_if<CategoricalTerm>(&term);
        if (!cat) continue;
        CatEncoding enc;
        enc.term = cat->name;
        auto active_it = plan.active_levels.find(cat->name);
        const std::vector<std::string>& active =
            active_it != plan.active_levels.end() ? active_it->second : cat->levels;
        auto ref_it = plan.reference.find(cat->name);
        std::string reference =
            ref_it != plan.reference.end() ? ref_it->second : cat->reference_level;
        // If the reference level has no support, fall back to the first
        // active level so the dummies stay independent of the intercept.
        if (std::find(active.begin(), active.end(), reference) == active.end() && !active.empty()) {
            reference = active.front();
        }
        enc.reference = reference;
        for (const auto& level : active) {
            if (level == reference) continue;
            enc.dummy_levels.push_back(level);
            layout.column_names.push_back(cat->name + "=" + level);
        }
        layout.cat_encodings.push_back(std::move(enc));
    }
    return layout;
}

// Fills one design row; returns false (and the offending level) when the
// record's level is outside the active set.
bool fill_row(const Dataset& dataset, const ProjectRecord& record, const ModelSpec& spec,
              const TransformPlan& plan, const Layout& layout, Eigen::RowVectorXd& row,
              std::string* unseen_level) {
    row.setZero();
    row(0) = 1.0;
    Eigen::Index col = 1;
    for (const auto* num : layout.numeric_terms) {
        double v = dataset.numeric_value(record, num->name);
        if (plan.numeric_logged(num->name)) {
            if (!(v > 0.0)) {
                throw Error(ErrorCode::NonPositiveValue,
                            "record '" + record.id + "': cannot log non-positive '" + num->name +
                                "' = " + std::to_string(v));
            }
            v = std::log(v);
        }
        row(col++) = v;
    }
    for (const auto& enc : layout.cat_encodings) {
        const std::string& level = dataset.categorical_value(record, enc.term);
        // Spec-level membership first: a level unknown to the spec is a
        // modeling error, not an unseen training level.
        const CategoricalTerm* spec_term = nullptr;
        for (const auto& term : spec.terms) {
            if (const auto* cat = std::get_if<CategoricalTerm>(&term); cat && cat->name == enc.term)
                spec_term = cat;
        }
        if (spec_term && std::find(spec_term->levels.begin(), spec_term->levels.end(), level) ==
                             spec_term->levels.end()) {
            throw Error(ErrorCode::UnknownLevel, "record '" + record.id + "' has level '" + level +
                                                     "' unknown to term '" + enc.term + "'");
        }
        if (level != enc.reference) {
            auto it = std::find(enc.dummy_levels.begin(), enc.dummy_levels.end(), level);
            if (it == enc.dummy_levels.end()) {
                if (unseen_level) *unseen_level = enc.term + "=" + level;
                return false;
            }
            row(col + std::distance(enc.dummy_levels.begin(), it)) = 1.0;
        }
        col += static_cast<Eigen::Index>(enc.dummy_levels.size());
    }
    return true;
}

} // namespace

DesignMatrix build_design(const Dataset& dataset, std::span<const std::size_t> record_indices,
                          const ModelSpec& spec, const TransformPlan& plan) {
    const Layout layout = make_layout(spec, plan);
    DesignMatrix design;
    design.column_names = layout.column_names;
    design.response_logged = plan.log_response;

    const Eigen::Index n = static_cast<Eigen::Index>(record_indices.size());
    const Eigen::Index p1 = static_cast<Eigen::Index>(layout.column_names.size());
    design.x.resize(n, p1);
    design.y.resize(n);
    design.row_record_ids.reserve(record_indices.size());

    Eigen::Index r = 0;
    Eigen::RowVectorXd row(p1);
    for (std::size_t idx : record_indices) {
        const ProjectRecord& record = dataset.records.at(idx);
        std::string unseen;
        if (!fill_row(dataset, record, spec, plan, layout, row, &unseen)) {
            throw Error(ErrorCode::UnseenLevel,
                        "record '" + record.id + "' carries inactive level " + unseen);
        }
        design.x.row(r) = row;
        double y = dataset.numeric_value(record, spec.response.name);
        if (plan.log_response) {
            if (!(y > 0.0)) {
                throw Error(ErrorCode::NonPositiveValue,
                            "record '" + record.id + "': cannot log non-positive response");
            }
            y = std::log(y);
        }
        design.y(r) = y;
        design.row_record_ids.push_back(record.id);
        ++r;
    }
    return design;
}

double FitResult::coefficient(std::string_view name) const {
    for (std::size_t i = 0; i < coefficient_names.size(); ++i) {
        if (coefficient_names[i] == name) return coefficients(static_cast<Eigen::Index>(i));
    }
    throw Error(ErrorCode::MissingColumn, "no coefficient named '" + std::string(name) + "'");
}

FitResult fit_wls(const DesignMatrix& design, std::span<const double> weights) {
    const Eigen::Index n = design.rows();
    const Eigen::Index p1 = design.cols();
    if (static_cast<Eigen::Index>(weights.size()) != n) {
        throw Error(ErrorCode::LengthMismatch,
                    "got " + std::to_string(weights.size()) + " weights for " + std::to_string(n) +
                        " design rows");
    }

    std::vector<Eigen::Index> effective;
    effective.reserve(weights.size());
    for (Eigen::Index i = 0; i < n; ++i) {
        const double w = weights[static_cast<std::size_t>(i)];
        if (w < 0.0 || !std::isfinite(w)) {
            throw Error(ErrorCode::BadSpec, "weights must be finite and non-negative");
        }
        if (w >= kWeightExclusionCutoff) effective.push_back(i);
    }
    const int n_eff = static_cast<int>(effective.size());
    const int p = static_cast<int>(p1) - 1;
    if (n_eff < p + 2) {
        throw Error(ErrorCode::NotWellFormed,
                    "effective training size " + std::to_string(n_eff) +
                        " below well-formed minimum " + std::to_string(p + 2));
    }

    Eigen::MatrixXd xs(n_eff, p1);
    Eigen::VectorXd ys(n_eff);
    for (int r = 0; r < n_eff; ++r) {
        const Eigen::Index i = effective[static_cast<std::size_t>(r)];
        const double sw = std::sqrt(weights[static_cast<std::size_t>(i)]);
        xs.row(r) = design.x.row(i) * sw;
        ys(r) = design.y(i) * sw;
    }

    // Rank screen on the scaled columns: modified Gram-Schmidt in column
    // order, dropping any column whose residual against the kept basis falls
    // below kRankTolerance relative to its own norm. Later columns lose.
    std::vector<Eigen::Index> kept;
    std::vector<std::string> dropped;
    Eigen::MatrixXd basis(n_eff, p1);
    Eigen::Index basis_cols = 0;
    for (Eigen::Index j = 0; j < p1; ++j) {
        Eigen::VectorXd v = xs.col(j);
        const double norm0 = v.norm();
        for (int pass = 0; pass < 2; ++pass) {
            for (Eigen::Index k = 0; k < basis_cols; ++k) {
                v -= basis.col(k).dot(v) * basis.col(k);
            }
        }
        if (norm0 <= 0.0 || v.norm() <= kRankTolerance * norm0) {
            dropped.push_back(design.column_names[static_cast<std::size_t>(j)]);
            continue;
        }
        basis.col(basis_cols++) = v / v.norm();
        kept.push_back(j);
    }
    if (kept.empty()) {
        throw Error(ErrorCode::RankDeficient, "no linearly independent columns remain");
    }

    Eigen::VectorXd beta = Eigen::VectorXd::Zero(p1);
    if (dropped.empty()) {
        beta = xs.colPivHouseholderQr().solve(ys);
    } else {
        Eigen::MatrixXd xk(n_eff, static_cast<Eigen::Index>(kept.size()));
        for (std::size_t c = 0; c < kept.size(); ++c) xk.col(static_cast<Eigen::Index>(c)) = xs.col(kept[c]);
        const Eigen::VectorXd bk = xk.colPivHouseholderQr().solve(ys);
        for (std::size_t c = 0; c < kept.size(); ++c) beta(kept[c]) = bk(static_cast<Eigen::Index>(c));
    }
    if (!beta.allFinite()) {
        throw Error(ErrorCode::RankDeficient, "solver produced non-finite coefficients");
    }

    FitResult fit;
    fit.coefficient_names = design.column_names;
    fit.coefficients = beta;
    fit.n_effective = n_eff;
    fit.predictor_count = p;
    fit.residuals_log_scale = design.y - design.x * beta;
    fit.converged = dropped.empty();
    fit.dropped_columns = std::move(dropped);
    return fit;
}

PredictOutcome predict(const FitResult& fit, const Dataset& dataset,
                       std::span<const std::size_t> record_indices, const ModelSpec& spec,
                       const TransformPlan& plan) {
    const Layout layout = make_layout(spec, plan);
    if (layout.column_names != fit.coefficient_names) {
        throw Error(ErrorCode::ConfigMismatch,
                    "prediction layout does not match the fitted design");
    }
    PredictOutcome outcome;
    outcome.aligned.reserve(record_indices.size());
    Eigen::RowVectorXd row(static_cast<Eigen::Index>(layout.column_names.size()));
    for (std::size_t idx : record_indices) {
        const ProjectRecord& record = dataset.records.at(idx);
        std::string unseen;
        if (!fill_row(dataset, record, spec, plan, layout, row, &unseen)) {
            outcome.skipped_unseen_level.push_back(record.id);
            outcome.aligned.push_back(std::nullopt);
            continue;
        }
        double value = row.dot(fit.coefficients);
        if (plan.log_response) value = std::exp(value);
        outcome.predictions.push_back({record.id, value});
        outcome.aligned.push_back(value);
    }
    return outcome;
}

} // namespace driftscope

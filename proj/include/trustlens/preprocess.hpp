#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "trustlens/error.hpp"
#include "trustlens/model.hpp"

namespace trustlens::preprocess {

inline constexpr double kDefaultPercentile = 99.0;

/// Linear interpolation between closest ranks on an ascending-sorted sample
/// (the "linear" method of common numerical libraries).
inline double percentile_sorted(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw ValidationError("percentile of empty sample");
  const double rank = q / 100.0 * static_cast<double>(sorted.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

struct ColumnParams {
  double clip_low = 0.0;
  double clip_high = 0.0;
  double min = 0.0;
  double max = 0.0;

  bool operator==(const ColumnParams&) const = default;
};

inline void check_percentile(double percentile) {
  if (!(percentile > 50.0 && percentile <= 100.0)) {
    throw ValidationError("clip percentile must lie in (50,100]");
  }
}

/// Clip bounds at the (100-p) and p percentiles when `clip`, then min/max of
/// the clipped column. Without clipping the bounds equal the observed range.
inline ColumnParams fit_column(std::vector<double> values, double percentile, bool clip) {
  if (values.empty()) throw ValidationError("no records");
  check_percentile(percentile);
  std::sort(values.begin(), values.end());
  ColumnParams c;
  if (clip && percentile < 100.0) {
    c.clip_low = percentile_sorted(values, 100.0 - percentile);
    c.clip_high = percentile_sorted(values, percentile);
  } else {
    c.clip_low = values.front();
    c.clip_high = values.back();
  }
  c.min = std::clamp(values.front(), c.clip_low, c.clip_high);
  c.max = std::clamp(values.back(), c.clip_low, c.clip_high);
  return c;
}

/// Clamp, then min-max scale into [0,1]. A degenerate range maps to 0.
inline double transform_value(double x, const ColumnParams& c) {
  const double clipped = std::clamp(x, c.clip_low, c.clip_high);
  if (!(c.max > c.min)) return 0.0;
  return std::clamp((clipped - c.min) / (c.max - c.min), 0.0, 1.0);
}

using FeatureSet = std::vector<Feature>;

/// Features with no natural upper bound; these are percentile-clipped.
inline FeatureSet default_unbounded() {
  return {Feature::followers,         Feature::friends,        Feature::statuses,
          Feature::listed,            Feature::n_lik,          Feature::n_ret,
          Feature::r_ret,             Feature::r_lik,          Feature::social_reputation,
          Feature::retweet_hindex,    Feature::liked_hindex};
}

struct NormalizationParams {
  double percentile = kDefaultPercentile;
  std::array<ColumnParams, kFeatureCount> columns{};
  std::array<bool, kFeatureCount> clipped{};

  bool operator==(const NormalizationParams&) const = default;
};

inline NormalizationParams fit(std::span<const FeatureVector> vectors,
                               double percentile = kDefaultPercentile,
                               const FeatureSet& unbounded = default_unbounded()) {
  if (vectors.empty()) throw ValidationError("no records");
  check_percentile(percentile);
  NormalizationParams p;
  p.percentile = percentile;
  for (Feature f : unbounded) p.clipped[index_of(f)] = true;
  std::vector<double> column(vectors.size());
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    for (std::size_t i = 0; i < vectors.size(); ++i) column[i] = vectors[i].values[k];
    p.columns[k] = fit_column(column, percentile, p.clipped[k]);
  }
  return p;
}

inline FeatureVector transform(const FeatureVector& v, const NormalizationParams& params) {
  if (v.normalized) throw ValidationError("vector '" + v.user_id + "' is already normalized");
  FeatureVector out = v;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    out.values[k] = transform_value(v.values[k], params.columns[k]);
  }
  out.normalized = true;
  return out;
}

inline std::vector<FeatureVector> transform_all(std::span<const FeatureVector> vs,
                                                const NormalizationParams& params) {
  std::vector<FeatureVector> out;
  out.reserve(vs.size());
  for (const auto& v : vs) out.push_back(transform(v, params));
  return out;
}

// ---------------------------------------------------------------------------
// Correlation with the target

struct FeatureCorrelation {
  Feature feature = Feature::followers;
  double r = 0.0;
  bool degenerate = false;
};

/// Pearson correlation of two equal-length columns; nullopt-like flag when
/// either column is constant.
inline FeatureCorrelation pearson(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  FeatureCorrelation c;
  if (sxx == 0.0 || syy == 0.0) {
    c.degenerate = true;
    return c;
  }
  c.r = std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
  return c;
}

inline std::vector<FeatureCorrelation> correlation_report(std::span<const LabeledInstance> labeled) {
  if (labeled.size() < 2) throw ValidationError("correlation needs at least 2 instances");
  std::vector<double> target(labeled.size());
  bool has0 = false, has1 = false;
  for (std::size_t i = 0; i < labeled.size(); ++i) {
    target[i] = to_int(labeled[i].label);
    (labeled[i].label == Label::trusted ? has1 : has0) = true;
  }
  if (!has0 || !has1) throw ValidationError("correlation needs both classes present");
  std::vector<FeatureCorrelation> out;
  std::vector<double> column(labeled.size());
  for (Feature f : all_features()) {
    for (std::size_t i = 0; i < labeled.size(); ++i) column[i] = labeled[i].features[f];
    auto c = pearson(column, target);
    c.feature = f;
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature mask

enum class MaskMode { paper_default, all, custom };

/// Classifier inputs. paper_default keeps the fifteen candidate features and
/// drops the outlier-prone status count, the URL features (no class
/// separation) and the raw sentiment tallies.
inline FeatureSet feature_mask(MaskMode mode, std::span<const std::string> custom = {}) {
  switch (mode) {
    case MaskMode::all: {
      const auto a = all_features();
      return {a.begin(), a.end()};
    }
    case MaskMode::paper_default:
      return {Feature::followers,        Feature::friends,          Feature::listed,
              Feature::n_ret,            Feature::n_lik,            Feature::r_ret,
              Feature::r_lik,            Feature::r_has,            Feature::r_ori,
              Feature::social_reputation, Feature::retweet_hindex,  Feature::liked_hindex,
              Feature::sentiment_score,  Feature::tweet_credibility, Feature::influence};
    case MaskMode::custom: {
      if (custom.empty()) throw ValidationError("custom feature mask is empty");
      FeatureSet out;
      for (const auto& name : custom) {
        auto f = feature_from_name(name);
        if (!f) throw ValidationError("unknown feature '" + name + "'");
        if (std::find(out.begin(), out.end(), *f) == out.end()) out.push_back(*f);
      }
      return out;
    }
  }
  return {};
}

/// Parses "paper_default", "all" or a comma-separated feature list.
inline FeatureSet parse_mask(std::string_view spec) {
  if (spec.empty() || spec == "paper_default") return feature_mask(MaskMode::paper_default);
  if (spec == "all") return feature_mask(MaskMode::all);
  std::vector<std::string> names;
  std::size_t start = 0;
  while (start <= spec.size()) {
    auto end = spec.find(',', start);
    if (end == std::string_view::npos) end = spec.size();
    if (end > start) names.emplace_back(spec.substr(start, end - start));
    start = end + 1;
  }
  return feature_mask(MaskMode::custom, names);
}

// ---------------------------------------------------------------------------
// JSON

inline void to_json(nlohmann::json& j, const NormalizationParams& p) {
  j = nlohmann::json::object();
  j["percentile"] = p.percentile;
  auto& cols = j["features"] = nlohmann::json::object();
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    const auto& c = p.columns[k];
    cols[std::string(kFeatureNames[k])] = {{"clip_low", c.clip_low}, {"clip_high", c.clip_high},
                                           {"min", c.min},           {"max", c.max},
                                           {"clipped", p.clipped[k]}};
  }
}

inline void from_json(const nlohmann::json& j, NormalizationParams& p) {
  p.percentile = j.at("percentile").get<double>();
  const auto& cols = j.at("features");
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    const auto& c = cols.at(std::string(kFeatureNames[k]));
    p.columns[k] = {c.at("clip_low").get<double>(), c.at("clip_high").get<double>(),
                    c.at("min").get<double>(), c.at("max").get<double>()};
    p.clipped[k] = c.value("clipped", false);
    if (p.columns[k].clip_low > p.columns[k].clip_high || p.columns[k].min > p.columns[k].max) {
      throw ValidationError("inconsistent normalization bounds for " + std::string(kFeatureNames[k]));
    }
  }
}

}  // namespace trustlens::preprocess

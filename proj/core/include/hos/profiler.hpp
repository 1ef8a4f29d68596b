#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "hos/mixture.hpp"

namespace hos {

// One labelled day reduced to its clustering outcome.
struct DayAssignment {
  std::string driver;
  int week = 1;
  int day = 1;
  int cluster = 0;  // day-category id; negative marks noise
  bool legal = true;
};

struct FrequencyTable {
  std::vector<std::string> drivers;         // D row ids
  std::vector<int> day_categories;          // C column ids, ascending
  std::vector<std::vector<double>> values;  // D x C, every row sums to 1
  std::vector<std::string> warnings;        // drivers dropped and why
};

// Per-driver day-category proportions. Illegal days are excluded before
// counting unless drop_illegal_days is false; noise days never count.
// Drivers left without countable days are dropped with a warning. Throws
// std::invalid_argument on empty input, when no driver survives, or when
// fewer than two categories remain.
FrequencyTable build_frequency_table(const std::vector<DayAssignment>& day_assignments,
                                     bool drop_illegal_days = true);

std::string frequency_table_to_csv(const FrequencyTable& table);

// Mixture fit over the table rows. Rows and columns are brought to a
// data-derived canonical order before the expectation-maximization run, so
// shuffling drivers or renaming day categories cannot change the fitted
// components; the returned model is expressed in the table's column order.
MixtureModel fit_profile_mixture(const FrequencyTable& table, int components, std::uint64_t seed,
                                 const MixtureOptions& options = {});

struct DriverProfile {
  std::string driver_id;
  int profile_id = 0;                     // argmax responsibility, lowest on ties
  std::vector<double> responsibilities;   // sums to 1
  std::string interpretation;
};

struct ProfileSummary {
  std::vector<DriverProfile> drivers;        // in table row order
  std::vector<double> proportions;           // per profile id, percent of drivers
  std::vector<std::string> interpretations;  // per profile id
};

// Hard assignment of every table row plus per-profile driver percentages.
// Interpretations come from the mapping; missing ids read "undescribed".
// Throws std::invalid_argument when the model was fitted on a different
// column count.
ProfileSummary assign_profiles(const MixtureModel& model, const FrequencyTable& table,
                               const std::map<int, std::string>& interpretations);

std::string profile_report_json(const ProfileSummary& summary);

struct KDiagnostics {
  int k = 0;
  double bic = 0.0;
  double silhouette = 0.0;  // NaN when undefined (K = 1 or collapsed fit)
};

struct KSelection {
  int recommended = 1;  // bayesian information criterion minimizer
  std::vector<KDiagnostics> rows;
};

// Fits every candidate K (in parallel) and reports the information criterion
// together with the silhouette of the hard assignments. The recommendation is
// advisory; the full table is always returned for review.
KSelection select_k(const FrequencyTable& table, const std::vector<int>& k_range,
                    std::uint64_t seed);

std::string k_selection_to_csv(const KSelection& selection);

}  // namespace hos

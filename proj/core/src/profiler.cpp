#include "hos/profiler.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

#include "hos/clustering.hpp"
#include "hos/rng.hpp"

namespace hos {

namespace {

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

FrequencyTable build_frequency_table(const std::vector<DayAssignment>& day_assignments,
                                     bool drop_illegal_days) {
  if (day_assignments.empty()) {
    throw std::invalid_argument("cannot build a frequency table from no days");
  }

  std::map<std::string, std::map<int, std::size_t>> counts;
  std::map<std::string, std::size_t> seen_days;
  for (const auto& day : day_assignments) {
    ++seen_days[day.driver];
    if (day.cluster < 0) continue;  // noise days carry no day type
    if (drop_illegal_days && !day.legal) continue;
    ++counts[day.driver][day.cluster];
  }

  FrequencyTable table;
  std::map<int, std::size_t> column_of;
  for (const auto& [driver, per_category] : counts) {
    for (const auto& [category, count] : per_category) column_of.emplace(category, 0);
  }
  for (auto& [category, column] : column_of) {
    column = table.day_categories.size();
    table.day_categories.push_back(category);
  }

  for (const auto& [driver, total] : seen_days) {
    auto it = counts.find(driver);
    if (it == counts.end() || it->second.empty()) {
      table.warnings.push_back("driver " + driver + " dropped: no countable days among " +
                               std::to_string(total));
      continue;
    }
    double sum = 0.0;
    std::vector<double> row(table.day_categories.size(), 0.0);
    for (const auto& [category, count] : it->second) {
      row[column_of[category]] = static_cast<double>(count);
      sum += static_cast<double>(count);
    }
    for (double& v : row) v /= sum;
    table.drivers.push_back(driver);
    table.values.push_back(std::move(row));
  }

  if (table.drivers.empty()) {
    throw std::invalid_argument("no driver has a countable day");
  }
  if (table.day_categories.size() < 2) {
    throw std::invalid_argument("frequency table needs at least two day categories");
  }
  return table;
}

std::string frequency_table_to_csv(const FrequencyTable& table) {
  std::ostringstream out;
  out << "driver";
  for (int category : table.day_categories) out << ",category_" << category;
  out << '\n';
  for (std::size_t r = 0; r < table.drivers.size(); ++r) {
    out << table.drivers[r];
    for (double v : table.values[r]) out << ',' << fmt17(v);
    out << '\n';
  }
  return out.str();
}

MixtureModel fit_profile_mixture(const FrequencyTable& table, int components, std::uint64_t seed,
                                 const MixtureOptions& options) {
  const std::size_t dims = table.day_categories.size();
  const std::size_t n = table.values.size();

  // Canonical column order: by column mean, then variance, then position.
  // This makes the fit independent of how day categories happen to be
  // numbered, so renaming them merely permutes the component means.
  std::vector<double> mean(dims, 0.0);
  std::vector<double> variance(dims, 0.0);
  for (const auto& row : table.values) {
    for (std::size_t c = 0; c < dims; ++c) mean[c] += row[c];
  }
  for (double& m : mean) m /= static_cast<double>(n);
  for (const auto& row : table.values) {
    for (std::size_t c = 0; c < dims; ++c) {
      double d = row[c] - mean[c];
      variance[c] += d * d;
    }
  }
  std::vector<std::size_t> col_order(dims);
  std::iota(col_order.begin(), col_order.end(), 0);
  std::sort(col_order.begin(), col_order.end(), [&](std::size_t a, std::size_t b) {
    if (mean[a] != mean[b]) return mean[a] > mean[b];
    if (variance[a] != variance[b]) return variance[a] > variance[b];
    return a < b;
  });

  // Canonical row order: lexicographic over the reordered columns, so the
  // fit is also independent of how the drivers were listed.
  std::vector<std::vector<double>> canon(n, std::vector<double>(dims));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < dims; ++c) canon[r][c] = table.values[r][col_order[c]];
  }
  std::sort(canon.begin(), canon.end());

  MixtureModel fitted = fit_mixture(canon, components, seed, options);

  // Express the model back in the table's own column order.
  MixtureModel out = fitted;
  for (int k = 0; k < fitted.components; ++k) {
    auto ks = static_cast<std::size_t>(k);
    for (std::size_t c = 0; c < dims; ++c) {
      out.means[ks][col_order[c]] = fitted.means[ks][c];
      for (std::size_t c2 = 0; c2 < dims; ++c2) {
        out.covariances[ks][col_order[c] * dims + col_order[c2]] =
            fitted.covariances[ks][c * dims + c2];
      }
    }
  }
  return out;
}

ProfileSummary assign_profiles(const MixtureModel& model, const FrequencyTable& table,
                               const std::map<int, std::string>& interpretations) {
  if (model.dims != table.day_categories.size()) {
    throw std::invalid_argument("model was fitted on " + std::to_string(model.dims) +
                                " day categories, table has " +
                                std::to_string(table.day_categories.size()));
  }
  auto resp = responsibilities(model, table.values);

  ProfileSummary summary;
  summary.interpretations.resize(static_cast<std::size_t>(model.components));
  for (int k = 0; k < model.components; ++k) {
    auto it = interpretations.find(k);
    summary.interpretations[static_cast<std::size_t>(k)] =
        it != interpretations.end() ? it->second : "undescribed";
  }

  std::vector<std::size_t> tally(static_cast<std::size_t>(model.components), 0);
  for (std::size_t r = 0; r < table.drivers.size(); ++r) {
    DriverProfile profile;
    profile.driver_id = table.drivers[r];
    profile.responsibilities = resp[r];
    int arg = 0;
    for (int k = 1; k < model.components; ++k) {
      if (resp[r][static_cast<std::size_t>(k)] > resp[r][static_cast<std::size_t>(arg)]) arg = k;
    }
    profile.profile_id = arg;
    profile.interpretation = summary.interpretations[static_cast<std::size_t>(arg)];
    ++tally[static_cast<std::size_t>(arg)];
    summary.drivers.push_back(std::move(profile));
  }
  summary.proportions.resize(tally.size());
  for (std::size_t k = 0; k < tally.size(); ++k) {
    summary.proportions[k] =
        100.0 * static_cast<double>(tally[k]) / static_cast<double>(table.drivers.size());
  }
  return summary;
}

std::string profile_report_json(const ProfileSummary& summary) {
  nlohmann::json profiles = nlohmann::json::array();
  for (std::size_t k = 0; k < summary.proportions.size(); ++k) {
    profiles.push_back({{"id", k},
                        {"interpretation", summary.interpretations[k]},
                        {"proportion", summary.proportions[k]}});
  }
  nlohmann::json drivers = nlohmann::json::array();
  for (const auto& profile : summary.drivers) {
    drivers.push_back({{"id", profile.driver_id},
                       {"profile", profile.profile_id},
                       {"responsibilities", profile.responsibilities}});
  }
  nlohmann::json doc{{"profiles", profiles}, {"drivers", drivers}};
  return doc.dump(2) + "\n";
}

KSelection select_k(const FrequencyTable& table, const std::vector<int>& k_range,
                    std::uint64_t seed) {
  struct Cell {
    bool ok = false;
    KDiagnostics diag;
  };
  auto evaluate = [&table, seed](int k) {
    Cell cell;
    cell.diag.k = k;
    cell.diag.silhouette = std::numeric_limits<double>::quiet_NaN();
    try {
      MixtureModel model =
          fit_profile_mixture(table, k, derive_seed(seed, static_cast<std::uint64_t>(k)));
      cell.diag.bic = bic(model, table.values);
      cell.ok = true;
      if (k >= 2) {
        auto resp = responsibilities(model, table.values);
        ClusterAssignment hard;
        hard.labels.resize(table.values.size());
        for (std::size_t r = 0; r < resp.size(); ++r) {
          int arg = 0;
          for (int c = 1; c < model.components; ++c) {
            if (resp[r][static_cast<std::size_t>(c)] > resp[r][static_cast<std::size_t>(arg)]) {
              arg = c;
            }
          }
          hard.labels[r] = arg;
        }
        try {
          cell.diag.silhouette = score(table.values, hard).silhouette;
        } catch (const std::invalid_argument&) {
          // Collapsed to one occupied component: silhouette stays undefined.
        }
      }
    } catch (const std::invalid_argument&) {
      cell.ok = false;  // K out of range for this table: row skipped
    }
    return cell;
  };

  std::vector<std::future<Cell>> futures;
  futures.reserve(k_range.size());
  for (int k : k_range) {
    futures.push_back(std::async(std::launch::async, evaluate, k));
  }

  KSelection selection;
  for (auto& f : futures) {
    Cell cell = f.get();
    if (cell.ok) selection.rows.push_back(cell.diag);
  }
  selection.recommended = 1;
  double best = std::numeric_limits<double>::infinity();
  for (const auto& row : selection.rows) {
    if (row.bic < best || (row.bic == best && row.k < selection.recommended)) {
      best = row.bic;
      selection.recommended = row.k;
    }
  }
  return selection;
}

std::string k_selection_to_csv(const KSelection& selection) {
  std::ostringstream out;
  out << "k,bic,silhouette,recommended\n";
  for (const auto& row : selection.rows) {
    out << row.k << ',' << fmt17(row.bic) << ',' << fmt17(row.silhouette) << ','
        << (row.k == selection.recommended ? 1 : 0) << '\n';
  }
  return out.str();
}

}  // namespace hos

#include <ncut/datasets.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <stdexcept>

namespace ncut {

namespace {

void validate_record(const AttritionRecord& r) {
  if (r.income_bracket < 0 ||
      r.income_bracket >= static_cast<int>(income_bracket_names().size()))
    throw std::invalid_argument("unknown income bracket ordinal");
  if (r.marital < 0 || r.marital > 2)
    throw std::invalid_argument("marital status must be 0, 1, or 2");
  if (r.num_children < 0 || r.other_dependents < 0)
    throw std::invalid_argument("counts must be nonnegative");
  if ((r.num_children == 0) != (r.youngest_age == -1))
    throw std::invalid_argument("inconsistent child fields");
  if (r.num_children > 0 && r.youngest_age < 0)
    throw std::invalid_argument("inconsistent child fields");
  if (r.dissatisfaction < 0 || r.dissatisfaction > 3)
    throw std::invalid_argument("dissatisfaction must lie in [0, 3]");
}

bool in_subgroup(const AttritionRecord& r, Subgroup subgroup) {
  switch (subgroup) {
    case Subgroup::All: return true;
    case Subgroup::Unmarried: return r.marital == 0;
    case Subgroup::Married: return r.marital == 1;
    case Subgroup::Childless: return r.num_children == 0;
    case Subgroup::WithChildren: return r.num_children > 0;
  }
  return true;
}

// Apportions `total` across the reference status counts, largest share first.
std::array<int, 3> apportion_statuses(int total, const std::array<int, 3>& ref) {
  double ref_total = ref[0] + ref[1] + ref[2];
  std::array<int, 3> out{};
  out[0] = static_cast<int>(std::llround(total * ref[0] / ref_total));
  out[1] = static_cast<int>(std::llround(total * ref[1] / ref_total));
  out[2] = total - out[0] - out[1];
  while (out[2] < 0) {
    if (out[1] > 0)
      --out[1];
    else
      --out[0];
    ++out[2];
  }
  return out;
}

constexpr int kHomogeneousIncome = 5;  // the 60000-74999 bracket

bool homogeneous_profile(const AttritionRecord& r) {
  return r.marital == 0 && r.num_children == 0 && r.other_dependents == 0 &&
         r.dissatisfaction == 0 && r.income_bracket == kHomogeneousIncome;
}

}  // namespace

Subgroup subgroup_from_string(const std::string& name) {
  if (name == "all") return Subgroup::All;
  if (name == "unmarried") return Subgroup::Unmarried;
  if (name == "married") return Subgroup::Married;
  if (name == "childless") return Subgroup::Childless;
  if (name == "with-children") return Subgroup::WithChildren;
  throw std::invalid_argument("unknown subgroup '" + name + "'");
}

Dataset encode_attrition(const std::vector<AttritionRecord>& records,
                         const EncodeOptions& options) {
  for (const auto& r : records) validate_record(r);

  std::vector<const AttritionRecord*> kept;
  for (const auto& r : records) {
    if (!in_subgroup(r, options.subgroup)) continue;
    if (options.drop_movers && r.status == Status::Mover) continue;
    kept.push_back(&r);
  }

  int d = options.include_dummy ? 7 : 6;
  Dataset out;
  out.x.resize(static_cast<int>(kept.size()), d);
  out.labels.reserve(kept.size());
  out.columns = {"income",     "marital",        "children",
                 "youngest_age", "dependents",   "dissatisfaction"};
  if (options.include_dummy) out.columns.push_back("dummy");

  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    const auto& r = *kept[i];
    int row = static_cast<int>(i);
    out.x(row, 0) = r.income_bracket;
    out.x(row, 1) = r.marital;
    out.x(row, 2) = r.num_children;
    out.x(row, 3) = r.youngest_age;
    out.x(row, 4) = r.other_dependents;
    out.x(row, 5) = r.dissatisfaction;
    if (options.include_dummy) out.x(row, 6) = unit(rng);
    out.labels.push_back(static_cast<int>(r.status));
  }
  return out;
}

std::vector<AttritionRecord> gen_attrition_standin(int n, std::uint64_t seed) {
  if (n < 10) throw std::invalid_argument("stand-in cohort needs n >= 10");

  // Reference cohort structure: a 197-strong homogeneous subgroup inside a
  // 4528-respondent survey, with per-group stayer/mover/leaver frequencies.
  int homog = static_cast<int>(std::llround(n * 197.0 / 4528.0));
  homog = std::max(1, std::min(homog, n - 1));
  int rest = n - homog;
  auto homog_statuses = apportion_statuses(homog, {92, 24, 81});
  auto rest_statuses = apportion_statuses(rest, {1666, 1016, 1649});

  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> income(0, 7);
  std::uniform_int_distribution<int> marital(0, 2);
  std::uniform_int_distribution<int> children(0, 4);
  std::uniform_int_distribution<int> child_age(0, 38);
  std::uniform_int_distribution<int> dependents(0, 3);
  std::uniform_int_distribution<int> unhappiness(0, 3);

  std::vector<AttritionRecord> out;
  out.reserve(n);
  auto push_group = [&](const std::array<int, 3>& statuses, bool homogeneous) {
    for (int s = 0; s < 3; ++s) {
      for (int i = 0; i < statuses[s]; ++i) {
        AttritionRecord r;
        if (homogeneous) {
          r.income_bracket = kHomogeneousIncome;
          r.marital = 0;
          r.num_children = 0;
          r.youngest_age = -1;
          r.other_dependents = 0;
          r.dissatisfaction = 0;
        } else {
          do {
            r.income_bracket = income(rng);
            r.marital = marital(rng);
            r.num_children = children(rng);
            r.youngest_age = r.num_children == 0 ? -1 : child_age(rng);
            r.other_dependents = dependents(rng);
            r.dissatisfaction = unhappiness(rng);
          } while (homogeneous_profile(r));
        }
        r.status = static_cast<Status>(s);
        out.push_back(r);
      }
    }
  };
  push_group(homog_statuses, true);
  push_group(rest_statuses, false);

  for (int i = n - 1; i > 0; --i) {
    std::uniform_int_distribution<int> pick(0, i);
    std::swap(out[i], out[pick(rng)]);
  }
  return out;
}

int income_bracket_from_string(const std::string& name) {
  const auto& names = income_bracket_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<int>(i);
  throw std::invalid_argument("unknown income bracket '" + name + "'");
}

const std::vector<std::string>& income_bracket_names() {
  static const std::vector<std::string> names = {
      "under-20000",  "20000-29999", "30000-39999", "40000-49999",
      "50000-59999",  "60000-74999", "75000-99999", "100000-plus"};
  return names;
}

}  // namespace ncut

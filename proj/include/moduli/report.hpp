#pragma once

#include "moduli/space.hpp"

#include <optional>
#include <string>
#include <vector>

namespace moduli {

struct ReportRow {
  std::vector<std::string> cells;
  std::string verdict;  // PASS, FAIL, ERRATUM, INFO, or empty
  std::string cite;
};

struct ReportSection {
  std::string title;
  std::string cite;  // default provenance for rows without their own
  std::vector<std::string> header;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;
};

struct Report {
  std::string title;
  std::vector<ReportSection> sections;

  std::size_t count(const std::string& verdict) const;
  // 1 when any row failed; errata alone do not fail a run
  int exit_code() const;
  std::string markdown() const;
  std::string json() const;
};

Report keel_report(int n, bool relations);
Report invariants_report(Workspace& ws, const std::string& tag);
Report verify_report(Workspace& ws, const std::string& tag, const std::string& presentation);
// map: fR fplus fminus fM2 (Keel classes), piR piplus piminus (space classes), h0p h0alpha (M0,5 divisors)
Report push_report(Workspace& ws, const std::string& map, const std::string& expr);
Report intersections_report(Workspace& ws, const std::string& tag);
Report lambda_report(Workspace& ws, const std::string& tag);
Report strata_report(Workspace& ws, const std::string& tag, const std::optional<std::string>& tree);
Report theta_report(int g);
Report full_report(Workspace& ws);

}  // namespace moduli

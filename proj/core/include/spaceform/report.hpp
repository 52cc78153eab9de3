#pragma once

#include <string>

#include "spaceform/hcc.hpp"

namespace spaceform {

enum class ReportSection { validation, invariants, certificate, hcc, full };

/// Human-readable report.
std::string report_text(const FullReport& rep, ReportSection section = ReportSection::full);

/// Machine report: canonical field order, big integers and rationals as
/// strings ("p/q"), byte-identical under parse/re-serialize round trips.
std::string report_json(const FullReport& rep, ReportSection section = ReportSection::full);

/// One JSON array document of full reports (same round-trip guarantee).
std::string reports_json(const std::vector<FullReport>& reps);

/// Pass/fail of the checks the section covers (drives CLI exit codes).
bool section_pass(const FullReport& rep, ReportSection section);

}  // namespace spaceform

#pragma once

#include <string>

#include "cohomotopy/cohomotopy.hpp"

namespace cohomotopy {

inline constexpr int kReportSchema = 1;

struct ReportMeta {
    std::string input;
    std::string digest;   // "sha256:<hex>" of the input bytes
    bool timing = true;
};

std::string tool_version();

std::string render_json(const CohomotopyReport& r, const ReportMeta& meta);
std::string render_text(const CohomotopyReport& r, const ReportMeta& meta);

std::string render_validation_json(const FacetComplex& k, const ValidationReport& v, const ReportMeta& meta);
std::string render_validation_text(const FacetComplex& k, const ValidationReport& v);

}  // namespace cohomotopy

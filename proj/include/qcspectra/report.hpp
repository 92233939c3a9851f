#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>

#include "json.hpp"
#include "qcspectra/bounds.hpp"
#include "qcspectra/linalg.hpp"
#include "qcspectra/nested.hpp"

namespace qcspectra {

// Double formatted with four digits after the decimal point.
std::string format_fixed(double v);

nlohmann::json spectrum_to_json(const Spectrum& spectrum);

nlohmann::json spectrum_report_json(const Spectrum& spectrum, const std::string& method,
                                    std::size_t n, double elapsed_ms);
void write_spectrum_report_text(std::ostream& out, const Spectrum& spectrum,
                                const std::string& method, std::size_t n, double elapsed_ms);

nlohmann::json equality_report_json(const EqualityReport& rep);
void write_equality_report_text(std::ostream& out, const EqualityReport& rep);

nlohmann::json bound_report_json(const BoundReport& rep,
                                 const std::optional<EqualityReport>& equality);
void write_bound_report_text(std::ostream& out, const BoundReport& rep,
                             const std::optional<EqualityReport>& equality);

nlohmann::json cone_check_json(const ConeCheck& check);

}  // namespace qcspectra

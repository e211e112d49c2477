#pragma once

#include <string>

#include <json.hpp>

#include "lulc/eval.hpp"

namespace lulc {

nlohmann::json to_json(const MetricsReport& r);
nlohmann::json to_json(const ConfusionMatrix& cm);
nlohmann::json to_json(const AgreementMatrix& m);
nlohmann::json to_json(const AreaTable& t);

/// Aligned plain-text tables for terminals.
std::string to_text(const MetricsReport& r);
std::string to_text(const ConfusionMatrix& cm);
std::string to_text(const AgreementMatrix& m);
std::string to_text(const AreaTable& t);

/// CSV with a header row. Confusion rows/columns are labeled by class name,
/// the first prediction column being "unpredicted"; undefined agreement cells
/// are left empty.
std::string to_csv(const MetricsReport& r);
std::string to_csv(const ConfusionMatrix& cm);
std::string to_csv(const AgreementMatrix& m);
std::string to_csv(const AreaTable& t);

}  // namespace lulc

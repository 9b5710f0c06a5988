#pragma once

#include <string>

#include <json.hpp>

namespace geoprior {

inline constexpr int kReportSchemaVersion = 1;

// Reports carry 6 significant digits; internal math stays full double.
double round_sig(double value, int digits = 6);
std::string format_number(double value, int digits = 6);

}  // namespace geoprior

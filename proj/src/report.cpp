#include "geoprior/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace geoprior {

std::string format_number(double value, int digits) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.*g", digits, value);
    return buf;
}

double round_sig(double value, int digits) {
    if (!std::isfinite(value)) return value;
    return std::strtod(format_number(value, digits).c_str(), nullptr);
}

}  // namespace geoprior

#include "jmfar/types.hpp"

#include <algorithm>
#include <cctype>

#include "jmfar/errors.hpp"

namespace jmfar {

const char* to_string(Activity a) {
    switch (a) {
        case Activity::Grazing: return "grazing";
        case Activity::Rumination: return "rumination";
        case Activity::Other: return "other";
    }
    return "other";
}

Activity activity_from_string(const std::string& s) {
    std::string lower(s);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "grazing") return Activity::Grazing;
    if (lower == "rumination") return Activity::Rumination;
    if (lower == "other") return Activity::Other;
    throw InvalidInput("unknown activity label: " + s);
}

}  // namespace jmfar

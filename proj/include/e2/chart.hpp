#pragma once
#include "e2/scenarios.hpp"

#include <string>

namespace e2 {

// chart coordinates are (stem, s) = (t - s, s), matching the figures;
// storage stays (s, t)
std::string render_ascii(const Page& p);
std::string render_svg(const Page& p, const std::vector<InjectedDifferential>& diffs);
std::string render_json(const Page& p);  // byte-stable: entries sorted by (s, t)

Page parse_page_json(const std::string& text);

std::string render_chart(const Page& p, const std::vector<InjectedDifferential>& diffs,
                         const std::string& format);

}  // namespace e2

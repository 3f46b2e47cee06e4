#pragma once

#include <string>

#include "json.hpp"
#include "nps/classify.hpp"

namespace nps {

// (p/q → [child, child, ...]) with leaves as "leaf" and braces as {a, b};
// children are written in canonical order
std::string to_text(const Diagram& d);
// in-place: leaves, then splits by (label, text), then braces by text
void canonical_order(DiagramNode& n);
std::string to_text(const DiagramNode& n);

// accepts "→" or "->"; leaves outside braces are real.
// throws SyntaxError with a 1-based column
Diagram parse_diagram(const std::string& text);

nlohmann::json to_json(const Diagram& d);
Diagram diagram_from_json(const nlohmann::json& j);
nlohmann::json to_json(const NewtonPolygon& p);
nlohmann::json to_json(const std::vector<PuiseuxCycle>& cycles, int digits = 20);
nlohmann::json to_json(const ClassificationResult& r);

std::string to_tikz(const Diagram& d);
std::string to_tikz(const NewtonPolygon& p);

}  // namespace nps

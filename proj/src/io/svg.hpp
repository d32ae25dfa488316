#pragma once

#include <string>

#include <json.hpp>

namespace hrlab {

// Deterministic SVG renderers for emitted payloads. Byte-identical output for
// identical payload + style version.
std::string svg_dispersion(const nlohmann::json& massshell_payload);
std::string svg_lightcone(const nlohmann::json& lightcone_payload);
std::string svg_packet(const nlohmann::json& scatter_payload);
std::string svg_overlap(const nlohmann::json& scatter_payload);

// kind in {dispersion, lightcone, packet, overlap}; throws DomainError on a
// kind/payload mismatch.
std::string render_svg(const std::string& kind, const nlohmann::json& payload);

}  // namespace hrlab

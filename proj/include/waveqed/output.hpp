#pragma once

#include <string>
#include <vector>

#include "waveqed/runconfig.hpp"
#include "waveqed/validation.hpp"

namespace waveqed {

/// Shortest-exact decimal rendering of a double (17 significant digits,
/// '.'-separated, locale independent) so CSV output diffs byte-stable.
std::string format_double(double v);

/// Resolved-config echo plus tool identification embedded in every file.
nlohmann::ordered_json output_metadata(const RunConfig& cfg);

std::string spectrum_csv(const RunConfig& cfg, const std::vector<SpectrumRow>& rows);
nlohmann::ordered_json spectrum_json(const RunConfig& cfg,
                                     const std::vector<SpectrumRow>& rows);

std::string phase_map_csv(const RunConfig& cfg, const PhaseMapResult& map);
nlohmann::ordered_json phase_map_json(const RunConfig& cfg, const PhaseMapResult& map);

std::string modes_csv(const RunConfig& cfg, const std::vector<Mode>& modes);
nlohmann::ordered_json modes_json(const RunConfig& cfg, const std::vector<Mode>& modes);

nlohmann::ordered_json dressed_json(const RunConfig& cfg, const DressedStates& d);

nlohmann::ordered_json validation_json(const RunConfig& cfg,
                                       const std::vector<validation::CheckResult>& results);

void write_text_file(const std::string& path, const std::string& content);

} // namespace waveqed

#ifndef LACUNA_JSON_IO_HPP
#define LACUNA_JSON_IO_HPP

#include <json.hpp>

#include "lacuna/equivalence.hpp"
#include "lacuna/extension.hpp"
#include "lacuna/selection.hpp"
#include "lacuna/step_function.hpp"
#include "lacuna/systems.hpp"

namespace lacuna {

// Stable key order keeps reports byte-identical across runs.
using json = nlohmann::ordered_json;

json step_function_to_json(const StepFunction& f);
StepFunction step_function_from_json(const json& j);

json step_set_to_json(const std::vector<StepFunction>& fs);
std::vector<StepFunction> step_set_from_json(const json& j);

// {"kind": "...", "params": {...}, "D": number-or-string}
json system_to_json(const SystemSpec& sys);
SystemSpec system_from_json(const json& j);

json certificate_to_json(const SelectionCertificate& cert);
SelectionCertificate certificate_from_json(const json& j);

json riesz_certificate_to_json(const RieszCertificate& cert);

json equivalence_report_to_json(const EquivalenceReport& rep);

json moment_band_to_json(const MomentBand& band);

}  // namespace lacuna

#endif

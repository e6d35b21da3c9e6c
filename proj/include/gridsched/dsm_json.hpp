// JSON wire format for DSM instances:
//   {horizon, slot_hours, prices[], capacity[],
//    appliances[{id, category, power_kw, duration, preferred_start, window:[lo,hi]}]}
// Field names are fixed and unknown fields are rejected.

#ifndef GRIDSCHED_DSM_JSON_HPP
#define GRIDSCHED_DSM_JSON_HPP

#include <string>

#include "gridsched/dsm.hpp"

namespace gridsched {

std::string dsm_instance_to_json(const DsmInstance& instance, int indent = 2);
DsmInstance dsm_instance_from_json(const std::string& text);

}  // namespace gridsched

#endif

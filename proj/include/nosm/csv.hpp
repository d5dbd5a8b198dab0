/**
 * @file csv.hpp
 * @brief CSV emission for traces, events and metrics. The scalar schema is
 *        `t,e1,e2,sigma,u,d,mode`; UAV traces add per-channel columns; events
 *        go to a `kind,t` sidecar.
 */

#pragma once

#include <string>

#include "nosm/loop.hpp"
#include "nosm/sim.hpp"

namespace nosm {

void write_trace_csv(const std::string& path, const Trace& trace);
void write_events_csv(const std::string& path, const std::vector<SimEvent>& events);
void write_uav_trace_csv(const std::string& path, const UavRunResult& run);
std::string metrics_summary(const MetricsReport& m);

}  // namespace nosm

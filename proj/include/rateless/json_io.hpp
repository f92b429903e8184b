#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "rateless/sim.hpp"

namespace rateless {

using json = nlohmann::json;

// Channel documents: {"type":"dmc","forward":[[...]]},
// {"type":"awgn","signal_power":..,"noise_variance":..} or the shorthands
// {"type":"bsc","p":..}, {"type":"bec","delta":..}, {"type":"z","p":..},
// {"type":"noiseless","size":..}.
ChannelVariant parse_channel(const json& doc);
json channel_to_json(const ChannelVariant& channel);

// Source documents: {"type":"uniform","M":..}, {"type":"weighted","probs":[..]},
// {"type":"zipf","M":..,"exponent":..}, {"type":"iid","gamma":[..],"L":..},
// {"type":"pair","joint":[[..]],"block_len":..}.
SourceVariant parse_source(const json& doc);
json source_to_json(const SourceVariant& source);

ExperimentConfig parse_experiment(const json& doc);
json experiment_to_json(const ExperimentConfig& cfg);

json report_to_json(const Report& report, const ExperimentConfig& cfg);

// Flat CSV with header trial,w,w_hat,T,error,tie,truncated.
std::string trials_to_csv(const std::vector<TrialRecord>& records);

// Locale-independent decimal formatting (shortest round-trip).
std::string format_double(double v);

// Evaluates a closed-form bound over a grid. Spec:
// {"formula":"rate_known","fixed":{...},
//  "sweep":{"variable":"log2_m","from":8,"to":64,"points":57,"scale":"linear"}}
// Multi-column form uses "formulas":[...]; adding "simulate":{...experiment
// fields...} appends simulated rate/error/mean_T columns per grid point.
std::string run_sweep_table(const json& spec);

// Single-formula front end of the same evaluator ("bounds" subcommand).
std::string run_bounds_table(const json& spec);

// Names accepted by the sweep evaluator.
std::vector<std::string> sweep_formula_names();

}  // namespace rateless

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "rateless/json_io.hpp"

using namespace rateless;

TEST_CASE("channel documents parse and reject bad input") {
  const auto bsc = parse_channel(json::parse(R"({"type":"bsc","p":0.25})"));
  CHECK(std::get<Dmc>(bsc).forward(0, 1) == doctest::Approx(0.25));
  const auto bec = parse_channel(json::parse(R"({"type":"bec","delta":0.5})"));
  CHECK(std::get<Dmc>(bec).output_size() == 3);
  const auto z = parse_channel(json::parse(R"({"type":"z","p":0.5})"));
  CHECK(std::get<Dmc>(z).forward(0, 0) == doctest::Approx(1.0));
  const auto dmc = parse_channel(json::parse(R"({"type":"dmc","forward":[[0.9,0.1],[0.2,0.8]]})"));
  CHECK(std::get<Dmc>(dmc).input_size() == 2);
  const auto awgn =
      parse_channel(json::parse(R"({"type":"awgn","signal_power":2.0,"noise_variance":0.5})"));
  CHECK(std::get<AwgnChannel>(awgn).capacity_bits() == doctest::Approx(0.5 * std::log2(5.0)));

  CHECK_THROWS_AS(parse_channel(json::parse(R"({"type":"pigeon"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_channel(json::parse(R"({"type":"bsc"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_channel(json::parse(R"({"type":"dmc","forward":[[0.5,0.6],[0.5,0.4]]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_channel(json::parse("[1,2]")), std::invalid_argument);
}

TEST_CASE("source documents parse") {
  CHECK(std::get<MessageSource>(parse_source(json::parse(R"({"type":"uniform","M":16})")))
            .message_count() == 16);
  CHECK(std::get<MessageSource>(parse_source(json::parse(R"({"type":"weighted","probs":[0.5,0.5]})")))
            .entropy_bits() == doctest::Approx(1.0));
  CHECK(std::get<MessageSource>(parse_source(json::parse(R"({"type":"zipf","M":8,"exponent":1.0})")))
            .message_count() == 8);
  CHECK(std::get<IidSymbolSource>(parse_source(json::parse(R"({"type":"iid","gamma":[0.3,0.7],"L":4})")))
            .message_count() == 16);
  CHECK(std::get<CorrelatedPairSource>(
            parse_source(json::parse(R"({"type":"pair","joint":[[0.4,0.1],[0.1,0.4]],"block_len":3})")))
            .w1_count() == 8);
  CHECK_THROWS_AS(parse_source(json::parse(R"({"type":"prose"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_source(json::parse(R"({"type":"weighted","probs":[0.5,0.4]})")),
                  std::invalid_argument);
}

TEST_CASE("experiment configs round-trip through the canonical echo") {
  const json doc = json::parse(R"({
    "scheme":"universal",
    "channel":{"type":"bsc","p":0.25},
    "source":{"type":"uniform","M":64},
    "epsilon":0.015625,
    "trials":100,
    "seed":17,
    "codebook":{"seed":5},
    "feedback_period":2,
    "randomize_alpha":0.1,
    "max_symbols":5000
  })");
  const ExperimentConfig cfg = parse_experiment(doc);
  CHECK(cfg.scheme == Scheme::universal);
  CHECK(cfg.codebook_seed == 5);
  CHECK(cfg.feedback_period == 2);
  const json echo = experiment_to_json(cfg);
  const ExperimentConfig cfg2 = parse_experiment(echo);
  CHECK(experiment_to_json(cfg2).dump() == echo.dump());

  // the optional codebook M field must agree with the source
  CHECK_NOTHROW(parse_experiment(json::parse(R"({"scheme":"known",
    "channel":{"type":"bsc","p":0.1},"source":{"type":"uniform","M":64},
    "codebook":{"seed":3,"M":64}})")));
  CHECK_THROWS_AS(parse_experiment(json::parse(R"({"scheme":"known",
    "channel":{"type":"bsc","p":0.1},"source":{"type":"uniform","M":64},
    "codebook":{"seed":3,"M":32}})")),
                  std::invalid_argument);

  CHECK_THROWS_AS(parse_experiment(json::parse(R"({"scheme":"known"})")), std::invalid_argument);
  CHECK_THROWS_AS(parse_experiment(json::parse(R"({"scheme":"???","channel":{"type":"bsc","p":0.1},
    "source":{"type":"uniform","M":4}})")),
                  std::invalid_argument);
}

TEST_CASE("trial records dump to the documented csv schema") {
  std::vector<TrialRecord> records(2);
  records[0].trial_index = 0;
  records[0].w = 3;
  records[0].w_hat = 3;
  records[0].stopping_time = 17;
  records[1].trial_index = 1;
  records[1].w = 2;
  records[1].w_hat = kNoDecision;
  records[1].stopping_time = 100;
  records[1].error = true;
  records[1].truncated = true;
  const std::string csv = trials_to_csv(records);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "trial,w,w_hat,T,error,tie,truncated");
  std::getline(in, line);
  CHECK(line == "0,3,3,17,0,0,0");
  std::getline(in, line);
  CHECK(line == "1,2,-1,100,1,0,1");
}

TEST_CASE("bounds table evaluates a formula over a grid") {
  const json spec = json::parse(R"({
    "formula":"rate_known",
    "fixed":{"capacity":1.0,"epsilon":0.0009765625},
    "sweep":{"variable":"log2_m","from":20,"to":60,"points":2,"scale":"linear"}
  })");
  const std::string csv = run_bounds_table(spec);
  std::istringstream in(csv);
  std::string header, row1, row2;
  std::getline(in, header);
  std::getline(in, row1);
  std::getline(in, row2);
  CHECK(header == "log2_m,rate_known");
  CHECK(row1.substr(0, 3) == "20,");
  CHECK(row1.find("0.6451612903") != std::string::npos);  // 20/31
  CHECK(row2.find("0.8450704225") != std::string::npos);  // 60/71
}

TEST_CASE("sweep table compares universal and known rates") {
  const json spec = json::parse(R"({
    "formulas":["rate_known","rate_universal"],
    "fixed":{"capacity":0.5,"epsilon":0.01,"x_size":2,"y_size":2},
    "sweep":{"variable":"log2_m","from":8,"to":64,"points":15,"scale":"linear"}
  })");
  const std::string csv = run_sweep_table(spec);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "log2_m,rate_known,rate_universal");
  double prev_gap = 1e300;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    const auto c1 = line.find(','), c2 = line.rfind(',');
    const double log2_m = std::stod(line.substr(0, c1));
    const double known = std::stod(line.substr(c1 + 1, c2 - c1 - 1));
    const double universal = std::stod(line.substr(c2 + 1));
    CHECK(known > universal);
    const double gap = known - universal;
    // the penalty shrinks as M grows once past the smallest message sets
    if (log2_m >= 16) CHECK(gap < prev_gap);
    prev_gap = gap;
  }
  CHECK(rows == 15);

  // empty grid: header only
  json empty = spec;
  empty["sweep"]["points"] = 0;
  const std::string empty_csv = run_sweep_table(empty);
  CHECK(empty_csv == "log2_m,rate_known,rate_universal\n");

  CHECK_THROWS_AS(run_sweep_table(json::parse(R"({"formulas":["nope"],
    "sweep":{"from":1,"to":2,"points":2}})")),
                  std::invalid_argument);
}

TEST_CASE("simulated sweep rows achieve the known-rate bound") {
  const json spec = json::parse(R"({
    "formulas":["rate_known"],
    "fixed":{"capacity":0.18872187554086717,"epsilon":0.0625},
    "sweep":{"variable":"log2_m","from":4,"to":8,"points":3,"scale":"linear"},
    "simulate":{"scheme":"known","channel":{"type":"bsc","p":0.25},
                "epsilon":0.0625,"trials":500,"seed":12}
  })");
  const std::string csv = run_sweep_table(spec);
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  CHECK(line == "log2_m,rate_known,sim_rate,sim_error_rate,sim_mean_t");
  while (std::getline(in, line)) {
    std::vector<double> cols;
    std::istringstream row(line);
    std::string cell;
    while (std::getline(row, cell, ',')) cols.push_back(std::stod(cell));
    REQUIRE(cols.size() == 5);
    CHECK(cols[2] >= cols[1] - 0.01);  // simulated rate meets the achievable bound
    CHECK(cols[3] <= 0.1);
  }
}

TEST_CASE("report json is stable and complete") {
  ExperimentConfig cfg;
  cfg.scheme = Scheme::known;
  cfg.channel = Dmc::bsc(0.25);
  cfg.source = MessageSource::uniform(8);
  cfg.epsilon = 0.125;
  cfg.trials = 50;
  cfg.seed = 3;
  const Report rep = Experiment(cfg).run();
  const json doc = report_to_json(rep, cfg);
  CHECK(doc.contains("config"));
  CHECK(doc.contains("error_ci95"));
  CHECK(doc["trials"] == 50);
  CHECK(doc["bounds"].contains("rate_known"));
  CHECK(doc.dump() == report_to_json(Experiment(cfg).run(), cfg).dump());
}

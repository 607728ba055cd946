#include "reallocation/cli.hpp"

#include <CLI11.hpp>

#include "reallocation/error.hpp"
#include "reallocation/io.hpp"
#include "reallocation/oracle.hpp"

namespace reallocation {
namespace {

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidDocument:
    case ErrorCode::kMissingField:
    case ErrorCode::kDuplicateId:
    case ErrorCode::kUnknownWarehouse:
    case ErrorCode::kUnknownProduct:
    case ErrorCode::kShapeMismatch:
      return kExitDocument;
    case ErrorCode::kInfeasible:
    case ErrorCode::kStuck:
    case ErrorCode::kBudgetInfeasible:
      return kExitNoSolution;
    default:
      return kExitPrecondition;
  }
}

RoundingMode parse_mode(const std::string& text) {
  if (text == "two-sided") return RoundingMode::kTwoSided;
  if (text == "gap-out") return RoundingMode::kGapOut;
  if (text == "gap-in") return RoundingMode::kGapIn;
  throw Error(ErrorCode::kPreconditionFailed, "unknown mode '" + text + "'");
}

struct Options {
  std::string input;
  std::string output;
  std::string schedule;
  std::string augment;
  std::string params;
  std::string reduction;
  std::vector<std::string> algorithms;
  std::string mode = "two-sided";
  std::optional<Time> horizon;
  std::uint64_t budget = 20'000'000;
  std::uint64_t seed = 1;
};

class Runner {
 public:
  Runner(const Options& opt, std::ostream& out) : opt_(opt), out_(out) {}

  void emit(const Json& doc) {
    if (opt_.output.empty()) {
      out_ << doc.dump(2) << '\n';
    } else {
      save_json_file(opt_.output, doc);
    }
  }

  SolveOptions solve_options() const {
    SolveOptions options;
    options.horizon = opt_.horizon;
    options.budget = opt_.budget;
    options.mode = parse_mode(opt_.mode);
    return options;
  }

  int solve() {
    const Instance inst = instance_from_json(load_json_file(opt_.input));
    const std::string algorithm = opt_.algorithms.empty() ? "oracle" : opt_.algorithms.front();
    if (!is_known_algorithm(algorithm)) {
      throw Error(ErrorCode::kPreconditionFailed, "unknown algorithm '" + algorithm + "'");
    }
    emit(solve_result_to_json(inst, solve_with(inst, algorithm, solve_options())));
    return kExitOk;
  }

  int validate() {
    const Instance inst = instance_from_json(load_json_file(opt_.input));
    if (opt_.schedule.empty()) throw Error(ErrorCode::kMissingField, "validate needs --schedule");
    const Schedule sched = schedule_from_json(inst, load_json_file(opt_.schedule));
    Augmentation aug;
    if (!opt_.augment.empty()) aug = augmentation_from_json(inst, load_json_file(opt_.augment));
    const ValidationReport report = validate_schedule(inst, sched, aug);
    Json doc = validation_to_json(inst, report);
    doc["completion"] = completion_time(inst, sched);
    emit(doc);
    return report.feasible() ? kExitOk : kExitNegative;
  }

  int lowerbound() {
    const Instance inst = instance_from_json(load_json_file(opt_.input));
    emit({{"lower_bound", inst.products().empty() ? 0 : lower_bound(inst)},
          {"rho_max", rho_max(inst)},
          {"lp_min_horizon", find_min_horizon(inst)}});
    return kExitOk;
  }

  int generate() {
    if (opt_.reduction == "random") {
      const Json params = opt_.params.empty() ? Json::object() : load_json_file(opt_.params);
      emit(instance_to_json(random_instance(params, opt_.seed)));
      return kExitOk;
    }
    const Json params = load_json_file(opt_.params);
    if (opt_.reduction == "3partition") {
      emit(instance_to_json(from_3partition(three_partition_from_json(params))));
    } else if (opt_.reduction == "size12") {
      const Instance base = params.contains("instance") ? instance_from_json(params.at("instance"))
                                                        : from_3partition(three_partition_from_json(params));
      emit(instance_to_json(size12_expand(base).instance));
    } else if (opt_.reduction == "binpacking") {
      emit(instance_to_json(from_binpacking(binpacking_from_json(params))));
    } else if (opt_.reduction == "tmfd") {
      emit(instance_to_json(from_tmfd(tmfd_from_json(params))));
    } else {
      throw Error(ErrorCode::kPreconditionFailed, "unknown reduction '" + opt_.reduction + "'");
    }
    return kExitOk;
  }

  int verify() {
    const Json params = load_json_file(opt_.params);
    Json checks = Json::array();
    bool consistent = true;
    bool undecided = false;
    auto check = [&](const std::string& name, const Json& expected, const Json& observed) {
      const bool ok = expected == observed;
      consistent = consistent && ok;
      checks.push_back({{"check", name}, {"expected", expected}, {"observed", observed}, {"ok", ok}});
    };
    auto feasible = [&](const Instance& inst) -> std::optional<FeasibilityOutcome> {
      const Time horizon = opt_.horizon ? *opt_.horizon : default_horizon(inst);
      FeasibilityOutcome outcome = is_feasible_within(inst, horizon, opt_.budget);
      if (outcome.budget_exceeded) {
        undecided = true;
        return std::nullopt;
      }
      return outcome;
    };
    auto optimum = [&](const Instance& inst) -> std::optional<OracleOutcome> {
      SearchConfig config;
      config.horizon = opt_.horizon ? *opt_.horizon : default_horizon(inst);
      config.node_budget = opt_.budget;
      OracleOutcome outcome = exact_min_completion(inst, config);
      if (outcome.kind != OutcomeKind::kOptimal) {
        undecided = true;
        return std::nullopt;
      }
      return outcome;
    };

    if (opt_.reduction == "3partition") {
      const ThreePartitionInstance tp = three_partition_from_json(params);
      const bool yes = solve_3partition(tp).has_value();
      const Instance inst = from_3partition(tp);
      if (auto outcome = feasible(inst)) {
        check("feasible iff yes-instance", yes, outcome->feasible);
        if (outcome->witness) {
          check("departure slices form a 3-partition", true,
                is_valid_3partition(tp, induced_partition(tp, *outcome->witness)));
        }
      }
    } else if (opt_.reduction == "size12") {
      const Instance base = params.contains("instance") ? instance_from_json(params.at("instance"))
                                                        : from_3partition(three_partition_from_json(params));
      const Size12Expansion expansion = size12_expand(base);
      const auto before = feasible(base);
      const auto after = feasible(expansion.instance);
      if (before && after) check("expansion preserves feasibility", before->feasible, after->feasible);
    } else if (opt_.reduction == "binpacking") {
      const BinPackingInstance bp = binpacking_from_json(params);
      if (auto outcome = optimum(from_binpacking(bp))) {
        check("completion equals optimal bin count", static_cast<Time>(min_bins(bp)), outcome->completion);
      }
    } else if (opt_.reduction == "tmfd") {
      const TmfdInstance tm = tmfd_from_json(params);
      if (auto outcome = optimum(from_tmfd(tm))) {
        check("flow-shop optimum is completion + 1", tmfd_optimum(tm), outcome->completion + 1);
        const TmfdSchedule mapped = tmfd_roundtrip(tm, outcome->schedule);
        check("mapped schedule is a feasible flow-shop schedule", true, tmfd_feasible(tm, mapped));
        check("mapped makespan", outcome->completion + 1, tmfd_makespan(tm, mapped));
      }
    } else {
      throw Error(ErrorCode::kPreconditionFailed, "unknown reduction '" + opt_.reduction + "'");
    }
    emit({{"reduction", opt_.reduction}, {"checks", checks}, {"consistent", consistent}, {"undecided", undecided}});
    if (!consistent) return kExitNegative;
    return undecided ? kExitNoSolution : kExitOk;
  }

  int compare() {
    const Instance inst = instance_from_json(load_json_file(opt_.input));
    const std::vector<std::string> algorithms =
        opt_.algorithms.empty() ? std::vector<std::string>{"oracle", "lp-augment"} : opt_.algorithms;
    for (const std::string& name : algorithms) {
      if (!is_known_algorithm(name)) throw Error(ErrorCode::kPreconditionFailed, "unknown algorithm '" + name + "'");
    }
    const SolveOptions options = solve_options();

    // Reference value: the oracle optimum if it terminates, else the lower bound.
    Json reference;
    Rational ref_value(0);
    try {
      const SolveResult exact = solve_with(inst, "oracle", options);
      reference = {{"kind", "oracle"}, {"value", exact.completion}};
      ref_value = exact.completion;
    } catch (const Error&) {
      const Time lb = inst.products().empty() ? 0 : lower_bound(inst);
      reference = {{"kind", "lower_bound"}, {"value", lb}};
      ref_value = lb;
    }

    Json rows = Json::array();
    for (const std::string& name : algorithms) {
      Json row{{"algorithm", name}};
      try {
        const SolveResult result = solve_with(inst, name, options);
        row["status"] = "ok";
        row["completion"] = result.completion;
        row["feasible"] = result.feasible;
        // Augmented schedules live in a different feasibility regime.
        row["regime"] = result.feasible ? "strict" : "augmented";
        if (ref_value > 0) {
          const Rational ratio = Rational(result.completion) / ref_value;
          row["ratio"] = format_rational(ratio);
          row["ratio_value"] = ratio.get_d();
        }
        row["wall_seconds"] = result.wall_seconds;
      } catch (const Error& ex) {
        row["status"] = std::string(to_string(ex.code()));
        row["message"] = ex.what();
      }
      rows.push_back(row);
    }
    emit({{"reference", reference}, {"rows", rows}});
    return kExitOk;
  }

 private:
  const Options& opt_;
  std::ostream& out_;
};

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and approximate reallocation scheduling"};
  app.require_subcommand(1);
  Options opt;

  auto add_io = [&](CLI::App* sub) {
    sub->add_option("--input", opt.input, "instance document")->required();
    sub->add_option("--output", opt.output, "write the result here instead of stdout");
  };
  auto add_search = [&](CLI::App* sub) {
    sub->add_option("--horizon", opt.horizon, "horizon for the oracle or the LP");
    sub->add_option("--budget", opt.budget, "oracle node budget");
  };

  CLI::App* solve = app.add_subcommand("solve", "run one algorithm");
  add_io(solve);
  add_search(solve);
  solve->add_option("--algorithm", opt.algorithms, "algorithm name")->expected(1);
  solve->add_option("--mode", opt.mode, "two-sided | gap-out | gap-in");

  CLI::App* validate = app.add_subcommand("validate", "check a schedule");
  add_io(validate);
  validate->add_option("--schedule", opt.schedule, "schedule document")->required();
  validate->add_option("--augment", opt.augment, "augmentation document");

  CLI::App* lb = app.add_subcommand("lowerbound", "report lower bounds");
  add_io(lb);

  CLI::App* generate = app.add_subcommand("generate", "emit an instance document");
  generate->add_option("--reduction", opt.reduction, "3partition | size12 | binpacking | tmfd | random")->required();
  generate->add_option("--params", opt.params, "parameter document");
  generate->add_option("--seed", opt.seed, "seed for the random generator");
  generate->add_option("--output", opt.output, "write the instance here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify-correspondence", "run reduction round-trip checks");
  verify->add_option("--reduction", opt.reduction, "3partition | size12 | binpacking | tmfd")->required();
  verify->add_option("--params", opt.params, "parameter document")->required();
  verify->add_option("--output", opt.output, "write the report here instead of stdout");
  add_search(verify);

  CLI::App* compare = app.add_subcommand("compare", "ratio table over several algorithms");
  add_io(compare);
  add_search(compare);
  compare->add_option("--algorithm", opt.algorithms, "comma-separated algorithm names")->delimiter(',');
  compare->add_option("--mode", opt.mode, "rounding mode for lp-augment");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex, out, err);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex, out, err);
    return kExitPrecondition;
  }

  Runner runner(opt, out);
  try {
    if (*solve) return runner.solve();
    if (*validate) return runner.validate();
    if (*lb) return runner.lowerbound();
    if (*generate) return runner.generate();
    if (*verify) return runner.verify();
    return runner.compare();
  } catch (const Error& ex) {
    err << "error: " << ex.what() << '\n';
    return exit_code_for(ex.code());
  }
}

}  // namespace reallocation

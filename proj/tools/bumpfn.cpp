// Command-line front end: coefficient tables, derivative evaluation, limits
// at zero, monotonicity verification and partitions of unity.
//
// Exit codes: 0 success or verified, 1 verification/coverage failure,
// 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bumpfn/coefficients.hpp"
#include "bumpfn/derivatives.hpp"
#include "bumpfn/errors.hpp"
#include "bumpfn/format.hpp"
#include "bumpfn/monotonicity.hpp"
#include "bumpfn/partition.hpp"

namespace {

using namespace bumpfn;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

nlohmann::json number_or_string(double x) {
  return std::isfinite(x) ? nlohmann::json(x) : nlohmann::json(format_double(x));
}

int run_coeffs(int max_order, const std::string& format) {
  const auto triangle = coeff_triangle(max_order);
  if (format == "json") {
    std::cout << triangle_to_json(triangle).dump() << '\n';
  } else if (format == "table") {
    std::vector<std::vector<std::string>> rows;
    for (const auto& row : triangle.rows()) {
      for (int k = 0; k < row.order(); ++k) {
        rows.push_back({std::to_string(row.order()), std::to_string(k), row[k].str()});
      }
    }
    write_table(std::cout, {"i", "k", "a_ik"}, rows);
  } else {
    write_triangle_csv(std::cout, triangle);
  }
  return 0;
}

int run_eval(const std::string& fn_name, int order, const std::vector<double>& points,
             const std::string& format) {
  const auto fn = parse_function_id(fn_name);
  if (!fn) throw ParseError("unknown function '" + fn_name + "'");
  std::vector<EvalTraceRow> rows;
  for (double t : points) rows.push_back({*fn, order, t, eval_derivative(*fn, order, t)});

  if (format == "csv") {
    write_eval_trace_csv(std::cout, rows);
  } else if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json entry{{"fn", to_string(r.function)},
                           {"i", r.order},
                           {"t", r.t},
                           {"value", number_or_string(r.result.value)},
                           {"status", to_string(r.result.status)}};
      if (r.result.log_form) {
        entry["sign"] = r.result.log_form->sign;
        entry["log_magnitude"] = number_or_string(r.result.log_form->log_magnitude);
      }
      out.push_back(std::move(entry));
    }
    std::cout << out.dump() << '\n';
  } else {
    std::vector<std::vector<std::string>> table;
    for (const auto& r : rows) {
      const auto& lf = r.result.log_form;
      table.push_back({std::string(to_string(r.function)), std::to_string(r.order),
                       format_double(r.t), format_double(r.result.value),
                       std::string(to_string(r.result.status)), lf ? std::to_string(lf->sign) : "",
                       lf ? format_double(lf->log_magnitude) : ""});
    }
    write_table(std::cout, {"fn", "i", "t", "value", "status", "sign", "log_magnitude"}, table);
  }
  return 0;
}

int run_limits(const std::string& fn_name, const std::string& format) {
  std::vector<FunctionId> functions;
  if (fn_name.empty()) {
    functions = {FunctionId::G, FunctionId::H};
  } else {
    const auto fn = parse_function_id(fn_name);
    if (!fn) throw ParseError("unknown function '" + fn_name + "'");
    functions = {*fn};
  }
  std::vector<LimitClassification> limits;
  for (FunctionId fn : functions) {
    for (Side side : {Side::left_of_zero, Side::right_of_zero}) limits.push_back(limit_at_zero(fn, side));
  }

  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& l : limits) {
      out.push_back({{"fn", to_string(l.function)},
                     {"side", to_string(l.side)},
                     {"limit", to_string(l.limit)},
                     {"closest_t", l.evidence.back().t},
                     {"closest_log_magnitude", l.evidence.back().log_magnitude}});
    }
    std::cout << out.dump() << '\n';
  } else if (format == "table") {
    std::vector<std::vector<std::string>> table;
    for (const auto& l : limits) {
      table.push_back({std::string(to_string(l.function)), std::string(to_string(l.side)),
                       std::string(to_string(l.limit))});
    }
    write_table(std::cout, {"fn", "side", "limit"}, table);
  } else {
    std::cout << "fn,side,limit\n";
    for (const auto& l : limits) {
      std::cout << to_string(l.function) << ',' << to_string(l.side) << ',' << to_string(l.limit) << '\n';
    }
  }
  return 0;
}

int run_verify(const std::string& kind, const std::string& fn_name, const std::string& interval_text,
               int max_order, int samples) {
  const Subject subject = Subject::parse(fn_name);
  const IntervalSpec interval = IntervalSpec::parse(interval_text);
  MonotonicityReport report;
  if (kind == "lcm") {
    report = check_lcm(subject, interval, max_order, samples);
  } else {
    if (subject.reciprocal) throw ParseError("reciprocals are only supported with --kind lcm");
    report = kind == "cm" ? check_cm(subject.function, interval, max_order, samples)
                          : check_am(subject.function, interval, max_order, samples);
  }
  std::cout << report_to_json(report).dump() << '\n';
  return report.verdict == Verdict::violated ? kExitFailure : 0;
}

int run_pou(const std::string& cover_path, std::vector<double> points, int samples, int order,
            const std::string& format) {
  std::ifstream in(cover_path);
  if (!in) throw ParseError("cannot read cover file '" + cover_path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const Cover cover = parse_cover_json(buffer.str());
  validate_cover(cover);

  if (points.empty()) {
    const double a = cover.domain_lower;
    const double b = cover.domain_upper;
    for (int j = 0; j < samples; ++j) {
      points.push_back(samples == 1 ? a : a + (b - a) * j / (samples - 1));
    }
  }
  const auto weights = pou_over_cover(cover, points, order);

  if (format == "json") {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : weights) {
      nlohmann::json per_patch = nlohmann::json::array();
      for (std::size_t j = 0; j < s.weights.size(); ++j) {
        nlohmann::json derivatives = nlohmann::json::array();
        for (int m = 1; m <= order; ++m) derivatives.push_back(s.weights[j].derivative(m));
        per_patch.push_back({{"patch", j}, {"weight", s.weights[j].value()}, {"derivatives", derivatives}});
      }
      out.push_back({{"x", s.x}, {"weights", std::move(per_patch)}});
    }
    std::cout << out.dump() << '\n';
  } else {
    write_weights_csv(std::cout, weights, order);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact derivatives, monotonicity checks and partitions of unity for exp(-1/t) bumps"};
  app.require_subcommand(1, 1);

  const std::vector<std::string> table_formats{"csv", "json", "table"};

  int max_order = 10;
  std::string format = "csv";
  auto* coeffs = app.add_subcommand("coeffs", "Coefficient triangle a(i,k) as exact integers");
  coeffs->add_option("--max-order", max_order, "Largest order i")->check(CLI::Range(1, 100000));
  coeffs->add_option("--format", format)->check(CLI::IsMember(table_formats));

  std::string fn_name;
  int order = 0;
  std::vector<double> points;
  auto* eval = app.add_subcommand("eval", "Evaluate the order-i derivative of f, g or h");
  eval->add_option("--fn", fn_name)->required()->check(CLI::IsMember({"f", "g", "h"}));
  eval->add_option("--order", order)->check(CLI::Range(0, 100000));
  eval->add_option("--points", points, "Comma-separated evaluation points")->required()->delimiter(',');
  eval->add_option("--format", format)->check(CLI::IsMember(table_formats));

  auto* limits = app.add_subcommand("limits", "One-sided limits of g and h at 0");
  limits->add_option("--fn", fn_name)->check(CLI::IsMember({"g", "h"}));
  limits->add_option("--format", format)->check(CLI::IsMember(table_formats));

  std::string kind;
  std::string interval;
  int verify_order = 20;
  int samples = 200;
  auto* verify = app.add_subcommand("verify", "Check CM / AM / LCM on an interval; prints a JSON report");
  verify->add_option("--kind", kind)->required()->check(CLI::IsMember({"cm", "am", "lcm"}));
  verify->add_option("--fn", fn_name, "f, g, h, 1/g or 1/h")->required();
  verify->add_option("--interval", interval, "a:b with inf / -inf allowed")->required();
  verify->add_option("--max-order", verify_order)->check(CLI::Range(0, 1000));
  verify->add_option("--samples", samples)->check(CLI::Range(1, 1000000));

  std::string cover_path;
  int pou_order = kDefaultJetOrder;
  int pou_samples = 11;
  auto* pou = app.add_subcommand("pou", "Partition-of-unity weights over a JSON cover");
  pou->add_option("--cover", cover_path)->required();
  pou->add_option("--points", points, "Comma-separated points (default: uniform grid)")->delimiter(',');
  pou->add_option("--samples", pou_samples, "Uniform grid size when --points is absent")
      ->check(CLI::Range(1, 10000000));
  pou->add_option("--order", pou_order)->check(CLI::Range(0, kMaxJetOrder));
  pou->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*coeffs) return run_coeffs(max_order, format);
    if (*eval) return run_eval(fn_name, order, points, format);
    if (*limits) return run_limits(fn_name, format);
    if (*verify) return run_verify(kind, fn_name, interval, verify_order, samples);
    if (*pou) return run_pou(cover_path, points, pou_samples, pou_order, format);
  } catch (const CoverageError& e) {
    std::cerr << "coverage error: " << e.what() << '\n';
    return kExitFailure;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitFailure;
  }
  return kExitUsage;
}

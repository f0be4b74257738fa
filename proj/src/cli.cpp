#include "dragondim/cli.hpp"

#include <cctype>
#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dragondim/boxdim.hpp"
#include "dragondim/coordfn.hpp"
#include "dragondim/error.hpp"
#include "dragondim/report.hpp"
#include "dragondim/verify.hpp"

namespace dragondim::cli {

namespace {

std::string trim(std::string_view text) {
  std::size_t a = 0, b = text.size();
  while (a < b && std::isspace(static_cast<unsigned char>(text[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(text[b - 1]))) --b;
  std::string out(text.substr(a, b - a));
  std::erase_if(out, [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
  return out;
}

std::int64_t parse_int(const std::string& text, std::string_view what) {
  if (text.empty()) throw Error(Errc::InvalidArgument, "empty " + std::string(what));
  errno = 0;
  char* end = nullptr;
  const long long v = std::strtoll(text.c_str(), &end, 10);
  if (errno != 0 || end != text.c_str() + text.size()) {
    throw Error(Errc::InvalidArgument, "bad " + std::string(what) + " '" + text + "'");
  }
  return v;
}

Rational parse_fraction(std::string_view text) {
  const std::string s = trim(text);
  const std::size_t slash = s.find('/');
  if (slash == std::string::npos) throw Error(Errc::InvalidArgument, "expected p/q, got '" + s + "'");
  return {parse_int(s.substr(0, slash), "numerator"), parse_int(s.substr(slash + 1), "denominator")};
}

void write_output(const RunConfig& config, const std::string& text, std::ostream& out) {
  if (config.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(config.out, std::ios::binary);
  if (!file) throw Error(Errc::InvalidArgument, "cannot open '" + config.out + "' for writing");
  file << text;
  if (!file) throw Error(Errc::InvalidArgument, "failed writing '" + config.out + "'");
}

std::string format_or(const RunConfig& config, std::string fallback,
                      std::initializer_list<std::string_view> allowed) {
  const std::string format = config.format.empty() ? std::move(fallback) : config.format;
  for (const std::string_view a : allowed) {
    if (format == a) return format;
  }
  throw Error(Errc::InvalidArgument, "format '" + format + "' is not available for this command");
}

std::string dim_csv(const DimensionEstimate& est) {
  std::string out = "m,depth,count\n";
  for (std::size_t i = 0; i < est.counts.size(); ++i) {
    out += std::to_string(est.counts[i].level) + "," + std::to_string(est.depths[i]) + "," +
           std::to_string(est.counts[i].total) + "\n";
  }
  return out;
}

std::string real(double v) {
  char buffer[48];
  std::snprintf(buffer, sizeof buffer, "%.9g", v);
  return buffer;
}

std::string bounds_table(const DragonParams& params, const RunConfig& config, bool as_json) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  std::string csv = "k,depth,cover,noncover_x,noncover_y,lambda_x,lambda_y,count_x,count_y\n";
  std::optional<double> lambda_x, lambda_y;
  if (params.rational) {
    lambda_x = lambda_min(params, Axis::X);
    lambda_y = lambda_min(params, Axis::Y);
  }
  const int lo = std::max(1, config.levels.lo);
  for (int k = lo; k <= config.levels.hi; ++k) {
    const int depth = std::max(k, certified_depth(params, std::ldexp(1.0, -k)));
    const std::uint64_t cover = cover_bound(params, k);
    const std::uint64_t count_x = mesh_count_at_depth(params, Axis::X, k, depth, false, config.max_depth).total;
    const std::uint64_t count_y = mesh_count_at_depth(params, Axis::Y, k, depth, false, config.max_depth).total;
    std::optional<std::uint64_t> low_x, low_y;
    if (params.rational) {
      low_x = noncover_bound(params, k, Axis::X);
      low_y = noncover_bound(params, k, Axis::Y);
    }
    nlohmann::ordered_json row;
    row["k"] = k;
    row["depth"] = depth;
    row["cover"] = cover;
    row["noncover_x"] = low_x ? nlohmann::ordered_json(*low_x) : nullptr;
    row["noncover_y"] = low_y ? nlohmann::ordered_json(*low_y) : nullptr;
    row["lambda_x"] = lambda_x ? nlohmann::ordered_json(round_significant(*lambda_x)) : nullptr;
    row["lambda_y"] = lambda_y ? nlohmann::ordered_json(round_significant(*lambda_y)) : nullptr;
    row["count_x"] = count_x;
    row["count_y"] = count_y;
    rows.push_back(std::move(row));

    csv += std::to_string(k) + "," + std::to_string(depth) + "," + std::to_string(cover) + "," +
           (low_x ? std::to_string(*low_x) : "") + "," + (low_y ? std::to_string(*low_y) : "") +
           "," + (lambda_x ? real(*lambda_x) : "") + "," + (lambda_y ? real(*lambda_y) : "") +
           "," + std::to_string(count_x) + "," + std::to_string(count_y) + "\n";
  }
  return as_json ? rows.dump(2) + "\n" : csv;
}

int dispatch(const RunConfig& config, std::ostream& out) {
  const DragonParams params = resolve_params(config);
  switch (config.command) {
    case Command::Gen: {
      format_or(config, "csv", {"csv"});
      write_output(config, emit_curve_csv(build_curve(params, config.depth, config.max_depth)), out);
      return 0;
    }
    case Command::Plot: {
      const std::string format = format_or(config, "svg", {"svg", "csv"});
      std::string text;
      if (config.target == PlotTarget::Curve) {
        const PolylineCurve curve = build_curve(params, config.depth, config.max_depth);
        text = format == "svg" ? emit_curve_svg(curve, config.render) : emit_curve_csv(curve);
      } else {
        const Axis axis = config.target == PlotTarget::GraphX ? Axis::X : Axis::Y;
        const PiecewiseLinear f = coordinate_function(params, config.depth, axis, config.max_depth);
        text = format == "svg" ? emit_graph_svg(f, config.render) : emit_graph_csv(f);
      }
      write_output(config, text, out);
      return 0;
    }
    case Command::Dim: {
      const std::string format = format_or(config, "json", {"json", "csv"});
      DimensionOptions options;
      options.depth_margin = config.depth_margin;
      options.max_materialized_depth = config.max_depth;
      const DimensionEstimate est =
          estimate_dimension(params, config.axis, config.levels.lo, config.levels.hi, options);
      write_output(config, format == "json" ? format_dimension_report(est) : dim_csv(est), out);
      return 0;
    }
    case Command::Bounds: {
      const std::string format = format_or(config, "csv", {"csv", "json"});
      write_output(config, bounds_table(params, config, format == "json"), out);
      return 0;
    }
    case Command::Verify: {
      format_or(config, "text", {"text"});
      std::ostringstream text;
      bool ok = true;
      for (const LemmaCheck& check : verify_lemmas(params, config.depth)) {
        text << to_string(check.status) << ' ' << check.name << ": " << check.detail << '\n';
        ok = ok && check.status != CheckStatus::Fail;
      }
      write_output(config, text.str(), out);
      return ok ? 0 : 1;
    }
  }
  return 2;
}

}  // namespace

AngleSpec parse_angle(std::string_view text) {
  AngleSpec spec;
  spec.text = std::string(text);
  const std::string s = trim(text);
  if (s.empty()) throw Error(Errc::InvalidArgument, "empty angle");

  const std::size_t pi = s.find("pi");
  if (pi != std::string::npos) {
    std::string head = s.substr(0, pi);
    if (!head.empty() && head.back() == '*') head.pop_back();
    std::int64_t num = 1;
    if (head == "-") {
      num = -1;
    } else if (!head.empty()) {
      num = parse_int(head, "angle numerator");
    }
    std::int64_t den = 1;
    const std::string tail = s.substr(pi + 2);
    if (!tail.empty()) {
      if (tail.front() != '/') throw Error(Errc::InvalidArgument, "bad angle '" + s + "'");
      den = parse_int(tail.substr(1), "angle denominator");
    }
    if (den <= 0) throw Error(Errc::InvalidArgument, "angle denominator must be positive");
    spec.pi_fraction = {{num, den}};
    spec.radians = kPi * static_cast<double>(num) / static_cast<double>(den);
    return spec;
  }
  if (s.find('/') != std::string::npos) {
    const Rational r = parse_fraction(s);
    if (r.q <= 0) throw Error(Errc::InvalidArgument, "angle denominator must be positive");
    spec.pi_fraction = {{r.p, r.q}};
    spec.radians = kPi * static_cast<double>(r.p) / static_cast<double>(r.q);
    return spec;
  }
  errno = 0;
  char* end = nullptr;
  spec.radians = std::strtod(s.c_str(), &end);
  if (errno != 0 || end != s.c_str() + s.size()) {
    throw Error(Errc::InvalidArgument, "bad angle '" + s + "'");
  }
  return spec;
}

LevelRange parse_range(std::string_view text) {
  const std::string s = trim(text);
  const std::size_t dots = s.find("..");
  LevelRange range;
  if (dots == std::string::npos) {
    range.lo = range.hi = static_cast<int>(parse_int(s, "level"));
  } else {
    range.lo = static_cast<int>(parse_int(s.substr(0, dots), "level"));
    range.hi = static_cast<int>(parse_int(s.substr(dots + 2), "level"));
  }
  if (range.lo < 0 || range.hi < range.lo) {
    throw Error(Errc::InvalidArgument, "level range '" + s + "' must satisfy 0 <= lo <= hi");
  }
  return range;
}

DragonParams resolve_params(const RunConfig& config) {
  if (config.alpha_turns) {
    if (config.theta) throw Error(Errc::InvalidArgument, "give either --theta or --alpha-turns");
    return params_from_rational(*config.alpha_turns);
  }
  if (!config.theta) throw Error(Errc::InvalidArgument, "--theta is required");
  if (config.theta->pi_fraction) {
    return params_from_pi_fraction(config.theta->pi_fraction->first,
                                   config.theta->pi_fraction->second);
  }
  return validate_params(config.theta->radians);
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(config, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    if (const auto* capacity = dynamic_cast<const CapacityError*>(&e);
        capacity && capacity->achieved_bound()) {
      err << "achieved bound: " << *capacity->achieved_bound() << '\n';
    }
    return 2;
  }
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Dragon curves with fold angle theta: generation, plots, box-counting dimension"};
  app.require_subcommand(1);

  RunConfig config;
  std::string theta_text, alpha_text, axis_text = "x", levels_text, graph_text;
  std::optional<int> depth;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--theta", theta_text,
                    "fold angle: radians, or an exact multiple of pi such as pi/2, 2pi/3, 5/6");
    sub->add_option("--alpha-turns", alpha_text, "alpha as an exact fraction p/q of a full turn");
    sub->add_option("-o,--out", config.out, "output file (default: standard output)");
    sub->add_option("--format", config.format, "output format");
  };

  auto* gen = app.add_subcommand("gen", "write the curve vertices as CSV");
  add_common(gen);
  gen->add_option("-k,--k", depth, "construction stage (default 10)");

  auto* plot = app.add_subcommand("plot", "draw the curve or a coordinate graph as SVG");
  add_common(plot);
  plot->add_option("-k,--k", depth, "construction stage (default 10)");
  plot->add_option("--graph", graph_text, "draw the graph of x or y instead of the curve")
      ->check(CLI::IsMember({"x", "y"}));
  plot->add_flag("--highlight", config.render.highlight_last_refinement,
                 "overlay stage k in red on stage k-1");
  plot->add_option("--width", config.render.width, "pixels");
  plot->add_option("--height", config.render.height, "pixels");
  plot->add_option("--margin", config.render.margin, "pixels");
  plot->add_option("--stroke", config.render.stroke_width, "pixels");

  auto* dim = app.add_subcommand("dim", "estimate the box-counting dimension of a coordinate graph");
  add_common(dim);
  dim->add_option("--axis", axis_text, "x or y")->check(CLI::IsMember({"x", "y"}));
  dim->add_option("--m", levels_text, "mesh levels lo..hi (default 6..12)");
  dim->add_option("--depth-margin", config.depth_margin, "stages counted beyond each level (default 2)");

  auto* bounds = app.add_subcommand("bounds", "tabulate the cover and non-cover counts");
  add_common(bounds);
  bounds->add_option("-k,--k", levels_text, "levels lo..hi (default 1..12)");

  auto* verify = app.add_subcommand("verify", "run the lemma checks; exit 1 on any failure");
  add_common(verify);
  verify->add_option("-k,--k", depth, "largest stage checked (default 10)");

  std::vector<const char*> argv;
  argv.reserve(args.size());
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (const char* env = std::getenv("DRAGONDIM_MAX_DEPTH"); env && *env) {
      const auto cap = parse_int(env, "DRAGONDIM_MAX_DEPTH");
      if (cap < 1 || cap > 40) throw Error(Errc::InvalidArgument, "DRAGONDIM_MAX_DEPTH must be in 1..40");
      config.max_depth = static_cast<int>(cap);
    }
    if (gen->parsed()) config.command = Command::Gen;
    if (plot->parsed()) config.command = Command::Plot;
    if (dim->parsed()) config.command = Command::Dim;
    if (bounds->parsed()) config.command = Command::Bounds;
    if (verify->parsed()) config.command = Command::Verify;

    if (!theta_text.empty()) config.theta = parse_angle(theta_text);
    if (!alpha_text.empty()) config.alpha_turns = parse_fraction(alpha_text);
    if (depth) {
      if (*depth < 0) throw Error(Errc::InvalidArgument, "--k must be non-negative");
      config.depth = *depth;
    }
    config.axis = axis_text == "y" ? Axis::Y : Axis::X;
    if (graph_text == "x") config.target = PlotTarget::GraphX;
    if (graph_text == "y") config.target = PlotTarget::GraphY;
    if (config.command == Command::Bounds) config.levels = {1, 12};
    if (!levels_text.empty()) config.levels = parse_range(levels_text);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return run(config, out, err);
}

}  // namespace dragondim::cli

#include "cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "report.hpp"

namespace evo::cli {

namespace {

struct FamilyOptions {
  std::string family = "f1";
  double lambda = 2.0;
  double mu = 0.5;
  bool printed = false;
  std::string phi = "exp(t)";
  std::string psi = "t";
  std::string entries;
};

struct Options {
  double tol = 1e-9;
  std::string out;
  std::optional<std::string> format;  // default: csv for a .csv output path, else json
  // classify / iso
  std::string matrix, left, right;
  // cea
  std::string action;
  std::size_t samples = 1000;
  double lo = 0.0, hi = 3.0;
  std::string var = "t";
  double p_max = 10.0;
  double grid_step = 1e-3;
  // trace / boundaries
  double s = 0.0;
  std::optional<double> t0;
  double t1 = 1.0;
  double step = 0.1;
  double fixed = 0.0;
  double scan_step = 1e-2;
  double precision = 1e-6;
  FamilyOptions fam;
};

void add_family_options(CLI::App* sub, FamilyOptions& f) {
  sub->add_option("--family", f.family, "f1, f2, f3 or custom")
      ->check(CLI::IsMember({"f1", "f2", "f3", "custom"}));
  sub->add_option("--lambda", f.lambda, "F1 lambda (>= 0)");
  sub->add_option("--mu", f.mu, "F1 mu (>= 0)");
  sub->add_flag("--printed-form", f.printed, "F1: exponent t instead of t - s; F2: keep the 1/2 factor");
  sub->add_option("--phi", f.phi, "F3 phi(t)");
  sub->add_option("--psi", f.psi, "F3 psi(t)");
  sub->add_option("--entries", f.entries, "custom: four expressions in s, t separated by ';'");
}

Family build_family(const FamilyOptions& o) {
  if (o.family == "f1") {
    if (o.lambda < 0 || o.mu < 0) throw Error("F1 needs lambda >= 0 and mu >= 0");
    return FamilyF1{o.lambda, o.mu, o.printed};
  }
  if (o.family == "f2") return FamilyF2{o.printed};
  if (o.family == "f3") return FamilyF3{parse(o.phi), parse(o.psi)};
  FamilyCustom c;
  std::vector<std::string> parts;
  std::stringstream ss(o.entries);
  for (std::string item; std::getline(ss, item, ';');) parts.push_back(item);
  if (parts.size() != 4) throw Error("--entries needs four expressions separated by ';'");
  for (int i = 0; i < 4; ++i) c.entries[i] = parse(parts[i], {"s", "t"});
  return c;
}

Json family_json(const FamilyOptions& o) {
  Json j;
  j["kind"] = o.family;
  if (o.family == "f1") {
    j["lambda"] = number(o.lambda);
    j["mu"] = number(o.mu);
    j["exponent"] = o.printed ? "t" : "t-s";
    j["printed_form"] = o.printed;
  } else if (o.family == "f2") {
    j["half_factor"] = o.printed;
    j["printed_form"] = o.printed;
  } else if (o.family == "f3") {
    j["phi"] = print(parse(o.phi));
    j["psi"] = print(parse(o.psi));
  } else {
    j["entries"] = o.entries;
  }
  return j;
}

std::optional<std::string> printed_note(const FamilyOptions& o) {
  if (!o.printed) return std::nullopt;
  if (o.family == "f1") return "printed exponent t in use; composition does not add exponents, CK is expected to fail";
  if (o.family == "f2") return "printed 1/2 factor in use; CK is expected to fail with residual sqrt(2)/4";
  return std::nullopt;
}

/// Writes through a temporary file so that a failed run leaves nothing behind.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : path_(path), fallback_(fallback) {
    if (!path_.empty()) {
      tmp_ = path_ + ".partial";
      file_.open(tmp_, std::ios::binary | std::ios::trunc);
      if (!file_) throw Error("cannot open output file " + path_);
    }
  }
  ~Sink() {
    if (!committed_ && !tmp_.empty()) {
      file_.close();
      std::error_code ec;
      std::filesystem::remove(tmp_, ec);
    }
  }
  std::ostream& stream() { return path_.empty() ? fallback_ : file_; }
  void commit() {
    if (path_.empty()) return;
    file_.close();
    if (!file_) throw Error("failed writing " + path_);
    std::filesystem::rename(tmp_, path_);
    committed_ = true;
  }

 private:
  std::string path_, tmp_;
  std::ostream& fallback_;
  std::ofstream file_;
  bool committed_ = false;
};

void emit_json(const Json& j, const std::string& path, std::ostream& out) {
  Sink sink(path, out);
  sink.stream() << j.dump(2) << '\n';
  sink.commit();
}

TimeVar parse_var(const std::string& v) {
  if (v == "t") return TimeVar::T;
  if (v == "s") return TimeVar::S;
  throw Error("--var must be s or t");
}

int cmd_classify(const Options& o, std::ostream& out) {
  return std::visit(
      [&](const auto& m) {
        const auto rec = classify(m, Tolerance{o.tol});
        Json j = classify_report(m, rec);
        j["config"] = {{"command", "classify"}, {"tol", o.tol}};
        emit_json(j, o.out, out);
        return rec.ambiguous ? 2 : 0;
      },
      parse_matrix(o.matrix));
}

int cmd_iso(const Options& o, std::ostream& out) {
  MatrixInput l = parse_matrix(o.left);
  MatrixInput r = parse_matrix(o.right);
  // one side with decimals makes the pair floating
  if (l.index() != r.index()) {
    if (auto* e = std::get_if<StructMatrix<Rational>>(&l)) l = to_double(*e);
    if (auto* e = std::get_if<StructMatrix<Rational>>(&r)) r = to_double(*e);
  }
  const Json config = {{"command", "iso"}, {"tol", o.tol}};
  return std::visit(
      [&](const auto& left) {
        using M = std::decay_t<decltype(left)>;
        const M& right = std::get<M>(r);
        try {
          const auto res = iso(left, right, Tolerance{o.tol});
          Json j = iso_report(left, right, res);
          j["config"] = config;
          emit_json(j, o.out, out);
          return 0;
        } catch (const Inconclusive& e) {
          Json j;
          j["isomorphic"] = nullptr;
          j["inconclusive"] = true;
          j["best_residual"] = number(e.residual());
          j["config"] = config;
          emit_json(j, o.out, out);
          return 2;
        }
      },
      l);
}

int cmd_cea(const Options& o, std::ostream& out) {
  const Family fam = build_family(o.fam);
  Json j;
  j["command"] = "cea " + o.action;
  j["family"] = family_json(o.fam);
  if (o.action == "check") {
    const auto rep = ck_check(fam, sample_triples(o.samples, o.lo, o.hi), o.tol);
    j["samples"] = o.samples;
    j["range"] = Json::array({number(o.lo), number(o.hi)});
    j["tolerance"] = number(o.tol);
    j["max_residual"] = number(rep.max_residual);
    j["pass"] = rep.pass;
  } else if (o.action == "homogeneity") {
    const auto rep = homogeneity_check(fam, sample_shifts(o.samples, o.lo, o.hi), o.tol);
    j["samples"] = o.samples;
    j["range"] = Json::array({number(o.lo), number(o.hi)});
    j["tolerance"] = number(o.tol);
    j["max_residual"] = number(rep.max_residual);
    j["pass"] = rep.pass;
  } else {
    PeriodOptions po;
    po.p_max = o.p_max;
    po.grid_step = o.grid_step;
    po.tol = o.tol;
    const auto rep = periodicity_scan(fam, parse_var(o.var), po);
    j["var"] = o.var;
    j["max"] = number(o.p_max);
    j["tolerance"] = number(o.tol);
    j["period"] = rep.period ? number(*rep.period) : Json(nullptr);
    j["residual"] = rep.period ? number(rep.residual) : Json(nullptr);
    j["degenerate"] = rep.degenerate;
  }
  if (auto note = printed_note(o.fam)) j["note"] = *note;
  emit_json(j, o.out, out);
  return 0;
}

int cmd_trace(const Options& o, std::ostream& out, std::ostream& err) {
  const Family fam = build_family(o.fam);
  TraceGrid grid{o.s, o.t0.value_or(o.s), o.t1, o.step};
  const bool csv_path = o.out.size() >= 4 && o.out.compare(o.out.size() - 4, 4, ".csv") == 0;
  const std::string format = o.format.value_or(csv_path ? "csv" : "json");
  Json config;
  config["command"] = "trace";
  config["family"] = family_json(o.fam);
  config["grid"] = {{"s", number(grid.s)}, {"t0", number(grid.t0)}, {"t1", number(grid.t1)}, {"step", number(grid.step)}};
  config["tol"] = o.tol;
  config["format"] = format;
  if (auto note = printed_note(o.fam)) config["note"] = *note;
  err << config.dump() << '\n';

  Sink sink(o.out, out);
  const auto records = trace(fam, grid, Tolerance{o.tol});
  if (format == "csv") {
    sink.stream() << trace_csv(records);
  } else {
    sink.stream() << trace_json(records).dump(2) << '\n';
  }
  sink.commit();
  return 0;
}

int cmd_boundaries(const Options& o, std::ostream& out) {
  const Family fam = build_family(o.fam);
  BoundaryOptions bo;
  bo.var = parse_var(o.var);
  bo.fixed = o.fixed;
  bo.lo = o.lo;
  bo.hi = o.hi;
  bo.scan_step = o.scan_step;
  bo.precision = o.precision;
  const auto pts = find_boundaries(fam, bo, Tolerance{o.tol});
  Json j;
  j["command"] = "boundaries";
  j["family"] = family_json(o.fam);
  j["var"] = o.var;
  j["fixed"] = number(o.fixed);
  j["window"] = Json::array({number(o.lo), number(o.hi)});
  j["precision"] = number(o.precision);
  Json arr = Json::array();
  for (double p : pts) arr.push_back(number(p));
  j["boundaries"] = arr;
  emit_json(j, o.out, out);
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::vector<std::string> config_to_args(const std::string& text) {
  std::vector<std::string> args;
  std::istringstream in(text);
  int line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw Error("config line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw Error("config line " + std::to_string(line_no) + ": empty key");
    if (value == "true") {
      args.push_back("--" + key);
    } else if (value != "false") {
      args.push_back("--" + key);
      args.push_back(value);
    }
  }
  return args;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Two-dimensional real evolution algebras: classification, isomorphism and chains", "evoalg"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "file of key = value lines mirroring the flags");

  auto* classify_cmd = app.add_subcommand("classify", "classify a structure matrix");
  classify_cmd->add_option("-m,--matrix", o.matrix, "a11,a12,a21,a22")->required();

  auto* iso_cmd = app.add_subcommand("iso", "decide isomorphism of two structure matrices");
  iso_cmd->add_option("--left", o.left, "a11,a12,a21,a22")->required();
  iso_cmd->add_option("--right", o.right, "a11,a12,a21,a22")->required();

  auto* cea_cmd = app.add_subcommand("cea", "check Chapman-Kolmogorov, homogeneity or periodicity");
  cea_cmd->add_option("action", o.action, "check, homogeneity or period")
      ->required()
      ->check(CLI::IsMember({"check", "homogeneity", "period"}));
  add_family_options(cea_cmd, o.fam);
  cea_cmd->add_option("--samples", o.samples, "number of sampled points");
  cea_cmd->add_option("--lo", o.lo, "sampling range start");
  cea_cmd->add_option("--hi", o.hi, "sampling range end");
  cea_cmd->add_option("--var", o.var, "period variable, s or t");
  cea_cmd->add_option("--max", o.p_max, "largest period searched");
  cea_cmd->add_option("--grid-step", o.grid_step, "period scan step");

  auto* trace_cmd = app.add_subcommand("trace", "classify a family along t for fixed s");
  add_family_options(trace_cmd, o.fam);
  trace_cmd->add_option("--s", o.s, "fixed s");
  trace_cmd->add_option("--t0", o.t0, "first t (default s)");
  trace_cmd->add_option("--t1", o.t1, "last t");
  trace_cmd->add_option("--step", o.step, "grid step");
  trace_cmd->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* bound_cmd = app.add_subcommand("boundaries", "locate class transitions");
  add_family_options(bound_cmd, o.fam);
  bound_cmd->add_option("--var", o.var, "scanned variable, s or t");
  bound_cmd->add_option("--fixed", o.fixed, "value of the other variable");
  bound_cmd->add_option("--lo", o.lo, "window start");
  bound_cmd->add_option("--hi", o.hi, "window end");
  bound_cmd->add_option("--scan-step", o.scan_step, "coarse scan step");
  bound_cmd->add_option("--precision", o.precision, "bisection width");

  for (auto* sub : {classify_cmd, iso_cmd, cea_cmd, trace_cmd, bound_cmd}) {
    sub->add_option("--tol", o.tol, "relative tolerance");
    sub->add_option("--out", o.out, "output file (default stdout)");
  }

  try {
    std::vector<std::string> args = raw_args;
    // --config is expanded into the subcommand's flags ahead of the command line ones
    for (std::size_t i = 0; i < args.size(); ++i) {
      std::string path;
      std::size_t erase = 0;
      if (args[i] == "--config" && i + 1 < args.size()) {
        path = args[i + 1];
        erase = 2;
      } else if (args[i].rfind("--config=", 0) == 0) {
        path = args[i].substr(9);
        erase = 1;
      }
      if (erase == 0) continue;
      args.erase(args.begin() + static_cast<long>(i), args.begin() + static_cast<long>(i + erase));
      auto extra = config_to_args(read_file(path));
      auto take = [&extra](const std::string& flag) {
        std::string value;
        for (std::size_t k = 0; k + 1 < extra.size(); ++k) {
          if (extra[k] == flag) {
            value = extra[k + 1];
            extra.erase(extra.begin() + static_cast<long>(k), extra.begin() + static_cast<long>(k + 2));
            break;
          }
        }
        return value;
      };
      const std::string command = take("--command");
      const std::string action = take("--action");
      auto is_sub = [&](const std::string& a) { return a == "classify" || a == "iso" || a == "cea" || a == "trace" || a == "boundaries"; };
      auto pos = std::find_if(args.begin(), args.end(), is_sub);
      if (pos == args.end()) {
        if (command.empty()) throw Error("no command given");
        args.insert(args.begin(), command);
        pos = args.begin();
      }
      CLI::App* sub = app.get_subcommand(*pos);
      for (std::size_t k = 0; k < extra.size(); ++k) {
        if (extra[k].rfind("--", 0) != 0) continue;
        const std::string key = extra[k].substr(2);
        if (sub->get_option_no_throw(extra[k]) == nullptr) {
          throw Error("unknown config key '" + key + "' for command " + *pos);
        }
      }
      // positional action (cea) stays after the subcommand name
      auto insert_at = pos + 1;
      if (*pos == "cea") {
        if (insert_at != args.end() && insert_at->rfind("--", 0) != 0) {
          ++insert_at;
        } else if (!action.empty()) {
          insert_at = args.insert(insert_at, action) + 1;
        }
      } else if (!action.empty()) {
        throw Error("unknown config key 'action' for command " + *pos);
      }
      args.insert(insert_at, extra.begin(), extra.end());
      break;
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }

  try {
    if (classify_cmd->parsed()) return cmd_classify(o, out);
    if (iso_cmd->parsed()) return cmd_iso(o, out);
    if (cea_cmd->parsed()) return cmd_cea(o, out);
    if (trace_cmd->parsed()) return cmd_trace(o, out, err);
    return cmd_boundaries(o, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace evo::cli

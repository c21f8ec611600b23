#include "eip/cli.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "eip/cuboidify.hpp"
#include "eip/eip2d.hpp"
#include "eip/error.hpp"
#include "eip/io.hpp"
#include "eip/lowerbound.hpp"
#include "eip/oracle.hpp"
#include "eip/verify.hpp"
#include "eip/wulff.hpp"

namespace eip {

namespace {

using json = nlohmann::ordered_json;

int file_dimension(const std::string& path, int requested) {
  if (requested != 0) return requested;
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  const int d = sniff_dimension(in);
  if (d != 2 && d != 3) throw ParseError("cannot tell the dimension of '" + path + "'");
  return d;
}

// Writes to the named file, or to `fallback` when the name is empty.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw ParseError("cannot write '" + path + "'");
      out_ = &file_;
    }
  }
  std::ostream& get() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_;
};

// Runs f(i) for i in [0, count) on up to `threads` workers. Results come
// back in index order; the first failure by index is rethrown.
template <class T, class F>
std::vector<T> parallel_map(std::size_t count, unsigned threads, F f) {
  std::vector<std::optional<T>> slots(count);
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        slots[i] = f(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(count)));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  std::vector<T> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    if (errors[i]) std::rethrow_exception(errors[i]);
    out.push_back(std::move(*slots[i]));
  }
  return out;
}

template <std::size_t D>
json fluctuation_json(const FluctuationReport<D>& r) {
  json j;
  j["n"] = r.n;
  j["ax"] = r.best_shift[0];
  j["ay"] = r.best_shift[1];
  if constexpr (D == 3) j["az"] = r.best_shift[2];
  j["sym_diff"] = r.sym_diff;
  j["max_overlap"] = r.max_overlap;
  j["baseline_gap"] = r.baseline_gap;
  j["ratio"] = format_ratio(r.ratio);
  return j;
}

template <std::size_t D>
void fluctuation_csv(std::ostream& out, const FluctuationReport<D>& r) {
  out << (D == 3 ? "n,ax,ay,az,sym_diff,ratio\n" : "n,ax,ay,sym_diff,ratio\n");
  out << r.n;
  for (std::size_t i = 0; i < D; ++i) out << ',' << r.best_shift[i];
  out << ',' << r.sym_diff << ',' << format_ratio(r.ratio) << '\n';
}

struct Args {
  std::string input;
  std::string output;
  std::string trace;
  std::string out_dir;
  std::string cache_dir;
  int dim = 0;
  int axis = 0;
  i64 d = 0;
  i64 s = 0;
  i64 s_min = 0;
  i64 s_max = 0;
  int n = 0;
  unsigned threads = 1;
  bool merge = false;
  bool json_out = false;
  bool allow_large = false;
  bool quick = false;
};

int cmd_perimeter(const Args& a, std::ostream& out) {
  if (file_dimension(a.input, a.dim) == 2) {
    const Config2 c = read_config_file<2>(a.input);
    out << "n " << c.n() << "\nbonds " << bond_count(c) << "\nperimeter " << edge_perimeter(c) << '\n';
  } else {
    const Config3 c = read_config_file<3>(a.input);
    out << "n " << c.n() << "\nbonds " << bond_count(c) << "\nperimeter " << edge_perimeter(c) << '\n';
  }
  return kExitOk;
}

int cmd_daisy(const Args& a, std::ostream& out) {
  const auto [desc, config] = build_daisy(a.d);
  Sink sink(a.output, out);
  sink.get() << "# daisy d=" << a.d << " s=" << desc.s << " s'=" << desc.s_prime << " e=" << desc.e << '\n';
  write_config(sink.get(), config);
  return kExitOk;
}

int cmd_cuboidify(const Args& a, std::ostream& out) {
  const Config3 input = read_config_file<3>(a.input);
  CuboidifyOptions opts;
  if (a.axis != 0) opts.axis = a.axis;
  CuboidifyResult r = cuboidify(input, opts);
  Config3 result = r.config;
  RearrangementTrace trace = r.trace;
  if (a.merge) {
    MergeResult m = merge_side_face(r.config);
    result = m.config;
    for (auto& step : m.trace) trace.push_back({"merge " + step.label, step.moved, step.bonds});
  }
  if (!a.trace.empty()) {
    Sink t(a.trace, out);
    write_trace_csv(t.get(), trace);
  }
  Sink sink(a.output, out);
  const auto& q = r.quasicube;
  sink.get() << "# quasicube s=" << q.s << " s'=" << q.s_prime << " s3=" << q.s3 << " f1=" << q.f1.n()
             << " f2=" << q.f2.n() << " bonds=" << bond_count(result) << '\n';
  write_config(sink.get(), result);
  return kExitOk;
}

int cmd_fluctuation(const Args& a, std::ostream& out) {
  if (file_dimension(a.input, a.dim) == 2) {
    const auto r = fluctuation2(read_config_file<2>(a.input));
    if (a.json_out) out << fluctuation_json(r).dump(2) << '\n'; else fluctuation_csv(out, r);
  } else {
    const auto r = fluctuation3(read_config_file<3>(a.input));
    if (a.json_out) out << fluctuation_json(r).dump(2) << '\n'; else fluctuation_csv(out, r);
  }
  return kExitOk;
}

int cmd_construct_lower(const Args& a, std::ostream& out) {
  const bool keep = !a.out_dir.empty();
  const LowerBoundInstance inst = construct_lower(a.s, keep);
  const auto& p = inst.params;
  if (keep) {
    std::filesystem::create_directories(a.out_dir);
    const std::filesystem::path dir(a.out_dir);
    write_config_file((dir / "M.txt").string(), inst.m);
    write_config_file((dir / "M1.txt").string(), inst.m1);
    write_config_file((dir / "M2.txt").string(), inst.m2);
  }
  const FluctuationReport3 rep = fluctuation3(inst.m2);
  const i64 bound = bound_value(a.s);
  json j;
  j["s"] = p.s;
  j["n"] = p.n;
  j["d"] = p.d;
  j["r"] = p.r;
  j["q"] = p.q;
  j["h1"] = p.h1;
  j["lines_moved"] = inst.lines_moved;
  j["bonds_M"] = inst.bonds_m;
  j["bonds_M1"] = inst.bonds_m1;
  j["bonds_M2"] = inst.bonds_m2;
  j["bound_value"] = bound;
  j["sym_diff"] = rep.sym_diff;
  j["baseline_gap"] = rep.baseline_gap;
  j["ratio_bound"] = format_ratio(static_cast<double>(static_cast<long double>(bound) / pow34(p.n)));
  j["ratio_measured"] = format_ratio(rep.ratio);
  j["side_deviation"] = side_deviation(inst.m2);
  out << j.dump(2) << '\n';
  if (inst.bonds_m1 != inst.bonds_m || inst.bonds_m2 != inst.bonds_m) {
    throw PropertyViolation("bond conservation along the construction");
  }
  if (rep.sym_diff < bound) throw PropertyViolation("fluctuation of M'' is below the bound");
  return kExitOk;
}

void check_range(const Args& a, i64 lo) {
  if (a.s_min < lo || a.s_max < a.s_min) {
    throw std::invalid_argument("need " + std::to_string(lo) + " <= s-min <= s-max");
  }
}

int cmd_scan_2d(const Args& a, std::ostream& out, std::ostream& err) {
  check_range(a, 2);
  const auto count = static_cast<std::size_t>(a.s_max - a.s_min + 1);
  const auto rows = parallel_map<SharpRow2d>(count, a.threads,
                                             [&](std::size_t i) { return evaluate_sharp_2d(a.s_min + static_cast<i64>(i)); });
  {
    Sink sink(a.output, out);
    write_sharp_csv_header(sink.get());
    for (const auto& r : rows) write_sharp_csv_row(sink.get(), r);
  }
  std::ostream& log = a.output.empty() ? err : out;
  if (rows.size() >= 2) {
    std::vector<double> x, y;
    for (const auto& r : rows) {
      x.push_back(static_cast<double>(r.d));
      y.push_back(static_cast<double>(r.sym_diff));
    }
    log << "fitted_exponent " << format_ratio(loglog_slope(x, y)) << '\n';
  }
  for (const auto& r : rows) {
    if (2 * r.sym_diff < r.twice_bound) {
      throw PropertyViolation("2D fluctuation below the bound at s = " + std::to_string(r.s));
    }
  }
  return kExitOk;
}

int cmd_scan_3d(const Args& a, std::ostream& out, std::ostream& err) {
  check_range(a, 2);
  std::vector<i64> values;
  for (i64 s = a.s_min; s <= a.s_max; ++s) {
    if (condition_rh1s(s)) values.push_back(s);
  }
  std::ostream& log = a.output.empty() ? err : out;
  if (values.size() != static_cast<std::size_t>(a.s_max - a.s_min + 1)) {
    log << "skipped " << (a.s_max - a.s_min + 1 - static_cast<i64>(values.size())) << " values of s below s0\n";
  }
  const auto rows = parallel_map<LowerBoundRow>(values.size(), a.threads,
                                                [&](std::size_t i) { return evaluate_lower(values[i]); });
  {
    Sink sink(a.output, out);
    write_lower_csv_header(sink.get());
    for (const auto& r : rows) write_lower_csv_row(sink.get(), r);
  }
  for (const auto& r : rows) {
    const std::string at = " at s = " + std::to_string(r.s);
    if (!r.bonds_conserved) throw PropertyViolation("bond conservation along the construction" + at);
    if (!r.inclusion) throw PropertyViolation("block inclusion" + at);
    if (r.sym_diff < r.bound_value) throw PropertyViolation("fluctuation of M'' below the bound" + at);
  }
  return kExitOk;
}

int cmd_oracle(const Args& a, std::ostream& out) {
  std::optional<std::filesystem::path> dir = cache_dir_from_env();
  if (!a.cache_dir.empty()) dir = a.cache_dir;
  const OracleRecord rec = load_or_compute(a.dim, a.n, dir, {.allow_large = a.allow_large, .sample_cap = 100});
  Sink sink(a.output, out);
  write_record(sink.get(), rec);
  return kExitOk;
}

int cmd_verify(const Args& a, std::ostream& out) {
  std::vector<std::string> failed;
  VerifyOptions opts;
  opts.quick = a.quick;
  opts.on_result = [&](const CheckResult& r) {
    if (r.passed) {
      out << "PASS " << r.name << '\n';
    } else {
      out << "FAIL " << r.name << ": " << r.detail << '\n';
      failed.push_back(r.name);
    }
    out.flush();
  };
  run_verify(opts);
  if (!failed.empty()) throw PropertyViolation(failed.front());
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Edge-isoperimetric minimizers on Z^2 and Z^3", "eip"};
  app.require_subcommand(1);
  Args a;

  auto* perimeter = app.add_subcommand("perimeter", "Point count, bonds and edge perimeter of a configuration");
  perimeter->add_option("file", a.input)->required();
  perimeter->add_option("--dim", a.dim, "2 or 3; detected from the file by default")->check(CLI::IsMember({0, 2, 3}));

  auto* daisy = app.add_subcommand("daisy", "Write the daisy D_d");
  daisy->add_option("d", a.d)->required()->check(CLI::PositiveNumber);
  daisy->add_option("-o,--output", a.output);

  auto* cub = app.add_subcommand("cuboidify", "Rearrange a 3D minimizer into a quasicube");
  cub->add_option("file", a.input)->required();
  cub->add_option("-o,--output", a.output);
  cub->add_option("--trace", a.trace, "Trace CSV path");
  cub->add_option("--axis", a.axis, "Level axis 1..3")->check(CLI::Range(1, 3));
  cub->add_flag("--merge", a.merge, "Also fold the side face into the base");

  auto* fl = app.add_subcommand("fluctuation", "Symmetric difference to the best-placed Wulff shape");
  fl->add_option("file", a.input)->required();
  fl->add_option("--dim", a.dim)->check(CLI::IsMember({0, 2, 3}));
  fl->add_flag("--json", a.json_out);

  auto* lower = app.add_subcommand("construct-lower", "Build M, M' and M'' for one s and report the bound");
  lower->add_option("--s", a.s)->required();
  lower->add_option("--out-dir", a.out_dir, "Write M.txt, M1.txt and M2.txt here");

  auto* scan2 = app.add_subcommand("scan-2d", "2D sharpness sweep over s");
  auto* scan3 = app.add_subcommand("scan-3d", "Lower-bound sweep over s");
  for (auto* sc : {scan2, scan3}) {
    sc->add_option("--s-min", a.s_min)->required();
    sc->add_option("--s-max", a.s_max)->required();
    sc->add_option("-o,--output", a.output, "CSV path");
    sc->add_option("--threads", a.threads)->check(CLI::Range(1u, 256u));
  }

  auto* orc = app.add_subcommand("oracle", "Exhaustive minimum perimeter for small n");
  orc->add_option("--dim", a.dim)->required()->check(CLI::IsMember({2, 3}));
  orc->add_option("--n", a.n)->required()->check(CLI::PositiveNumber);
  orc->add_option("--cache-dir", a.cache_dir, "Defaults to $EIP_CACHE_DIR");
  orc->add_flag("--allow-large", a.allow_large, "Lift the size guardrails");
  orc->add_option("-o,--output", a.output);

  auto* ver = app.add_subcommand("verify", "Run the property suite");
  ver->add_flag("--quick", a.quick);

  std::vector<const char*> argv;
  for (const auto& s : args) argv.push_back(s.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*perimeter) return cmd_perimeter(a, out);
    if (*daisy) return cmd_daisy(a, out);
    if (*cub) return cmd_cuboidify(a, out);
    if (*fl) return cmd_fluctuation(a, out);
    if (*lower) return cmd_construct_lower(a, out);
    if (*scan2) return cmd_scan_2d(a, out, err);
    if (*scan3) return cmd_scan_3d(a, out, err);
    if (*orc) return cmd_oracle(a, out);
    if (*ver) return cmd_verify(a, out);
  } catch (const PropertyViolation& e) {
    err << "property violation: " << e.what() << '\n';
    return kExitViolation;
  } catch (const NotMinimizerError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace eip

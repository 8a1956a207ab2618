// Golden-file tests for the CLI: run each figure-producing subcommand with a
// small grid, compare numerically against the pinned CSVs, and check the
// contract behaviours (byte-identical reruns, exit codes, JSON mode).
//
// Usage: cli_golden <sce-binary> <golden-dir> <scratch-dir>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sys/wait.h>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

int failures = 0;

void report(const std::string& what, bool pass, const std::string& detail = "") {
  std::printf("[%s] %s%s%s\n", pass ? "ok" : "FAIL", what.c_str(),
              detail.empty() ? "" : ": ", detail.c_str());
  if (!pass) ++failures;
}

std::string slurp(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    std::vector<std::string> cells;
    std::string cell;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      const char c = line[i];
      if (quoted) {
        if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
          cell += '"';
          ++i;
        } else if (c == '"') {
          quoted = false;
        } else {
          cell += c;
        }
      } else if (c == '"') {
        quoted = true;
      } else if (c == ',') {
        cells.push_back(cell);
        cell.clear();
      } else {
        cell += c;
      }
    }
    cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

bool numeric_equal(const std::string& a, const std::string& b) {
  char* enda = nullptr;
  char* endb = nullptr;
  const double va = std::strtod(a.c_str(), &enda);
  const double vb = std::strtod(b.c_str(), &endb);
  const bool na = enda && *enda == '\0' && !a.empty();
  const bool nb = endb && *endb == '\0' && !b.empty();
  if (na != nb) return false;
  if (!na) return a == b;
  if (std::isnan(va) && std::isnan(vb)) return true;
  const double scale = std::max({1.0, std::abs(va), std::abs(vb)});
  return std::abs(va - vb) <= 1e-12 * scale;
}

bool tables_match(const std::string& got, const std::string& want,
                  std::string& why) {
  const auto g = parse_csv(got), w = parse_csv(want);
  if (g.size() != w.size()) {
    why = "row count " + std::to_string(g.size()) + " vs " + std::to_string(w.size());
    return false;
  }
  for (std::size_t r = 0; r < g.size(); ++r) {
    if (g[r].size() != w[r].size()) {
      why = "column count differs on row " + std::to_string(r);
      return false;
    }
    for (std::size_t c = 0; c < g[r].size(); ++c) {
      const bool eq = r == 0 ? g[r][c] == w[r][c] : numeric_equal(g[r][c], w[r][c]);
      if (!eq) {
        why = "cell (" + std::to_string(r) + "," + std::to_string(c) + "): '" +
              g[r][c] + "' vs '" + w[r][c] + "'";
        return false;
      }
    }
  }
  return true;
}

std::string sce_bin, golden_dir, scratch_dir;

int run(const std::string& args, const std::string& out_file) {
  const std::string cmd = sce_bin + " " + args + " > " + out_file + " 2>/dev/null";
  const int rc = std::system(cmd.c_str());
  return rc == -1 ? -1 : WEXITSTATUS(rc);
}

void golden_case(const std::string& name, const std::string& args) {
  const std::string out = scratch_dir + "/" + name + ".csv";
  const int rc = run(args, out);
  if (rc != 0) {
    report("golden " + name, false, "exit code " + std::to_string(rc));
    return;
  }
  const std::string want = slurp(golden_dir + "/" + name + ".csv");
  if (want.empty()) {
    report("golden " + name, false, "missing golden file");
    return;
  }
  std::string why;
  const bool ok = tables_match(slurp(out), want, why);
  report("golden " + name, ok, why);
}

} // namespace

int main(int argc, char** argv) {
  if (argc != 4) {
    std::fprintf(stderr, "usage: cli_golden <sce-binary> <golden-dir> <scratch-dir>\n");
    return 2;
  }
  sce_bin = argv[1];
  golden_dir = argv[2];
  scratch_dir = argv[3];
  if (std::system(("mkdir -p " + scratch_dir).c_str()) != 0) return 2;

  golden_case("universal", "universal --fmin 0 --fmax 1 --steps 11");
  golden_case("solve_linear", "solve --model linear --a 1");
  golden_case("solve_fn", "solve --model fn --a 1 --b 1");
  golden_case("sweep_quadratic",
              "sweep --model quadratic --amin 0.1 --amax 10 --points 7 --log");
  golden_case("fncurve_phi4",
              "fncurve --L 1000 --mu 7 --phi 4 --vmin 10000 --vmax 40000 "
              "--points 7 --fnplot");
  golden_case("vtrans", "vtrans --L 1 --um --mu 7 --phi 4 --guess 10000");
  golden_case("ripple_monopole",
              "array ripple --model monopole --N 10 --M 20 --zmin 0.5 "
              "--zmax 2 --zsteps 4");
  golden_case("field_diagonal",
              "array field --model monopole --N 5 --M 10 --z 0.4 --z 1.6 "
              "--samples 9");
  golden_case("potential_map",
              "array potential --model monopole --N 4 --M 8 --z 1.6 "
              "--extent 1 --res 5");
  golden_case("field_axis",
              "array field --model monopole --N 5 --M 10 --scan axis "
              "--zmin 1 --zmax 2.4 --zsteps 5");
  golden_case("ripple_dipole",
              "array ripple --model dipole --d 0.5 --M 20 --zmin 0.6 "
              "--zmax 2.6 --zsteps 5");
  golden_case("saturn_decay",
              "saturn --qtip 1 --qring 1 --rmin 1.5 --rmax 50 --points 7 --log");
  golden_case("saturn_off_axis",
              "saturn --qtip 1 --qring 2 --rmin 1.5 --rmax 8 --points 5 "
              "--theta 0.5");
  golden_case("oracle_verify", "oracle verify --f 0.5");

  // identical invocations must be byte-identical
  {
    const std::string a = scratch_dir + "/det_a.csv", b = scratch_dir + "/det_b.csv";
    run("universal --fmin 0 --fmax 1 --steps 101", a);
    run("universal --fmin 0 --fmax 1 --steps 101", b);
    report("byte-identical reruns", slurp(a) == slurp(b) && !slurp(a).empty());
  }

  // worker threads must not change the output, including its order
  {
    const std::string a = scratch_dir + "/par_a.csv", b = scratch_dir + "/par_b.csv";
    const std::string args =
        "fncurve --L 1000 --mu 7 --phi 2 --vmin 4000 --vmax 16000 --points 12 "
        "--fnplot";
    run(args + " --parallel 1", a);
    run(args + " --parallel 4", b);
    report("parallel output is ordered and identical",
           slurp(a) == slurp(b) && !slurp(a).empty());
  }

  // exit codes: 2 on usage errors, 1 on numerical failure, 0 on success
  {
    const std::string sink = scratch_dir + "/sink.txt";
    report("usage error exits 2 (bad model)",
           run("solve --model bogus --a 1", sink) == 2);
    report("usage error exits 2 (missing required)", run("solve --a 1", sink) == 2);
    report("usage error exits 2 (fn without b)",
           run("solve --model fn --a 1", sink) == 2);
    report("usage error exits 2 (bad range)",
           run("universal --fmin 0.9 --fmax 0.1", sink) == 2);
    report("numerical failure exits 1 (no transition)",
           run("vtrans --L 1000 --mu 7 --phi 4 --guess 1e-2", sink) == 1);
    report("success exits 0", run("solve --model linear --a 1", sink) == 0);
  }

  // JSON mode emits an array of records
  {
    const std::string out = scratch_dir + "/json.txt";
    run("solve --model linear --a 1 --json", out);
    const std::string s = slurp(out);
    report("json mode", !s.empty() && s.front() == '[' &&
                            s.find("\"f\": ") != std::string::npos);
  }

  // SVG plot flag produces a file
  {
    const std::string out = scratch_dir + "/plot.csv";
    const std::string svg = scratch_dir + "/plot.svg";
    run("universal --fmin 0 --fmax 1 --steps 21 --plot " + svg, out);
    const std::string s = slurp(svg);
    report("svg plot", s.find("<svg") == 0 && s.find("polyline") != std::string::npos);
  }

  std::printf("----\ncli_golden: %d failure(s)\n", failures);
  return failures == 0 ? 0 : 1;
}

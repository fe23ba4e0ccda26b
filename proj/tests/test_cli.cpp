// End-to-end checks of the command-line driver: exit codes, output shape,
// and the report file option.  argv[1] is the path to the binary.

#include <array>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

namespace {

int failures = 0;

struct RunResult {
  int exit_code;
  std::string output;  // stdout only
};

RunResult run(const std::string& cmd) {
  RunResult r;
  FILE* pipe = popen((cmd + " 2>/dev/null").c_str(), "r");
  if (!pipe) {
    std::cerr << "cannot spawn: " << cmd << "\n";
    exit(2);
  }
  std::array<char, 4096> buf;
  while (size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

void expect(bool ok, const std::string& what) {
  if (!ok) {
    std::cerr << "FAIL: " << what << "\n";
    ++failures;
  }
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: test_cli <path-to-binary>\n";
    return 2;
  }
  std::string bin = argv[1];

  RunResult r = run(bin + " plane info --q 2");
  expect(r.exit_code == 0, "plane info exit code");
  expect(contains(r.output, "\"points\": 7") && contains(r.output, "\"flags\": 21"),
         "plane info counts for q=2");
  r = run(bin + " plane info --q 4");
  expect(contains(r.output, "\"points\": 21") && contains(r.output, "\"flags\": 105"),
         "plane info counts for q=4");
  r = run(bin + " plane info --q 6");
  expect(r.exit_code == 2, "non prime power order is a usage error");

  r = run(bin + " scan dualities --q 2 --workers 1");
  expect(r.exit_code == 0, "duality scan q=2 passes");
  expect(contains(r.output, "\"total\": 168"), "duality scan q=2 covers 168 maps");

  r = run(bin + " scan dualities --q 2 --format csv");
  expect(contains(r.output, "summary"), "csv output has a summary row");

  std::string report_path = "cli_report_tmp.json";
  r = run(bin + " scan dualities --q 2 --out " + report_path);
  expect(r.exit_code == 0, "report file scan exit code");
  std::ifstream f(report_path);
  std::stringstream ss;
  ss << f.rdbuf();
  expect(contains(ss.str(), "\"failures\": []"), "report file written");
  std::remove(report_path.c_str());

  r = run(bin + " verify axioms --model thin --type A2");
  expect(r.exit_code == 0, "thin A2 axioms pass");
  r = run(bin + " verify main2 --model pg --q 2 --workers 1");
  expect(r.exit_code == 0, "main2 on pg q=2 passes");
  r = run(bin + " verify beukjeeven --model gq --workers 1");
  expect(r.exit_code == 0, "beukjeeven on the quadrangle passes");
  r = run(bin + " verify baer --model pg --q 3");
  expect(r.exit_code == 0, "baer checks q=3 pass");
  r = run(bin + " verify baer --model pg --q 9");
  expect(r.exit_code == 2, "baer checks reject square q");
  r = run(bin + " verify nonsense --model pg");
  expect(r.exit_code == 2, "unknown check is a usage error");

  // coxeter subcommands against a temporary A2 matrix file
  std::string mat_path = "cli_a2_tmp.mat";
  {
    std::ofstream m(mat_path);
    m << "2\n1 3\n3 1\n";
  }
  r = run(bin + " coxeter reduce --matrix " + mat_path + " --word stst");
  expect(r.exit_code == 0 && r.output == "ts\n", "reduce stst -> ts");
  r = run(bin + " coxeter reduce --matrix " + mat_path + " --word ss");
  expect(r.output == "\n", "reduce ss -> identity");
  r = run(bin + " coxeter length --matrix " + mat_path + " --word stst");
  expect(r.output == "2\n", "length stst = 2");
  r = run(bin + " coxeter longest --matrix " + mat_path);
  expect(r.output == "sts\n", "longest element of A2");
  r = run(bin + " coxeter descents --matrix " + mat_path + " --word st --side left");
  expect(r.output == "s\n", "left descents of st");
  r = run(bin + " coxeter reduce --matrix " + mat_path + " --word sxz");
  expect(r.exit_code == 2, "letters out of range are a usage error");
  r = run(bin + " coxeter reduce --matrix does_not_exist.mat --word s");
  expect(r.exit_code == 2, "missing matrix file is a usage error");
  std::remove(mat_path.c_str());

  if (failures == 0) {
    std::cout << "cli: all checks passed\n";
    return 0;
  }
  std::cout << "cli: " << failures << " check(s) failed\n";
  return 1;
}

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#ifndef FRI_CLI_PATH
#define FRI_CLI_PATH "fri"
#endif

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  const fs::path dir = fs::temp_directory_path() / "fri_cli_tests";
  fs::create_directories(dir);
  return dir;
}

RunResult run_cli(const std::string& args) {
  const fs::path out = work_dir() / "stdout.txt";
  const fs::path err = work_dir() / "stderr.txt";
  const std::string cmd = std::string(FRI_CLI_PATH) + " " + args + " >" +
                          out.string() + " 2>" + err.string();
  const int raw = std::system(cmd.c_str());
  auto slurp = [](const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
  };
  return {WEXITSTATUS(raw), slurp(out), slurp(err)};
}

const char* kS1Fis = R"([System]
Name='S1'
NumInputs=1
NumOutputs=1
NumRules=2

[Input1]
Name='X1'
Range=[0 10]
NumMFs=2
MF1='A1':'trimf',[0 1 2]|[0 1 0]
MF2='A2':'trimf',[8 9 10]|[0 1 0]

[Output1]
Name='Y'
Range=[18 32]
NumMFs=2
MF1='B1':'trimf',[20 21 22]|[0 1 0]
MF2='B2':'trimf',[28 29 30]|[0 1 0]

[Rules]
1, 1 (1) : 1
2, 2 (1) : 1
)";

fs::path write(const std::string& name, const std::string& text) {
  const fs::path p = work_dir() / name;
  std::ofstream os(p, std::ios::binary);
  os << text;
  return p;
}

}  // namespace

TEST_CASE("cli: check, infer, compare") {
  const fs::path fis = write("s1.fis", kS1Fis);
  const fs::path obs = write("s1.obs", "OBS1='A*':'trimf',[4 5 6]|[0 1 0]\n");

  const RunResult check = run_cli("check --fis " + fis.string());
  CHECK(check.exit_code == 0);

  const RunResult infer = run_cli("infer --fis " + fis.string() + " --obs " +
                                  obs.string() + " --method kh");
  CHECK(infer.exit_code == 0);
  CHECK(infer.out.find("alpha=0: [24, 26]") != std::string::npos);
  CHECK(infer.out.find("abnormal: false") != std::string::npos);

  const RunResult all = run_cli("infer --fis " + fis.string() + " --obs " +
                                obs.string() + " --method all");
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("SCALE_MOVE") != std::string::npos);

  const RunResult csv = run_cli("compare --fis " + fis.string() + " --obs " +
                                obs.string() + " --out csv");
  CHECK(csv.exit_code == 0);
  CHECK(csv.out.find("example,method,status") != std::string::npos);
  CHECK(csv.out.find("S1,KH,ok,false,true,24,25,25,26") != std::string::npos);
}

TEST_CASE("cli: json output and failure modes") {
  const fs::path fis = write("s1.fis", kS1Fis);
  const fs::path obs = write("s1.obs", "OBS1='A*':'trimf',[4 5 6]|[0 1 0]\n");

  const RunResult json = run_cli("infer --fis " + fis.string() + " --obs " +
                                 obs.string() + " --method KH --out json");
  CHECK(json.exit_code == 0);
  CHECK(json.out.find("\"alpha_family\"") != std::string::npos);
  CHECK(json.out.find("\"abnormality\"") != std::string::npos);

  // Observation outside the hull: validation failure, machine-readable error.
  const fs::path far = write("far.obs", "OBS1='A*':'trimf',[8.5 9.2 9.8]|[0 1 0]\n");
  const RunResult outside = run_cli("infer --fis " + fis.string() + " --obs " +
                                    far.string() + " --method KH --out json");
  CHECK(outside.exit_code == 1);
  CHECK(outside.err.find("NoFlankingRules") != std::string::npos);

  const RunResult usage = run_cli("infer --fis " + fis.string());
  CHECK(usage.exit_code == 2);

  const RunResult missing = run_cli("infer --fis /nonexistent.fis --obs " +
                                    obs.string() + " --method KH");
  CHECK(missing.exit_code == 3);

  const fs::path bad = write("bad.fis", "[System]\nName='x'\n");
  const RunResult invalid = run_cli("check --fis " + bad.string());
  CHECK(invalid.exit_code == 1);
}

TEST_CASE("cli: plot writes a figure") {
  const fs::path fis = write("s1.fis", kS1Fis);
  const fs::path obs = write("s1.obs", "OBS1='A*':'trimf',[4 5 6]|[0 1 0]\n");
  const fs::path svg = work_dir() / "s1_kh.svg";
  const RunResult plot = run_cli("plot --fis " + fis.string() + " --obs " +
                                 obs.string() + " --method KH --svg " +
                                 svg.string());
  CHECK(plot.exit_code == 0);
  std::ifstream is(svg);
  std::ostringstream os;
  os << is.rdbuf();
  CHECK(os.str().find("<svg") == 0);
}

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "infectio/proof_io.hpp"
#include "infectio_cli/cli.hpp"
#include "json.hpp"
#include "oracle.hpp"

using namespace infectio;
namespace ts = infectio::testing;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string figure(const std::string& name) {
  return (ts::data_dir() / "figures" / (name + ".ndp")).string();
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Cli, TablesMatchGoldenFiles) {
  for (LogicId id : all_logics()) {
    const std::string name(to_string(id));
    const Result r = run({"tables", name});
    EXPECT_EQ(r.status, cli::kOk);
    EXPECT_EQ(r.out, slurp(ts::data_dir() / "golden" / "tables" / (name + ".txt"))) << name;
  }
}

TEST(Cli, EntailExitCodes) {
  EXPECT_EQ(run({"entail", "Sfde", "p | q |- q | ~q"}).status, cli::kOk);
  const Result fails = run({"entail", "Sfde", "p |- p | q"});
  EXPECT_EQ(fails.status, cli::kFails);
  EXPECT_NE(fails.out.find("N"), std::string::npos);
  EXPECT_EQ(run({"entail", "PWK", "|- p | ~p"}).status, cli::kOk);
  EXPECT_EQ(run({"entail", "Nope", "p |- p"}).status, cli::kUsage);
  EXPECT_EQ(run({"entail", "Sfde", "p |- p &"}).status, cli::kUsage);
  EXPECT_EQ(run({}).status, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).status, cli::kUsage);
}

TEST(Cli, EntailJson) {
  const Result r = run({"--json", "entail", "Sfde", "p |- p | q"});
  EXPECT_EQ(r.status, cli::kFails);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j.at("status"), 1);
}

TEST(Cli, Check) {
  EXPECT_EQ(run({"check", "NDp_Sfde", figure("disjunction_case1.before")}).status, cli::kOk);
  EXPECT_EQ(run({"check", "NDp_dSfde", figure("disjunction_case1.before")}).status, cli::kFails);
  EXPECT_EQ(run({"check", "NDp_Sfde", "/nonexistent/proof.ndp"}).status, cli::kUsage);
}

TEST(Cli, NormaliseRoundTrip) {
  const auto out = std::filesystem::temp_directory_path() / "infectio_cli_normal.ndp";
  const Result r = run({"normalise", "NDp_Sfde", figure("disjunction_case1.before"), "-o", out.string(), "--trace"});
  EXPECT_EQ(r.status, cli::kOk);
  EXPECT_TRUE(alpha_equivalent(read_proof_file(out), read_proof_file(figure("disjunction_case1.after"))));
  EXPECT_EQ(run({"normalize", "NDp_Sfde", out.string()}).status, cli::kOk);
  EXPECT_EQ(run({"nsp", "NDp_Sfde", out.string()}).status, cli::kOk);
  std::filesystem::remove(out);
}

TEST(Cli, Search) {
  const Result found = run({"search", "NDp_K3w", "p, ~p |- q"});
  EXPECT_EQ(found.status, cli::kOk);
  EXPECT_NE(found.out.find("EFQ"), std::string::npos);
  EXPECT_EQ(run({"search", "NDp_dSfde", "p & q |- p", "--depth", "6"}).status, cli::kFails);
  EXPECT_EQ(run({"search", "NDp_Sfde", "p |- p", "--depth", "0"}).status, cli::kUsage);
}

TEST(Cli, ParseSequent) {
  const auto s = cli::parse_sequent("p, q & r ⊢ ~p, q");
  EXPECT_EQ(s.gamma.size(), 2u);
  EXPECT_EQ(s.delta.size(), 2u);
  EXPECT_TRUE(cli::parse_sequent("|- p").gamma.empty());
}

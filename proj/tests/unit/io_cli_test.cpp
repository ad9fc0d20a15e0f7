#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "../support/generator.hpp"
#include "fdqubo/cli.hpp"
#include "fdqubo/io.hpp"
#include "fdqubo/pipeline.hpp"

using namespace fdqubo;
namespace fs = std::filesystem;
namespace tst = fdqubo::testing;

namespace {

const std::string kData = FDQUBO_DATA_DIR;

bool mentions(const std::vector<std::string>& diags, const std::string& word) {
  for (const auto& d : diags) {
    if (d.find(word) != std::string::npos) {
      return true;
    }
  }
  return false;
}

class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = fs::temp_directory_path() / ("fdqubo-test-" + std::to_string(rd()));
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  fs::path path_;
};

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Invocation {
  int code;
  std::string out;
  std::string err;
};

Invocation run(std::vector<std::string> args) {
  args.insert(args.begin(), "fdqubo");
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

// -------------------------------------------------------------- .qubo files

TEST(QuboFile, WritesCanonicalText) {
  Qubo q = normalize(3, {{0, 0, Rational(-1)}, {2, 0, Rational(3, 6)}}, Rational(1), Rational(1, 4));
  EXPECT_EQ(write_qubo(q), "QUBO 3 2\nOFFSET 1\nSCALE 1/4\n0 0 -1\n0 2 1/2\n");
}

TEST(QuboFile, RoundtripIsByteIdentical) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = rng() % 9;
    std::vector<QuboEntry> raw;
    for (int k = 0; n > 0 && k < 12; ++k) {
      raw.push_back({rng() % n, rng() % n, Rational(static_cast<std::int64_t>(rng() % 41) - 20,
                                                    1 + static_cast<std::int64_t>(rng() % 6))});
    }
    Qubo q = normalize(n, raw, Rational(static_cast<std::int64_t>(rng() % 7) - 3, 2),
                       Rational(1, 1 + static_cast<std::int64_t>(rng() % 5)));
    const std::string text = write_qubo(q);
    EXPECT_TRUE(check_qubo(text).empty()) << text;
    Qubo back = read_qubo(text);
    EXPECT_EQ(back, q);
    EXPECT_EQ(write_qubo(back), text);
  }
}

TEST(QuboFile, Diagnostics) {
  const std::string head = "QUBO 3 1\nOFFSET 0\nSCALE 1\n";
  EXPECT_TRUE(check_qubo(head + "0 1 2\n").empty());
  EXPECT_TRUE(mentions(check_qubo(head + "1 0 2\n"), "lower-triangle"));
  EXPECT_TRUE(mentions(check_qubo(head + "0 1 0\n"), "zero"));
  EXPECT_TRUE(mentions(check_qubo(head + "0 1 2/4\n"), "line 4"));
  EXPECT_TRUE(mentions(check_qubo(head + "0 5 1\n"), "out of range"));
  EXPECT_TRUE(mentions(check_qubo(head + "0 1 1\n0 2 1\n"), "declares 1"));
  EXPECT_TRUE(mentions(check_qubo("QUBO 3 2\nOFFSET 0\nSCALE 1\n0 1 1\n0 1 1\n"), "duplicate"));
  EXPECT_TRUE(mentions(check_qubo("QUBO 3 2\nOFFSET 0\nSCALE 1\n1 1 1\n0 1 1\n"), "sorted"));
  EXPECT_TRUE(mentions(check_qubo("QUBO 3 0\nOFFSET 0\nSCALE 0\n"), "positive"));
  EXPECT_FALSE(check_qubo("QUBO 3 0\nOFFSET 0\n").empty());
  EXPECT_FALSE(check_qubo("QUBIT 3 0\n").empty());
  EXPECT_THROW(read_qubo(head + "1 0 2\n"), FormatError);
}

TEST(QuboFile, CommentsAndCrLfAreAccepted) {
  EXPECT_TRUE(check_qubo("# made by hand\r\nQUBO 1 1\r\nOFFSET 0\r\nSCALE 1\r\n0 0 -1\r\n").empty());
}

// -------------------------------------------------------------- sidecar

TEST(Sidecar, RoundtripIsByteIdentical) {
  tst::Generator gen(17);
  int written = 0;
  for (int i = 0; i < 60; ++i) {
    auto c = compile(gen.next());
    if (!c) {
      continue;
    }
    const std::string text = write_sidecar(c->sidecar);
    Sidecar back = read_sidecar(text);
    EXPECT_EQ(write_sidecar(back), text);
    EXPECT_EQ(back.qubo_index, c->sidecar.qubo_index);
    EXPECT_EQ(back.penalty, c->sidecar.penalty);
    ++written;
  }
  EXPECT_GT(written, 30);
}

TEST(Sidecar, DecodeMatchesForest) {
  tst::Generator gen(18);
  std::mt19937_64 rng(18);
  for (int i = 0; i < 60; ++i) {
    auto c = compile(gen.next());
    if (!c) {
      continue;
    }
    Bits bits(c->qubo.n);
    Assignment leaves;
    for (std::size_t k = 0; k < bits.size(); ++k) {
      bits[k] = rng() & 1U;
      leaves[c->sidecar.qubo_index[k]] = bits[k];
    }
    Sidecar back = read_sidecar(write_sidecar(c->sidecar));
    Assignment direct;
    try {
      direct = c->model.forest.resolve(leaves);
    } catch (const std::logic_error&) {
      // A non-integral intermediate value: decode must refuse it too.
      EXPECT_ANY_THROW(decode(back, bits));
      continue;
    }
    Assignment decoded = decode(back, bits);
    for (VarId v : back.outputs) {
      EXPECT_EQ(decoded.at(v), direct.at(v));
    }
  }
}

TEST(Sidecar, RejectsMalformedInput) {
  EXPECT_THROW(read_sidecar("{"), FormatError);
  EXPECT_THROW(read_sidecar("[]"), FormatError);
  EXPECT_THROW(read_sidecar(R"({"variables": [], "qubo_index": [3]})"), FormatError);
}

TEST(Sidecar, ParseDomain) {
  EXPECT_EQ(parse_domain("-2..3"), Domain::interval(-2, 3));
  EXPECT_EQ(parse_domain("{1,3,5}"), Domain::set({1, 3, 5}));
  EXPECT_THROW(parse_domain("1..x"), FormatError);
}

// -------------------------------------------------------------- cli

TEST(Cli, DefaultPaths) {
  EXPECT_EQ(cli::default_qubo_path("dir/model.fzn"), "dir/model.qubo");
  EXPECT_EQ(cli::default_sidecar_path("dir/model.qubo"), "dir/model.sub.json");
  EXPECT_EQ(cli::default_sidecar_path("out.bin"), "out.bin.sub.json");
}

TEST(Cli, ConvertSolveDecode) {
  TempDir tmp;
  const std::string fzn = tmp.file("slack.fzn");
  fs::copy_file(kData + "/slack_example.fzn", fzn);
  Invocation c = run({"convert", fzn});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  const std::string qubo = tmp.file("slack.qubo");
  ASSERT_TRUE(fs::exists(qubo));
  ASSERT_TRUE(fs::exists(tmp.file("slack.sub.json")));
  EXPECT_TRUE(check_qubo(slurp(qubo)).empty());

  Invocation k = run({"check", qubo});
  EXPECT_EQ(k.code, cli::kOk);

  Invocation s = run({"solve", qubo, "--decode"});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_NE(s.out.find("x = 0;"), std::string::npos) << s.out;
  EXPECT_NE(s.out.find("y = 2;"), std::string::npos) << s.out;

  Invocation plain = run({"solve", qubo});
  EXPECT_EQ(plain.code, cli::kOk);
  EXPECT_NE(plain.out.find("% bits = "), std::string::npos);
}

TEST(Cli, ExplicitOutputPaths) {
  TempDir tmp;
  const std::string qubo = tmp.file("a.qubo");
  const std::string side = tmp.file("b.json");
  Invocation c = run({"convert", kData + "/square.fzn", "-o", qubo, "--sidecar", side});
  ASSERT_EQ(c.code, cli::kOk) << c.err;
  Invocation s = run({"solve", qubo, "--sidecar", side});
  ASSERT_EQ(s.code, cli::kOk) << s.err;
  EXPECT_NE(s.out.find("x = 1;"), std::string::npos) << s.out;
  EXPECT_NE(s.out.find("y = 1;"), std::string::npos) << s.out;
}

TEST(Cli, DecodeWithoutSidecarIsUsageError) {
  TempDir tmp;
  const std::string qubo = tmp.file("lonely.qubo");
  write(qubo, "QUBO 1 1\nOFFSET 0\nSCALE 1\n0 0 -1\n");
  Invocation s = run({"solve", qubo, "--decode"});
  EXPECT_EQ(s.code, cli::kUsage);
  EXPECT_NE(s.err.find("sidecar"), std::string::npos);
}

TEST(Cli, InconsistentModel) {
  TempDir tmp;
  Invocation c = run({"convert", kData + "/inconsistent.fzn", "-o", tmp.file("x.qubo")});
  EXPECT_EQ(c.code, cli::kInconsistent);
  EXPECT_FALSE(fs::exists(tmp.file("x.qubo")));
  Invocation r = run({"roundtrip", kData + "/inconsistent.fzn"});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}

TEST(Cli, GuardExceeded) {
  TempDir tmp;
  const std::string qubo = tmp.file("wide.qubo");
  write(qubo, "QUBO 40 0\nOFFSET 0\nSCALE 1\n");
  Invocation s = run({"solve", qubo});
  EXPECT_EQ(s.code, cli::kGuard);
  Invocation a = run({"solve", qubo, "--method", "anneal", "--sweeps", "10", "--restarts", "1"});
  EXPECT_EQ(a.code, cli::kOk) << a.err;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, cli::kUsage);
  EXPECT_EQ(run({"frobnicate"}).code, cli::kUsage);
  EXPECT_EQ(run({"convert"}).code, cli::kUsage);
  EXPECT_EQ(run({"convert", "/nonexistent/model.fzn"}).code, cli::kUsage);
  EXPECT_EQ(run({"convert", kData + "/square.fzn", "--encoding", "ternary"}).code, cli::kUsage);
  EXPECT_EQ(run({"check", "/nonexistent/m.qubo"}).code, cli::kUsage);
  EXPECT_EQ(run({"--help"}).code, cli::kOk);
}

TEST(Cli, MalformedQuboFailsCheck) {
  TempDir tmp;
  const std::string qubo = tmp.file("bad.qubo");
  write(qubo, "QUBO 2 1\nOFFSET 0\nSCALE 1\n1 0 2\n");
  Invocation k = run({"check", qubo});
  EXPECT_EQ(k.code, cli::kFailed);
  EXPECT_NE(k.out.find("lower-triangle"), std::string::npos);
  EXPECT_EQ(run({"solve", qubo}).code, cli::kUsage);
}

TEST(Cli, RoundtripPassAndFail) {
  Invocation ok = run({"roundtrip", kData + "/square.fzn"});
  EXPECT_EQ(ok.code, cli::kOk) << ok.out << ok.err;
  EXPECT_NE(ok.out.find("optimum -1"), std::string::npos) << ok.out;

  Invocation json = run({"roundtrip", kData + "/slack_example.fzn", "--json"});
  EXPECT_EQ(json.code, cli::kOk);
  EXPECT_NE(json.out.find("\"pass\": true"), std::string::npos) << json.out;

  // A penalty far below the objective span lets x = y = 3 undercut the optimum x + y = 3.
  TempDir tmp;
  const std::string fzn = tmp.file("capped.fzn");
  write(fzn,
        "var 0..3: x :: output_var;\nvar 0..3: y :: output_var;\nvar 0..6: t;\n"
        "constraint int_lin_le([1, 1], [x, y], 3);\n"
        "constraint int_lin_eq([1, 1, -1], [x, y, t], 0);\nsolve maximize t;\n");
  Invocation weak = run({"roundtrip", fzn, "--penalty", "1/100"});
  EXPECT_EQ(weak.code, cli::kFailed) << weak.out;
  EXPECT_NE(weak.out.find("FAIL"), std::string::npos);
}

TEST(Cli, AnnealIsDeterministicPerSeed) {
  TempDir tmp;
  const std::string qubo = tmp.file("square.qubo");
  ASSERT_EQ(run({"convert", kData + "/square.fzn", "-o", qubo}).code, cli::kOk);
  Invocation a = run({"solve", qubo, "--method", "anneal", "--seed", "7"});
  Invocation b = run({"solve", qubo, "--method", "anneal", "--seed", "7"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, EncodingOptions) {
  TempDir tmp;
  for (const std::string enc : {"auto", "onehot", "binary"}) {
    const std::string qubo = tmp.file(enc + ".qubo");
    Invocation c = run({"convert", kData + "/square.fzn", "-o", qubo, "--encoding", enc});
    ASSERT_EQ(c.code, cli::kOk) << c.err;
    Invocation s = run({"solve", qubo, "--decode"});
    ASSERT_EQ(s.code, cli::kOk) << s.err;
    EXPECT_NE(s.out.find("x = 1;"), std::string::npos) << enc << ": " << s.out;
  }
}

TEST(Cli, RoundtripGuard) {
  TempDir tmp;
  const std::string fzn = tmp.file("wide.fzn");
  std::string text;
  for (int i = 0; i < 8; ++i) {
    text += "var 0..40: v" + std::to_string(i) + " :: output_var;\n";
  }
  text += "constraint int_lin_le([1, 1, 1, 1, 1, 1, 1, 1], [v0, v1, v2, v3, v4, v5, v6, v7], 100);\n";
  text += "solve satisfy;\n";
  write(fzn, text);
  Invocation r = run({"roundtrip", fzn});
  EXPECT_EQ(r.code, cli::kGuard) << r.out << r.err;
  EXPECT_NE(r.err.find("exceeds"), std::string::npos);
}

TEST(Cli, SolveGuardSuggestsAnnealing) {
  TempDir tmp;
  const std::string qubo = tmp.file("wide.qubo");
  write(qubo, "QUBO 26 0\nOFFSET 0\nSCALE 1\n");
  Invocation s = run({"solve", qubo});
  EXPECT_EQ(s.code, cli::kGuard);
  EXPECT_NE(s.err.find("anneal"), std::string::npos);
}

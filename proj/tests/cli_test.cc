#include "tcc/cli.h"

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gtest/gtest.h"
#include "tcc/errors.h"
#include "tcc/io.h"
#include "tcc/patches.h"

using namespace tcc;
namespace fs = std::filesystem;

namespace {

struct Result {
    int code;
    std::string out, err;
};

Result call(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
  protected:
    void SetUp() override {
        dir_ = fs::temp_directory_path() / ("tcc_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir_);
        ASSERT_EQ(call({"goldens", "--out", path("goldens")}).code, kExitOk);
    }
    void TearDown() override { fs::remove_all(dir_); }

    std::string path(const std::string& name) const { return (dir_ / name).string(); }
    std::string golden(const std::string& name) const { return (dir_ / "goldens" / name).string(); }
    static std::string slurp(const std::string& p) {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream s;
        s << in.rdbuf();
        return s.str();
    }
    static Json payload(const Result& r) { return Json::parse(r.out).at("payload"); }
    // Envelope with timing removed.
    static Json comparable(const Result& r) {
        Json j = Json::parse(r.out);
        j.erase("timing");
        return j;
    }

    fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GoldensAreDeterministicAndValid) {
    ASSERT_EQ(call({"goldens", "--out", path("again")}).code, kExitOk);
    std::set<std::string> kinds;
    for (const auto& entry : fs::directory_iterator(dir_ / "goldens")) {
        const std::string name = entry.path().filename().string();
        EXPECT_EQ(slurp(entry.path().string()), slurp(path("again/" + name))) << name;
        EXPECT_EQ(call({"colex", "validate", "--in", entry.path().string()}).code, kExitOk) << name;
        kinds.insert(read_json_file(entry.path().string()).at("kind").get<std::string>());
    }
    EXPECT_TRUE(kinds.count("bordered") && kinds.count("colex2"));
    for (const char* f : {"hexpatch.json", "single_triangle.json", "hex_torus_1x3.json", "hex_torus_3x3.json", "uj_patch.json"}) {
        EXPECT_TRUE(fs::exists(golden(f))) << f;
    }
}

TEST_F(CliTest, VerifyOverlapExitCodes) {
    const Result ok = call({"verify", "overlap", "--lattice", golden("hexpatch.json"), "--betaJ", "0.5"});
    ASSERT_EQ(ok.code, kExitOk) << ok.err;
    const Json check = payload(ok).at("checks").at(0);
    EXPECT_LT(check.at("rel_err").get<double>(), 1e-12);
    EXPECT_TRUE(check.at("passed").get<bool>());

    const Result torus = call({"verify", "overlap", "--lattice", golden("hex_torus_3x3.json"), "--betaJ", "0.5"});
    EXPECT_EQ(torus.code, kExitFailed);
    EXPECT_NE(torus.err.find("homology"), std::string::npos);

    const Result strict = call({"verify", "overlap", "--lattice", golden("hexpatch.json"), "--betaJ", "1", "--tol", "0"});
    EXPECT_EQ(strict.code, kExitFailed);
}

TEST_F(CliTest, UsageErrors) {
    EXPECT_EQ(call({"frobnicate"}).code, kExitUsage);
    EXPECT_EQ(call({"verify", "overlap", "--lattice", path("missing.json")}).code, kExitUsage);
    EXPECT_EQ(call({"verify", "overlap", "--lattice", golden("hexpatch.json"), "--bogus"}).code, kExitUsage);
    EXPECT_EQ(call({"verify", "overlap", "--lattice", golden("hexpatch.json"), "--betaJ", "x"}).code, kExitUsage);
    EXPECT_EQ(call({"colex", "gen", "--family", "hex", "--rows", "2", "--cols", "4", "--out", path("bad.json")}).code,
              kExitUsage);
    EXPECT_EQ(call({"--help"}).code, kExitOk);

    ASSERT_EQ(call({"colex", "gen", "--family", "hex", "--rows", "6", "--cols", "6", "--out", path("big.json")}).code, kExitOk);
    const Result cap = call({"code", "state", "--in", path("big.json"), "--out", path("big.bin")});
    EXPECT_EQ(cap.code, kExitUsage);
    EXPECT_NE(cap.err.find("cap"), std::string::npos);

    write_text_file(path("broken.json"), "{\"kind\": \"colex2\", \"closed\": true}");
    EXPECT_EQ(call({"colex", "validate", "--in", path("broken.json")}).code, kExitUsage);
}

TEST_F(CliTest, ValidateReportsFailures) {
    Json bad = read_json_file(golden("hex_torus_1x3.json"));
    bad["edges"][0][2] = bad["faces"][0]["color"];
    write_text_file(path("recolored.json"), dump_json(bad));
    const Result r = call({"colex", "validate", "--in", path("recolored.json")});
    EXPECT_EQ(r.code, kExitFailed);
    EXPECT_FALSE(payload(r).at("all_passed").get<bool>());
}

TEST_F(CliTest, LatticeRoundTrips) {
    for (const auto& c : {build_hex_torus(3, 3), build_48_torus(2, 2)}) EXPECT_EQ(colex_from_json(Json::parse(dump_json(to_json(c)))), c);
    const auto b = build_bordered(union_jack_patch(2, 2));
    const LatticeFile f = lattice_from_json(Json::parse(dump_json(to_json(b))));
    EXPECT_EQ(*f.colex, b.colex);
    EXPECT_EQ(f.dual.triangles, b.source.triangles);
    EXPECT_EQ(f.dual.site_colors, b.source.site_colors);

    ASSERT_EQ(call({"colex", "dual", "--in", golden("uj_patch.json"), "--out", path("uj_dual.json")}).code, kExitOk);
    ASSERT_EQ(call({"colex", "border", "--in", path("uj_dual.json"), "--out", path("uj_again.json")}).code, kExitOk);
    EXPECT_EQ(slurp(path("uj_again.json")), slurp(golden("uj_patch.json")));
}

TEST_F(CliTest, NumbersRoundTripLosslessly) {
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    Json j = Json::array();
    std::vector<double> values = {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 5e-324};
    for (int i = 0; i < 200; ++i) values.push_back(u(rng) * std::pow(10.0, static_cast<int>(rng() % 40) - 20));
    for (double v : values) j.push_back(v);
    const Json back = Json::parse(dump_json(j));
    for (std::size_t i = 0; i < values.size(); ++i) EXPECT_EQ(back[i].get<double>(), values[i]);
    EXPECT_EQ(format_double(0.1), "0.10000000000000001");

    const Result r = call({"verify", "overlap", "--lattice", golden("hexpatch.json"), "--betaJ", "0.3,1.7"});
    EXPECT_EQ(dump_json(Json::parse(r.out)), r.out);
}

TEST_F(CliTest, StateFilesRoundTrip) {
    ASSERT_EQ(call({"code", "state", "--in", golden("hexpatch.json"), "--out", path("code.bin")}).code, kExitOk);
    const StateVector s = read_state_file(path("code.bin"));
    EXPECT_EQ(s, code_state(build_bordered(hexagon_patch()).colex));
    EXPECT_EQ(fs::file_size(path("code.bin")), 64u * 16u);

    ASSERT_EQ(call({"cluster", "state", "--lattice", golden("hexpatch.json"), "--out", path("cluster.bin")}).code, kExitOk);
    EXPECT_EQ(read_state_file(path("cluster.bin")).num_qubits, 13u);
    const Result p = call({"cluster", "project", "--lattice", golden("hexpatch.json"), "--x", "0000000", "--out", path("proj.bin")});
    ASSERT_EQ(p.code, kExitOk);
    EXPECT_TRUE(payload(p).at("equals_code_state").get<bool>());
    EXPECT_EQ(read_state_file(path("proj.bin")), s);
    EXPECT_EQ(call({"cluster", "project", "--lattice", golden("hexpatch.json"), "--x", "1000000"}).code, kExitUsage);
}

TEST_F(CliTest, ReproducibleSamplingAcrossThreadCounts) {
    const std::vector<std::string> base = {"mqc", "sample", "--lattice", golden("hexpatch.json"), "--basis", "x",
                                           "--n-samples", "2000", "--seed", "42", "--out"};
    auto with = [&](const std::string& out, const std::string& threads) {
        std::vector<std::string> a = {"--threads", threads};
        a.insert(a.end(), base.begin(), base.end());
        a.push_back(out);
        return call(a);
    };
    const Result a = with(path("a.csv"), "1");
    const Result b = with(path("a.csv"), "1");
    const Result c = with(path("c.csv"), "3");
    ASSERT_EQ(a.code, kExitOk) << a.err;
    EXPECT_EQ(comparable(a), comparable(b));
    EXPECT_EQ(slurp(path("a.csv")), slurp(path("c.csv")));
    EXPECT_EQ(payload(a).at("seed").get<std::uint64_t>(), 42u);
    EXPECT_LT(payload(a).at("max_joint_deviation").get<double>(), 1e-12);
    const std::string csv = slurp(path("a.csv"));
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "sample_index,outcome_bits,probability");
}

TEST_F(CliTest, SpinAndFieldCommands) {
    write_text_file(path("couplings.json"),
                    R"({"beta": 0.8, "J": [{"tri": 0, "re": 0.4, "im": 0.1}, {"tri": 5, "re": -0.7}], "h": 0.2})");
    const Result exact = call({"spin", "z", "--lattice", golden("hexpatch.json"), "--couplings", path("couplings.json")});
    const Result series = call({"--threads", "2", "spin", "z", "--lattice", golden("hexpatch.json"), "--couplings",
                                path("couplings.json"), "--method", "hight"});
    ASSERT_EQ(exact.code, kExitOk) << exact.err;
    ASSERT_EQ(series.code, kExitOk) << series.err;
    const Json ze = payload(exact).at("Z"), zs = payload(series).at("Z");
    EXPECT_NEAR(ze.at("re").get<double>(), zs.at("re").get<double>(), 1e-10 * std::abs(ze.at("re").get<double>()));
    EXPECT_NEAR(ze.at("im").get<double>(), zs.at("im").get<double>(), 1e-10 * std::abs(ze.at("re").get<double>()));

    const Result ground = call({"spin", "ground", "--lattice", golden("hex_torus_3x3.json"), "--sign", "+"});
    ASSERT_EQ(ground.code, kExitOk);
    EXPECT_EQ(payload(ground).at("count").get<int>(), 4);
    for (const auto& s : payload(ground).at("states")) EXPECT_FALSE(s.at("tag").is_null());

    write_text_file(path("fields.json"), R"({"beta": 0.7, "J": 1.0, "h": 0.3})");
    const Result field = call({"verify", "field", "--lattice", golden("hexpatch.json"), "--fields", path("fields.json")});
    ASSERT_EQ(field.code, kExitOk) << field.err;
    EXPECT_LT(payload(field).at("rel_err").get<double>(), 1e-10);
    EXPECT_EQ(call({"verify", "field", "--lattice", golden("hex_torus_1x3.json"), "--fields", path("fields.json")}).code,
              kExitFailed);

    const Result info = call({"code", "info", "--in", golden("four8_torus_2x2.json")});
    EXPECT_EQ(payload(info).at("k").get<int>(), 4);

    write_text_file(path("coeffs.json"), R"({"cosh_sinh": 0.5})");
    const Result ov = call({"code", "overlap", "--in", golden("hexpatch.json"), "--coeffs", path("coeffs.json")});
    const double expect = std::pow(std::cosh(0.5), 6) + std::pow(std::sinh(0.5), 6);
    EXPECT_NEAR(payload(ov).at("dense").at("re").get<double>(), expect, 1e-14);
}

TEST_F(CliTest, CriticalScanWritesCsv) {
    const Result r = call({"spin", "critical", "--family", "tri", "--widths", "3", "--lo", "0.3", "--hi", "0.5",
                           "--step", "0.1", "--out", path("crit.csv")});
    ASSERT_EQ(r.code, kExitOk) << r.err;
    std::istringstream csv(slurp(path("crit.csv")));
    std::string line;
    std::getline(csv, line);
    EXPECT_EQ(line, "width,betaJ,free_energy,specific_heat");
    int rows = 0;
    while (std::getline(csv, line)) ++rows;
    EXPECT_EQ(rows, 3);
    EXPECT_EQ(call({"spin", "critical", "--family", "uj", "--out", path("x.csv")}).code, kExitUsage);
}

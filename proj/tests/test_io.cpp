#include <gtest/gtest.h>

#include <bit>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pwf/io/csv.hpp"
#include "pwf/io/pwf_format.hpp"
#include "pwf/pwf.hpp"
#include "test_util.hpp"

using namespace pwf;
namespace fs = std::filesystem;

namespace {

class IoTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("pwf_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                        "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string slurp(const std::string& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void dump(const std::string& p, const std::string& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out << bytes;
}

bool same_bits(const std::vector<cplx>& a, const std::vector<cplx>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(cplx)) == 0;
}

const Grid3 grid = make_grid({6, 4, 8}, {2.0, 1.5, 3.0});

}  // namespace

TEST_F(IoTest, FieldRoundTripIsBitExact) {
  auto f = pwf::testing::random_field(grid, 11, Space::momentum, Helicity::negative);
  f.time = 0.125;
  f.units = Units(0.7, 2.5);
  io::save(path("f.pwf"), f, {{"seed", 11}});
  const auto g = io::load_field(path("f.pwf"));
  EXPECT_TRUE(same_bits(g.data, f.data));
  EXPECT_EQ(g.space, Space::momentum);
  EXPECT_EQ(g.helicity, Helicity::negative);
  EXPECT_EQ(g.time, 0.125);
  EXPECT_EQ(g.units, f.units);
  EXPECT_EQ(g.grid.dims(), grid.dims());
  EXPECT_EQ(io::read_pwf(path("f.pwf")).header["metadata"]["seed"], 11);
}

TEST_F(IoTest, AmplitudeRoundTrip) {
  const auto a = random_bandlimited(grid, Units{}, 6.0, 5, Helicity::positive);
  io::save(path("a.pwf"), a, WeightChoice::unit);
  const auto l = io::amplitude_from(io::read_pwf(path("a.pwf")));
  EXPECT_TRUE(same_bits(l.amplitude.field.data, a.field.data));
  EXPECT_EQ(l.weight, WeightChoice::unit);
  EXPECT_TRUE(l.amplitude.transverse);
}

TEST_F(IoTest, RealFieldsRoundTrip) {
  auto r = pwf::testing::random_real_fields(grid, 8);
  r.time = 2.0;
  io::save(path("r.pwf"), r);
  const auto l = io::real_fields_from(io::read_pwf(path("r.pwf")));
  EXPECT_EQ(std::memcmp(l.e.data(), r.e.data(), r.e.size() * 8), 0);
  EXPECT_EQ(std::memcmp(l.b.data(), r.b.data(), r.b.size() * 8), 0);
  EXPECT_EQ(l.time, 2.0);
}

TEST_F(IoTest, TransverseAndTwoPhotonRoundTrip) {
  const auto s1 = hermite_gauss_1d(Axis(32, 10.0), 3, 1.1, Units(2.0, 1.0));
  io::save(path("s1.pwf"), s1);
  const auto l1 = std::get<TransverseState1>(io::load_transverse_state(path("s1.pwf")));
  EXPECT_TRUE(same_bits(l1.amplitude, s1.amplitude));
  EXPECT_EQ(l1.axes, s1.axes);
  EXPECT_EQ(l1.units, s1.units);

  const auto s2 = hermite_gauss_2d({Axis(8, 4.0), Axis(12, 6.0)}, 1, 2, 1.0);
  io::save(path("s2.pwf"), s2);
  const auto l2 = std::get<TransverseState2>(io::load_transverse_state(path("s2.pwf")));
  EXPECT_TRUE(same_bits(l2.amplitude, s2.amplitude));
  EXPECT_EQ(l2.axes, s2.axes);

  const auto tp = two_photon_gaussian({Axis(16, 8.0), Axis(16, 8.0)}, 0.5, 1.0);
  io::save(path("tp.pwf"), tp);
  EXPECT_TRUE(same_bits(io::load_two_photon_state(path("tp.pwf")).state.amplitude, tp.state.amplitude));
  EXPECT_THROW(io::load_two_photon_state(path("s2.pwf")), ValidationError);
  EXPECT_THROW(io::load_transverse_state(path("tp.pwf")), ValidationError);
}

TEST_F(IoTest, WignerRoundTrip) {
  const auto w = wigner_1d(hermite_gauss_1d(Axis(32, 10.0), 1, 1.0));
  io::save(path("w.pwf"), w);
  const auto l = io::load_wigner<1>(path("w.pwf"));
  EXPECT_EQ(std::memcmp(l.values.data(), w.values.data(), w.values.size() * 8), 0);
  EXPECT_EQ(l.axes, w.axes);
  EXPECT_EQ(l.hbar, w.hbar);
  EXPECT_THROW(io::load_wigner<2>(path("w.pwf")), ValidationError);
}

TEST_F(IoTest, HeaderIsOneJsonLineAndPayloadIsLittleEndian) {
  ComplexVectorField f(make_grid({2, 2, 2}, {1.0, 1.0, 1.0}), Space::coordinate);
  f.data[0] = cplx(1.5, -2.0);
  io::save(path("h.pwf"), f);
  const auto bytes = slurp(path("h.pwf"));
  const auto nl = bytes.find('\n');
  ASSERT_NE(nl, std::string::npos);
  const auto h = nlohmann::json::parse(bytes.substr(0, nl));
  EXPECT_EQ(h["format"], "pwf");
  EXPECT_EQ(h["kind"], "field");
  EXPECT_EQ(h["dtype"], "f64");
  EXPECT_EQ(h["payload_bytes"], 6u * 8u * 8u);
  EXPECT_EQ(bytes.size(), nl + 1 + 6 * 8 * 8);
  unsigned char first[8];
  std::memcpy(first, bytes.data() + nl + 1, 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | first[i];
  EXPECT_EQ(std::bit_cast<double>(v), 1.5);
}

TEST_F(IoTest, RejectsMalformedFiles) {
  EXPECT_THROW(io::read_pwf(path("missing.pwf")), IoError);

  dump(path("empty.pwf"), "");
  EXPECT_THROW(io::read_pwf(path("empty.pwf")), IoError);

  dump(path("junk.pwf"), "{not json\n");
  EXPECT_THROW(io::read_pwf(path("junk.pwf")), IoError);

  dump(path("other.pwf"), "{\"format\":\"npy\",\"schema_version\":1,\"dtype\":\"f64\",\"payload_bytes\":0}\n");
  EXPECT_THROW(io::read_pwf(path("other.pwf")), IoError);

  io::save(path("ok.pwf"), pwf::testing::random_field(grid, 1));
  const auto bytes = slurp(path("ok.pwf"));
  dump(path("trunc.pwf"), bytes.substr(0, bytes.size() - 9));
  EXPECT_THROW(io::read_pwf(path("trunc.pwf")), IoError);

  auto h = io::read_pwf(path("ok.pwf"));
  h.header["dims"] = {6, 4, 4};
  io::write_pwf(path("mismatch.pwf"), h.header, h.payload);
  EXPECT_THROW(io::load_field(path("mismatch.pwf")), IoError);

  EXPECT_THROW(io::amplitude_from(io::read_pwf(path("ok.pwf"))), ValidationError);
  EXPECT_THROW(io::write_pwf((dir_ / "no" / "such" / "dir.pwf").string(), {}, {}), IoError);
}

TEST_F(IoTest, WignerCsv) {
  const auto w = wigner_1d(hermite_gauss_1d(Axis(8, 6.0), 0, 1.0));
  io::write_wigner_csv(path("w.csv"), w, {{"hbar", "1"}});
  std::ifstream in(path("w.csv"));
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "# hbar=1");
  std::getline(in, line);
  EXPECT_EQ(line, "x,p,W");
  std::size_t rows = 0;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 64u);

  const Axis a(4, 4.0);
  const auto w2 = joint_wigner_two_photon(two_photon_gaussian({a, a}, 0.3, 1.0));
  io::write_wigner_csv(path("w2.csv"), w2);
  std::ifstream in2(path("w2.csv"));
  std::getline(in2, line);
  EXPECT_EQ(line, "i_x1,i_p1,i_x2,i_p2,x1,p1,x2,p2,W");
  rows = 0;
  while (std::getline(in2, line)) ++rows;
  EXPECT_EQ(rows, 256u);
}

TEST_F(IoTest, SagnacCsv) {
  const auto scan = sagnac_scan(hermite_gauss_1d(Axis(32, 10.0), 0, 1.0), 0, 0.0, 0.0, 1, 0.0, 0.0, 1);
  io::write_sagnac_csv(path("s.csv"), scan);
  std::ifstream in(path("s.csv"));
  std::string header, row;
  std::getline(in, header);
  std::getline(in, row);
  EXPECT_EQ(header, "x0,p0,rate,derived_W");
  EXPECT_EQ(row.substr(0, 8), "0,0,1,0.");
}

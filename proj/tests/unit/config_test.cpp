#include "maxrange/config.hpp"

#include <filesystem>
#include <functional>
#include <fstream>

#include <gtest/gtest.h>
#include <json.hpp>

#include "maxrange/error.hpp"
#include "maxrange/units.hpp"

namespace maxrange {
namespace {

const std::filesystem::path kSample = std::filesystem::path(MAXRANGE_SOURCE_DIR) / "config" / "sbj.json";

std::string sample_text() {
  std::ifstream in(kSample);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string edited(const std::function<void(nlohmann::json&)>& edit) {
  nlohmann::json j = nlohmann::json::parse(sample_text());
  edit(j);
  return j.dump();
}

TEST(ConfigTest, SampleMatchesDefaults) {
  const Config c = load_config(kSample);
  const AircraftModel def = sample_business_jet();
  EXPECT_EQ(c.aircraft.name, "SBJ");
  EXPECT_DOUBLE_EQ(c.aircraft.polar.cd0, 0.024);
  EXPECT_DOUBLE_EQ(c.aircraft.polar.k, 0.073);
  EXPECT_DOUBLE_EQ(c.aircraft.wing_area, def.wing_area);
  EXPECT_DOUBLE_EQ(c.aircraft.propulsion.c_sl, def.propulsion.c_sl);
  EXPECT_DOUBLE_EQ(c.aircraft.atmosphere.scale_height, 9042.0);
  EXPECT_DOUBLE_EQ(c.limits.speed_restriction_kias, 250.0);
}

TEST(ConfigTest, RoundTripIsIdentity) {
  const Config a = load_config(kSample);
  const std::string once = emit_config(a);
  const Config b = parse_config(once);
  EXPECT_EQ(emit_config(b), once);
  EXPECT_EQ(nlohmann::json::parse(once), nlohmann::json::parse(sample_text()));
}

TEST(ConfigTest, RoundTripPreservesEditedValues) {
  Config a;
  a.aircraft.polar.cd0 = 0.0213;
  a.aircraft.propulsion.sfc_exponent = 0.35;
  a.limits.final_approach_fix_ft = 2500.0;
  const Config b = parse_config(emit_config(a));
  EXPECT_DOUBLE_EQ(b.aircraft.polar.cd0, 0.0213);
  EXPECT_DOUBLE_EQ(b.aircraft.propulsion.sfc_exponent, 0.35);
  EXPECT_DOUBLE_EQ(b.limits.final_approach_fix_ft, 2500.0);
}

TEST(ConfigTest, NonPositiveDragRejected) {
  EXPECT_THROW(parse_config(edited([](auto& j) { j["aircraft"]["cd0"] = 0.0; })), ConfigError);
  EXPECT_THROW(parse_config(edited([](auto& j) { j["aircraft"]["cd0"] = -0.01; })), ConfigError);
}

TEST(ConfigTest, OtherValidation) {
  EXPECT_THROW(parse_config(edited([](auto& j) { j["aircraft"]["wing_area_m2"] = 0.0; })), ConfigError);
  EXPECT_THROW(parse_config(edited([](auto& j) { j["propulsion"]["idle_fraction"] = 1.5; })), ConfigError);
  EXPECT_THROW(parse_config(edited([](auto& j) { j["atmosphere"]["scale_height_m"] = -1.0; })), ConfigError);
  EXPECT_THROW(parse_config(edited([](auto& j) { j["limits"]["restriction_ceiling_ft"] = 1000.0; })), ConfigError);
}

TEST(ConfigTest, MissingKeyRejected) {
  try {
    parse_config(edited([](auto& j) { j["propulsion"].erase("c_sl_per_s"); }));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("c_sl_per_s"), std::string::npos);
  }
  EXPECT_THROW(parse_config(edited([](auto& j) { j.erase("limits"); })), ConfigError);
}

TEST(ConfigTest, UnknownKeyRejected) {
  try {
    parse_config(edited([](auto& j) { j["aircraft"]["wing_area_ft2"] = 232.5; }));
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_NE(std::string(e.what()).find("wing_area_ft2"), std::string::npos);
  }
  EXPECT_THROW(parse_config(edited([](auto& j) { j["wind"] = nlohmann::json::object(); })), ConfigError);
}

TEST(ConfigTest, NameIsOptional) {
  EXPECT_NO_THROW(parse_config(edited([](auto& j) { j["aircraft"].erase("name"); })));
}

TEST(ConfigTest, WrongTypesAndSyntax) {
  EXPECT_THROW(parse_config(edited([](auto& j) { j["aircraft"]["k"] = "0.073"; })), ConfigError);
  EXPECT_THROW(parse_config("{ not json"), ConfigError);
  EXPECT_THROW(parse_config("[]"), ConfigError);
  EXPECT_THROW(load_config("/nonexistent/sbj.json"), ConfigError);
}

TEST(ConfigTest, MissionConvertsUnits) {
  const Config c = load_config(kSample);
  const MissionSpec m = c.mission(57000.0, units::nm_to_m(400.0));
  EXPECT_DOUBLE_EQ(m.start_weight, 57000.0);
  EXPECT_NEAR(m.speed_restriction, units::kt_to_mps(250.0), 1e-12);
  EXPECT_NEAR(m.restriction_ceiling, units::ft_to_m(10000.0), 1e-9);
  EXPECT_NEAR(m.destination_altitude, units::ft_to_m(3000.0), 1e-9);
  EXPECT_NEAR(m.acceleration_altitude, units::ft_to_m(1500.0), 1e-9);
}

}  // namespace
}  // namespace maxrange

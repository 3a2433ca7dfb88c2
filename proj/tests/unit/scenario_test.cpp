#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <set>

#include "mlo/scenario.hpp"
#include "mlo/simulation.hpp"

using mlo::MldMode;
using mlo::Scenario;

namespace {

const Scenario& scheme(const std::vector<Scenario>& set, const std::string& name) {
  const auto it = std::find_if(set.begin(), set.end(),
                               [&](const Scenario& s) { return s.name == name; });
  if (it == set.end()) throw std::runtime_error("no scheme " + name);
  return *it;
}

// Number of BSSs using each channel.
std::map<mlo::ChannelId, int> channel_users(const Scenario& s) {
  std::map<mlo::ChannelId, int> users;
  for (const auto& b : s.bss)
    for (const auto& l : b.mld.links) ++users[l.channel];
  return users;
}

Scenario small(double seconds) {
  Scenario s = mlo::preset("fig4", 1.0e9)[1];
  s.duration_s = seconds;
  return s;
}

}  // namespace

TEST(Presets, Names) {
  EXPECT_EQ(mlo::preset_names(), (std::vector<std::string>{"fig2", "fig4", "fig5"}));
  EXPECT_THROW((void)mlo::preset("fig3", 1e9), std::invalid_argument);
  for (const auto& name : mlo::preset_names())
    for (const auto& s : mlo::preset(name, 1e9)) EXPECT_TRUE(mlo::validation_problems(s).empty()) << s.name;
}

TEST(Presets, ContentionFreeHasOneBss) {
  const auto set = mlo::preset("fig2", 0.5e9);
  ASSERT_EQ(set.size(), 3u);
  for (const auto& s : set) EXPECT_EQ(s.bss.size(), 1u);
  EXPECT_EQ(scheme(set, "SL").bss[0].mld.mode, MldMode::kSingleLink);
  EXPECT_EQ(scheme(set, "EMLMR:2").bss[0].mld.links.size(), 2u);
  EXPECT_EQ(scheme(set, "EMLMR:4").bss[0].mld.links.size(), 4u);
  EXPECT_EQ(scheme(set, "EMLMR:4").bss[0].mld.mode, MldMode::kStrEmlmr);
}

TEST(Presets, CrowdedSingleLinkIsOrthogonal) {
  const auto& sl = scheme(mlo::preset("fig4", 2.5e9), "SL");
  ASSERT_EQ(sl.bss.size(), 4u);
  for (const auto& [ch, n] : channel_users(sl)) EXPECT_EQ(n, 1) << "channel " << ch;
  EXPECT_EQ(channel_users(sl).size(), 4u);
}

TEST(Presets, CrowdedSharingPatterns) {
  const auto set = mlo::preset("fig4", 2.5e9);
  const auto pairs = channel_users(scheme(set, "EMLMR:2"));
  for (const auto& [ch, n] : pairs) EXPECT_EQ(n, 2);
  const auto& all = scheme(set, "EMLMR:4");
  for (const auto& [ch, n] : channel_users(all)) EXPECT_EQ(n, 4);
  for (double load : mlo::per_bss_loads(all)) EXPECT_DOUBLE_EQ(load, 0.625e9);
}

TEST(Presets, WorkaroundSchemes) {
  const auto set = mlo::preset("fig5", 1e9);
  ASSERT_EQ(set.size(), 5u);
  const auto& hybrid = scheme(set, "EMLMR:1+1");
  EXPECT_EQ(hybrid.channels.size(), 5u);
  for (const auto& b : hybrid.bss) {
    EXPECT_EQ(b.mld.mode, MldMode::kHybrid);
    EXPECT_TRUE(b.mld.links[0].reserved);
  }
  EXPECT_EQ(channel_users(hybrid).at(5), 4);
  const auto& emlsr = scheme(set, "EMLSR:2");
  EXPECT_EQ(emlsr.channels.size(), 4u);
  EXPECT_EQ(channel_users(emlsr), channel_users(scheme(set, "EMLMR:2")));
  EXPECT_EQ(scheme(set, "EMLMR:5").bss[0].mld.links.size(), 5u);
}

TEST(Validation, UnknownChannelNamesTheBss) {
  Scenario s = mlo::preset("fig4", 1e9)[0];
  s.bss[2].mld.links[0].channel = 7;
  const auto problems = mlo::validation_problems(s);
  ASSERT_EQ(problems.size(), 1u);
  EXPECT_NE(problems[0].find("bss[2] (C)"), std::string::npos) << problems[0];
  EXPECT_NE(problems[0].find("unknown channel 7"), std::string::npos);
  try {
    mlo::validate(s);
    FAIL() << "expected ValidationError";
  } catch (const mlo::ValidationError& e) {
    EXPECT_EQ(e.problems(), problems);
  }
}

TEST(Validation, CollectsEveryProblem) {
  Scenario s;
  s.duration_s = 0;
  s.warmup_fraction = 1.0;
  s.seeds.clear();
  s.dcf.cw_min = 3;
  const auto problems = mlo::validation_problems(s);
  std::set<std::string> heads;
  for (const auto& p : problems) heads.insert(p.substr(0, p.find(':')));
  for (const char* want : {"channels", "bss", "sim.duration_s", "sim.warmup_fraction", "sim.seeds", "dcf"})
    EXPECT_TRUE(heads.contains(want)) << want;
}

TEST(Validation, ReservedChannelMustBeExclusive) {
  Scenario s = mlo::preset("fig5", 1e9)[3];
  s.bss[1].mld.links[0].channel = 1;  // B now also reserves A's channel
  const auto problems = mlo::validation_problems(s);
  EXPECT_FALSE(problems.empty());
}

TEST(Validation, LoadIsRequired) {
  Scenario s = mlo::preset("fig2", 1e9)[0];
  s.total_load_bps.reset();
  EXPECT_FALSE(mlo::validation_problems(s).empty());
  s.bss[0].load_bps = 2e8;
  EXPECT_TRUE(mlo::validation_problems(s).empty());
}

TEST(Loads, ExplicitLoadsOverrideSplit) {
  Scenario s = mlo::preset("fig4", 1.2e9)[0];
  s.bss[0].load_bps = 0.6e9;
  const auto loads = mlo::per_bss_loads(s);
  EXPECT_DOUBLE_EQ(loads[0], 0.6e9);
  for (int i = 1; i < 4; ++i) EXPECT_DOUBLE_EQ(loads[i], 0.4e9);
}

TEST(Simulation, SameSeedSameReport) {
  const Scenario s = small(0.5);
  const auto a = mlo::run(s, 4);
  const auto b = mlo::run(s, 4);
  EXPECT_EQ(a, b);
  EXPECT_GT(a.events, 1000u);
  const auto c = mlo::run(s, 5);
  EXPECT_NE(a.bss[0].stats.delays_ns, c.bss[0].stats.delays_ns);
}

TEST(Simulation, ReportEchoesResolvedScenario) {
  const Scenario s = small(0.2);
  const auto r = mlo::run(s, 9);
  EXPECT_EQ(r.scheme, "EMLMR:2");
  EXPECT_EQ(r.seed, 9u);
  EXPECT_DOUBLE_EQ(r.load_bps, 1e9);
  EXPECT_DOUBLE_EQ(r.warmup_s, 0.02);
  EXPECT_NE(r.config_echo.find("seeds: [9]"), std::string::npos);
  EXPECT_EQ(r.bss.size(), 4u);
}

TEST(Simulation, RunTwiceIsAnError) {
  mlo::Simulation sim(small(0.01), 1);
  sim.run();
  EXPECT_THROW(sim.run(), std::logic_error);
}

TEST(Simulation, InvalidScenarioIsRejected) {
  Scenario s = small(1);
  s.channels = {1, 2, 3};
  EXPECT_THROW(mlo::Simulation(s, 1), mlo::ValidationError);
}

TEST(Simulation, SingleLinkSaturatesAtOneGigabit) {
  Scenario s = mlo::preset("fig2", 1e9)[0];
  s.duration_s = 10;
  const auto r = mlo::run(s, 1);
  EXPECT_TRUE(r.bss[0].summary.saturated);
  EXPECT_GT(r.bss[0].summary.drops, 0u);
  Scenario two = mlo::preset("fig2", 1e9)[1];
  two.duration_s = 10;
  EXPECT_FALSE(mlo::run(two, 1).bss[0].summary.saturated);
}

TEST(Simulation, IsolatedBssIsNeverStarved) {
  Scenario s = mlo::preset("fig2", 1.5e9)[2];
  s.duration_s = 1;
  EXPECT_EQ(mlo::run(s, 1).bss[0].summary.starvation_frac, 0.0);
  Scenario sl = mlo::preset("fig4", 2.5e9)[0];
  sl.duration_s = 1;
  for (const auto& b : mlo::run(sl, 1).bss) {
    EXPECT_EQ(b.summary.starvation_frac, 0.0);
    const auto& occ = *b.summary.occupancy;
    ASSERT_EQ(occ.size(), 2u);  // SL: n in {0, 1}
  }
}

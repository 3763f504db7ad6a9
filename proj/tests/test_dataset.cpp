#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "adlmon/dataset.hpp"
#include "support/fixtures.hpp"
#include "support/synthetic.hpp"

using namespace adlmon;

namespace {

std::filesystem::path temp_csv(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream out(path);
    out << content;
    return path;
}

} // namespace

TEST_CASE("load_csv reads the bundled sample") {
    const auto records = load_csv(adlmon::testing::data_dir() + "/sample_adl.csv");
    REQUIRE(records.size() == 20);
    CHECK(records[0].zone == "bedroom");
    CHECK(records[0].behavior == "lying");
    CHECK(records[0].activity == "sleeping");
    CHECK(records[0].accel[1] == Catch::Approx(-0.98));
    CHECK(records[11].activity == "emergency");
}

TEST_CASE("load_csv on a header-only file yields no records") {
    const auto path = temp_csv("adlmon_empty.csv",
                               "timestamp,zone,accel_x,accel_y,accel_z,gyro_x,gyro_y,gyro_z,"
                               "behavior,activity\n");
    CHECK(load_csv(path.string()).empty());
}

TEST_CASE("load_csv rejects malformed rows with the row number") {
    const std::string header =
        "timestamp,zone,accel_x,accel_y,accel_z,gyro_x,gyro_y,gyro_z,behavior,activity\n";
    SECTION("unparseable numeric") {
        const auto path =
            temp_csv("adlmon_bad1.csv", header + "1,kitchen,0.1,oops,0.3,1,2,3,standing,cooking\n");
        CHECK_THROWS_WITH(load_csv(path.string()), Catch::Matchers::ContainsSubstring("row 1"));
    }
    SECTION("unknown behavior label") {
        const auto path = temp_csv(
            "adlmon_bad2.csv", header + "1,kitchen,0.1,0.2,0.3,1,2,3,standing,cooking\n" +
                                   "2,kitchen,0.1,0.2,0.3,1,2,3,hovering,cooking\n");
        CHECK_THROWS_WITH(load_csv(path.string()), Catch::Matchers::ContainsSubstring("row 2"));
    }
    SECTION("missing required column") {
        const auto path = temp_csv("adlmon_bad3.csv", "timestamp,zone,accel_x\n1,kitchen,0.1\n");
        CHECK_THROWS_AS(load_csv(path.string()), IoError);
    }
}

TEST_CASE("custom column mapping") {
    const auto path = temp_csv("adlmon_mapped.csv",
                               "time,room,ax,ay,az,gx,gy,gz,pose,task\n"
                               "5,office,1,2,3,4,5,6,sitting,working\n");
    ColumnMapping map;
    map.timestamp = "time";
    map.zone = "room";
    map.accel_x = "ax"; map.accel_y = "ay"; map.accel_z = "az";
    map.gyro_x = "gx"; map.gyro_y = "gy"; map.gyro_z = "gz";
    map.behavior = "pose";
    map.activity = "task";
    const auto records = load_csv(path.string(), map);
    REQUIRE(records.size() == 1);
    CHECK(records[0].zone == "office");
    CHECK(records[0].timestamp == 5);
    CHECK(records[0].gyro[2] == 6.0);
}

TEST_CASE("save then load is the identity on records") {
    const auto records = adlmon::testing::separable_behavior_records(10, 7);
    const auto path = std::filesystem::temp_directory_path() / "adlmon_roundtrip.csv";
    save_csv(path.string(), records);
    CHECK(load_csv(path.string()) == records);
}

TEST_CASE("remove_outliers leaves identical records untouched") {
    std::vector<SensorRecord> records(5);
    for (auto& r : records) {
        r.zone = "kitchen";
        r.accel = {1.0, 2.0, 3.0};
        r.gyro = {4.0, 5.0, 6.0};
    }
    CHECK(remove_outliers(records, 0.5).size() == 5);
}

TEST_CASE("remove_outliers drops a far-out record") {
    // 20 tight records plus one at a huge offset on accel x. Frozen
    // expectation from a spreadsheet-style z computation: only the
    // spike exceeds |z| = 3.
    auto records = adlmon::testing::separable_behavior_records(5, 3);
    SensorRecord spike = records[0];
    spike.accel[0] = 1000.0;
    records.push_back(spike);
    const auto kept = remove_outliers(records, 3.0);
    CHECK(kept.size() == records.size() - 1);
    for (const auto& r : kept) CHECK(r.accel[0] < 100.0);
}

TEST_CASE("remove_outliers is idempotent and never empties the dataset") {
    const auto records = adlmon::testing::separable_behavior_records(25, 11);
    const auto once = remove_outliers(records, 2.5);
    CHECK_FALSE(once.empty());
    CHECK(remove_outliers(once, 2.5) == once);

    // Pathological: with two distant records, either both stay or the
    // original list is returned, never an empty result.
    std::vector<SensorRecord> two(2);
    two[0].accel = {0, 0, 0};
    two[1].accel = {100, 100, 100};
    CHECK_FALSE(remove_outliers(two, 0.1).empty());
}

TEST_CASE("remove_outliers rejects a nonpositive threshold") {
    CHECK_THROWS_AS(remove_outliers({}, 0.0), ValidationError);
}

TEST_CASE("split partitions 295 records 222/73") {
    auto records = adlmon::testing::separable_behavior_records(74, 5); // 296
    records.pop_back();                                                // 295
    const auto sd = split(records, 0.75, 42);
    CHECK(sd.train.size() == 222);
    CHECK(sd.test.size() == 73);
}

TEST_CASE("split handles two records at 0.5") {
    const auto records = adlmon::testing::separable_behavior_records(1, 1); // 4 records
    std::vector<SensorRecord> two(records.begin(), records.begin() + 2);
    const auto sd = split(two, 0.5, 0);
    CHECK(sd.train.size() == 1);
    CHECK(sd.test.size() == 1);
}

TEST_CASE("split is deterministic and partition-complete") {
    const auto records = adlmon::testing::separable_behavior_records(30, 9);
    const auto a = split(records, 0.75, 123);
    const auto b = split(records, 0.75, 123);
    CHECK(a.train == b.train);
    CHECK(a.test == b.test);
    CHECK(a.train.size() + a.test.size() == records.size());

    // Different seed shuffles differently (overwhelmingly likely).
    const auto c = split(records, 0.75, 124);
    CHECK(c.train.size() == a.train.size());
    CHECK(c.train != a.train);
}

TEST_CASE("split is label-stratified within one record per class") {
    const auto records = adlmon::testing::separable_behavior_records(25, 2);
    const double frac = 0.75;
    const auto sd = split(records, frac, 77);
    std::map<std::string, std::size_t> train_count, total_count;
    for (const auto& r : sd.train) ++train_count[*r.behavior];
    for (const auto& r : records) ++total_count[*r.behavior];
    for (const auto& [cls, total] : total_count) {
        const double expected = frac * static_cast<double>(total);
        CHECK(std::abs(static_cast<double>(train_count[cls]) - expected) <= 1.0);
    }
}

TEST_CASE("split rejects out-of-range fractions") {
    CHECK_THROWS_AS(split({}, 0.0, 0), ValidationError);
    CHECK_THROWS_AS(split({}, 1.0, 0), ValidationError);
}

TEST_CASE("feature extraction") {
    const auto records = load_csv(adlmon::testing::data_dir() + "/sample_adl.csv");
    const auto zidx = zone_indices(records);
    REQUIRE(zidx.size() == 4);
    CHECK(zidx.at("bedroom") == 0); // sorted order

    const auto feats = extract_features(records, {"ax", "ay", "az"});
    REQUIRE(feats.size() == records.size());
    CHECK(feats[0] == std::vector<double>{0.12, -0.98, 0.05});

    const auto with_zone = extract_features(records, {"gx", "zone"}, zidx);
    CHECK(with_zone[0][1] == 0.0);

    CHECK_THROWS_AS(extract_features(records, {"bogus"}), ValidationError);
    CHECK_THROWS_AS(extract_features(records, {"behavior"}), ValidationError);
}

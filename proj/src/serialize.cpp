#include "voa/serialize.hpp"

#include "voa/errors.hpp"

#include "json.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>

namespace voa {

using nlohmann::json;

std::string format_double(double value)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, res.ptr);
}

std::string to_csv(const SimilarityMatrix& matrix)
{
    std::ostringstream out;
    out << "id";
    for (const auto& id : matrix.ids)
        out << ',' << id;
    out << '\n';
    const std::size_t n = matrix.size();
    for (std::size_t i = 0; i < n; ++i) {
        out << matrix.ids[i];
        for (std::size_t j = 0; j < n; ++j)
            out << ',' << format_double(matrix.at(i, j));
        out << '\n';
    }
    return out.str();
}

std::string observation_to_csv(const Observation& obs)
{
    std::ostringstream out;
    if (std::holds_alternative<LidarScan>(obs)) {
        const auto& scan = std::get<LidarScan>(obs);
        out << "bearing_deg,range_m\n";
        for (std::size_t i = 0; i < scan.ranges.size(); ++i)
            out << i << ',' << format_double(scan.ranges[i]) << '\n';
    } else {
        const auto& image = std::get<DepthImage>(obs);
        out << "row,col,depth_m\n";
        for (int r = 0; r < image.height; ++r)
            for (int c = 0; c < image.width; ++c)
                out << r << ',' << c << ',' << format_double(image.at(r, c)) << '\n';
    }
    return out.str();
}

namespace {

json observation_to_json(const Observation& obs)
{
    json entry;
    if (std::holds_alternative<LidarScan>(obs)) {
        const auto& scan = std::get<LidarScan>(obs);
        entry["kind"] = "lidar";
        entry["max_range"] = scan.max_range;
        entry["values"] = std::vector<double>(scan.ranges.begin(), scan.ranges.end());
    } else {
        const auto& image = std::get<DepthImage>(obs);
        entry["kind"] = "depth";
        entry["width"] = image.width;
        entry["height"] = image.height;
        entry["values"] = image.values;
    }
    return entry;
}

Observation observation_from_json(const json& entry)
{
    const std::string kind = entry.at("kind").get<std::string>();
    if (kind == "lidar") {
        LidarScan scan;
        scan.max_range = entry.at("max_range").get<double>();
        const auto values = entry.at("values").get<std::vector<double>>();
        if (values.size() != scan.ranges.size())
            throw InputError("lidar cache entry does not have 360 values");
        std::copy(values.begin(), values.end(), scan.ranges.begin());
        return scan;
    }
    if (kind == "depth") {
        DepthImage image;
        image.width = entry.at("width").get<int>();
        image.height = entry.at("height").get<int>();
        image.values = entry.at("values").get<std::vector<double>>();
        if (image.values.size() !=
            static_cast<std::size_t>(image.width) * static_cast<std::size_t>(image.height))
            throw InputError("depth cache entry dimensions do not match its values");
        return image;
    }
    throw InputError("unknown observation kind '" + kind + "' in cache");
}

} // namespace

std::string observation_cache_to_json(const PrecomputedObservations& cache)
{
    json root;
    root["schema"] = "voa-obs-cache/1";
    json entries = json::array();
    for (std::size_t c = 0; c < cache.config_ids.size(); ++c) {
        for (std::size_t p = 0; p < cache.pose_ids.size(); ++p) {
            json entry = observation_to_json(cache.at(c, p));
            entry["config"] = cache.config_ids[c];
            entry["pose"] = cache.pose_ids[p];
            entries.push_back(std::move(entry));
        }
    }
    root["entries"] = std::move(entries);
    return root.dump(2) + "\n";
}

PrecomputedObservations observation_cache_from_json(const std::string& text)
{
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("observation cache is not valid JSON: ") + e.what());
    }
    if (root.value("schema", "") != "voa-obs-cache/1")
        throw InputError("observation cache has unknown schema");

    PrecomputedObservations cache;
    for (const auto& entry : root.at("entries")) {
        const std::string config = entry.at("config").get<std::string>();
        const std::string pose = entry.at("pose").get<std::string>();
        std::size_t c = 0;
        for (; c < cache.config_ids.size(); ++c)
            if (cache.config_ids[c] == config)
                break;
        if (c == cache.config_ids.size()) {
            cache.config_ids.push_back(config);
            cache.observations.emplace_back();
        }
        std::size_t p = 0;
        for (; p < cache.pose_ids.size(); ++p)
            if (cache.pose_ids[p] == pose)
                break;
        if (p == cache.pose_ids.size())
            cache.pose_ids.push_back(pose);
        if (cache.observations[c].size() != p)
            throw InputError("observation cache entries are out of order");
        cache.observations[c].push_back(observation_from_json(entry));
    }
    for (const auto& row : cache.observations)
        if (row.size() != cache.pose_ids.size())
            throw InputError("observation cache does not cover every pose-config pair");
    return cache;
}

std::string belief_to_json(const Belief& belief)
{
    json arr = json::array();
    for (std::size_t i = 0; i < belief.size(); ++i) {
        json entry;
        entry["id"] = belief.ids[i];
        entry["category"] = belief.poses[i].category;
        entry["theta"] = belief.poses[i].theta;
        entry["x"] = belief.poses[i].x;
        entry["y"] = belief.poses[i].y;
        entry["weight"] = belief.weights[i];
        arr.push_back(std::move(entry));
    }
    return arr.dump(2) + "\n";
}

Belief belief_from_json(const std::string& text)
{
    json arr;
    try {
        arr = json::parse(text);
    } catch (const json::exception& e) {
        throw InputError(std::string("belief file is not valid JSON: ") + e.what());
    }
    Belief belief;
    for (const auto& entry : arr) {
        belief.ids.push_back(entry.at("id").get<std::string>());
        Pose pose;
        pose.category = entry.at("category").get<std::string>();
        pose.theta = entry.at("theta").get<double>();
        pose.x = entry.at("x").get<double>();
        pose.y = entry.at("y").get<double>();
        belief.poses.push_back(std::move(pose));
        belief.weights.push_back(entry.at("weight").get<double>());
    }
    validate_belief(belief);
    return belief;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw InputError("cannot write file '" + path.string() + "'");
    out << text;
    if (!out)
        throw InputError("failed while writing '" + path.string() + "'");
}

std::string read_text_file(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw InputError("cannot open file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace voa

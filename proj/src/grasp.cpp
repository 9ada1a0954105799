#include "voa/grasp.hpp"

#include "voa/errors.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace voa {
namespace {

[[noreturn]] void fail(const std::string& name, int line, const std::string& what)
{
    throw InputError(name + ":" + std::to_string(line) + ": " + what);
}

std::vector<std::string> split_csv_line(const std::string& line)
{
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    if (!line.empty() && line.back() == ',')
        cells.push_back("");
    return cells;
}

double parse_score(const std::string& name, int line, const std::string& token)
{
    double value = 0.0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size())
        fail(name, line, "'" + token + "' is not a number");
    if (value < 0.0 || value > 1.0)
        fail(name, line, "score " + token + " outside [0, 1]");
    return value;
}

} // namespace

GraspScoreTable::GraspScoreTable(std::vector<std::string> pose_ids,
                                 std::vector<std::string> grasp_ids, std::vector<double> scores)
    : pose_ids_(std::move(pose_ids)), grasp_ids_(std::move(grasp_ids)), scores_(std::move(scores))
{
    if (pose_ids_.empty() || grasp_ids_.empty())
        throw InputError("grasp score table must have at least one pose and one grasp");
    if (scores_.size() != pose_ids_.size() * grasp_ids_.size())
        throw InputError("grasp score table is incomplete");
    for (double s : scores_)
        if (s < 0.0 || s > 1.0)
            throw InputError("grasp scores must lie in [0, 1]");
    for (std::size_t i = 0; i < pose_ids_.size(); ++i)
        if (!pose_lookup_.emplace(pose_ids_[i], i).second)
            throw InputError("duplicate pose id '" + pose_ids_[i] + "' in grasp score table");
    for (std::size_t i = 0; i < grasp_ids_.size(); ++i)
        if (!grasp_lookup_.emplace(grasp_ids_[i], i).second)
            throw InputError("duplicate grasp id '" + grasp_ids_[i] + "' in grasp score table");
}

GraspScoreTable GraspScoreTable::from_csv(std::istream& in, const std::string& name)
{
    std::string line;
    int lineno = 0;
    if (!std::getline(in, line))
        throw InputError(name + ": empty grasp score table");
    ++lineno;
    auto header = split_csv_line(line);
    if (header.size() < 2)
        fail(name, lineno, "header needs a pose column and at least one grasp id");
    std::vector<std::string> grasp_ids(header.begin() + 1, header.end());

    std::vector<std::string> pose_ids;
    std::vector<double> scores;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        auto cells = split_csv_line(line);
        if (cells.size() != grasp_ids.size() + 1)
            fail(name, lineno,
                 "expected " + std::to_string(grasp_ids.size() + 1) + " cells, got " +
                     std::to_string(cells.size()));
        pose_ids.push_back(cells[0]);
        for (std::size_t g = 0; g < grasp_ids.size(); ++g)
            scores.push_back(parse_score(name, lineno, cells[g + 1]));
    }
    return GraspScoreTable(std::move(pose_ids), std::move(grasp_ids), std::move(scores));
}

GraspScoreTable GraspScoreTable::from_csv_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open grasp score table '" + path.string() + "'");
    return from_csv(in, path.string());
}

GraspScoreTable GraspScoreTable::from_attempts_csv(std::istream& in, const std::string& name)
{
    std::string line;
    int lineno = 0;
    // Ordered maps keep the table rows/columns sorted by id.
    std::map<std::string, std::map<std::string, std::pair<long, long>>> counts;
    std::vector<std::string> pose_order, grasp_order;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty())
            continue;
        if (lineno == 1 && line.rfind("pose,", 0) == 0)
            continue; // optional header
        auto cells = split_csv_line(line);
        if (cells.size() != 3)
            fail(name, lineno, "expected pose,grasp,success");
        if (cells[2] != "0" && cells[2] != "1")
            fail(name, lineno, "success flag must be 0 or 1");
        auto& entry = counts[cells[0]][cells[1]];
        entry.first += cells[2] == "1" ? 1 : 0;
        entry.second += 1;
        if (std::find(pose_order.begin(), pose_order.end(), cells[0]) == pose_order.end())
            pose_order.push_back(cells[0]);
        if (std::find(grasp_order.begin(), grasp_order.end(), cells[1]) == grasp_order.end())
            grasp_order.push_back(cells[1]);
    }
    if (counts.empty())
        throw InputError(name + ": no grasp attempts");
    std::vector<double> scores;
    for (const auto& pose : pose_order) {
        for (const auto& grasp : grasp_order) {
            const auto pit = counts.find(pose);
            const auto git = pit->second.find(grasp);
            if (git == pit->second.end())
                throw InputError(name + ": no attempts recorded for pose '" + pose +
                                 "', grasp '" + grasp + "'");
            scores.push_back(static_cast<double>(git->second.first) /
                             static_cast<double>(git->second.second));
        }
    }
    return GraspScoreTable(pose_order, grasp_order, std::move(scores));
}

GraspScoreTable GraspScoreTable::from_attempts_csv_file(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError("cannot open attempts log '" + path.string() + "'");
    return from_attempts_csv(in, path.string());
}

std::size_t GraspScoreTable::pose_index(const std::string& pose_id) const
{
    const auto it = pose_lookup_.find(pose_id);
    if (it == pose_lookup_.end())
        throw InputError("pose id '" + pose_id + "' is not in the grasp score table");
    return it->second;
}

std::size_t GraspScoreTable::grasp_index(const std::string& grasp_id) const
{
    const auto it = grasp_lookup_.find(grasp_id);
    if (it == grasp_lookup_.end())
        throw InputError("grasp id '" + grasp_id + "' is not in the grasp score table");
    return it->second;
}

double GraspScoreTable::score(const std::string& grasp_id, const std::string& pose_id) const
{
    return score_at(pose_index(pose_id), grasp_index(grasp_id));
}

double expected_score_rows(const GraspScoreTable& table, std::size_t grasp,
                           std::span<const std::size_t> pose_rows, std::span<const double> weights)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < pose_rows.size(); ++i)
        acc += weights[i] * table.score_at(pose_rows[i], grasp);
    return acc;
}

std::size_t best_grasp_rows(const GraspScoreTable& table, std::span<const std::size_t> pose_rows,
                            std::span<const double> weights)
{
    const auto& grasps = table.grasp_ids();
    std::size_t best = 0;
    double best_score = expected_score_rows(table, 0, pose_rows, weights);
    for (std::size_t g = 1; g < grasps.size(); ++g) {
        const double s = expected_score_rows(table, g, pose_rows, weights);
        if (s > best_score || (s == best_score && grasps[g] < grasps[best])) {
            best = g;
            best_score = s;
        }
    }
    return best;
}

double expected_grasp_score(const GraspScoreTable& table, const std::string& grasp_id,
                            std::span<const WeightedPose> belief)
{
    const std::size_t grasp = table.grasp_index(grasp_id);
    double acc = 0.0;
    for (const auto& wp : belief)
        acc += wp.weight * table.score_at(table.pose_index(wp.pose_id), grasp);
    return acc;
}

GraspChoice maximal_grasp(const GraspScoreTable& table, std::span<const WeightedPose> belief)
{
    std::vector<std::size_t> rows;
    std::vector<double> weights;
    rows.reserve(belief.size());
    weights.reserve(belief.size());
    for (const auto& wp : belief) {
        rows.push_back(table.pose_index(wp.pose_id));
        weights.push_back(wp.weight);
    }
    const std::size_t g = best_grasp_rows(table, rows, weights);
    return {table.grasp_ids()[g], expected_score_rows(table, g, rows, weights)};
}

} // namespace voa

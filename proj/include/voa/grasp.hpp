#pragma once

#include <filesystem>
#include <istream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace voa {

// Empirical grasp-success probabilities, keyed by (grasp id, pose id).
// Complete: every pair holds a score in [0, 1]. Read-only after load.
class GraspScoreTable {
public:
    GraspScoreTable(std::vector<std::string> pose_ids, std::vector<std::string> grasp_ids,
                    std::vector<double> scores); // row-major [pose][grasp]

    // CSV with a header row of grasp ids and a leading pose-id column.
    static GraspScoreTable from_csv(std::istream& in, const std::string& name = "<stream>");
    static GraspScoreTable from_csv_file(const std::filesystem::path& path);

    // Raw attempts log (pose,grasp,success columns, success in {0,1});
    // scores are the per-pair success ratios. Every pair must appear.
    static GraspScoreTable from_attempts_csv(std::istream& in,
                                             const std::string& name = "<stream>");
    static GraspScoreTable from_attempts_csv_file(const std::filesystem::path& path);

    const std::vector<std::string>& pose_ids() const { return pose_ids_; }
    const std::vector<std::string>& grasp_ids() const { return grasp_ids_; }

    std::size_t pose_index(const std::string& pose_id) const;   // throws InputError
    std::size_t grasp_index(const std::string& grasp_id) const; // throws InputError

    double score_at(std::size_t pose, std::size_t grasp) const
    {
        return scores_[pose * grasp_ids_.size() + grasp];
    }
    double score(const std::string& grasp_id, const std::string& pose_id) const;

private:
    std::vector<std::string> pose_ids_;
    std::vector<std::string> grasp_ids_;
    std::vector<double> scores_; // row-major [pose][grasp]
    std::unordered_map<std::string, std::size_t> pose_lookup_;
    std::unordered_map<std::string, std::size_t> grasp_lookup_;
};

struct WeightedPose {
    std::string pose_id;
    double weight = 0.0;
};

struct GraspChoice {
    std::string grasp_id;
    double expected_score = 0.0;
};

// Expected score of one grasp under a weighted pose set:
// sum_p weight(p) * score(grasp, p), accumulated in pose order.
double expected_grasp_score(const GraspScoreTable& table, const std::string& grasp_id,
                            std::span<const WeightedPose> belief);

// Grasp maximizing the expected score; exact ties go to the smallest grasp id.
GraspChoice maximal_grasp(const GraspScoreTable& table, std::span<const WeightedPose> belief);

// Index-based equivalents used by the inner loops; pose_rows[i] is the table
// row scored with weights[i]. Accumulation order matches the string variants.
double expected_score_rows(const GraspScoreTable& table, std::size_t grasp,
                           std::span<const std::size_t> pose_rows, std::span<const double> weights);
std::size_t best_grasp_rows(const GraspScoreTable& table, std::span<const std::size_t> pose_rows,
                            std::span<const double> weights);

} // namespace voa

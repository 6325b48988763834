// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "lpcs/annotation.hpp"
#include "lpcs/metric.hpp"
#include "lpcs/ocr.hpp"
#include "lpcs/segment.hpp"
#include "lpcs/synth.hpp"

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace lpcs {

/// Vehicle-level partition of a dataset, 40/20/40 by vehicle count. Frames
/// of one vehicle never straddle partitions.
struct Split {
    std::vector<std::string> train;
    std::vector<std::string> validation;
    std::vector<std::string> test;
};

/// One plate ready for evaluation: the plate crop and the seven truth boxes
/// in crop coordinates.
struct EvalCase {
    GrayImage plate;
    std::vector<Box> truth; // exactly 7, left to right
    std::string text;
};

struct CurvePoint {
    double threshold;
    double fraction;
};

/// Aggregates for one segmenter over one corpus, plus the two threshold
/// sweeps. Curves are non-increasing by construction.
struct EvalReport {
    SegmenterId segmenter = SegmenterId::IterativeProposed;
    int n_plates = 0;
    int n_chars = 0;
    double mean_jaccard = 0.0;
    double mean_delta_c = 0.0; ///< over matched characters only
    double mean_jc = 0.0;
    std::vector<CurvePoint> char_curve;
    std::vector<CurvePoint> plate_curve;

    double char_rate_at(double threshold) const;
    double plate_rate_at(double threshold) const;
};

/// One matched character detection, the currency of the recognizer-coupling
/// experiments. jc can be recomputed for any penalty constant from jaccard
/// and delta_c.
struct CharDetection {
    int case_index = 0;
    int truth_index = 0; ///< 0..2 letters, 3..6 digits
    Box box;
    double jaccard = 0.0;
    double delta_c = 0.0;
    char label = '?';
};

using SegmentFn = std::function<Segmentation(const GrayImage&)>;

/// Annotation files (<name>.txt with sibling <name>.png) in one flat
/// directory, sorted by name. tracks.csv (`name,vehicle_id` lines) assigns
/// vehicles; without it every image is its own vehicle.
std::vector<PlateAnnotation> load_dataset(const std::string& dir);

/// Vehicles are shuffled by seed and split 40/20/40 (integer remainder goes
/// to test). Requires at least five distinct vehicles.
Split split_dataset(const std::vector<PlateAnnotation>& plates, std::uint64_t seed);

std::vector<PlateAnnotation> filter_by_vehicles(
    const std::vector<PlateAnnotation>& plates, const std::vector<std::string>& vehicles);

/// Loads images and crops plate boxes. invert flips polarity for
/// light-on-dark plates.
std::vector<EvalCase> make_cases(std::span<const PlateAnnotation> annotations,
                                 bool invert = false);
std::vector<EvalCase> make_cases(const std::vector<GeneratedPlate>& plates);

/// Runs the segmenter over every case and aggregates character and plate
/// scores; the curves sweep thresholds 0.05..1.00 in 0.05 steps. A per-plate
/// failure scores zero and is reported on stderr. Results are bit-identical
/// for any worker count.
EvalReport evaluate(SegmenterId id, const std::vector<EvalCase>& cases,
                    const JcParams& p = {}, int workers = 1);
EvalReport evaluate_with(const SegmentFn& fn, SegmenterId tag,
                         const std::vector<EvalCase>& cases, const JcParams& p = {},
                         int workers = 1);

/// Matched detections for downstream recognizer experiments.
std::vector<CharDetection> collect_detections(SegmenterId id,
                                              const std::vector<EvalCase>& cases,
                                              const JcParams& p = {});
std::vector<CharDetection> collect_detections_with(const SegmentFn& fn,
                                                   const std::vector<EvalCase>& cases,
                                                   const JcParams& p = {});

/// Recognizer accuracy over chips cropped at the given detections, with the
/// class set restricted by plate position. Letter and digit rates are also
/// reported separately.
struct OcrEval {
    double overall = 0.0;
    double letters = 0.0;
    double digits = 0.0;
    int n_letters = 0;
    int n_digits = 0;
};
OcrEval ocr_eval_boxes(const OcrModel& model, const std::vector<EvalCase>& cases,
                       std::span<const CharDetection> dets);

/// Penalty-constant sweep: for each candidate the detections are ranked by
/// jc at that constant, the top 20% go through the recognizer, and the
/// candidate with the best accuracy wins (ties to the smaller constant).
struct TuneResult {
    double best_c = 0.0;
    std::vector<std::pair<double, double>> accuracy_by_c;
    double jaccard_baseline = 0.0; ///< same protocol ranked by plain overlap
};
TuneResult tune_c(const OcrModel& model, const std::vector<EvalCase>& cases,
                  std::span<const CharDetection> dets, std::span<const double> candidates);
TuneResult tune_c(const OcrModel& model, const std::vector<EvalCase>& cases,
                  SegmenterId id, std::span<const double> candidates,
                  const JcParams& p = {});

/// Recognition rate over the top-k% best-ranked characters, k = 5..100 in
/// steps of 5, ranked independently by overlap and by the centroid-weighted
/// score.
struct RankCurvePoint {
    int percent;
    double accuracy_by_jaccard;
    double accuracy_by_jc;
};
std::vector<RankCurvePoint> ocr_rank_curve(const OcrModel& model,
                                           const std::vector<EvalCase>& cases,
                                           std::span<const CharDetection> dets,
                                           const JcParams& p = {});

/// Comparison table in fixed row order, as CSV text.
std::string summarize(const std::vector<EvalReport>& reports);

void write_summary_csv(const std::vector<EvalReport>& reports, const std::string& path);
void write_curve_csvs(const EvalReport& report, const std::string& out_dir);
void write_rank_curve_csv(const std::vector<RankCurvePoint>& curve, const std::string& path);

} // namespace lpcs

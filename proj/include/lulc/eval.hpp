#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lulc/raster.hpp"
#include "lulc/scheme.hpp"

namespace lulc {

/// Argmax class of one probability vector (entry p is class p + 1), except
/// that a winning Negative is replaced by the runner-up among the remaining
/// classes. Ties go to the lowest class index.
ClassIndex relabel_negative(std::span<const float> probs, ClassIndex negative_class);

/// relabel_negative applied per pixel. Throws ValidationError when the scheme
/// has no Negative class or its class count differs from the raster's.
MaskRaster relabel_negative(const ProbRaster& probs, const ClassScheme& scheme);

/// Truth x prediction counts over pixels whose truth is nonzero. Rows and
/// columns are class indices 0..K; row 0 stays empty and column 0 counts
/// pixels the prediction left unlabeled.
class ConfusionMatrix {
public:
    ConfusionMatrix() = default;
    explicit ConfusionMatrix(ClassScheme scheme);

    const ClassScheme& scheme() const { return scheme_; }
    std::size_t size() const { return n_; }  ///< K + 1
    std::uint64_t at(std::size_t truth, std::size_t pred) const { return counts_[truth * n_ + pred]; }
    std::uint64_t& at(std::size_t truth, std::size_t pred) { return counts_[truth * n_ + pred]; }
    std::uint64_t total() const;
    std::uint64_t row_sum(std::size_t truth) const;
    std::uint64_t col_sum(std::size_t pred) const;
    std::uint64_t trace() const;
    void merge(const ConfusionMatrix& other);

    bool operator==(const ConfusionMatrix&) const = default;

private:
    ClassScheme scheme_;
    std::size_t n_ = 0;
    std::vector<std::uint64_t> counts_;
};

/// Throws ValidationError on grid mismatch or values outside the scheme.
/// With `extent`, only pixels inside it are counted.
ConfusionMatrix confusion(const MaskRaster& pred, const MaskRaster& truth, const ClassScheme& scheme,
                          const Extent* extent = nullptr);

struct ClassMetrics {
    ClassIndex cls = 0;
    std::string name;
    std::uint64_t support = 0;  ///< truth pixels of the class
    std::uint64_t tp = 0, fp = 0, fn = 0, tn = 0;
    double accuracy = 0.0;
    double precision = 0.0;  ///< 0 when nothing was predicted as the class
    double recall = 0.0;
    double f1 = 0.0;
    double iou = 0.0;
    bool iou_defined = false;
};

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;  ///< population standard deviation
};

struct MetricsReport {
    std::string scheme;
    std::string set;  ///< whole | test | external
    std::uint64_t total = 0;
    std::uint64_t unpredicted = 0;
    std::vector<ClassMetrics> classes;       ///< every labeled class of the scheme
    std::vector<std::string> absent;         ///< classes without truth pixels, excluded from macro
    MeanStd accuracy, precision, recall, f1, iou;
};

/// One-vs-all metrics per class, macro mean and population std over classes
/// with truth pixels. Throws ValidationError when the matrix is empty.
MetricsReport metrics(const ConfusionMatrix& cm, const std::string& set = "whole");

struct AgreementResult {
    double value = 0.0;
    bool defined = false;  ///< false when no pixel is valid in both maps
    std::uint64_t agree = 0;
    std::uint64_t valid = 0;

    bool operator==(const AgreementResult&) const = default;
};

/// Fraction of pixels on which both harmonized maps carry the same class,
/// among pixels valid in both. A pixel is invalid in a map when its harmonized
/// class is 0 or the table's Others class. Both tables must share a target
/// scheme and the maps a grid.
AgreementResult agreement(const MaskRaster& a, const MaskRaster& b, const RemapTable& harmonize_a,
                          const RemapTable& harmonize_b);

struct AgreementMatrix {
    std::vector<std::string> names;
    std::vector<std::vector<AgreementResult>> cells;
};

/// Pairwise agreement; each unordered pair is computed once so the matrix is
/// exactly symmetric, with a diagonal of exactly 1.
AgreementMatrix agreement_matrix(const std::vector<MaskRaster>& maps, const std::vector<RemapTable>& tables,
                                 const std::vector<std::string>& names);

struct AreaRow {
    std::string name;
    std::uint64_t pixels = 0;
    double area_m2 = 0.0;
    double area_km2 = 0.0;
    double percent = 0.0;  ///< of the whole grid
};

struct AreaTable {
    std::string scheme;
    std::vector<AreaRow> classes;  ///< labeled classes in index order
    AreaRow unlabeled;
    AreaRow all;                   ///< sum over labeled classes
    double grid_area_m2 = 0.0;
};

/// Per-class area (pixel count * res²) and share of the grid.
/// Throws ValidationError for values outside the scheme.
AreaTable area_coverage(const MaskRaster& map, const ClassScheme& scheme);

}  // namespace lulc

#include "lulc/eval.hpp"

#include <cmath>
#include <sstream>

#include "lulc/error.hpp"
#include "lulc/parallel.hpp"

namespace lulc {

ClassIndex relabel_negative(std::span<const float> probs, ClassIndex negative_class) {
    if (probs.empty()) throw ValidationError("relabel_negative: empty probability vector");
    const std::size_t neg_plane = negative_class - 1u;
    std::size_t best = 0;
    for (std::size_t p = 1; p < probs.size(); ++p)
        if (probs[p] > probs[best]) best = p;
    if (best != neg_plane) return ProbRaster::class_of_plane(best);
    std::size_t second = probs.size();
    for (std::size_t p = 0; p < probs.size(); ++p) {
        if (p == neg_plane) continue;
        if (second == probs.size() || probs[p] > probs[second]) second = p;
    }
    if (second == probs.size()) throw ValidationError("relabel_negative: Negative is the only class");
    return ProbRaster::class_of_plane(second);
}

MaskRaster relabel_negative(const ProbRaster& probs, const ClassScheme& scheme) {
    const auto neg = scheme.negative_index();
    if (!neg) throw ValidationError("scheme '" + scheme.name() + "' has no Negative class to relabel");
    if (probs.classes() != scheme.class_count()) {
        std::ostringstream os;
        os << "probability raster has " << probs.classes() << " classes, scheme '" << scheme.name() << "' has "
           << scheme.class_count();
        throw ValidationError(os.str());
    }
    const Grid& g = probs.grid();
    MaskRaster out(g);
    parallel::for_chunks(g.height, 16, [&](std::size_t r0, std::size_t r1) {
        std::vector<float> v(probs.classes());
        for (std::size_t r = r0; r < r1; ++r) {
            for (std::size_t c = 0; c < g.width; ++c) {
                for (std::size_t p = 0; p < v.size(); ++p) v[p] = probs.at(p, c, r);
                out.at(c, r) = relabel_negative(v, *neg);
            }
        }
    });
    return out;
}

ConfusionMatrix::ConfusionMatrix(ClassScheme scheme)
    : scheme_(std::move(scheme)), n_(scheme_.size()), counts_(n_ * n_, 0) {}

std::uint64_t ConfusionMatrix::total() const {
    std::uint64_t t = 0;
    for (auto v : counts_) t += v;
    return t;
}

std::uint64_t ConfusionMatrix::row_sum(std::size_t truth) const {
    std::uint64_t t = 0;
    for (std::size_t p = 0; p < n_; ++p) t += at(truth, p);
    return t;
}

std::uint64_t ConfusionMatrix::col_sum(std::size_t pred) const {
    std::uint64_t t = 0;
    for (std::size_t r = 0; r < n_; ++r) t += at(r, pred);
    return t;
}

std::uint64_t ConfusionMatrix::trace() const {
    std::uint64_t t = 0;
    for (std::size_t c = 1; c < n_; ++c) t += at(c, c);
    return t;
}

void ConfusionMatrix::merge(const ConfusionMatrix& other) {
    if (other.n_ != n_) throw ValidationError("cannot merge confusion matrices of different sizes");
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

ConfusionMatrix confusion(const MaskRaster& pred, const MaskRaster& truth, const ClassScheme& scheme,
                          const Extent* extent) {
    if (!(pred.grid() == truth.grid())) throw ValidationError("confusion: prediction and truth grids differ");
    check_mask_in_scheme(pred, scheme);
    check_mask_in_scheme(truth, scheme);
    const Extent ext = extent ? *extent : Extent::full(truth.grid());
    validate_extent(truth.grid(), ext);

    const std::size_t rows = ext.height();
    const std::size_t grain = 64;
    std::vector<ConfusionMatrix> parts(parallel::chunk_count(rows, grain), ConfusionMatrix(scheme));
    parallel::for_chunks(rows, grain, [&](std::size_t b, std::size_t e) {
        ConfusionMatrix& cm = parts[b / grain];
        for (std::size_t r = ext.row_begin + b; r < ext.row_begin + e; ++r) {
            for (std::size_t c = ext.col_begin; c < ext.col_end; ++c) {
                const ClassIndex t = truth.at(c, r);
                if (t != 0) ++cm.at(t, pred.at(c, r));
            }
        }
    });
    ConfusionMatrix out(scheme);
    for (const auto& p : parts) out.merge(p);
    return out;
}

namespace {

MeanStd mean_std(const std::vector<double>& v) {
    MeanStd m;
    if (v.empty()) return m;
    double s = 0.0;
    for (double x : v) s += x;
    m.mean = s / static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - m.mean) * (x - m.mean);
    m.std = std::sqrt(ss / static_cast<double>(v.size()));
    return m;
}

double ratio(std::uint64_t num, std::uint64_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

}  // namespace

MetricsReport metrics(const ConfusionMatrix& cm, const std::string& set) {
    MetricsReport rep;
    rep.scheme = cm.scheme().name();
    rep.set = set;
    rep.total = cm.total();
    if (rep.total == 0) throw ValidationError("metrics: confusion matrix is empty (no labeled truth pixels)");
    rep.unpredicted = cm.col_sum(0);

    std::vector<double> acc, prec, rec, f1, iou;
    for (std::size_t c = 1; c < cm.size(); ++c) {
        ClassMetrics m;
        m.cls = static_cast<ClassIndex>(c);
        m.name = cm.scheme().name_of(m.cls);
        m.support = cm.row_sum(c);
        m.tp = cm.at(c, c);
        m.fp = cm.col_sum(c) - m.tp;
        m.fn = m.support - m.tp;
        m.tn = rep.total - m.tp - m.fp - m.fn;
        m.accuracy = ratio(m.tp + m.tn, rep.total);
        m.precision = ratio(m.tp, m.tp + m.fp);
        m.recall = ratio(m.tp, m.tp + m.fn);
        m.f1 = m.precision + m.recall > 0 ? 2 * m.precision * m.recall / (m.precision + m.recall) : 0.0;
        m.iou_defined = m.tp + m.fp + m.fn > 0;
        m.iou = ratio(m.tp, m.tp + m.fp + m.fn);
        if (m.support == 0) {
            rep.absent.push_back(m.name);
        } else {
            acc.push_back(m.accuracy);
            prec.push_back(m.precision);
            rec.push_back(m.recall);
            f1.push_back(m.f1);
            iou.push_back(m.iou);
        }
        rep.classes.push_back(std::move(m));
    }
    rep.accuracy = mean_std(acc);
    rep.precision = mean_std(prec);
    rep.recall = mean_std(rec);
    rep.f1 = mean_std(f1);
    rep.iou = mean_std(iou);
    return rep;
}

AgreementResult agreement(const MaskRaster& a, const MaskRaster& b, const RemapTable& harmonize_a,
                          const RemapTable& harmonize_b) {
    if (!(a.grid() == b.grid())) throw ValidationError("agreement: maps are on different grids");
    if (harmonize_a.target().names() != harmonize_b.target().names())
        throw ValidationError("agreement: harmonization tables target different schemes ('" +
                              harmonize_a.target().name() + "' vs '" + harmonize_b.target().name() + "')");
    const MaskRaster ha = remap(a, harmonize_a);
    const MaskRaster hb = remap(b, harmonize_b);
    const auto oa = harmonize_a.others();
    const auto ob = harmonize_b.others();
    auto valid = [](ClassIndex v, std::optional<ClassIndex> others) { return v != 0 && !(others && v == *others); };

    const std::size_t n = ha.size(), grain = 1 << 16;
    std::vector<std::uint64_t> agree(parallel::chunk_count(n, grain)), total(agree.size());
    parallel::for_chunks(n, grain, [&](std::size_t b0, std::size_t e0) {
        std::uint64_t ag = 0, tot = 0;
        for (std::size_t i = b0; i < e0; ++i) {
            const ClassIndex x = ha.values()[i], y = hb.values()[i];
            if (!valid(x, oa) || !valid(y, ob)) continue;
            ++tot;
            if (x == y) ++ag;
        }
        agree[b0 / grain] = ag;
        total[b0 / grain] = tot;
    });
    AgreementResult r;
    for (std::size_t i = 0; i < agree.size(); ++i) {
        r.agree += agree[i];
        r.valid += total[i];
    }
    r.defined = r.valid > 0;
    r.value = r.defined ? static_cast<double>(r.agree) / static_cast<double>(r.valid) : 0.0;
    return r;
}

AgreementMatrix agreement_matrix(const std::vector<MaskRaster>& maps, const std::vector<RemapTable>& tables,
                                 const std::vector<std::string>& names) {
    if (maps.size() < 2) throw ValidationError("agreement matrix needs at least two maps");
    if (tables.size() != maps.size() || names.size() != maps.size())
        throw ValidationError("agreement matrix needs one harmonization table and one name per map");
    const std::size_t n = maps.size();
    AgreementMatrix m;
    m.names = names;
    m.cells.assign(n, std::vector<AgreementResult>(n));
    for (std::size_t i = 0; i < n; ++i) {
        m.cells[i][i] = agreement(maps[i], maps[i], tables[i], tables[i]);
        if (m.cells[i][i].defined) m.cells[i][i].value = 1.0;
        for (std::size_t j = i + 1; j < n; ++j) {
            m.cells[i][j] = agreement(maps[i], maps[j], tables[i], tables[j]);
            m.cells[j][i] = m.cells[i][j];
        }
    }
    return m;
}

AreaTable area_coverage(const MaskRaster& map, const ClassScheme& scheme) {
    check_mask_in_scheme(map, scheme);
    const Grid& g = map.grid();
    std::vector<std::uint64_t> counts(scheme.size(), 0);
    for (ClassIndex v : map.values()) ++counts[v];

    const double cell = g.res * g.res;
    const double n = static_cast<double>(g.size());
    auto row = [&](std::string name, std::uint64_t pixels) {
        AreaRow r;
        r.name = std::move(name);
        r.pixels = pixels;
        r.area_m2 = static_cast<double>(pixels) * cell;
        r.area_km2 = r.area_m2 / 1e6;
        r.percent = n > 0 ? 100.0 * static_cast<double>(pixels) / n : 0.0;
        return r;
    };
    AreaTable t;
    t.scheme = scheme.name();
    t.grid_area_m2 = g.area();
    std::uint64_t labeled = 0;
    for (std::size_t c = 1; c < scheme.size(); ++c) {
        t.classes.push_back(row(scheme.name_of(static_cast<ClassIndex>(c)), counts[c]));
        labeled += counts[c];
    }
    t.unlabeled = row(std::string(kUnlabeledName), counts[0]);
    t.all = row("All", labeled);
    return t;
}

}  // namespace lulc

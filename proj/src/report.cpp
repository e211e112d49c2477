#include "lulc/report.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <vector>

namespace lulc {
namespace {

using nlohmann::json;
using Table = std::vector<std::vector<std::string>>;

json mean_std_json(const MeanStd& m) { return {{"mean", m.mean}, {"std", m.std}}; }

std::string fixed(double v, int digits = 4) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

std::string exact(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

/// First column left-aligned, the rest right-aligned.
std::string render(const Table& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows)
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (width.size() <= i) width.push_back(0);
            width[i] = std::max(width[i], row[i].size());
        }
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) os << "  ";
            if (i == 0)
                os << std::left << std::setw(static_cast<int>(width[i])) << row[i];
            else
                os << std::right << std::setw(static_cast<int>(width[i])) << row[i];
        }
        os << '\n';
    }
    return os.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

std::string csv(const Table& rows) {
    std::ostringstream os;
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << csv_field(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string pred_label(const ConfusionMatrix& cm, std::size_t p) {
    return p == 0 ? std::string("unpredicted") : cm.scheme().name_of(static_cast<ClassIndex>(p));
}

}  // namespace

json to_json(const MetricsReport& r) {
    json classes = json::array();
    for (const auto& c : r.classes) {
        classes.push_back({{"class", c.name},
                           {"index", c.cls},
                           {"support", c.support},
                           {"tp", c.tp},
                           {"fp", c.fp},
                           {"fn", c.fn},
                           {"tn", c.tn},
                           {"accuracy", c.accuracy},
                           {"precision", c.precision},
                           {"recall", c.recall},
                           {"f1", c.f1},
                           {"iou", c.iou_defined ? json(c.iou) : json(nullptr)}});
    }
    return {{"scheme", r.scheme},
            {"set", r.set},
            {"total", r.total},
            {"unpredicted", r.unpredicted},
            {"classes", classes},
            {"absent_classes", r.absent},
            {"macro",
             {{"accuracy", mean_std_json(r.accuracy)},
              {"precision", mean_std_json(r.precision)},
              {"recall", mean_std_json(r.recall)},
              {"f1", mean_std_json(r.f1)},
              {"iou", mean_std_json(r.iou)}}}};
}

json to_json(const ConfusionMatrix& cm) {
    json labels = json::array(), rows = json::array();
    for (std::size_t p = 0; p < cm.size(); ++p) labels.push_back(pred_label(cm, p));
    for (std::size_t t = 1; t < cm.size(); ++t) {
        json row = json::array();
        for (std::size_t p = 0; p < cm.size(); ++p) row.push_back(cm.at(t, p));
        rows.push_back(row);
    }
    json truth = json::array();
    for (std::size_t t = 1; t < cm.size(); ++t) truth.push_back(cm.scheme().name_of(static_cast<ClassIndex>(t)));
    return {{"scheme", cm.scheme().name()}, {"truth", truth}, {"predicted", labels}, {"counts", rows},
            {"total", cm.total()}};
}

json to_json(const AgreementMatrix& m) {
    json rows = json::array(), counts = json::array();
    for (const auto& r : m.cells) {
        json row = json::array(), crow = json::array();
        for (const auto& c : r) {
            row.push_back(c.defined ? json(c.value) : json(nullptr));
            crow.push_back({{"agree", c.agree}, {"valid", c.valid}});
        }
        rows.push_back(row);
        counts.push_back(crow);
    }
    return {{"maps", m.names}, {"agreement", rows}, {"counts", counts}};
}

json to_json(const AreaTable& t) {
    auto row = [](const AreaRow& r) {
        return json{{"class", r.name}, {"pixels", r.pixels}, {"area_m2", r.area_m2}, {"area_km2", r.area_km2},
                    {"percent", r.percent}};
    };
    json classes = json::array();
    for (const auto& r : t.classes) classes.push_back(row(r));
    return {{"scheme", t.scheme}, {"grid_area_m2", t.grid_area_m2}, {"classes", classes},
            {"unlabeled", row(t.unlabeled)}, {"all", row(t.all)}};
}

std::string to_text(const MetricsReport& r) {
    Table rows{{"class", "support", "accuracy", "precision", "recall", "f1", "iou"}};
    for (const auto& c : r.classes) {
        if (c.support == 0) continue;
        rows.push_back({c.name, std::to_string(c.support), fixed(c.accuracy), fixed(c.precision), fixed(c.recall),
                        fixed(c.f1), c.iou_defined ? fixed(c.iou) : "-"});
    }
    auto ms = [](const MeanStd& m) { return fixed(m.mean, 2) + "±" + fixed(m.std, 2); };
    rows.push_back({"macro", std::to_string(r.total), ms(r.accuracy), ms(r.precision), ms(r.recall), ms(r.f1),
                    ms(r.iou)});
    std::string out = "set: " + r.set + "  scheme: " + r.scheme + "\n" + render(rows);
    if (!r.absent.empty()) {
        out += "absent from truth:";
        for (const auto& a : r.absent) out += " " + a;
        out += '\n';
    }
    return out;
}

std::string to_text(const ConfusionMatrix& cm) {
    Table rows{{"truth \\ pred"}};
    for (std::size_t p = 0; p < cm.size(); ++p) rows[0].push_back(pred_label(cm, p));
    for (std::size_t t = 1; t < cm.size(); ++t) {
        rows.push_back({cm.scheme().name_of(static_cast<ClassIndex>(t))});
        for (std::size_t p = 0; p < cm.size(); ++p) rows.back().push_back(std::to_string(cm.at(t, p)));
    }
    return render(rows);
}

std::string to_text(const AgreementMatrix& m) {
    Table rows{{""}};
    for (const auto& n : m.names) rows[0].push_back(n);
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
        rows.push_back({m.names[i]});
        for (const auto& c : m.cells[i]) rows.back().push_back(c.defined ? fixed(c.value, 2) : "n/a");
    }
    return render(rows);
}

std::string to_text(const AreaTable& t) {
    Table rows{{"class", "pixels", "km2", "%"}};
    auto add = [&](const AreaRow& r) {
        rows.push_back({r.name, std::to_string(r.pixels), fixed(r.area_km2, 4), fixed(r.percent, 2)});
    };
    for (const auto& r : t.classes) add(r);
    add(t.unlabeled);
    add(t.all);
    return "scheme: " + t.scheme + "\n" + render(rows);
}

std::string to_csv(const MetricsReport& r) {
    Table rows{{"class", "index", "support", "tp", "fp", "fn", "tn", "accuracy", "precision", "recall", "f1", "iou"}};
    for (const auto& c : r.classes) {
        rows.push_back({c.name, std::to_string(c.cls), std::to_string(c.support), std::to_string(c.tp),
                        std::to_string(c.fp), std::to_string(c.fn), std::to_string(c.tn), exact(c.accuracy),
                        exact(c.precision), exact(c.recall), exact(c.f1), c.iou_defined ? exact(c.iou) : ""});
    }
    rows.push_back({"macro_mean", "", std::to_string(r.total), "", "", "", "", exact(r.accuracy.mean),
                    exact(r.precision.mean), exact(r.recall.mean), exact(r.f1.mean), exact(r.iou.mean)});
    rows.push_back({"macro_std", "", "", "", "", "", "", exact(r.accuracy.std), exact(r.precision.std),
                    exact(r.recall.std), exact(r.f1.std), exact(r.iou.std)});
    return csv(rows);
}

std::string to_csv(const ConfusionMatrix& cm) {
    Table rows{{"truth"}};
    for (std::size_t p = 0; p < cm.size(); ++p) rows[0].push_back(pred_label(cm, p));
    for (std::size_t t = 1; t < cm.size(); ++t) {
        rows.push_back({cm.scheme().name_of(static_cast<ClassIndex>(t))});
        for (std::size_t p = 0; p < cm.size(); ++p) rows.back().push_back(std::to_string(cm.at(t, p)));
    }
    return csv(rows);
}

std::string to_csv(const AgreementMatrix& m) {
    Table rows{{"map"}};
    for (const auto& n : m.names) rows[0].push_back(n);
    for (std::size_t i = 0; i < m.cells.size(); ++i) {
        rows.push_back({m.names[i]});
        for (const auto& c : m.cells[i]) rows.back().push_back(c.defined ? exact(c.value) : "");
    }
    return csv(rows);
}

std::string to_csv(const AreaTable& t) {
    Table rows{{"class", "pixels", "area_m2", "area_km2", "percent"}};
    auto add = [&](const AreaRow& r) {
        rows.push_back({r.name, std::to_string(r.pixels), exact(r.area_m2), exact(r.area_km2), exact(r.percent)});
    };
    for (const auto& r : t.classes) add(r);
    add(t.unlabeled);
    add(t.all);
    return csv(rows);
}

}  // namespace lulc

// Copyright 2026 The Quanvo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "quanvo/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "quanvo/errors.hpp"

namespace quanvo::report {

namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::stringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

double parse_double(const std::string& s, const std::string& context) {
    try {
        return std::stod(s);
    } catch (const std::exception&) {
        throw FormatError("csv: bad number '" + s + "' in " + context);
    }
}

std::size_t parse_size(const std::string& s, const std::string& context) {
    try {
        return static_cast<std::size_t>(std::stoull(s));
    } catch (const std::exception&) {
        throw FormatError("csv: bad integer '" + s + "' in " + context);
    }
}

std::string escape_xml(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

/// Linear data-to-pixel mapping; r0 pairs with d0 so a descending pixel
/// range flips the axis.
struct Scale {
    double d0 = 0.0, d1 = 1.0, r0 = 0.0, r1 = 1.0;

    double operator()(double v) const { return r0 + (v - d0) / (d1 - d0) * (r1 - r0); }
};

const char* model_color(const std::string& model, std::size_t index) {
    if (model == "qnn1") return "#1f77b4";
    if (model == "cnn1") return "#d62728";
    if (model == "qnn2") return "#2ca02c";
    if (model == "cnn2") return "#9467bd";
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c",
                                    "#9467bd", "#ff7f0e", "#8c564b"};
    return palette[index % 6];
}

void svg_open(std::ostringstream& svg, int w, int h) {
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
        << h << "\" viewBox=\"0 0 " << w << " " << h << "\" font-family=\"sans-serif\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
        << "\" fill=\"#ffffff\"/>\n";
}

void svg_axes(std::ostringstream& svg, double left, double top, double right,
              double bottom) {
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(bottom) << "\" x2=\""
        << fmt(right) << "\" y2=\"" << fmt(bottom)
        << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(top) << "\" x2=\"" << fmt(left)
        << "\" y2=\"" << fmt(bottom) << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

} // namespace

std::vector<MetricsRow> read_metrics_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("metrics csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("metrics csv: empty file " + path);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    const std::string expected =
        "model,train_size,fold,epoch,train_loss,train_acc,monitor_loss,monitor_acc,"
        "test_loss,test_acc";
    if (line != expected) {
        throw FormatError("metrics csv " + path + ": unexpected header '" + line + "'");
    }
    std::vector<MetricsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> f = split_line(line);
        if (f.size() != 10) {
            throw FormatError("metrics csv " + context + ": expected 10 fields, got " +
                              std::to_string(f.size()));
        }
        MetricsRow row;
        row.model = f[0];
        row.train_size = parse_size(f[1], context);
        row.fold = parse_size(f[2], context);
        row.epoch = static_cast<int>(parse_size(f[3], context));
        row.train_loss = parse_double(f[4], context);
        row.train_acc = parse_double(f[5], context);
        row.monitor_loss = parse_double(f[6], context);
        row.monitor_acc = parse_double(f[7], context);
        row.test_loss = parse_double(f[8], context);
        row.test_acc = parse_double(f[9], context);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::vector<SummaryRow> summarize(const std::vector<MetricsRow>& rows,
                                  std::size_t expected_folds,
                                  std::vector<std::string>* warnings) {
    struct FoldBest {
        double monitor_loss = 0.0;
        int epoch = 0;
        double test_acc = 0.0;
        bool seen = false;
    };
    std::vector<std::string> model_order;
    std::map<std::string, std::map<std::size_t, std::map<std::size_t, FoldBest>>> cells;
    for (const MetricsRow& row : rows) {
        if (cells.find(row.model) == cells.end()) {
            model_order.push_back(row.model);
        }
        FoldBest& best = cells[row.model][row.train_size][row.fold];
        if (!best.seen || row.monitor_loss < best.monitor_loss ||
            (row.monitor_loss == best.monitor_loss && row.epoch < best.epoch)) {
            best.seen = true;
            best.monitor_loss = row.monitor_loss;
            best.epoch = row.epoch;
            best.test_acc = row.test_acc;
        }
    }

    std::vector<SummaryRow> out;
    for (const std::string& model : model_order) {
        for (const auto& [size, folds] : cells[model]) {
            double sum = 0.0, sum_sq = 0.0;
            for (const auto& [fold, best] : folds) {
                sum += best.test_acc;
                sum_sq += best.test_acc * best.test_acc;
            }
            const double n = static_cast<double>(folds.size());
            const double mean = sum / n;
            const double var = std::max(0.0, sum_sq / n - mean * mean);
            SummaryRow row;
            row.model = model;
            row.train_size = size;
            row.mean_test_acc = mean;
            row.std_test_acc = std::sqrt(var);
            out.push_back(std::move(row));

            if (warnings != nullptr && folds.size() < expected_folds) {
                std::string missing;
                for (std::size_t f = 1; f <= expected_folds; f++) {
                    if (folds.find(f) == folds.end()) {
                        if (!missing.empty()) {
                            missing += ",";
                        }
                        missing += std::to_string(f);
                    }
                }
                warnings->push_back(model + " size " + std::to_string(size) + ": " +
                                    std::to_string(folds.size()) + "/" +
                                    std::to_string(expected_folds) +
                                    " folds, missing " + missing);
            }
        }
    }
    return out;
}

void write_summary_csv(const std::string& path, const std::vector<SummaryRow>& rows) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) {
        throw FormatError("summary csv: cannot open " + path + " for writing");
    }
    out << "model,train_size,mean_test_acc,std_test_acc\n";
    char buf[128];
    for (const SummaryRow& row : rows) {
        std::snprintf(buf, sizeof(buf), "%s,%zu,%.4f,%.4f\n", row.model.c_str(),
                      row.train_size, row.mean_test_acc, row.std_test_acc);
        out << buf;
    }
    if (!out) {
        throw FormatError("summary csv: short write to " + path);
    }
}

std::vector<SummaryRow> read_summary_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw FormatError("summary csv: cannot open " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw FormatError("summary csv: empty file " + path);
    }
    if (!line.empty() && line.back() == '\r') {
        line.pop_back();
    }
    if (line != "model,train_size,mean_test_acc,std_test_acc") {
        throw FormatError("summary csv " + path + ": unexpected header '" + line + "'");
    }
    std::vector<SummaryRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        line_no++;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.empty()) {
            continue;
        }
        const std::string context = path + ":" + std::to_string(line_no);
        const std::vector<std::string> f = split_line(line);
        if (f.size() != 4) {
            throw FormatError("summary csv " + context + ": expected 4 fields, got " +
                              std::to_string(f.size()));
        }
        SummaryRow row;
        row.model = f[0];
        row.train_size = parse_size(f[1], context);
        row.mean_test_acc = parse_double(f[2], context);
        row.std_test_acc = parse_double(f[3], context);
        rows.push_back(std::move(row));
    }
    return rows;
}

std::string render_learning_curve_svg(const std::vector<SummaryRow>& summary,
                                      const std::vector<std::string>& models,
                                      const std::string& title) {
    struct Series {
        std::string model;
        std::vector<SummaryRow> points;
    };
    std::vector<Series> series;
    std::set<std::size_t> sizes;
    for (const std::string& model : models) {
        Series s;
        s.model = model;
        for (const SummaryRow& row : summary) {
            if (row.model == model) {
                s.points.push_back(row);
                sizes.insert(row.train_size);
            }
        }
        std::sort(s.points.begin(), s.points.end(),
                  [](const SummaryRow& a, const SummaryRow& b) {
                      return a.train_size < b.train_size;
                  });
        if (!s.points.empty()) {
            series.push_back(std::move(s));
        }
    }
    if (series.empty()) {
        throw std::invalid_argument("learning curve: no summary rows for requested models");
    }

    const int w = 640, h = 420;
    const double left = 60, top = 40, right = 490, bottom = 370;
    double x_min = static_cast<double>(*sizes.begin());
    double x_max = static_cast<double>(*sizes.rbegin());
    if (x_min == x_max) {
        x_min -= 1.0;
        x_max += 1.0;
    }
    const Scale sx{x_min, x_max, left, right};
    const Scale sy{0.0, 1.0, bottom, top};

    std::ostringstream svg;
    svg_open(svg, w, h);
    svg << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"15\" fill=\"#111111\">"
        << escape_xml(title) << "</text>\n";

    for (double v = 0.0; v <= 1.0001; v += 0.2) {
        const double y = sy(v);
        svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(right) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#333333\">" << fmt(v)
            << "</text>\n";
    }
    for (std::size_t size : sizes) {
        const double x = sx(static_cast<double>(size));
        svg << "<line x1=\"" << fmt(x) << "\" y1=\"" << fmt(bottom) << "\" x2=\"" << fmt(x)
            << "\" y2=\"" << fmt(bottom + 5)
            << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt(x) << "\" y=\"" << fmt(bottom + 18)
            << "\" text-anchor=\"middle\" font-size=\"11\" fill=\"#333333\">" << size
            << "</text>\n";
    }
    svg << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(bottom + 36)
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333333\">"
           "training set size</text>\n";
    svg << "<text x=\"16\" y=\"" << fmt((top + bottom) / 2)
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333333\" transform=\"rotate(-90 "
           "16 "
        << fmt((top + bottom) / 2) << ")\">mean test accuracy</text>\n";
    svg_axes(svg, left, top, right, bottom);

    for (std::size_t i = 0; i < series.size(); i++) {
        const Series& s = series[i];
        const char* color = model_color(s.model, i);
        std::string band;
        for (const SummaryRow& p : s.points) {
            band += fmt(sx(static_cast<double>(p.train_size))) + "," +
                    fmt(sy(p.mean_test_acc + p.std_test_acc)) + " ";
        }
        for (auto it = s.points.rbegin(); it != s.points.rend(); ++it) {
            band += fmt(sx(static_cast<double>(it->train_size))) + "," +
                    fmt(sy(it->mean_test_acc - it->std_test_acc)) + " ";
        }
        band.pop_back();
        svg << "<polygon class=\"band\" data-model=\"" << escape_xml(s.model)
            << "\" points=\"" << band << "\" fill=\"" << color
            << "\" fill-opacity=\"0.18\" stroke=\"none\"/>\n";

        std::string line;
        for (const SummaryRow& p : s.points) {
            line += fmt(sx(static_cast<double>(p.train_size))) + "," +
                    fmt(sy(p.mean_test_acc)) + " ";
        }
        line.pop_back();
        svg << "<polyline class=\"mean\" data-model=\"" << escape_xml(s.model)
            << "\" points=\"" << line << "\" fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        for (const SummaryRow& p : s.points) {
            svg << "<circle cx=\"" << fmt(sx(static_cast<double>(p.train_size)))
                << "\" cy=\"" << fmt(sy(p.mean_test_acc)) << "\" r=\"3\" fill=\"" << color
                << "\"/>\n";
        }

        const double ly = top + 16 + 22 * static_cast<double>(i);
        svg << "<line x1=\"" << fmt(right + 14) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(right + 40) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(right + 46) << "\" y=\"" << fmt(ly + 4)
            << "\" font-size=\"12\" fill=\"#111111\">" << escape_xml(s.model)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

std::string render_epoch_curves_svg(const std::vector<MetricsRow>& rows,
                                    std::size_t train_size, std::size_t fold,
                                    const std::vector<std::string>& models,
                                    const std::string& title) {
    struct Series {
        std::string model;
        std::vector<MetricsRow> points;
    };
    std::vector<Series> series;
    int max_epoch = 0;
    double max_loss = 0.0;
    for (const std::string& model : models) {
        Series s;
        s.model = model;
        for (const MetricsRow& row : rows) {
            if (row.model == model && row.train_size == train_size && row.fold == fold) {
                s.points.push_back(row);
            }
        }
        std::sort(s.points.begin(), s.points.end(),
                  [](const MetricsRow& a, const MetricsRow& b) { return a.epoch < b.epoch; });
        for (const MetricsRow& p : s.points) {
            max_epoch = std::max(max_epoch, p.epoch);
            if (std::isfinite(p.train_loss)) {
                max_loss = std::max(max_loss, p.train_loss);
            }
            if (std::isfinite(p.test_loss)) {
                max_loss = std::max(max_loss, p.test_loss);
            }
        }
        if (!s.points.empty()) {
            series.push_back(std::move(s));
        }
    }
    if (series.empty()) {
        throw std::invalid_argument("epoch curves: no metrics rows for size " +
                                    std::to_string(train_size) + " fold " +
                                    std::to_string(fold));
    }
    if (max_loss <= 0.0) {
        max_loss = 1.0;
    }

    const int w = 640, h = 640;
    const double left = 60, right = 490;
    const double acc_top = 50, acc_bottom = 290;
    const double loss_top = 350, loss_bottom = 590;
    const Scale sx{1.0, std::max(2.0, static_cast<double>(max_epoch)), left, right};
    const Scale sy_acc{0.0, 1.0, acc_bottom, acc_top};
    const Scale sy_loss{0.0, max_loss * 1.05, loss_bottom, loss_top};

    std::ostringstream svg;
    svg_open(svg, w, h);
    svg << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"24\" text-anchor=\"middle\" "
           "font-size=\"15\" fill=\"#111111\">"
        << escape_xml(title) << "</text>\n";
    svg << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(acc_top - 8)
        << "\" font-size=\"12\" fill=\"#333333\">accuracy</text>\n";
    svg << "<text x=\"" << fmt(left) << "\" y=\"" << fmt(loss_top - 8)
        << "\" font-size=\"12\" fill=\"#333333\">loss</text>\n";

    for (double v = 0.0; v <= 1.0001; v += 0.25) {
        const double y = sy_acc(v);
        svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(right) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#333333\">" << fmt(v)
            << "</text>\n";
    }
    for (int i = 0; i <= 4; i++) {
        const double v = max_loss * 1.05 * i / 4.0;
        const double y = sy_loss(v);
        svg << "<line x1=\"" << fmt(left) << "\" y1=\"" << fmt(y) << "\" x2=\""
            << fmt(right) << "\" y2=\"" << fmt(y)
            << "\" stroke=\"#dddddd\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << fmt(left - 8) << "\" y=\"" << fmt(y + 4)
            << "\" text-anchor=\"end\" font-size=\"11\" fill=\"#333333\">" << fmt(v)
            << "</text>\n";
    }
    svg_axes(svg, left, acc_top, right, acc_bottom);
    svg_axes(svg, left, loss_top, right, loss_bottom);
    svg << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(loss_bottom + 32)
        << "\" text-anchor=\"middle\" font-size=\"12\" fill=\"#333333\">epoch</text>\n";

    auto polyline = [&](const Series& s, const char* color, bool test, bool acc) {
        std::string pts;
        for (const MetricsRow& p : s.points) {
            double v;
            if (acc) {
                v = test ? p.test_acc : p.train_acc;
            } else {
                v = test ? p.test_loss : p.train_loss;
            }
            if (!std::isfinite(v)) {
                continue;
            }
            const Scale& sy = acc ? sy_acc : sy_loss;
            pts += fmt(sx(static_cast<double>(p.epoch))) + "," + fmt(sy(v)) + " ";
        }
        if (pts.empty()) {
            return;
        }
        pts.pop_back();
        svg << "<polyline class=\"series\" data-model=\"" << escape_xml(s.model)
            << "\" data-split=\"" << (test ? "test" : "train") << "\" data-metric=\""
            << (acc ? "acc" : "loss") << "\" points=\"" << pts
            << "\" fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\""
            << (test ? "" : " stroke-dasharray=\"6 3\"") << "/>\n";
    };

    for (std::size_t i = 0; i < series.size(); i++) {
        const char* color = model_color(series[i].model, i);
        polyline(series[i], color, false, true);
        polyline(series[i], color, true, true);
        polyline(series[i], color, false, false);
        polyline(series[i], color, true, false);

        const double ly = acc_top + 16 + 22 * static_cast<double>(i);
        svg << "<line x1=\"" << fmt(right + 14) << "\" y1=\"" << fmt(ly) << "\" x2=\""
            << fmt(right + 40) << "\" y2=\"" << fmt(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << fmt(right + 46) << "\" y=\"" << fmt(ly + 4)
            << "\" font-size=\"12\" fill=\"#111111\">" << escape_xml(series[i].model)
            << "</text>\n";
    }
    const double ly = acc_top + 16 + 22 * static_cast<double>(series.size());
    svg << "<line x1=\"" << fmt(right + 14) << "\" y1=\"" << fmt(ly) << "\" x2=\""
        << fmt(right + 40) << "\" y2=\"" << fmt(ly)
        << "\" stroke=\"#777777\" stroke-width=\"1.5\"/>\n";
    svg << "<text x=\"" << fmt(right + 46) << "\" y=\"" << fmt(ly + 4)
        << "\" font-size=\"11\" fill=\"#111111\">test (solid)</text>\n";
    svg << "<line x1=\"" << fmt(right + 14) << "\" y1=\"" << fmt(ly + 22) << "\" x2=\""
        << fmt(right + 40) << "\" y2=\"" << fmt(ly + 22)
        << "\" stroke=\"#777777\" stroke-width=\"1.5\" stroke-dasharray=\"6 3\"/>\n";
    svg << "<text x=\"" << fmt(right + 46) << "\" y=\"" << fmt(ly + 26)
        << "\" font-size=\"11\" fill=\"#111111\">train (dashed)</text>\n";
    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> write_figures(const std::vector<MetricsRow>& metrics,
                                       const std::vector<SummaryRow>& summary,
                                       const std::string& out_dir) {
    namespace fs = std::filesystem;
    std::vector<std::string> written;

    auto present = [&](const std::vector<std::string>& wanted) {
        std::vector<std::string> out;
        for (const std::string& m : wanted) {
            for (const SummaryRow& row : summary) {
                if (row.model == m) {
                    out.push_back(m);
                    break;
                }
            }
        }
        return out;
    };
    auto write = [&](const std::string& name, const std::string& content) {
        const fs::path path = fs::path(out_dir) / name;
        std::ofstream out(path, std::ios::trunc | std::ios::binary);
        if (!out) {
            throw FormatError("figures: cannot open " + path.string() + " for writing");
        }
        out << content;
        written.push_back(name);
    };

    const std::vector<std::string> s1 = present({"qnn1", "cnn1"});
    if (!s1.empty()) {
        write("fig_learning_curve_s1.svg",
              render_learning_curve_svg(summary, s1,
                                        "Test accuracy vs training size (QNN1 vs CNN1)"));
    }
    const std::vector<std::string> s2 = present({"qnn2", "cnn2"});
    if (!s2.empty()) {
        write("fig_learning_curve_s2.svg",
              render_learning_curve_svg(summary, s2,
                                        "Test accuracy vs training size (QNN2 vs CNN2)"));
    }

    std::vector<std::string> all_models;
    for (const SummaryRow& row : summary) {
        if (std::find(all_models.begin(), all_models.end(), row.model) == all_models.end()) {
            all_models.push_back(row.model);
        }
    }
    for (std::size_t size : {std::size_t{60}, std::size_t{240}}) {
        bool have = false;
        for (const MetricsRow& row : metrics) {
            if (row.train_size == size && row.fold == 1) {
                have = true;
                break;
            }
        }
        if (!have) {
            continue;
        }
        write("fig_epochs_" + std::to_string(size) + ".svg",
              render_epoch_curves_svg(metrics, size, 1, all_models,
                                      "Training curves at size " + std::to_string(size) +
                                          " (fold 1)"));
    }
    return written;
}

} // namespace quanvo::report

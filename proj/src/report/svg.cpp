#include "regimekit/report/svg.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "regimekit/common/error.h"

namespace regimekit::report {

namespace {

constexpr int kWidth = 960;
constexpr int kHeight = 420;
constexpr int kMarginLeft = 70;
constexpr int kMarginRight = 20;
constexpr int kMarginTop = 20;
constexpr int kMarginBottom = 40;

std::string fmt(double value) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", value);
    return buf;
}

const char* regime_color(regimes::RegimeLabel label) {
    switch (label) {
        case regimes::RegimeLabel::Advance: return "#c8e6c9";
        case regimes::RegimeLabel::Accumulation: return "#fff9c4";
        case regimes::RegimeLabel::Decline: return "#ffcdd2";
        case regimes::RegimeLabel::Distribution: return "#ffe0b2";
    }
    return "#eeeeee";
}

struct Scale {
    double d0, d1, v0, v1;
    double x(double day) const {
        double span = d1 > d0 ? d1 - d0 : 1.0;
        return kMarginLeft + (day - d0) / span * (kWidth - kMarginLeft - kMarginRight);
    }
    double y(double value) const {
        double span = v1 > v0 ? v1 - v0 : 1.0;
        return kHeight - kMarginBottom -
               (value - v0) / span * (kHeight - kMarginTop - kMarginBottom);
    }
};

void open_svg(std::ostringstream& out) {
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
        << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
    out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Scale& s, const std::vector<double>& ticks) {
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kMarginTop << "\" x2=\""
        << kMarginLeft << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    out << "  <line x1=\"" << kMarginLeft << "\" y1=\"" << kHeight - kMarginBottom
        << "\" x2=\"" << kWidth - kMarginRight << "\" y2=\"" << kHeight - kMarginBottom
        << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
    for (double tick : ticks) {
        double y = s.y(tick);
        out << "  <line x1=\"" << kMarginLeft - 4 << "\" y1=\"" << fmt(y) << "\" x2=\""
            << kMarginLeft << "\" y2=\"" << fmt(y) << "\" stroke=\"#444444\"/>\n";
        out << "  <text x=\"" << kMarginLeft - 8 << "\" y=\"" << fmt(y + 4)
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444444\">" << fmt(tick)
            << "</text>\n";
    }
}

}  // namespace

std::string equity_regimes_svg(const std::vector<EquityPoint>& equity,
                               const std::vector<regimes::RegimeSegment>& segments) {
    if (equity.size() < 2) {
        fail("SeriesTooShort", "equity chart needs at least 2 points");
    }
    Scale s;
    s.d0 = equity.front().date.days();
    s.d1 = equity.back().date.days();
    s.v0 = equity.front().equity;
    s.v1 = s.v0;
    for (const auto& point : equity) {
        s.v0 = std::min(s.v0, point.equity);
        s.v1 = std::max(s.v1, point.equity);
    }

    std::ostringstream out;
    open_svg(out);

    for (const auto& seg : segments) {
        double x0 = s.x(std::max<double>(seg.start.days(), s.d0));
        double x1 = s.x(std::min<double>(seg.end.days(), s.d1));
        if (x1 <= x0) {
            continue;
        }
        out << "  <rect class=\"regime-" << regimes::to_string(seg.label) << "\" data-start=\""
            << seg.start.to_string() << "\" data-end=\"" << seg.end.to_string()
            << "\" data-label=\"" << regimes::to_string(seg.label) << "\" x=\"" << fmt(x0)
            << "\" y=\"" << kMarginTop << "\" width=\"" << fmt(x1 - x0) << "\" height=\""
            << kHeight - kMarginTop - kMarginBottom << "\" fill=\""
            << regime_color(seg.label) << "\" fill-opacity=\"0.6\"/>\n";
    }

    std::vector<double> ticks = {s.v0, (s.v0 + s.v1) / 2.0, s.v1};
    axes(out, s, ticks);

    out << "  <polyline fill=\"none\" stroke=\"#1565c0\" stroke-width=\"1.5\" points=\"";
    for (const auto& point : equity) {
        out << fmt(s.x(point.date.days())) << ',' << fmt(s.y(point.equity)) << ' ';
    }
    out << "\"/>\n";
    out << "  <text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 10
        << "\" font-size=\"11\" fill=\"#444444\">" << equity.front().date.to_string()
        << "</text>\n";
    out << "  <text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - 10
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444444\">"
        << equity.back().date.to_string() << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

std::string probability_svg(const std::vector<ProbPoint>& probs) {
    if (probs.size() < 2) {
        fail("SeriesTooShort", "probability chart needs at least 2 points");
    }
    Scale s;
    s.d0 = probs.front().date.days();
    s.d1 = probs.back().date.days();
    s.v0 = 0.0;
    s.v1 = 1.0;

    std::ostringstream out;
    open_svg(out);
    axes(out, s, {0.0, 0.5, 1.0});
    out << "  <polyline fill=\"none\" stroke=\"#b71c1c\" stroke-width=\"1\" points=\"";
    for (const auto& point : probs) {
        out << fmt(s.x(point.date.days())) << ',' << fmt(s.y(point.p_high)) << ' ';
    }
    out << "\"/>\n";
    out << "  <text x=\"" << kMarginLeft << "\" y=\"" << kHeight - 10
        << "\" font-size=\"11\" fill=\"#444444\">" << probs.front().date.to_string()
        << "</text>\n";
    out << "  <text x=\"" << kWidth - kMarginRight << "\" y=\"" << kHeight - 10
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444444\">"
        << probs.back().date.to_string() << "</text>\n";
    out << "</svg>\n";
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) {
        fail("FileNotFound", "cannot write '" + path + "'");
    }
    out << content;
}

}  // namespace regimekit::report

#include "dice/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace dice {

namespace {

// All coordinates printed with two decimals so reruns are byte-identical.
std::string f2(double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%.2f", v);
    return b;
}

std::string fg(double v) {
    char b[32];
    std::snprintf(b, sizeof(b), "%g", v);
    return b;
}

std::string xml_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::vector<double> nice_ticks(double lo, double hi, int target = 5) {
    std::vector<double> out;
    double span = hi - lo;
    if (!(span > 0)) return out;
    double raw = span / target;
    double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double norm = raw / mag;
    double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0) * mag;
    for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step)
        out.push_back(std::fabs(v) < 1e-12 * span ? 0.0 : v);
    return out;
}

using Pts = std::vector<std::pair<double, double>>;

struct Frame {
    double w = 860, h = 520;
    double ml = 76, mr = 76, mt = 46, mb = 56;
    double x0 = 0, x1 = 1, yl0 = 0, yl1 = 1, yr0 = 0, yr1 = 1;
    bool has_right = false;
    std::string body;

    double px(double x) const { return ml + (x - x0) / (x1 - x0) * (w - ml - mr); }
    double pyl(double y) const { return h - mb - (y - yl0) / (yl1 - yl0) * (h - mt - mb); }
    double pyr(double y) const { return h - mb - (y - yr0) / (yr1 - yr0) * (h - mt - mb); }
    double py(double y, bool right) const { return right ? pyr(y) : pyl(y); }

    void poly(const Pts& pts, const std::string& color, const std::string& dash,
              bool right = false, double width = 1.8) {
        if (pts.size() < 2) return;
        body += "<polyline fill=\"none\" stroke=\"" + color + "\" stroke-width=\"" +
                f2(width) + "\"";
        if (!dash.empty()) body += " stroke-dasharray=\"" + dash + "\"";
        body += " points=\"";
        for (size_t i = 0; i < pts.size(); ++i) {
            if (i) body += ' ';
            body += f2(px(pts[i].first)) + ',' + f2(py(pts[i].second, right));
        }
        body += "\"/>\n";
    }

    void dot(double x, double y, double r, const std::string& color, bool right = false) {
        body += "<circle cx=\"" + f2(px(x)) + "\" cy=\"" + f2(py(y, right)) +
                "\" r=\"" + f2(r) + "\" fill=\"" + color + "\"/>\n";
    }

    void hline(double y, const std::string& color, bool right = false) {
        body += "<line x1=\"" + f2(ml) + "\" y1=\"" + f2(py(y, right)) + "\" x2=\"" +
                f2(w - mr) + "\" y2=\"" + f2(py(y, right)) + "\" stroke=\"" + color +
                "\" stroke-width=\"1\"/>\n";
    }

    void vline(double x, const std::string& color, const std::string& dash = "") {
        body += "<line x1=\"" + f2(px(x)) + "\" y1=\"" + f2(mt) + "\" x2=\"" +
                f2(px(x)) + "\" y2=\"" + f2(h - mb) + "\" stroke=\"" + color +
                "\" stroke-width=\"1\"";
        if (!dash.empty()) body += " stroke-dasharray=\"" + dash + "\"";
        body += "/>\n";
    }
};

struct LegendEntry {
    std::string label, color, dash;
    bool marker = false;  // dot instead of line sample
};

std::string render(const Frame& fr, const std::string& title,
                   const std::string& config_hash, const std::string& xlabel,
                   const std::string& ylabel_left, const std::string& ylabel_right,
                   const std::vector<LegendEntry>& legend) {
    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fg(fr.w) +
         "\" height=\"" + fg(fr.h) + "\" viewBox=\"0 0 " + fg(fr.w) + " " + fg(fr.h) +
         "\" font-family=\"sans-serif\">\n";
    s += "<!-- config " + config_hash + " -->\n";
    s += "<rect width=\"" + fg(fr.w) + "\" height=\"" + fg(fr.h) +
         "\" fill=\"#ffffff\"/>\n";
    s += "<text x=\"" + f2(fr.w / 2) + "\" y=\"26\" text-anchor=\"middle\" "
         "font-size=\"16\">" + xml_escape(title) + "</text>\n";

    // gridlines and tick labels
    for (double t : nice_ticks(fr.yl0, fr.yl1)) {
        double y = fr.pyl(t);
        s += "<line x1=\"" + f2(fr.ml) + "\" y1=\"" + f2(y) + "\" x2=\"" +
             f2(fr.w - fr.mr) + "\" y2=\"" + f2(y) +
             "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + f2(fr.ml - 8) + "\" y=\"" + f2(y + 4) +
             "\" text-anchor=\"end\" font-size=\"12\">" + fg(t) + "</text>\n";
    }
    if (fr.has_right)
        for (double t : nice_ticks(fr.yr0, fr.yr1)) {
            double y = fr.pyr(t);
            s += "<text x=\"" + f2(fr.w - fr.mr + 8) + "\" y=\"" + f2(y + 4) +
                 "\" text-anchor=\"start\" font-size=\"12\">" + fg(t) + "</text>\n";
        }
    for (double t : nice_ticks(fr.x0, fr.x1, 7)) {
        double x = fr.px(t);
        s += "<line x1=\"" + f2(x) + "\" y1=\"" + f2(fr.h - fr.mb) + "\" x2=\"" +
             f2(x) + "\" y2=\"" + f2(fr.h - fr.mb + 5) +
             "\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
        s += "<text x=\"" + f2(x) + "\" y=\"" + f2(fr.h - fr.mb + 20) +
             "\" text-anchor=\"middle\" font-size=\"12\">" + fg(t) + "</text>\n";
    }

    s += fr.body;

    // frame on top of series
    s += "<rect x=\"" + f2(fr.ml) + "\" y=\"" + f2(fr.mt) + "\" width=\"" +
         f2(fr.w - fr.ml - fr.mr) + "\" height=\"" + f2(fr.h - fr.mt - fr.mb) +
         "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";

    s += "<text x=\"" + f2((fr.ml + fr.w - fr.mr) / 2) + "\" y=\"" + f2(fr.h - 16) +
         "\" text-anchor=\"middle\" font-size=\"13\">" + xml_escape(xlabel) +
         "</text>\n";
    s += "<text x=\"20\" y=\"" + f2((fr.mt + fr.h - fr.mb) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 20 " +
         f2((fr.mt + fr.h - fr.mb) / 2) + ")\">" + xml_escape(ylabel_left) +
         "</text>\n";
    if (!ylabel_right.empty())
        s += "<text x=\"" + f2(fr.w - 18) + "\" y=\"" + f2((fr.mt + fr.h - fr.mb) / 2) +
             "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(90 " +
             f2(fr.w - 18) + " " + f2((fr.mt + fr.h - fr.mb) / 2) + ")\">" +
             xml_escape(ylabel_right) + "</text>\n";

    double ly = fr.mt + 16;
    for (const auto& e : legend) {
        double lx = fr.ml + 12;
        if (e.marker) {
            s += "<circle cx=\"" + f2(lx + 13) + "\" cy=\"" + f2(ly - 4) +
                 "\" r=\"3.5\" fill=\"" + e.color + "\"/>\n";
        } else {
            s += "<line x1=\"" + f2(lx) + "\" y1=\"" + f2(ly - 4) + "\" x2=\"" +
                 f2(lx + 26) + "\" y2=\"" + f2(ly - 4) + "\" stroke=\"" + e.color +
                 "\" stroke-width=\"2\"";
            if (!e.dash.empty()) s += " stroke-dasharray=\"" + e.dash + "\"";
            s += "/>\n";
        }
        s += "<text x=\"" + f2(lx + 32) + "\" y=\"" + f2(ly) +
             "\" font-size=\"12\">" + xml_escape(e.label) + "</text>\n";
        ly += 16;
    }
    s += "</svg>\n";
    return s;
}

const char* kDash[3] = {"", "9 6", "2 5"};

} // namespace

std::string fig_estimates_svg(const std::string& config_hash) {
    const auto& pts = estimate_points();
    DamageSpec quad;
    quad.family = DamageFamily::QuadraticOutputLoss;
    quad.a = 0.00227;

    Frame fr;
    fr.x0 = 0.0;
    fr.x1 = 6.0;
    double ylo = 0.0, yhi = 0.0;
    for (const auto& p : pts) {
        ylo = std::min(ylo, p.impact_pct);
        yhi = std::max(yhi, p.impact_pct);
    }
    ylo = std::min(ylo, -100.0 * damage_fraction(quad, 6.0));
    fr.yl0 = ylo - 1.5;
    fr.yl1 = yhi + 1.5;

    fr.hline(0.0, "#c0c0c0");
    Pts curve;
    for (int i = 0; i <= 120; ++i) {
        double t = 6.0 * i / 120.0;
        curve.push_back({t, -100.0 * damage_fraction(quad, t)});
    }
    fr.poly(curve, "#000000", "6 4");

    struct MethodStyle {
        const char* method;
        const char* color;
    };
    const MethodStyle styles[] = {{"enumeration", "#1f77b4"},
                                  {"statistical", "#d62728"},
                                  {"CGE", "#2ca02c"},
                                  {"expert-elicitation", "#ff7f0e"}};
    for (const auto& p : pts)
        for (const auto& st : styles)
            if (p.method == st.method) fr.dot(p.warming_c, p.impact_pct, 4.0, st.color);

    std::vector<LegendEntry> legend;
    for (const auto& st : styles)
        legend.push_back({st.method, st.color, "", true});
    legend.push_back({"quadratic, a = 0.00227", "#000000", "6 4", false});
    return render(fr, "Estimated total impact of warming", config_hash,
                  "temperature increase (degC)", "impact (% of GDP)", "", legend);
}

std::string fig_genealogy_svg(const std::string& config_hash) {
    const auto& entries = genealogy_specs();
    const char* palette[6] = {"#8c564b", "#9467bd", "#d62728",
                              "#2ca02c", "#ff7f0e", "#1f77b4"};
    Frame fr;
    fr.x0 = 0.0;
    fr.x1 = 6.0;
    double yhi = 0.0;
    for (const auto& e : entries)
        yhi = std::max(yhi, 100.0 * damage_fraction(e.spec, 6.0));
    fr.yl0 = 0.0;
    fr.yl1 = yhi * 1.08;

    std::vector<LegendEntry> legend;
    for (size_t i = 0; i < entries.size(); ++i) {
        Pts curve;
        for (int j = 0; j <= 120; ++j) {
            double t = 6.0 * j / 120.0;
            curve.push_back({t, 100.0 * damage_fraction(entries[i].spec, t)});
        }
        fr.poly(curve, palette[i % 6], "");
        legend.push_back({entries[i].label, palette[i % 6], "", false});
    }
    return render(fr, "Damage-function revisions, 1992 to 2018", config_hash,
                  "temperature increase (degC)", "damages (% of GDP)", "", legend);
}

std::string fig_states_svg(const QuadraticFit& fit, const std::string& config_hash) {
    const auto& states = load_states();
    double mean = national_mean_income();
    Frame fr;
    double xlo = 0, xhi = 0, ylo = 0, yhi = 0;
    for (const auto& r : states) {
        xlo = std::min(xlo, r.dtemp);
        xhi = std::max(xhi, r.dtemp);
        ylo = std::min(ylo, r.dgsp_percap);
        yhi = std::max(yhi, r.dgsp_percap);
    }
    fr.x0 = xlo - 0.6;
    fr.x1 = xhi + 0.6;
    fr.yl0 = ylo - 1500.0;
    fr.yl1 = yhi + 1500.0;

    fr.hline(0.0, "#c0c0c0");
    fr.vline(0.0, "#c0c0c0");

    // fitted curve only where the quadratic has published backing
    Pts curve;
    for (int i = 0; i <= 120; ++i) {
        double t = -6.0 + 12.0 * i / 120.0;
        curve.push_back({t, (fit.intercept + fit.beta * t * t) * mean});
    }
    fr.poly(curve, "#000000", "6 4");

    for (const auto& r : states) {
        if (r.state == "USA")
            fr.dot(r.dtemp, r.dgsp_percap, 5.0, "#d62728");
        else
            fr.dot(r.dtemp, r.dgsp_percap, 3.5, "#1f77b4");
    }

    std::vector<LegendEntry> legend{
        {"state", "#1f77b4", "", true},
        {"USA mean", "#d62728", "", true},
        {"quadratic fit, " + fit_variant_name(fit.variant), "#000000", "6 4", false}};
    return render(fr, "State temperature and income deviations", config_hash,
                  "temperature deviation from national mean (degC)",
                  "income per capita deviation (USD)", "", legend);
}

std::string fig_sweep_svg(int which, const std::vector<SolveReport>& runs,
                          const std::vector<double>& a_values,
                          const std::string& config_hash) {
    Frame fr;
    fr.has_right = true;
    int ylo_year = 0, yhi_year = 0;
    double lhi = 0.0, rhi = 0.0;
    bool any = false;
    for (const auto& run : runs) {
        for (const auto& rec : run.trajectory.records) {
            if (!any) {
                ylo_year = yhi_year = rec.year;
                any = true;
            }
            ylo_year = std::min(ylo_year, rec.year);
            yhi_year = std::max(yhi_year, rec.year);
            switch (which) {
                case 4:
                    lhi = std::max(lhi, rec.y_gross);
                    rhi = std::max(rhi, rec.damage_frac);
                    break;
                case 5:
                    lhi = std::max(lhi, std::max(rec.mu, rec.s));
                    rhi = std::max(rhi, rec.lambda);
                    break;
                case 6:
                    lhi = std::max(lhi, rec.k_over_y);
                    rhi = std::max(rhi, std::max(rec.c_percap, rec.p_c));
                    break;
                default:
                    throw std::invalid_argument("fig_sweep_svg: which must be 4, 5, or 6");
            }
        }
    }
    fr.x0 = ylo_year;
    fr.x1 = any ? yhi_year : ylo_year + 1;
    fr.yl0 = 0.0;
    fr.yl1 = lhi > 0 ? lhi * 1.06 : 1.0;
    fr.yr0 = 0.0;
    fr.yr1 = rhi > 0 ? rhi * 1.06 : 1.0;

    auto series = [&](const SolveReport& run, int dash_idx, auto get, bool right,
                      const char* color) {
        Pts pts;
        for (const auto& rec : run.trajectory.records)
            pts.push_back({static_cast<double>(rec.year), get(rec)});
        fr.poly(pts, color, kDash[dash_idx % 3], right);
    };

    std::vector<LegendEntry> legend;
    const char* title = "";
    const char* ylab_l = "";
    const char* ylab_r = "";
    for (size_t i = 0; i < runs.size(); ++i) {
        const auto& run = runs[i];
        if (run.trajectory.records.empty()) continue;
        int di = static_cast<int>(i);
        switch (which) {
            case 4:
                series(run, di, [](const PeriodRecord& r) { return r.y_gross; }, false,
                       "#1f77b4");
                series(run, di, [](const PeriodRecord& r) { return r.y_final; }, false,
                       "#e0a800");
                series(run, di, [](const PeriodRecord& r) { return r.damage_frac; },
                       true, "#ff7f0e");
                break;
            case 5:
                series(run, di, [](const PeriodRecord& r) { return r.mu; }, false,
                       "#1f77b4");
                series(run, di, [](const PeriodRecord& r) { return r.s; }, false,
                       "#d62728");
                series(run, di, [](const PeriodRecord& r) { return r.lambda; }, true,
                       "#9467bd");
                break;
            case 6:
                series(run, di, [](const PeriodRecord& r) { return r.k_over_y; }, false,
                       "#1f77b4");
                series(run, di, [](const PeriodRecord& r) { return r.c_percap; }, true,
                       "#e0a800");
                series(run, di, [](const PeriodRecord& r) { return r.p_c; }, true,
                       "#d62728");
                break;
        }
    }
    switch (which) {
        case 4:
            title = "Output and damages";
            ylab_l = "output (trillion USD/yr)";
            ylab_r = "damage share of gross output";
            legend.push_back({"gross output (left)", "#1f77b4", "", false});
            legend.push_back({"final output (left)", "#e0a800", "", false});
            legend.push_back({"damage share (right)", "#ff7f0e", "", false});
            break;
        case 5:
            title = "Controls and abatement burden";
            ylab_l = "control rate";
            ylab_r = "abatement share of net output";
            legend.push_back({"emissions reduction rate (left)", "#1f77b4", "", false});
            legend.push_back({"saving rate (left)", "#d62728", "", false});
            legend.push_back({"abatement share (right)", "#9467bd", "", false});
            break;
        case 6:
            title = "Capital ratio, consumption, carbon price";
            ylab_l = "capital to gross output (yr)";
            ylab_r = "thousand USD/capita; USD/tCO2";
            legend.push_back({"capital over gross output (left)", "#1f77b4", "", false});
            legend.push_back({"consumption per capita (right)", "#e0a800", "", false});
            legend.push_back({"carbon price (right)", "#d62728", "", false});
            break;
    }
    for (size_t i = 0; i < runs.size() && i < a_values.size(); ++i)
        legend.push_back({"a = " + fg(a_values[i]), "#404040",
                          kDash[i % 3][0] ? kDash[i % 3] : "", false});
    return render(fr, title, config_hash, "year", ylab_l, ylab_r, legend);
}

std::string phase_portrait_svg(const RamseyParams& params,
                               const std::string& config_hash) {
    SteadyState ss = steady_state(params);
    Frame fr;
    fr.x0 = 0.0;
    fr.x1 = 2.4 * ss.k_star;
    fr.yl0 = 0.0;
    fr.yl1 = 1.7 * ss.c_star;

    auto in_box = [&](double k, double c) {
        return k >= fr.x0 && k <= fr.x1 && c >= fr.yl0 && c <= fr.yl1;
    };
    auto crop_path = [&](const RamseyPath& p) {
        Pts pts;
        for (size_t i = 0; i < p.t.size(); ++i) {
            if (!in_box(p.k[i], p.c[i])) break;
            pts.push_back({p.k[i], p.c[i]});
        }
        return pts;
    };

    // kdot = 0 nullcline: c = f(k) - (delta + g_pop)k
    Pts null_k;
    for (int i = 1; i <= 240; ++i) {
        double k = fr.x1 * i / 240.0;
        double c = params.tfp * std::pow(k, params.gamma) -
                   (params.delta + params.g_pop) * k;
        if (c >= fr.yl0 && c <= fr.yl1) null_k.push_back({k, c});
    }
    fr.poly(null_k, "#2ca02c", "4 4", false, 1.4);
    fr.vline(ss.k_star, "#9467bd", "4 4");

    const double k_low = 0.3 * ss.k_star;
    const double k_high = 2.0 * ss.k_star;
    SaddlePath sp_low = saddle_path(k_low, params);
    SaddlePath sp_high = saddle_path(k_high, params);
    fr.poly(crop_path(sp_low.path), "#1f77b4", "", false, 2.2);
    fr.poly(crop_path(sp_high.path), "#1f77b4", "", false, 2.2);

    for (double rel : {0.97, 0.90, 1.03, 1.10}) {
        RamseyPath fan_low = integrate_ramsey(k_low, sp_low.c0 * rel, params, 120.0);
        RamseyPath fan_high = integrate_ramsey(k_high, sp_high.c0 * rel, params, 120.0);
        fr.poly(crop_path(fan_low), "#d62728", "", false, 1.0);
        fr.poly(crop_path(fan_high), "#d62728", "", false, 1.0);
    }

    fr.dot(ss.k_star, ss.c_star, 4.5, "#000000");

    std::vector<LegendEntry> legend{
        {"saddle path", "#1f77b4", "", false},
        {"divergent paths", "#d62728", "", false},
        {"k' = 0 nullcline", "#2ca02c", "4 4", false},
        {"c' = 0 nullcline", "#9467bd", "4 4", false},
        {"steady state", "#000000", "", true}};
    return render(fr, "Ramsey phase portrait", config_hash, "capital per capita",
                  "consumption per capita", "", legend);
}

} // namespace dice

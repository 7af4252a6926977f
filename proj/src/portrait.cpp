#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "pwl2/report.hpp"

namespace pwl2 {

namespace {

constexpr int kSamplesPerArc = 200;
constexpr double kEscapeClip = 50.0;  // stop drawing escaping arcs beyond this multiple of |seed|
constexpr double kCanvas = 600.0;

struct Row {
    double t;
    Side side;
    Vec2 y;
};

void sample_orbit(const Orbit& orbit, double time_sign, std::vector<Row>& rows) {
    const double seed_norm = orbit.seed.norm();
    for (const Arc& arc : orbit.arcs) {
        const double t_end = arc.infinite() ? arc.t0 + kRenderHorizon : arc.t1;
        for (int i = 0; i <= kSamplesPerArc; ++i) {
            const double t = arc.t0 + (t_end - arc.t0) * i / kSamplesPerArc;
            const Vec2 y = arc.at(t);
            rows.push_back({time_sign * t, arc.side, y});
            const double n = y.norm();
            if (n > kEscapeClip * seed_norm || n < kOriginThreshold * seed_norm) {
                break;
            }
        }
    }
}

std::vector<Row> trace_rows(const PortraitTrace& trace) {
    std::vector<Row> rows;
    if (trace.backward) {
        std::vector<Row> back;
        sample_orbit(*trace.backward, -1.0, back);
        std::reverse(back.begin(), back.end());
        for (const Row& r : back) {
            if (r.t < 0.0) {
                rows.push_back(r);
            }
        }
    }
    sample_orbit(trace.forward, 1.0, rows);
    return rows;
}

std::string num(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

struct Viewport {
    double x_min = -1.0;
    double y_min = -1.0;
    double span = 2.0;

    [[nodiscard]] double px(double y1) const { return (y1 - x_min) / span * kCanvas; }
    [[nodiscard]] double py(double y2) const { return kCanvas - (y2 - y_min) / span * kCanvas; }
};

std::string point(const Viewport& vp, Vec2 y) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2) << vp.px(y.x1) << ',' << vp.py(y.x2);
    return os.str();
}

}  // namespace

std::string orbit_csv(const PortraitTrace& trace, const Mat2& t_inverse) {
    std::ostringstream os;
    os << "t,side,y1,y2,x1,x2\r\n";
    for (const Row& r : trace_rows(trace)) {
        const Vec2 x = t_inverse * r.y;
        os << num(r.t) << ',' << to_string(r.side) << ',' << num(r.y.x1) << ',' << num(r.y.x2) << ',' << num(x.x1)
           << ',' << num(x.x2) << "\r\n";
    }
    return os.str();
}

std::string portrait_svg(const NormalizedSystem& ns, const Verdicts& verdicts,
                         const std::vector<PortraitTrace>& traces) {
    std::vector<std::vector<Row>> polylines;
    double lo1 = 0.0, hi1 = 0.0, lo2 = 0.0, hi2 = 0.0;
    for (const PortraitTrace& trace : traces) {
        polylines.push_back(trace_rows(trace));
        for (const Row& r : polylines.back()) {
            lo1 = std::min(lo1, r.y.x1);
            hi1 = std::max(hi1, r.y.x1);
            lo2 = std::min(lo2, r.y.x2);
            hi2 = std::max(hi2, r.y.x2);
        }
    }
    Viewport vp;
    vp.span = std::max({hi1 - lo1, hi2 - lo2, 1e-9}) * 1.2;
    vp.x_min = 0.5 * (lo1 + hi1) - 0.5 * vp.span;
    vp.y_min = 0.5 * (lo2 + hi2) - 0.5 * vp.span;
    const double far = 4.0 * vp.span + std::hypot(vp.x_min, vp.y_min);

    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kCanvas << "\" height=\"" << kCanvas
       << "\" viewBox=\"0 0 " << kCanvas << ' ' << kCanvas << "\">\n"
       << "<rect x=\"0\" y=\"0\" width=\"" << kCanvas << "\" height=\"" << kCanvas << "\" fill=\"white\"/>\n";

    if (verdicts.homoclinic.witness) {
        const HomoclinicWitness& w = *verdicts.homoclinic.witness;
        // Wedge from l1- through the boundary seed ray to l1+.
        const double a_minus = std::atan2(w.manifold_minus.direction.x2, w.manifold_minus.direction.x1);
        const double a_plus = std::atan2(w.manifold_plus.direction.x2, w.manifold_plus.direction.x1);
        const double a_seed = std::atan2(w.cone.seed_sign, 0.0);
        const auto ccw = [](double from, double to) {
            double d = std::fmod(to - from, 2.0 * M_PI);
            return d < 0.0 ? d + 2.0 * M_PI : d;
        };
        const double to_plus = ccw(a_minus, a_plus);
        const double sweep = ccw(a_minus, a_seed) < to_plus ? to_plus : to_plus - 2.0 * M_PI;
        os << "<polygon fill=\"#4a90d9\" fill-opacity=\"0.18\" stroke=\"none\" points=\"" << point(vp, {0.0, 0.0});
        for (int i = 0; i <= 48; ++i) {
            const double a = a_minus + sweep * i / 48.0;
            os << ' ' << point(vp, {far * std::cos(a), far * std::sin(a)});
        }
        os << "\"/>\n";
        for (const InvariantHalfLine* h : {&w.manifold_plus, &w.manifold_minus}) {
            os << "<line x1=\"" << vp.px(0) << "\" y1=\"" << vp.py(0) << "\" x2=\"" << vp.px(far * h->direction.x1)
               << "\" y2=\"" << vp.py(far * h->direction.x2)
               << "\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
        }
    }

    os << "<line x1=\"" << vp.px(0) << "\" y1=\"0\" x2=\"" << vp.px(0) << "\" y2=\"" << kCanvas
       << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";

    for (const SlidingSegment& seg : verdicts.sliding) {
        const double dir = seg.half_ray == HalfRay::Positive ? 1.0 : -1.0;
        const char* colour = seg.nature == SlidingNature::Attractive ? "#c0392b" : "#e67e22";
        os << "<line x1=\"" << vp.px(0) << "\" y1=\"" << vp.py(0) << "\" x2=\"" << vp.px(0) << "\" y2=\""
           << vp.py(dir * far) << "\" stroke=\"" << colour << "\" stroke-width=\"4\"/>\n";
    }

    static const char* palette[] = {"#2c3e50", "#8e44ad", "#16a085", "#d35400", "#27ae60", "#7f8c8d"};
    for (std::size_t i = 0; i < polylines.size(); ++i) {
        os << "<polyline fill=\"none\" stroke=\"" << palette[i % 6] << "\" stroke-width=\"1.2\" points=\"";
        for (std::size_t k = 0; k < polylines[i].size(); ++k) {
            os << (k ? " " : "") << point(vp, polylines[i][k].y);
        }
        os << "\"/>\n";
        os << "<circle cx=\"" << vp.px(traces[i].seed.x1) << "\" cy=\"" << vp.py(traces[i].seed.x2)
           << "\" r=\"3\" fill=\"" << palette[i % 6] << "\"/>\n";
    }
    os << "<text x=\"8\" y=\"18\" font-family=\"sans-serif\" font-size=\"12\">B+ = [" << ns.b_plus.a11 << ", "
       << ns.b_plus.a12 << "; " << ns.b_plus.a21 << ", " << ns.b_plus.a22 << "]  B- = [" << ns.b_minus.a11 << ", "
       << ns.b_minus.a12 << "; " << ns.b_minus.a21 << ", " << ns.b_minus.a22 << "]</text>\n";
    os << "</svg>\n";
    return os.str();
}

}  // namespace pwl2

#include "takagi/svg.hpp"

#include <sstream>

#include "takagi/humps.hpp"
#include "takagi/kernels.hpp"

namespace takagi {

namespace {

constexpr unsigned kMargin = 48;

struct Frame {
    unsigned width, height;
    Rational y_span;  // vertical data range [0, y_span]

    std::string x_px(const Rational& x) const {
        Rational px = Rational(kMargin) + x * Rational(static_cast<long>(width - 2 * kMargin));
        return px.decimal(2);
    }
    std::string y_px(const Rational& y) const {
        Rational inner(static_cast<long>(height - 2 * kMargin));
        Rational px = Rational(static_cast<long>(height - kMargin)) - (y / y_span) * inner;
        return px.decimal(2);
    }
};

}  // namespace

std::string render_svg(const PlotRequest& req) {
    if (req.depth > 16) throw ResourceError("plot depth exceeds cap 16");
    Frame f{req.width, req.height, Rational(7, 10)};

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << req.width << "\" height=\""
       << req.height << "\" viewBox=\"0 0 " << req.width << " " << req.height << "\">\n";
    os << "<rect width=\"" << req.width << "\" height=\"" << req.height << "\" fill=\"white\"/>\n";

    // frame and reference line at the top of the range (y = 2/3)
    os << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << req.width - 2 * kMargin
       << "\" height=\"" << req.height - 2 * kMargin
       << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
    os << "<line x1=\"" << f.x_px(Rational(0)) << "\" y1=\"" << f.y_px(Rational(2, 3)) << "\" x2=\""
       << f.x_px(Rational(1)) << "\" y2=\"" << f.y_px(Rational(2, 3))
       << "\" stroke=\"#eeeeee\" stroke-width=\"1\"/>\n";
    os << "<text x=\"4\" y=\"" << f.y_px(Rational(2, 3)) << "\" font-size=\"11\" fill=\"#888888\">2/3</text>\n";

    if (req.hump_orders > 0) {
        for (const BinaryWord& w : enumerate_balanced(req.hump_orders)) {
            if (w.empty()) continue;  // the root hump is the whole frame
            Hump h = hump(w);
            Rational rw = h.I.width(), rh = h.J.width();
            os << "<rect x=\"" << f.x_px(h.I.lo) << "\" y=\"" << f.y_px(h.J.hi) << "\" width=\""
               << (rw * Rational(static_cast<long>(req.width - 2 * kMargin))).decimal(2) << "\" height=\""
               << ((rh / f.y_span) * Rational(static_cast<long>(req.height - 2 * kMargin))).decimal(2)
               << "\" fill=\"#a8c8f0\" fill-opacity=\"0.35\" stroke=\"#5588cc\" stroke-width=\"0.6\"/>\n";
        }
    }

    // the graph itself
    std::vector<Rational> values = kernels::graph_values(req.depth);
    os << "<polyline fill=\"none\" stroke=\"#203050\" stroke-width=\"1\" points=\"";
    const Rational step = pow2_inv(req.depth);
    Rational x(0);
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) os << ' ';
        os << f.x_px(x) << ',' << f.y_px(values[k]);
        x += step;
    }
    os << "\"/>\n";

    if (req.level) {
        os << "<line x1=\"" << f.x_px(Rational(0)) << "\" y1=\"" << f.y_px(*req.level) << "\" x2=\""
           << f.x_px(Rational(1)) << "\" y2=\"" << f.y_px(*req.level)
           << "\" stroke=\"#cc3333\" stroke-width=\"1\" stroke-dasharray=\"5,3\"/>\n";
        os << "<text x=\"4\" y=\"" << f.y_px(*req.level) << "\" font-size=\"11\" fill=\"#cc3333\">y="
           << req.level->str() << "</text>\n";
    }

    os << "</svg>\n";
    return os.str();
}

}  // namespace takagi

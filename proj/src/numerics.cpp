#include "eady/numerics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace eady {

RootResult bisect(const std::function<double(double)>& f, double lo, double hi,
                  double ftol, double xtol, int max_iter) {
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream msg;
        msg << "bisect: no sign change on [" << lo << ", " << hi << "] (f = " << flo
            << ", " << fhi << ")";
        throw NumericalError(msg.str());
    }
    RootResult r;
    for (int it = 1; it <= max_iter; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        r = {mid, fm, it};
        if (std::abs(fm) <= ftol || 0.5 * (hi - lo) <= xtol) return r;
        if (mid <= lo || mid >= hi) return r;  // bracket exhausted at double precision
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return r;
}

RootResult safeguarded_newton(const std::function<void(double, double&, double&)>& fdf,
                              double lo, double hi, double ftol, int max_iter) {
    double flo = 0.0, dlo = 0.0, fhi = 0.0, dhi = 0.0;
    fdf(lo, flo, dlo);
    fdf(hi, fhi, dhi);
    if (flo == 0.0) return {lo, 0.0, 0};
    if (fhi == 0.0) return {hi, 0.0, 0};
    if ((flo > 0.0) == (fhi > 0.0))
        throw NumericalError("safeguarded_newton: bracket has no sign change");
    const bool rising = fhi > 0.0;
    double x = 0.5 * (lo + hi);
    double fx = 0.0, dx = 0.0;
    for (int it = 1; it <= max_iter; ++it) {
        fdf(x, fx, dx);
        if (std::abs(fx) <= ftol) return {x, fx, it};
        if ((fx > 0.0) == rising) hi = x; else lo = x;
        double next = (dx != 0.0) ? x - fx / dx : lo - 1.0;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == x || hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::abs(x))
            return {x, fx, it};
        x = next;
    }
    return {x, fx, max_iter};
}

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    if (a == b) return 0.0;
    const double fa = f(a);
    const double fb = f(b);
    const double fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_step(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

double golden_section_max(const std::function<double(double)>& f, double lo, double hi,
                          double xtol) {
    const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - invphi * (hi - lo);
    double d = lo + invphi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    while (hi - lo > xtol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - invphi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + invphi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

double wrap_to(double x, double origin, double period) {
    double r = std::fmod(x - origin, period);
    if (r < 0.0) r += period;
    if (r >= period) r -= period;
    return origin + r;
}

double periodic_delta(double a, double b, double period) {
    return wrap_to(b - a, -0.5 * period, period);
}

}  // namespace eady

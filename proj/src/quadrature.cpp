#include "nlpoisson/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <stdexcept>
#include <string>

namespace nlpoisson {

namespace {

using cd = std::complex<double>;

// 15-point Kronrod abscissae and weights with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr std::size_t kMaxGradingLevels = 1020;

struct Panel {
    double a = 0.0;
    double b = 0.0;
    int piece = 0;
    std::vector<cd> value;
    std::vector<double> error;
    double priority = 0.0;
};

struct PanelOrder {
    bool operator()(const Panel& x, const Panel& y) const { return x.priority < y.priority; }
};

// One integrand on a finite segment, possibly the t -> 1/t image of a tail.
struct Piece {
    const VectorIntegrand* f = nullptr;
    bool inverted = false;

    void operator()(double s, std::span<cd> out) const {
        if (!inverted) {
            (*f)(s, out);
            return;
        }
        (*f)(1.0 / s, out);
        const double jac = 1.0 / (s * s);
        for (cd& v : out) v *= jac;
    }
};

class AdaptiveIntegrator {
public:
    AdaptiveIntegrator(std::size_t components, const QuadratureSpec& spec)
        : m_(components), spec_(spec), total_(components), total_error_(components), scratch_(components) {}

    void add_piece(const Piece& piece) { pieces_.push_back(piece); }

    void add_panel(int piece, double a, double b) {
        Panel p = evaluate(piece, a, b);
        accumulate(p, 1.0);
        queue_.push(std::move(p));
    }

    /// Panels [c 2^-(k+1), c 2^-k] toward 0 plus a closing sliver.
    void add_graded(int piece, double c, double alpha) {
        double upper = c;
        for (std::size_t level = 0; level < kMaxGradingLevels; ++level) {
            const double lower = 0.5 * upper;
            add_panel(piece, lower, upper);
            upper = lower;
            std::vector<cd> sliver(m_);
            call(piece, upper, sliver);
            bool small = true;
            for (std::size_t i = 0; i < m_; ++i) {
                sliver[i] *= upper / (alpha + 1.0);
                if (std::abs(sliver[i]) > 0.01 * target(i)) small = false;
            }
            if (small || level + 1 == kMaxGradingLevels) {
                for (std::size_t i = 0; i < m_; ++i) {
                    total_[i] += sliver[i];
                    total_error_[i] += std::abs(sliver[i]);
                }
                if (!small) converged_ = false;
                return;
            }
        }
    }

    void refine() {
        std::size_t bisections = 0;
        while (!satisfied()) {
            if (bisections >= spec_.max_subdivisions || queue_.empty()) {
                converged_ = false;
                break;
            }
            Panel worst = queue_.top();
            queue_.pop();
            const double mid = 0.5 * (worst.a + worst.b);
            if (!(mid > worst.a && mid < worst.b)) {
                // cannot split further in double precision
                converged_ = false;
                break;
            }
            accumulate(worst, -1.0);
            add_panel(worst.piece, worst.a, mid);
            add_panel(worst.piece, mid, worst.b);
            ++bisections;
        }
        recompute_totals();
    }

    VectorQuadratureResult result() const {
        VectorQuadratureResult r;
        r.values = total_;
        r.errors = total_error_;
        r.converged = converged_ && satisfied();
        r.evaluations = evaluations_;
        return r;
    }

private:
    double target(std::size_t i) const {
        return std::max(spec_.abs_tol, spec_.rel_tol * std::abs(total_[i]));
    }

    bool satisfied() const {
        for (std::size_t i = 0; i < m_; ++i) {
            if (total_error_[i] > target(i)) return false;
        }
        return true;
    }

    void call(int piece, double s, std::span<cd> out) {
        pieces_[static_cast<std::size_t>(piece)](s, out);
        ++evaluations_;
        for (const cd& v : out) {
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
                throw std::runtime_error("non-finite integrand value at t = " + std::to_string(s));
            }
        }
    }

    Panel evaluate(int piece, double a, double b) {
        Panel p{a, b, piece, std::vector<cd>(m_), std::vector<double>(m_), 0.0};
        const double center = 0.5 * (a + b);
        const double half = 0.5 * (b - a);
        std::vector<cd> kronrod(m_);
        std::vector<cd> gauss(m_);
        call(piece, center, scratch_);
        for (std::size_t i = 0; i < m_; ++i) {
            kronrod[i] = kWgk[7] * scratch_[i];
            gauss[i] = kWg[3] * scratch_[i];
        }
        std::vector<cd> left(m_);
        for (std::size_t j = 0; j < 7; ++j) {
            const double dx = half * kXgk[j];
            call(piece, center - dx, left);
            call(piece, center + dx, scratch_);
            for (std::size_t i = 0; i < m_; ++i) {
                const cd pair = left[i] + scratch_[i];
                kronrod[i] += kWgk[j] * pair;
                if (j % 2 == 1) gauss[i] += kWg[j / 2] * pair;
            }
        }
        double priority = 0.0;
        for (std::size_t i = 0; i < m_; ++i) {
            p.value[i] = half * kronrod[i];
            p.error[i] = std::abs(half * (kronrod[i] - gauss[i]));
            priority = std::max(priority, p.error[i] / target(i));
        }
        p.priority = priority;
        return p;
    }

    void accumulate(const Panel& p, double sign) {
        for (std::size_t i = 0; i < m_; ++i) {
            total_[i] += sign * p.value[i];
            total_error_[i] += sign * p.error[i];
        }
    }

    void recompute_totals() {
        // running sums drift after many subtractions; rebuild from the panels
        std::vector<cd> value(m_);
        std::vector<double> error(m_);
        auto copy = queue_;
        while (!copy.empty()) {
            const Panel& p = copy.top();
            for (std::size_t i = 0; i < m_; ++i) {
                value[i] += p.value[i];
                error[i] += p.error[i];
            }
            copy.pop();
        }
        for (std::size_t i = 0; i < m_; ++i) {
            value[i] += sliver_total_[i];
            error[i] += sliver_error_[i];
        }
        total_ = value;
        total_error_ = error;
    }

public:
    // Slivers are not panels; remember them so recompute_totals keeps them.
    void freeze_slivers() {
        sliver_total_ = total_;
        sliver_error_ = total_error_;
        auto copy = queue_;
        while (!copy.empty()) {
            const Panel& p = copy.top();
            for (std::size_t i = 0; i < m_; ++i) {
                sliver_total_[i] -= p.value[i];
                sliver_error_[i] -= p.error[i];
            }
            copy.pop();
        }
    }

private:
    std::size_t m_;
    QuadratureSpec spec_;
    std::vector<Piece> pieces_;
    std::priority_queue<Panel, std::vector<Panel>, PanelOrder> queue_;
    std::vector<cd> total_;
    std::vector<double> total_error_;
    std::vector<cd> sliver_total_;
    std::vector<double> sliver_error_;
    std::vector<cd> scratch_;
    std::size_t evaluations_ = 0;
    bool converged_ = true;
};

QuadratureResult to_scalar(const VectorQuadratureResult& r) {
    return {r.values.front(), r.errors.front(), r.converged, r.evaluations};
}

VectorIntegrand wrap(const ScalarIntegrand& f) {
    return [&f](double t, std::span<cd> out) { out[0] = f(t); };
}

}  // namespace

void QuadratureSpec::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) throw std::invalid_argument("quadrature tolerances must be positive");
    if (!(split_point > 0.0)) throw std::invalid_argument("split point must be positive");
    if (singular_exponent && !(*singular_exponent > -1.0)) {
        throw std::invalid_argument("singular exponent must be > -1 for an integrable endpoint");
    }
    if (tail_exponent && !(*tail_exponent > -1.0)) {
        throw std::invalid_argument("tail exponent must be > -1 for an integrable tail");
    }
}

VectorQuadratureResult integrate_half_line(const VectorIntegrand& f, std::size_t components,
                                           const QuadratureSpec& spec) {
    spec.validate();
    if (components == 0) throw std::invalid_argument("integrand must have at least one component");
    AdaptiveIntegrator integrator(components, spec);
    integrator.add_piece(Piece{&f, false});
    integrator.add_piece(Piece{&f, true});
    const double head = spec.split_point;
    const double tail = 1.0 / spec.split_point;
    if (spec.singular_exponent) {
        integrator.add_graded(0, head, *spec.singular_exponent);
    } else {
        integrator.add_panel(0, 0.0, head);
    }
    if (spec.tail_exponent) {
        integrator.add_graded(1, tail, *spec.tail_exponent);
    } else {
        integrator.add_panel(1, 0.0, tail);
    }
    integrator.freeze_slivers();
    integrator.refine();
    return integrator.result();
}

QuadratureResult integrate_half_line(const ScalarIntegrand& f, const QuadratureSpec& spec) {
    return to_scalar(integrate_half_line(wrap(f), 1, spec));
}

QuadratureResult partial_integral(const ScalarIntegrand& f, double cutoff, const QuadratureSpec& spec) {
    spec.validate();
    if (!(cutoff > 1.0)) throw std::invalid_argument("partial_integral needs T > 1");
    const VectorIntegrand g = wrap(f);
    AdaptiveIntegrator integrator(1, spec);
    integrator.add_piece(Piece{&g, false});
    // dyadic breakpoints 1/T < ... < 1/2 < 1 < 2 < ... < T
    std::vector<double> breaks{1.0};
    for (double x = 2.0; x < cutoff; x *= 2.0) {
        breaks.push_back(x);
        breaks.insert(breaks.begin(), 1.0 / x);
    }
    breaks.insert(breaks.begin(), 1.0 / cutoff);
    breaks.push_back(cutoff);
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) integrator.add_panel(0, breaks[i], breaks[i + 1]);
    integrator.freeze_slivers();
    integrator.refine();
    return to_scalar(integrator.result());
}

QuadratureResult integrate_interval(const ScalarIntegrand& f, double a, double b, const QuadratureSpec& spec) {
    spec.validate();
    if (!(b > a)) throw std::invalid_argument("integrate_interval needs a < b");
    const VectorIntegrand g = wrap(f);
    AdaptiveIntegrator integrator(1, spec);
    integrator.add_piece(Piece{&g, false});
    integrator.add_panel(0, a, b);
    integrator.freeze_slivers();
    integrator.refine();
    return to_scalar(integrator.result());
}

}  // namespace nlpoisson

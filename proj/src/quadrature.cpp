#include "siegel/quadrature.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <mutex>
#include <queue>
#include <thread>
#include <tuple>

namespace siegel::quad {

namespace {

// Newton-polishes a node on the monic recurrence and recomputes its weight as the
// reciprocal Christoffel function 1 / sum_k p_k(x)^2 over the orthonormal
// polynomials. The eigenvector route only gives weights to absolute precision,
// which ruins small weights far out on [0, inf) or R.
void polish(const RVec& diag, const RVec& off, double mu0, double& x, double& w) {
    const int n = int(diag.size());
    for (int it = 0; it < 3; ++it) {
        double q0 = 0.0, q1 = 1.0, d0 = 0.0, d1 = 0.0;
        for (int k = 0; k < n; ++k) {
            double b2 = k > 0 ? off[k - 1] * off[k - 1] : 0.0;
            double q2 = (x - diag[k]) * q1 - b2 * q0;
            double d2 = q1 + (x - diag[k]) * d1 - b2 * d0;
            q0 = q1;
            q1 = q2;
            d0 = d1;
            d1 = d2;
            double m = std::max(std::abs(q1), std::abs(d1));
            if (m > 1e150) {
                q0 /= m;
                q1 /= m;
                d0 /= m;
                d1 /= m;
            }
        }
        if (d1 == 0.0 || !std::isfinite(q1 / d1)) break;
        double dx = q1 / d1;
        if (std::abs(dx) > 1e-6 * (1.0 + std::abs(x))) break;
        x -= dx;
        if (std::abs(dx) <= 1e-16 * (1.0 + std::abs(x))) break;
    }
    double p0 = 0.0, p1 = 1.0 / std::sqrt(mu0), L = 0.0, S = p1 * p1;
    for (int k = 0; k + 1 < n; ++k) {
        double p2 = ((x - diag[k]) * p1 - (k > 0 ? off[k - 1] : 0.0) * p0) / off[k];
        p0 = p1;
        p1 = p2;
        S += p1 * p1;
        double m = std::abs(p1);
        if (m > 1e100) {
            p0 /= m;
            p1 /= m;
            S /= m * m;
            L += std::log(m);
        }
    }
    double cand = std::exp(-2.0 * L - std::log(S));
    if (std::isfinite(cand) && cand > 0.0) w = cand;
}

Rule golub_welsch(const RVec& diag, const RVec& off, double mu0) {
    const int n = int(diag.size());
    Eigen::VectorXd d(n), e(std::max(n - 1, 0));
    for (int i = 0; i < n; ++i) d[i] = diag[i];
    for (int i = 0; i + 1 < n; ++i) e[i] = off[i];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
    if (es.info() != Eigen::Success) throw ConvergenceError("Golub-Welsch eigen solve failed");
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        r.x[i] = es.eigenvalues()[i];
        double v0 = es.eigenvectors()(0, i);
        r.w[i] = mu0 * v0 * v0;
        polish(diag, off, mu0, r.x[i], r.w[i]);
    }
    return r;
}

void check_n(int n) {
    if (n < 1) throw ContractError("quadrature rule needs at least one node");
}

}  // namespace

Rule gauss_legendre(int n) {
    check_n(n);
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            if (n == 1) p0 = 1.0;
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        if (n == 1) p0 = 1.0;
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

Rule gauss_jacobi(int n, double alpha, double beta) {
    check_n(n);
    if (!(alpha > -1.0) || !(beta > -1.0)) throw ContractError("gauss_jacobi: need alpha, beta > -1");
    RVec diag(n), off(std::max(n - 1, 0));
    const double ab = alpha + beta;
    for (int k = 0; k < n; ++k) {
        if (k == 0) {
            diag[k] = (beta - alpha) / (ab + 2.0);
        } else {
            double s = 2.0 * k + ab;
            diag[k] = (beta * beta - alpha * alpha) / (s * (s + 2.0));
        }
    }
    for (int k = 1; k < n; ++k) {
        double s = 2.0 * k + ab;
        double num = 4.0 * k * (k + alpha) * (k + beta) * (k + ab);
        double den = s * s * (s + 1.0) * (s - 1.0);
        off[k - 1] = std::sqrt(num / den);
    }
    double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) +
                          std::lgamma(beta + 1.0) - std::lgamma(ab + 2.0));
    return golub_welsch(diag, off, mu0);
}

Rule gauss_laguerre(int n, double alpha) {
    check_n(n);
    if (!(alpha > -1.0)) throw ContractError("gauss_laguerre: need alpha > -1");
    RVec diag(n), off(std::max(n - 1, 0));
    for (int k = 0; k < n; ++k) diag[k] = 2.0 * k + alpha + 1.0;
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k * (k + alpha));
    return golub_welsch(diag, off, std::tgamma(alpha + 1.0));
}

Rule gauss_hermite(int n) {
    check_n(n);
    RVec diag(n, 0.0), off(std::max(n - 1, 0));
    for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(k / 2.0);
    Rule r = golub_welsch(diag, off, std::sqrt(kPi));
    // symmetrize to remove eigen-solver roundoff
    for (int i = 0; i < n / 2; ++i) {
        double x = 0.5 * (r.x[n - 1 - i] - r.x[i]);
        double w = 0.5 * (r.w[n - 1 - i] + r.w[i]);
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        r.w[i] = r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

namespace {

std::mutex g_cache_mutex;
std::map<std::tuple<int, int, double, double>, Rule> g_cache;

template <class Make>
const Rule& cached(int kind, int n, double a, double b, Make make) {
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    auto key = std::make_tuple(kind, n, a, b);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
    return g_cache.emplace(key, make()).first->second;
}

}  // namespace

const Rule& legendre(int n) {
    return cached(0, n, 0, 0, [&] { return gauss_legendre(n); });
}
const Rule& jacobi(int n, double alpha, double beta) {
    return cached(1, n, alpha, beta, [&] { return gauss_jacobi(n, alpha, beta); });
}
const Rule& laguerre(int n, double alpha) {
    return cached(2, n, alpha, 0, [&] { return gauss_laguerre(n, alpha); });
}
const Rule& hermite(int n) {
    return cached(3, n, 0, 0, [&] { return gauss_hermite(n); });
}

// ---------------------------------------------------------------------------

namespace {

struct Panel {
    double a, b;
    cplx val;
    double err;
    bool operator<(const Panel& o) const { return err < o.err; }
};

Panel eval_panel(const CFun& f, double a, double b, int n) {
    const Rule& lo = legendre(n);
    const Rule& hi = legendre(2 * n);
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cplx ql{}, qh{};
    for (std::size_t i = 0; i < lo.size(); ++i) ql += lo.w[i] * f(mid + half * lo.x[i]);
    for (std::size_t i = 0; i < hi.size(); ++i) qh += hi.w[i] * f(mid + half * hi.x[i]);
    ql *= half;
    qh *= half;
    return {a, b, qh, std::abs(qh - ql)};
}

}  // namespace

Result adaptive(const CFun& f, const RVec& breaks, double rel_tol, double abs_tol,
                int max_intervals, int n) {
    if (breaks.size() < 2) throw ContractError("adaptive: need at least two break points");
    std::priority_queue<Panel> heap;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (!(breaks[i + 1] > breaks[i])) continue;
        heap.push(eval_panel(f, breaks[i], breaks[i + 1], n));
    }
    std::vector<Panel> frozen;
    auto totals = [&](cplx& v, double& e) {
        v = 0.0;
        e = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            v += copy.top().val;
            e += copy.top().err;
            copy.pop();
        }
        for (const auto& p : frozen) {
            v += p.val;
            e += p.err;
        }
    };
    cplx total;
    double err;
    totals(total, err);
    int count = int(heap.size());
    while (!heap.empty() && err > std::max(rel_tol * std::abs(total), abs_tol) &&
           count < max_intervals) {
        Panel p = heap.top();
        heap.pop();
        double m = 0.5 * (p.a + p.b);
        if (!(m > p.a && m < p.b)) {
            frozen.push_back(p);
            continue;
        }
        Panel l = eval_panel(f, p.a, m, n), r = eval_panel(f, m, p.b, n);
        total += l.val + r.val - p.val;
        err += l.err + r.err - p.err;
        heap.push(l);
        heap.push(r);
        ++count;
        if (count % 64 == 0) totals(total, err);  // resync against drift
    }
    totals(total, err);
    return {total, err, count};
}

Result adaptive(const CFun& f, double a, double b, double rel_tol, double abs_tol,
                int max_intervals, int n) {
    return adaptive(f, RVec{a, b}, rel_tol, abs_tol, max_intervals, n);
}

// ---------------------------------------------------------------------------

namespace {

enum class PieceKind { Head, Middle, Tail, Whole };

struct Piece {
    PieceKind kind;
    double a, b;
    cplx val;
    double err;
    bool operator<(const Piece& o) const { return err < o.err; }
};

constexpr int kPieceNodes = 12;

cplx piece_rule(const CFun& h, double lambda, PieceKind kind, double a, double b, int n) {
    cplx q{};
    switch (kind) {
        case PieceKind::Head: {
            // int_0^b h(s) e^{-s} s^lambda ds with s^lambda in the weight
            const Rule& r = jacobi(n, 0.0, lambda);
            for (std::size_t i = 0; i < r.size(); ++i) {
                double s = 0.5 * b * (1.0 + r.x[i]);
                q += r.w[i] * h(s) * std::exp(-s);
            }
            return q * std::pow(0.5 * b, lambda + 1.0);
        }
        case PieceKind::Middle: {
            const Rule& r = legendre(n);
            double mid = 0.5 * (a + b), half = 0.5 * (b - a);
            for (std::size_t i = 0; i < r.size(); ++i) {
                double s = mid + half * r.x[i];
                q += r.w[i] * h(s) * std::pow(s, lambda) * std::exp(-s);
            }
            return q * half;
        }
        case PieceKind::Tail: {
            const Rule& r = laguerre(n, 0.0);
            for (std::size_t i = 0; i < r.size(); ++i) {
                double s = a + r.x[i];
                q += r.w[i] * h(s) * std::pow(s, lambda);
            }
            return q * std::exp(-a);
        }
        case PieceKind::Whole: {
            const Rule& r = laguerre(n, lambda);
            for (std::size_t i = 0; i < r.size(); ++i) q += r.w[i] * h(r.x[i]);
            return q;
        }
    }
    return q;
}

Piece make_piece(const CFun& h, double lambda, PieceKind kind, double a, double b) {
    cplx lo = piece_rule(h, lambda, kind, a, b, kPieceNodes);
    cplx hi = piece_rule(h, lambda, kind, a, b, 2 * kPieceNodes);
    return {kind, a, b, hi, std::abs(hi - lo)};
}

}  // namespace

Result gamma_weighted(const CFun& h, double lambda, RVec breaks, double rel_tol, double abs_tol,
                      int max_pieces) {
    if (!(lambda > -1.0)) throw ContractError("gamma_weighted: need lambda > -1");
    RVec pts;
    for (double b : breaks)
        if (b > 0.0 && std::isfinite(b)) pts.push_back(b);
    std::priority_queue<Piece> heap;
    if (pts.empty()) {
        heap.push(make_piece(h, lambda, PieceKind::Whole, 0.0, 0.0));
    } else {
        // A dyadic ladder between the smallest break, 1 and the largest break keeps
        // every piece within a factor two of its own scale, so the node-pair error
        // estimate cannot be fooled by an integrand that lives between nodes.
        double lo = std::min(*std::min_element(pts.begin(), pts.end()), 1.0);
        double hi = std::max(*std::max_element(pts.begin(), pts.end()), 1.0);
        int k0 = int(std::floor(std::log2(lo))), k1 = int(std::ceil(std::log2(hi)));
        for (int k = k0; k <= k1; ++k) pts.push_back(std::ldexp(1.0, k));
        std::sort(pts.begin(), pts.end());
        pts.erase(std::unique(pts.begin(), pts.end(),
                              [](double x, double y) { return std::abs(x - y) <= 1e-15 * y; }),
                  pts.end());
        heap.push(make_piece(h, lambda, PieceKind::Head, 0.0, pts.front()));
        for (std::size_t i = 0; i + 1 < pts.size(); ++i)
            heap.push(make_piece(h, lambda, PieceKind::Middle, pts[i], pts[i + 1]));
        heap.push(make_piece(h, lambda, PieceKind::Tail, pts.back(), 0.0));
    }

    std::vector<Piece> frozen;
    auto totals = [&](cplx& v, double& e) {
        v = 0.0;
        e = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            v += copy.top().val;
            e += copy.top().err;
            copy.pop();
        }
        for (const auto& p : frozen) {
            v += p.val;
            e += p.err;
        }
    };
    cplx total;
    double err;
    totals(total, err);
    int count = int(heap.size());
    while (!heap.empty() && err > std::max(rel_tol * std::abs(total), abs_tol) &&
           count < max_pieces) {
        Piece p = heap.top();
        heap.pop();
        std::vector<Piece> kids;
        switch (p.kind) {
            case PieceKind::Whole:
                kids.push_back(make_piece(h, lambda, PieceKind::Head, 0.0, 1.0));
                kids.push_back(make_piece(h, lambda, PieceKind::Tail, 1.0, 0.0));
                break;
            case PieceKind::Head: {
                double c = 0.5 * p.b;
                if (!(c > 0.0)) break;
                kids.push_back(make_piece(h, lambda, PieceKind::Head, 0.0, c));
                kids.push_back(make_piece(h, lambda, PieceKind::Middle, c, p.b));
                break;
            }
            case PieceKind::Middle: {
                double m = 0.5 * (p.a + p.b);
                if (!(m > p.a && m < p.b)) break;
                kids.push_back(make_piece(h, lambda, PieceKind::Middle, p.a, m));
                kids.push_back(make_piece(h, lambda, PieceKind::Middle, m, p.b));
                break;
            }
            case PieceKind::Tail: {
                double len = std::max(1.0, p.a);
                kids.push_back(make_piece(h, lambda, PieceKind::Middle, p.a, p.a + len));
                kids.push_back(make_piece(h, lambda, PieceKind::Tail, p.a + len, 0.0));
                break;
            }
        }
        if (kids.empty()) {
            frozen.push_back(p);
            continue;
        }
        total -= p.val;
        err -= p.err;
        for (auto& k : kids) {
            total += k.val;
            err += k.err;
            heap.push(k);
        }
        ++count;
        if (count % 64 == 0) totals(total, err);
    }
    totals(total, err);
    return {total, err, count};
}

void composite_nodes(double a, double b, int panels, int order, RVec& x, RVec& w) {
    if (panels < 1) throw ContractError("composite_nodes: need at least one panel");
    const Rule& r = legendre(order);
    x.clear();
    w.clear();
    x.reserve(std::size_t(panels) * r.size());
    w.reserve(std::size_t(panels) * r.size());
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double mid = a + (p + 0.5) * h;
        for (std::size_t i = 0; i < r.size(); ++i) {
            x.push_back(mid + 0.5 * h * r.x[i]);
            w.push_back(0.5 * h * r.w[i]);
        }
    }
}

void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (count == 0) return;
    std::size_t nt = threads > 0 ? std::size_t(threads)
                                 : std::max(1u, std::thread::hardware_concurrency());
    nt = std::min(nt, count);
    if (nt <= 1) {
        for (std::size_t i = 0; i < count; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(nt);
    std::size_t block = (count + nt - 1) / nt;
    for (std::size_t k = 0; k < nt; ++k) {
        std::size_t lo = k * block, hi = std::min(count, lo + block);
        if (lo >= hi) break;
        pool.emplace_back([&, k, lo, hi] {
            try {
                for (std::size_t i = lo; i < hi; ++i) body(i);
            } catch (...) {
                errors[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

}  // namespace siegel::quad

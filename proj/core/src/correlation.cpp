#include "cswire/correlation.hpp"

#include <cmath>
#include <cstdio>

namespace cswire {

SiteObservable SiteObservable::make(std::vector<cplx> entries, int d, int site, double tol) {
    if (d < 1 || entries.size() != static_cast<std::size_t>(d) * static_cast<std::size_t>(d))
        throw validation_error("observable must be a d x d matrix");
    SiteObservable o;
    o.entries = std::move(entries);
    o.d = d;
    o.site = site;
    for (const auto& z : o.entries)
        if (!is_finite(z)) throw validation_error("non-finite observable entry");
    for (int r = 0; r < d; ++r)
        for (int c = r; c < d; ++c)
            if (std::abs(o.at(r, c) - std::conj(o.at(c, r))) > tol)
                throw validation_error("observable is not Hermitian");
    return o;
}

double SiteObservable::op_norm_bound() const {
    // Hermitian H = A + iB embeds as the real symmetric [[A, -B], [B, A]];
    // the embedding's spectrum is H's spectrum doubled.
    const int n = 2 * d;
    std::vector<double> m(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) {
            double a = at(r, c).real(), b = at(r, c).imag();
            m[static_cast<std::size_t>(n * r + c)] = a;
            m[static_cast<std::size_t>(n * (r + d) + (c + d))] = a;
            m[static_cast<std::size_t>(n * r + (c + d))] = -b;
            m[static_cast<std::size_t>(n * (r + d) + c)] = b;
        }
    auto values = symmetric_eigenvalues(std::move(m), n);
    return std::max(std::abs(values.front()), std::abs(values.back()));
}

Mat2 observable_superop(const KrausSet& k, const SiteObservable& o, const Mat2& rho) {
    if (o.d != k.dim()) throw validation_error("observable dimension does not match the chain");
    Mat2 out;
    for (int i = 0; i < o.d; ++i)
        for (int j = 0; j < o.d; ++j) {
            cplx w = o.at(i, j);
            if (w == cplx(0, 0)) continue;
            out += w * (k.ops[static_cast<std::size_t>(j)] * rho *
                        k.ops[static_cast<std::size_t>(i)].adjoint());
        }
    return out;
}

namespace {

double close_with_boundary(const Vec2& right, const Mat2& rho) {
    auto r = boundary_coeffs(right);
    auto v = density_coeffs(rho);
    return r[0] * v[0] + r[1] * v[1] + r[2] * v[2] + r[3] * v[3];
}

}  // namespace

double expectation(const MpsChain& chain, const SiteObservable& o) {
    if (o.site < chain.cursor || o.site > chain.n)
        throw validation_error("observable site out of range");
    const int rest = chain.n - o.site;
    Mat2 rho = chain.kraus.apply_n(chain.cs_state, o.site - chain.cursor);
    rho = observable_superop(chain.kraus, o, rho);
    rho = chain.kraus.apply_n(rho, rest);
    double fn = normalization_factor(chain.transfer(), chain.right, chain.cs_state, chain.remaining());
    return close_with_boundary(chain.right, rho) / fn;
}

double two_point(const MpsChain& chain, const SiteObservable& oa, const SiteObservable& ob) {
    if (oa.site >= ob.site) throw validation_error("two_point requires Oa.site < Ob.site");
    if (oa.site < chain.cursor || ob.site > chain.n)
        throw validation_error("observable site out of range");
    const int r = ob.site - oa.site;
    Mat2 rho = chain.kraus.apply_n(chain.cs_state, oa.site - chain.cursor);
    rho = observable_superop(chain.kraus, oa, rho);
    rho = chain.kraus.apply_n(rho, r - 1);
    rho = observable_superop(chain.kraus, ob, rho);
    rho = chain.kraus.apply_n(rho, chain.n - ob.site);
    double fn = normalization_factor(chain.transfer(), chain.right, chain.cs_state, chain.remaining());
    double joint = close_with_boundary(chain.right, rho) / fn;
    return joint - expectation(chain, oa) * expectation(chain, ob);
}

DecayBound decay_bound(const MpsChain& chain, const SiteObservable& oa, const SiteObservable& ob) {
    if (oa.site >= ob.site) throw validation_error("decay_bound requires Oa.site < Ob.site");
    if (oa.site < chain.cursor || ob.site > chain.n)
        throw validation_error("observable site out of range");
    if (oa.op_norm_bound() > 1.0 + 1e-9 || ob.op_norm_bound() > 1.0 + 1e-9)
        throw validation_error("decay_bound requires observable norms <= 1");

    const double d = chain.kraus.dim();
    const double d2 = d * d, d4 = d2 * d2;
    const int total = chain.remaining();
    const int ka = oa.site - chain.cursor + 1;  // position within the remaining chain
    const int r = ob.site - oa.site;
    const Mat3 block = chain.transfer().block();

    DecayBound b;
    b.f_n = normalization_factor(chain.transfer(), chain.right, chain.cs_state, total);
    double norm_n = op_norm(matrix_power(block, static_cast<unsigned long>(total)));
    double norm_r1 = op_norm(matrix_power(block, static_cast<unsigned long>(r - 1)));
    double norm_nk = op_norm(matrix_power(block, static_cast<unsigned long>(total - ka)));

    b.alpha_bound = d2;
    b.bracket_bound = d2;
    b.fn_deviation = 0.5 * norm_n;
    b.c2_bound = 1.5 * d4 * norm_r1;
    b.c3_bound = 1.5 * d2 * norm_nk;
    b.c5_bound = 0.5 * d2 * norm_r1;

    const double f = b.f_n, f2 = f * f;
    b.total = b.alpha_bound * b.bracket_bound * b.fn_deviation / (2.0 * f2) +
              b.c2_bound / f +
              b.alpha_bound * b.c5_bound / (2.0 * f2) +
              b.c3_bound * b.bracket_bound / (2.0 * f2) +
              b.c3_bound * b.c5_bound / f2;
    return b;
}

CorrelationSeries correlation_series(const MpsChain& chain, const std::vector<cplx>& oa_matrix,
                                     const std::vector<cplx>& ob_matrix, int k, int r_max) {
    if (k < chain.cursor || k + r_max > chain.n)
        throw validation_error("correlation series range exceeds the chain");
    if (r_max < 1) throw validation_error("r_max must be >= 1");
    CorrelationSeries s;
    for (int r = 1; r <= r_max; ++r) {
        SiteObservable oa = SiteObservable::make(oa_matrix, chain.kraus.dim(), k);
        SiteObservable ob = SiteObservable::make(ob_matrix, chain.kraus.dim(), k + r);
        s.separations.push_back(r);
        s.connected.push_back(two_point(chain, oa, ob));
        s.bound.push_back(decay_bound(chain, oa, ob).total);
    }
    // Log-linear fit over the points above the floating-point floor.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (std::size_t i = 0; i < s.connected.size(); ++i) {
        double a = std::abs(s.connected[i]);
        if (a < 1e-13) continue;
        double x = s.separations[i], y = std::log(a);
        sx += x, sy += y, sxx += x * x, sxy += x * y;
        ++count;
    }
    if (count >= 3) {
        double denom = count * sxx - sx * sx;
        if (std::abs(denom) > 1e-12) s.fitted_rate = -(count * sxy - sx * sy) / denom;
    }
    return s;
}

std::string series_to_csv(const CorrelationSeries& s) {
    std::string out = "r,connected,bound,abs_connected\n";
    char buf[128];
    for (std::size_t i = 0; i < s.separations.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g\n", s.separations[i], s.connected[i],
                      s.bound[i], std::abs(s.connected[i]));
        out += buf;
    }
    return out;
}

}  // namespace cswire

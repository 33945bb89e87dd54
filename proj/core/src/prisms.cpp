#include "pappus/prisms.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace pappus {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt6 = 2.449489742783178;

const Vec3d kSingular{-1 / kSqrt6, -1 / kSqrt6, 2 / kSqrt6};  // toward the point class
const Vec3d kMedialPerp{1 / kSqrt2, -1 / kSqrt2, 0};

int sym_index(int i, int j) {
    static const int m[3][3] = {{0, 1, 2}, {1, 3, 4}, {2, 4, 5}};
    return m[i][j];
}

template <class T>
using Row = std::array<T, 6>;

// Rows expressing (q P) x L = 0 in the six entries of a symmetric q.
template <class T>
void parallel_rows(const Vec3<T>& p, const Vec3<T>& l, std::vector<Row<T>>& rows) {
    std::array<Row<T>, 3> c;
    for (auto& r : c) r.fill(T(0));
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i][sym_index(i, j)] += p[j];
    const int pairs[3][2] = {{1, 2}, {2, 0}, {0, 1}};
    for (const auto& pr : pairs) {
        int a = pr[0], b = pr[1];
        Row<T> r;
        for (int k = 0; k < 6; ++k) r[k] = T(c[a][k] * l[b] - c[b][k] * l[a]);
        rows.push_back(r);
    }
}

template <class T>
bool negligible(const T& v, double scale) {
    if constexpr (ScalarTraits<T>::exact) {
        (void)scale;
        return sgn(v) == 0;
    } else {
        return std::fabs(v) <= 1e-10 * scale;
    }
}

// Basis of the nullspace of rows (n x 6) by reduction to row echelon form.
template <class T>
std::vector<Row<T>> nullspace(std::vector<Row<T>> rows) {
    double scale = 0;
    for (const auto& r : rows)
        for (const auto& v : r) scale = std::max(scale, ScalarTraits<T>::magnitude(v));
    if (scale == 0) scale = 1;
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < 6 && rank < rows.size(); ++col) {
        std::size_t best = rank;
        for (std::size_t r = rank; r < rows.size(); ++r)
            if (ScalarTraits<T>::magnitude(rows[r][col]) > ScalarTraits<T>::magnitude(rows[best][col])) best = r;
        if (negligible(rows[best][col], scale)) continue;
        std::swap(rows[rank], rows[best]);
        T inv = T(T(1) / rows[rank][col]);
        for (auto& v : rows[rank]) v = T(v * inv);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || negligible(rows[r][col], scale)) continue;
            T f = rows[r][col];
            for (int k = 0; k < 6; ++k) rows[r][k] = T(rows[r][k] - f * rows[rank][k]);
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<Row<T>> basis;
    for (int free = 0; free < 6; ++free) {
        if (std::find(pivot_col.begin(), pivot_col.end(), free) != pivot_col.end()) continue;
        Row<T> v;
        v.fill(T(0));
        v[free] = T(1);
        for (std::size_t r = 0; r < pivot_col.size(); ++r) v[pivot_col[r]] = T(-rows[r][free]);
        basis.push_back(v);
    }
    return basis;
}

template <class T>
Mat3<T> sym_from_row(const Row<T>& v) {
    Mat3<T> q{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q[i][j] = v[sym_index(i, j)];
    return q;
}

template <class T>
std::vector<Row<T>> polarity_system(const std::array<Flag<T>, 3>& J, int j, int k) {
    if (j == k || j < 0 || k < 0 || j > 2 || k > 2) throw GeometryError(ErrorCode::OutOfRange, "flag indices");
    int m = 3 - j - k;
    std::vector<Row<T>> rows;
    parallel_rows(J[j].point.v, J[k].line.v, rows);
    parallel_rows(J[k].point.v, J[j].line.v, rows);
    parallel_rows(J[m].point.v, J[m].line.v, rows);
    return rows;
}

// The solution for a generic triple.  On the locus where the triple
// product is -1 the solution exists but is singular.
template <class T>
Mat3<T> unique_polarity(const std::vector<Row<T>>& basis) {
    if (basis.empty()) throw GeometryError(ErrorCode::DegenerateTriple, "no polarity preserves the flags");
    if (basis.size() > 1) throw GeometryError(ErrorCode::UnityTripleProduct, "polarity is not unique");
    Mat3<T> q = sym_from_row(basis[0]);
    if (ScalarTraits<T>::is_zero(det(q), std::pow(max_abs(q), 3)))
        throw GeometryError(ErrorCode::UnityTripleProduct, "triple product -1: the solution is singular");
    return q;
}

template <class T>
std::optional<T> exact_sqrt(const T& v) {
    if (v < T(0)) return std::nullopt;
    if constexpr (ScalarTraits<T>::exact) {
        mpz_class n = v.get_num(), d = v.get_den();
        if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
        mpz_class rn, rd;
        mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
        mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
        return T(rn, rd);
    } else {
        return std::sqrt(v);
    }
}

// Cone point: all flag points lie on one line l, so l lᵀ solves every
// incidence and the solutions for a pair form the pencil ψ0 + c l lᵀ.  We
// take the member fixing the point of X represented by delta (the axial
// value: the inflection point is the box fixed point).  The condition
// ψ delta⁻¹ ψ ∝ delta is quadratic in c; its two roots differ by the sign
// of ψ on the common point p of the flag lines, and we keep the root on
// which p has the same sign as the point of the second swapped flag.
template <class T>
Mat3<T> axial_polarity(const std::array<Flag<T>, 3>& J, int l, const std::vector<Row<T>>& basis,
                       const Mat3<T>& delta) {
    ProjLine<T> line = join(J[0].point, J[1].point);
    Mat3<T> ll{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) ll[i][j] = T(line.v[i] * line.v[j]);
    Mat3<T> psi0 = sym_from_row(basis[0]);
    if (proportional(psi0, ll)) psi0 = sym_from_row(basis[1]);
    const Mat3<T> a = adjugate(delta);
    const Mat3<T> p0 = mul(psi0, mul(a, psi0));
    const Mat3<T> p1 = add(mul(psi0, mul(a, ll)), mul(ll, mul(a, psi0)));
    const Mat3<T> p2 = mul(ll, mul(a, ll));
    int i0 = 0, j0 = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (ScalarTraits<T>::magnitude(delta[i][j]) > ScalarTraits<T>::magnitude(delta[i0][j0])) i0 = i, j0 = j;
    const T d0 = delta[i0][j0];
    const double scale = max_abs(p0) + max_abs(p1) + max_abs(p2);

    std::vector<T> roots;
    for (int i = 0; i < 3 && roots.empty(); ++i)
        for (int j = i; j < 3 && roots.empty(); ++j) {
            T qa = T(p2[i][j] * d0 - p2[i0][j0] * delta[i][j]);
            T qb = T(p1[i][j] * d0 - p1[i0][j0] * delta[i][j]);
            T qc = T(p0[i][j] * d0 - p0[i0][j0] * delta[i][j]);
            if (!ScalarTraits<T>::is_zero(qa, scale)) {
                auto r = exact_sqrt(T(qb * qb - T(4) * qa * qc));
                if (!r) throw GeometryError(ErrorCode::DegenerateTriple, "no polarity fixes the box point");
                roots = {T((-qb + *r) / (T(2) * qa)), T((-qb - *r) / (T(2) * qa))};
            } else if (!ScalarTraits<T>::is_zero(qb, scale)) {
                roots = {T(-qc / qb)};
            }
        }

    const ProjPoint<T> apex = meet(J[0].line, J[1].line);
    auto quad = [](const Mat3<T>& q, const Vec3<T>& v) { return dot(v, mul(q, v)); };
    for (const T& c : roots) {
        Mat3<T> psi = add(psi0, scaled(ll, c));
        if (ScalarTraits<T>::is_zero(det(psi), std::pow(max_abs(psi), 3))) continue;
        if (!proportional(mul(psi, mul(a, psi)), delta)) continue;
        if (ScalarTraits<T>::sign(quad(psi, apex.v)) == ScalarTraits<T>::sign(quad(psi, J[l].point.v))) return psi;
    }
    throw GeometryError(ErrorCode::DegenerateTriple, "no polarity fixes the box point");
}

double flat_dot(const Vec3d& a, const Vec3d& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

}  // namespace

template <class T>
T triple_ratio(const T& x, const T& y) {
    T den = T(y * (T(1) - y));
    if (ScalarTraits<T>::is_zero(den)) throw GeometryError(ErrorCode::OutOfRange, "y in {0,1}");
    return T(T(x * (T(1) - x)) / den);
}

double triple_invariant(double x, double y) {
    if (!(x > 0 && x < 1 && y > 0 && y < 1)) throw GeometryError(ErrorCode::OutOfRange, "(x,y) must lie in (0,1)^2");
    return std::fabs(std::log(triple_ratio(x, y)));
}

std::optional<double> level_set_y(double ratio, double x, bool upper) {
    if (!(ratio > 0) || !(x > 0 && x < 1)) return std::nullopt;
    double k = x * (1 - x) / ratio;  // y(1-y) = k
    double disc = 1 - 4 * k;
    if (disc < 0) return std::nullopt;
    double r = std::sqrt(disc);
    return upper ? 0.5 * (1 + r) : 0.5 * (1 - r);
}

template <class T>
CharacterPoint<T> canonical_character(const T& x, const T& y) {
    if (!(x > T(0) && x < T(1) && y > T(0) && y < T(1)))
        throw GeometryError(ErrorCode::OutOfRange, "(x,y) must lie in (0,1)^2");
    const T half = T(1) / T(2);
    CharacterPoint<T> c{x, y};
    std::optional<CharacterPoint<T>> best;
    for (int k = 0; k < 4; ++k, c = rho(c)) {
        T dx = T(c.x - half), dy = T(c.y - half);
        T adx = ScalarTraits<T>::abs(dx);
        bool inside = dy > adx || ScalarTraits<T>::is_zero(T(dy - adx));
        if (!inside) continue;
        if (!best || c.x < best->x || (c.x == best->x && c.y < best->y)) best = c;
    }
    return *best;
}

template <class T>
int stabilizing_nullity(const std::array<Flag<T>, 3>& J, int j, int k) {
    return static_cast<int>(nullspace(polarity_system(J, j, k)).size());
}

template <class T>
Polarity<T> stabilizing_polarity(const std::array<Flag<T>, 3>& J, int j, int k) {
    auto basis = nullspace(polarity_system(J, j, k));
    if (basis.size() > 1) throw GeometryError(ErrorCode::UnityTripleProduct, "polarity is not unique");
    return {unique_polarity(basis)};
}

template <class T>
std::array<Polarity<T>, 3> stabilizing_polarities(const std::array<Flag<T>, 3>& J) {
    return {stabilizing_polarity(J, 0, 1), stabilizing_polarity(J, 1, 2), stabilizing_polarity(J, 2, 0)};
}

template <class T>
Prism<T> prism_of_triangle(const MarkedBox<T>& m, const std::string& word) {
    Prism<T> p;
    p.box = m;
    p.boxes = {op_i(m), op_t(m), op_b(m)};
    const char* letters[3] = {"i", "t", "b"};
    for (int k = 0; k < 3; ++k) {
        p.flags[k] = top_flag(p.boxes[k]);
        p.geodesics[k] = geodesic_of_box(p.boxes[k], letters[k] + word);
    }
    p.order3 = order3_transform(m);
    const int pairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
    for (int k = 0; k < 3; ++k) {
        int j = pairs[k][0], l = pairs[k][1];
        auto basis = nullspace(polarity_system(p.flags, j, l));
        if (basis.size() != 2) {
            p.polarities[k] = {unique_polarity(basis)};
            continue;
        }
        p.degenerate = true;
        p.polarities[k] = {axial_polarity(p.flags, l, basis, box_polarity(p.boxes[k]).q)};
    }
    return p;
}

XGeodesic inflection_line(const Flat& f, const Vec3d& u) { return f.geodesic(u, kSingular); }

InflectionData inflection_point(const Mat3d& q, const Flat& f) {
    InflectionData out;
    // q acts on the flat by u -> u1 - u; the fixed point is u1/2.
    double res0;
    Vec3d u1 = f.coords(duality_action(q, f.point({0, 0, 0})), &res0);
    if (!(res0 < 1e-8)) throw GeometryError(ErrorCode::NoFixedPointInFlat, "polarity does not preserve the flat");
    out.coords = scaled(u1, 0.5);
    out.point = f.point(out.coords);
    out.fixed_residual = metric_d(duality_action(q, out.point), out.point);
    if (!(out.fixed_residual < 1e-8))
        throw GeometryError(ErrorCode::NoFixedPointInFlat, "residual " + std::to_string(out.fixed_residual));
    out.line = inflection_line(f, out.coords);
    Vec3d delta = sub(out.coords, f.center);
    out.d = flat_dot(delta, kSingular);
    out.collinearity = std::fabs(flat_dot(delta, kMedialPerp));
    return out;
}

template <class T>
InflectionData prism_inflection(const Prism<T>& p, int k) {
    return inflection_point(to_double(p.polarities[k].q), p.geodesics[k].flat);
}

template <class T>
Mat3<T> translation_T(const T& x, const T& y) {
    T den = T(x - y);
    if (ScalarTraits<T>::is_zero(den)) throw GeometryError(ErrorCode::DiagonalLocus, "x = y");
    Mat3<T> m{};
    m[0] = {T((T(-1) + x + y) / den), T((T(-1) + T(3) * x + y - T(4) * x * y) / den),
            T((T(1) - T(2) * x - y + T(2) * x * y) / den)};
    m[1] = {T(0), T(1), T(0)};
    m[2] = {T(0), T(2), T(-1)};
    return m;
}

template <class T>
Order3Axis order3_axis(const Prism<T>& p) {
    Mat3d t = to_double(p.order3.m);
    double dt = det(t);
    t = scaled(t, 1.0 / std::cbrt(dt));
    Mat3d tm = sub(t, identity3<double>());
    // fixed direction: cross product of the two largest rows of T - I
    Vec3d rows[3] = {tm[0], tm[1], tm[2]};
    Vec3d v{0, 0, 0};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b) {
            Vec3d c = cross(rows[a], rows[b]);
            if (norm_d(c) > norm_d(v)) v = c;
        }
    Vec3d a{0, 0, 0};
    for (int j = 0; j < 3; ++j)
        if (norm_d(column(tm, j)) > norm_d(a)) a = column(tm, j);
    Vec3d e2 = scaled(add(scaled(mul(t, a), 2.0), a), 1 / std::sqrt(3.0));
    Mat3d c = from_columns(a, e2, v);
    Mat3d cit = transpose(inverse(c));

    Order3Axis out;
    XGeodesic axis{cit, kSingular};
    // Polarity k reverses the axis: locate the image of the base point.
    const Mat3d q0 = to_double(p.polarities[0].q);
    XPoint img = duality_action(q0, axis.base());
    Mat3d dmat = mul(transpose(c), mul(img.s, c));
    double tau = -std::log(dmat[2][2] / dmat[0][0]) * kSqrt6 / 6.0;
    double half = tau / 2;
    Mat3d g = cit;
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) g[i][k] = cit[i][k] * std::exp(-half * kSingular[k]);
    out.line = {g, kSingular};
    out.pi = out.line.base();

    for (double s : {-2.0, -1.0, 0.0, 1.0, 2.0}) {
        XPoint q = geodesic_point(out.line, s);
        out.axis_residual = std::max(out.axis_residual, metric_d(group_action(t, q), q));
    }
    for (const auto& pol : p.polarities)
        out.polarity_residual = std::max(out.polarity_residual, metric_d(duality_action(to_double(pol.q), out.pi), out.pi));
    return out;
}

template <class T>
PrismReport prism_report(const Prism<T>& p) {
    PrismReport r;
    BoxInvariant<T> inv = box_invariant_raw(p.box);
    r.x = ScalarTraits<T>::to_double(inv.x);
    r.y = ScalarTraits<T>::to_double(inv.y);
    r.triple_invariant = triple_invariant(r.x, r.y);
    r.word = p.geodesics[0].word.substr(1);
    r.degenerate = p.degenerate;
    std::vector<XPoint> pts;
    pts.push_back(order3_axis(p).pi);
    for (int k = 0; k < 3; ++k) {
        InflectionData inf = prism_inflection(p, k);
        r.d[k] = inf.d;
        r.collinearity[k] = inf.collinearity;
        pts.push_back(inf.point);
        pts.push_back(p.geodesics[k].fixed_point);
    }
    for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b) r.distances.push_back(metric_d(pts[a], pts[b]));
    std::sort(r.distances.begin(), r.distances.end());
    return r;
}

template <class T>
BendingReport bending_report(const T& x, const T& y, int depth, unsigned workers) {
    BendingReport rep;
    rep.x = ScalarTraits<T>::to_double(x);
    rep.y = ScalarTraits<T>::to_double(y);
    rep.depth = depth;
    auto orbit = orbit_enumerate(box_from_invariant(x, y), depth, workers);
    std::vector<Prism<T>> prisms;
    std::vector<std::string> words;
    for (const auto& e : orbit) {
        if (!e.word.empty() && e.word.back() == 'i') continue;
        prisms.push_back(prism_of_triangle(e.box, e.word));
        words.push_back(e.word);
        rep.prisms.push_back(prism_report(prisms.back()));
    }
    std::vector<XPoint> centers;
    for (const auto& p : prisms) centers.push_back(order3_axis(p).pi);
    // heap order: children of node n are 2n+1 (t) and 2n+2 (b)
    for (std::size_t n = 0; n < prisms.size(); ++n)
        for (int side = 1; side <= 2; ++side) {
            std::size_t child = 2 * n + side;
            if (child >= prisms.size()) continue;
            AdjacentReport a;
            a.parent = words[n];
            a.child = words[child];
            const Flat& f = prisms[n].geodesics[side].flat;
            Vec3d up = prism_inflection(prisms[n], side).coords;
            Vec3d uc = f.coords(prism_inflection(prisms[child], 0).point);
            Vec3d delta = sub(uc, up);
            a.line_offset = std::fabs(flat_dot(delta, kMedialPerp));
            a.inflection_shift = flat_dot(delta, kSingular);
            a.center_distance = metric_d(centers[n], centers[child]);
            rep.adjacent.push_back(a);
        }
    return rep;
}

template <class T>
ConeMesh cone_fill_sample(const Prism<T>& p, double d, int n, double window, int segment_samples) {
    if (n < 2 || segment_samples < 2) throw GeometryError(ErrorCode::OutOfRange, "n >= 2 required");
    Order3Axis ax = order3_axis(p);
    ConeMesh mesh;
    mesh.apex = geodesic_point(ax.line, d);
    for (int k = 0; k < 3; ++k)
        for (int i = 0; i < n; ++i) {
            double tau = -window + 2 * window * i / (n - 1);
            XPoint start = geodesic_point(p.geodesics[k].geodesic, tau);
            std::vector<int> line;
            double len = metric_d(start, mesh.apex);
            if (len == 0) {
                line.push_back(static_cast<int>(mesh.vertices.size()));
                mesh.vertices.push_back(start);
            } else {
                XGeodesic seg = geodesic_between(start, mesh.apex);
                for (int s = 0; s < segment_samples; ++s) {
                    line.push_back(static_cast<int>(mesh.vertices.size()));
                    mesh.vertices.push_back(s == 0 ? start
                                            : s == segment_samples - 1 ? mesh.apex
                                                                       : geodesic_point(seg, len * s / (segment_samples - 1)));
                }
            }
            mesh.polylines.push_back(line);
        }
    return mesh;
}

#define PAPPUS_INSTANTIATE(T)                                                                          \
    template T triple_ratio(const T&, const T&);                                                       \
    template CharacterPoint<T> canonical_character(const T&, const T&);                                \
    template int stabilizing_nullity(const std::array<Flag<T>, 3>&, int, int);                         \
    template Polarity<T> stabilizing_polarity(const std::array<Flag<T>, 3>&, int, int);                \
    template std::array<Polarity<T>, 3> stabilizing_polarities(const std::array<Flag<T>, 3>&);         \
    template Prism<T> prism_of_triangle(const MarkedBox<T>&, const std::string&);                      \
    template InflectionData prism_inflection(const Prism<T>&, int);                                    \
    template Mat3<T> translation_T(const T&, const T&);                                                \
    template Order3Axis order3_axis(const Prism<T>&);                                                  \
    template PrismReport prism_report(const Prism<T>&);                                                \
    template BendingReport bending_report(const T&, const T&, int, unsigned);                          \
    template ConeMesh cone_fill_sample(const Prism<T>&, double, int, double, int);

PAPPUS_INSTANTIATE(Rational)
PAPPUS_INSTANTIATE(double)

}  // namespace pappus

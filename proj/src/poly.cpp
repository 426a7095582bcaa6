#include "fet/poly.hpp"

#include <nlohmann/json.hpp>

#include <numeric>
#include <sstream>
#include <stdexcept>

namespace fet {

int total_degree(const Expo& e)
{
    return std::accumulate(e.begin(), e.end(), 0);
}

int superlinear_degree(const Expo& e)
{
    int d = 0;
    for (int k : e)
        if (k >= 2)
            d += k;
    return d;
}

bool GradedLex::operator()(const Expo& a, const Expo& b) const
{
    int da = total_degree(a), db = total_degree(b);
    if (da != db)
        return da < db;
    return a < b;
}

Polynomial Polynomial::constant(int dim, const Rat& c)
{
    Polynomial p(dim);
    p.add_term(Expo(dim, 0), c);
    return p;
}

Polynomial Polynomial::monomial(int dim, const Expo& e, const Rat& c)
{
    if ((int)e.size() != dim)
        throw std::invalid_argument("monomial: exponent length != dim");
    Polynomial p(dim);
    p.add_term(e, c);
    return p;
}

Polynomial Polynomial::variable(int dim, int axis)
{
    Expo e(dim, 0);
    e[axis] = 1;
    return monomial(dim, e);
}

int Polynomial::degree() const
{
    if (terms_.empty())
        return -1;
    return total_degree(terms_.rbegin()->first); // graded order: last is max
}

int Polynomial::degree(int axis) const
{
    int d = 0;
    for (const auto& [e, c] : terms_)
        d = std::max(d, e[axis]);
    return d;
}

void Polynomial::add_term(const Expo& e, const Rat& c)
{
    if (c == 0)
        return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
        terms_.emplace(e, c);
    } else {
        it->second += c;
        if (it->second == 0)
            terms_.erase(it);
    }
}

Polynomial Polynomial::operator+(const Polynomial& o) const
{
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, c);
    return out;
}

Polynomial Polynomial::operator-(const Polynomial& o) const
{
    Polynomial out = *this;
    for (const auto& [e, c] : o.terms_)
        out.add_term(e, -c);
    return out;
}

Polynomial Polynomial::operator-() const
{
    return *this * Rat(-1);
}

Polynomial Polynomial::operator*(const Polynomial& o) const
{
    Polynomial out(dim_);
    for (const auto& [ea, ca] : terms_)
        for (const auto& [eb, cb] : o.terms_) {
            Expo e(dim_);
            for (int i = 0; i < dim_; ++i)
                e[i] = ea[i] + eb[i];
            out.add_term(e, ca * cb);
        }
    return out;
}

Polynomial Polynomial::operator*(const Rat& c) const
{
    Polynomial out(dim_);
    if (c == 0)
        return out;
    for (const auto& [e, t] : terms_)
        out.terms_.emplace(e, t * c);
    return out;
}

bool Polynomial::operator==(const Polynomial& o) const
{
    return dim_ == o.dim_ && terms_ == o.terms_;
}

Polynomial Polynomial::derivative(int axis) const
{
    Polynomial out(dim_);
    for (const auto& [e, c] : terms_) {
        if (e[axis] == 0)
            continue;
        Expo d = e;
        d[axis] -= 1;
        out.add_term(d, c * e[axis]);
    }
    return out;
}

Rat Polynomial::eval(const std::vector<Rat>& point) const
{
    if ((int)point.size() != dim_)
        throw std::invalid_argument("eval: point length != dim");
    Rat sum = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < dim_; ++i)
            for (int k = 0; k < e[i]; ++k)
                t *= point[i];
        sum += t;
    }
    return sum;
}

Polynomial Polynomial::substitute(const std::vector<AxisExpr>& axes, int out_dim) const
{
    if ((int)axes.size() != dim_)
        throw std::invalid_argument("substitute: needs one AxisExpr per variable");
    Polynomial out(out_dim);
    for (const auto& [e, c] : terms_) {
        Polynomial term = Polynomial::constant(out_dim, c);
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0)
                continue;
            Polynomial xi = Polynomial::constant(out_dim, axes[i].shift);
            if (axes[i].var >= 0 && axes[i].scale != 0)
                xi = xi + Polynomial::variable(out_dim, axes[i].var) * axes[i].scale;
            for (int k = 0; k < e[i]; ++k)
                term = term * xi;
        }
        out = out + term;
    }
    return out;
}

Rat Polynomial::integrate_box(const std::vector<Rat>& lo, const std::vector<Rat>& hi) const
{
    Rat sum = 0;
    for (const auto& [e, c] : terms_) {
        Rat t = c;
        for (int i = 0; i < dim_; ++i) {
            // integral of x^k over [lo, hi] = (hi^{k+1} - lo^{k+1})/(k+1)
            Rat hp = 1, lp = 1;
            for (int k = 0; k <= e[i]; ++k) {
                hp *= hi[i];
                lp *= lo[i];
            }
            t *= (hp - lp) / Rat(e[i] + 1);
        }
        sum += t;
    }
    return sum;
}

Rat Polynomial::integrate_ref() const
{
    std::vector<Rat> lo(dim_, Rat(-1)), hi(dim_, Rat(1));
    return integrate_box(lo, hi);
}

std::string Polynomial::str() const
{
    if (terms_.empty())
        return "0";
    static const char* names[3] = {"x", "y", "z"};
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        Rat a = c;
        if (first) {
            if (a < 0) {
                os << "-";
                a = -a;
            }
        } else {
            os << (a < 0 ? " - " : " + ");
            if (a < 0)
                a = -a;
        }
        first = false;
        bool has_var = total_degree(e) > 0;
        if (!has_var || a != 1)
            os << a.get_str() << (has_var ? "*" : "");
        bool star = false;
        for (int i = 0; i < dim_; ++i) {
            if (e[i] == 0)
                continue;
            if (star)
                os << "*";
            os << names[i];
            if (e[i] > 1)
                os << "^" << e[i];
            star = true;
        }
    }
    return os.str();
}

int proxy_components(int dim, int order)
{
    if (order < 0 || order > dim)
        throw std::invalid_argument("proxy_components: order out of range");
    return (order == 0 || order == dim) ? 1 : dim;
}

FormField::FormField(int dim, int order)
    : dim(dim), order(order),
      components(proxy_components(dim, order), Polynomial(dim)) {}

FormField FormField::scalar(const Polynomial& p, int order)
{
    FormField f(p.dim(), order);
    if (f.components.size() != 1)
        throw std::invalid_argument("FormField::scalar: order must be 0 or dim");
    f.components[0] = p;
    return f;
}

bool FormField::is_zero() const
{
    for (const auto& c : components)
        if (!c.is_zero())
            return false;
    return true;
}

FormField FormField::operator+(const FormField& o) const
{
    FormField out = *this;
    for (std::size_t i = 0; i < components.size(); ++i)
        out.components[i] = components[i] + o.components[i];
    return out;
}

FormField FormField::operator-(const FormField& o) const
{
    FormField out = *this;
    for (std::size_t i = 0; i < components.size(); ++i)
        out.components[i] = components[i] - o.components[i];
    return out;
}

FormField FormField::operator*(const Rat& c) const
{
    FormField out = *this;
    for (auto& comp : out.components)
        comp = comp * c;
    return out;
}

bool FormField::operator==(const FormField& o) const
{
    return dim == o.dim && order == o.order && components == o.components;
}

FormField differential(const FormField& u)
{
    if (u.order >= u.dim)
        throw std::invalid_argument("differential: order must be < dim");
    FormField out(u.dim, u.order + 1);
    if (u.dim == 2) {
        if (u.order == 0) {
            // 2D curl of a scalar: (-d2 u, d1 u)
            out.components[0] = -u.components[0].derivative(1);
            out.components[1] = u.components[0].derivative(0);
        } else {
            // div
            out.components[0] =
                u.components[0].derivative(0) + u.components[1].derivative(1);
        }
    } else {
        if (u.order == 0) {
            for (int i = 0; i < 3; ++i)
                out.components[i] = u.components[0].derivative(i);
        } else if (u.order == 1) {
            out.components[0] =
                u.components[2].derivative(1) - u.components[1].derivative(2);
            out.components[1] =
                u.components[0].derivative(2) - u.components[2].derivative(0);
            out.components[2] =
                u.components[1].derivative(0) - u.components[0].derivative(1);
        } else {
            out.components[0] = u.components[0].derivative(0) +
                                u.components[1].derivative(1) +
                                u.components[2].derivative(2);
        }
    }
    return out;
}

FormField koszul(const FormField& u)
{
    if (u.order < 1)
        throw std::invalid_argument("koszul: order must be >= 1");
    const int n = u.dim;
    FormField out(n, u.order - 1);
    auto X = [&](int i) { return Polynomial::variable(n, i); };
    if (n == 2) {
        if (u.order == 2) {
            // scalar v -> v * (x, y)
            out.components[0] = u.components[0] * X(0);
            out.components[1] = u.components[0] * X(1);
        } else {
            // Rotated contraction, matching the rotated 2D proxy convention
            // (d0 = curl, d1 = div): u -> u2 x - u1 y, so kappa^2 = 0.
            out.components[0] = u.components[1] * X(0) - u.components[0] * X(1);
        }
    } else {
        if (u.order == 3) {
            for (int i = 0; i < 3; ++i)
                out.components[i] = u.components[0] * X(i);
        } else if (u.order == 2) {
            // u x x
            out.components[0] = u.components[1] * X(2) - u.components[2] * X(1);
            out.components[1] = u.components[2] * X(0) - u.components[0] * X(2);
            out.components[2] = u.components[0] * X(1) - u.components[1] * X(0);
        } else {
            out.components[0] = u.components[0] * X(0) + u.components[1] * X(1) +
                                u.components[2] * X(2);
        }
    }
    return out;
}

namespace {

// Column layout: (component index, exponent) pairs, components first,
// exponents in graded-lex order within each component.
struct SpanLayout {
    std::vector<std::vector<Expo>> cols_per_comp; // sorted graded-lex
    std::vector<std::pair<int, Expo>> columns;    // flattened

    explicit SpanLayout(const std::vector<FormField>& vecs)
    {
        int ncomp = (int)vecs.front().components.size();
        std::vector<std::map<Expo, char, GradedLex>> seen(ncomp);
        for (const auto& v : vecs)
            for (int c = 0; c < ncomp; ++c)
                for (const auto& [e, coeff] : v.components[c].terms())
                    seen[c][e] = 1;
        cols_per_comp.resize(ncomp);
        for (int c = 0; c < ncomp; ++c)
            for (const auto& [e, flag] : seen[c]) {
                cols_per_comp[c].push_back(e);
                columns.emplace_back(c, e);
            }
    }

    QMat matrix(const std::vector<FormField>& vecs) const
    {
        QMat m(vecs.size(), columns.size());
        for (std::size_t i = 0; i < vecs.size(); ++i) {
            std::size_t j = 0;
            for (int c = 0; c < (int)cols_per_comp.size(); ++c) {
                const auto& terms = vecs[i].components[c].terms();
                for (const auto& e : cols_per_comp[c]) {
                    auto it = terms.find(e);
                    if (it != terms.end())
                        m(i, j) = it->second;
                    ++j;
                }
            }
        }
        return m;
    }
};

} // namespace

SpanBasis reduce_span(const std::vector<FormField>& vectors)
{
    SpanBasis out;
    if (vectors.empty())
        return out;
    const int dim = vectors.front().dim;
    const int order = vectors.front().order;
    for (const auto& v : vectors)
        if (v.dim != dim || v.order != order)
            throw std::invalid_argument("reduce_span: mixed (dim, order)");
    SpanLayout layout(vectors);
    QMat m = layout.matrix(vectors);
    auto pivots = m.rref();
    out.dimension = pivots.size();
    for (std::size_t i = 0; i < pivots.size(); ++i) {
        FormField f(dim, order);
        for (std::size_t j = 0; j < layout.columns.size(); ++j) {
            if (m(i, j) == 0)
                continue;
            const auto& [c, e] = layout.columns[j];
            f.components[c].add_term(e, m(i, j));
        }
        out.basis.push_back(std::move(f));
    }
    return out;
}

bool span_contains(const std::vector<FormField>& of, const std::vector<FormField>& sub)
{
    if (sub.empty())
        return true;
    if (of.empty())
        return false;
    std::size_t base = reduce_span(of).dimension;
    std::vector<FormField> joint = of;
    joint.insert(joint.end(), sub.begin(), sub.end());
    return reduce_span(joint).dimension == base;
}

bool span_equal(const std::vector<FormField>& a, const std::vector<FormField>& b)
{
    return span_contains(a, b) && span_contains(b, a);
}

Polynomial legendre(int dim, int axis, int degree)
{
    Polynomial p0 = Polynomial::constant(dim, 1);
    if (degree == 0)
        return p0;
    Polynomial t = Polynomial::variable(dim, axis);
    Polynomial p1 = t;
    for (int n = 1; n < degree; ++n) {
        // (n+1) P_{n+1} = (2n+1) t P_n - n P_{n-1}
        Polynomial p2 = (t * p1 * Rat(2 * n + 1) - p0 * Rat(n)) * (Rat(1) / Rat(n + 1));
        p0 = p1;
        p1 = p2;
    }
    return p1;
}

std::string poly_to_json(const Polynomial& p)
{
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [e, c] : p.terms()) {
        nlohmann::json term;
        term["exponents"] = e;
        term["num"] = c.get_num().get_str();
        term["den"] = c.get_den().get_str();
        arr.push_back(term);
    }
    return arr.dump();
}

Polynomial poly_from_json(const std::string& json, int dim)
{
    Polynomial p(dim);
    auto arr = nlohmann::json::parse(json);
    for (const auto& term : arr) {
        Expo e = term.at("exponents").get<Expo>();
        Rat c(mpz_class(term.at("num").get<std::string>()),
              mpz_class(term.at("den").get<std::string>()));
        c.canonicalize();
        p.add_term(e, c);
    }
    return p;
}

} // namespace fet

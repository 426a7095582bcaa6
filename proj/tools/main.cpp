// Command-line front end: every verification and study as a subcommand with a
// machine-readable report.  Exit codes: 0 = all checks passed, 1 = a check
// failed, 2 = bad usage.

#include "fet/global.hpp"
#include "fet/nonconform.hpp"
#include "fet/xform.hpp"

#include "CLI11.hpp"
#include <nlohmann/json.hpp>

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <random>

using namespace fet;
using nlohmann::json;

namespace {

constexpr std::uint64_t kSampleSeed = 20240811u;

std::optional<Family> parse_family(std::string name)
{
    for (auto& c : name)
        if (c == '-')
            c = '_';
    if (name == "component")
        name = "component_px";
    return family_from_name(name);
}

std::vector<int> parse_mesh(const std::string& spec)
{
    std::vector<int> out;
    std::string cur;
    for (char c : spec + "x") {
        if (c == 'x' || c == 'X') {
            if (cur.empty())
                return {};
            out.push_back(std::stoi(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    return out;
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string element_fingerprint(const ElementDef& e)
{
    // Hash of the reduced span plus the DoF actions on the shape basis.
    std::string blob;
    for (const auto& f : e.shape_basis)
        for (const auto& c : f.components)
            blob += c.str() + ";";
    for (const auto& d : e.dofs)
        for (const auto& f : e.shape_basis)
            blob += apply_dof(d, f).get_str() + ",";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)fnv1a(blob));
    return buf;
}

void emit(const json& report, const std::string& out_path)
{
    std::string text = report.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        // Atomic-ish: write then rename.
        std::string tmp = out_path + ".tmp";
        {
            std::ofstream f(tmp);
            f << text;
        }
        std::rename(tmp.c_str(), out_path.c_str());
    }
}

// Degree of the k-form member of a family's complex anchored at degree r.
int complex_degree(Family f, int k, int r)
{
    if (f == Family::S || f == Family::Adini)
        return r - k;
    return r;
}

GlobalSpace reduced_space(const CubicalMesh& mesh, int k)
{
    if (k == 0)
        return build_global(mesh, build_element(Family::Adini, 2, 0, 3));
    return build_global(mesh, build_element(Family::ReducedAdini, 2, k, k == 1 ? 2 : 1));
}

int cmd_exactness(const std::string& family, int n, int r, const std::string& mesh_spec,
                  const std::string& out_path)
{
    auto dims = parse_mesh(mesh_spec);
    if ((int)dims.size() != n)
        return 2;
    std::vector<Rat> lo(n, Rat(0)), hi(n, Rat(1));
    CubicalMesh mesh = build_mesh(n, dims, lo, hi);

    std::vector<GlobalSpace> spaces;
    if (family == "reduced") {
        if (n != 2)
            return 2;
        for (int k = 0; k <= 2; ++k)
            spaces.push_back(reduced_space(mesh, k));
    } else {
        auto fam = parse_family(family);
        if (!fam)
            return 2;
        for (int k = 0; k <= n; ++k)
            spaces.push_back(build_global(mesh, build_element(*fam, n, k,
                                                              complex_degree(*fam, k, r))));
    }
    std::vector<const GlobalSpace*> ptrs;
    for (const auto& s : spaces)
        ptrs.push_back(&s);
    CohomologyReport rep = cohomology(ptrs);

    std::vector<int> expected(n + 1, 0);
    expected[0] = 1;
    bool pass = rep.dd_zero && rep.betti == expected;

    json doc;
    doc["family"] = family;
    doc["n"] = n;
    doc["r"] = r;
    doc["mesh"] = mesh_spec;
    doc["dims"] = rep.dims;
    doc["ranks"] = rep.ranks;
    doc["betti"] = rep.betti;
    doc["dd_zero"] = rep.dd_zero;
    doc["pass"] = pass;
    emit(doc, out_path);
    return pass ? 0 : 1;
}

struct Manufactured {
    FieldFn u, grad_u, f;
    int components = 1;
};

Manufactured sin_product(int n, int components)
{
    const double pi = M_PI;
    Manufactured m;
    m.components = components;
    m.u = [=](const std::vector<double>& x) {
        double v = 1;
        for (int i = 0; i < n; ++i)
            v *= std::sin(pi * x[i]);
        return std::vector<double>(components, v);
    };
    m.grad_u = [=](const std::vector<double>& x) {
        std::vector<double> g(components * n);
        for (int a = 0; a < n; ++a) {
            double v = 1;
            for (int i = 0; i < n; ++i)
                v *= (i == a) ? pi * std::cos(pi * x[i]) : std::sin(pi * x[i]);
            for (int c = 0; c < components; ++c)
                g[c * n + a] = v;
        }
        return g;
    };
    m.f = [=](const std::vector<double>& x) {
        double v = n * pi * pi;
        for (int i = 0; i < n; ++i)
            v *= std::sin(pi * x[i]);
        return std::vector<double>(components, v);
    };
    return m;
}

ElementDef study_element(const std::string& family, int dim)
{
    if (family == "component")
        return build_element(Family::ComponentPx, dim, 0, 2);
    if (family == "adini1")
        return build_element(Family::Adini, dim, 1, 2);
    throw CLI::ValidationError("family", "expected component or adini1");
}

int cmd_poisson(int dim, const std::string& family, int levels, const std::string& out_path)
{
    ElementDef el = study_element(family, dim);
    int comps = (int)el.shape_basis[0].components.size();
    Manufactured mf = sin_product(dim, comps);
    int base = dim == 2 ? 4 : 2;
    int quad = dim == 2 ? 6 : 5;

    std::vector<PoissonResult> rows;
    for (int l = 0; l < levels; ++l) {
        int cells = base << l;
        CubicalMesh mesh = build_mesh(dim, std::vector<int>(dim, cells),
                                      std::vector<Rat>(dim, Rat(0)),
                                      std::vector<Rat>(dim, Rat(1)));
        GlobalSpace space = build_global(mesh, el);
        rows.push_back(solve_poisson(space, mf.u, mf.grad_u, mf.f, quad, true));
    }

    std::cout << "h,err_H1h,err_L2,rate_H1h,rate_L2,consistency\n";
    json jrows = json::array();
    bool pass = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        double rh = i ? std::log2(rows[i - 1].err_h1 / rows[i].err_h1) : 0;
        double rl = i ? std::log2(rows[i - 1].err_l2 / rows[i].err_l2) : 0;
        std::printf("%.6g,%.12g,%.12g,%.4g,%.4g,%.12g\n", rows[i].h, rows[i].err_h1,
                    rows[i].err_l2, rh, rl, rows[i].consistency);
        if (i && rows[i].err_h1 >= rows[i - 1].err_h1)
            pass = false;
        json jr;
        jr["h"] = rows[i].h;
        jr["err_h1h"] = rows[i].err_h1;
        jr["err_l2"] = rows[i].err_l2;
        jr["rate_h1h"] = rh;
        jr["rate_l2"] = rl;
        jr["consistency"] = rows[i].consistency;
        jrows.push_back(jr);
    }
    json doc;
    doc["family"] = family;
    doc["dim"] = dim;
    doc["rows"] = jrows;
    doc["pass"] = pass;
    emit(doc, out_path);
    return pass ? 0 : 1;
}

int cmd_korn(int levels, const std::string& out_path)
{
    ElementDef el = build_element(Family::Adini, 2, 1, 2);
    std::vector<double> lambdas;
    for (int l = 0; l < levels; ++l) {
        int cells = 2 << l;
        CubicalMesh mesh = build_mesh(2, {cells, cells}, {Rat(0), Rat(0)},
                                      {Rat(1), Rat(1)});
        GlobalSpace space = build_global(mesh, el);
        lambdas.push_back(korn_lambda_min(space, 5));
    }
    bool pass = true;
    double lo = lambdas[0], hi = lambdas[0];
    for (double l : lambdas) {
        if (l <= 0)
            pass = false;
        lo = std::min(lo, l);
        hi = std::max(hi, l);
    }
    if ((hi - lo) / hi >= 0.25)
        pass = false;
    json doc;
    doc["family"] = "adini1";
    doc["lambda_min"] = lambdas;
    doc["variation"] = (hi - lo) / hi;
    doc["pass"] = pass;
    emit(doc, out_path);
    return pass ? 0 : 1;
}

int cmd_interp_identities(const std::string& out_path)
{
    json doc;
    bool pass = true;

    // Interpolations of the serendipity-tail shape functions.
    const std::vector<std::pair<Expo, Expo>> table = {
        {{0, 2, 0}, {0, 0, 0}}, {{0, 0, 2}, {0, 0, 0}}, {{0, 3, 0}, {0, 1, 0}},
        {{0, 2, 1}, {0, 0, 1}}, {{0, 1, 2}, {0, 1, 0}}, {{0, 0, 3}, {0, 0, 1}},
        {{0, 3, 1}, {0, 1, 1}}, {{0, 1, 3}, {0, 1, 1}},
    };
    json trows = json::array();
    for (const auto& [in, want] : table) {
        Polynomial u = Polynomial::monomial(3, in);
        Polynomial got = component_interpolate(InterpOp::Q, u);
        bool ok = got == Polynomial::monomial(3, want);
        pass = pass && ok;
        json row;
        row["u"] = u.str();
        row["pi_q_u"] = got.str();
        row["pass"] = ok;
        trows.push_back(row);
    }
    doc["table"] = trows;

    // (Pi_A - Pi_B)(I - Pi_Q) u = 0: all monomials of degree <= 4 and seeded
    // random cubics.
    auto identity_holds = [](const Polynomial& u) {
        Polynomial w = u - component_interpolate(InterpOp::Q, u);
        Polynomial d = component_interpolate(InterpOp::A, w) -
                       component_interpolate(InterpOp::B, w);
        return d.is_zero();
    };
    bool mono_ok = true;
    for (const auto& m : monomials_P(3, 4))
        mono_ok = mono_ok && identity_holds(m);
    std::mt19937_64 rng(kSampleSeed);
    std::uniform_int_distribution<int> coef(-9, 9);
    bool rand_ok = true;
    auto cubics = monomials_P(3, 3);
    for (int s = 0; s < 50; ++s) {
        Polynomial u(3);
        for (const auto& m : cubics)
            u = u + m * Rat(coef(rng));
        rand_ok = rand_ok && identity_holds(u);
    }
    doc["projection_identity_monomials"] = mono_ok;
    doc["projection_identity_random"] = rand_ok;
    doc["seed"] = kSampleSeed;
    pass = pass && mono_ok && rand_ok;

    // Boundary mean preservation of Pi_A on the component shape space.
    bool bdry_ok = true;
    for (const auto& p : component_spaces().P)
        bdry_ok = bdry_ok && boundary_defect_integral(p) == 0;
    doc["boundary_defect_zero"] = bdry_ok;
    pass = pass && bdry_ok;

    doc["pass"] = pass;
    emit(doc, out_path);
    return pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"verification toolkit for nonstandard cubical finite element families"};
    app.require_subcommand(1);
    std::string out_path;
    app.add_option("--out", out_path, "write the JSON report to this file");
    bool quiet = false;
    app.add_flag("--quiet", quiet, "suppress progress output (reports still emitted)");

    std::string family = "qminus", target = "s", mesh_spec = "2x2";
    int n = 2, k = 0, r = 1, dim = 2, levels = 3;

    auto* ei = app.add_subcommand("element-info", "print an element definition");
    ei->add_option("--family", family)->required();
    ei->add_option("--n", n)->required();
    ei->add_option("--k", k)->required();
    ei->add_option("--r", r)->required();

    auto* uni = app.add_subcommand("unisolvence", "exact Vandermonde check");
    uni->add_option("--family", family)->required();
    uni->add_option("--n", n)->required();
    uni->add_option("--k", k)->required();
    uni->add_option("--r", r)->required();

    auto* bub = app.add_subcommand("bubbles", "bubble space vs interior DoF count");
    bub->add_option("--family", family)->required();
    bub->add_option("--n", n)->required();
    bub->add_option("--k", k)->required();
    bub->add_option("--r", r)->required();

    auto* com = app.add_subcommand("commute", "transfer/serendipity commutation");
    com->add_option("--base", family)->required();
    com->add_option("--target", target)->required();
    com->add_option("--n", n)->required();
    com->add_option("--k", k)->required();
    com->add_option("--r", r)->required();

    auto* exa = app.add_subcommand("exactness", "global d∘d and Betti numbers");
    exa->add_option("--family", family)->required();
    exa->add_option("--n", n)->required();
    exa->add_option("--r", r);
    exa->add_option("--mesh", mesh_spec)->required();

    auto* poi = app.add_subcommand("poisson", "nonconforming convergence study");
    poi->add_option("--dim", dim)->required();
    poi->add_option("--family", family)->required();
    poi->add_option("--levels", levels)->required();

    auto* kor = app.add_subcommand("korn", "discrete Korn eigenvalue study");
    kor->add_option("--family", family);
    kor->add_option("--levels", levels)->required();

    app.add_subcommand("interp-identities", "component-element interpolation identities");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("element-info")) {
            auto fam = parse_family(family);
            if (!fam || !element_defined(*fam, n, k, r))
                return 2;
            json doc = json::parse(element_info_json(build_element(*fam, n, k, r)));
            emit(doc, out_path);
            return 0;
        }
        if (app.got_subcommand("unisolvence")) {
            auto fam = parse_family(family);
            if (!fam || !element_defined(*fam, n, k, r))
                return 2;
            ElementDef e = build_element(*fam, n, k, r);
            bool ok = vandermonde(e).det() != 0;
            json doc;
            doc["family"] = family_name(*fam);
            doc["n"] = n;
            doc["k"] = k;
            doc["r"] = r;
            doc["dim"] = e.shape_basis.size();
            doc["det_nonzero"] = ok;
            doc["pass"] = ok;
            emit(doc, out_path);
            return ok ? 0 : 1;
        }
        if (app.got_subcommand("bubbles")) {
            auto fam = parse_family(family);
            if (!fam || !element_defined(*fam, n, k, r))
                return 2;
            ElementDef e = build_element(*fam, n, k, r);
            auto counts = dof_table(e);
            std::size_t bubbles = bubble_space(e).size();
            bool ok = bubbles == (std::size_t)counts[n];
            json doc;
            doc["family"] = family_name(*fam);
            doc["bubble_dim"] = bubbles;
            doc["interior_dofs"] = counts[n];
            doc["pass"] = ok;
            emit(doc, out_path);
            return ok ? 0 : 1;
        }
        if (app.got_subcommand("commute")) {
            auto fam = parse_family(family);
            auto tgt = parse_family(target);
            if (!fam || !tgt || (*tgt != Family::S && *tgt != Family::Sminus))
                return 2;
            if (!element_defined(*fam, n, k, r))
                return 2;
            ElementDef base = build_element(*fam, n, k, r);
            CommuteReport rep = check_commute(base, *tgt);
            ElementDef p1 = serendipity_reduce(dof_transfer(base), *tgt);
            ElementDef p2 = dof_transfer(serendipity_reduce(base, *tgt));
            json doc;
            doc["base"] = family_name(*fam);
            doc["target"] = family_name(*tgt);
            doc["shape_equal"] = rep.shape_equal;
            doc["dofs_equal"] = rep.dofs_equal;
            doc["fingerprint_reduce_after_transfer"] = element_fingerprint(p1);
            doc["fingerprint_transfer_after_reduce"] = element_fingerprint(p2);
            doc["pass"] = rep.ok();
            emit(doc, out_path);
            return rep.ok() ? 0 : 1;
        }
        if (app.got_subcommand("exactness"))
            return cmd_exactness(family, n, r, mesh_spec, out_path);
        if (app.got_subcommand("poisson"))
            return cmd_poisson(dim, family, levels, out_path);
        if (app.got_subcommand("korn"))
            return cmd_korn(levels, out_path);
        if (app.got_subcommand("interp-identities"))
            return cmd_interp_identities(out_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

#include <iostream>

#include <CLI11.hpp>

#include "modres/io.hpp"
#include "modres/sampling.hpp"

using namespace modres;

namespace {

struct Opts {
    std::string group_file, module_file, f_str, out, format = "json";
    int p = 0, length = 8, dmax = 8, mmax = 4;
    uint64_t seed = 0;
    int n = 2;       // sln-scan: matrix size
    long long q = 0; // sln-scan: CRT partner modulus
    int r = 0;       // sln-scan: elementary abelian prime
};

void add_common(CLI::App* sub, Opts& o) {
    sub->add_option("--group", o.group_file, "group JSON file");
    sub->add_option("--module", o.module_file, "module JSON file");
    sub->add_option("--p", o.p, "prime (field characteristic, or modulus for sln-scan)");
    sub->add_option("--length", o.length, "resolution length / rank prefix");
    sub->add_option("--f", o.f_str, "growth profile: poly:A | log | exp");
    sub->add_option("--dmax", o.dmax, "degree cap for polynomial fitting");
    sub->add_option("--mmax", o.mmax, "product-length cap for the class search");
    sub->add_option("--seed", o.seed, "RNG seed (echoed; reports are deterministic)");
    sub->add_option("--out", o.out, "output file (default stdout)");
    sub->add_option("--format", o.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
}

GModule get_module(const Opts& o) {
    std::optional<Group> g;
    if (!o.group_file.empty()) g = load_group_file(o.group_file);
    if (!o.module_file.empty()) return load_module_file(o.module_file, g);
    require(g.has_value(), "need --module or --group");
    require(o.p >= 2, "need --p to build the default (trivial) module");
    return GModule::trivial(*g, PrimeField((uint32_t)o.p));
}

std::optional<ComplexityFunction> get_f(const Opts& o) {
    if (o.f_str.empty()) return std::nullopt;
    return parse_complexity(o.f_str);
}

Json config_echo(const std::string& cmd, const Opts& o) {
    Json c;
    c["command"] = cmd;
    c["group"] = o.group_file;
    c["module"] = o.module_file;
    c["p"] = o.p;
    c["length"] = o.length;
    c["f"] = o.f_str;
    c["dmax"] = o.dmax;
    c["mmax"] = o.mmax;
    c["seed"] = o.seed;
    return c;
}

Json group_summary(const Group& g) {
    Json j;
    j["name"] = g.name();
    j["order"] = g.order();
    return j;
}

Json subgroup_elems(const Subgroup& s) { return Json(s.elements()); }

Json resolution_to_json(const FreeResolution& fr) {
    Json j;
    j["ranks"] = fr.ranks;
    j["augmentation"] = matrix_to_json(fr.aug);
    Json ds = Json::array();
    for (int n = 1; n <= fr.length(); ++n) ds.push_back(matrix_to_json(fr.d[n]));
    j["differentials"] = std::move(ds);
    return j;
}

void emit(const Opts& o, const Json& rep, const std::optional<std::string>& csv) {
    std::string text;
    if (o.format == "csv") {
        require(csv.has_value(), "csv output is not available for this command");
        text = *csv;
    } else {
        text = rep.dump(2) + "\n";
    }
    if (o.out.empty())
        std::cout << text;
    else
        write_text_file(o.out, text);
}

FreeResolution zero_padding_free_column(const GModule& free_mod, int rank0, int len) {
    FreeResolution col(free_mod);
    col.ranks.push_back(rank0);
    col.aug = Matrix::identity(free_mod.field(), free_mod.dim());
    col.d.push_back(Matrix(free_mod.field(), 0, 0));
    pad_resolution(col, len);
    return col;
}

GModule zero_padding(const Subgroup& s, PrimeField f) {
    return GModule::trivial(s.to_group().group, f, 0);
}

int cmd_resolve(const Opts& o) {
    GModule m = get_module(o);
    bool minimal = m.group().is_p_group(m.field().p);
    FreeResolution fr = materialize(resolve(m, o.length, minimal));
    fr.verify_exact();
    fr.verify_equivariant();
    Json rep = config_echo("resolve", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["mode"] = minimal ? "minimal" : "generic";
    rep["ranks"] = fr.ranks;
    if (auto f = get_f(o)) rep["verdict"] = verdict_to_json(check_growth(fr.ranks, *f), *f);
    Json cert;
    cert["exact"] = true;
    cert["equivariant"] = true;
    cert["resolution"] = resolution_to_json(fr);
    rep["certificates"] = std::move(cert);
    emit(o, rep, ranks_to_csv(fr.ranks));
    return 0;
}

/* Totalize the two-term complex [first syzygy -> free cover]; its only
   homology is M again, so the total complex is an independently-built
   resolution of M. */
int cmd_wall(const Opts& o) {
    GModule m = get_module(o);
    PrimeField f = m.field();
    bool minimal = m.group().is_p_group(f.p);
    Resolution r1 = resolve(m, 1, minimal);
    FreeModule f0(m.group(), f, r1.ranks[0]);
    GModule f0m = f0.materialize();
    GModule kmod = submodule_as_gmodule(f0, r1.incl[1], r1.omega_coords[1]);
    ModuleComplex c{{f0m, kmod}, {Matrix(f, 0, 0), r1.incl[1]}};
    c.check();

    FreeResolution colk = materialize(resolve(kmod, o.length, minimal));
    FreeResolution col0 = zero_padding_free_column(f0m, r1.ranks[0], o.length);
    WallResult w = wall_totalize(c, {col0, colk}, o.length);
    std::string err = verify_wall(w, c);
    require(err.empty(), "wall verification failed: " + err);

    Json rep = config_echo("wall", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["complex"] = Json{{"terms", Json::array({f0m.dim(), kmod.dim()})}, {"length", 1}};
    rep["total_ranks"] = w.total_ranks;
    rep["d_squared_zero"] = w.d_squared_zero;
    rep["homology_match"] = w.homology_match;
    if (auto fc = get_f(o)) rep["verdict"] = verdict_to_json(check_growth(w.total_ranks, *fc), *fc);
    Json cert;
    Json ds = Json::array();
    for (int n = 1; n <= w.total_len; ++n) ds.push_back(matrix_to_json(w.total_d[n]));
    cert["total_differentials"] = std::move(ds);
    Json pis = Json::array();
    for (const Matrix& pi : w.pi) pis.push_back(matrix_to_json(pi));
    cert["pi"] = std::move(pis);
    rep["certificates"] = std::move(cert);
    emit(o, rep, ranks_to_csv(w.total_ranks));
    return 0;
}

int cmd_bockstein(const Opts& o) {
    GModule m = get_module(o);
    uint32_t p = m.field().p;
    Json rep = config_echo("bockstein", o);
    rep["group_info"] = group_summary(m.group());
    Json data = Json::array();
    for (const BocksteinDatum& bd : bockstein_data(m.group(), p)) {
        YonedaSequence y = bockstein_sequence(bd, m);
        y.check();
        Json e;
        e["l"] = subgroup_elems(bd.l);
        e["x"] = bd.x;
        Json dims = Json::array();
        for (const GModule& t : y.terms) dims.push_back(t.dim());
        e["middle_dims"] = std::move(dims);
        e["checked"] = true;
        Json cert;
        cert["head"] = matrix_to_json(y.head);
        cert["tail"] = matrix_to_json(y.tail);
        cert["d"] = matrix_to_json(y.d[1]);
        e["certificates"] = std::move(cert);
        data.push_back(std::move(e));
    }
    rep["count"] = (int)data.size();
    rep["data"] = std::move(data);
    emit(o, rep, std::nullopt);
    return 0;
}

int cmd_serre_search(const Opts& o) {
    GModule m = get_module(o);
    auto w = serre_search(m, o.mmax);
    Json rep = config_echo("serre-search", o);
    rep["group_info"] = group_summary(m.group());
    rep["found"] = w.has_value();
    rep["witness"] = w ? witness_to_json(*w) : Json(nullptr);
    emit(o, rep, std::nullopt);
    return 0;
}

int cmd_prop41(const Opts& o) {
    GModule m = get_module(o);
    PrimeField f = m.field();
    require(m.group().is_p_group(f.p),
            "transport needs a p-group in the module characteristic; see main3 for the general chain");
    auto w = serre_search(m, o.mmax);
    require(w.has_value(), "no vanishing product of Bockstein classes up to m_max=" +
                               std::to_string(o.mmax) + "; raise --mmax");
    int child_len = o.length + 2 * w->m - 1;
    std::vector<TransportColumn> cols;
    Json colinfo = Json::array();
    for (const BocksteinDatum& bd : w->data) {
        GModule rm = restrict_module(m, bd.l);
        FreeResolution child = materialize(resolve(rm, child_len, true));
        Json ci;
        ci["l"] = subgroup_elems(bd.l);
        ci["ranks"] = child.ranks;
        colinfo.push_back(std::move(ci));
        cols.push_back(TransportColumn{bd, zero_padding(bd.l, f), std::move(child)});
    }
    TransportResult tr = transport_resolution(m, cols, o.length, get_f(o));
    tr.res.verify_equivariant();

    Json rep = config_echo("prop41", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["witness"] = witness_to_json(*w);
    rep["columns"] = std::move(colinfo);
    rep["ranks"] = tr.res.ranks;
    rep["predicted_ranks"] = tr.predicted;
    rep["rank_formula_ok"] = tr.rank_formula_ok;
    rep["complement_dim"] = tr.n_module.dim();
    if (tr.verdict) rep["verdict"] = verdict_to_json(*tr.verdict, get_f(o));
    Json cert;
    cert["exact"] = true;
    cert["equivariant"] = true;
    cert["resolution"] = resolution_to_json(tr.res);
    rep["certificates"] = std::move(cert);
    emit(o, rep, ranks_to_csv(tr.res.ranks));
    return 0;
}

int cmd_psylow(const Opts& o) {
    GModule m = get_module(o);
    uint32_t p0 = m.field().p;
    require(m.group().order() % (int)p0 == 0,
            "characteristic does not divide the group order; use vfcd or main3 instead");
    Subgroup s = sylow_subgroup(m.group(), p0);
    GModule rm = restrict_module(m, s);
    FreeResolution col = materialize(resolve(rm, o.length, true));
    SplitResult sp = psylow_split(m, {SylowColumn{s, zero_padding(s, m.field()), std::move(col)}},
                                  get_f(o));
    sp.res.verify_equivariant();

    Json rep = config_echo("psylow", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["sylow"] = Json{{"prime", p0}, {"elements", subgroup_elems(s)}, {"index", s.index()}};
    rep["coefficients"] = sp.coefficients;
    rep["ranks"] = sp.res.ranks;
    rep["complement_dim"] = sp.complement.dim();
    if (sp.verdict) rep["verdict"] = verdict_to_json(*sp.verdict, get_f(o));
    Json cert;
    cert["splitting"] = matrix_to_json(sp.splitting);
    cert["retraction"] = matrix_to_json(sp.retraction);
    cert["resolution"] = resolution_to_json(sp.res);
    rep["certificates"] = std::move(cert);
    emit(o, rep, ranks_to_csv(sp.res.ranks));
    return 0;
}

int cmd_main3(const Opts& o) {
    GModule m = get_module(o);
    auto f = get_f(o);
    require(f.has_value(), "main3 verifies a growth bound; pass --f poly:A|log|exp");
    TransferReport r = main3_verify(m, *f, o.length, o.mmax);
    r.res.verify_exact();
    r.res.verify_equivariant();

    Json rep = config_echo("main3", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    Json steps = Json::array();
    std::string csv = "subgroup,n,rank\n";
    for (const TransferStep& st : r.per_subgroup) {
        Json e;
        e["subgroup"] = st.subgroup;
        e["strategy"] = st.strategy;
        e["ranks"] = st.ranks;
        e["verdict"] = verdict_to_json(st.verdict, *f);
        steps.push_back(std::move(e));
        std::string label;
        for (int x : st.subgroup) label += (label.empty() ? "" : " ") + std::to_string(x);
        for (size_t n = 0; n < st.ranks.size(); ++n)
            csv += label + "," + std::to_string(n) + "," + std::to_string(st.ranks[n]) + "\n";
    }
    for (size_t n = 0; n < r.res.ranks.size(); ++n)
        csv += "G," + std::to_string(n) + "," + std::to_string(r.res.ranks[n]) + "\n";
    rep["per_subgroup"] = std::move(steps);
    rep["log"] = r.log;
    rep["ranks"] = r.res.ranks;
    rep["combined"] = verdict_to_json(r.combined, *f);
    Json cert;
    cert["exact"] = true;
    cert["equivariant"] = true;
    cert["resolution"] = resolution_to_json(r.res);
    rep["certificates"] = std::move(cert);
    emit(o, rep, csv);
    return 0;
}

int cmd_alperin_evens(const Opts& o) {
    GModule m = get_module(o);
    AlperinReport a = alperin_evens_check(m, o.length);
    Json rep = config_echo("alperin-evens", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["g_ranks"] = a.g_ranks;
    rep["g_complexity"] = a.g_complexity;
    Json per = Json::array();
    std::string csv = "subgroup,n,rank\n";
    for (size_t n = 0; n < a.g_ranks.size(); ++n)
        csv += "G," + std::to_string(n) + "," + std::to_string(a.g_ranks[n]) + "\n";
    for (const AlperinStep& st : a.per_e) {
        Json e;
        e["subgroup"] = st.subgroup;
        e["ranks"] = st.ranks;
        e["complexity"] = st.complexity;
        per.push_back(std::move(e));
        std::string label;
        for (int x : st.subgroup) label += (label.empty() ? "" : " ") + std::to_string(x);
        for (size_t n = 0; n < st.ranks.size(); ++n)
            csv += label + "," + std::to_string(n) + "," + std::to_string(st.ranks[n]) + "\n";
    }
    rep["per_e"] = std::move(per);
    rep["max_e_complexity"] = a.max_e_complexity;
    rep["equal"] = a.equal;
    emit(o, rep, csv);
    return 0;
}

int cmd_chouinard(const Opts& o) {
    GModule m = get_module(o);
    ProjectivityResult pg = is_projective(m);
    Json rep = config_echo("chouinard", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["projective_g"] = pg.projective;
    if (pg.projective) rep["splitting_g"] = matrix_to_json(pg.splitting);
    Json per = Json::array();
    bool all_e = true;
    for (const auto& [e, rk] : elementary_abelian_subgroups(m.group(), m.field().p)) {
        ProjectivityResult pe = is_projective(restrict_module(m, e));
        all_e = all_e && pe.projective;
        Json j;
        j["subgroup"] = subgroup_elems(e);
        j["rank"] = rk;
        j["projective"] = pe.projective;
        if (pe.projective) j["splitting"] = matrix_to_json(pe.splitting);
        per.push_back(std::move(j));
    }
    rep["per_e"] = std::move(per);
    rep["all_e"] = all_e;
    rep["agree"] = pg.projective == all_e;
    require(pg.projective == all_e, "chouinard criteria disagree (library bug)");
    emit(o, rep, std::nullopt);
    return 0;
}

int cmd_vfcd(const Opts& o) {
    GModule m = get_module(o);
    VfcdResult v = vfcd_bound(m, o.length, o.mmax);
    v.res.verify_exact();
    v.res.verify_equivariant();
    Json rep = config_echo("vfcd", o);
    rep["group_info"] = group_summary(m.group());
    rep["dim"] = m.dim();
    rep["r_max"] = v.r_max;
    rep["ranks"] = v.res.ranks;
    std::optional<ComplexityFunction> used =
        v.r_max == 0 ? std::nullopt
                     : std::optional<ComplexityFunction>(ComplexityFunction::polynomial(v.r_max - 1));
    rep["verdict"] = verdict_to_json(v.verdict, used);
    rep["log"] = v.log;
    Json cert;
    cert["exact"] = true;
    cert["equivariant"] = true;
    cert["resolution"] = resolution_to_json(v.res);
    rep["certificates"] = std::move(cert);
    emit(o, rep, ranks_to_csv(v.res.ranks));
    return 0;
}

int cmd_sln_scan(const Opts& o) {
    require(o.p >= 2, "sln-scan: pass the modulus as --p");
    SLGroupDatum sl = sl_group(o.n, o.p);
    Json rep = config_echo("sln-scan", o);
    rep["n"] = o.n;
    rep["m"] = o.p;
    rep["order"] = sl.group.order();
    if (o.r > 0) {
        RankBoundReport rb = verify_rank_bound(o.n, o.p, (uint32_t)o.r);
        Json j;
        j["r"] = o.r;
        j["max_rank"] = rb.max_rank;
        j["bound"] = rb.bound;
        j["holds"] = rb.holds;
        j["scanned"] = rb.scanned;
        rep["rank_bound"] = std::move(j);
    }
    if (o.q >= 2) {
        CrtReport cr = crt_check(o.n, o.p, o.q);
        Json j;
        j["orders"] = Json::array(
            {cr.gpq.group.order(), cr.gp.group.order(), cr.gq.group.order()});
        j["orders_match"] = cr.orders_match;
        j["bijective"] = cr.bijective;
        rep["crt"] = std::move(j);
    }
    if (o.p % 2 == 1 && o.p >= 3) {
        Subgroup e = diagonal_sign_subgroup(sl);
        Json j;
        j["elements"] = subgroup_elems(e);
        j["rank"] = o.n - 1;
        rep["diagonal_sign"] = std::move(j);
    }
    emit(o, rep, std::nullopt);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"projective resolution workbench over modular group algebras"};
    app.require_subcommand(1);
    Opts o;

    auto* c_resolve = app.add_subcommand("resolve", "resolution of a module, rank table, growth verdict");
    auto* c_wall = app.add_subcommand("wall", "totalize column resolutions over a two-term complex");
    auto* c_bockstein = app.add_subcommand("bockstein", "degree-2 Yoneda sequences from index-p subgroups");
    auto* c_serre = app.add_subcommand("serre-search", "first vanishing product of Bockstein classes");
    auto* c_prop41 = app.add_subcommand("prop41", "transport a resolution up from index-p subgroups");
    auto* c_psylow = app.add_subcommand("psylow", "split M off a resolution induced from a Sylow subgroup");
    auto* c_main3 = app.add_subcommand("main3", "verify a growth bound through the full transfer chain");
    auto* c_alperin = app.add_subcommand("alperin-evens", "complexity over G vs maximal elementary abelians");
    auto* c_chouinard = app.add_subcommand("chouinard", "projectivity over G vs elementary abelians");
    auto* c_vfcd = app.add_subcommand("vfcd", "bound growth by the maximal elementary abelian rank");
    auto* c_sln = app.add_subcommand("sln-scan", "SL(n,Z_m) orders, rank bounds, CRT decomposition");
    for (auto* sub : {c_resolve, c_wall, c_bockstein, c_serre, c_prop41, c_psylow, c_main3,
                      c_alperin, c_chouinard, c_vfcd, c_sln})
        add_common(sub, o);
    c_sln->add_option("--n", o.n, "matrix size (default 2)");
    c_sln->add_option("--r", o.r, "check the r-elementary abelian rank bound");
    c_sln->add_option("--q", o.q, "second modulus: run the CRT decomposition check");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_resolve->parsed()) return cmd_resolve(o);
        if (c_wall->parsed()) return cmd_wall(o);
        if (c_bockstein->parsed()) return cmd_bockstein(o);
        if (c_serre->parsed()) return cmd_serre_search(o);
        if (c_prop41->parsed()) return cmd_prop41(o);
        if (c_psylow->parsed()) return cmd_psylow(o);
        if (c_main3->parsed()) return cmd_main3(o);
        if (c_alperin->parsed()) return cmd_alperin_evens(o);
        if (c_chouinard->parsed()) return cmd_chouinard(o);
        if (c_vfcd->parsed()) return cmd_vfcd(o);
        if (c_sln->parsed()) return cmd_sln_scan(o);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}

// Command-line front end. Loads declarative JSON inputs, dispatches to the
// library, and emits exact results deterministically.
//
// Exit codes: 0 success, 1 validation failure, 2 size cap exceeded,
// 3 I/O or parse error.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hlq/cardinality.hpp"
#include "hlq/incidence.hpp"
#include "hlq/io.hpp"

namespace fs = std::filesystem;
using json = nlohmann::json;
using namespace hlq;

namespace {

struct Options {
    std::string format = "json";
    NormalizationConvention conv = NormalizationConvention::target;
    SizeCaps caps = SizeCaps::from_env();
};

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void emit_scalar(const Options&, const Rational& r) { std::cout << to_string(r) << "\n"; }

void emit_map(const Options& opt, const json& j) {
    if (opt.format == "tsv") {
        for (const auto& [k, v] : j.items()) std::cout << k << "\t" << v.get<std::string>() << "\n";
    } else {
        emit(j);
    }
}

void emit_matrix(const Options& opt, const QMatrix& m) {
    if (opt.format == "tsv") {
        for (const auto& [k, v] : m.entries)
            std::cout << k.first << "\t" << k.second << "\t" << to_string(v) << "\n";
    } else {
        emit(io::qmatrix_to_json(m));
    }
}

fs::path dir_of(const std::string& path) { return fs::path(path).parent_path(); }

GroupoidPtr load_groupoid_file(const std::string& path) {
    return io::load_groupoid(io::load_json(path), dir_of(path));
}

// Incidence inputs may be a poset ({"elements":..}), a category
// ({"objects":..} without "kind"), or a groupoid (with "kind").
FiniteCategory load_incidence_input(const std::string& path) {
    json j = io::load_json(path);
    if (j.contains("elements")) return poset_category(io::poset_from_json(j));
    if (j.contains("kind")) {
        FiniteGroupoid g = io::groupoid_from_json(j);
        auto viol = g.validate();
        if (!viol.empty()) throw validation_error(viol);
        return g;
    }
    return io::category_from_json(j);
}

json groupoid_report(const FiniteGroupoid& g) {
    return json{{"groupoid", io::groupoid_to_json(g)},
                {"cardinality", to_string(groupoid_cardinality(g))}};
}

int run(int argc, char** argv) {
    CLI::App app{"exact homotopy linear algebra over finite groupoids"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"json", "tsv"}))
        ->capture_default_str();
    std::string conv_name = "target";
    app.add_option("--normalization", conv_name, "matrix normalization convention")
        ->check(CLI::IsMember({"target", "source"}));
    app.add_option("--size-cap", opt.caps.enum_cap, "enumeration budget override");

    std::string path_a, path_b, object_id;
    int max_dim = 2;

    auto* card = app.add_subcommand("card", "cardinality of a groupoid");
    card->add_option("groupoid", path_a)->required();

    auto* tcard = app.add_subcommand("tcard", "cardinality of a truncated space");
    tcard->add_option("space", path_a)->required();

    auto* skeleton = app.add_subcommand("skeleton", "skeletal form of a groupoid");
    skeleton->add_option("groupoid", path_a)->required();

    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two groupoids");
    equiv->add_option("first", path_a)->required();
    equiv->add_option("second", path_b)->required();

    auto* fibre = app.add_subcommand("fibre", "homotopy fibre of a functor over an object");
    fibre->add_option("functor", path_a)->required();
    fibre->add_option("object", object_id)->required();

    auto* pullback = app.add_subcommand("pullback", "homotopy pullback of a cospan");
    pullback->add_option("first", path_a)->required();
    pullback->add_option("second", path_b)->required();

    auto* span = app.add_subcommand("span", "span calculus");
    span->require_subcommand(1);
    auto* span_compose = span->add_subcommand("compose", "compose two spans");
    span_compose->add_option("first", path_a)->required();
    span_compose->add_option("second", path_b)->required();
    auto* span_matrix_cmd = span->add_subcommand("matrix", "cardinality matrix of a span");
    span_matrix_cmd->add_option("span", path_a)->required();
    auto* span_apply = span->add_subcommand("apply", "apply a span to a family");
    span_apply->add_option("span", path_a)->required();
    span_apply->add_option("family", path_b)->required();
    auto* span_transpose = span->add_subcommand("transpose", "swap the legs of a span");
    span_transpose->add_option("span", path_a)->required();

    auto* family = app.add_subcommand("family", "families over a base groupoid");
    family->require_subcommand(1);
    auto* family_card = family->add_subcommand("card", "cardinality vector of a family");
    family_card->add_option("family", path_a)->required();

    auto* presheaf = app.add_subcommand("presheaf", "presheaves on a base groupoid");
    presheaf->require_subcommand(1);
    auto* presheaf_card = presheaf->add_subcommand("card", "cardinality function of a presheaf");
    presheaf_card->add_option("presheaf", path_a)->required();

    auto* pair = app.add_subcommand("pair", "evaluation pairing of a family and a presheaf");
    pair->add_option("family", path_a)->required();
    pair->add_option("presheaf", path_b)->required();

    auto* incidence = app.add_subcommand("incidence", "incidence coalgebra of a poset or category");
    incidence->add_option("input", path_a)->required();
    bool want_comult = false, want_counit = false, want_zeta = false, want_mobius = false,
         want_coassoc = false;
    incidence->add_flag("--comult", want_comult, "comultiplication matrix");
    incidence->add_flag("--counit", want_counit, "counit function");
    incidence->add_flag("--zeta", want_zeta, "zeta function");
    incidence->add_flag("--mobius", want_mobius, "Moebius function");
    incidence->add_flag("--coassoc", want_coassoc, "verify coassociativity and counit laws");

    auto* qbinomial = app.add_subcommand("qbinomial", "Hall numbers of F2 linear injections");
    qbinomial->add_option("--max-dim", max_dim, "largest ambient dimension")
        ->capture_default_str();

    CLI11_PARSE(app, argc, argv);
    opt.conv = conv_name == "source" ? NormalizationConvention::source
                                     : NormalizationConvention::target;

    if (*card) {
        emit_scalar(opt, groupoid_cardinality(*load_groupoid_file(path_a)));
    } else if (*tcard) {
        emit_scalar(opt, truncated_cardinality(io::truncated_from_json(io::load_json(path_a))));
    } else if (*skeleton) {
        emit(io::skeleton_to_json(skeletalize(*load_groupoid_file(path_a))));
    } else if (*equiv) {
        bool e = equivalent(*load_groupoid_file(path_a), *load_groupoid_file(path_b), opt.caps);
        if (opt.format == "tsv") std::cout << (e ? "true" : "false") << "\n";
        else emit(json(e));
    } else if (*fibre) {
        GroupoidFunctor f = io::functor_from_json(io::load_json(path_a), dir_of(path_a));
        auto it = f.target->object_index.find(object_id);
        if (it == f.target->object_index.end())
            throw validation_error({"fibre: unknown object '" + object_id + "'"});
        emit(groupoid_report(homotopy_fibre(f, it->second)));
    } else if (*pullback) {
        GroupoidFunctor f = io::functor_from_json(io::load_json(path_a), dir_of(path_a));
        GroupoidFunctor g = io::functor_from_json(io::load_json(path_b), dir_of(path_b));
        if (!same_groupoid(*f.target, *g.target))
            throw validation_error({"pullback: the two functors have different targets"});
        g.target = f.target;
        Pullback pb = homotopy_pullback(f, g);
        emit(groupoid_report(*pb.groupoid));
    } else if (*span_compose) {
        Span a = io::span_from_json(io::load_json(path_a), dir_of(path_a));
        Span b = io::span_from_json(io::load_json(path_b), dir_of(path_b));
        emit(io::span_to_json(compose_spans(a, b)));
    } else if (*span_matrix_cmd) {
        emit_matrix(opt, span_matrix(io::span_from_json(io::load_json(path_a), dir_of(path_a)),
                                     opt.conv));
    } else if (*span_transpose) {
        emit(io::span_to_json(transpose(io::span_from_json(io::load_json(path_a), dir_of(path_a)))));
    } else if (*span_apply) {
        Span L = io::span_from_json(io::load_json(path_a), dir_of(path_a));
        FamilyOverS x = io::family_from_json(io::load_json(path_b), dir_of(path_b));
        FamilyOverS y = apply_span(L, x);
        emit(json{{"total", io::groupoid_to_json(*y.total())},
                  {"skeleton", io::skeleton_to_json(skeletalize(*y.total()))},
                  {"cardinality", io::qvector_to_json(family_cardinality(y))}});
    } else if (*family_card) {
        emit_map(opt, io::qvector_to_json(family_cardinality(
                          io::family_from_json(io::load_json(path_a), dir_of(path_a)))));
    } else if (*presheaf_card) {
        emit_map(opt, io::qfunction_to_json(presheaf_cardinality(
                          io::presheaf_from_json(io::load_json(path_a), dir_of(path_a)))));
    } else if (*pair) {
        FamilyOverS x = io::family_from_json(io::load_json(path_a), dir_of(path_a));
        FinitePresheaf f = io::presheaf_from_json(io::load_json(path_b), dir_of(path_b));
        emit_scalar(opt, pairing(x, f));
    } else if (*incidence) {
        FiniteCategory C = load_incidence_input(path_a);
        NerveLevels n = fat_nerve(C, opt.caps);
        json out = json::object();
        IncidenceData d;
        bool have_data = false;
        auto data = [&]() -> IncidenceData& {
            if (!have_data) {
                d = incidence_data(n);
                have_data = true;
            }
            return d;
        };
        if (opt.format == "tsv") {
            auto print_function = [](const QFunction& f) {
                for (const auto& l : f.index) std::cout << l << "\t" << to_string(f.at(l)) << "\n";
            };
            if (want_comult)
                for (const auto& [k, v] : data().comult.entries)
                    std::cout << k.first << "\t" << k.second << "\t" << to_string(v) << "\n";
            if (want_counit) print_function(convolution_unit(n));
            if (want_zeta) print_function(zeta_function(n));
            if (want_mobius) print_function(mobius_numeric(data()));
            if (want_coassoc) {
                CoassocReport r = coassoc_check(n);
                std::cout << "coassociative\t" << (r.coassociative ? "true" : "false") << "\n"
                          << "left_counit_law\t" << (r.left_counit_law ? "true" : "false") << "\n"
                          << "right_counit_law\t" << (r.right_counit_law ? "true" : "false") << "\n";
                if (!r.all()) return 1;
            }
            if (!want_comult && !want_counit && !want_zeta && !want_mobius && !want_coassoc)
                for (const auto& l : component_labels(*n.X1)) std::cout << l << "\n";
            return 0;
        }
        if (want_comult) out["comult"] = io::qmatrix_to_json(data().comult);
        if (want_counit) out["counit"] = io::qfunction_to_json(convolution_unit(n));
        if (want_zeta) out["zeta"] = io::qfunction_to_json(zeta_function(n));
        if (want_mobius) out["mobius"] = io::qfunction_to_json(mobius_numeric(data()));
        if (want_coassoc) {
            CoassocReport r = coassoc_check(n);
            out["coassoc"] = json{{"coassociative", r.coassociative},
                                  {"left_counit_law", r.left_counit_law},
                                  {"right_counit_law", r.right_counit_law}};
            if (!r.all()) {
                emit(out);
                return 1;
            }
        }
        if (out.empty()) out["components_X1"] = component_labels(*n.X1);
        emit(out);
    } else if (*qbinomial) {
        QBinomialReport r = qbinomial_check(max_dim, opt.caps);
        if (opt.format == "tsv") {
            for (const auto& e : r.entries)
                std::cout << e.n << "\t" << e.k << "\t" << to_string(e.computed) << "\t"
                          << e.expected.str() << "\t" << (e.pass ? "pass" : "fail") << "\n";
        } else {
            json entries = json::array();
            for (const auto& e : r.entries)
                entries.push_back({{"n", e.n},
                                   {"k", e.k},
                                   {"computed", to_string(e.computed)},
                                   {"expected", e.expected.str()},
                                   {"pass", e.pass}});
            emit(json{{"max_dim", r.max_dim}, {"entries", entries}, {"all_pass", r.all_pass}});
        }
        if (!r.all_pass) return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const validation_error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const size_cap_error& e) {
        std::cerr << "size cap exceeded: " << e.what() << "\n";
        return 2;
    } catch (const io_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
}

#include "cohomotopy/report.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace cohomotopy {

namespace {

using Json = nlohmann::ordered_json;

Json group_json(const PresentedGroup& g)
{
    Json torsion = Json::array();
    for (const auto& d : g.torsion)
        torsion.push_back(d.to_string());
    return Json{{"group", g.to_string()}, {"free_rank", g.free_rank}, {"torsion", torsion}};
}

Json bits_json(const Z2Vector& v)
{
    Json out = Json::array();
    for (auto b : v)
        out.push_back(static_cast<int>(b));
    return out;
}

Json checks_json(const std::vector<CheckResult>& checks)
{
    Json out = Json::array();
    for (const auto& c : checks)
        out.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    return out;
}

const char* pass_fail(bool ok)
{
    return ok ? "pass" : "FAIL";
}

}  // namespace

std::string tool_version()
{
#ifdef COHOMOTOPY_VERSION
    return COHOMOTOPY_VERSION;
#else
    return "dev";
#endif
}

std::string render_json(const CohomotopyReport& r, const ReportMeta& meta)
{
    Json doc;
    doc["schema"] = kReportSchema;
    doc["tool"] = Json{{"name", "cohomotopy"}, {"version", tool_version()}};
    doc["input"] = Json{{"path", meta.input}, {"name", r.name}, {"digest", meta.digest}};
    doc["complex"] = Json{{"dimension", r.dimension},
                          {"f_vector", r.f_vector},
                          {"euler_characteristic", r.euler_characteristic},
                          {"reduced_cells", r.reduced_cells}};
    doc["validation"] = Json{{"passed", r.validation.ok()}, {"messages", r.validation.messages()}};

    Json table = Json::array();
    for (const auto& row : r.table)
        table.push_back(Json{{"degree", row.degree},
                             {"H_k(X;Z)", row.integral_homology.to_string()},
                             {"H_k(X;o_X)", row.twisted_homology.to_string()},
                             {"H^k(X;Z)", row.integral_cohomology.to_string()},
                             {"dim H^k(X;Z2)", row.mod2_dimension}});
    doc["homology"] = table;

    doc["orientable"] = r.orientable;
    doc["stiefel_whitney"] = Json{{"w1_zero", r.w1_coordinates == Z2Vector(r.w1_coordinates.size(), 0)},
                                  {"w2_zero", r.w2_coordinates == Z2Vector(r.w2_coordinates.size(), 0)},
                                  {"w1^2+w2_zero", r.pin.vanishes},
                                  {"pin_minus", r.pin.vanishes}};
    Json cls{{"type", to_string(r.classification.type)}, {"functional_on_H_2(X;o_X)", r.classification.functional}};
    doc["classification"] = cls;
    doc["H_1(X;o_X)"] = group_json(r.h1_twisted);
    doc["F1"] = group_json(r.f1);

    Json cross = Json::object();
    cross["pipeline"] = checks_json(r.checks);
    if (r.crosscheck) {
        cross["steenrod_sequence"] = Json{{"skipped", false},
                                          {"sq2_values", r.crosscheck->sq2_values},
                                          {"cokernel", r.crosscheck->quotient.to_string()},
                                          {"checks", checks_json(r.crosscheck->checks)}};
    } else {
        cross["steenrod_sequence"] = Json{{"skipped", true}};
    }
    cross["all_passed"] = r.checks_passed();
    doc["crosschecks"] = cross;

    Json basis;
    basis["pivoting"] =
        "Smith normal form with the minimal-absolute-value pivot, ties by lowest (row, col); mod-2 bases by "
        "greedy echelon selection; cells reduced by unit-pivot elimination in (cost, degree, index) order";
    basis["w1_coordinates"] = bits_json(r.w1_coordinates);
    basis["w2_coordinates"] = bits_json(r.w2_coordinates);
    if (r.epsilon) {
        Json eps = Json::array();
        for (const auto& e : r.epsilon->entries)
            eps.push_back(Json{{"factor", e.factor},
                               {"order", e.order.to_string()},
                               {"value", e.value},
                               {"preimage_independent", e.preimage_independent}});
        basis["epsilon"] = eps;
        basis["beta1_kernel_dimension"] = r.epsilon->kernel_dimension;
    } else {
        basis["epsilon"] = nullptr;
    }
    doc["basis_relative"] = basis;

    if (meta.timing) {
        Json t = Json::object();
        for (const auto& s : r.timings)
            t[s.stage] = std::round(s.seconds * 1000.0) / 1000.0;
        doc["timing_seconds"] = t;
    }
    return doc.dump(2) + "\n";
}

std::string render_text(const CohomotopyReport& r, const ReportMeta& meta)
{
    std::ostringstream out;
    out << "input      " << meta.input << (r.name.empty() ? "" : " (" + r.name + ")") << "\n";
    out << "digest     " << meta.digest << "\n";
    out << "dimension  " << r.dimension << ", f-vector";
    for (auto f : r.f_vector)
        out << ' ' << f;
    out << ", chi " << r.euler_characteristic << "\n\n";

    out << std::left << std::setw(4) << "k" << std::setw(16) << "H_k(Z)" << std::setw(16) << "H_k(o_X)"
        << std::setw(16) << "H^k(Z)" << "dim H^k(Z2)\n";
    for (const auto& row : r.table)
        out << std::setw(4) << row.degree << std::setw(16) << row.integral_homology.to_string() << std::setw(16)
            << row.twisted_homology.to_string() << std::setw(16) << row.integral_cohomology.to_string()
            << row.mod2_dimension << "\n";
    out << "\n";
    out << "orientable " << (r.orientable ? "yes" : "no") << "\n";
    out << "w1         " << (r.sw.w1.representative().is_zero() ? "0" : "nonzero") << "\n";
    out << "w1^2+w2    " << (r.pin.vanishes ? "0 (Pin-)" : "nonzero") << "\n";
    out << "type       " << to_string(r.classification.type) << "\n";
    out << "H_1(o_X)   " << r.h1_twisted.to_string() << "\n";
    if (r.epsilon)
        for (const auto& e : r.epsilon->entries)
            out << "epsilon    factor " << e.factor << " (Z_" << e.order << "): " << e.value << "\n";
    out << "F1         " << r.f1.to_string() << "\n\n";

    for (const auto& c : r.checks)
        out << pass_fail(c.passed) << "  " << c.name << ": " << c.detail << "\n";
    if (r.crosscheck)
        for (const auto& c : r.crosscheck->checks)
            out << pass_fail(c.passed) << "  " << c.name << ": " << c.detail << "\n";
    else
        out << "skip  steenrod sequence cross-check\n";
    if (meta.timing) {
        out << "\n";
        for (const auto& s : r.timings)
            out << "time  " << std::setw(16) << s.stage << std::fixed << std::setprecision(3) << s.seconds << " s\n";
    }
    return out.str();
}

std::string render_validation_json(const FacetComplex& k, const ValidationReport& v, const ReportMeta& meta)
{
    Json doc;
    doc["schema"] = kReportSchema;
    doc["tool"] = Json{{"name", "cohomotopy"}, {"version", tool_version()}};
    doc["input"] = Json{{"path", meta.input}, {"name", k.name()}, {"digest", meta.digest}};
    doc["vertices"] = k.vertex_count();
    doc["facets"] = k.facets().size();
    doc["dimension"] = v.dimension;
    doc["dimension_ok"] = v.dimension_ok;
    doc["components"] = v.components;
    doc["ridge_violations"] = v.ridge_violations.size();
    doc["passed"] = v.ok();
    doc["messages"] = v.messages();
    return doc.dump(2) + "\n";
}

std::string render_validation_text(const FacetComplex& k, const ValidationReport& v)
{
    std::ostringstream out;
    out << k.vertex_count() << " vertices, " << k.facets().size() << " facets, dimension " << v.dimension << "\n";
    for (const auto& m : v.messages())
        out << "  " << m << "\n";
    out << (v.ok() ? "valid closed connected pseudomanifold\n" : "validation failed\n");
    return out.str();
}

}  // namespace cohomotopy

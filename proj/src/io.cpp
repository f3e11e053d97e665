#include "hrlab/io.hpp"

#include <fstream>

namespace hrlab {

namespace {

MultiIndex multi_index_from_json(const json& arr, int n) {
    if (!arr.is_array()) throw ValidationError("form JSON: I/J must be arrays");
    std::vector<int> idx;
    for (const auto& v : arr) idx.push_back(v.get<int>());
    return MultiIndex(std::move(idx), n);  // throws RangeError unless strictly increasing
}

}  // namespace

json form_to_json(const Form& f) {
    json terms = json::array();
    const int n = f.ambient();
    if (f.slots() > 0) {
        const CombTable& ti = comb_table(n, f.bidegree_p());
        const CombTable& tj = comb_table(n, f.bidegree_q());
        for (int ir = 0; ir < f.i_count(); ++ir)
            for (int jr = 0; jr < f.j_count(); ++jr) {
                const cplx c = f.coeff(ir, jr);
                if (c == cplx{}) continue;
                json term;
                term["I"] = MultiIndex::from_mask(ti.mask_of(ir), n).indices();
                term["J"] = MultiIndex::from_mask(tj.mask_of(jr), n).indices();
                term["re"] = c.real();
                term["im"] = c.imag();
                terms.push_back(std::move(term));
            }
    }
    return json{{"n", n}, {"p", f.bidegree_p()}, {"q", f.bidegree_q()}, {"terms", std::move(terms)}};
}

Form form_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        const int p = j.at("p").get<int>();
        const int q = j.at("q").get<int>();
        Form f(n, p, q);
        for (const auto& term : j.at("terms")) {
            const MultiIndex mi = multi_index_from_json(term.at("I"), n);
            const MultiIndex mj = multi_index_from_json(term.at("J"), n);
            f.add_term(mi, mj, cplx(term.at("re").get<double>(), term.at("im").get<double>()));
        }
        return f;
    } catch (const json::exception& e) {
        throw ValidationError(std::string("form JSON: ") + e.what());
    }
}

json hermitian_to_json(const HermitianForm& h) {
    const int n = h.ambient();
    json rows = json::array();
    for (int i = 0; i < n; ++i) {
        json row = json::array();
        for (int j = 0; j < n; ++j)
            row.push_back(json::array({h.matrix()(i, j).real(), h.matrix()(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return json{{"n", n}, {"rows", std::move(rows)}};
}

HermitianForm hermitian_from_json(const json& j, bool validate) {
    try {
        const int n = j.at("n").get<int>();
        const auto& rows = j.at("rows");
        if (static_cast<int>(rows.size()) != n) throw ValidationError("matrix JSON: row count mismatch");
        CMatrix a(n, n);
        for (int i = 0; i < n; ++i) {
            const auto& row = rows.at(static_cast<std::size_t>(i));
            if (static_cast<int>(row.size()) != n) throw ValidationError("matrix JSON: column count mismatch");
            for (int k = 0; k < n; ++k) {
                const auto& entry = row.at(static_cast<std::size_t>(k));
                a(i, k) = cplx(entry.at(0).get<double>(), entry.at(1).get<double>());
            }
        }
        return HermitianForm(std::move(a), validate);
    } catch (const json::exception& e) {
        throw ValidationError(std::string("matrix JSON: ") + e.what());
    }
}

json hyperplane_to_json(const Hyperplane& h) {
    json v = json::array();
    for (const cplx& z : h.v) v.push_back(json::array({z.real(), z.imag()}));
    return json{{"v", std::move(v)}};
}

Hyperplane hyperplane_from_json(const json& j) {
    try {
        std::vector<cplx> v;
        for (const auto& entry : j.at("v")) v.emplace_back(entry.at(0).get<double>(), entry.at(1).get<double>());
        return Hyperplane(std::move(v));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("hyperplane JSON: ") + e.what());
    }
}

json instance_to_json(const Instance& inst) {
    json alphas = json::array();
    for (const auto& a : inst.alphas) alphas.push_back(hermitian_to_json(a));
    return json{{"n", inst.n},
                {"m", inst.m},
                {"p", inst.p},
                {"q", inst.q},
                {"omega", hermitian_to_json(inst.omega)},
                {"alphas", std::move(alphas)}};
}

Instance instance_from_json(const json& j, bool validate, double tol) {
    try {
        const int n = j.at("n").get<int>();
        const int m = j.at("m").get<int>();
        const int p = j.at("p").get<int>();
        const int q = j.at("q").get<int>();
        HermitianForm omega = hermitian_from_json(j.at("omega"));
        std::vector<HermitianForm> alphas;
        for (const auto& a : j.at("alphas")) alphas.push_back(hermitian_from_json(a));
        if (validate) return Instance::validated(n, m, p, q, std::move(omega), std::move(alphas), tol);
        return Instance::unchecked(n, m, p, q, std::move(omega), std::move(alphas));
    } catch (const json::exception& e) {
        throw ValidationError(std::string("instance JSON: ") + e.what());
    }
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open file: " + path);
    try {
        json j;
        in >> j;
        return j;
    } catch (const json::exception& e) {
        throw ValidationError("parse error in " + path + ": " + e.what());
    }
}

void save_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot write file: " + path);
    out << j.dump(2) << "\n";
}

}  // namespace hrlab

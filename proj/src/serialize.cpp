#include "tshuf/serialize.hpp"

#include <algorithm>

namespace tshuf {

Json to_json(const Laurent& p) {
    const int n = p.arity();
    Json terms = Json::array();
    for (const auto& [zmono, coeff] : p.by_z_monomial()) {
        Json z = Json::array();
        for (int i = 0; i < n; ++i) z.push_back(zmono.z(i));
        Json cs = Json::array();
        for (const auto& [qm, c] : coeff.terms())
            cs.push_back(Json{{"q", {qm.q1(), qm.q2()}}, {"int", c.get_str()}});
        terms.push_back(Json{{"z", std::move(z)}, {"coeff", std::move(cs)}});
    }
    return Json{{"arity", n}, {"terms", std::move(terms)}};
}

Laurent laurent_from_json(const Json& doc) {
    try {
        const int n = doc.at("arity").get<int>();
        if (n < 0 || n > kMaxArity) throw ParseError("arity out of range");
        std::vector<Laurent::Term> terms;
        for (const auto& t : doc.at("terms")) {
            const auto& z = t.at("z");
            if (static_cast<int>(z.size()) != n) throw ParseError("z-exponent length mismatch");
            Mono base;
            for (int i = 0; i < n; ++i) base.z(i) = z[i].get<std::int32_t>();
            for (const auto& c : t.at("coeff")) {
                Mono m = base;
                m.q1() = c.at("q").at(0).get<std::int32_t>();
                m.q2() = c.at("q").at(1).get<std::int32_t>();
                Int v;
                if (v.set_str(c.at("int").get<std::string>(), 10) != 0)
                    throw ParseError("bad integer literal");
                terms.emplace_back(m, std::move(v));
            }
        }
        return Laurent::from_terms(n, std::move(terms));
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json parse_document(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        throw ParseError(e.what());
    }
}

}  // namespace tshuf

#include "takagi/serialize.hpp"

#include <sstream>

namespace takagi {

using nlohmann::json;

json json_rational(const Rational& r, const SerializeOptions& so) {
    if (!so.decimals) return r.str();
    json j;
    j["exact"] = r.str();
    j["decimal"] = r.decimal(*so.decimals);
    return j;
}

json json_interval(const RatInterval& iv, const SerializeOptions& so) {
    return json{{"lo", json_rational(iv.lo, so)}, {"hi", json_rational(iv.hi, so)}};
}

json json_hump(const Hump& h, const SerializeOptions& so) {
    return json{{"word", h.word.str()},
                {"x0", json_rational(dyadic_to_rational(h.x0), so)},
                {"m", h.order},
                {"generation", h.generation},
                {"leading", h.leading},
                {"I", json_interval(h.I, so)},
                {"J", json_interval(h.J, so)},
                {"Jt", json_interval(h.Jt, so)}};
}

json json_spine_point(const SpinePoint& p, const SerializeOptions& so) {
    json j{{"enclosure", json_interval(p.enclosure, so)},
           {"prefix_walk_ok", p.prefix_walk_ok},
           {"prefix", p.prefix.str()},
           {"level_enclosure", json_interval(p.level_enclosure, so)}};
    j["exact"] = p.exact ? json_rational(*p.exact, so) : json(nullptr);
    return j;
}

json json_level_report(const LevelSetReport& rep, const SerializeOptions& so) {
    json brackets = json::array();
    for (const RatInterval& b : rep.brackets) {
        json jb = json_interval(b, so);
        jb["depth"] = rep.depth_reached;
        brackets.push_back(std::move(jb));
    }
    json exact = json::array();
    for (const Rational& p : rep.exact_points) exact.push_back(json_rational(p, so));
    json growth = json::array();
    for (auto [d, c] : rep.growth) growth.push_back(json::array({d, c}));
    return json{{"y", json_rational(rep.y, so)},
                {"depth", rep.depth},
                {"depth_reached", rep.depth_reached},
                {"exact_points", std::move(exact)},
                {"brackets", std::move(brackets)},
                {"complete_cover", rep.complete_cover},
                {"truncated", rep.truncated},
                {"growth", std::move(growth)}};
}

json json_local_record(const LocalClassRecord& rec, const SerializeOptions& so) {
    json members = json::array();
    for (const PeriodicReal& m : rec.members) {
        members.push_back(json{{"binary", m.str()}, {"value", json_rational(m.to_rational(), so)}});
    }
    return json{{"representative", rec.exact ? json(rec.representative.str()) : json(nullptr)},
                {"members", std::move(members)},
                {"witness_hump", json_hump(rec.witness, so)},
                {"size", rec.size},
                {"exact", rec.exact},
                {"left_point", json_spine_point(rec.left, so)},
                {"right_point", json_spine_point(rec.right, so)}};
}

json json_local_set(const LocalLevelSet& set, const SerializeOptions& so) {
    json members = json::array();
    for (const PeriodicReal& m : set.members)
        members.push_back(json{{"binary", m.str()}, {"value", json_rational(m.to_rational(), so)}});
    return json{{"members", std::move(members)}, {"truncated", set.truncated}, {"size", set.members.size()}};
}

json json_classification(const ClassificationReport& rep, const SerializeOptions& so) {
    json counts = json::object();
    for (auto& [m, c] : rep.finite_local_count_at_order) counts[std::to_string(m)] = c;
    json growth = json::array();
    for (auto [d, c] : rep.bracket_growth) growth.push_back(json::array({d, c}));
    return json{{"y", json_rational(rep.y, so)},
                {"depth", rep.depth},
                {"max_order", rep.max_order},
                {"finite_local_count_at_order", std::move(counts)},
                {"exact_points_found", rep.exact_points_found},
                {"bracket_growth", std::move(growth)},
                {"flags",
                 json{{"boundary_hit", rep.boundary_hit},
                      {"right_endpoint_hit", rep.right_endpoint_hit},
                      {"dyadic_image_hit", rep.dyadic_image_hit},
                      {"cantor_growth_evidence", rep.cantor_growth_evidence},
                      {"count_stabilized", rep.count_stabilized},
                      {"truncated", rep.truncated}}},
                {"evidence", rep.evidence}};
}

std::string csv_humps(const std::vector<Hump>& humps) {
    std::ostringstream os;
    os << "word,x0,m,generation,leading,I_lo,I_hi,J_lo,J_hi,Jt_lo,Jt_hi\n";
    for (const Hump& h : humps) {
        os << h.word.str() << ',' << dyadic_to_rational(h.x0).str() << ',' << h.order << ','
           << h.generation << ',' << (h.leading ? 1 : 0) << ',' << h.I.lo.str() << ',' << h.I.hi.str()
           << ',' << h.J.lo.str() << ',' << h.J.hi.str() << ',' << h.Jt.lo.str() << ',' << h.Jt.hi.str()
           << '\n';
    }
    return os.str();
}

std::string csv_brackets(const LevelSetReport& rep) {
    std::ostringstream os;
    os << "lo,hi,depth\n";
    for (const RatInterval& b : rep.brackets)
        os << b.lo.str() << ',' << b.hi.str() << ',' << rep.depth_reached << '\n';
    return os.str();
}

}  // namespace takagi

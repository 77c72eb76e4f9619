#include "hasseforge/report.hpp"

namespace hf {

ojson j_int(const Int& n) { return n.get_str(); }

ojson j_rat(const Rat& q) { return q.get_num().get_str() + "/" + q.get_den().get_str(); }

ojson j_interval(const RatInterval& iv, int digits) {
    auto [lo, hi] = decimal_enclosure(iv, digits);
    return ojson{{"lo", j_rat(iv.lo)}, {"hi", j_rat(iv.hi)}, {"decimal", {lo, hi}}};
}

Int int_from_json(const ojson& j) { return int_from_string(j.get<std::string>()); }

Rat rat_from_json(const ojson& j) {
    std::string s = j.get<std::string>();
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(int_from_string(s));
    Rat r(int_from_string(s.substr(0, slash)), int_from_string(s.substr(slash + 1)));
    r.canonicalize();
    return r;
}

std::string dump_report(const ojson& j) { return j.dump(2) + "\n"; }

u64 fnv1a(const std::string& bytes) {
    u64 h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

}  // namespace hf

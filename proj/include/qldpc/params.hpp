#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace qldpc {

// Tuned decoder knobs (damping factor, unerased-prior scale) vary by code and
// erasure rate. They ship as small whitespace-separated tables:
//
//   # code        p_lo   p_hi   value
//   hgp_1600_64   0.00   0.08   0.1
//
// Lookups first try a covering range; rates outside every range fall back to
// the nearest one so sweeps slightly past the tabulated grid keep working.
class ParamTable {
public:
    struct Range {
        double lo, hi, value;
    };

    static ParamTable parse(std::istream& in, const std::string& origin);
    static ParamTable load_file(const std::string& path);

    std::optional<double> lookup(const std::string& code, double p) const;
    bool has_code(const std::string& code) const { return rows_.count(code) != 0; }
    bool empty() const { return rows_.empty(); }

private:
    std::map<std::string, std::vector<Range>> rows_;
};

struct ParamTables {
    ParamTable gamma;           // damping factor per code and rate
    ParamTable c_opt;           // adjusted prior scale, adjustment used alone
    ParamTable c_opt_combined;  // prior scale tuned jointly with damping

    // Reads the three tables from <data dir>/params; missing files load empty.
    static ParamTables load_default();
};

}  // namespace qldpc

#include "qcra/circulant_table.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace qcra {

void CirculantTable::validate() const {
    if (n == 0 || rate_num == 0 || rate_den == 0 || rate_num >= rate_den) {
        throw StructureError("invalid code dimensions in header");
    }
    if ((std::uint64_t(n) * rate_num) % rate_den != 0) {
        throw StructureError("N * rate is not an integer");
    }
    const std::uint32_t kk = k();
    const std::uint32_t mm = m();
    if (kk % kGroupSize != 0) {
        throw StructureError("K = " + std::to_string(kk) + " is not a multiple of 360");
    }
    if (mm % kGroupSize != 0) {
        throw StructureError("M = " + std::to_string(mm) + " is not a multiple of 360");
    }
    if (groups.size() != kk / kGroupSize) {
        throw StructureError("expected " + std::to_string(kk / kGroupSize) + " groups, got " +
                             std::to_string(groups.size()));
    }
    for (std::size_t g = 0; g < groups.size(); ++g) {
        std::set<std::uint32_t> seen;
        for (std::uint32_t idx : groups[g]) {
            if (idx >= mm) {
                throw StructureError("group " + std::to_string(g) + ": row index " +
                                     std::to_string(idx) + " out of range (M = " +
                                     std::to_string(mm) + ")");
            }
            if (!seen.insert(idx).second) {
                throw StructureError("group " + std::to_string(g) + ": duplicate row index " +
                                     std::to_string(idx));
            }
        }
        if (groups[g].empty()) {
            throw StructureError("group " + std::to_string(g) + " is empty");
        }
    }
}

CirculantTable parse_circulant_table(const std::string& text) {
    CirculantTable table;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag_n, tag_rate, frac;
            std::uint32_t n = 0;
            ls >> tag_n >> n >> tag_rate >> frac;
            if (ls.fail() || tag_n != "N" || tag_rate != "RATE") {
                throw ParseError("line " + std::to_string(line_no) +
                                 ": expected header `N <int> RATE <num>/<den>`");
            }
            std::size_t slash = frac.find('/');
            if (slash == std::string::npos) {
                throw ParseError("line " + std::to_string(line_no) + ": rate must be <num>/<den>");
            }
            try {
                table.n = n;
                table.rate_num = static_cast<std::uint32_t>(std::stoul(frac.substr(0, slash)));
                table.rate_den = static_cast<std::uint32_t>(std::stoul(frac.substr(slash + 1)));
            } catch (const std::exception&) {
                throw ParseError("line " + std::to_string(line_no) + ": malformed rate fraction");
            }
            have_header = true;
            continue;
        }
        std::vector<std::uint32_t> group;
        long long v;
        while (ls >> v) {
            if (v < 0) {
                throw ParseError("line " + std::to_string(line_no) + ": negative row index");
            }
            group.push_back(static_cast<std::uint32_t>(v));
        }
        if (!ls.eof()) {
            throw ParseError("line " + std::to_string(line_no) + ": malformed row index list");
        }
        table.groups.push_back(std::move(group));
    }
    if (!have_header) throw ParseError("missing header line");
    table.validate();
    return table;
}

CirculantTable load_circulant_table(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ParseError("cannot open table file: " + path);
    std::stringstream ss;
    ss << f.rdbuf();
    return parse_circulant_table(ss.str());
}

std::string serialize_circulant_table(const CirculantTable& table) {
    std::ostringstream out;
    out << "N " << table.n << " RATE " << table.rate_num << "/" << table.rate_den << "\n";
    for (const auto& g : table.groups) {
        for (std::size_t i = 0; i < g.size(); ++i) {
            if (i) out << ' ';
            out << g[i];
        }
        out << "\n";
    }
    return out.str();
}

const CirculantTable& builtin_rate_one_tenth() {
    static const CirculantTable table = [] {
        CirculantTable t;
        t.n = 64800;
        t.rate_num = 1;
        t.rate_den = 10;
        t.groups = {
            {0, 15960, 45564, 48399, 2007, 19137, 45463, 33191, 39884, 45109, 41483, 19553,
             51001, 33262, 57015, 26986, 21998, 24833, 42258},
            {2292, 41854, 46985, 49651, 52444, 9757, 53528, 413, 36760, 43848, 42277, 34280,
             32901, 14138, 54562, 43304, 46148, 9531, 678},
            {21678, 8451, 45933, 9635, 7184, 12580, 8135, 21014, 23184, 19605, 57842, 17646,
             19672, 34665, 50644, 26193, 49109, 47297, 2526},
            {1138, 33012, 34598, 31489, 56740, 52609, 15634, 7597, 985, 46, 53850, 19656,
             35877, 44343, 22954, 25459, 57073, 48417, 15447},
            {26306, 3957, 35415, 50885, 8951, 34488, 14059, 17762, 3933, 799, 36619, 22981,
             27176, 31670, 24464, 42482, 21818, 8315, 734},
            {37644, 32896, 30382, 32399, 13304, 32643, 8290, 55214, 18273, 36972, 12505,
             48674, 28470, 47239, 40769, 36028, 5018, 50298, 17934},
            {25904, 11332, 18160, 29161, 12384, 37865, 25403, 28531, 33394, 2199, 14952,
             13698, 53705, 40498, 31923, 26207, 23788, 41053, 48302},
            {34399, 54407, 52709},
            {21971, 50797, 7809},
            {51405, 12545, 14619},
            {24733, 56388, 6919},
            {25934, 55070, 14776},
            {35296, 53121, 34611},
            {33683, 55690, 50123},
            {1236, 30161, 10606},
            {14513, 36456, 24067},
            {4297, 46488, 32303},
            {20455, 8354, 55976},
        };
        t.validate();
        return t;
    }();
    return table;
}

}  // namespace qcra

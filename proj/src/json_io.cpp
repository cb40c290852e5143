#include "cpb/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace cpb {

ComplexMatrix read_matrix_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_matrix_json: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw IoError("read_matrix_json: parse error in " + path + ": " + e.what());
    }
    if (!j.contains("dim") || !j.contains("re") || !j.contains("im"))
        throw IoError("read_matrix_json: " + path + " needs fields dim, re, im");
    const int dim = j.at("dim");
    if (dim < 1 || dim > 64) throw IoError("read_matrix_json: unreasonable dim in " + path);
    const auto& re = j.at("re");
    const auto& im = j.at("im");
    if (!re.is_array() || !im.is_array() || static_cast<int>(re.size()) != dim ||
        static_cast<int>(im.size()) != dim)
        throw IoError("read_matrix_json: re/im must be dim x dim arrays in " + path);
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i) {
        if (static_cast<int>(re[i].size()) != dim || static_cast<int>(im[i].size()) != dim)
            throw IoError("read_matrix_json: ragged row in " + path);
        for (int k = 0; k < dim; ++k) m(i, k) = Complex(re[i][k], im[i][k]);
    }
    if (!m.is_finite()) throw IoError("read_matrix_json: non-finite entries in " + path);
    return m;
}

void write_matrix_json(const ComplexMatrix& m, const std::string& path) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json c = nlohmann::json::array();
        for (int k = 0; k < m.dim(); ++k) {
            r.push_back(m(i, k).real());
            c.push_back(m(i, k).imag());
        }
        re.push_back(std::move(r));
        im.push_back(std::move(c));
    }
    nlohmann::json j{{"dim", m.dim()}, {"re", std::move(re)}, {"im", std::move(im)}};
    std::ofstream out(path);
    if (!out) throw IoError("write_matrix_json: cannot open " + path);
    out << j.dump(1) << '\n';
    if (!out) throw IoError("write_matrix_json: write failed for " + path);
}

std::string triplet_to_json(const CPBTriplet& t) {
    nlohmann::json j{{"C", t.C},
                     {"P", t.P},
                     {"B", t.B},
                     {"R", t.R},
                     {"region", static_cast<int>(t.region)},
                     {"K1", t.K1},
                     {"K2", t.K2},
                     {"u1", t.u1},
                     {"u2", t.u2},
                     {"u3", t.u3},
                     {"B1", t.B1},
                     {"B2", t.B2},
                     {"branch", t.branch == BellBranch::B1 ? "B1" : "B2"}};
    return j.dump(1);
}

} // namespace cpb

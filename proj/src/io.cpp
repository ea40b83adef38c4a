#include "lipfree/io.hpp"

#include <fstream>
#include <sstream>

namespace lipfree::io {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path + "'");
    out << text;
}

Json parse_json(std::string_view text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw Error(Errc::ParseError, e.what());
    }
}

Json gamma_to_json(const exotic::IFamily& family, int N) {
    Json out;
    out["horizon"] = N;
    Json tables = Json::object();
    int top = 0;
    for (int k = 1; k < N; ++k) top = std::max(top, family.max_index(k));
    for (int n = 1; n <= top; ++n) {
        Json pairs = Json::array();
        for (const auto& [k, p] : exotic::gamma_pairs(family, n, N)) pairs.push_back(Json::array({k, p}));
        tables[std::to_string(n)] = std::move(pairs);
    }
    out["gamma"] = std::move(tables);
    return out;
}

}  // namespace lipfree::io

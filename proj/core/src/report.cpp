#include "dgla/report.hpp"

#include <cstdint>
#include <sstream>

#include "json.hpp"

#include "dgla/homology.hpp"
#include "dgla/models.hpp"

namespace dgla {

std::string content_digest(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    static const char* hex = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i) {
        out[i] = hex[h & 0xf];
        h >>= 4;
    }
    return out;
}

std::vector<std::string> standard_conventions() {
    return {ObstructionReport{}.convention, CohomologyTable{}.convention};
}

std::string Report::render_json() const {
    nlohmann::ordered_json j;
    j["schema"] = "dgla-report/1";
    j["command"] = command;
    j["input_digest"] = input_digest;
    nlohmann::ordered_json jc = nlohmann::ordered_json::object();
    for (auto& [name, value] : cutoffs) jc[name] = value;
    j["cutoffs"] = jc;
    j["conventions"] = conventions;
    j["notes"] = notes;
    j["result"] = payload_json.empty()
                      ? nlohmann::ordered_json(nullptr)
                      : nlohmann::ordered_json::parse(payload_json);
    return j.dump(2) + "\n";
}

namespace {

void render_value(std::ostream& out, const nlohmann::ordered_json& v,
                  int indent) {
    std::string pad(indent * 2, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            out << pad << it.key() << ":";
            if (it.value().is_object() || it.value().is_array()) {
                out << "\n";
                render_value(out, it.value(), indent + 1);
            } else {
                out << " " << it.value().dump() << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const auto& item : v) {
            if (item.is_object() || item.is_array()) {
                out << pad << "-\n";
                render_value(out, item, indent + 1);
            } else {
                out << pad << "- " << item.dump() << "\n";
            }
        }
    } else {
        out << pad << v.dump() << "\n";
    }
}

}  // namespace

std::string Report::render_text() const {
    std::ostringstream out;
    out << "schema: dgla-report/1\n";
    out << "command: " << command << "\n";
    out << "input_digest: " << input_digest << "\n";
    out << "cutoffs:\n";
    for (auto& [name, value] : cutoffs)
        out << "  " << name << ": " << value << "\n";
    out << "conventions:\n";
    for (auto& c : conventions) out << "  - " << c << "\n";
    out << "notes:\n";
    for (auto& n : notes) out << "  - " << n << "\n";
    out << "result:\n";
    if (!payload_json.empty())
        render_value(out, nlohmann::ordered_json::parse(payload_json), 1);
    return out.str();
}

}  // namespace dgla

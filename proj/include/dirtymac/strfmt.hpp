#pragma once

#include <sstream>
#include <string>
#include <string_view>

namespace dirtymac::strfmt {

// Sequentially substitutes each "{}" in fmt; enough for diagnostics without
// pulling in a formatting library.
template <class... Ts>
std::string format_msg(std::string_view fmt, const Ts&... args) {
    std::ostringstream out;
    out.precision(12);
    std::string_view rest = fmt;
    auto put = [&](const auto& v) {
        auto pos = rest.find("{}");
        if (pos == std::string_view::npos) {
            out << rest;
            rest = {};
            return;
        }
        out << rest.substr(0, pos) << v;
        rest.remove_prefix(pos + 2);
    };
    (put(args), ...);
    out << rest;
    return out.str();
}

} // namespace dirtymac::strfmt

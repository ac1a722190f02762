#pragma once

#include <string_view>

namespace probegen {

// Transport failures use the exit-code numbering of the common command-line
// transfer tool, so reports line up with published tables.
namespace exit_code {
inline constexpr int dns = 6;
inline constexpr int connect = 7;
inline constexpr int http_error = 22;
inline constexpr int timeout = 28;
inline constexpr int tls_connect = 35;
inline constexpr int empty_reply = 52;
inline constexpr int send_error = 55;
inline constexpr int reset = 56;
inline constexpr int tls_cert = 60;
inline constexpr int http2 = 16;
inline constexpr int http2_stream = 92;
}  // namespace exit_code

// Short category name for a transport exit code ("dns", "timeout", ...).
constexpr std::string_view transport_tag(int code) {
    switch (code) {
        case exit_code::dns: return "dns";
        case exit_code::connect: return "connect";
        case exit_code::timeout: return "timeout";
        case exit_code::tls_connect: return "tls";
        case exit_code::tls_cert: return "tls_cert";
        case exit_code::reset: return "reset";
        case exit_code::empty_reply: return "empty_reply";
        case exit_code::send_error: return "send_error";
        case exit_code::http2:
        case exit_code::http2_stream: return "http2";
        default: return "other";
    }
}

// Inverse of transport_tag for the named categories; 0 when unknown.
constexpr int exit_code_for_tag(std::string_view tag) {
    constexpr int known[] = {exit_code::dns,   exit_code::connect,     exit_code::timeout,    exit_code::tls_connect,
                             exit_code::tls_cert, exit_code::reset,    exit_code::empty_reply, exit_code::send_error,
                             exit_code::http2_stream};
    for (int c : known) {
        if (transport_tag(c) == tag) {
            return c;
        }
    }
    return 0;
}

}  // namespace probegen

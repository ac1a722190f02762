#include "probegen/common/jsonl.hpp"

#include <unistd.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "probegen/common/error.hpp"

namespace probegen {

void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn) {
    std::ifstream in(path);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        Json record;
        try {
            record = Json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw SchemaError(path.string(), line_no, std::string("invalid JSON: ") + e.what());
        }
        if (!record.is_object()) {
            throw SchemaError(path.string(), line_no, "record is not an object");
        }
        fn(record, line_no);
    }
}

std::vector<Json> read_jsonl(const std::filesystem::path& path) {
    std::vector<Json> out;
    for_each_jsonl(path, [&](const Json& r, std::size_t) { out.push_back(r); });
    return out;
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw Error("cannot write " + tmp.string());
        }
        out << content;
        out.flush();
        if (!out) {
            throw Error("write failed: " + tmp.string());
        }
    }
    std::filesystem::rename(tmp, path);
}

void write_jsonl_atomic(const std::filesystem::path& path, const std::vector<Json>& records) {
    std::string content;
    for (const auto& r : records) {
        content += r.dump();
        content += '\n';
    }
    write_file_atomic(path, content);
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error("cannot read " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

JsonlAppender::JsonlAppender(const std::filesystem::path& path) : path_(path) {
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path());
    }
    file_ = std::fopen(path.c_str(), "ab");
    if (file_ == nullptr) {
        throw Error("cannot open for append: " + path.string());
    }
}

JsonlAppender::~JsonlAppender() {
    if (file_ != nullptr) {
        std::fclose(file_);
    }
}

void JsonlAppender::append(const Json& record) {
    std::string line = record.dump();
    line.push_back('\n');
    if (std::fwrite(line.data(), 1, line.size(), file_) != line.size() || std::fflush(file_) != 0) {
        throw Error("append failed: " + path_.string());
    }
    ::fsync(::fileno(file_));
}

const Json& FieldReader::require(const char* key) const {
    auto it = record.find(key);
    if (it == record.end()) {
        fail(std::string("missing field '") + key + "'");
    }
    return *it;
}

std::string FieldReader::string(const char* key) const {
    const auto& v = require(key);
    if (!v.is_string()) {
        fail(std::string("field '") + key + "' must be a string");
    }
    return v.get<std::string>();
}

long long FieldReader::integer(const char* key) const {
    const auto& v = require(key);
    if (!v.is_number_integer()) {
        fail(std::string("field '") + key + "' must be an integer");
    }
    return v.get<long long>();
}

double FieldReader::number(const char* key) const {
    const auto& v = require(key);
    if (!v.is_number()) {
        fail(std::string("field '") + key + "' must be a number");
    }
    double d = v.get<double>();
    if (!std::isfinite(d)) {
        fail(std::string("field '") + key + "' must be finite");
    }
    return d;
}

void FieldReader::fail(const std::string& what) const {
    throw SchemaError(file, line, what);
}

}  // namespace probegen

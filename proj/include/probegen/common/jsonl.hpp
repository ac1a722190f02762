#pragma once

#include <cstdio>
#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

namespace probegen {

// Insertion-ordered so emitted records keep their documented field order.
using Json = nlohmann::ordered_json;

// Calls `fn(record, line_number)` for every non-blank line. Lines that are not
// valid JSON objects raise SchemaError naming the file and line.
void for_each_jsonl(const std::filesystem::path& path,
                    const std::function<void(const Json&, std::size_t)>& fn);

std::vector<Json> read_jsonl(const std::filesystem::path& path);

// Writes the whole file through a temporary and renames it into place.
void write_jsonl_atomic(const std::filesystem::path& path, const std::vector<Json>& records);
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_file(const std::filesystem::path& path);

// Append-only writer; every append is flushed and synced before returning.
class JsonlAppender {
public:
    explicit JsonlAppender(const std::filesystem::path& path);
    ~JsonlAppender();
    JsonlAppender(const JsonlAppender&) = delete;
    JsonlAppender& operator=(const JsonlAppender&) = delete;

    void append(const Json& record);

private:
    std::FILE* file_ = nullptr;
    std::filesystem::path path_;
};

// Typed field access with schema errors that carry file/line context.
struct FieldReader {
    const Json& record;
    const std::string& file;
    std::size_t line;

    const Json& require(const char* key) const;
    std::string string(const char* key) const;
    long long integer(const char* key) const;
    double number(const char* key) const;
    [[noreturn]] void fail(const std::string& what) const;
};

}  // namespace probegen

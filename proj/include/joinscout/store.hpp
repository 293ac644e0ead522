#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "joinscout/learner.hpp"
#include "joinscout/profile.hpp"

namespace joinscout {

inline constexpr int kProfileFormatVersion = 1;
inline constexpr int kModelFormatVersion = 1;

// FNV-1a over the raw bytes, rendered as "fnv1a64:<16 hex digits>".
uint64_t fnv1a64(std::string_view bytes);
std::string content_digest(std::string_view bytes);
std::string file_digest(const std::string& path);

struct ProfileDocument {
    int format_version = kProfileFormatVersion;
    std::string dataset_name;
    std::string source_path;
    std::string digest;  // of the source file at profiling time
    uint64_t row_count = 0;
    std::vector<AttributeProfile> attributes;
};

// "<out_dir>/<dataset>.profile.json"
std::string profile_document_path(const std::string& out_dir,
                                  const std::string& dataset_name);

void save_profiles(const std::string& path, const ProfileDocument& doc);

// Throws on malformed documents or unrecognized format_version. When the
// source file still exists and hashes differently, a warning is written
// to `warnings` (the document still loads).
ProfileDocument load_profiles(const std::string& path,
                              std::ostream* warnings = nullptr);

void save_model(const std::string& path, const ChainModel& model);
ChainModel load_model(const std::string& path);

}  // namespace joinscout

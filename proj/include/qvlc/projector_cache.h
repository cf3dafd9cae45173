// Copyright 2026 The qvlc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QVLC_PROJECTOR_CACHE_H_
#define QVLC_PROJECTOR_CACHE_H_

#include <filesystem>
#include <memory>
#include <optional>

#include "qvlc/linalg.h"

namespace qvlc {

struct IsotypicDecomposition;

/// Environment variable naming the on-disk cache directory. Unset disables disk caching.
inline constexpr const char *kCacheDirEnv = "QVLC_CACHE_DIR";

/// Process-wide decomposition for (n, d). Built once per process; concurrent
/// callers share the result. When the disk cache is enabled the file is read
/// if valid and written after a fresh build.
std::shared_ptr<const IsotypicDecomposition> isotypic_decomposition(int n, int d,
                                                                    const ResourceLimits &limits = {});

std::optional<std::filesystem::path> cache_directory();
std::filesystem::path cache_file(const std::filesystem::path &dir, int n, int d);

/// Binary format: "QVLCISO1", u32 version, i32 n, i32 d, i32 block count, then per
/// block: i32 row count, rows, i32 rank, f64 entropy, dim*dim f64 (row-major, real part).
void save_decomposition(const IsotypicDecomposition &decomp, const std::filesystem::path &file);
/// nullopt if the file is missing, truncated, or describes a different (n, d).
std::optional<IsotypicDecomposition> load_decomposition(const std::filesystem::path &file, int n, int d);

void clear_memory_cache();
/// Removes cache files from dir; returns how many were deleted.
int clear_disk_cache(const std::filesystem::path &dir);

}  // namespace qvlc

#endif  // QVLC_PROJECTOR_CACHE_H_

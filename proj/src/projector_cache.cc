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

#include "qvlc/projector_cache.h"

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <map>
#include <mutex>
#include <shared_mutex>

#include <fmt/format.h>

#include "qvlc/schur_weyl.h"

namespace qvlc {

namespace {

constexpr char kMagic[8] = {'Q', 'V', 'L', 'C', 'I', 'S', 'O', '1'};
constexpr std::uint32_t kVersion = 1;

struct MemoryCache {
    std::shared_mutex mutex;
    std::map<std::pair<int, int>, std::shared_ptr<const IsotypicDecomposition>> entries;
};

MemoryCache &memory_cache() {
    static MemoryCache cache;
    return cache;
}

template <typename T>
void put(std::ofstream &out, T value) {
    out.write(reinterpret_cast<const char *>(&value), sizeof(T));
}

template <typename T>
bool get(std::ifstream &in, T &value) {
    in.read(reinterpret_cast<char *>(&value), sizeof(T));
    return static_cast<bool>(in);
}

}  // namespace

std::optional<std::filesystem::path> cache_directory() {
    const char *env = std::getenv(kCacheDirEnv);
    if (env == nullptr || *env == '\0') {
        return std::nullopt;
    }
    return std::filesystem::path(env);
}

std::filesystem::path cache_file(const std::filesystem::path &dir, int n, int d) {
    return dir / fmt::format("isotypic_n{}_d{}.bin", n, d);
}

void save_decomposition(const IsotypicDecomposition &decomp, const std::filesystem::path &file) {
    std::filesystem::create_directories(file.parent_path());
    std::filesystem::path tmp = file;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw ResourceError(fmt::format("cannot write cache file {}", tmp.string()));
        }
        out.write(kMagic, sizeof(kMagic));
        put(out, kVersion);
        put(out, static_cast<std::int32_t>(decomp.n));
        put(out, static_cast<std::int32_t>(decomp.d));
        put(out, static_cast<std::int32_t>(decomp.blocks.size()));
        for (const IsotypicBlock &block : decomp.blocks) {
            put(out, static_cast<std::int32_t>(block.lambda.rows.size()));
            for (int r : block.lambda.rows) {
                put(out, static_cast<std::int32_t>(r));
            }
            put(out, static_cast<std::int32_t>(block.rank));
            put(out, block.entropy);
            for (Eigen::Index i = 0; i < block.projector.rows(); i++) {
                for (Eigen::Index j = 0; j < block.projector.cols(); j++) {
                    put(out, block.projector(i, j).real());
                }
            }
        }
    }
    std::filesystem::rename(tmp, file);
}

std::optional<IsotypicDecomposition> load_decomposition(const std::filesystem::path &file, int n, int d) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        return std::nullopt;
    }
    char magic[sizeof(kMagic)];
    in.read(magic, sizeof(magic));
    std::uint32_t version = 0;
    std::int32_t fn = 0, fd = 0, count = 0;
    if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0 || !get(in, version) || version != kVersion ||
        !get(in, fn) || !get(in, fd) || !get(in, count) || fn != n || fd != d) {
        return std::nullopt;
    }
    std::size_t dim = 1;
    for (int i = 0; i < n; i++) {
        dim *= static_cast<std::size_t>(d);
    }
    const std::vector<YoungDiagram> expected = partitions(n, d);
    if (count != static_cast<std::int32_t>(expected.size())) {
        return std::nullopt;
    }
    IsotypicDecomposition out;
    out.n = n;
    out.d = d;
    for (std::int32_t b = 0; b < count; b++) {
        std::int32_t len = 0;
        if (!get(in, len) || len < 1 || len > d) {
            return std::nullopt;
        }
        std::vector<int> rows;
        for (std::int32_t i = 0; i < len; i++) {
            std::int32_t r = 0;
            if (!get(in, r)) {
                return std::nullopt;
            }
            rows.push_back(r);
        }
        IsotypicBlock block;
        std::int32_t rank = 0;
        if (rows != expected[static_cast<std::size_t>(b)].rows || !get(in, rank) || !get(in, block.entropy)) {
            return std::nullopt;
        }
        block.lambda = YoungDiagram(std::move(rows));
        block.rank = rank;
        block.projector.resize(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; i++) {
            for (std::size_t j = 0; j < dim; j++) {
                double v = 0;
                if (!get(in, v)) {
                    return std::nullopt;
                }
                block.projector(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v;
            }
        }
        out.blocks.push_back(std::move(block));
    }
    return out;
}

std::shared_ptr<const IsotypicDecomposition> isotypic_decomposition(int n, int d, const ResourceLimits &limits) {
    if (n < 1 || d < 1) {
        throw std::invalid_argument("isotypic decomposition needs n >= 1 and d >= 1");
    }
    double dim = std::pow(static_cast<double>(d), n);
    if (dim > static_cast<double>(limits.max_dimension)) {
        throw ResourceError(fmt::format("d^n = {}^{} exceeds the dimension cap {}", d, n, limits.max_dimension));
    }
    MemoryCache &cache = memory_cache();
    const auto key = std::make_pair(n, d);
    {
        std::shared_lock lock(cache.mutex);
        auto it = cache.entries.find(key);
        if (it != cache.entries.end()) {
            return it->second;
        }
    }
    std::unique_lock lock(cache.mutex);
    auto it = cache.entries.find(key);
    if (it != cache.entries.end()) {
        return it->second;
    }
    std::optional<std::filesystem::path> dir = cache_directory();
    std::optional<IsotypicDecomposition> loaded;
    if (dir) {
        loaded = load_decomposition(cache_file(*dir, n, d), n, d);
    }
    std::shared_ptr<const IsotypicDecomposition> entry;
    if (loaded) {
        entry = std::make_shared<const IsotypicDecomposition>(std::move(*loaded));
    } else {
        entry = std::make_shared<const IsotypicDecomposition>(IsotypicDecomposition::build(n, d, limits));
        if (dir) {
            save_decomposition(*entry, cache_file(*dir, n, d));
        }
    }
    cache.entries.emplace(key, entry);
    return entry;
}

void clear_memory_cache() {
    MemoryCache &cache = memory_cache();
    std::unique_lock lock(cache.mutex);
    cache.entries.clear();
}

int clear_disk_cache(const std::filesystem::path &dir) {
    int removed = 0;
    if (!std::filesystem::exists(dir)) {
        return 0;
    }
    for (const auto &entry : std::filesystem::directory_iterator(dir)) {
        const std::string name = entry.path().filename().string();
        if (entry.is_regular_file() && name.rfind("isotypic_", 0) == 0 && entry.path().extension() == ".bin") {
            std::filesystem::remove(entry.path());
            removed++;
        }
    }
    return removed;
}

}  // namespace qvlc

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace oceanlab {

/// FNV-1a 64-bit checksum of a byte string.
inline std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

/// Repeatable shortest-round-trip formatting for doubles (%.17g).
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

/// CSV table builder with a fixed header; rows are formatted identically
/// on every run, so emitted files are byte-stable.
class CsvWriter {
  public:
    explicit CsvWriter(std::vector<std::string> columns) : columns_(std::move(columns)) {
        for (std::size_t i = 0; i < columns_.size(); ++i) {
            if (i) body_ << ',';
            body_ << columns_[i];
        }
        body_ << '\n';
    }

    void row(const std::vector<double>& values) {
        if (values.size() != columns_.size())
            throw std::invalid_argument("CsvWriter: row width mismatch");
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i) body_ << ',';
            body_ << format_double(values[i]);
        }
        body_ << '\n';
    }

    std::string str() const { return body_.str(); }

  private:
    std::vector<std::string> columns_;
    std::ostringstream body_;
};

/// Writes bytes to disk and returns the checksum of what was written.
inline std::uint64_t write_file(const std::filesystem::path& path, const std::string& bytes) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("write_file: cannot open " + path.string());
    os << bytes;
    os.close();
    return fnv1a64(bytes);
}

/// Accumulates (file, checksum) pairs and renders the manifest JSON.
class Manifest {
  public:
    void add(const std::string& name, std::uint64_t checksum) {
        entries_.emplace_back(name, checksum);
    }

    std::string json() const {
        std::ostringstream os;
        os << "{\n  \"schema\": \"manifest-v1\",\n  \"files\": [\n";
        for (std::size_t i = 0; i < entries_.size(); ++i) {
            os << "    {\"name\": \"" << entries_[i].first << "\", \"fnv1a64\": \""
               << std::hex << entries_[i].second << std::dec << "\"}";
            os << (i + 1 < entries_.size() ? ",\n" : "\n");
        }
        os << "  ]\n}\n";
        return os.str();
    }

  private:
    std::vector<std::pair<std::string, std::uint64_t>> entries_;
};

/// Deterministic parallel loop: the index range is split into fixed
/// chunks, each worker writes only to its own slots, and any reduction is
/// performed serially afterwards, so results are identical for every
/// thread count.
template <typename F>
void parallel_for(int n, int threads, const F& body) {
    if (threads <= 1 || n <= 1) {
        for (int i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    int per = (n + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
        int lo = t * per, hi = std::min(n, lo + per);
        if (lo >= hi) break;
        pool.emplace_back([lo, hi, &body] {
            for (int i = lo; i < hi; ++i) body(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace oceanlab

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "quatern/pinv.hpp"
#include "quatern/qmat_io.hpp"

namespace quatern::cli {

namespace fs = std::filesystem;

/// Collects outputs as temp files and renames them into place only when the
/// whole command succeeded; anything staged is deleted otherwise.
class OutputStager {
public:
    explicit OutputStager(fs::path out_dir) : dir_(std::move(out_dir)) {
        fs::create_directories(dir_);
    }

    ~OutputStager() {
        if (committed_) return;
        for (const auto& [tmp, final] : staged_) {
            std::error_code ec;
            fs::remove(tmp, ec);
        }
    }

    fs::path stage(const std::string& filename) {
        fs::path final = dir_ / filename;
        fs::path tmp = dir_ / (filename + ".tmp" + std::to_string(staged_.size()));
        staged_.emplace_back(tmp, final);
        return tmp;
    }

    void commit() {
        for (const auto& [tmp, final] : staged_) fs::rename(tmp, final);
        committed_ = true;
    }

    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<std::pair<fs::path, fs::path>> staged_;
    bool committed_ = false;
};

/// Worker cap: QUATERN_THREADS if set, hardware concurrency otherwise.
inline unsigned thread_cap() {
    if (const char* env = std::getenv("QUATERN_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

/// Runs the cells on up to thread_cap() workers; exceptions from cells are
/// rethrown on the caller thread after everyone joined.
inline void run_cells(std::vector<std::function<void()>> cells) {
    const unsigned workers = std::min<unsigned>(thread_cap(), cells.size() ? cells.size() : 1);
    if (workers <= 1) {
        for (auto& c : cells) c();
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(cells.size());
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size()) return;
                try {
                    cells[i]();
                } catch (...) {
                    errors[i] = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct MethodSpec {
    PinvMethod method = PinvMethod::Qsai;
    int order = 0;
    bool is_qsvd = false;
    std::string name;
};

/// "qns" | "qsai" | "qhpi19" | "qsvd" | "qrapid[:N]" | "qhon:p" | "hyperpower:k"
inline MethodSpec parse_method(const std::string& text) {
    MethodSpec spec;
    spec.name = text;
    std::string base = text;
    std::optional<int> arg;
    if (const auto colon = text.find(':'); colon != std::string::npos) {
        base = text.substr(0, colon);
        arg = std::stoi(text.substr(colon + 1));
    }
    if (base == "qsvd") {
        spec.is_qsvd = true;
    } else if (base == "qns") {
        spec.method = PinvMethod::Qns;
    } else if (base == "qsai") {
        spec.method = PinvMethod::Qsai;
    } else if (base == "qhpi19") {
        spec.method = PinvMethod::Qhpi19;
    } else if (base == "qrapid") {
        spec.method = PinvMethod::Qrapid;
        spec.order = arg.value_or(0);
    } else if (base == "qhon") {
        spec.method = PinvMethod::Qhon;
        if (!arg) throw std::invalid_argument("qhon needs an order, e.g. qhon:10");
        spec.order = *arg;
    } else if (base == "hyperpower") {
        spec.method = PinvMethod::Hyperpower;
        if (!arg) throw std::invalid_argument("hyperpower needs an order, e.g. hyperpower:4");
        spec.order = *arg;
    } else {
        throw std::invalid_argument("unknown method '" + text + "'");
    }
    return spec;
}

struct AlphaSpec {
    AlphaMode mode = AlphaMode::Spectral;
    std::optional<double> value;
    std::string text = "spectral";
};

inline AlphaSpec parse_alpha(const std::string& text) {
    AlphaSpec a;
    a.text = text;
    if (text == "spectral") {
        a.mode = AlphaMode::Spectral;
    } else if (text == "frobenius") {
        a.mode = AlphaMode::Frobenius;
    } else {
        a.value = std::stod(text);
        if (*a.value <= 0.0) throw std::invalid_argument("--alpha must be positive");
    }
    return a;
}

inline std::vector<std::string> split_list(const std::string& csv) {
    std::vector<std::string> out;
    std::stringstream ss(csv);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(tok);
    return out;
}

inline std::string csv_comment(std::uint64_t seed, double tol) {
    return "# seed=" + std::to_string(seed) + " tol=" + format_double(tol) + " version=";
}

}  // namespace quatern::cli

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecv/multiplicity.hpp"

namespace ecv {

namespace {

constexpr char magic[8] = {'E', 'C', 'V', 'T', 'B', 'L', '0', '1'};

std::uint64_t fnv1a(const std::vector<unsigned char>& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char b : data) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return h;
}

void put_u32(std::vector<unsigned char>& buf, std::uint32_t v) {
    unsigned char raw[4];
    std::memcpy(raw, &v, 4);
    buf.insert(buf.end(), raw, raw + 4);
}

void put_doubles(std::vector<unsigned char>& buf, const std::vector<double>& v) {
    const auto* raw = reinterpret_cast<const unsigned char*>(v.data());
    buf.insert(buf.end(), raw, raw + v.size() * sizeof(double));
}

struct reader {
    const std::vector<unsigned char>& buf;
    std::size_t pos = 0;

    void need(std::size_t bytes) const {
        if (pos + bytes > buf.size())
            throw std::runtime_error("table cache file is truncated");
    }
    std::uint32_t u32() {
        need(4);
        std::uint32_t v;
        std::memcpy(&v, buf.data() + pos, 4);
        pos += 4;
        return v;
    }
    std::vector<double> doubles(std::size_t count) {
        need(count * sizeof(double));
        std::vector<double> v(count);
        std::memcpy(v.data(), buf.data() + pos, count * sizeof(double));
        pos += count * sizeof(double);
        return v;
    }
};

// recompute the cheap corner of the table and require an exact match
void spot_check(const multiplicity_table& t) {
    const int probe = std::min(t.n, 8);
    for (int n_s = 0; n_s <= probe; ++n_s)
        for (int e = 0; e <= t.n; ++e)
            if (t.sparse_interface_log(n_s, e) !=
                sparse_interface_count(e, n_s, t.n - n_s).log())
                throw std::runtime_error("table cache failed verification");
    for (int n_d = 0; n_d <= probe; ++n_d) {
        const auto col = min_degree_two_log_column(n_d);
        if (t.dense[static_cast<std::size_t>(n_d)] != col)
            throw std::runtime_error("table cache failed verification");
    }
}

}  // namespace

void save_tables(const multiplicity_table& table, const std::filesystem::path& file) {
    std::vector<unsigned char> payload;
    put_u32(payload, static_cast<std::uint32_t>(table.n));
    put_doubles(payload, table.sparse_interface);
    for (const auto& col : table.dense) {
        put_u32(payload, static_cast<std::uint32_t>(col.size()));
        put_doubles(payload, col);
    }
    const std::uint64_t sum = fnv1a(payload);

    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.write(magic, sizeof(magic));
    out.write(reinterpret_cast<const char*>(payload.data()),
              static_cast<std::streamsize>(payload.size()));
    out.write(reinterpret_cast<const char*>(&sum), sizeof(sum));
    if (!out) throw std::runtime_error("cannot write " + file.string());
}

multiplicity_table load_tables(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + file.string());
    std::vector<unsigned char> raw((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
    if (raw.size() < sizeof(magic) + sizeof(std::uint64_t) ||
        std::memcmp(raw.data(), magic, sizeof(magic)) != 0)
        throw std::runtime_error(file.string() + " is not a table cache file");

    std::vector<unsigned char> payload(raw.begin() + sizeof(magic),
                                       raw.end() - sizeof(std::uint64_t));
    std::uint64_t stored;
    std::memcpy(&stored, raw.data() + raw.size() - sizeof(stored), sizeof(stored));
    if (fnv1a(payload) != stored)
        throw std::runtime_error(file.string() + " has a bad checksum");

    reader r{payload};
    multiplicity_table t;
    t.n = static_cast<int>(r.u32());
    if (t.n < 0 || t.n > 100000)
        throw std::runtime_error(file.string() + " has an implausible order");
    const std::size_t w = static_cast<std::size_t>(t.n) + 1;
    t.sparse_interface = r.doubles(w * w);
    t.dense.resize(w);
    for (std::size_t n_d = 0; n_d < w; ++n_d) {
        const std::size_t len = r.u32();
        t.dense[n_d] = r.doubles(len);
        const std::size_t expect = n_d * (n_d - 1) / 2 + 1;
        if (len != expect)
            throw std::runtime_error(file.string() + " has a malformed column");
    }
    if (r.pos != payload.size())
        throw std::runtime_error(file.string() + " has trailing bytes");
    spot_check(t);
    return t;
}

multiplicity_table load_or_build(int n, const std::filesystem::path& dir, bool parallel) {
    const auto file = dir / ("tables_n" + std::to_string(n) + ".bin");
    if (std::filesystem::exists(file)) {
        try {
            auto t = load_tables(file);
            if (t.n == n) return t;
        } catch (const std::exception&) {
            // stale or damaged cache: rebuild below
        }
    }
    auto t = parallel ? build_tables(n) : build_tables_serial(n);
    save_tables(t, file);
    return t;
}

}  // namespace ecv

#include "gracefill/checkpoint.hpp"

#include <cstring>
#include <fstream>
#include <vector>

#include "gracefill/errors.hpp"

namespace gracefill {

namespace {

constexpr char kMagic[4] = {'G', 'F', 'L', 'K'};
constexpr std::uint32_t kVersion = 1;

// x86-64 target; integers and doubles are written in host (little-endian)
// byte order.
template <class T>
void put(std::ostream& out, T v) {
    out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
    T v{};
    in.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!in) throw IoError("truncated checkpoint");
    return v;
}

void put_array(std::ostream& out, const std::string& name, const std::vector<double>& data,
               std::size_t rows, std::size_t cols) {
    put<std::uint8_t>(out, static_cast<std::uint8_t>(name.size()));
    out.write(name.data(), static_cast<std::streamsize>(name.size()));
    put<std::uint64_t>(out, rows);
    put<std::uint64_t>(out, cols);
    out.write(reinterpret_cast<const char*>(data.data()),
              static_cast<std::streamsize>(data.size() * sizeof(double)));
}

}  // namespace

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());

    out.write(kMagic, 4);
    put<std::uint32_t>(out, kVersion);

    const TrainConfig& c = ckpt.config;
    put<std::uint64_t>(out, c.look_back);
    put<std::uint64_t>(out, c.epochs);
    put<std::uint64_t>(out, c.batch_size);
    put<double>(out, c.learning_rate);
    put<double>(out, c.validation_fraction);
    put<double>(out, c.adam_beta1);
    put<double>(out, c.adam_beta2);
    put<double>(out, c.adam_epsilon);
    put<std::uint64_t>(out, c.rng_seed);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(c.input_layout));

    std::uint32_t count = 0;
    for_each_array(ckpt.params, [&](const char*, const std::vector<double>&, std::size_t,
                                    std::size_t) { ++count; });
    put<std::uint32_t>(out, count);
    for_each_array(ckpt.params,
                   [&](const char* name, const std::vector<double>& data, std::size_t rows,
                       std::size_t cols) { put_array(out, name, data, rows, cols); });

    if (!out) throw IoError("failed writing " + path.string());
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());

    char magic[4];
    in.read(magic, 4);
    if (!in || std::memcmp(magic, kMagic, 4) != 0)
        throw IoError("not a model checkpoint: " + path.string());
    const auto version = get<std::uint32_t>(in);
    if (version != kVersion)
        throw IoError("unsupported checkpoint version " + std::to_string(version));

    Checkpoint ckpt;
    TrainConfig& c = ckpt.config;
    c.look_back = get<std::uint64_t>(in);
    c.epochs = get<std::uint64_t>(in);
    c.batch_size = get<std::uint64_t>(in);
    c.learning_rate = get<double>(in);
    c.validation_fraction = get<double>(in);
    c.adam_beta1 = get<double>(in);
    c.adam_beta2 = get<double>(in);
    c.adam_epsilon = get<double>(in);
    c.rng_seed = get<std::uint64_t>(in);
    c.input_layout = static_cast<InputLayout>(get<std::uint8_t>(in));

    // Rebuild the parameter skeleton from the config echo, then overwrite
    // every array from the file, validating names and shapes as we go.
    ckpt.params = init_params(c.input_layout, c.look_back, 0);
    const auto n_arrays = get<std::uint32_t>(in);
    std::uint32_t seen = 0;
    for_each_array(ckpt.params, [&](const char* name, std::vector<double>& data, std::size_t rows,
                                    std::size_t cols) {
        ++seen;
        const auto name_len = get<std::uint8_t>(in);
        std::string stored(name_len, '\0');
        in.read(stored.data(), name_len);
        if (!in || stored != name)
            throw IoError("checkpoint array order mismatch: expected " + std::string(name) +
                          ", found " + stored);
        const auto r = get<std::uint64_t>(in);
        const auto cc = get<std::uint64_t>(in);
        if (r != rows || cc != cols)
            throw IoError("checkpoint shape mismatch for " + stored);
        in.read(reinterpret_cast<char*>(data.data()),
                static_cast<std::streamsize>(data.size() * sizeof(double)));
        if (!in) throw IoError("truncated checkpoint array " + stored);
    });
    if (seen != n_arrays) throw IoError("checkpoint array count mismatch");

    return ckpt;
}

}  // namespace gracefill

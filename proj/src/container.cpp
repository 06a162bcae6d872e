#include "ustr/container.hpp"

#include <array>
#include <cstring>
#include <fstream>

#include <cereal/archives/portable_binary.hpp>
#include <cereal/types/common.hpp>
#include <cereal/types/memory.hpp>
#include <cereal/types/optional.hpp>
#include <cereal/types/string.hpp>
#include <cereal/types/vector.hpp>

#include "ustr/errors.hpp"

namespace ustr {

namespace {

constexpr std::array<char, 8> kMagic{'U', 'S', 'T', 'R', 'I', 'D', 'X', '\0'};

}  // namespace

void save_container(const std::string& path, const IndexContainer& c) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path);
    out.write(kMagic.data(), kMagic.size());
    const std::uint32_t v = c.format_version;
    const std::array<char, 4> ver{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                  static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(ver.data(), ver.size());
    {
        cereal::PortableBinaryOutputArchive ar(out);
        ar(c.tau_min, c.epsilon, c.metric, c.docs, c.substring, c.listing, c.approx);
    }
    if (!out) throw Error("write failed for " + path);
}

IndexContainer load_container(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, 0, "cannot open index file");
    std::array<char, 8> magic{};
    std::array<unsigned char, 4> ver{};
    in.read(magic.data(), magic.size());
    in.read(reinterpret_cast<char*>(ver.data()), ver.size());
    if (!in || magic != kMagic) throw ParseError(path, 0, "not an index file (bad magic)");
    IndexContainer c;
    c.format_version = ver[0] | (ver[1] << 8) | (ver[2] << 16) | (static_cast<std::uint32_t>(ver[3]) << 24);
    if (c.format_version != kContainerFormatVersion) {
        throw ParseError(path, 0, "unsupported index format version " + std::to_string(c.format_version));
    }
    try {
        cereal::PortableBinaryInputArchive ar(in);
        ar(c.tau_min, c.epsilon, c.metric, c.docs, c.substring, c.listing, c.approx);
    } catch (const cereal::Exception& e) {
        throw ParseError(path, 0, std::string("corrupt index file: ") + e.what());
    }
    return c;
}

}  // namespace ustr

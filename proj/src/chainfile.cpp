#include "moss/chainfile.hpp"

#include <cstring>
#include <fstream>

namespace moss {

namespace {

constexpr char kMagic[4] = {'M', 'O', 'S', 'C'};
constexpr uint16_t kVersion = 1;

}  // namespace

Bytes encode_context(const ChainFileContext& ctx) {
    Encoder e;
    e.put_fixed(std::span<const uint8_t>(ctx.admin_key.data(), ctx.admin_key.size()));
    e.put_u64(ctx.schedule.gas_price.wei_per_gas);
    e.put_u32(static_cast<uint32_t>(ctx.schedule.per_function_gas.size()));
    for (const auto& [func, gas] : ctx.schedule.per_function_gas) {
        e.put_u8(static_cast<uint8_t>(func));
        e.put_u64(gas);
    }
    e.put_u64(ctx.schedule.order_response_seller_gas);
    e.put_u32(static_cast<uint32_t>(ctx.accounts.size()));
    for (const auto& [addr, key, balance] : ctx.accounts) {
        e.put_address(addr);
        e.put_fixed(std::span<const uint8_t>(key.data(), key.size()));
        e.put_u128(balance);
    }
    return e.take();
}

namespace {

ChainFileContext decode_context(std::span<const uint8_t> data) {
    Decoder d(data);
    ChainFileContext ctx;
    for (auto& b : ctx.admin_key) b = d.get_u8();
    ctx.schedule.gas_price.wei_per_gas = d.get_u64();
    uint32_t n = d.get_u32();
    for (uint32_t i = 0; i < n; ++i) {
        uint8_t func = d.get_u8();
        uint64_t gas = d.get_u64();
        if (func > static_cast<uint8_t>(FunctionId::SelfDestruct)) throw DecodeError("bad function id in schedule");
        ctx.schedule.per_function_gas[static_cast<FunctionId>(func)] = gas;
    }
    ctx.schedule.order_response_seller_gas = d.get_u64();
    uint32_t accounts = d.get_u32();
    for (uint32_t i = 0; i < accounts; ++i) {
        Address addr = d.get_address();
        crypto::PublicKey key;
        for (auto& b : key) b = d.get_u8();
        Wei balance = d.get_u128();
        ctx.accounts.emplace_back(addr, key, balance);
    }
    d.expect_done();
    return ctx;
}

}  // namespace

void write_chain_file(const std::string& path, const ChainFileContext& context, const std::vector<Block>& blocks) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ChainFileError(ChainFileErrorCode::IoError, "cannot open for writing: " + path);

    Encoder header;
    header.put_fixed(std::span<const uint8_t>(reinterpret_cast<const uint8_t*>(kMagic), 4));
    header.put_u16(kVersion);
    header.put_bytes(encode_context(context));
    out.write(reinterpret_cast<const char*>(header.bytes().data()), static_cast<std::streamsize>(header.bytes().size()));

    for (const Block& block : blocks) {
        Bytes body = block.encode();
        Hash32 checksum = crypto::sha256(body);
        Encoder record;
        record.put_u32(static_cast<uint32_t>(body.size()));
        record.put_fixed(body);
        record.put_hash(checksum);
        out.write(reinterpret_cast<const char*>(record.bytes().data()),
                  static_cast<std::streamsize>(record.bytes().size()));
    }
    if (!out) throw ChainFileError(ChainFileErrorCode::IoError, "write failed: " + path);
}

LoadedChain load_chain_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ChainFileError(ChainFileErrorCode::IoError, "cannot open: " + path);
    Bytes raw((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());

    try {
        Decoder d(raw);
        char magic[4];
        for (char& c : magic) c = static_cast<char>(d.get_u8());
        if (std::memcmp(magic, kMagic, 4) != 0)
            throw ChainFileError(ChainFileErrorCode::CorruptFile, "bad magic");
        uint16_t version = d.get_u16();
        if (version != kVersion)
            throw ChainFileError(ChainFileErrorCode::CorruptFile, "unsupported chain file version");

        LoadedChain loaded;
        loaded.context = decode_context(d.get_bytes());

        while (!d.done()) {
            Bytes body = d.get_bytes();
            Hash32 checksum = d.get_hash();
            if (crypto::sha256(body) != checksum)
                throw ChainFileError(ChainFileErrorCode::CorruptFile, "record checksum mismatch");
            loaded.blocks.push_back(Block::decode(body));
        }
        return loaded;
    } catch (const DecodeError& err) {
        throw ChainFileError(ChainFileErrorCode::CorruptFile, std::string("undecodable chain file: ") + err.what());
    }
}

}  // namespace moss

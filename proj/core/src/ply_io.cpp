#include "splataa/ply_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "splataa/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "payload decoding assumes a little-endian host");

namespace splataa {

namespace {

constexpr int kRestPerChannel = 15;

struct PlyHeader {
    long long vertex_count = 0;
    std::vector<std::string> properties;  // declaration order
};

PlyHeader parse_header(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw MalformedHeader("empty file");
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != "ply") throw MalformedHeader("missing ply magic");

    PlyHeader header;
    bool in_vertex_element = false;
    bool saw_format = false;
    bool saw_vertex = false;
    bool saw_end = false;

    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;
        if (tok == "comment" || tok.empty()) continue;
        if (tok == "format") {
            std::string fmt, version;
            ls >> fmt >> version;
            if (fmt != "binary_little_endian")
                throw MalformedHeader("unsupported format: " + fmt);
            saw_format = true;
        } else if (tok == "element") {
            std::string name;
            long long count = -1;
            ls >> name >> count;
            if (name == "vertex") {
                if (saw_vertex) throw MalformedHeader("duplicate vertex element");
                if (!ls || count < 0) throw MalformedHeader("bad vertex count");
                header.vertex_count = count;
                in_vertex_element = true;
                saw_vertex = true;
            } else {
                // only vertex payloads are understood; a trailing element would
                // desynchronize the stream
                throw MalformedHeader("unsupported element: " + name);
            }
        } else if (tok == "property") {
            std::string type, name;
            ls >> type >> name;
            if (!in_vertex_element) throw MalformedHeader("property outside vertex element");
            if (type == "list") throw MalformedHeader("list properties are unsupported");
            if (type != "float")
                throw MalformedHeader("property " + name + " has non-float type " + type);
            if (name.empty()) throw MalformedHeader("unnamed property");
            header.properties.push_back(name);
        } else if (tok == "end_header") {
            saw_end = true;
            break;
        } else {
            throw MalformedHeader("unexpected header token: " + tok);
        }
    }
    if (!saw_end) throw MalformedHeader("missing end_header");
    if (!saw_format) throw MalformedHeader("missing format line");
    if (!saw_vertex) throw MalformedHeader("missing vertex element");
    return header;
}

int require(const std::map<std::string, int>& offsets, const std::string& name) {
    auto it = offsets.find(name);
    if (it == offsets.end()) throw MissingProperty(name);
    return it->second;
}

}  // namespace

GaussianCloud load_ply(std::istream& in) {
    const PlyHeader header = parse_header(in);

    std::map<std::string, int> offset;
    for (int i = 0; i < int(header.properties.size()); ++i) {
        const std::string& name = header.properties[i];
        if (!offset.emplace(name, i).second)
            throw MalformedHeader("duplicate property: " + name);
    }

    const int ox = require(offset, "x");
    const int oy = require(offset, "y");
    const int oz = require(offset, "z");
    int odc[3], oscale[3], orot[4];
    for (int i = 0; i < 3; ++i) odc[i] = require(offset, "f_dc_" + std::to_string(i));
    const int oop = require(offset, "opacity");
    for (int i = 0; i < 3; ++i) oscale[i] = require(offset, "scale_" + std::to_string(i));
    for (int i = 0; i < 4; ++i) orot[i] = require(offset, "rot_" + std::to_string(i));

    int rest_count = 0;
    while (offset.count("f_rest_" + std::to_string(rest_count))) ++rest_count;
    if (rest_count > 3 * kRestPerChannel) throw MalformedHeader("too many f_rest properties");
    if (rest_count != 0 && rest_count != 9 && rest_count != 24 && rest_count != 45)
        throw MissingProperty("f_rest_" + std::to_string(rest_count));
    std::vector<int> orest(rest_count);
    for (int i = 0; i < rest_count; ++i) orest[i] = offset.at("f_rest_" + std::to_string(i));
    const int rest_per_channel = rest_count / 3;

    GaussianCloud cloud;
    switch (rest_per_channel) {
        case 0: cloud.sh_degree = 0; break;
        case 3: cloud.sh_degree = 1; break;
        case 8: cloud.sh_degree = 2; break;
        case 15: cloud.sh_degree = 3; break;
    }

    const std::size_t stride = header.properties.size();
    std::vector<float> row(stride);
    cloud.gaussians.reserve(std::size_t(std::min<long long>(header.vertex_count, 1 << 20)));

    for (long long v = 0; v < header.vertex_count; ++v) {
        in.read(reinterpret_cast<char*>(row.data()),
                std::streamsize(stride * sizeof(float)));
        if (std::size_t(in.gcount()) != stride * sizeof(float))
            throw TruncatedPayload("payload ends at vertex " + std::to_string(v) + " of " +
                                   std::to_string(header.vertex_count));

        Gaussian3D g;
        g.mean = {row[ox], row[oy], row[oz]};
        g.sh[0] = {row[odc[0]], row[odc[1]], row[odc[2]]};
        for (int k = 0; k < rest_per_channel; ++k)
            g.sh[k + 1] = {row[orest[k]], row[orest[rest_per_channel + k]],
                           row[orest[2 * rest_per_channel + k]]};
        g.opacity_logit = row[oop];
        g.log_scale = {row[oscale[0]], row[oscale[1]], row[oscale[2]]};
        g.rotation = {row[orot[0]], row[orot[1]], row[orot[2]], row[orot[3]]};
        cloud.gaussians.push_back(g);
    }
    return cloud;
}

GaussianCloud load_ply(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open: " + path.string());
    return load_ply(in);
}

void write_ply(const GaussianCloud& cloud, std::ostream& out) {
    out << "ply\nformat binary_little_endian 1.0\n"
        << "element vertex " << cloud.gaussians.size() << "\n";
    const char* base[] = {"x", "y", "z", "nx", "ny", "nz", "f_dc_0", "f_dc_1", "f_dc_2"};
    for (const char* p : base) out << "property float " << p << "\n";
    for (int i = 0; i < 3 * kRestPerChannel; ++i) out << "property float f_rest_" << i << "\n";
    out << "property float opacity\n";
    for (int i = 0; i < 3; ++i) out << "property float scale_" << i << "\n";
    for (int i = 0; i < 4; ++i) out << "property float rot_" << i << "\n";
    out << "end_header\n";

    std::vector<float> row(9 + 3 * kRestPerChannel + 1 + 3 + 4);
    for (const Gaussian3D& g : cloud.gaussians) {
        std::size_t i = 0;
        row[i++] = float(g.mean.x);
        row[i++] = float(g.mean.y);
        row[i++] = float(g.mean.z);
        row[i++] = 0.0f;  // nx, ny, nz carry no data
        row[i++] = 0.0f;
        row[i++] = 0.0f;
        row[i++] = float(g.sh[0].x);
        row[i++] = float(g.sh[0].y);
        row[i++] = float(g.sh[0].z);
        for (int k = 0; k < kRestPerChannel; ++k) row[i + k] = float(g.sh[k + 1].x);
        for (int k = 0; k < kRestPerChannel; ++k)
            row[i + kRestPerChannel + k] = float(g.sh[k + 1].y);
        for (int k = 0; k < kRestPerChannel; ++k)
            row[i + 2 * kRestPerChannel + k] = float(g.sh[k + 1].z);
        i += 3 * kRestPerChannel;
        row[i++] = float(g.opacity_logit);
        row[i++] = float(g.log_scale.x);
        row[i++] = float(g.log_scale.y);
        row[i++] = float(g.log_scale.z);
        row[i++] = float(g.rotation.w);
        row[i++] = float(g.rotation.x);
        row[i++] = float(g.rotation.y);
        row[i++] = float(g.rotation.z);
        out.write(reinterpret_cast<const char*>(row.data()),
                  std::streamsize(row.size() * sizeof(float)));
    }
    if (!out) throw IoFailure("ply write failed");
}

void write_ply(const GaussianCloud& cloud, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot open for writing: " + path.string());
    write_ply(cloud, out);
}

}  // namespace splataa

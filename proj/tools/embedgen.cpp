// Build-time generator: wraps data files into a C++ source with FNV-1a64
// checksums so loaders can verify the embedded bytes at runtime.
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace {

uint64_t fnv1a64(const std::string& s) {
    uint64_t h = 1469598103934665603ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        std::fprintf(stderr, "embedgen: cannot read %s\n", path.c_str());
        std::exit(1);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

int main(int argc, char** argv) {
    // usage: embedgen OUT.cpp name=path [name=path ...]
    if (argc < 3) {
        std::fprintf(stderr, "usage: embedgen OUT.cpp name=path ...\n");
        return 1;
    }
    std::filesystem::path out_path(argv[1]);
    if (out_path.has_parent_path())
        std::filesystem::create_directories(out_path.parent_path());
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        std::fprintf(stderr, "embedgen: cannot write %s\n", argv[1]);
        return 1;
    }
    out << "// Generated by embedgen; do not edit.\n"
        << "#include \"dice/embedded.hpp\"\n\n"
        << "namespace dice::embedded {\n\n";
    for (int i = 2; i < argc; ++i) {
        std::string arg = argv[i];
        auto eq = arg.find('=');
        if (eq == std::string::npos) {
            std::fprintf(stderr, "embedgen: bad argument %s\n", arg.c_str());
            return 1;
        }
        std::string name = arg.substr(0, eq);
        std::string body = slurp(arg.substr(eq + 1));
        if (body.find(")EMBED\"") != std::string::npos) {
            std::fprintf(stderr, "embedgen: %s contains the raw-string sentinel\n", name.c_str());
            return 1;
        }
        out << "const char* const " << name << " = R\"EMBED(" << body << ")EMBED\";\n";
        out << "const uint64_t " << name << "_fnv1a64 = " << fnv1a64(body) << "ull;\n\n";
    }
    out << "} // namespace dice::embedded\n";
    return out.good() ? 0 : 1;
}

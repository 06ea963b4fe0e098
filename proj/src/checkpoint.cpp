#include "blochsep/checkpoint.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "blochsep/errors.hpp"

namespace blochsep {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_u64_line(std::ostream& os, const char* key, std::uint64_t v) { os << key << ' ' << v << '\n'; }

class LineReader {
  public:
    explicit LineReader(std::istream& is) : is_(is) {}

    std::string next() {
        std::string line;
        if (!std::getline(is_, line)) throw IoError("checkpoint: unexpected end of file");
        return line;
    }

    /// "key value" line; returns the value part after checking the key.
    std::string field(const std::string& key) {
        const std::string line = next();
        if (line.rfind(key + " ", 0) != 0) throw IoError("checkpoint: expected field '" + key + "', got: " + line);
        return line.substr(key.size() + 1);
    }

    std::uint64_t u64(const std::string& key) {
        const std::string v = field(key);
        return std::stoull(v);
    }

    double real(const std::string& key) {
        const std::string v = field(key);
        return std::strtod(v.c_str(), nullptr);
    }

  private:
    std::istream& is_;
};

void write_grid(std::ostream& os, const char* name, const std::vector<std::uint64_t>& g) {
    os << name << '\n';
    constexpr int n = JointHistogram::kBins;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (j) os << ' ';
            os << g[i * n + j];
        }
        os << '\n';
    }
}

void read_grid(LineReader& r, const char* name, std::vector<std::uint64_t>& g) {
    if (r.next() != name) throw IoError(std::string("checkpoint: expected grid ") + name);
    constexpr int n = JointHistogram::kBins;
    for (int i = 0; i < n; ++i) {
        std::istringstream row(r.next());
        for (int j = 0; j < n; ++j) {
            if (!(row >> g[i * n + j])) throw IoError(std::string("checkpoint: short row in grid ") + name);
        }
    }
}

template <std::size_t N>
void write_array(std::ostream& os, const char* name, const std::array<std::uint64_t, N>& a) {
    os << name;
    for (const auto v : a) os << ' ' << v;
    os << '\n';
}

template <std::size_t N>
void read_array(LineReader& r, const char* name, std::array<std::uint64_t, N>& a) {
    std::istringstream line(r.next());
    std::string key;
    line >> key;
    if (key != name) throw IoError(std::string("checkpoint: expected array ") + name);
    for (auto& v : a)
        if (!(line >> v)) throw IoError(std::string("checkpoint: short array ") + name);
}

void write_moments(std::ostream& os, const char* name, const Moments& m) {
    os << name << ' ' << fmt_double(m.sr_a) << ' ' << fmt_double(m.sr_b) << ' ' << fmt_double(m.sr_a2)
       << ' ' << fmt_double(m.sr_b2) << ' ' << fmt_double(m.sr_ab) << '\n';
}

Moments read_moments(LineReader& r, const char* name) {
    std::istringstream line(r.next());
    std::string key;
    line >> key;
    if (key != name) throw IoError(std::string("checkpoint: expected moments ") + name);
    Moments m;
    std::string tok;
    double* fields[5] = {&m.sr_a, &m.sr_b, &m.sr_a2, &m.sr_b2, &m.sr_ab};
    for (double* f : fields) {
        if (!(line >> tok)) throw IoError(std::string("checkpoint: short moments ") + name);
        *f = std::strtod(tok.c_str(), nullptr);
    }
    return m;
}

}  // namespace

void save_checkpoint(const CheckpointFile& cp, const std::string& path) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw IoError("checkpoint: cannot open for writing: " + tmp);
        const JointHistogram& h = cp.hist;
        os << "blochsep-checkpoint " << CheckpointFile::kFormatVersion << '\n';
        os << "measure " << h.measure.to_string() << '\n';
        write_u64_line(os, "base_seed", h.base_seed);
        write_u64_line(os, "stream_offset", cp.stream_offset);
        os << "n_workers " << cp.n_workers << '\n';
        os << "contiguous " << (cp.contiguous ? 1 : 0) << '\n';
        write_u64_line(os, "samples_done", h.n_samples);
        write_u64_line(os, "n_sep", h.n_sep);
        write_u64_line(os, "n_sep_pt_dom", h.n_sep_pt_dom);
        write_u64_line(os, "draw_attempts", h.draw_attempts);
        write_u64_line(os, "draw_candidates", h.draw_candidates);
        write_u64_line(os, "near_zero_det_pt", h.near_zero_det_pt);
        os << "max_abs_det_rho " << fmt_double(h.max_abs_det_rho) << '\n';
        write_moments(os, "moments_all", h.mom_all);
        write_moments(os, "moments_sep", h.mom_sep);
        write_grid(os, "grid_total", h.total);
        write_grid(os, "grid_sep", h.sep);
        write_grid(os, "grid_sep_pt_dom", h.sep_pt_dom);
        write_array(os, "pd_total", h.pd_total);
        write_array(os, "pd_sep", h.pd_sep);
        write_array(os, "mzz_total", h.mzz_total);
        write_array(os, "mzz_sep", h.mzz_sep);
        os << "end\n";
        if (!os) throw IoError("checkpoint: write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw IoError("checkpoint: rename to " + path + " failed: " + ec.message());
}

CheckpointFile load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("checkpoint: cannot open: " + path);
    LineReader r(is);

    const std::string header = r.next();
    if (header.rfind("blochsep-checkpoint ", 0) != 0) throw IoError("checkpoint: bad header in " + path);
    const int version = std::stoi(header.substr(std::strlen("blochsep-checkpoint ")));
    if (version != CheckpointFile::kFormatVersion)
        throw IoError("checkpoint: unsupported format version " + std::to_string(version));

    CheckpointFile cp;
    JointHistogram& h = cp.hist;
    h.measure = MeasureSpec::parse(r.field("measure"));
    h.base_seed = r.u64("base_seed");
    cp.stream_offset = r.u64("stream_offset");
    cp.n_workers = static_cast<int>(r.u64("n_workers"));
    cp.contiguous = r.u64("contiguous") != 0;
    h.n_samples = r.u64("samples_done");
    h.n_sep = r.u64("n_sep");
    h.n_sep_pt_dom = r.u64("n_sep_pt_dom");
    h.draw_attempts = r.u64("draw_attempts");
    h.draw_candidates = r.u64("draw_candidates");
    h.near_zero_det_pt = r.u64("near_zero_det_pt");
    h.max_abs_det_rho = r.real("max_abs_det_rho");
    h.mom_all = read_moments(r, "moments_all");
    h.mom_sep = read_moments(r, "moments_sep");
    read_grid(r, "grid_total", h.total);
    read_grid(r, "grid_sep", h.sep);
    read_grid(r, "grid_sep_pt_dom", h.sep_pt_dom);
    read_array(r, "pd_total", h.pd_total);
    read_array(r, "pd_sep", h.pd_sep);
    read_array(r, "mzz_total", h.mzz_total);
    read_array(r, "mzz_sep", h.mzz_sep);
    if (r.next() != "end") throw IoError("checkpoint: missing end marker in " + path);
    return cp;
}

CheckpointFile merge_checkpoints(const CheckpointFile& a, const CheckpointFile& b) {
    if (!(a.hist.measure == b.hist.measure) || a.hist.base_seed != b.hist.base_seed)
        throw ConfigError("merge_checkpoints: measure/seed mismatch");
    const std::uint64_t a_lo = a.stream_offset, a_hi = a.stream_offset + a.hist.n_samples;
    const std::uint64_t b_lo = b.stream_offset, b_hi = b.stream_offset + b.hist.n_samples;
    if (a_lo < b_hi && b_lo < a_hi) throw ConfigError("merge_checkpoints: overlapping stream ranges");

    CheckpointFile out = a_lo <= b_lo ? a : b;
    const CheckpointFile& later = a_lo <= b_lo ? b : a;
    out.hist.merge(later.hist);
    out.contiguous = a.contiguous && b.contiguous &&
                     (a_hi == b_lo || b_hi == a_lo);
    out.n_workers = std::max(a.n_workers, b.n_workers);
    return out;
}

}  // namespace blochsep

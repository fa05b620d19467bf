// focusfuse command-line front end: fuse / decompose / gendata / genmask /
// eval / sweep. Every command is deterministic for fixed inputs, flags, and
// seed; FOCUSFUSE_THREADS caps the batch worker pool.

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <thread>

#include "focusfuse/config.hpp"
#include "focusfuse/dataset.hpp"
#include "focusfuse/image_io.hpp"
#include "focusfuse/metrics.hpp"
#include "focusfuse/pipeline.hpp"

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

// ------------------------------------------------------------- utilities

double elapsed_ms(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

unsigned worker_count(size_t items) {
    unsigned hw = std::thread::hardware_concurrency();
    if (hw == 0) hw = 1;
    if (const char* env = std::getenv("FOCUSFUSE_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 1) hw = std::min<long>(hw, v);
    }
    return static_cast<unsigned>(std::min<size_t>(hw, items == 0 ? 1 : items));
}

// Index-ordered parallel map; per-item results land in pre-sized slots, so
// the output is independent of scheduling.
void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
    const unsigned workers = worker_count(n);
    if (workers <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::mutex err_mutex;
    std::exception_ptr first_error;
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (;;) {
                const size_t i = next.fetch_add(1);
                if (i >= n) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(err_mutex);
                    if (!first_error) first_error = std::current_exception();
                }
            }
        });
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

std::string fmt6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

bool has_image_ext(const fs::path& p) {
    std::string e = p.extension().string();
    std::transform(e.begin(), e.end(), e.begin(), [](unsigned char c) { return std::tolower(c); });
    return e == ".png" || e == ".pgm" || e == ".pnm";
}

std::vector<fs::path> list_images(const std::string& dir) {
    if (!fs::is_directory(dir)) throw std::runtime_error("not a directory: " + dir);
    std::vector<fs::path> out;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && has_image_ext(entry.path())) out.push_back(entry.path());
    std::sort(out.begin(), out.end());
    return out;
}

// Find "<stem><suffix>.{png,pgm,pnm}" in dir; empty path when absent.
fs::path find_variant(const std::string& dir, const std::string& stem, const std::string& suffix) {
    for (const char* ext : {".png", ".pgm", ".pnm"}) {
        fs::path p = fs::path(dir) / (stem + suffix + ext);
        if (fs::exists(p)) return p;
    }
    return {};
}

void write_text(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("unwritable path: " + path);
    out << body;
    if (!out) throw std::runtime_error("unwritable path: " + path);
}

// ------------------------------------------------- shared option plumbing

struct CommonOpts {
    std::string config_file;
    std::vector<std::string> overrides;
    bool timings = false;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "flat key = value config file");
    cmd->add_option("--set", opts.overrides, "override a config key, e.g. --set ssf.lambda=0.1")
        ->type_name("KEY=VALUE");
    cmd->add_flag("--timings", opts.timings,
                  "record wall-clock runtimes in reports (breaks byte reproducibility)");
}

ff::FusionConfig build_config(const CommonOpts& opts) {
    ff::ConfigMap map;
    if (!opts.config_file.empty()) map = ff::parse_config_file(opts.config_file);
    for (const std::string& o : opts.overrides) ff::add_override(map, o);
    ff::FusionConfig cfg;
    ff::apply_config(cfg, map);
    return cfg;
}

// Texture layers are signed; shift them around mid-gray for visualization.
ff::GrayImage vis_signed(const ff::GrayImage& t) { return ff::add_scalar(t, 0.5); }

// Saliency maps are nonnegative with data-dependent scale; normalize by max.
ff::GrayImage vis_norm(const ff::GrayImage& m) {
    double mx = 0.0;
    for (double v : m.data) mx = std::max(mx, v);
    return mx > 0.0 ? ff::scale(m, 1.0 / mx) : m;
}

ff::GrayImage mask_to_image(const ff::BinaryMask& m) {
    ff::GrayImage img(m.width, m.height);
    for (size_t i = 0; i < m.data.size(); ++i) img.data[i] = m.data[i] ? 1.0 : 0.0;
    return img;
}

void dump_debug(const ff::FusionResult& res, const std::string& dir) {
    fs::create_directories(dir);
    auto save = [&](const ff::GrayImage& img, const std::string& name) {
        if (!img.empty()) ff::save_image(img, (fs::path(dir) / (name + ".png")).string());
    };
    for (size_t i = 0; i < res.structures.size(); ++i)
        save(res.structures[i], "S" + std::to_string(i + 1));
    for (size_t i = 0; i < res.textures.size(); ++i)
        save(vis_signed(res.textures[i]), "T" + std::to_string(i + 1));
    save(vis_norm(res.sm1), "SM1");
    save(vis_norm(res.sm2), "SM2");
    save(vis_norm(res.tm1), "TM1");
    save(vis_norm(res.tm2), "TM2");
    save(vis_norm(res.tm3), "TM3");
    save(vis_norm(res.tm4), "TM4");
    if (res.map_raw.pixel_count() > 0) save(mask_to_image(res.map_raw), "MAP");
    if (res.map_verified.pixel_count() > 0) save(mask_to_image(res.map_verified), "OMP");
    save(vis_signed(res.fused_texture), "FT");
    save(res.fused_structure, "FS");
}

// --------------------------------------------------------------- commands

struct FuseArgs {
    CommonOpts common;
    std::string visa, visb, ir, out, mode, debug_dir;
    bool gray_only = false;
};

ff::FusionMode resolve_mode(const FuseArgs& args) {
    const bool have_b = !args.visb.empty(), have_ir = !args.ir.empty();
    if (args.mode.empty()) {
        if (have_b && have_ir) return ff::FusionMode::Tri;
        if (have_ir) return ff::FusionMode::Mmif;
        if (have_b) return ff::FusionMode::Mfif;
        throw std::runtime_error("fuse: need at least two of --visa/--visb/--ir");
    }
    if (args.mode == "tri") {
        if (!have_b || !have_ir) throw std::runtime_error("fuse: tri mode needs --visa, --visb and --ir");
        return ff::FusionMode::Tri;
    }
    if (args.mode == "mmif") {
        if (!have_ir) throw std::runtime_error("fuse: mmif mode needs --visa and --ir");
        if (have_b) throw std::runtime_error("fuse: mmif mode takes no --visb");
        return ff::FusionMode::Mmif;
    }
    if (args.mode == "mfif") {
        if (!have_b) throw std::runtime_error("fuse: mfif mode needs --visa and --visb");
        if (have_ir) throw std::runtime_error("fuse: mfif mode takes no --ir");
        return ff::FusionMode::Mfif;
    }
    throw std::runtime_error("fuse: unknown mode '" + args.mode + "'");
}

int cmd_fuse(const FuseArgs& args) {
    ff::FusionConfig cfg = build_config(args.common);
    cfg.mode = resolve_mode(args);
    if (args.gray_only) cfg.chroma = ff::ChromaMode::GrayOnly;

    std::vector<std::string> vis_paths{args.visa};
    if (cfg.mode != ff::FusionMode::Mmif) vis_paths.push_back(args.visb);

    bool any_rgb = false;
    for (const std::string& p : vis_paths) any_rgb = any_rgb || ff::image_is_rgb(p);
    std::string out_ext = fs::path(args.out).extension().string();
    std::transform(out_ext.begin(), out_ext.end(), out_ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    const bool color_out =
        any_rgb && cfg.chroma == ff::ChromaMode::CarryFromVisible && out_ext == ".png";

    const auto start = Clock::now();
    if (color_out) {
        std::vector<ff::RgbImage> vis;
        for (const std::string& p : vis_paths) vis.push_back(ff::load_rgb(p));
        std::optional<ff::GrayImage> ir;
        if (cfg.mode != ff::FusionMode::Mfif) ir = ff::load_image(args.ir);
        ff::RgbImage fused = ff::fuse_rgb(vis, ir, cfg);
        if (!args.debug_dir.empty()) {
            std::vector<ff::GrayImage> gray;
            for (const ff::RgbImage& v : vis) gray.push_back(v.luminance());
            if (ir) gray.push_back(*ir);
            dump_debug(ff::fuse_detailed(gray, cfg), args.debug_dir);
        }
        ff::save_rgb(fused, args.out);
    } else {
        std::vector<ff::GrayImage> inputs;
        for (const std::string& p : vis_paths) inputs.push_back(ff::load_image(p));
        if (cfg.mode != ff::FusionMode::Mfif) inputs.push_back(ff::load_image(args.ir));
        ff::FusionResult res = ff::fuse_detailed(inputs, cfg);
        if (!args.debug_dir.empty()) dump_debug(res, args.debug_dir);
        ff::save_image(res.fused, args.out);
    }
    if (args.common.timings)
        std::cerr << "fuse: " << fmt6(elapsed_ms(start)) << " ms\n";
    return 0;
}

struct DecomposeArgs {
    CommonOpts common;
    std::string in, out_dir;
};

int cmd_decompose(const DecomposeArgs& args) {
    ff::FusionConfig cfg = build_config(args.common);
    ff::GrayImage f = ff::load_image(args.in);
    ff::Decomposition d = ff::decompose(f, cfg.ssf);
    fs::create_directories(args.out_dir);
    const std::string stem = fs::path(args.in).stem().string();
    ff::save_image(d.structure, (fs::path(args.out_dir) / (stem + "_structure.png")).string());
    // texture is signed; stored shifted by +0.5
    ff::save_image(vis_signed(d.texture), (fs::path(args.out_dir) / (stem + "_texture.png")).string());
    return 0;
}

struct GenmaskArgs {
    int width = 0, height = 0;
    uint64_t seed = 0;
    std::string out_dir, kind;
};

std::optional<ff::MaskShape> parse_kind(const std::string& kind) {
    if (kind.empty()) return std::nullopt;
    if (kind == "half_plane") return ff::MaskShape::HalfPlane;
    if (kind == "rect") return ff::MaskShape::Rect;
    if (kind == "ellipse") return ff::MaskShape::Ellipse;
    if (kind == "poly_blob") return ff::MaskShape::PolyBlob;
    throw std::runtime_error("unknown mask kind '" + kind +
                             "' (half_plane, rect, ellipse, poly_blob)");
}

int cmd_genmask(const GenmaskArgs& args) {
    ff::MaskSpec spec;
    spec.seed = args.seed;
    spec.shape = parse_kind(args.kind);
    ff::MaskPair pair = ff::gen_mask_pair(args.width, args.height, spec);
    fs::create_directories(args.out_dir);
    ff::save_image(mask_to_image(pair.m1), (fs::path(args.out_dir) / "m1.png").string());
    ff::save_image(mask_to_image(pair.m2), (fs::path(args.out_dir) / "m2.png").string());
    std::cerr << "genmask: shape " << ff::mask_shape_name(pair.shape) << ", area fraction "
              << fmt6(pair.area_frac) << "\n";
    return 0;
}

struct GendataArgs {
    CommonOpts common;
    std::string in_dir, out_dir, kind;
    uint64_t seed = 0;
    double sigma = 5.0;
};

int cmd_gendata(const GendataArgs& args) {
    const std::vector<fs::path> files = list_images(args.in_dir);
    if (files.empty()) throw std::runtime_error("no images found in " + args.in_dir);
    fs::create_directories(args.out_dir);
    const std::optional<ff::MaskShape> kind = parse_kind(args.kind);

    // per-file seeds drawn from one seeded stream over the sorted filenames
    ff::Rng seeder(args.seed);
    std::vector<uint64_t> file_seeds(files.size());
    for (uint64_t& s : file_seeds) s = seeder.next();

    struct Row {
        std::string stem, shape;
        uint64_t seed;
        double area;
    };
    std::vector<Row> rows(files.size());

    parallel_for(files.size(), [&](size_t i) {
        const ff::GrayImage clear = ff::load_image(files[i].string());
        ff::MaskSpec spec;
        spec.seed = file_seeds[i];
        spec.shape = kind;
        const ff::MaskPair masks = ff::gen_mask_pair(clear.width, clear.height, spec);
        const ff::DefocusPair pair = ff::simulate_defocus(clear, masks.m1, masks.m2, args.sigma);

        const std::string stem = files[i].stem().string();
        const fs::path base = fs::path(args.out_dir);
        ff::save_image(pair.f1, (base / (stem + "_f1.png")).string());
        ff::save_image(pair.f2, (base / (stem + "_f2.png")).string());
        ff::save_image(mask_to_image(masks.m1), (base / (stem + "_m1.png")).string());
        rows[i] = {stem, ff::mask_shape_name(masks.shape), file_seeds[i], masks.area_frac};
    });

    std::string csv = "filename,seed,shape,area_frac\n";
    for (const Row& r : rows)
        csv += r.stem + "," + std::to_string(r.seed) + "," + r.shape + "," + fmt6(r.area) + "\n";
    write_text((fs::path(args.out_dir) / "manifest.csv").string(), csv);
    return 0;
}

struct EvalArgs {
    CommonOpts common;
    std::string fused_dir, src_dir, report;
};

std::string report_csv(const std::vector<ff::FusionReport>& reports) {
    std::string csv = "id,q_g,q_m,q_s,ag,sf,psnr,runtime_ms\n";
    ff::FusionReport mean;
    for (const ff::FusionReport& r : reports) {
        csv += r.id + "," + fmt6(r.q_g) + "," + fmt6(r.q_m) + "," + fmt6(r.q_s) + "," + fmt6(r.ag) +
               "," + fmt6(r.sf) + "," + fmt6(r.psnr) + "," + fmt6(r.runtime_ms) + "\n";
        mean.q_g += r.q_g;
        mean.q_m += r.q_m;
        mean.q_s += r.q_s;
        mean.ag += r.ag;
        mean.sf += r.sf;
        mean.psnr += r.psnr;
        mean.runtime_ms += r.runtime_ms;
    }
    const double n = static_cast<double>(reports.size());
    csv += "MEAN," + fmt6(mean.q_g / n) + "," + fmt6(mean.q_m / n) + "," + fmt6(mean.q_s / n) +
           "," + fmt6(mean.ag / n) + "," + fmt6(mean.sf / n) + "," + fmt6(mean.psnr / n) + "," +
           fmt6(mean.runtime_ms / n) + "\n";
    return csv;
}

int cmd_eval(const EvalArgs& args) {
    const std::vector<fs::path> fused_files = list_images(args.fused_dir);
    if (fused_files.empty()) throw std::runtime_error("no images found in " + args.fused_dir);

    std::vector<ff::FusionReport> reports(fused_files.size());
    parallel_for(fused_files.size(), [&](size_t i) {
        const std::string id = fused_files[i].stem().string();
        fs::path a = find_variant(args.src_dir, id, "_a");
        fs::path b = find_variant(args.src_dir, id, "_b");
        if (a.empty() || b.empty()) {
            a = find_variant(args.src_dir, id, "_f1");
            b = find_variant(args.src_dir, id, "_f2");
        }
        if (a.empty() || b.empty())
            throw std::runtime_error("eval: no sources (" + id + "_a/_b or " + id +
                                     "_f1/_f2) in " + args.src_dir);
        const auto start = Clock::now();
        const ff::GrayImage fused = ff::load_image(fused_files[i].string());
        reports[i] = ff::evaluate_pair(id, fused, ff::load_image(a.string()),
                                       ff::load_image(b.string()));
        reports[i].runtime_ms = args.common.timings ? elapsed_ms(start) : 0.0;
    });

    write_text(args.report, report_csv(reports));
    return 0;
}

struct SweepArgs {
    CommonOpts common;
    std::string in_dir, param, values, report, mode = "mfif";
};

int cmd_sweep(const SweepArgs& args) {
    // pairs follow the gendata layout: <stem>_f1, <stem>_f2, optional <stem>_ir
    std::vector<std::string> stems;
    for (const fs::path& p : list_images(args.in_dir)) {
        const std::string name = p.stem().string();
        if (name.size() > 3 && name.ends_with("_f1")) stems.push_back(name.substr(0, name.size() - 3));
    }
    if (stems.empty()) throw std::runtime_error("no <stem>_f1 images found in " + args.in_dir);

    std::vector<std::string> values;
    {
        std::string v = args.values;
        size_t pos = 0;
        while (pos != std::string::npos) {
            const size_t comma = v.find(',', pos);
            values.push_back(v.substr(pos, comma == std::string::npos ? comma : comma - pos));
            pos = comma == std::string::npos ? comma : comma + 1;
        }
    }
    if (values.empty()) throw std::runtime_error("sweep: --values is empty");

    std::string csv = "param,value,q_g,q_m,q_s,ag,sf,psnr\n";
    for (const std::string& value : values) {
        ff::FusionConfig cfg = build_config(args.common);
        ff::ConfigMap one{{args.param, value}};
        ff::apply_config(cfg, one);
        if (args.mode == "tri")
            cfg.mode = ff::FusionMode::Tri;
        else if (args.mode == "mmif")
            cfg.mode = ff::FusionMode::Mmif;
        else if (args.mode == "mfif")
            cfg.mode = ff::FusionMode::Mfif;
        else
            throw std::runtime_error("sweep: unknown mode '" + args.mode + "'");

        std::vector<ff::FusionReport> reports(stems.size());
        parallel_for(stems.size(), [&](size_t i) {
            const fs::path f1 = find_variant(args.in_dir, stems[i], "_f1");
            const fs::path f2 = find_variant(args.in_dir, stems[i], "_f2");
            const fs::path ir = find_variant(args.in_dir, stems[i], "_ir");
            const ff::GrayImage a = ff::load_image(f1.string());
            const ff::GrayImage b = ff::load_image(f2.string());
            std::vector<ff::GrayImage> inputs{a, b};
            if (cfg.mode == ff::FusionMode::Tri) {
                if (ir.empty())
                    throw std::runtime_error("sweep: tri mode needs " + stems[i] + "_ir");
                inputs.push_back(ff::load_image(ir.string()));
            } else if (cfg.mode == ff::FusionMode::Mmif) {
                inputs = {a, b};  // treat f2 slot as the infrared input
            }
            reports[i] = ff::evaluate_pair(stems[i], ff::fuse(inputs, cfg), a, b);
        });

        ff::FusionReport mean;
        for (const ff::FusionReport& r : reports) {
            mean.q_g += r.q_g;
            mean.q_m += r.q_m;
            mean.q_s += r.q_s;
            mean.ag += r.ag;
            mean.sf += r.sf;
            mean.psnr += r.psnr;
        }
        const double n = static_cast<double>(reports.size());
        csv += args.param + "," + value + "," + fmt6(mean.q_g / n) + "," + fmt6(mean.q_m / n) +
               "," + fmt6(mean.q_s / n) + "," + fmt6(mean.ag / n) + "," + fmt6(mean.sf / n) + "," +
               fmt6(mean.psnr / n) + "\n";
    }
    write_text(args.report, csv);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"focusfuse: multi-focus + infrared image fusion"};
    app.require_subcommand(1);

    FuseArgs fuse_args;
    CLI::App* fuse_cmd = app.add_subcommand("fuse", "fuse two or three registered inputs");
    fuse_cmd->add_option("--visa", fuse_args.visa, "visible image A")->required();
    fuse_cmd->add_option("--visb", fuse_args.visb, "visible image B (other focus)");
    fuse_cmd->add_option("--ir", fuse_args.ir, "infrared image");
    fuse_cmd->add_option("--out", fuse_args.out, "output image (.png or .pgm)")->required();
    fuse_cmd->add_option("--mode", fuse_args.mode, "tri | mmif | mfif (default: inferred)");
    fuse_cmd->add_option("--debug-dump", fuse_args.debug_dir,
                         "directory for intermediate maps (S, T, SM, TM, MAP, OMP, FT, FS)");
    fuse_cmd->add_flag("--gray", fuse_args.gray_only, "ignore chroma; fuse luminance only");
    add_common(fuse_cmd, fuse_args.common);

    DecomposeArgs dec_args;
    CLI::App* dec_cmd = app.add_subcommand("decompose", "split an image into structure + texture");
    dec_cmd->add_option("--in", dec_args.in, "input image")->required();
    dec_cmd->add_option("--out", dec_args.out_dir, "output directory")->required();
    add_common(dec_cmd, dec_args.common);

    GenmaskArgs gm_args;
    CLI::App* gm_cmd = app.add_subcommand("genmask", "emit one complementary mask pair");
    gm_cmd->add_option("--width", gm_args.width, "mask width")->required();
    gm_cmd->add_option("--height", gm_args.height, "mask height")->required();
    gm_cmd->add_option("--seed", gm_args.seed, "generator seed")->required();
    gm_cmd->add_option("--out", gm_args.out_dir, "output directory")->required();
    gm_cmd->add_option("--kind", gm_args.kind, "half_plane | rect | ellipse | poly_blob");

    GendataArgs gd_args;
    CLI::App* gd_cmd = app.add_subcommand(
        "gendata", "synthesize complementary-focus pairs from all-in-focus images");
    gd_cmd->add_option("--in", gd_args.in_dir, "directory of all-in-focus images")->required();
    gd_cmd->add_option("--out", gd_args.out_dir, "output directory")->required();
    gd_cmd->add_option("--seed", gd_args.seed, "base seed")->required();
    gd_cmd->add_option("--sigma", gd_args.sigma, "defocus blur stddev (default 5)");
    gd_cmd->add_option("--kind", gd_args.kind, "pin the mask shape family");
    add_common(gd_cmd, gd_args.common);

    EvalArgs ev_args;
    CLI::App* ev_cmd = app.add_subcommand("eval", "score fused images against their sources");
    ev_cmd->add_option("--fused-dir", ev_args.fused_dir, "directory of fused images")->required();
    ev_cmd->add_option("--src-dir", ev_args.src_dir,
                       "directory of <id>_a/_b (or <id>_f1/_f2) sources")->required();
    ev_cmd->add_option("--report", ev_args.report, "output CSV")->required();
    add_common(ev_cmd, ev_args.common);

    SweepArgs sw_args;
    CLI::App* sw_cmd =
        app.add_subcommand("sweep", "re-run fuse + eval over a range of one config key");
    sw_cmd->add_option("--in", sw_args.in_dir, "directory of <stem>_f1/_f2[_ir] pairs")->required();
    sw_cmd->add_option("--param", sw_args.param, "config key to sweep, e.g. pyr.levels")->required();
    sw_cmd->add_option("--values", sw_args.values, "comma-separated values")->required();
    sw_cmd->add_option("--report", sw_args.report, "output CSV")->required();
    sw_cmd->add_option("--mode", sw_args.mode, "tri | mmif | mfif (default mfif)");
    add_common(sw_cmd, sw_args.common);

    CLI11_PARSE(app, argc, argv);

    try {
        if (fuse_cmd->parsed()) return cmd_fuse(fuse_args);
        if (dec_cmd->parsed()) return cmd_decompose(dec_args);
        if (gm_cmd->parsed()) return cmd_genmask(gm_args);
        if (gd_cmd->parsed()) return cmd_gendata(gd_args);
        if (ev_cmd->parsed()) return cmd_eval(ev_args);
        if (sw_cmd->parsed()) return cmd_sweep(sw_args);
    } catch (const std::exception& e) {
        std::cerr << "focusfuse: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

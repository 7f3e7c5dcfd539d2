#include "bavt/imgproc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "bavt/rng.hpp"

namespace bavt {

namespace {

constexpr int kBins = 256;

int value_bin(double v) {
    int b = static_cast<int>(v * kBins);
    return std::clamp(b, 0, kBins - 1);
}

void require_unit_interval(const Grid& img, const char* where) {
    if (!img.in_unit_interval())
        throw std::invalid_argument(std::string(where) + ": image values outside [0,1]");
}

// Clip at `limit` and redistribute the excess uniformly, re-clipping until
// the excess drains. Mass is conserved; no bin ends above limit + epsilon.
void clip_histogram(std::array<double, kBins>& hist, double limit) {
    double excess = 0.0;
    for (double& h : hist) {
        if (h > limit) {
            excess += h - limit;
            h = limit;
        }
    }
    while (excess > 1e-9) {
        const double share = excess / kBins;
        excess = 0.0;
        for (double& h : hist) {
            h += share;
            if (h > limit) {
                excess += h - limit;
                h = limit;
            }
        }
    }
}

struct TileSpan {
    int begin, end;  // [begin, end)
    double center;
};

std::vector<TileSpan> tile_spans(int extent, int tiles) {
    std::vector<TileSpan> spans(tiles);
    for (int t = 0; t < tiles; ++t) {
        spans[t].begin = static_cast<int>(static_cast<int64_t>(extent) * t / tiles);
        spans[t].end = static_cast<int>(static_cast<int64_t>(extent) * (t + 1) / tiles);
        spans[t].center = 0.5 * (spans[t].begin + spans[t].end - 1);
    }
    return spans;
}

double sample_bilinear(const Grid& g, double r, double c) {
    const int r0 = static_cast<int>(std::floor(r));
    const int c0 = static_cast<int>(std::floor(c));
    const double fr = r - r0;
    const double fc = c - c0;
    auto pick = [&](int rr, int cc) -> double {
        if (rr < 0 || rr >= g.h || cc < 0 || cc >= g.w) return 0.0;
        return g.at(rr, cc);
    };
    return (1 - fr) * ((1 - fc) * pick(r0, c0) + fc * pick(r0, c0 + 1)) +
           fr * ((1 - fc) * pick(r0 + 1, c0) + fc * pick(r0 + 1, c0 + 1));
}

uint8_t sample_nearest(const Mask& m, double r, double c) {
    const int rr = static_cast<int>(std::lround(r));
    const int cc = static_cast<int>(std::lround(c));
    if (rr < 0 || rr >= m.h || cc < 0 || cc >= m.w) return 0;
    return m.at(rr, cc);
}

}  // namespace

void AugmentConfig::scale_elastic_for_size(int size) {
    const double s = size / 512.0;
    elastic_alpha = 34.0 * s;
    elastic_sigma = std::max(0.5, 4.0 * s);
}

void AugmentConfig::validate() const {
    auto prob = [](double p) { return p >= 0.0 && p <= 1.0; };
    if (!prob(flip_prob)) throw std::invalid_argument("AugmentConfig: flip_prob outside [0,1]");
    if (!prob(elastic_prob)) throw std::invalid_argument("AugmentConfig: elastic_prob outside [0,1]");
    if (rotation_range_deg < 0.0)
        throw std::invalid_argument("AugmentConfig: rotation_range_deg negative");
    if (!(gamma_lo > 0.0) || !(gamma_lo <= gamma_hi))
        throw std::invalid_argument("AugmentConfig: gamma range must satisfy 0 < lo <= hi");
    if (clahe_tiles < 1) throw std::invalid_argument("AugmentConfig: clahe_tiles < 1");
    if (!(norm_std > 0.0)) throw std::invalid_argument("AugmentConfig: norm_std must be positive");
    if (elastic_alpha < 0.0) throw std::invalid_argument("AugmentConfig: elastic_alpha negative");
    if (!(elastic_sigma > 0.0)) throw std::invalid_argument("AugmentConfig: elastic_sigma must be positive");
}

Grid normalize(const Grid& image, double mean, double std_dev) {
    if (!(std_dev > 0.0))
        throw std::invalid_argument("normalize: std must be positive");
    Grid out(image.h, image.w);
    const double inv = 1.0 / std_dev;
    for (size_t i = 0; i < image.size(); ++i) out.v[i] = (image.v[i] - mean) * inv;
    return out;
}

std::vector<std::array<double, kBins>> clahe_tile_histograms(const Grid& image,
                                                             double clip, int tiles) {
    if (tiles < 1) throw std::invalid_argument("clahe: tiles must be >= 1");
    if (tiles > image.h || tiles > image.w)
        throw std::invalid_argument("clahe: tile grid exceeds image dimensions");
    require_unit_interval(image, "clahe");

    const auto rows = tile_spans(image.h, tiles);
    const auto cols = tile_spans(image.w, tiles);
    std::vector<std::array<double, kBins>> hists(static_cast<size_t>(tiles) * tiles);

    for (int tr = 0; tr < tiles; ++tr) {
        for (int tc = 0; tc < tiles; ++tc) {
            auto& hist = hists[static_cast<size_t>(tr) * tiles + tc];
            hist.fill(0.0);
            for (int r = rows[tr].begin; r < rows[tr].end; ++r)
                for (int c = cols[tc].begin; c < cols[tc].end; ++c)
                    hist[value_bin(image.at(r, c))] += 1.0;
            const double npix = static_cast<double>(rows[tr].end - rows[tr].begin) *
                                (cols[tc].end - cols[tc].begin);
            if (std::isfinite(clip) && clip > 0.0)
                clip_histogram(hist, clip * npix / kBins);
        }
    }
    return hists;
}

Grid clahe(const Grid& image, double clip, int tiles) {
    const auto hists = clahe_tile_histograms(image, clip, tiles);
    const auto rows = tile_spans(image.h, tiles);
    const auto cols = tile_spans(image.w, tiles);

    // Per-tile equalization map: normalized CDF over the clipped histogram.
    std::vector<std::array<double, kBins>> maps(hists.size());
    for (size_t t = 0; t < hists.size(); ++t) {
        double total = 0.0;
        for (double hval : hists[t]) total += hval;
        double acc = 0.0;
        for (int b = 0; b < kBins; ++b) {
            acc += hists[t][b];
            maps[t][b] = acc / total;
        }
    }

    Grid out(image.h, image.w);
    int tr = 0;
    for (int r = 0; r < image.h; ++r) {
        // lower tile index along rows (tile whose center is <= r, clamped)
        while (tr + 1 < tiles && rows[tr + 1].center <= r) ++tr;
        int tr0 = tr, tr1 = tr;
        double fr = 0.0;
        if (r < rows[0].center) {
            tr0 = tr1 = 0;
        } else if (tr + 1 < tiles) {
            tr1 = tr + 1;
            fr = (r - rows[tr0].center) / (rows[tr1].center - rows[tr0].center);
        }
        int tc = 0;
        for (int c = 0; c < image.w; ++c) {
            while (tc + 1 < tiles && cols[tc + 1].center <= c) ++tc;
            int tc0 = tc, tc1 = tc;
            double fc = 0.0;
            if (c < cols[0].center) {
                tc0 = tc1 = 0;
            } else if (tc + 1 < tiles) {
                tc1 = tc + 1;
                fc = (c - cols[tc0].center) / (cols[tc1].center - cols[tc0].center);
            }
            const int b = value_bin(image.at(r, c));
            const double m00 = maps[static_cast<size_t>(tr0) * tiles + tc0][b];
            const double m01 = maps[static_cast<size_t>(tr0) * tiles + tc1][b];
            const double m10 = maps[static_cast<size_t>(tr1) * tiles + tc0][b];
            const double m11 = maps[static_cast<size_t>(tr1) * tiles + tc1][b];
            out.at(r, c) = (1 - fr) * ((1 - fc) * m00 + fc * m01) +
                           fr * ((1 - fc) * m10 + fc * m11);
        }
    }
    return out;
}

Grid gamma_correct(const Grid& image, double gamma) {
    if (!(gamma > 0.0)) throw std::invalid_argument("gamma_correct: gamma must be positive");
    require_unit_interval(image, "gamma_correct");
    Grid out(image.h, image.w);
    for (size_t i = 0; i < image.size(); ++i) out.v[i] = std::pow(image.v[i], gamma);
    return out;
}

std::pair<Grid, Mask> rotate_pair(const Grid& image, const Mask& mask,
                                  double angle_deg) {
    if (!mask.same_shape(image))
        throw std::invalid_argument("rotate_pair: dimension mismatch");
    if (angle_deg == 0.0) return {image, mask};

    const double theta = angle_deg * M_PI / 180.0;
    const double ct = std::cos(theta);
    const double st = std::sin(theta);
    const double cr = 0.5 * (image.h - 1);
    const double cc = 0.5 * (image.w - 1);

    Grid oimg(image.h, image.w);
    Mask omask(mask.h, mask.w);
    for (int r = 0; r < image.h; ++r) {
        for (int c = 0; c < image.w; ++c) {
            // inverse map: rotate the destination offset by -theta
            const double dr = r - cr;
            const double dc = c - cc;
            const double sr = cr + ct * dr + st * dc;
            const double sc = cc - st * dr + ct * dc;
            oimg.at(r, c) = sample_bilinear(image, sr, sc);
            omask.at(r, c) = sample_nearest(mask, sr, sc);
        }
    }
    return {std::move(oimg), std::move(omask)};
}

std::pair<Grid, Mask> flip_pair(const Grid& image, const Mask& mask,
                                bool horizontal, bool vertical) {
    if (!mask.same_shape(image))
        throw std::invalid_argument("flip_pair: dimension mismatch");
    Grid oimg(image.h, image.w);
    Mask omask(mask.h, mask.w);
    for (int r = 0; r < image.h; ++r) {
        const int sr = vertical ? image.h - 1 - r : r;
        for (int c = 0; c < image.w; ++c) {
            const int sc = horizontal ? image.w - 1 - c : c;
            oimg.at(r, c) = image.at(sr, sc);
            omask.at(r, c) = mask.at(sr, sc);
        }
    }
    return {std::move(oimg), std::move(omask)};
}

Grid gaussian_smooth(const Grid& g, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_smooth: sigma must be positive");
    const int radius = std::max(1, static_cast<int>(std::ceil(3.0 * sigma)));
    std::vector<double> kernel(2 * radius + 1);
    double ksum = 0.0;
    for (int i = -radius; i <= radius; ++i) {
        kernel[i + radius] = std::exp(-0.5 * (i * i) / (sigma * sigma));
        ksum += kernel[i + radius];
    }
    for (double& k : kernel) k /= ksum;

    Grid tmp(g.h, g.w);
    for (int r = 0; r < g.h; ++r) {
        for (int c = 0; c < g.w; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int cc = c + i;
                if (cc >= 0 && cc < g.w) acc += kernel[i + radius] * g.at(r, cc);
            }
            tmp.at(r, c) = acc;
        }
    }
    Grid out(g.h, g.w);
    for (int r = 0; r < g.h; ++r) {
        for (int c = 0; c < g.w; ++c) {
            double acc = 0.0;
            for (int i = -radius; i <= radius; ++i) {
                const int rr = r + i;
                if (rr >= 0 && rr < g.h) acc += kernel[i + radius] * tmp.at(rr, c);
            }
            out.at(r, c) = acc;
        }
    }
    return out;
}

std::pair<Grid, Mask> elastic_deform(const Grid& image, const Mask& mask,
                                     double alpha, double sigma, uint64_t seed) {
    if (!mask.same_shape(image))
        throw std::invalid_argument("elastic_deform: dimension mismatch");
    if (alpha < 0.0) throw std::invalid_argument("elastic_deform: alpha must be >= 0");
    if (!(sigma > 0.0)) throw std::invalid_argument("elastic_deform: sigma must be positive");
    if (alpha == 0.0) return {image, mask};

    Rng rng(seed);
    Grid noise_r(image.h, image.w);
    Grid noise_c(image.h, image.w);
    for (size_t i = 0; i < noise_r.size(); ++i) noise_r.v[i] = rng.uniform(-1.0, 1.0);
    for (size_t i = 0; i < noise_c.size(); ++i) noise_c.v[i] = rng.uniform(-1.0, 1.0);
    Grid disp_r = gaussian_smooth(noise_r, sigma);
    Grid disp_c = gaussian_smooth(noise_c, sigma);

    Grid oimg(image.h, image.w);
    Mask omask(mask.h, mask.w);
    for (int r = 0; r < image.h; ++r) {
        for (int c = 0; c < image.w; ++c) {
            const double sr = r + alpha * disp_r.at(r, c);
            const double sc = c + alpha * disp_c.at(r, c);
            oimg.at(r, c) = sample_bilinear(image, sr, sc);
            omask.at(r, c) = sample_nearest(mask, sr, sc);
        }
    }
    return {std::move(oimg), std::move(omask)};
}

AugmentResult apply_augmentations(const Grid& image, const Mask& mask,
                                  const AugmentConfig& config, uint64_t seed) {
    config.validate();
    if (!mask.same_shape(image))
        throw std::invalid_argument("apply_augmentations: dimension mismatch");

    // Fixed draw order keeps the stream aligned whether or not a step fires.
    Rng rng(seed);
    const bool do_h = rng.uniform() < config.flip_prob;
    const bool do_v = rng.uniform() < config.flip_prob;
    const double angle = rng.uniform(-config.rotation_range_deg, config.rotation_range_deg);
    const double gamma = rng.uniform(config.gamma_lo, config.gamma_hi);
    const bool do_elastic = rng.uniform() < config.elastic_prob && config.elastic_alpha > 0.0;
    const uint64_t elastic_seed = rng.next_u64();

    AugmentResult res{image, mask, false};
    if (do_h || do_v) {
        auto [img2, mask2] = flip_pair(res.image, res.mask, do_h, do_v);
        res.image = std::move(img2);
        res.mask = std::move(mask2);
        res.geometry_changed = true;
    }
    if (angle != 0.0) {
        auto [img2, mask2] = rotate_pair(res.image, res.mask, angle);
        res.image = std::move(img2);
        res.mask = std::move(mask2);
        res.geometry_changed = true;
    }
    res.image = clahe(res.image, config.clahe_clip, config.clahe_tiles);
    if (gamma != 1.0) res.image = gamma_correct(res.image, gamma);
    if (do_elastic) {
        auto [img2, mask2] = elastic_deform(res.image, res.mask, config.elastic_alpha,
                                            config.elastic_sigma, elastic_seed);
        res.image = std::move(img2);
        res.mask = std::move(mask2);
        res.geometry_changed = true;
    }
    res.image = normalize(res.image, config.norm_mean, config.norm_std);
    return res;
}

}  // namespace bavt

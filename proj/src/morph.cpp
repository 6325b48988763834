// Copyright (C) 2026 LPCS-Bench Contributors
// SPDX-License-Identifier: Apache-2.0

#include "lpcs/morph.hpp"

#include "lpcs/binarize.hpp"
#include "lpcs/segment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lpcs {

StructElement::StructElement(int width, int height, Cell fill)
    : width_(width), height_(height),
      cells_(static_cast<std::size_t>(width) * height, fill) {
    if (width <= 0 || height <= 0 || width % 2 == 0 || height % 2 == 0)
        throw std::invalid_argument("StructElement: dimensions must be odd and positive");
}

StructElement StructElement::from_string(const std::string& spec) {
    std::vector<std::string> rows;
    std::string cur;
    for (char c : spec) {
        if (c == '/') {
            rows.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    rows.push_back(cur);
    int h = static_cast<int>(rows.size());
    int w = static_cast<int>(rows[0].size());
    for (const auto& r : rows)
        if (static_cast<int>(r.size()) != w)
            throw std::invalid_argument("StructElement: ragged rows");
    StructElement se(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            Cell c;
            switch (rows[y][x]) {
                case '1': c = Cell::Fg; break;
                case '0': c = Cell::Bg; break;
                case '.': c = Cell::Ignore; break;
                default: throw std::invalid_argument("StructElement: bad cell char");
            }
            se.cells_[static_cast<std::size_t>(y) * w + x] = c;
        }
    return se;
}

StructElement StructElement::square3() { return from_string("111/111/111"); }
StructElement StructElement::cross3() { return from_string(".1./111/.1."); }

StructElement::Cell StructElement::cell(int dx, int dy) const {
    int x = dx + width_ / 2;
    int y = dy + height_ / 2;
    assert(x >= 0 && x < width_ && y >= 0 && y < height_);
    return cells_[static_cast<std::size_t>(y) * width_ + x];
}

void StructElement::set_cell(int dx, int dy, Cell c) {
    int x = dx + width_ / 2;
    int y = dy + height_ / 2;
    assert(x >= 0 && x < width_ && y >= 0 && y < height_);
    cells_[static_cast<std::size_t>(y) * width_ + x] = c;
}

StructElement StructElement::reflected() const {
    StructElement out(width_, height_);
    int rx = width_ / 2, ry = height_ / 2;
    for (int dy = -ry; dy <= ry; ++dy)
        for (int dx = -rx; dx <= rx; ++dx) out.set_cell(-dx, -dy, cell(dx, dy));
    return out;
}

StructElement StructElement::rotated90() const {
    StructElement out(height_, width_);
    int rx = width_ / 2, ry = height_ / 2;
    for (int dy = -ry; dy <= ry; ++dy)
        for (int dx = -rx; dx <= rx; ++dx) out.set_cell(-dy, dx, cell(dx, dy));
    return out;
}

bool StructElement::fg_only() const {
    int rx = width_ / 2, ry = height_ / 2;
    for (int dy = -ry; dy <= ry; ++dy)
        for (int dx = -rx; dx <= rx; ++dx)
            if (cell(dx, dy) == Cell::Bg) return false;
    return true;
}

namespace {

using Cell = StructElement::Cell;

std::vector<std::pair<int, int>> offsets_of(const StructElement& se, Cell kind) {
    std::vector<std::pair<int, int>> out;
    int rx = se.width() / 2, ry = se.height() / 2;
    for (int dy = -ry; dy <= ry; ++dy)
        for (int dx = -rx; dx <= rx; ++dx)
            if (se.cell(dx, dy) == kind) out.emplace_back(dx, dy);
    return out;
}

} // namespace

BinaryImage dilate(const BinaryImage& img, const StructElement& se) {
    if (!se.fg_only())
        throw std::invalid_argument("dilate: element must not require background");
    auto offs = offsets_of(se, Cell::Fg);
    BinaryImage out(img.width(), img.height());
    // Stamp form: each foreground pixel writes the element around itself.
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            if (!img.get(x, y)) continue;
            for (auto [dx, dy] : offs) {
                int nx = x + dx, ny = y + dy;
                if (out.in_bounds(nx, ny)) out.set(nx, ny, true);
            }
        }
    return out;
}

BinaryImage erode(const BinaryImage& img, const StructElement& se) {
    if (!se.fg_only())
        throw std::invalid_argument("erode: element must not require background");
    auto offs = offsets_of(se, Cell::Fg);
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            bool fits = true;
            for (auto [dx, dy] : offs)
                if (!img.get_or_bg(x + dx, y + dy)) {
                    fits = false;
                    break;
                }
            out.set(x, y, fits);
        }
    return out;
}

BinaryImage hit_or_miss(const BinaryImage& img, const StructElement& se) {
    auto fg = offsets_of(se, Cell::Fg);
    auto bg = offsets_of(se, Cell::Bg);
    BinaryImage out(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            bool hit = true;
            for (auto [dx, dy] : fg)
                if (!img.get_or_bg(x + dx, y + dy)) {
                    hit = false;
                    break;
                }
            if (hit)
                for (auto [dx, dy] : bg)
                    if (img.get_or_bg(x + dx, y + dy)) {
                        hit = false;
                        break;
                    }
            out.set(x, y, hit);
        }
    return out;
}

namespace {

// Thinning: X minus the hit-or-miss matches, applied in place per element.
// Returns true if anything was removed.
bool thin_once(BinaryImage& img, const StructElement& se) {
    BinaryImage matches = hit_or_miss(img, se);
    bool removed = false;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (matches.get(x, y)) {
                img.set(x, y, false);
                removed = true;
            }
    return removed;
}

// The two homotopic thinning masks and their quarter turns (eight total).
const std::array<StructElement, 8>& thinning_elements() {
    static const std::array<StructElement, 8> family = [] {
        StructElement flat = StructElement::from_string("000/.1./111");
        StructElement corner = StructElement::from_string(".00/110/.1.");
        std::array<StructElement, 8> fam{flat, corner,
                                         flat.rotated90(), corner.rotated90(),
                                         flat.rotated90().rotated90(),
                                         corner.rotated90().rotated90(),
                                         flat.rotated90().rotated90().rotated90(),
                                         corner.rotated90().rotated90().rotated90()};
        return fam;
    }();
    return family;
}

} // namespace

const std::array<StructElement, 8>& endpoint_elements() {
    static const std::array<StructElement, 8> family = [] {
        // Stroke tips: one orthogonal neighbor set, far side clear, then the
        // four lone-diagonal corners.
        StructElement tip = StructElement::from_string(".00/110/.00");
        StructElement corner = StructElement::from_string("100/010/000");
        std::array<StructElement, 8> fam{tip, tip.rotated90(),
                                         tip.rotated90().rotated90(),
                                         tip.rotated90().rotated90().rotated90(),
                                         corner, corner.rotated90(),
                                         corner.rotated90().rotated90(),
                                         corner.rotated90().rotated90().rotated90()};
        return fam;
    }();
    return family;
}

BinaryImage skeletonize(const BinaryImage& img) {
    BinaryImage cur = img;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& se : thinning_elements())
            if (thin_once(cur, se)) changed = true;
    }
    return cur;
}

BinaryImage prune(const BinaryImage& img, int iterations) {
    if (iterations < 0) throw std::invalid_argument("prune: negative iterations");
    if (iterations == 0) return img;

    BinaryImage thinned = img;
    for (int i = 0; i < iterations; ++i)
        for (const auto& se : endpoint_elements()) thin_once(thinned, se);

    // Remaining end points seed the regrowth.
    BinaryImage seeds(img.width(), img.height());
    for (const auto& se : endpoint_elements()) {
        BinaryImage m = hit_or_miss(thinned, se);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                if (m.get(x, y)) seeds.set(x, y, true);
    }

    // Conditional dilation inside the original mask restores legitimate
    // stroke pixels eaten by the thinning but not the detached spurs.
    StructElement h = StructElement::square3();
    BinaryImage grown = seeds;
    for (int i = 0; i < iterations; ++i) {
        grown = dilate(grown, h);
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x)
                if (!img.get(x, y)) grown.set(x, y, false);
    }

    BinaryImage out = thinned;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (grown.get(x, y)) out.set(x, y, true);
    return out;
}

BinaryImage thicken(const BinaryImage& img) {
    // Component ids for the existing mask; -1 = background.
    std::vector<int> id(static_cast<std::size_t>(img.width()) * img.height(), -1);
    {
        std::vector<std::pair<int, int>> stack;
        int next = 0;
        for (int y = 0; y < img.height(); ++y)
            for (int x = 0; x < img.width(); ++x) {
                std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
                if (!img.get(x, y) || id[i] >= 0) continue;
                int label = next++;
                id[i] = label;
                stack.push_back({x, y});
                while (!stack.empty()) {
                    auto [cx, cy] = stack.back();
                    stack.pop_back();
                    for (int dy = -1; dy <= 1; ++dy)
                        for (int dx = -1; dx <= 1; ++dx) {
                            int nx = cx + dx, ny = cy + dy;
                            if (!img.in_bounds(nx, ny) || !img.get(nx, ny)) continue;
                            std::size_t ni = static_cast<std::size_t>(ny) * img.width() + nx;
                            if (id[ni] < 0) {
                                id[ni] = label;
                                stack.push_back({nx, ny});
                            }
                        }
                }
            }
    }

    BinaryImage out = img;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x) {
            if (out.get(x, y)) continue;
            std::size_t i = static_cast<std::size_t>(y) * img.width() + x;
            int owner = -1;
            bool conflict = false;
            for (int dy = -1; dy <= 1 && !conflict; ++dy)
                for (int dx = -1; dx <= 1; ++dx) {
                    int nx = x + dx, ny = y + dy;
                    if (!img.in_bounds(nx, ny)) continue;
                    std::size_t ni = static_cast<std::size_t>(ny) * img.width() + nx;
                    int nid = id[ni];
                    if (nid < 0) continue;
                    if (owner < 0) owner = nid;
                    else if (owner != nid) {
                        conflict = true;
                        break;
                    }
                }
            if (owner >= 0 && !conflict) {
                out.set(x, y, true);
                id[i] = owner; // adopted pixels claim ownership for later candidates
            }
        }
    return out;
}

namespace {

// Mean absolute gradient (central differences, normalized units) over a
// pixel set; shadows are smooth, glyph borders are not.
double mean_gradient(const GrayImage& img, const std::vector<std::size_t>& pixels) {
    if (pixels.empty()) return 0.0;
    double acc = 0.0;
    int w = img.width(), h = img.height();
    for (std::size_t i : pixels) {
        int x = static_cast<int>(i % w);
        int y = static_cast<int>(i / w);
        auto v = [&](int px, int py) {
            px = std::clamp(px, 0, w - 1);
            py = std::clamp(py, 0, h - 1);
            return img.norm_at(px, py);
        };
        double gx = (v(x + 1, y) - v(x - 1, y)) / 2.0;
        double gy = (v(x, y + 1) - v(x, y - 1)) / 2.0;
        acc += std::hypot(gx, gy);
    }
    return acc / static_cast<double>(pixels.size());
}

std::uint8_t median_of(std::vector<std::uint8_t> v) {
    if (v.empty()) return 255;
    auto mid = v.begin() + v.size() / 2;
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

} // namespace

BinaryImage sll_preprocess(const GrayImage& img) {
    int base_level;
    try {
        base_level = otsu_level(img);
    } catch (const DegenerateInput&) {
        return BinaryImage(img.width(), img.height());
    }
    BinaryImage mask = threshold_at(img, base_level);

    // Morphological exposure: the pruning residue marks ragged skeleton
    // growth, which shadows produce and clean glyphs mostly do not.
    BinaryImage sk = skeletonize(thicken(mask));
    BinaryImage pruned = prune(sk, 3);
    BinaryImage residue(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            residue.set(x, y, sk.get(x, y) && !pruned.get(x, y));

    // Split the dark mass into ink and lighter shadow levels.
    std::array<long long, 256> hist{};
    long long dark_count = 0;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (mask.get(x, y)) {
                ++hist[img.at(x, y)];
                ++dark_count;
            }
    if (dark_count == 0) return mask;

    int split = -1;
    {
        int distinct = 0;
        for (long long c : hist)
            if (c > 0) ++distinct;
        if (distinct >= 2) {
            long long n0 = 0, sum0 = 0, total = dark_count, wsum = 0;
            for (int v = 0; v < 256; ++v) wsum += static_cast<long long>(v) * hist[v];
            double best = -1.0;
            for (int level = 1; level <= 255; ++level) {
                n0 += hist[level - 1];
                sum0 += static_cast<long long>(level - 1) * hist[level - 1];
                long long n1 = total - n0;
                if (n0 == 0 || n1 == 0) continue;
                double mu0 = static_cast<double>(sum0) / n0;
                double mu1 = static_cast<double>(wsum - sum0) / n1;
                double score = static_cast<double>(n0) * n1 * (mu0 - mu1) * (mu0 - mu1);
                if (score > best) {
                    best = score;
                    split = level;
                }
            }
            if (split > 0) {
                double mu_lo = 0, mu_hi = 0;
                long long c_lo = 0, c_hi = 0;
                for (int v = 0; v < 256; ++v) {
                    if (v < split) {
                        mu_lo += static_cast<double>(v) * hist[v];
                        c_lo += hist[v];
                    } else {
                        mu_hi += static_cast<double>(v) * hist[v];
                        c_hi += hist[v];
                    }
                }
                mu_lo /= std::max(1LL, c_lo);
                mu_hi /= std::max(1LL, c_hi);
                if (mu_hi - mu_lo < 0.15 * 255.0) split = -1; // unimodal ink
            }
        }
    }
    if (split < 0) return mask; // nothing shadow-like; plain Otsu result

    // Candidate shadow pixels: dark-mass pixels on the lighter side of the
    // split, grouped into components and gated by size plus either
    // smoothness or contact with the pruning residue.
    BinaryImage shadow_candidates(img.width(), img.height());
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            shadow_candidates.set(x, y, mask.get(x, y) && img.at(x, y) >= split);

    std::vector<std::uint8_t> outside;
    for (int y = 0; y < img.height(); ++y)
        for (int x = 0; x < img.width(); ++x)
            if (!mask.get(x, y)) outside.push_back(img.at(x, y));
    double bg_median = median_of(outside);

    long long area_floor =
        std::max<long long>(6, img.pixel_count() / 500);
    auto comps = connected_components(shadow_candidates);

    GrayImage lightened = img;
    bool any = false;
    for (const auto& comp : comps) {
        if (comp.area < area_floor) continue;
        std::vector<std::size_t> pixels;
        bool touches_residue = false;
        for (int y = comp.box.y; y < comp.box.y + comp.box.h; ++y)
            for (int x = comp.box.x; x < comp.box.x + comp.box.w; ++x) {
                if (!shadow_candidates.get(x, y)) continue;
                pixels.push_back(static_cast<std::size_t>(y) * img.width() + x);
                for (int dy = -1; dy <= 1 && !touches_residue; ++dy)
                    for (int dx = -1; dx <= 1; ++dx)
                        if (residue.get_or_bg(x + dx, y + dy)) {
                            touches_residue = true;
                            break;
                        }
            }
        if (mean_gradient(img, pixels) > 0.08 && !touches_residue) continue;
        for (std::size_t i : pixels) {
            double v = lightened.data()[i];
            double pulled = bg_median - (bg_median - v) * 0.25;
            lightened.data()[i] =
                static_cast<std::uint8_t>(std::clamp<long>(std::lround(pulled), 0, 255));
        }
        any = true;
    }
    if (!any) return mask;

    try {
        return threshold_at(lightened, otsu_level(lightened));
    } catch (const DegenerateInput&) {
        return BinaryImage(img.width(), img.height());
    }
}

} // namespace lpcs

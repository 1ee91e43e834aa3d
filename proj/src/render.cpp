#include "gvbench/render.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

namespace gvbench {

Image blank_image(int width, int height, std::uint8_t fill) {
    Image img;
    img.width = width;
    img.height = height;
    img.pixels.assign(std::size_t(width) * std::size_t(height), fill);
    return img;
}

void RenderConfig::validate(bool with_highlight) const {
    if (size < 32) throw Error(concat("render: size must be >= 32, got ", size));
    if (edge_stroke < 1) throw Error("render: edge_stroke must be >= 1");
    if (levels.background == levels.edge || levels.background == levels.node ||
        levels.edge == levels.node)
        throw Error("render: background/edge/node levels must be distinct");
    if (with_highlight &&
        (levels.highlight == levels.background || levels.highlight == levels.edge ||
         levels.highlight == levels.node))
        throw Error("render: highlight level must be distinct");
}

std::uint8_t to_grayscale(int r, int g, int b) {
    if (r < 0 || r > 255 || g < 0 || g > 255 || b < 0 || b > 255)
        throw Error("to_grayscale: channel out of range");
    const double l = 0.299 * r + 0.587 * g + 0.114 * b;
    return std::uint8_t(std::lround(l));
}

RenderConfig highlight_render_config(int size) {
    RenderConfig cfg;
    cfg.size = size;
    cfg.grid_lines = false;
    cfg.levels.background = 255;
    cfg.levels.edge = 0;
    cfg.levels.node = to_grayscale(255, 0, 0);    // 76
    cfg.levels.highlight = to_grayscale(0, 255, 0);  // 150
    return cfg;
}

namespace {

// Inclusion test (2dx)^2 + (2dy)^2 <= diameter^2 keeps even and odd
// diameters symmetric around the integer center.
void fill_disc(Image& img, int cx, int cy, int diameter, std::uint8_t level) {
    const int r = diameter / 2 + 1;
    const long long d2 = (long long)diameter * diameter;
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (4ll * dx * dx + 4ll * dy * dy <= d2) img.set(cx + dx, cy + dy, level);
}

void stamp(Image& img, int x, int y, int stroke, std::uint8_t level) {
    if (stroke == 1) {
        img.set(x, y, level);
        return;
    }
    const int lo = -(stroke - 1) / 2;
    const int hi = stroke / 2;
    for (int dy = lo; dy <= hi; ++dy)
        for (int dx = lo; dx <= hi; ++dx) img.set(x + dx, y + dy, level);
}

void draw_segment(Image& img, int x0, int y0, int x1, int y1, int stroke,
                  std::uint8_t level) {
    // Bresenham
    const int dx = std::abs(x1 - x0);
    const int dy = -std::abs(y1 - y0);
    const int sx = x0 < x1 ? 1 : -1;
    const int sy = y0 < y1 ? 1 : -1;
    int err = dx + dy;
    int x = x0, y = y0;
    while (true) {
        stamp(img, x, y, stroke, level);
        if (x == x1 && y == y1) break;
        const int e2 = 2 * err;
        if (e2 >= dy) {
            err += dy;
            x += sx;
        }
        if (e2 <= dx) {
            err += dx;
            y += sy;
        }
    }
}

}  // namespace

Image render_node_link(const Graph& g, const Layout& l, const RenderConfig& cfg,
                       std::optional<std::pair<int, int>> highlights) {
    cfg.validate(highlights.has_value());
    const int n = g.node_count;
    if ((int)l.positions.size() != n)
        throw Error(concat("render_node_link: layout size ", l.positions.size(),
                           " does not match graph with ", n, " nodes"));
    if (highlights) {
        auto [a, b] = *highlights;
        if (a == b || a < 0 || b < 0 || a >= n || b >= n)
            throw Error("render_node_link: highlights must be two distinct valid nodes");
    }
    Image img = blank_image(cfg.size, cfg.size, cfg.levels.background);
    if (n == 0) return img;

    double min_x = l.positions[0].x, max_x = min_x;
    double min_y = l.positions[0].y, max_y = min_y;
    for (const auto& p : l.positions) {
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    const double ext_x = max_x - min_x;
    const double ext_y = max_y - min_y;
    const double ext = std::max(ext_x, ext_y);

    double min_dist = 0.0;
    if (n >= 2) {
        min_dist = std::numeric_limits<double>::infinity();
        for (int u = 0; u < n; ++u)
            for (int v = u + 1; v < n; ++v) {
                const double dx = l.positions[std::size_t(u)].x - l.positions[std::size_t(v)].x;
                const double dy = l.positions[std::size_t(u)].y - l.positions[std::size_t(v)].y;
                min_dist = std::min(min_dist, std::sqrt(dx * dx + dy * dy));
            }
    }

    // Scale and node size depend on each other; iterate the fixed point.
    const int max_diam = 33, min_diam = 3;
    int diameter = max_diam;
    double scale = 0.0;
    if (n < 2 || ext == 0.0) {
        // single node, or every node at the same point
        diameter = (n < 2) ? max_diam : min_diam;
    } else {
        for (int iter = 0; iter < 8; ++iter) {
            double avail = double(cfg.size - 1) - double(diameter);
            if (avail < 1.0) {
                diameter = min_diam;
                avail = std::max(1.0, double(cfg.size - 1) - double(diameter));
            }
            scale = avail / ext;
            const double want = cfg.nl_node_scale * scale * min_dist;
            const int next =
                int(std::clamp<long long>(std::llround(want), min_diam, max_diam));
            if (next == diameter) break;
            diameter = next;
        }
    }
    const double margin = double(diameter) / 2.0;
    const double off_x = margin + (double(cfg.size - 1) - 2.0 * margin - scale * ext_x) / 2.0;
    const double off_y = margin + (double(cfg.size - 1) - 2.0 * margin - scale * ext_y) / 2.0;

    std::vector<std::pair<int, int>> centers(std::size_t(n));
    for (int v = 0; v < n; ++v) {
        const double px = off_x + scale * (l.positions[std::size_t(v)].x - min_x);
        const double py = off_y + scale * (l.positions[std::size_t(v)].y - min_y);
        centers[std::size_t(v)] = {int(std::llround(px)), int(std::llround(py))};
    }

    for (const auto& [u, v] : g.edges)
        draw_segment(img, centers[std::size_t(u)].first, centers[std::size_t(u)].second,
                     centers[std::size_t(v)].first, centers[std::size_t(v)].second,
                     cfg.edge_stroke, cfg.levels.edge);
    for (int v = 0; v < n; ++v)
        fill_disc(img, centers[std::size_t(v)].first, centers[std::size_t(v)].second,
                  diameter, cfg.levels.node);
    if (highlights) {
        for (int v : {highlights->first, highlights->second})
            fill_disc(img, centers[std::size_t(v)].first, centers[std::size_t(v)].second,
                      diameter, cfg.levels.highlight);
    }
    return img;
}

Image render_adjacency_matrix(const Graph& g, const Ordering& o, const RenderConfig& cfg,
                              std::optional<std::pair<int, int>> highlights) {
    cfg.validate(highlights.has_value());
    const int n = g.node_count;
    if ((int)o.permutation.size() != n)
        throw Error("render_adjacency_matrix: ordering does not match graph");
    {
        std::vector<bool> seen(std::size_t(n), false);
        for (int v : o.permutation) {
            if (v < 0 || v >= n || seen[std::size_t(v)])
                throw Error("render_adjacency_matrix: ordering is not a permutation");
            seen[std::size_t(v)] = true;
        }
    }
    if (highlights) {
        auto [a, b] = *highlights;
        if (a == b || a < 0 || b < 0 || a >= n || b >= n)
            throw Error("render_adjacency_matrix: highlights must be two distinct valid nodes");
    }
    Image img = blank_image(cfg.size, cfg.size, cfg.levels.background);
    if (n == 0) return img;

    int cell = 0, origin = 0, step = 0;
    if (cfg.grid_lines) {
        cell = (cfg.size - (n + 1)) / n;
        if (cell < 1)
            throw Error(concat("render_adjacency_matrix: ", n,
                               " nodes do not fit a ", cfg.size,
                               "px canvas with grid lines"));
        step = cell + 1;
        origin = (cfg.size - (n * step + 1)) / 2;
    } else {
        cell = cfg.size / n;
        if (cell < 1)
            throw Error(concat("render_adjacency_matrix: ", n,
                               " nodes do not fit a ", cfg.size, "px canvas"));
        step = cell;
        origin = (cfg.size - n * step) / 2;
    }
    const int inset = cfg.grid_lines ? 1 : 0;

    // position of each node in the row/column order
    std::vector<int> pos(std::size_t(n));
    for (int i = 0; i < n; ++i) pos[std::size_t(o.permutation[std::size_t(i)])] = i;

    auto fill_cell = [&](int row, int col, std::uint8_t level) {
        const int x0 = origin + inset + col * step;
        const int y0 = origin + inset + row * step;
        for (int y = y0; y < y0 + cell; ++y)
            for (int x = x0; x < x0 + cell; ++x) img.set(x, y, level);
    };

    if (highlights) {
        for (int v : {highlights->first, highlights->second}) {
            const int p = pos[std::size_t(v)];
            for (int i = 0; i < n; ++i) {
                fill_cell(p, i, cfg.levels.highlight);
                fill_cell(i, p, cfg.levels.highlight);
            }
        }
    }

    if (cfg.grid_lines) {
        const int extent = n * step + 1;
        for (int k = 0; k <= n; ++k) {
            const int c = origin + k * step;
            for (int t = 0; t < extent; ++t) {
                img.set(origin + t, c, cfg.levels.edge);
                img.set(c, origin + t, cfg.levels.edge);
            }
        }
    }

    for (const auto& [u, v] : g.edges) {
        fill_cell(pos[std::size_t(u)], pos[std::size_t(v)], cfg.levels.node);
        fill_cell(pos[std::size_t(v)], pos[std::size_t(u)], cfg.levels.node);
    }
    return img;
}

std::string format_pgm(const Image& img) {
    std::ostringstream os;
    os << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    os.write(reinterpret_cast<const char*>(img.pixels.data()),
             std::streamsize(img.pixels.size()));
    return os.str();
}

void write_pgm(const Image& img, const std::string& path) {
    const std::string bytes = format_pgm(img);
    write_binary_file(path, bytes.data(), bytes.size());
}

namespace {

// Reads one whitespace-delimited token, skipping '#' comments.
std::string next_pgm_token(const std::string& s, std::size_t& pos,
                           const std::string& origin) {
    while (pos < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[pos]))) {
            ++pos;
        } else if (s[pos] == '#') {
            while (pos < s.size() && s[pos] != '\n') ++pos;
        } else {
            break;
        }
    }
    if (pos >= s.size()) throw Error(concat(origin, ": truncated PGM header"));
    std::size_t start = pos;
    while (pos < s.size() && !std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    return s.substr(start, pos - start);
}

}  // namespace

Image parse_pgm(const std::string& bytes, const std::string& origin) {
    std::size_t pos = 0;
    const std::string magic = next_pgm_token(bytes, pos, origin);
    if (magic != "P5")
        throw Error(concat(origin, ": unsupported format \"", magic,
                           "\" (binary P5 expected)"));
    const std::string w_tok = next_pgm_token(bytes, pos, origin);
    const std::string h_tok = next_pgm_token(bytes, pos, origin);
    const std::string max_tok = next_pgm_token(bytes, pos, origin);
    long long w = 0, h = 0, maxval = 0;
    try {
        w = std::stoll(w_tok);
        h = std::stoll(h_tok);
        maxval = std::stoll(max_tok);
    } catch (const std::exception&) {
        throw Error(concat(origin, ": malformed PGM header"));
    }
    if (w <= 0 || h <= 0) throw Error(concat(origin, ": bad PGM dimensions"));
    if (maxval != 255) throw Error(concat(origin, ": unsupported maxval ", maxval));
    if (pos >= bytes.size() || !std::isspace(static_cast<unsigned char>(bytes[pos])))
        throw Error(concat(origin, ": malformed PGM header"));
    ++pos;  // exactly one whitespace byte before the payload
    const std::size_t need = std::size_t(w) * std::size_t(h);
    if (bytes.size() - pos < need)
        throw Error(concat(origin, ": truncated PGM payload (need ", need, " bytes, have ",
                           bytes.size() - pos, ")"));
    Image img;
    img.width = int(w);
    img.height = int(h);
    img.pixels.assign(bytes.begin() + std::ptrdiff_t(pos),
                      bytes.begin() + std::ptrdiff_t(pos + need));
    return img;
}

Image read_pgm(const std::string& path) {
    auto data = read_binary_file(path);
    return parse_pgm(std::string(data.begin(), data.end()), path);
}

std::vector<std::uint8_t> luminance_census(const Image& img) {
    std::set<std::uint8_t> levels(img.pixels.begin(), img.pixels.end());
    return std::vector<std::uint8_t>(levels.begin(), levels.end());
}

}  // namespace gvbench

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gvbench/graph.hpp"
#include "gvbench/layout.hpp"

namespace gvbench {

struct Image {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;  // row-major luminance

    std::uint8_t at(int x, int y) const {
        return pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)];
    }
    void set(int x, int y, std::uint8_t v) {
        if (x < 0 || y < 0 || x >= width || y >= height) return;
        pixels[std::size_t(y) * std::size_t(width) + std::size_t(x)] = v;
    }
    bool operator==(const Image& o) const {
        return width == o.width && height == o.height && pixels == o.pixels;
    }
};

Image blank_image(int width, int height, std::uint8_t fill);

// Luminance assignments for the drawing elements.
struct Levels {
    std::uint8_t background = 255;
    std::uint8_t edge = 128;  // segments in NL, grid lines in AM
    std::uint8_t node = 0;    // discs in NL, filled cells in AM
    std::uint8_t highlight = 150;
};

struct RenderConfig {
    int size = 256;  // square canvas
    bool grid_lines = true;
    Levels levels;
    int edge_stroke = 1;
    double nl_node_scale = 0.5;  // node diameter = scale * min pairwise distance

    void validate(bool with_highlight) const;
};

// The highlighted-task preset: grid lines removed, red/green highlight
// luminances obtained through the grayscale conversion of pure red and
// pure green node colors.
RenderConfig highlight_render_config(int size = 400);

// L = 0.299 R + 0.587 G + 0.114 B, rounded to nearest.
std::uint8_t to_grayscale(int r, int g, int b);

// Node-link rasterization: layout scaled to fit minus one node radius of
// margin, straight edges of edge_stroke width drawn first, then node discs,
// then highlight discs. Integer-only rasterization: byte-identical across
// runs and platforms.
Image render_node_link(const Graph& g, const Layout& l, const RenderConfig& cfg,
                       std::optional<std::pair<int, int>> highlights = std::nullopt);

// Adjacency-matrix rasterization. With grid lines: cell = floor((size-(n+1))/n)
// and 1-px separators at the edge level. Without: cell = floor(size/n).
// Highlight mode paints the two nodes' full row and column background at the
// highlight level; edge cells inside stay at the node level.
Image render_adjacency_matrix(const Graph& g, const Ordering& o, const RenderConfig& cfg,
                              std::optional<std::pair<int, int>> highlights = std::nullopt);

// Binary 8-bit PGM (P5), maxval 255.
void write_pgm(const Image& img, const std::string& path);
Image read_pgm(const std::string& path);
std::string format_pgm(const Image& img);
Image parse_pgm(const std::string& bytes, const std::string& origin);

// Distinct luminance values present, ascending.
std::vector<std::uint8_t> luminance_census(const Image& img);

}  // namespace gvbench

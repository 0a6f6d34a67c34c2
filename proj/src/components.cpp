#include "vtext/components.hpp"

#include <algorithm>

namespace vtext {

ComponentSet label_components(const BinaryImage& bin) {
    ComponentSet cs;
    cs.width = bin.width;
    cs.height = bin.height;
    cs.labels.assign(bin.pixels.size(), 0);

    static const int dx[8] = {-1, 0, 1, -1, 1, -1, 0, 1};
    static const int dy[8] = {-1, -1, -1, 0, 0, 1, 1, 1};

    std::vector<std::pair<int, int>> stack;
    int next_id = 1;
    for (int sy = 0; sy < bin.height; sy++) {
        for (int sx = 0; sx < bin.width; sx++) {
            if (!bin.at(sx, sy) || cs.label_at(sx, sy))
                continue;
            ComponentInfo info;
            info.id = next_id;
            info.bbox = Rect{sx, sy, 1, 1};
            int min_x = sx, max_x = sx, min_y = sy, max_y = sy;
            info.lowest_row = sy;
            stack.clear();
            stack.emplace_back(sx, sy);
            cs.labels[std::size_t(sy) * bin.width + sx] = next_id;
            while (!stack.empty()) {
                auto [x, y] = stack.back();
                stack.pop_back();
                info.area++;
                min_x = std::min(min_x, x);
                max_x = std::max(max_x, x);
                min_y = std::min(min_y, y);
                max_y = std::max(max_y, y);
                info.lowest_row = std::max(info.lowest_row, y);
                for (int d = 0; d < 8; d++) {
                    int nx = x + dx[d], ny = y + dy[d];
                    if (nx < 0 || ny < 0 || nx >= bin.width || ny >= bin.height)
                        continue;
                    std::size_t i = std::size_t(ny) * bin.width + nx;
                    if (bin.pixels[i] && !cs.labels[i]) {
                        cs.labels[i] = next_id;
                        stack.emplace_back(nx, ny);
                    }
                }
            }
            info.bbox = Rect{min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
            cs.components.push_back(info);
            next_id++;
        }
    }
    return cs;
}

BinaryImage remove_noise(const BinaryImage& bin, const ComponentSet& cs) {
    if (cs.components.empty())
        return bin;
    long long total_area = 0;
    for (const auto& c : cs.components) total_area += c.area;
    double mean_area = double(total_area) / double(cs.components.size());
    double cutoff = 0.02 * mean_area;

    std::vector<char> keep(cs.components.size() + 1, 1);
    for (const auto& c : cs.components)
        if (double(c.area) < cutoff)
            keep[std::size_t(c.id)] = 0;

    BinaryImage out = bin;
    for (std::size_t i = 0; i < out.pixels.size(); i++)
        if (out.pixels[i] && !keep[std::size_t(cs.labels[i])])
            out.pixels[i] = 0;
    return out;
}

} // namespace vtext

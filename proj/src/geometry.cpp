#include "covsim/geometry.hpp"

#include <algorithm>

namespace covsim {

std::optional<CellId> cell_of(Vec2 pos, const Arena& a) {
    // Written so NaN coordinates fail the inclusion test.
    if (!(pos.x >= 0.0 && pos.x <= a.width && pos.y >= 0.0 && pos.y <= a.height)) {
        return std::nullopt;
    }
    int col = static_cast<int>(std::floor(pos.x / a.cell_width()));
    int row = static_cast<int>(std::floor(pos.y / a.cell_height()));
    // Top/right arena edges fold into the last row/column.
    col = std::min(col, a.cols - 1);
    row = std::min(row, a.rows - 1);
    return CellId{row, col};
}

Vec2 cell_center(CellId cell, const Arena& a) {
    if (cell.row < 0 || cell.row >= a.rows || cell.col < 0 || cell.col >= a.cols) {
        throw std::invalid_argument("cell_center: cell id out of range");
    }
    return {(cell.col + 0.5) * a.cell_width(), (cell.row + 0.5) * a.cell_height()};
}

bool contains(CellId cell, Vec2 pos, const Arena& a) {
    auto c = cell_of(pos, a);
    return c.has_value() && *c == cell;
}

} // namespace covsim

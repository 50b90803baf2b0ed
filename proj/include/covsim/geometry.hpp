#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>

namespace covsim {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(Vec2 a, double s) { return {a.x * s, a.y * s}; }
inline Vec2 operator*(double s, Vec2 a) { return a * s; }
inline bool operator==(Vec2 a, Vec2 b) { return a.x == b.x && a.y == b.y; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

/// Rectangular surveillance region [0,width] x [0,height], tiled into
/// rows x cols equal rectangular subareas. Row 0 is the bottom strip.
struct Arena {
    double width = 60.0;
    double height = 60.0;
    int rows = 3;
    int cols = 3;

    double cell_width() const { return width / cols; }
    double cell_height() const { return height / rows; }
};

struct CellId {
    int row = 0;
    int col = 0;
};

inline bool operator==(CellId a, CellId b) { return a.row == b.row && a.col == b.col; }
inline bool operator!=(CellId a, CellId b) { return !(a == b); }

/// Linear index of a cell, row-major: row * cols + col.
inline int cell_index(CellId c, const Arena& a) { return c.row * a.cols + c.col; }

/// Cell assigned to drone i (row = i / cols, col = i % cols).
inline CellId cell_for_drone(int drone_id, const Arena& a) {
    return {drone_id / a.cols, drone_id % a.cols};
}

/// Subarea containing a point, or nullopt if the point lies outside the
/// arena. Interior cell boundaries belong to the higher-index cell; the
/// arena's top and right edges belong to the last row/column so that the
/// cells partition the arena exactly.
std::optional<CellId> cell_of(Vec2 pos, const Arena& a);

/// Geometric center of a cell. Throws std::invalid_argument for an
/// out-of-range cell id.
Vec2 cell_center(CellId cell, const Arena& a);

/// True when pos lies in the given cell under the same boundary
/// convention as cell_of.
bool contains(CellId cell, Vec2 pos, const Arena& a);

} // namespace covsim

#include "catqec/code.hpp"

#include <cassert>
#include <stdexcept>

namespace catqec {

namespace {

// Face corners in (row, col) coordinates, rows growing downward.
enum Dir { NW = 0, NE = 1, SW = 2, SE = 3 };

std::pair<int, int> face_corner(int i, int j, int dir) {
    switch (dir) {
        case NW: return {i, j};
        case NE: return {i, j + 1};
        case SW: return {i + 1, j};
        case SE: return {i + 1, j + 1};
    }
    return {-1, -1};
}

void add_data(CodeLayout& lay, int x, int y) {
    lay.data_index[{x, y}] = lay.n_data;
    lay.data_coord.push_back({x, y});
    lay.n_data++;
}

int data_at(const CodeLayout& lay, std::pair<int, int> xy) {
    auto it = lay.data_index.find(xy);
    return it == lay.data_index.end() ? -1 : it->second;
}

void finish_check(CheckInfo& ck) {
    for (int s = 0; s < 4; s++) {
        if (ck.slot_data[s] < 0) continue;
        ck.op.set(ck.slot_data[s], ck.slot_basis[s]);
    }
}

} // namespace

CodeLayout make_xzzx(int dx, int dz) {
    if (dx < 2 || dz < 2) throw std::invalid_argument("xzzx needs dx,dz >= 2");
    CodeLayout lay;
    lay.name = "xzzx";
    lay.dx = dx;
    lay.dz = dz;
    const int W = 2 * dx - 1, H = 2 * dz - 1;
    for (int y = 0; y < H; y++)
        for (int x = 0; x < W; x++)
            if ((x + y) % 2 == 0) add_data(lay, x, y);

    // slot order N, E, W, S; X couplings vertical, Z horizontal
    for (int y = 0; y < H; y++) {
        for (int x = 0; x < W; x++) {
            if ((x + y) % 2 == 0) continue;
            CheckInfo ck;
            ck.coord = {x, y};
            const std::pair<int, int> nbr[4] = {{x, y + 1}, {x + 1, y}, {x - 1, y}, {x, y - 1}};
            const Pauli basis[4] = {Pauli::X, Pauli::Z, Pauli::Z, Pauli::X};
            for (int s = 0; s < 4; s++) {
                int q = data_at(lay, nbr[s]);
                ck.slot_data[s] = q;
                ck.slot_basis[s] = q >= 0 ? basis[s] : Pauli::I;
            }
            finish_check(ck);
            lay.checks.push_back(ck);
        }
    }

    for (int y = 0; y < H; y += 2) lay.logical_z.set(lay.data_index.at({0, y}), Pauli::Z);
    for (int x = 0; x < W; x += 2) lay.logical_x.set(lay.data_index.at({x, 0}), Pauli::X);
    return lay;
}

CodeLayout make_xzzx_rotated(int d) {
    if (d < 2) throw std::invalid_argument("xzzx-rotated needs d >= 2");
    CodeLayout lay;
    lay.name = "xzzx-rotated";
    lay.dx = d;
    lay.dz = d;
    for (int r = 0; r < d; r++)
        for (int c = 0; c < d; c++) add_data(lay, r, c);

    for (int i = -1; i < d; i++) {
        for (int j = -1; j < d; j++) {
            bool top = i == -1, bottom = i == d - 1, left = j == -1, right = j == d - 1;
            int s = ((i + j) % 2 + 2) % 2;
            if ((top || bottom) && (left || right)) continue;
            if ((top || bottom) && s != 0) continue;
            if ((left || right) && s != 1) continue;

            CheckInfo ck;
            ck.coord = {i, j};
            // X on NW/SE, Z on NE/SW. Every second face swaps its middle
            // two visits, so a fault escaping an ancilla mid-readout lands
            // on different corner pairs on neighboring faces instead of
            // lining up across the lattice.
            const int order_a[4] = {NW, NE, SW, SE};
            const int order_b[4] = {NW, SW, NE, SE};
            const int* order = s == 0 ? order_a : order_b;
            for (int k = 0; k < 4; k++) {
                int dir = order[k];
                int q = data_at(lay, face_corner(i, j, dir));
                ck.slot_data[k] = q;
                if (q < 0) continue;
                ck.slot_basis[k] = (dir == NW || dir == SE) ? Pauli::X : Pauli::Z;
            }
            finish_check(ck);
            lay.checks.push_back(ck);
        }
    }

    for (int k = 0; k < d; k++) {
        lay.logical_z.set(lay.data_index.at({k, k}), Pauli::Z);
        lay.logical_x.set(lay.data_index.at({k, d - 1 - k}), Pauli::X);
    }
    return lay;
}

namespace {

// Shared lattice walk for the rotated CSS code and the tailored code, which
// differ only in what the even-checkerboard faces measure.
CodeLayout make_css_family(const std::string& name, int dx, int dz, bool tailored) {
    CodeLayout lay;
    lay.name = name;
    lay.dx = dx;
    lay.dz = dz;
    for (int r = 0; r < dz; r++)
        for (int c = 0; c < dx; c++) add_data(lay, r, c);

    for (int i = -1; i < dz; i++) {
        for (int j = -1; j < dx; j++) {
            bool top = i == -1, bottom = i == dz - 1, left = j == -1, right = j == dx - 1;
            int s = ((i + j) % 2 + 2) % 2;
            if ((top || bottom) && (left || right)) continue;
            // even faces live on the top/bottom boundary, X faces left/right
            if ((top || bottom) && s != 0) continue;
            if ((left || right) && s != 1) continue;

            CheckInfo ck;
            ck.coord = {i, j};
            bool xface = (s == 1);
            ck.type = xface ? Pauli::X : (tailored ? Pauli::Y : Pauli::Z);
            // CSS X and Z checks are matched independently; the tailored
            // code keeps everything in one matching problem
            ck.family = (xface && !tailored) ? 1 : 0;
            ck.prep_z = (ck.type == Pauli::Z);
            // The two families swap their middle visits so that an ancilla
            // fault escaping mid-readout lands on a data pair transverse to
            // the logical it threatens: X-face hooks end on a column pair
            // (logical X runs along a row), even-face hooks on a row pair
            // (logical Z runs down a column). Shared corners of adjacent
            // faces are still visited in the same relative order, which
            // keeps the interleaved readout rounds consistent.
            const int xorder[4] = {NE, SE, NW, SW};
            const int zorder[4] = {NE, NW, SE, SW};
            const int* order = xface ? xorder : zorder;
            int weight = 0;
            for (int k = 0; k < 4; k++) {
                int q = data_at(lay, face_corner(i, j, order[k]));
                ck.slot_data[k] = q;
                if (q < 0) continue;
                ck.slot_basis[k] = ck.type;
                weight++;
            }
            // A Y coupling is CZ then CX, i.e. controlled-(iY); the i's only
            // cancel in groups of four, so weight-2 Y checks read out -S.
            if (ck.type == Pauli::Y && weight % 4 == 2) ck.sign = -1;
            finish_check(ck);
            lay.checks.push_back(ck);
        }
    }

    if (tailored) {
        for (int q = 0; q < lay.n_data; q++) lay.logical_z.set(q, Pauli::Z);
    } else {
        for (int r = 0; r < dz; r++) lay.logical_z.set(lay.data_index.at({r, 0}), Pauli::Z);
    }
    for (int c = 0; c < dx; c++) lay.logical_x.set(lay.data_index.at({0, c}), Pauli::X);
    return lay;
}

} // namespace

CodeLayout make_css(int dx, int dz) {
    if (dx < 2 || dz < 2) throw std::invalid_argument("css needs dx,dz >= 2");
    return make_css_family("css", dx, dz, false);
}

CodeLayout make_tsc(int d) {
    if (d < 2) throw std::invalid_argument("tsc needs d >= 2");
    return make_css_family("tsc", d, d, true);
}

CodeLayout make_repetition9() {
    CodeLayout lay;
    lay.name = "repetition9";
    lay.dx = 1;
    lay.dz = 9;
    lay.n_slots = 2;
    for (int c = 0; c < 9; c++) add_data(lay, 2 * c, 0);
    for (int c = 0; c < 8; c++) {
        CheckInfo ck;
        ck.coord = {2 * c + 1, 0};
        ck.type = Pauli::X;
        ck.slot_data[0] = c;
        ck.slot_data[1] = c + 1;
        ck.slot_basis[0] = ck.slot_basis[1] = Pauli::X;
        finish_check(ck);
        lay.checks.push_back(ck);
    }
    for (int q = 0; q < 9; q++) lay.logical_z.set(q, Pauli::Z);
    lay.logical_x.set(0, Pauli::X);
    return lay;
}

CodeLayout make_code(const std::string& name, int dx, int dz) {
    if (name == "xzzx") return make_xzzx(dx, dz);
    if (name == "xzzx-rotated") return make_xzzx_rotated(dx);
    if (name == "css") return make_css(dx, dz);
    if (name == "tsc") return make_tsc(dx);
    if (name == "repetition9") return make_repetition9();
    throw std::invalid_argument("unknown code: " + name);
}

} // namespace catqec

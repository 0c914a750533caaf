#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pirmax/code.hpp"

namespace pirmax {

/**
 * Codes transcribed from the literature, with their original X_1..X_M labels
 * (0-based indices here) and W_1 bits first in the column order.
 *
 *   fig1            N=2, K=3, M=6, L_w=L_x=1; two answer groups {X1..X3}, {X4..X6}
 *   fig2            N=2, K=3, M=4, L_w=4, L_x=6; no valid answer partition
 *   intro_nonsmooth N=2, K=3, M=4: W1, W2, W3, W2+W3; universal, not smooth
 *   eq28            N=2, K=2, M=4, L_w=4, L_x=3; the 4x4 table with one empty slot per symbol
 *   fig4            N=2, K=3, M=8, L_w=8, L_x=7; groups {X1..X4}, {X5..X8}
 */
LinearCode load_fixture(std::string_view name);

const std::vector<std::string>& fixture_names();

/// Parses a sum of message bits such as "a3+b1" (letters a.. for W_1.., 1-based
/// bit index) or "0" into a row over K * L_w columns.
BitVector parse_equation(std::string_view expr, std::size_t sources, std::size_t source_bits);

}  // namespace pirmax

#pragma once

// Brute-force per-pixel code oracle for the LBP family. Written as explicit
// nested comparisons with no shared machinery so it stays independent of the
// library kernels it checks.

#include <cstdint>

#include "faceid/image.hpp"

namespace oracle {

// Neighbor ring, clockwise from the top-left corner of the window; the first
// visited neighbor lands in the most significant bit.
inline void ring_offsets(int radius, int dx[8], int dy[8]) {
  const int r = radius;
  const int ox[8] = {-r, 0, r, r, r, 0, -r, -r};
  const int oy[8] = {-r, -r, -r, 0, r, r, r, 0};
  for (int i = 0; i < 8; ++i) {
    dx[i] = ox[i];
    dy[i] = oy[i];
  }
}

inline std::uint8_t lbp_code(const faceid::GrayImage& img, int x, int y,
                             int window) {
  int dx[8], dy[8];
  ring_offsets((window - 1) / 2, dx, dy);
  const int center = img.at(x, y);
  std::uint8_t code = 0;
  for (int i = 0; i < 8; ++i) {
    code = static_cast<std::uint8_t>(code << 1);
    if (img.at(x + dx[i], y + dy[i]) >= center) code |= 1;
  }
  return code;
}

inline std::uint8_t mlbp_code(const faceid::GrayImage& img, int x, int y,
                              int window) {
  const int r = (window - 1) / 2;
  long sum = 0;
  for (int wy = y - r; wy <= y + r; ++wy)
    for (int wx = x - r; wx <= x + r; ++wx) sum += img.at(wx, wy);
  const double mean =
      static_cast<double>(sum) / (static_cast<double>(window) * window);
  int dx[8], dy[8];
  ring_offsets(r, dx, dy);
  std::uint8_t code = 0;
  for (int i = 0; i < 8; ++i) {
    code = static_cast<std::uint8_t>(code << 1);
    if (static_cast<double>(img.at(x + dx[i], y + dy[i])) >= mean) code |= 1;
  }
  return code;
}

struct LtpCodes {
  std::uint8_t upper = 0;
  std::uint8_t lower = 0;
};

// Ternary rule: neighbor >= center + t -> +1, neighbor <= center - t -> -1,
// else 0. Equality at t == 0 resolves to +1 so the upper pattern matches LBP.
inline LtpCodes ltp_codes(const faceid::GrayImage& img, int x, int y,
                          int window, int threshold) {
  int dx[8], dy[8];
  ring_offsets((window - 1) / 2, dx, dy);
  const int center = img.at(x, y);
  LtpCodes codes;
  for (int i = 0; i < 8; ++i) {
    codes.upper = static_cast<std::uint8_t>(codes.upper << 1);
    codes.lower = static_cast<std::uint8_t>(codes.lower << 1);
    const int neighbor = img.at(x + dx[i], y + dy[i]);
    if (neighbor >= center + threshold) {
      codes.upper |= 1;
    } else if (neighbor <= center - threshold) {
      codes.lower |= 1;
    }
  }
  return codes;
}

}  // namespace oracle
